#pragma once

#include <stdexcept>
#include <string>

namespace sheetgrasp {

// Two-sided soft gripper with parallel finger rows.  W0/W1 are the fingertip
// separations in the natural and fully opened states, Lf the finger length,
// Hmax the fingertip travel at full actuation pressure.
struct GripperModel {
  std::string name;
  double W0 = 0.0;    // m, fingertip gap, natural state
  double W1 = 0.0;    // m, fingertip gap, fully open
  double Lf = 0.0;    // m, finger length
  double Hmax = 0.0;  // m, fingertip travel at full pressure
  double tilt_min = 0.0;  // rad, actuation tilt range of the scooping motion
  double tilt_max = 0.0;  // rad

  void validate() const;
};

enum class GripperMode { open, closed, natural };

struct GripperState {
  double opening = 0.0;  // m
  double tilt = 0.0;     // rad
  GripperMode mode = GripperMode::natural;
};

// Default profile used throughout: pneumatic two-row gripper, W0=30 mm,
// W1=96 mm, Lf=83 mm, Hmax=33 mm at full vacuum, scoop tilt up to 7.5 deg.
GripperModel default_gripper();

// Largest scoop tilt that keeps both finger rows on the sheet when the
// fingertips are deformed by H: atan(2*(Lf - H) / (W1 + W0)).
double theta_max(const GripperModel& g, double H);

// Minimum sheet span the scoop needs at deformation H:
// sqrt((Lf - H)^2 + ((W1 + W0)/2)^2).
double w_min(const GripperModel& g, double H);

// Maximum vertical extent the fingers can envelop at a given inclination:
// (W1/2) * cos(tilt), tilt in [0, pi/2].
double grasp_space_height(const GripperModel& g, double tilt);

// Linear pressure maps for the vacuum-driven opening; pressure_kpa in
// [-80, 0], 0 = natural state, -80 = fully open / full travel.
double opening_at_pressure(const GripperModel& g, double pressure_kpa);
double travel_at_pressure(const GripperModel& g, double pressure_kpa);

}  // namespace sheetgrasp
