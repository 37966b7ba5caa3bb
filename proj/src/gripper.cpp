#include "sheetgrasp/gripper.hpp"

#include <cmath>
#include <numbers>

#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

void GripperModel::validate() const {
  if (!(W0 > 0.0) || !(W1 > W0)) throw std::invalid_argument("gripper: need 0 < W0 < W1");
  if (!(Hmax > 0.0) || !(Lf > Hmax)) throw std::invalid_argument("gripper: need Lf > Hmax > 0");
  if (tilt_min < 0.0 || tilt_max < tilt_min) throw std::invalid_argument("gripper: bad tilt range");
}

GripperModel default_gripper() {
  GripperModel g;
  g.name = "two_row_pneumatic_default";
  g.W0 = 0.030;
  g.W1 = 0.096;
  g.Lf = 0.083;
  g.Hmax = 0.033;
  g.tilt_min = 0.0;
  g.tilt_max = deg_to_rad(7.5);
  g.validate();
  return g;
}

namespace {
void check_travel(const GripperModel& g, double H) {
  g.validate();
  if (H < 0.0 || H > g.Hmax) throw std::domain_error("gripper: H outside [0, Hmax]");
}
}  // namespace

double theta_max(const GripperModel& g, double H) {
  check_travel(g, H);
  return std::atan(2.0 * (g.Lf - H) / (g.W1 + g.W0));
}

double w_min(const GripperModel& g, double H) {
  check_travel(g, H);
  return std::hypot(g.Lf - H, (g.W1 + g.W0) / 2.0);
}

double grasp_space_height(const GripperModel& g, double tilt) {
  g.validate();
  if (tilt < 0.0 || tilt > std::numbers::pi / 2.0 + 1e-12) {
    throw std::domain_error("gripper: tilt outside [0, pi/2]");
  }
  return (g.W1 / 2.0) * std::cos(std::min(tilt, std::numbers::pi / 2.0));
}

namespace {
double pressure_fraction(double pressure_kpa) {
  if (pressure_kpa > 0.0 || pressure_kpa < -80.0) {
    throw std::domain_error("gripper: pressure outside [-80, 0] kPa");
  }
  return -pressure_kpa / 80.0;
}
}  // namespace

double opening_at_pressure(const GripperModel& g, double pressure_kpa) {
  g.validate();
  return g.W0 + (g.W1 - g.W0) * pressure_fraction(pressure_kpa);
}

double travel_at_pressure(const GripperModel& g, double pressure_kpa) {
  g.validate();
  return g.Hmax * pressure_fraction(pressure_kpa);
}

}  // namespace sheetgrasp
