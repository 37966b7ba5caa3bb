#pragma once

#include <stdexcept>
#include <utility>

#include "sheetgrasp/material.hpp"

namespace sheetgrasp {

// Euler length factors for the two support cases of a pinched sheet span:
// near a free edge one end is effectively pinned, away from the edge both
// ends are held.
inline constexpr double kLengthFactorEdge = 0.7;
inline constexpr double kLengthFactorNonEdge = 0.5;

// Forces at one finger-sheet contact.
struct ContactForces {
  double F_N = 0.0;    // N, normal force on the sheet
  double F_tau = 0.0;  // N, tangential force from the finger
  double F_f = 0.0;    // N, support friction reaction
  double F_in = 0.0;   // N, internal (deformation) force
};

// Span of sheet loaded in compression, with the buckling boundary condition
// encoded as the Euler length factor.
struct BucklingContext {
  double L = 0.0;          // m, loaded span
  double mu_factor = 0.0;  // Euler length factor, 0.7 or 0.5
  double EI = 0.0;         // N*m^2

  BucklingContext(double L, double mu_factor, double EI);
  static BucklingContext edge(double L, double EI) { return {L, kLengthFactorEdge, EI}; }
  static BucklingContext non_edge(double L, double EI) { return {L, kLengthFactorNonEdge, EI}; }
};

// Wrist force/torque reading: Z normal to the flange, Y along the slide axis.
struct SensorWrench {
  double F_Z = 0.0;  // N
  double F_Y = 0.0;  // N
  double M_X = 0.0;  // N*m, carried through, not used by the force map
};

enum class PinchStage { rest, deforming, slipping };

// Contact state of a pinched sheet on a support:
//   rest       F_tau <= mu1*F_N
//   deforming  mu1*F_N < F_tau <= mu0*F_N
//   slipping   F_tau > mu0*F_N
PinchStage pinch_stage(const ContactForces& forces, const Material& material);

// Grasping precondition mu1 < mu0: the finger must drag the sheet on its
// support rather than slip on it.
bool friction_condition(const Material& material);

// Euler critical load pi^2*EI/(mu*L)^2 of the pinched span.
double critical_load(const BucklingContext& ctx);

// Whether the usable tangential band F_N*(mu0 - mu1) exceeds the critical
// load (strictly), i.e. the finger can buckle the sheet before slipping.
// Returns {feasible, margin} with margin = F_N*(mu0-mu1) - critical_load.
std::pair<bool, double> buckling_feasible(double F_N, const Material& material,
                                          const BucklingContext& ctx);

// Controlled-slide band: the finger drags the sheet without deforming it,
// mu1*F_N < F_tau <= mu0*F_N.
bool slide_condition(const ContactForces& forces, const Material& material);

// Cantilever tip deflection R = lambda*g*L^4/(8*EI) of a protruding strip.
double cantilever_deflection(double length, const StiffnessProfile& profile);

// Finger-frame forces for a wrist wrench at gripper inclination tilt:
//   F_N_f  =  F_Z*cos(tilt) + F_Y*sin(tilt)
//   F_tau_f = -F_Z*sin(tilt) + F_Y*cos(tilt)
// At tilt 0 this reduces to F_N_f = F_Z, F_tau_f = F_Y.
std::pair<double, double> wrench_to_contact(const SensorWrench& wrench, double tilt);

// Exact inverse of wrench_to_contact (rotation transpose).
SensorWrench contact_to_wrench(double F_N_f, double F_tau_f, double tilt);

}  // namespace sheetgrasp
