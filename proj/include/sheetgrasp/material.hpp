#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheetgrasp {

// Defaults used when a material record omits the corresponding field.
inline constexpr double kDefaultYoungsModulus = 2e9;       // Pa
inline constexpr double kDefaultVolumetricDensity = 800.0; // kg/m^3
inline constexpr double kDefaultSheetWidth = 0.105;        // m

// A thin sheet material.  GSM (grams per square meter) is the grammage the
// paper trade uses to identify a grade and is kept in those units; everything
// else is SI.
struct Material {
  std::string name;
  double gsm = 0.0;                 // g/m^2
  double thickness = 0.0;           // m, derived from gsm/density when not given
  double youngs_modulus = kDefaultYoungsModulus;      // Pa
  double volumetric_density = kDefaultVolumetricDensity;  // kg/m^3
  double mu0 = 0.0;                 // finger-sheet friction coefficient
  double mu1 = 0.0;                 // sheet-support friction coefficient
  double width = kDefaultSheetWidth;  // m, strip width entering I and lambda
  bool unvalidated = false;         // preset without experimental backing

  // gsm and friction are required; thickness falls back to gsm/density.
  static Material from_gsm(std::string name, double gsm, double mu0, double mu1,
                           double width = kDefaultSheetWidth,
                           double youngs_modulus = kDefaultYoungsModulus,
                           double volumetric_density = kDefaultVolumetricDensity,
                           std::optional<double> thickness = std::nullopt,
                           bool unvalidated = false);

  void validate() const;
};

// Bending stiffness EI and mass per unit length lambda of a sheet strip.
struct StiffnessProfile {
  double EI = 0.0;      // N*m^2
  double lambda = 0.0;  // kg/m
};

// One cantilever measurement: protrusion length and tip deflection.
struct DeflectionSample {
  double length = 0.0;      // m
  double deflection = 0.0;  // m
};

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// EI = E*w*h^3/12, lambda = (gsm/1000)*w.
StiffnessProfile derive_stiffness(const Material& material);

// Inverts the cantilever deflection R = lambda*g*L^4/(8*EI) for each sample
// and averages the per-sample EI estimates.
double calibrate_EI(const std::vector<DeflectionSample>& samples, double lambda);

// Protrusion length giving the same tip deflection as (EI_ref, L_ref) when
// the stiffness changes: L_new = L_ref * (EI_new/EI_ref)^(1/4).
double required_protrusion(double EI_new, double EI_ref, double L_ref);

// Same, when the weight per unit length changes too:
// L_new = L_ref * (EI_new/EI_ref * lambda_ref/lambda_new)^(1/4).
double required_protrusion(double EI_new, double lambda_new, double EI_ref,
                           double lambda_ref, double L_ref);

}  // namespace sheetgrasp
