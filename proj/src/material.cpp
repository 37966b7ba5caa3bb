#include "sheetgrasp/material.hpp"

#include <cmath>

#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

Material Material::from_gsm(std::string name, double gsm, double mu0, double mu1,
                            double width, double youngs_modulus,
                            double volumetric_density,
                            std::optional<double> thickness, bool unvalidated) {
  Material m;
  m.name = std::move(name);
  m.gsm = gsm;
  m.mu0 = mu0;
  m.mu1 = mu1;
  m.width = width;
  m.youngs_modulus = youngs_modulus;
  m.volumetric_density = volumetric_density;
  m.thickness = thickness.value_or((gsm / 1000.0) / volumetric_density);
  m.unvalidated = unvalidated;
  m.validate();
  return m;
}

void Material::validate() const {
  if (!(gsm > 0.0)) throw std::invalid_argument("material: gsm must be positive");
  if (!(thickness > 0.0)) throw std::invalid_argument("material: thickness must be positive");
  if (!(youngs_modulus > 0.0)) throw std::invalid_argument("material: youngs_modulus must be positive");
  if (!(volumetric_density > 0.0)) throw std::invalid_argument("material: volumetric_density must be positive");
  if (!(width > 0.0)) throw std::invalid_argument("material: width must be positive");
  if (!(mu0 >= 0.0) || !(mu1 >= 0.0)) throw std::invalid_argument("material: friction coefficients must be non-negative");
}

StiffnessProfile derive_stiffness(const Material& material) {
  material.validate();
  const double h = material.thickness;
  const double I = material.width * h * h * h / 12.0;
  return {material.youngs_modulus * I, (material.gsm / 1000.0) * material.width};
}

double calibrate_EI(const std::vector<DeflectionSample>& samples, double lambda) {
  if (samples.empty()) throw CalibrationError("calibrate_EI: no samples");
  if (!(lambda > 0.0)) throw std::invalid_argument("calibrate_EI: lambda must be positive");
  double sum = 0.0;
  for (const auto& s : samples) {
    if (!(s.length > 0.0)) throw std::invalid_argument("calibrate_EI: sample length must be positive");
    if (!(s.deflection > 0.0)) throw std::invalid_argument("calibrate_EI: sample deflection must be positive");
    const double L4 = s.length * s.length * s.length * s.length;
    sum += lambda * kGravity * L4 / (8.0 * s.deflection);
  }
  return sum / static_cast<double>(samples.size());
}

double required_protrusion(double EI_new, double EI_ref, double L_ref) {
  if (!(EI_new > 0.0) || !(EI_ref > 0.0)) throw std::invalid_argument("required_protrusion: EI must be positive");
  if (!(L_ref > 0.0)) throw std::invalid_argument("required_protrusion: L_ref must be positive");
  return L_ref * std::pow(EI_new / EI_ref, 0.25);
}

double required_protrusion(double EI_new, double lambda_new, double EI_ref,
                           double lambda_ref, double L_ref) {
  if (!(lambda_new > 0.0) || !(lambda_ref > 0.0)) throw std::invalid_argument("required_protrusion: lambda must be positive");
  return required_protrusion(EI_new, EI_ref, L_ref) * std::pow(lambda_ref / lambda_new, 0.25);
}

}  // namespace sheetgrasp
