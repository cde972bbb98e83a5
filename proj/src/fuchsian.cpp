#include "adsvol/fuchsian.hpp"

#include "adsvol/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace adsvol {

namespace {

void check_chi(int chi) {
  if (chi >= 0 || chi % 2 != 0)
    throw DomainError("Euler characteristic must be a negative even integer, got " +
                      std::to_string(chi));
}

}  // namespace

FuchsianSlice fuchsian_slice(double tau, int chi) {
  check_chi(chi);
  FuchsianSlice s;
  s.tau = tau;
  s.curvature = -(1.0 + tau * tau);
  s.lapse = 1.0 / (1.0 + tau * tau);
  s.area = 2.0 * std::numbers::pi * std::abs(chi) * s.lapse;
  s.shape = {tau, 0.0, tau};
  return s;
}

double fuchsian_density(double tau, int chi) {
  check_chi(chi);
  const double q = 1.0 + tau * tau;
  return 2.0 * std::numbers::pi * std::abs(chi) / (q * q);
}

double fuchsian_volume(int chi) {
  check_chi(chi);
  return std::numbers::pi * std::numbers::pi * std::abs(chi);
}

}  // namespace adsvol
