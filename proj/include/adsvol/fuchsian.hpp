#pragma once

namespace adsvol {

/// Local orthonormal-frame components of a shape operator.
struct ShapeOperatorSample {
  double b11 = 0.0;
  double b12 = 0.0;
  double b22 = 0.0;

  double trace() const { return b11 + b22; }
  double mean_curvature() const { return 0.5 * trace(); }
  double det() const { return b11 * b22 - b12 * b12; }
  double curvature() const { return -1.0 - det(); }
  double umbilicity_defect() const {
    return 0.25 * (b11 - b22) * (b11 - b22) + b12 * b12;
  }
};

/// Closed-form CMC slice data of the Fuchsian model.
struct FuchsianSlice {
  double tau = 0.0;
  double curvature = -1.0;   // -(1 + tau^2)
  double lapse = 1.0;        // 1 / (1 + tau^2)
  double area = 0.0;         // 2*pi*|chi| / (1 + tau^2)
  ShapeOperatorSample shape; // tau * Id
};

FuchsianSlice fuchsian_slice(double tau, int chi);

/// Slice volume density V'(tau) = area'_tau * lapse'_tau = 2*pi*|chi|/(1+tau^2)^2.
double fuchsian_density(double tau, int chi);

/// Total volume of the Fuchsian manifold: pi^2 * |chi|.
double fuchsian_volume(int chi);

}  // namespace adsvol
