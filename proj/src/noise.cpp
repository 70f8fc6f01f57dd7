// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccrt/error.hpp"

namespace ccrt {

void validate(const WrappedGaussianSpec& spec) {
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma))
    fail(ErrorCode::invalid_argument, "wrapped Gaussian: sigma must be positive");
  if (spec.modulus.is_zero()) fail(ErrorCode::division_by_zero, "wrapped Gaussian: zero modulus");
  if (spec.K < 0) fail(ErrorCode::invalid_argument, "wrapped Gaussian: K must be nonnegative");
}

Complex sample_wrapped(const WrappedGaussianSpec& spec, std::mt19937_64& rng) {
  validate(spec);
  std::normal_distribution<double> gauss(0.0, spec.sigma);
  const double a = gauss(rng);
  const double b = gauss(rng);
  return mod_c(spec.center + Complex{a, b}, spec.modulus);
}

double wrapped_pdf(Complex r, const WrappedGaussianSpec& spec) {
  validate(spec);
  if (!in_region(r, Region{spec.modulus, RegionKind::fundamental}, 1e-12))
    fail(ErrorCode::domain, "wrapped_pdf: point outside the fundamental region");
  const Complex d = circ_dist(r, spec.center, spec.modulus);
  const Complex m = spec.modulus.to_complex();
  const double s2 = spec.sigma * spec.sigma;
  double acc = 0.0;
  for (int k1 = -spec.K; k1 <= spec.K; ++k1)
    for (int k2 = -spec.K; k2 <= spec.K; ++k2)
      acc += std::exp(-std::norm(d + m * Complex(k1, k2)) / (2.0 * s2));
  return acc / (2.0 * std::numbers::pi * s2);
}

double three_sigma_check(GaussianInt modulus, double sigma, int grid) {
  if (!(sigma > 0.0)) fail(ErrorCode::invalid_argument, "three_sigma_check: sigma must be positive");
  if (modulus.is_zero()) fail(ErrorCode::division_by_zero, "three_sigma_check: zero modulus");
  if (grid < 1) fail(ErrorCode::invalid_argument, "three_sigma_check: grid must be positive");
  // z = M (c + d i) over S_M; |dz| = |M|^2 dc dd, and |z|^2 = |M|^2 (c^2 + d^2).
  const double norm_m = static_cast<double>(norm(modulus));
  const double s2 = sigma * sigma;
  // Clip to 12 sigma per coordinate; the mass outside is below 1e-32.
  const double half = std::min(0.5, 12.0 * sigma / std::sqrt(norm_m));
  const double h = 2.0 * half / grid;
  double acc = 0.0;
  for (int a = 0; a < grid; ++a) {
    const double c = -half + (a + 0.5) * h;
    double row = 0.0;
    for (int b = 0; b < grid; ++b) {
      const double d = -half + (b + 0.5) * h;
      row += std::exp(-norm_m * (c * c + d * d) / (2.0 * s2));
    }
    acc += row;
  }
  return acc * h * h * norm_m / (2.0 * std::numbers::pi * s2);
}

double snr_db(double modulus_magnitude, double sigma) {
  if (!(modulus_magnitude > 0.0) || !(sigma > 0.0)) fail(ErrorCode::invalid_argument, "snr_db: inputs must be positive");
  return 10.0 * std::log10(modulus_magnitude * modulus_magnitude / (3.0 * sigma * sigma));
}

double sigma_for_snr(double modulus_magnitude, double snr) {
  if (!(modulus_magnitude > 0.0)) fail(ErrorCode::invalid_argument, "sigma_for_snr: magnitude must be positive");
  return modulus_magnitude * u_from_snr(snr);
}

double snr_from_u(double u) {
  if (!(u > 0.0)) fail(ErrorCode::invalid_argument, "snr_from_u: u must be positive");
  return -20.0 * std::log10(std::sqrt(3.0) * u);
}

double u_from_snr(double snr) {
  if (!std::isfinite(snr)) fail(ErrorCode::invalid_argument, "u_from_snr: SNR must be finite");
  return std::pow(10.0, -snr / 20.0) / std::sqrt(3.0);
}

}  // namespace ccrt
