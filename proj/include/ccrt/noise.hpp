// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_NOISE_HPP
#define CCRT_NOISE_HPP

#include <random>

#include "ccrt/complex_mod.hpp"

namespace ccrt {

/// Complex Gaussian with mean `center` and per-axis deviation `sigma`,
/// reduced modulo `modulus`. `K` bounds the lattice shells used by the pdf.
struct WrappedGaussianSpec {
  Complex center;
  GaussianInt modulus;
  double sigma = 1.0;
  int K = 3;
};

void validate(const WrappedGaussianSpec& spec);

/// <center + W>_modulus with W having independent N(0, sigma^2) parts.
Complex sample_wrapped(const WrappedGaussianSpec& spec, std::mt19937_64& rng);

/// Lattice sum over |k1|, |k2| <= K around d_M(r, center). r must lie in F_modulus.
double wrapped_pdf(Complex r, const WrappedGaussianSpec& spec);

/// Mass of the unwrapped Gaussian over S_modulus, by a grid x grid midpoint rule.
double three_sigma_check(GaussianInt modulus, double sigma, int grid = 400);

/// 10 log10(|M|^2 / (3 sigma^2))
double snr_db(double modulus_magnitude, double sigma);
double sigma_for_snr(double modulus_magnitude, double snr);
/// -20 log10(sqrt(3) u), the SNR of sigma = u |M|.
double snr_from_u(double u);
double u_from_snr(double snr);

}  // namespace ccrt

#endif  // CCRT_NOISE_HPP
