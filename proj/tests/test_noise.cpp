// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ccrt/error.hpp"
#include "ccrt/noise.hpp"

using ccrt::Complex;
using ccrt::GaussianInt;
using ccrt::WrappedGaussianSpec;

namespace {

// Midpoint rule of the pdf over F_M, in coordinates c, d in [0, 1).
double integrate_pdf(const WrappedGaussianSpec& spec, int grid) {
  const Complex m = spec.modulus.to_complex();
  const double area = std::norm(m);
  double acc = 0.0;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b)
      acc += ccrt::wrapped_pdf(m * Complex((a + 0.5) / grid, (b + 0.5) / grid), spec);
  return acc * area / (static_cast<double>(grid) * grid);
}

// Upper chi-square quantile via the Wilson-Hilferty approximation.
double chi2_quantile(double k, double z) {
  const double t = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - t + z * std::sqrt(t), 3.0);
}

}  // namespace

TEST_CASE("sampling stays in the fundamental region") {
  const WrappedGaussianSpec spec{{7.3, -2.1}, {3, 4}, 2.0, 3};
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10000; ++t) {
    const Complex r = ccrt::sample_wrapped(spec, rng);
    CHECK(ccrt::in_region(r, ccrt::Region{spec.modulus, ccrt::RegionKind::fundamental}, 1e-12));
  }
  const WrappedGaussianSpec tight{{7.3, -2.1}, {3, 4}, 1e-12, 3};
  CHECK(std::abs(ccrt::sample_wrapped(tight, rng) - ccrt::mod_c({7.3, -2.1}, {3, 4})) < 1e-9);
}

TEST_CASE("sample circular mean is centred on N") {
  const WrappedGaussianSpec spec{{1.5, 2.5}, {3, 4}, 0.6, 3};
  std::mt19937_64 rng(2);
  const int n = 100000;
  double sr = 0.0, si = 0.0;
  for (int t = 0; t < n; ++t) {
    const Complex d = ccrt::circ_dist(ccrt::sample_wrapped(spec, rng), spec.center, spec.modulus);
    sr += d.real();
    si += d.imag();
  }
  const double bound = 4.0 * spec.sigma / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sr / n) < bound);
  CHECK(std::abs(si / n) < bound);
}

TEST_CASE("pdf integrates to one") {
  for (double sigma : {0.3, 0.5, 5.0 / (6.0 * std::sqrt(2.0))}) {
    const WrappedGaussianSpec spec{{2.0, 1.0}, {3, 4}, sigma, 3};
    CHECK(std::abs(integrate_pdf(spec, 400) - 1.0) < 1e-6);
  }
}

TEST_CASE("pdf truncation, single term and symmetry") {
  const GaussianInt m{3, 4};
  const double sigma = 5.0 / (6.0 * std::sqrt(2.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const Complex r = m.to_complex() * Complex(u(rng), u(rng));
    const WrappedGaussianSpec k3{{1.0, 2.0}, m, sigma, 3};
    const WrappedGaussianSpec k5{{1.0, 2.0}, m, sigma, 5};
    CHECK(std::abs(ccrt::wrapped_pdf(r, k3) - ccrt::wrapped_pdf(r, k5)) < 1e-12);
    const WrappedGaussianSpec k0{{1.0, 2.0}, m, sigma, 0};
    const Complex d = ccrt::circ_dist(r, k0.center, m);
    const double single = std::exp(-std::norm(d) / (2 * sigma * sigma)) / (2 * std::numbers::pi * sigma * sigma);
    CHECK(ccrt::wrapped_pdf(r, k0) == doctest::Approx(single).epsilon(1e-14));
  }
  const WrappedGaussianSpec spec{{2.0, 3.0}, m, 0.7, 3};
  for (const Complex delta : {Complex(0.4, 0), Complex(0, 0.9), Complex(1.3, 0)}) {
    const Complex plus = ccrt::mod_c(spec.center + delta, m), minus = ccrt::mod_c(spec.center - delta, m);
    CHECK(ccrt::wrapped_pdf(plus, spec) == doctest::Approx(ccrt::wrapped_pdf(minus, spec)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(ccrt::wrapped_pdf({6, 8}, spec), ccrt::Error);
  CHECK_THROWS_AS(ccrt::wrapped_pdf({0, 0}, WrappedGaussianSpec{{0, 0}, m, 0.0, 3}), ccrt::Error);
}

TEST_CASE("histogram of samples fits the pdf") {
  const WrappedGaussianSpec spec{{1.0, 4.0}, {3, 4}, 1.5, 3};
  const int bins = 20, sub = 8, n = 100000;
  const Complex m = spec.modulus.to_complex();
  std::vector<double> expected(bins * bins, 0.0);
  double total = 0.0;
  for (int a = 0; a < bins * sub; ++a) {
    for (int b = 0; b < bins * sub; ++b) {
      const double p = ccrt::wrapped_pdf(m * Complex((a + 0.5) / (bins * sub), (b + 0.5) / (bins * sub)), spec);
      expected[(a / sub) * bins + b / sub] += p;
      total += p;
    }
  }
  std::vector<int> counts(bins * bins, 0);
  std::mt19937_64 rng(4);
  for (int t = 0; t < n; ++t) {
    const Complex c = ccrt::coordinates(ccrt::sample_wrapped(spec, rng), spec.modulus);
    const int a = std::min(bins - 1, static_cast<int>(c.real() * bins));
    const int b = std::min(bins - 1, static_cast<int>(c.imag() * bins));
    ++counts[a * bins + b];
  }
  double chi2 = 0.0;
  for (int i = 0; i < bins * bins; ++i) {
    const double e = expected[i] / total * n;
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
  }
  CHECK(chi2 < chi2_quantile(bins * bins - 1, 3.090232306167813));
}

TEST_CASE("concentration check") {
  // A square of side |M| centred at the mean holds erf(|M| / (2 sqrt(2) sigma))^2 of the mass.
  const GaussianInt m{3, 4};
  for (double ratio : {1.0, 2.0, 6.0, 20.0}) {
    const double sigma = 5.0 / (ratio * std::sqrt(2.0));
    const double e = std::erf(5.0 / (2.0 * std::sqrt(2.0) * sigma));
    CHECK(ccrt::three_sigma_check(m, sigma) == doctest::Approx(e * e).epsilon(1e-6));
  }
  CHECK(ccrt::three_sigma_check(m, 5.0 / (6.0 * std::sqrt(2.0))) > 0.9946);
  CHECK(ccrt::three_sigma_check(m, 5.0 / (20.0 * std::sqrt(2.0))) > 1.0 - 1e-6);
  CHECK(ccrt::three_sigma_check(m, 5.0 / std::sqrt(2.0)) < 0.9);
  CHECK(ccrt::three_sigma_check(GaussianInt{1000, 0}, 1.0) > 1.0 - 1e-9);
}

TEST_CASE("snr conversions") {
  CHECK(ccrt::snr_db(std::sqrt(3.0) * 2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(ccrt::snr_from_u(0.01) - 35.2288) < 1e-4);
  for (double u : {1e-4, 3e-3, 0.02, 0.1}) {
    CHECK(ccrt::u_from_snr(ccrt::snr_from_u(u)) == doctest::Approx(u).epsilon(1e-12));
    CHECK(ccrt::snr_db(7.0, u * 7.0) == doctest::Approx(ccrt::snr_from_u(u)).epsilon(1e-12));
  }
  CHECK(ccrt::sigma_for_snr(10.0, 40.0) == doctest::Approx(10.0 * ccrt::u_from_snr(40.0)));
  CHECK_THROWS_AS(ccrt::snr_from_u(0.0), ccrt::Error);
}
