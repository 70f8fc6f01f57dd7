// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ccrt/error.hpp"
#include "ccrt/robustness.hpp"

using ccrt::Complex;
using ccrt::ErrorVector;

namespace {

// Independent subset sweep: explicit conditional means, both axes.
bool brute_condition(const std::vector<Complex>& d, const std::vector<double>& w, double M) {
  const std::size_t L = d.size();
  for (std::uint32_t mask = 1; mask + 1 < (1u << L); ++mask) {
    Complex in{0, 0}, out{0, 0};
    double win = 0, wout = 0;
    for (std::size_t i = 0; i < L; ++i) {
      if (mask & (1u << i)) {
        in += w[i] * d[i];
        win += w[i];
      } else {
        out += w[i] * d[i];
        wout += w[i];
      }
    }
    const Complex diff = in / win - out / wout;
    for (double v : {diff.real(), diff.imag()})
      if (!(v >= -M / 2 && v < M / 2)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("weighted mean error") {
  CHECK(ccrt::weighted_mean_error(ErrorVector{{{1, 0.5}, {-1, -0.5}}, {0.5, 0.5}}) == Complex(0, 0));
  CHECK(ccrt::weighted_mean_error(ErrorVector{{{2, -3}}, {1.0}}) == Complex(2, -3));
  const auto w = ccrt::compute_weights(std::vector<double>{0.2, 0.3, 0.4});
  const Complex m = ccrt::weighted_mean_error(ErrorVector{{{1, 0}, {0, 2}, {-1, 0}}, w});
  CHECK(std::abs(m.real() - 0.4427) < 1e-4);
  CHECK(std::abs(m.imag() - 0.5246) < 1e-4);
  CHECK_THROWS_AS(ccrt::weighted_mean_error(ErrorVector{{{1, 0}}, {0.5, 0.5}}), ccrt::Error);
}

TEST_CASE("subset condition fixtures") {
  const auto single = ccrt::subset_condition(ErrorVector{{{100, 100}}, {1.0}}, 10);
  CHECK(single.holds);
  CHECK(std::isinf(single.min_margin));

  const auto ok = ccrt::subset_condition(ErrorVector{{{1, 0.5}, {-1, -0.5}}, {0.5, 0.5}}, 10);
  CHECK(ok.holds);
  CHECK_FALSE(ok.first_violation.has_value());
  CHECK(ok.min_margin == doctest::Approx(3.0));

  const auto bad = ccrt::subset_condition(ErrorVector{{{3, 0}, {-3, 0}}, {0.5, 0.5}}, 10);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.first_violation.has_value());
  CHECK(bad.first_violation->axis == ccrt::Axis::re);
  CHECK(bad.first_violation->mask == 1u);
  CHECK(bad.first_violation->difference == doctest::Approx(6.0));
  CHECK(bad.min_margin < 0.0);

  const auto imag = ccrt::subset_condition(ErrorVector{{{0, 0}, {0, 5}}, {0.5, 0.5}}, 10);
  CHECK_FALSE(imag.holds);
  CHECK(imag.first_violation->axis == ccrt::Axis::im);
}

TEST_CASE("subset condition matches a brute-force sweep") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> s(0.2, 3.0);
  int holds = 0, fails = 0;
  for (int t = 0; t < 3000; ++t) {
    const std::size_t L = 2 + t % 7;
    std::vector<Complex> d(L);
    std::vector<double> sig(L);
    for (std::size_t i = 0; i < L; ++i) {
      sig[i] = s(rng);
      std::normal_distribution<double> g(0.0, sig[i]);
      d[i] = {g(rng), g(rng)};
    }
    const auto w = ccrt::compute_weights(sig);
    const auto sc = ccrt::subset_condition(ErrorVector{d, w}, 10);
    if (std::abs(sc.min_margin) < 1e-9) continue;
    CHECK(sc.holds == brute_condition(d, w, 10.0));
    CHECK(sc.holds == (sc.min_margin > 0));
    (sc.holds ? holds : fails)++;
  }
  CHECK(holds > 100);
  CHECK(fails > 100);
}

TEST_CASE("subset condition limit") {
  ErrorVector ev;
  for (int i = 0; i < 25; ++i) {
    ev.deltas.push_back({0, 0});
    ev.weights.push_back(1.0 / 25);
  }
  try {
    ccrt::subset_condition(ev, 10);
    FAIL("expected limit error");
  } catch (const ccrt::Error& e) {
    CHECK(e.code() == ccrt::ErrorCode::limit_exceeded);
  }
}

TEST_CASE("robust region") {
  const auto sys = ccrt::build_system(10, {{3, 4}, {3, -4}, {4, 0}});
  CHECK(ccrt::in_robust_region({10, 10}, sys));
  CHECK_FALSE(ccrt::in_robust_region({0, 0}, sys));
  CHECK(ccrt::in_robust_region({500, 500}, sys));
  CHECK(ccrt::in_robust_region({989.99, 10}, sys));
  CHECK_FALSE(ccrt::in_robust_region({990, 500}, sys));
  CHECK_FALSE(ccrt::in_robust_region({500, 9.99}, sys));
}

TEST_CASE("predicted common shift") {
  const auto mid = ccrt::predicted_common_shift({1, 0}, {0.3, 0}, 10);
  CHECK(mid.correction == Complex(0, 0));
  CHECK(std::abs(mid.rc_hat - Complex(1.3, 0)) < 1e-12);
  const auto low = ccrt::predicted_common_shift({0.1, 0}, {-0.4, 0}, 2);
  CHECK(low.correction.real() == 2.0);
  CHECK(std::abs(low.rc_hat.real() - 1.7) < 1e-12);
  CHECK(std::abs(low.delta_rc.real() - 1.6) < 1e-12);
  const auto high = ccrt::predicted_common_shift({1.8, 0.5}, {0.4, 0}, 2);
  CHECK(high.correction.real() == -2.0);
  CHECK(std::abs(high.rc_hat.real() - 0.2) < 1e-12);
  const auto zero = ccrt::predicted_common_shift({0.7, 1.2}, {0, 0}, 2);
  CHECK(zero.rc_hat == Complex(0.7, 1.2));
  try {
    ccrt::predicted_common_shift({0, 0}, {1.0, 0}, 2);
    FAIL("expected precondition error");
  } catch (const ccrt::Error& e) {
    CHECK(e.code() == ccrt::ErrorCode::precondition);
  }
}

TEST_CASE("theoretical rmse") {
  CHECK(ccrt::theoretical_rmse(std::vector<double>{0.7, 0.7}) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(ccrt::theoretical_rmse(std::vector<double>{0.5}) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(ccrt::theoretical_rmse(std::vector<double>{0.2, 0.3, 0.4}) - 0.2173) < 5e-5);
}

TEST_CASE("common estimate follows the predicted shift") {
  const auto sys = ccrt::build_system(10, {{3, 4}, {3, -4}, {4, 0}});
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(10.0, 990.0);
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const Complex n{u(rng), u(rng)};
    const std::vector<double> sig{0.8, 1.2, 1.6};
    const auto w = ccrt::compute_weights(sig);
    std::vector<Complex> d(3);
    auto r = ccrt::remainder_vector(n, sys);
    for (std::size_t i = 0; i < 3; ++i) {
      std::normal_distribution<double> g(0.0, sig[i]);
      d[i] = {g(rng), g(rng)};
      r[i] += d[i];
    }
    const ErrorVector ev{d, w};
    const auto rep = ccrt::analyze(n, ev, sys);
    if (!rep.condition_holds || !rep.mean_in_range || rep.min_margin < 1e-5) continue;
    const auto e = ccrt::estimate({r, sig}, sys);
    CHECK(std::abs(e.rc_hat - rep.predicted_shift->rc_hat) < 1e-9);
    CHECK(std::abs(e.n_hat - n - rep.weighted_mean) < 1e-8);
    const auto full = ccrt::analyze(n, ev, sys, e.n_hat);
    CHECK(full.necessary_condition.value());
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("violated condition breaks error preservation") {
  const auto sys = ccrt::build_system(10, {{3, 4}, {3, -4}});
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(10.0, 240.0), big(3.2, 4.5);
  for (int t = 0; t < 300; ++t) {
    const Complex n{u(rng), u(rng)};
    // Opposite errors of magnitude > M/4 on the real axis violate the condition.
    const double a = big(rng);
    std::vector<Complex> d{{a, 0.1}, {-a, -0.1}};
    auto r = ccrt::remainder_vector(n, sys);
    for (std::size_t i = 0; i < 2; ++i) r[i] += d[i];
    const ErrorVector ev{d, {0.5, 0.5}};
    CHECK_FALSE(ccrt::subset_condition(ev, 10).holds);
    const auto e = ccrt::estimate({r, {1.0, 1.0}}, sys);
    CHECK(std::abs(e.n_hat - n - ccrt::weighted_mean_error(ev)) > 1e-6);
  }
}

TEST_CASE("wilson interval") {
  const auto a = ccrt::wilson_interval(50, 100);
  CHECK(a.low == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(a.high == doctest::Approx(0.5962).epsilon(1e-3));
  const auto z = ccrt::wilson_interval(0, 10);
  CHECK(z.low == 0.0);
  CHECK(z.high == doctest::Approx(0.2775).epsilon(1e-3));
  const auto f = ccrt::wilson_interval(10, 10);
  CHECK(f.high == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ccrt::wilson_interval(0, 0), ccrt::Error);
}

TEST_CASE("error-preserving probability") {
  const std::vector<double> tiny{1e-6, 2e-6};
  const auto p0 = ccrt::error_preserving_probability(tiny, 10, 1000, 5, 2);
  CHECK(p0.p_axis == 1.0);
  CHECK(p0.p_joint_empirical == 1.0);

  const std::vector<double> sig{2.4, 2.5};
  const auto p1 = ccrt::error_preserving_probability(sig, 10, 20000, 9, 1);
  const auto p4 = ccrt::error_preserving_probability(sig, 10, 20000, 9, 4);
  CHECK(p1.p_axis == p4.p_axis);
  CHECK(p1.p_joint_empirical == p4.p_joint_empirical);
  CHECK(p1.p_joint_predicted == doctest::Approx(p1.p_axis * p1.p_axis));
  CHECK(p1.ci_low <= p1.p_joint_empirical);
  CHECK(p1.p_joint_empirical <= p1.ci_high);
  // Two channels, one axis: condition is |d1 - d2| < M/2 up to the half-open edge,
  // with d1 - d2 ~ N(0, s1^2 + s2^2).
  const double sd = std::sqrt(2.4 * 2.4 + 2.5 * 2.5);
  const double exact = std::erf(5.0 / (sd * std::sqrt(2.0)));
  const double se = std::sqrt(exact * (1 - exact) / 40000.0);
  CHECK(std::abs(p1.p_axis - exact) < 4 * se);
}
