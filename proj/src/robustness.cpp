// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ccrt/error.hpp"
#include "ccrt/parallel.hpp"
#include "ccrt/rng.hpp"

namespace ccrt {

namespace {

struct AxisResult {
  bool holds = true;
  std::uint32_t mask = 0;
  double difference = 0.0;
  double margin = std::numeric_limits<double>::infinity();
};

// Sweeps all nonempty proper subsets of one axis. Stops at the first
// violation only when `full` is false (margin is then partial).
AxisResult axis_subsets(std::span<const double> x, std::span<const double> w, double M, bool full) {
  const std::size_t L = x.size();
  AxisResult out;
  if (L < 2) return out;
  double wx_total = 0.0, w_total = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    wx_total += w[i] * x[i];
    w_total += w[i];
  }
  const double half = 0.5 * M;
  const std::uint32_t last = (std::uint32_t{1} << L) - 1;
  for (std::uint32_t mask = 1; mask < last; ++mask) {
    double wx = 0.0, ws = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        wx += w[i] * x[i];
        ws += w[i];
      }
    }
    const double diff = wx / ws - (wx_total - wx) / (w_total - ws);
    const double margin = std::min(diff + half, half - diff);
    const bool inside = diff >= -half && diff < half;
    out.margin = std::min(out.margin, margin);
    if (!inside && out.holds) {
      out.holds = false;
      out.mask = mask;
      out.difference = diff;
      if (!full) return out;
    }
  }
  return out;
}

void require_ev(const ErrorVector& ev) {
  if (ev.deltas.empty() || ev.deltas.size() != ev.weights.size())
    fail(ErrorCode::invalid_argument, "error vector and weights must have the same nonzero length");
}

}  // namespace

Complex weighted_mean_error(const ErrorVector& ev) {
  require_ev(ev);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < ev.deltas.size(); ++i) acc += ev.weights[i] * ev.deltas[i];
  return acc;
}

SubsetCheck subset_condition(const ErrorVector& ev, std::int64_t M) {
  require_ev(ev);
  if (M < 1) fail(ErrorCode::invalid_argument, "subset_condition: M must be positive");
  const std::size_t L = ev.deltas.size();
  if (L > kMaxSubsetL)
    fail(ErrorCode::limit_exceeded, "subset_condition: L = " + std::to_string(L) + " exceeds the limit of " +
                                        std::to_string(kMaxSubsetL) + " channels");
  std::vector<double> re(L), im(L);
  for (std::size_t i = 0; i < L; ++i) {
    re[i] = ev.deltas[i].real();
    im[i] = ev.deltas[i].imag();
  }
  const auto m = static_cast<double>(M);
  const AxisResult a = axis_subsets(re, ev.weights, m, true);
  const AxisResult b = axis_subsets(im, ev.weights, m, true);
  SubsetCheck out;
  out.holds = a.holds && b.holds;
  out.min_margin = std::min(a.margin, b.margin);
  if (!a.holds)
    out.first_violation = SubsetViolation{Axis::re, a.mask, a.difference};
  else if (!b.holds)
    out.first_violation = SubsetViolation{Axis::im, b.mask, b.difference};
  return out;
}

bool in_robust_region(Complex N, const ModulusSystem& sys) {
  const auto lo = static_cast<double>(sys.M());
  const double hi = static_cast<double>(sys.M()) * static_cast<double>(sys.Gamma() - 1);
  return N.real() >= lo && N.real() < hi && N.imag() >= lo && N.imag() < hi;
}

CommonShift predicted_common_shift(Complex r_common, Complex mean_err, std::int64_t M) {
  if (M < 1) fail(ErrorCode::invalid_argument, "predicted_common_shift: M must be positive");
  const auto m = static_cast<double>(M);
  if (!(std::abs(mean_err.real()) < 0.5 * m) || !(std::abs(mean_err.imag()) < 0.5 * m))
    fail(ErrorCode::precondition, "predicted_common_shift: mean error must lie strictly inside (-M/2, M/2)");
  auto axis = [m](double rc, double e) {
    const double s = rc + e;
    if (s < 0.0) return m;
    if (s >= m) return -m;
    return 0.0;
  };
  CommonShift out;
  out.correction = {axis(r_common.real(), mean_err.real()), axis(r_common.imag(), mean_err.imag())};
  out.delta_rc = mean_err + out.correction;
  out.rc_hat = r_common + out.delta_rc;
  return out;
}

double theoretical_rmse(std::span<const double> sigmas) {
  const Weights w = compute_weights(sigmas);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * w[i] * sigmas[i] * sigmas[i];
  return std::sqrt(2.0 * acc);
}

RobustnessReport analyze(Complex N, const ErrorVector& ev, const ModulusSystem& sys, std::optional<Complex> n_hat) {
  if (ev.deltas.size() != sys.size()) fail(ErrorCode::invalid_argument, "analyze: error vector length mismatch");
  RobustnessReport rep;
  const SubsetCheck sc = subset_condition(ev, sys.M());
  rep.condition_holds = sc.holds;
  rep.first_violation = sc.first_violation;
  rep.min_margin = sc.min_margin;
  rep.weighted_mean = weighted_mean_error(ev);
  rep.in_region = in_robust_region(N, sys);
  const auto m = static_cast<double>(sys.M());
  rep.mean_in_range = std::abs(rep.weighted_mean.real()) < 0.5 * m && std::abs(rep.weighted_mean.imag()) < 0.5 * m;
  if (rep.mean_in_range) {
    const auto rc = mod_c(N, GaussianInt{sys.M(), 0});
    rep.predicted_shift = predicted_common_shift(rc, rep.weighted_mean, sys.M());
  }
  if (n_hat) {
    const Complex err = *n_hat - N;
    bool ok = true;
    for (const auto& d : ev.deltas)
      ok = ok && in_region(d - err, Region{GaussianInt{sys.M(), 0}, RegionKind::centered});
    rep.necessary_condition = ok;
  }
  return rep;
}

Interval wilson_interval(std::int64_t k, std::int64_t n, double z) {
  if (n <= 0) fail(ErrorCode::invalid_argument, "wilson_interval: n must be positive");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ProbabilityEstimate error_preserving_probability(std::span<const double> sigmas, std::int64_t M, std::int64_t trials,
                                                 std::uint64_t seed, unsigned threads) {
  if (trials < 1) fail(ErrorCode::invalid_argument, "error_preserving_probability: trials must be >= 1");
  if (M < 1) fail(ErrorCode::invalid_argument, "error_preserving_probability: M must be positive");
  const std::size_t L = sigmas.size();
  if (L > kMaxSubsetL) fail(ErrorCode::limit_exceeded, "error_preserving_probability: too many channels");
  const Weights w = compute_weights(sigmas);
  const auto m = static_cast<double>(M);

  // 0: neither, 1: re only, 2: im only, 3: both
  std::vector<unsigned char> outcome(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    auto rng = trial_rng(seed, 0x70726f62ULL, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> re(L), im(L);
    for (std::size_t i = 0; i < L; ++i) re[i] = sigmas[i] * gauss(rng);
    for (std::size_t i = 0; i < L; ++i) im[i] = sigmas[i] * gauss(rng);
    const bool a = axis_subsets(re, w, m, false).holds;
    const bool b = axis_subsets(im, w, m, false).holds;
    outcome[static_cast<std::size_t>(t)] = static_cast<unsigned char>((a ? 1 : 0) | (b ? 2 : 0));
  });

  std::int64_t axis_ok = 0, joint_ok = 0;
  for (unsigned char o : outcome) {
    axis_ok += (o & 1) + ((o >> 1) & 1);
    joint_ok += (o == 3) ? 1 : 0;
  }
  ProbabilityEstimate pe;
  pe.trials = trials;
  pe.p_axis = static_cast<double>(axis_ok) / (2.0 * static_cast<double>(trials));
  pe.p_joint_predicted = pe.p_axis * pe.p_axis;
  pe.p_joint_empirical = static_cast<double>(joint_ok) / static_cast<double>(trials);
  const Interval ci = wilson_interval(joint_ok, trials);
  pe.ci_low = ci.low;
  pe.ci_high = ci.high;
  return pe;
}

}  // namespace ccrt
