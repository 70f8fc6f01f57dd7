// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_ROBUSTNESS_HPP
#define CCRT_ROBUSTNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccrt/crt.hpp"
#include "ccrt/mle.hpp"

namespace ccrt {

/// Remainder errors Delta r_i with their estimator weights.
struct ErrorVector {
  std::vector<Complex> deltas;
  Weights weights;
};

/// sum_i w_i Delta r_i
Complex weighted_mean_error(const ErrorVector& ev);

enum class Axis { re, im };

struct SubsetViolation {
  Axis axis;
  std::uint32_t mask;  // bit i set <=> Delta r_{i+1} in V
  double difference;   // conditional mean over V minus the one over the complement
};

struct SubsetCheck {
  bool holds = true;
  std::optional<SubsetViolation> first_violation;
  /// Smallest distance of any subset difference to the boundary of
  /// [-M/2, M/2); negative when violated. +inf for L = 1.
  double min_margin = 0.0;
};

inline constexpr std::size_t kMaxSubsetL = 24;

/// Checks, per axis, that for every nonempty proper subset V the difference of
/// weighted conditional means lies in [-M/2, M/2). Refuses L > 24.
SubsetCheck subset_condition(const ErrorVector& ev, std::int64_t M);

/// M <= Re(N), Im(N) < M (Gamma - 1)
bool in_robust_region(Complex N, const ModulusSystem& sys);

struct CommonShift {
  Complex correction;  // per axis one of {+M, 0, -M}
  Complex delta_rc;    // mean error + correction
  Complex rc_hat;      // <r^c + mean error>_M
};

/// Predicted change of the optimal common remainder. Requires both parts of
/// mean_err strictly inside (-M/2, M/2).
CommonShift predicted_common_shift(Complex r_common, Complex mean_err, std::int64_t M);

/// sqrt(2 sum_i w_i^2 sigma_i^2)
double theoretical_rmse(std::span<const double> sigmas);

struct RobustnessReport {
  bool condition_holds = false;
  std::optional<SubsetViolation> first_violation;
  double min_margin = 0.0;
  Complex weighted_mean;
  bool in_region = false;
  bool mean_in_range = false;  // |Re|, |Im| of the mean error < M/2
  std::optional<CommonShift> predicted_shift;
  /// Each Delta r_i - (N_hat - N) lies in S_M. Assumed by the theory, reported only.
  std::optional<bool> necessary_condition;
};

RobustnessReport analyze(Complex N, const ErrorVector& ev, const ModulusSystem& sys,
                         std::optional<Complex> n_hat = std::nullopt);

struct ProbabilityEstimate {
  double p_axis = 0.0;             // one-axis probability
  double p_joint_predicted = 0.0;  // p_axis^2
  double p_joint_empirical = 0.0;  // both axes in the same trial
  double ci_low = 0.0;             // 95% Wilson interval of the joint rate
  double ci_high = 0.0;
  std::int64_t trials = 0;
};

/// Monte-Carlo estimate of the probability that the subset condition holds for
/// Gaussian errors with per-axis deviations sigmas. Results depend only on
/// (seed, trials), not on the thread count.
ProbabilityEstimate error_preserving_probability(std::span<const double> sigmas, std::int64_t M, std::int64_t trials,
                                                 std::uint64_t seed, unsigned threads = 1);

struct Interval {
  double low;
  double high;
};
/// 95% Wilson score interval for k successes out of n.
Interval wilson_interval(std::int64_t k, std::int64_t n, double z = 1.959963984540054);

}  // namespace ccrt

#endif  // CCRT_ROBUSTNESS_HPP
