// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_MLE_HPP
#define CCRT_MLE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccrt/crt.hpp"

namespace ccrt {

/// Noisy remainders r~_i with per-axis standard deviations sigma_i.
struct NoisyRemainders {
  std::vector<Complex> values;
  std::vector<double> sigmas;
};

/// Normalized inverse-variance weights, sum 1.
using Weights = std::vector<double>;

Weights compute_weights(std::span<const double> sigmas);

/// Operation counters for one estimate call. Always on; the cost is a few
/// integer increments.
struct OpCounts {
  std::int64_t evaluations = 0;         // candidate objective evaluations (both axes)
  std::int64_t common_stage_mults = 0;  // real multiplications while estimating r^c
  std::int64_t reconstruction_mults = 0;
};

/// One axis of the common-remainder search.
struct AxisCandidates {
  std::vector<std::size_t> order;  // residues[order[0]] <= residues[order[1]] <= ...
  std::vector<double> candidates;  // c_k for k = 1..L, each in [0, M)
  std::vector<double> objectives;  // sum_i w_i d_M(x_i, c_k)^2
  std::size_t best = 0;            // index of the minimizer (smallest value on ties)

  double value() const { return candidates[best]; }
  double objective() const { return objectives[best]; }
};

/// <r~_i>_M taken per component.
std::vector<Complex> common_residues(std::span<const Complex> values, std::int64_t M);

/// Evaluates the L candidates <mean + M * (w_s(1) + ... + w_s(k))>_M on one
/// axis. `counts` (optional) receives evaluations and multiplications.
AxisCandidates axis_candidate_set(std::span<const double> residues, std::span<const double> w, std::int64_t M,
                                  OpCounts* counts = nullptr);

/// Optimal r^c: best real candidate + i * best imaginary candidate.
Complex estimate_common(std::span<const Complex> residues, std::span<const double> w, std::int64_t M,
                        OpCounts* counts = nullptr);

struct Estimate {
  Complex n_hat;
  Complex rc_hat;
  std::vector<GaussianInt> q_hat;
  GaussianInt n0_hat;
  double objective = 0.0;
  OpCounts counts;
  AxisCandidates re_axis;
  AxisCandidates im_axis;
};

/// Fast estimate in F_{M Gamma}.
Estimate estimate(const NoisyRemainders& obs, const ModulusSystem& sys);

/// sum_i |d_{M Gamma_i}(r~_i, z)|^2 / sigma_i^2
double objective(Complex z, const NoisyRemainders& obs, const ModulusSystem& sys);

struct GridResult {
  Complex z;
  double objective = 0.0;
  std::int64_t points = 0;
};

/// Exhaustive minimization over the grid {(a + b i) * step} inside F_{M Gamma}.
/// Refuses grids above 1e8 points. Intended for tests on small systems.
GridResult oracle_grid_mle(const NoisyRemainders& obs, const ModulusSystem& sys, double step);

/// Real observations for one axis of the dual real baseline.
struct AxisObservations {
  std::vector<double> values;
  std::vector<double> sigmas;
};

/// Real MLE on a system whose cofactors are all real; result in [0, M Gamma).
double estimate_real(const AxisObservations& obs, const ModulusSystem& real_sys, OpCounts* counts = nullptr);

/// Two independent real estimates, one per axis.
Complex estimate_dual_real(const AxisObservations& re, const AxisObservations& im, const ModulusSystem& re_sys,
                           const ModulusSystem& im_sys);
/// Same real system on both axes; real parts feed one estimate, imaginary parts the other.
Complex estimate_dual_real(const NoisyRemainders& obs, const ModulusSystem& real_sys);

}  // namespace ccrt

#endif  // CCRT_MLE_HPP
