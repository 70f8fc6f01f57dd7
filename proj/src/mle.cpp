// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ccrt/error.hpp"

namespace ccrt {

namespace {

void require_obs(const NoisyRemainders& obs, const ModulusSystem& sys, const char* op) {
  if (obs.values.size() != sys.size() || obs.sigmas.size() != sys.size())
    fail(ErrorCode::invalid_argument, std::string(op) + ": expected " + std::to_string(sys.size()) +
                                          " remainders and sigmas");
  for (const auto& v : obs.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorCode::domain, std::string(op) + ": non-finite remainder");
}

// Real circular distance for x, c in [0, M): comparisons only.
inline double axis_dist(double x, double c, double M, double half) {
  double t = x - c;
  if (t >= half)
    t -= M;
  else if (t < -half)
    t += M;
  return t;
}

// floor for |x| < 2^62 without a libm call.
inline double fast_floor(double x) {
  const double t = static_cast<double>(static_cast<std::int64_t>(x));
  return t > x ? t - 1.0 : t;
}

}  // namespace

Weights compute_weights(std::span<const double> sigmas) {
  if (sigmas.empty()) fail(ErrorCode::invalid_argument, "compute_weights: no sigmas");
  Weights w(sigmas.size());
  double total = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i]))
      fail(ErrorCode::invalid_argument, "compute_weights: sigma_" + std::to_string(i + 1) + " must be positive");
    w[i] = 1.0 / (sigmas[i] * sigmas[i]);
    total += w[i];
  }
  for (auto& x : w) x /= total;
  return w;
}

std::vector<Complex> common_residues(std::span<const Complex> values, std::int64_t M) {
  if (M < 1) fail(ErrorCode::invalid_argument, "common_residues: M must be positive");
  const auto m = static_cast<double>(M);
  std::vector<Complex> out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(mod_real(v.real(), m), mod_real(v.imag(), m));
  return out;
}

AxisCandidates axis_candidate_set(std::span<const double> residues, std::span<const double> w, std::int64_t M,
                                  OpCounts* counts) {
  const std::size_t L = residues.size();
  if (L == 0 || w.size() != L) fail(ErrorCode::invalid_argument, "axis_candidate_set: length mismatch");
  if (M < 1) fail(ErrorCode::invalid_argument, "axis_candidate_set: M must be positive");
  const auto m = static_cast<double>(M);
  for (double x : residues)
    if (!(x >= 0.0 && x < m)) fail(ErrorCode::domain, "axis_candidate_set: residue outside [0, M)");

  std::int64_t mults = 0;
  const double half = 0.5 * m;
  ++mults;

  double mean = 0.0;
  for (std::size_t i = 0; i < L; ++i) mean += w[i] * residues[i];
  mults += static_cast<std::int64_t>(L);
  mean = std::clamp(mean, 0.0, std::nextafter(m, 0.0));

  AxisCandidates ac;
  ac.order.resize(L);
  std::iota(ac.order.begin(), ac.order.end(), std::size_t{0});
  std::stable_sort(ac.order.begin(), ac.order.end(),
                   [&](std::size_t a, std::size_t b) { return residues[a] < residues[b]; });

  ac.candidates.reserve(L);
  ac.objectives.reserve(L);
  double cum = 0.0;
  for (std::size_t k = 0; k < L; ++k) {
    cum += w[ac.order[k]];
    // mean in [0, M) and cum in (0, 1], so one subtraction reduces mod M.
    double c = mean + m * cum;
    ++mults;
    while (c >= m) c -= m;
    if (c < 0.0) c = 0.0;
    double obj = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
      const double d = axis_dist(residues[i], c, m, half);
      obj += w[i] * (d * d);
    }
    mults += 2 * static_cast<std::int64_t>(L);
    ac.candidates.push_back(c);
    ac.objectives.push_back(obj);
    const bool better = obj < ac.objectives[ac.best] ||
                        (obj == ac.objectives[ac.best] && c < ac.candidates[ac.best]);
    if (k > 0 && better) ac.best = k;
  }
  if (counts) {
    counts->evaluations += static_cast<std::int64_t>(L);
    counts->common_stage_mults += mults;
  }
  return ac;
}

Complex estimate_common(std::span<const Complex> residues, std::span<const double> w, std::int64_t M,
                        OpCounts* counts) {
  std::vector<double> re(residues.size()), im(residues.size());
  for (std::size_t i = 0; i < residues.size(); ++i) {
    re[i] = residues[i].real();
    im[i] = residues[i].imag();
  }
  const AxisCandidates a = axis_candidate_set(re, w, M, counts);
  const AxisCandidates b = axis_candidate_set(im, w, M, counts);
  return {a.value(), b.value()};
}

Estimate estimate(const NoisyRemainders& obs, const ModulusSystem& sys) {
  require_obs(obs, sys, "estimate");
  const Weights w = compute_weights(obs.sigmas);
  const std::vector<Complex> res = common_residues(obs.values, sys.M());

  Estimate est;
  std::vector<double> re(res.size()), im(res.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    re[i] = res[i].real();
    im[i] = res[i].imag();
  }
  est.re_axis = axis_candidate_set(re, w, sys.M(), &est.counts);
  est.im_axis = axis_candidate_set(im, w, sys.M(), &est.counts);
  est.rc_hat = {est.re_axis.value(), est.im_axis.value()};

  const auto m = static_cast<double>(sys.M());
  const double inv_m = 1.0 / m;
  est.q_hat.reserve(obs.values.size());
  for (const auto& r : obs.values) {
    est.q_hat.push_back(round_c((r - est.rc_hat) * inv_m));
    est.counts.reconstruction_mults += 2;
  }
  est.n0_hat = sys.combine(est.q_hat);
  est.counts.reconstruction_mults += 4 * static_cast<std::int64_t>(sys.size());
  est.n_hat = m * est.n0_hat.to_complex() + est.rc_hat;
  est.counts.reconstruction_mults += 2;
  est.objective = objective(est.n_hat, obs, sys);
  return est;
}

double objective(Complex z, const NoisyRemainders& obs, const ModulusSystem& sys) {
  require_obs(obs, sys, "objective");
  const auto mods = sys.moduli();
  double total = 0.0;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const double s = obs.sigmas[i];
    if (!(s > 0.0)) fail(ErrorCode::invalid_argument, "objective: sigma must be positive");
    total += std::norm(circ_dist(obs.values[i], z, mods[i])) / (s * s);
  }
  return total;
}

GridResult oracle_grid_mle(const NoisyRemainders& obs, const ModulusSystem& sys, double step) {
  require_obs(obs, sys, "oracle_grid_mle");
  if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorCode::invalid_argument, "oracle_grid_mle: step must be positive");
  const auto range = static_cast<double>(sys.dynamic_range());
  const auto n = static_cast<std::int64_t>(std::ceil(range / step));
  if (static_cast<double>(n) * static_cast<double>(n) > 1e8)
    fail(ErrorCode::limit_exceeded, "oracle_grid_mle: grid exceeds 1e8 points");

  const std::size_t L = sys.size();
  struct Chan {
    double rr, ri, mr, mi, inv_norm, weight;
  };
  std::vector<Chan> ch(L);
  for (std::size_t i = 0; i < L; ++i) {
    const GaussianInt m = sys.moduli()[i];
    const double mr = static_cast<double>(m.re), mi = static_cast<double>(m.im);
    const double s = obs.sigmas[i];
    if (!(s > 0.0)) fail(ErrorCode::invalid_argument, "oracle_grid_mle: sigma must be positive");
    ch[i] = {obs.values[i].real(), obs.values[i].imag(), mr, mi, 1.0 / (mr * mr + mi * mi), 1.0 / (s * s)};
  }

  GridResult best{{0.0, 0.0}, std::numeric_limits<double>::infinity(), n * n};
  for (std::int64_t b = 0; b < n; ++b) {
    const double y = static_cast<double>(b) * step;
    for (std::int64_t a = 0; a < n; ++a) {
      const double x = static_cast<double>(a) * step;
      double total = 0.0;
      for (const Chan& c : ch) {
        const double dr = c.rr - x, di = c.ri - y;
        const double u = fast_floor((dr * c.mr + di * c.mi) * c.inv_norm + 0.5);
        const double v = fast_floor((di * c.mr - dr * c.mi) * c.inv_norm + 0.5);
        const double er = dr - (c.mr * u - c.mi * v);
        const double ei = di - (c.mr * v + c.mi * u);
        total += c.weight * (er * er + ei * ei);
        if (total >= best.objective) break;
      }
      if (total < best.objective) {
        best.objective = total;
        best.z = {x, y};
      }
    }
  }
  // Re-score the winner with the reference distance.
  best.objective = objective(best.z, obs, sys);
  return best;
}

double estimate_real(const AxisObservations& obs, const ModulusSystem& real_sys, OpCounts* counts) {
  if (!real_sys.all_real()) fail(ErrorCode::invalid_argument, "estimate_real: system has non-real cofactors");
  const std::size_t L = real_sys.size();
  if (obs.values.size() != L || obs.sigmas.size() != L)
    fail(ErrorCode::invalid_argument, "estimate_real: expected " + std::to_string(L) + " observations");
  const Weights w = compute_weights(obs.sigmas);
  const auto m = static_cast<double>(real_sys.M());
  std::vector<double> res(L);
  for (std::size_t i = 0; i < L; ++i) res[i] = mod_real(obs.values[i], m);
  const AxisCandidates ac = axis_candidate_set(res, w, real_sys.M(), counts);
  const double rc = ac.value();
  std::vector<GaussianInt> q(L);
  for (std::size_t i = 0; i < L; ++i) q[i] = GaussianInt{round_c(Complex{(obs.values[i] - rc) / m, 0.0}).re, 0};
  const GaussianInt n0 = real_sys.combine(q);
  return m * static_cast<double>(n0.re) + rc;
}

Complex estimate_dual_real(const AxisObservations& re, const AxisObservations& im, const ModulusSystem& re_sys,
                           const ModulusSystem& im_sys) {
  return {estimate_real(re, re_sys), estimate_real(im, im_sys)};
}

Complex estimate_dual_real(const NoisyRemainders& obs, const ModulusSystem& real_sys) {
  AxisObservations re{{}, obs.sigmas}, im{{}, obs.sigmas};
  for (const auto& v : obs.values) {
    re.values.push_back(v.real());
    im.values.push_back(v.imag());
  }
  return estimate_dual_real(re, im, real_sys, real_sys);
}

}  // namespace ccrt
