// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/adc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ccrt/error.hpp"
#include "ccrt/mle.hpp"
#include "ccrt/rng.hpp"

namespace ccrt {

namespace {

// Neumaier summation.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

Complex BandlimitedSignal::sample(int n) const {
  if (n < kFirst || n > kLast) return {0.0, 0.0};
  const auto k = static_cast<std::size_t>(n - kFirst);
  return amplitude * Complex{a[k], b[k]};
}

Complex BandlimitedSignal::value(double t) const {
  const double nearest = std::round(t);
  if (t == nearest && nearest >= kFirst && nearest <= kLast) return sample(static_cast<int>(nearest));
  Complex acc{0.0, 0.0};
  for (int k = kFirst; k <= kLast; ++k) acc += sample(k) * sinc(t - k);
  return acc;
}

BandlimitedSignal gen_signal(const SignalSpec& spec) {
  if (!std::isfinite(spec.amplitude)) fail(ErrorCode::invalid_argument, "gen_signal: amplitude must be finite");
  BandlimitedSignal s;
  s.amplitude = spec.amplitude;
  s.a.resize(BandlimitedSignal::kCount);
  s.b.resize(BandlimitedSignal::kCount);
  if (spec.mode == SignalMode::constant) {
    if (std::abs(spec.a) > 1.0 || std::abs(spec.b) > 1.0)
      fail(ErrorCode::invalid_argument, "gen_signal: constant coefficients must lie in [-1, 1]");
    std::fill(s.a.begin(), s.a.end(), spec.a);
    std::fill(s.b.begin(), s.b.end(), spec.b);
  } else {
    auto rng = trial_rng(spec.seed, 0x7369676eULL, 0);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (std::size_t k = 0; k < BandlimitedSignal::kCount; ++k) {
      s.a[k] = coef(rng);
      s.b[k] = coef(rng);
    }
  }
  return s;
}

Channel make_channel(GaussianInt modulus) {
  if (modulus.is_zero()) fail(ErrorCode::division_by_zero, "make_channel: zero modulus");
  const Complex m = modulus.to_complex();
  return {modulus, std::abs(m), std::arg(m)};
}

std::vector<Channel> channel_bank(const ModulusSystem& sys) {
  std::vector<Channel> out;
  for (const auto& m : sys.moduli()) out.push_back(make_channel(m));
  return out;
}

Folded channel_fold(Complex sample, const Channel& ch) {
  if (!(ch.rho > 0.0)) fail(ErrorCode::invalid_argument, "channel_fold: range must be positive");
  const Complex rot = std::polar(1.0, ch.theta);
  const Complex f = sample * std::conj(rot);
  Folded out;
  out.y = {mod_real(f.real(), ch.rho), mod_real(f.imag(), ch.rho)};
  out.r = out.y * rot;
  return out;
}

double tfr_metric(std::span<const Complex> errors, double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "tfr_metric: tau must be positive");
  if (errors.empty()) return 0.0;
  std::size_t bad = 0;
  for (const auto& e : errors)
    if (!(std::abs(e.real()) < tau && std::abs(e.imag()) < tau)) ++bad;
  return static_cast<double>(bad) / static_cast<double>(errors.size());
}

double rrse(std::span<const Complex> truth, std::span<const Complex> recovered) {
  if (truth.size() != recovered.size()) fail(ErrorCode::invalid_argument, "rrse: length mismatch");
  Accumulator num, den;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    num.add(std::norm(truth[i] - recovered[i]));
    den.add(std::norm(truth[i]));
  }
  if (num.value() == 0.0) return 0.0;
  if (den.value() == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(num.value() / den.value());
}

Complex center_signed(Complex x, double range) {
  auto c = [range](double v) { return v >= 0.5 * range ? v - range : v; };
  return {c(x.real()), c(x.imag())};
}

TrialReport run_recovery(const BandlimitedSignal& signal, const ModulusSystem& sys, const RecoveryOptions& opt) {
  if (!(opt.u >= 0.0) || !std::isfinite(opt.u)) fail(ErrorCode::invalid_argument, "run_recovery: u must be >= 0");
  if (!(opt.tau > 0.0)) fail(ErrorCode::invalid_argument, "run_recovery: tau must be positive");
  if (opt.method == Method::dual_real && !sys.all_real())
    fail(ErrorCode::invalid_argument, "run_recovery: the dual real baseline needs real moduli");

  const std::vector<Channel> bank = channel_bank(sys);
  const std::size_t L = bank.size();
  const auto range = static_cast<double>(sys.dynamic_range());
  auto rng = trial_rng(opt.seed, opt.stream, opt.index);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Weights only depend on ratios, so u = 0 still yields valid sigmas.
  NoisyRemainders obs;
  obs.sigmas.resize(L);
  for (std::size_t i = 0; i < L; ++i) obs.sigmas[i] = bank[i].rho;
  obs.values.resize(L);

  TrialReport rep;
  rep.tau = opt.tau;
  std::vector<Complex> truth, errors;
  for (int n = BandlimitedSignal::kFirst; n <= BandlimitedSignal::kLast; ++n) {
    const Complex g = signal.sample(n);
    for (std::size_t i = 0; i < L; ++i) {
      // One complex channel is two real SR-ADC streams; the baseline uses the
      // same streams per axis with a real range.
      const double s = opt.u * bank[i].rho;
      const double wr = gauss(rng), wi = gauss(rng);
      const Complex noisy = g + s * Complex{wr, wi};
      obs.values[i] = channel_fold(noisy, bank[i]).r;
    }
    Complex est = opt.method == Method::mle_ccrt ? estimate(obs, sys).n_hat : estimate_dual_real(obs, sys);
    if (opt.centering == Centering::signed_square) est = center_signed(est, range);
    truth.push_back(g);
    rep.recovered.push_back(est);
    errors.push_back(g - est);
  }
  rep.samples = static_cast<std::int64_t>(truth.size());
  rep.success.reserve(truth.size());
  for (const auto& e : errors) {
    const bool ok = std::abs(e.real()) < opt.tau && std::abs(e.imag()) < opt.tau;
    rep.success.push_back(ok ? 1 : 0);
    if (!ok) ++rep.failures;
  }
  rep.tfr = tfr_metric(errors, opt.tau);
  rep.rrse = rrse(truth, rep.recovered);
  return rep;
}

}  // namespace ccrt
