// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_ADC_HPP
#define CCRT_ADC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ccrt/crt.hpp"

namespace ccrt {

/// g(t) = A sum_{k=-30}^{30} (a_k + i b_k) sinc(t - k)
struct BandlimitedSignal {
  static constexpr int kFirst = -30;
  static constexpr int kLast = 30;
  static constexpr std::size_t kCount = kLast - kFirst + 1;

  double amplitude = 0.0;
  std::vector<double> a;  // a[k - kFirst]
  std::vector<double> b;

  /// Value at integer time n; zero outside [kFirst, kLast].
  Complex sample(int n) const;
  /// Sinc interpolation at real time t.
  Complex value(double t) const;
};

enum class SignalMode { random, constant };

struct SignalSpec {
  SignalMode mode = SignalMode::random;
  double amplitude = 1.0;
  double a = 0.0;  // constant mode
  double b = 0.0;
  std::uint64_t seed = 0;  // random mode: a_k, b_k ~ U[-1, 1]
};

BandlimitedSignal gen_signal(const SignalSpec& spec);

/// One folding channel: range rho = |m|, rotation theta = arg(m).
struct Channel {
  GaussianInt modulus;
  double rho = 0.0;
  double theta = 0.0;
};

Channel make_channel(GaussianInt modulus);
std::vector<Channel> channel_bank(const ModulusSystem& sys);

struct Folded {
  Complex y;  // componentwise in [0, rho)
  Complex r;  // y e^{i theta}
};

/// y = <f e^{-i theta}>_rho per component, r = y e^{i theta}.
Folded channel_fold(Complex sample, const Channel& ch);

enum class Method { mle_ccrt, dual_real };
enum class Centering { none, signed_square };

struct RecoveryOptions {
  Method method = Method::mle_ccrt;
  double u = 0.0;  // per-channel sigma = u * range
  double tau = 0.25;
  Centering centering = Centering::signed_square;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t index = 0;
};

struct TrialReport {
  double rrse = 0.0;
  double tfr = 0.0;
  double tau = 0.0;
  std::vector<std::uint8_t> success;  // per sample
  std::int64_t samples = 0;
  std::int64_t failures = 0;
  std::vector<Complex> recovered;
};

/// Folds every sample of `signal` through the channels of `sys` with noise
/// added before folding, then recovers each sample. For dual_real the
/// cofactors must be real; each modulus then serves one SR-ADC per axis.
TrialReport run_recovery(const BandlimitedSignal& signal, const ModulusSystem& sys, const RecoveryOptions& opt);

/// Fraction of errors with |Re| >= tau or |Im| >= tau.
double tfr_metric(std::span<const Complex> errors, double tau);

/// sqrt(sum |g - g_hat|^2 / sum |g|^2); 0 when both sums vanish.
double rrse(std::span<const Complex> truth, std::span<const Complex> recovered);

/// Maps x in [0, range)^2 to [-range/2, range/2)^2.
Complex center_signed(Complex x, double range);

}  // namespace ccrt

#endif  // CCRT_ADC_HPP
