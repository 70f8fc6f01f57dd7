// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_CRT_HPP
#define CCRT_CRT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ccrt/complex_mod.hpp"
#include "ccrt/gaussian_int.hpp"

namespace ccrt {

/// Validated moduli M*Gamma_i with precomputed reconstruction constants.
///
/// Invariants (checked by build_system):
///  - M >= 1 and at least one cofactor;
///  - the cofactors are pairwise coprime and each has norm >= 2;
///  - Gamma = prod Gamma_i is a positive rational integer;
///  - gamma_bar[i] * gamma[i] == 1 (mod Gamma_i).
/// Immutable after construction.
class ModulusSystem {
 public:
  std::int64_t M() const noexcept { return m_; }
  std::int64_t Gamma() const noexcept { return gamma_total_; }
  std::size_t size() const noexcept { return cofactors_.size(); }

  std::span<const GaussianInt> cofactors() const noexcept { return cofactors_; }
  /// gamma_i = Gamma / Gamma_i
  std::span<const GaussianInt> gammas() const noexcept { return gammas_; }
  /// Bezout coefficient of gamma_i against Gamma_i (not reduced).
  std::span<const GaussianInt> gamma_bars() const noexcept { return gamma_bars_; }
  /// gamma_bar_i * gamma_i reduced into [0, Gamma)^2.
  std::span<const GaussianInt> crt_coefficients() const noexcept { return coefficients_; }
  /// Full moduli M * Gamma_i.
  std::span<const GaussianInt> moduli() const noexcept { return moduli_; }

  /// Dynamic range M * Gamma: F_{M Gamma} is the square [0, M Gamma)^2.
  std::int64_t dynamic_range() const noexcept { return m_ * gamma_total_; }
  bool all_real() const noexcept;

  /// <sum_i coefficient_i * q_i>_Gamma, exact.
  GaussianInt combine(std::span<const GaussianInt> q) const;

 private:
  friend ModulusSystem build_system(std::int64_t M, std::vector<GaussianInt> cofactors);

  std::int64_t m_ = 1;
  std::int64_t gamma_total_ = 1;
  std::vector<GaussianInt> cofactors_;
  std::vector<GaussianInt> gammas_;
  std::vector<GaussianInt> gamma_bars_;
  std::vector<GaussianInt> coefficients_;
  std::vector<GaussianInt> moduli_;
};

ModulusSystem build_system(std::int64_t M, std::vector<GaussianInt> cofactors);

/// r_i = <N>_{M Gamma_i}.
std::vector<Complex> remainder_vector(Complex N, const ModulusSystem& sys);

/// Solves N == r_i (mod Gamma_i) for N in F_Gamma via
///   N = < r_1 - floor(r_1) + sum_i gamma_bar_i gamma_i floor(r_i) >_Gamma.
/// Only the cofactors take part; M is ignored. Inconsistent remainders are
/// not detected (use verify_remainders).
Complex reconstruct_theorem1(std::span<const Complex> remainders, const ModulusSystem& sys);

struct CommonSolution {
  Complex N;
  Complex r_common;            // in F_M
  std::vector<GaussianInt> q;  // (r_i - r_common) / M
  GaussianInt N0;              // in F_Gamma
};

/// Error-free reconstruction through the common remainder:
///   r^c = <r_i>_M,  q_i = (r_i - r^c)/M,  N0 = <sum gamma_bar_i gamma_i q_i>_Gamma,
///   N = M N0 + r^c.
/// Throws inconsistent_remainders when the residues mod M disagree by more
/// than 1e-9*M.
CommonSolution solve_common(std::span<const Complex> remainders, const ModulusSystem& sys);

/// True when remainder_vector(N) matches `remainders` within tol*|M Gamma_i|
/// (circular comparison).
bool verify_remainders(Complex N, std::span<const Complex> remainders, const ModulusSystem& sys,
                       double tol = 1e-9);

}  // namespace ccrt

#endif  // CCRT_CRT_HPP
