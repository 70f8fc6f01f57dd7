// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/crt.hpp"

#include <cmath>

#include "ccrt/error.hpp"

namespace ccrt {

namespace {

void require_count(std::size_t got, const ModulusSystem& sys, const char* op) {
  if (got != sys.size())
    fail(ErrorCode::invalid_argument, std::string(op) + ": expected " + std::to_string(sys.size()) +
                                          " remainders, got " + std::to_string(got));
}

}  // namespace

bool ModulusSystem::all_real() const noexcept {
  for (const auto& c : cofactors_)
    if (c.im != 0) return false;
  return true;
}

GaussianInt ModulusSystem::combine(std::span<const GaussianInt> q) const {
  if (q.size() != coefficients_.size()) fail(ErrorCode::invalid_argument, "combine: length mismatch");
  GaussianInt acc;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const GaussianInt qi = reduce(q[i], gamma_total_);
    acc = reduce(acc + coefficients_[i] * qi, gamma_total_);
  }
  return acc;
}

ModulusSystem build_system(std::int64_t M, std::vector<GaussianInt> cofactors) {
  if (M < 1) fail(ErrorCode::invalid_argument, "build_system: M must be a positive integer");
  if (cofactors.empty()) fail(ErrorCode::invalid_argument, "build_system: no cofactors");
  for (const auto& c : cofactors) {
    if (c.is_zero() || norm(c) < 2)
      fail(ErrorCode::invalid_argument, "build_system: cofactor " + to_string(c) + " has |Gamma_i| < sqrt(2)");
  }
  for (std::size_t i = 0; i < cofactors.size(); ++i) {
    for (std::size_t j = i + 1; j < cofactors.size(); ++j) {
      if (!is_coprime(cofactors[i], cofactors[j]))
        fail(ErrorCode::not_coprime,
             "build_system: cofactors " + to_string(cofactors[i]) + " and " + to_string(cofactors[j]) +
                 " are not coprime");
    }
  }
  GaussianInt prod{1, 0};
  for (const auto& c : cofactors) prod = prod * c;
  if (prod.im != 0 || prod.re <= 0)
    fail(ErrorCode::invalid_argument,
         "build_system: product of cofactors is " + to_string(prod) + ", not a positive integer");

  ModulusSystem sys;
  sys.m_ = M;
  sys.gamma_total_ = prod.re;
  sys.cofactors_ = std::move(cofactors);
  for (const auto& c : sys.cofactors_) {
    const GaussianInt g = floor_quotient(prod, c);  // exact: c divides prod
    const Bezout bz = extended_gcd(g, c);
    if (bz.g != GaussianInt{1, 0}) fail(ErrorCode::no_inverse, "build_system: gamma_i not invertible");
    sys.gammas_.push_back(g);
    sys.gamma_bars_.push_back(bz.u);
    sys.coefficients_.push_back(reduce(bz.u * g, sys.gamma_total_));
    sys.moduli_.push_back(c * GaussianInt{M, 0});
  }
  (void)sys.dynamic_range();
  if (static_cast<__int128>(M) * sys.gamma_total_ > (static_cast<__int128>(1) << 52))
    fail(ErrorCode::overflow, "build_system: dynamic range M*Gamma exceeds 2^52");
  return sys;
}

std::vector<Complex> remainder_vector(Complex N, const ModulusSystem& sys) {
  std::vector<Complex> out;
  out.reserve(sys.size());
  for (const auto& m : sys.moduli()) out.push_back(mod_c(N, m));
  return out;
}

Complex reconstruct_theorem1(std::span<const Complex> remainders, const ModulusSystem& sys) {
  require_count(remainders.size(), sys, "reconstruct_theorem1");
  std::vector<GaussianInt> floors;
  floors.reserve(remainders.size());
  for (const auto& r : remainders) floors.push_back(floor_c(r));
  const Complex frac = remainders[0] - floors[0].to_complex();
  const GaussianInt lattice = sys.combine(floors);
  const auto gamma = static_cast<double>(sys.Gamma());
  return {mod_real(frac.real() + static_cast<double>(lattice.re), gamma),
          mod_real(frac.imag() + static_cast<double>(lattice.im), gamma)};
}

CommonSolution solve_common(std::span<const Complex> remainders, const ModulusSystem& sys) {
  require_count(remainders.size(), sys, "solve_common");
  const auto M = static_cast<double>(sys.M());
  const Complex rc{mod_real(remainders[0].real(), M), mod_real(remainders[0].imag(), M)};
  CommonSolution sol;
  sol.r_common = rc;
  sol.q.reserve(remainders.size());
  for (const auto& r : remainders) {
    const Complex res{mod_real(r.real(), M), mod_real(r.imag(), M)};
    const double dr = circ_dist_real(res.real(), rc.real(), M);
    const double di = circ_dist_real(res.imag(), rc.imag(), M);
    if (std::abs(dr) > 1e-9 * M || std::abs(di) > 1e-9 * M)
      fail(ErrorCode::inconsistent_remainders,
           "solve_common: remainder " + to_string(r) + " disagrees with the common remainder " + to_string(rc) +
               " modulo " + std::to_string(sys.M()));
    sol.q.push_back(round_c((r - rc) / M));
  }
  sol.N0 = sys.combine(sol.q);
  sol.N = M * sol.N0.to_complex() + rc;
  return sol;
}

bool verify_remainders(Complex N, std::span<const Complex> remainders, const ModulusSystem& sys, double tol) {
  if (remainders.size() != sys.size()) return false;
  const auto mods = sys.moduli();
  for (std::size_t i = 0; i < remainders.size(); ++i) {
    const double scale = std::abs(mods[i].to_complex());
    if (std::abs(circ_dist(remainders[i], N, mods[i])) > tol * scale) return false;
  }
  return true;
}

}  // namespace ccrt
