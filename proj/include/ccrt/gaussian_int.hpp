// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_GAUSSIAN_INT_HPP
#define CCRT_GAUSSIAN_INT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace ccrt {

using Complex = std::complex<double>;

/// Exact element of Z[i] with 64-bit signed components.
///
/// Every arithmetic operation is overflow-checked and throws
/// Error(ErrorCode::overflow) instead of wrapping. The instances used in
/// practice (products of cofactors up to a few million) sit far inside the
/// representable range; the hard limit is |re|, |im| < 2^63.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussianInt() = default;
  constexpr GaussianInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  bool is_zero() const noexcept { return re == 0 && im == 0; }
  Complex to_complex() const noexcept {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

GaussianInt add(GaussianInt a, GaussianInt b);
GaussianInt sub(GaussianInt a, GaussianInt b);
GaussianInt mul(GaussianInt a, GaussianInt b);
GaussianInt conj(GaussianInt a);
GaussianInt neg(GaussianInt a);
std::int64_t norm(GaussianInt a);

inline GaussianInt operator+(GaussianInt a, GaussianInt b) { return add(a, b); }
inline GaussianInt operator-(GaussianInt a, GaussianInt b) { return sub(a, b); }
inline GaussianInt operator*(GaussianInt a, GaussianInt b) { return mul(a, b); }
inline GaussianInt operator-(GaussianInt a) { return neg(a); }

bool is_unit(GaussianInt a) noexcept;

// [n/m] with the half-open convention -1/2 <= x - [x] < 1/2 on each
// component, i.e. [x] = floor(x + 1/2).
GaussianInt rounded_quotient(Complex n, GaussianInt m);
// Exact variant: the comparison happens on 2*(n*conj(m)) against norm(m).
GaussianInt rounded_quotient(GaussianInt n, GaussianInt m);
// Exact floor(n/m), componentwise.
GaussianInt floor_quotient(GaussianInt n, GaussianInt m);

/// Exact n mod m, landing in the fundamental region F_m.
GaussianInt reduce(GaussianInt n, GaussianInt m);
/// n mod r for a positive rational integer r, componentwise into [0, r).
GaussianInt reduce(GaussianInt n, std::int64_t r);

bool divides(GaussianInt d, GaussianInt n);

/// Unit multiple u*z with re > 0 and im >= 0 (z != 0). Returns the unit
/// through `unit` when non-null.
GaussianInt normalize_associate(GaussianInt z, GaussianInt* unit = nullptr);

GaussianInt gcd(GaussianInt a, GaussianInt b);

struct Bezout {
  GaussianInt g;  // normalized gcd
  GaussianInt u;
  GaussianInt v;  // u*a + v*b == g
};

Bezout extended_gcd(GaussianInt a, GaussianInt b);

/// x with a*x == 1 (mod m), reduced into F_m.
GaussianInt mod_inverse(GaussianInt a, GaussianInt m);

bool is_coprime(GaussianInt a, GaussianInt b);

/// "a+bi" text form: "7", "-3-4i", "5i", "-i", "1+i".
std::string to_string(GaussianInt z);
/// Accepts the forms produced by to_string plus surrounding/inner
/// whitespace, an explicit leading '+', "0+5i", and U+2212 as minus.
GaussianInt parse_gaussian(std::string_view text);

}  // namespace ccrt

#endif  // CCRT_GAUSSIAN_INT_HPP
