// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/gaussian_int.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "ccrt/error.hpp"
#include "text.hpp"

namespace ccrt {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* op) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::overflow, std::string("Gaussian integer overflow in ") + op);
  return static_cast<std::int64_t>(v);
}

// floor(a / b) for b > 0.
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

struct Wide {
  i128 re;
  i128 im;
};

Wide wide_mul(GaussianInt a, GaussianInt b) {
  return {static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im,
          static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re};
}

void require_nonzero(GaussianInt m) {
  if (m.is_zero()) fail(ErrorCode::division_by_zero, "division by the zero Gaussian integer");
}

std::int64_t parse_int(const std::string& tok, std::string_view whole) {
  if (tok.empty() || tok == "+") return 1;
  if (tok == "-") return -1;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (*first == '+') ++first;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range)
    fail(ErrorCode::overflow, "Gaussian integer literal out of range: '" + std::string(whole) + "'");
  if (ec != std::errc() || ptr != last)
    fail(ErrorCode::invalid_argument, "malformed Gaussian integer: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

GaussianInt add(GaussianInt a, GaussianInt b) {
  return {narrow(static_cast<i128>(a.re) + b.re, "add"), narrow(static_cast<i128>(a.im) + b.im, "add")};
}

GaussianInt sub(GaussianInt a, GaussianInt b) {
  return {narrow(static_cast<i128>(a.re) - b.re, "sub"), narrow(static_cast<i128>(a.im) - b.im, "sub")};
}

GaussianInt mul(GaussianInt a, GaussianInt b) {
  // Each partial product of two int64 values fits in i128; their sum too.
  const Wide w = wide_mul(a, b);
  return {narrow(w.re, "mul"), narrow(w.im, "mul")};
}

GaussianInt conj(GaussianInt a) { return {a.re, narrow(-static_cast<i128>(a.im), "conj")}; }

GaussianInt neg(GaussianInt a) {
  return {narrow(-static_cast<i128>(a.re), "neg"), narrow(-static_cast<i128>(a.im), "neg")};
}

std::int64_t norm(GaussianInt a) {
  return narrow(static_cast<i128>(a.re) * a.re + static_cast<i128>(a.im) * a.im, "norm");
}

bool is_unit(GaussianInt a) noexcept {
  return (a.re == 0 && (a.im == 1 || a.im == -1)) || (a.im == 0 && (a.re == 1 || a.re == -1));
}

GaussianInt rounded_quotient(Complex n, GaussianInt m) {
  require_nonzero(m);
  if (!std::isfinite(n.real()) || !std::isfinite(n.imag()))
    fail(ErrorCode::domain, "rounded_quotient of a non-finite value");
  const double nm = static_cast<double>(m.re) * m.re + static_cast<double>(m.im) * m.im;
  const double x = (n.real() * m.re + n.imag() * m.im) / nm;
  const double y = (n.imag() * m.re - n.real() * m.im) / nm;
  const double rx = std::floor(x + 0.5);
  const double ry = std::floor(y + 0.5);
  constexpr double lim = 9.2e18;
  if (std::abs(rx) > lim || std::abs(ry) > lim) fail(ErrorCode::overflow, "rounded_quotient out of range");
  return {static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)};
}

GaussianInt rounded_quotient(GaussianInt n, GaussianInt m) {
  require_nonzero(m);
  const Wide p = wide_mul(n, conj(m));
  const i128 d = static_cast<i128>(m.re) * m.re + static_cast<i128>(m.im) * m.im;
  // floor(p/d + 1/2) == floor((2p + d) / 2d)
  return {narrow(floor_div(2 * p.re + d, 2 * d), "rounded_quotient"),
          narrow(floor_div(2 * p.im + d, 2 * d), "rounded_quotient")};
}

GaussianInt floor_quotient(GaussianInt n, GaussianInt m) {
  require_nonzero(m);
  const Wide p = wide_mul(n, conj(m));
  const i128 d = static_cast<i128>(m.re) * m.re + static_cast<i128>(m.im) * m.im;
  return {narrow(floor_div(p.re, d), "floor_quotient"), narrow(floor_div(p.im, d), "floor_quotient")};
}

GaussianInt reduce(GaussianInt n, GaussianInt m) { return sub(n, mul(m, floor_quotient(n, m))); }

GaussianInt reduce(GaussianInt n, std::int64_t r) {
  if (r <= 0) fail(ErrorCode::invalid_argument, "reduce: modulus must be a positive integer");
  auto md = [r](std::int64_t x) {
    std::int64_t v = x % r;
    return v < 0 ? v + r : v;
  };
  return {md(n.re), md(n.im)};
}

bool divides(GaussianInt d, GaussianInt n) {
  if (d.is_zero()) return n.is_zero();
  return reduce(n, d).is_zero();
}

GaussianInt normalize_associate(GaussianInt z, GaussianInt* unit) {
  if (z.is_zero()) fail(ErrorCode::invalid_argument, "normalize_associate of zero");
  GaussianInt u{1, 0};
  // At most three quarter turns reach the half-open first quadrant.
  for (int k = 0; k < 4 && !(z.re > 0 && z.im >= 0); ++k) {
    z = mul(z, GaussianInt{0, 1});
    u = mul(u, GaussianInt{0, 1});
  }
  if (unit) *unit = u;
  return z;
}

Bezout extended_gcd(GaussianInt a, GaussianInt b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::invalid_argument, "gcd(0, 0) is undefined");
  GaussianInt r0 = a, r1 = b;
  GaussianInt s0{1, 0}, s1{0, 0};
  GaussianInt t0{0, 0}, t1{1, 0};
  while (!r1.is_zero()) {
    const GaussianInt q = rounded_quotient(r0, r1);
    GaussianInt r2 = sub(r0, mul(q, r1));
    GaussianInt s2 = sub(s0, mul(q, s1));
    GaussianInt t2 = sub(t0, mul(q, t1));
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  GaussianInt unit;
  const GaussianInt g = normalize_associate(r0, &unit);
  Bezout out{g, mul(s0, unit), mul(t0, unit)};
  if (add(mul(out.u, a), mul(out.v, b)) != out.g)
    fail(ErrorCode::overflow, "extended_gcd: Bezout identity check failed");
  return out;
}

GaussianInt gcd(GaussianInt a, GaussianInt b) { return extended_gcd(a, b).g; }

GaussianInt mod_inverse(GaussianInt a, GaussianInt m) {
  require_nonzero(m);
  const Bezout bz = extended_gcd(a, m);
  if (bz.g != GaussianInt{1, 0})
    fail(ErrorCode::no_inverse, to_string(a) + " has no inverse modulo " + to_string(m));
  return reduce(bz.u, m);
}

bool is_coprime(GaussianInt a, GaussianInt b) { return norm(gcd(a, b)) == 1; }

std::string to_string(GaussianInt z) {
  if (z.im == 0) return std::to_string(z.re);
  std::string imag;
  if (z.im == 1)
    imag = "i";
  else if (z.im == -1)
    imag = "-i";
  else
    imag = std::to_string(z.im) + "i";
  if (z.re == 0) return imag;
  return std::to_string(z.re) + (z.im > 0 ? "+" : "") + imag;
}

GaussianInt parse_gaussian(std::string_view text) {
  const detail::ComplexTokens tok = detail::split_complex(text);
  GaussianInt z;
  if (!tok.re.empty()) {
    if (tok.re == "+" || tok.re == "-")
      fail(ErrorCode::invalid_argument, "malformed Gaussian integer: '" + std::string(text) + "'");
    z.re = parse_int(tok.re, text);
  }
  if (tok.has_im) z.im = parse_int(tok.im, text);
  return z;
}

}  // namespace ccrt
