// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/complex_mod.hpp"

#include <charconv>
#include <cmath>

#include "ccrt/error.hpp"
#include "text.hpp"

namespace ccrt {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53
constexpr double kIntLimit = 9.2e18;

void require_finite(Complex z, const char* op) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorCode::domain, std::string(op) + ": non-finite input");
}

void require_nonzero(GaussianInt m, const char* op) {
  if (m.is_zero()) fail(ErrorCode::division_by_zero, std::string(op) + ": zero modulus");
}

bool exact_lattice(Complex z) {
  return std::abs(z.real()) < kExactLimit && std::abs(z.imag()) < kExactLimit &&
         std::trunc(z.real()) == z.real() && std::trunc(z.imag()) == z.imag();
}

GaussianInt to_lattice(Complex z) {
  return {static_cast<std::int64_t>(z.real()), static_cast<std::int64_t>(z.imag())};
}

std::int64_t to_int(double v, const char* op) {
  if (std::abs(v) > kIntLimit) fail(ErrorCode::overflow, std::string(op) + ": value out of integer range");
  return static_cast<std::int64_t>(v);
}

Complex times(GaussianInt m, GaussianInt q) {
  const double mr = static_cast<double>(m.re), mi = static_cast<double>(m.im);
  const double qr = static_cast<double>(q.re), qi = static_cast<double>(q.im);
  return {mr * qr - mi * qi, mr * qi + mi * qr};
}

}  // namespace

Complex coordinates(Complex z, GaussianInt m) {
  require_nonzero(m, "coordinates");
  if (m.im == 0) return z / static_cast<double>(m.re);
  if (m.re == 0) {
    const double b = static_cast<double>(m.im);
    return {z.imag() / b, -z.real() / b};
  }
  const double mr = static_cast<double>(m.re), mi = static_cast<double>(m.im);
  const double nm = mr * mr + mi * mi;
  return {(z.real() * mr + z.imag() * mi) / nm, (z.imag() * mr - z.real() * mi) / nm};
}

GaussianInt floor_c(Complex z) {
  require_finite(z, "floor_c");
  return {to_int(std::floor(z.real()), "floor_c"), to_int(std::floor(z.imag()), "floor_c")};
}

GaussianInt round_c(Complex z) {
  require_finite(z, "round_c");
  return {to_int(std::floor(z.real() + 0.5), "round_c"), to_int(std::floor(z.imag() + 0.5), "round_c")};
}

Complex mod_c(Complex n, GaussianInt m) {
  require_nonzero(m, "mod_c");
  require_finite(n, "mod_c");
  if (exact_lattice(n)) return reduce(to_lattice(n), m).to_complex();
  if (m.im == 0 && m.re > 0) {
    const double r = static_cast<double>(m.re);
    return {mod_real(n.real(), r), mod_real(n.imag(), r)};
  }
  GaussianInt q = floor_c(coordinates(n, m));
  Complex r = n - times(m, q);
  // One correction step when rounding pushed the result across an edge.
  const Complex c = coordinates(r, m);
  GaussianInt fix{(c.real() < 0.0) ? -1 : (c.real() >= 1.0 ? 1 : 0),
                  (c.imag() < 0.0) ? -1 : (c.imag() >= 1.0 ? 1 : 0)};
  if (!fix.is_zero()) {
    q = q + fix;
    r = n - times(m, q);
  }
  return r;
}

Complex circ_dist(Complex x, Complex y, GaussianInt m) {
  require_nonzero(m, "circ_dist");
  require_finite(x, "circ_dist");
  require_finite(y, "circ_dist");
  const Complex d = x - y;
  if (exact_lattice(d)) {
    const GaussianInt dl = to_lattice(d);
    return (dl - m * rounded_quotient(dl, m)).to_complex();
  }
  GaussianInt q = round_c(coordinates(d, m));
  Complex r = d - times(m, q);
  const Complex c = coordinates(r, m);
  GaussianInt fix{(c.real() < -0.5) ? -1 : (c.real() >= 0.5 ? 1 : 0),
                  (c.imag() < -0.5) ? -1 : (c.imag() >= 0.5 ? 1 : 0)};
  if (!fix.is_zero()) {
    q = q + fix;
    r = d - times(m, q);
  }
  return r;
}

double mod_real(double x, double m) {
  if (!(m > 0.0)) fail(ErrorCode::division_by_zero, "mod_real: modulus must be positive");
  if (!std::isfinite(x)) fail(ErrorCode::domain, "mod_real: non-finite input");
  double r = x - m * std::floor(x / m);
  if (r >= m) r -= m;
  if (r < 0.0) r += m;
  if (r >= m) r = 0.0;  // x == -tiny can round to exactly m
  return r;
}

double circ_dist_real(double x, double y, double m) {
  if (!(m > 0.0)) fail(ErrorCode::division_by_zero, "circ_dist_real: modulus must be positive");
  const double d = x - y;
  double r = d - m * std::floor(d / m + 0.5);
  if (r >= 0.5 * m) r -= m;
  if (r < -0.5 * m) r += m;
  return r;
}

bool in_region(Complex z, const Region& region, double tol) {
  require_nonzero(region.modulus, "in_region");
  if (exact_lattice(z) && tol == 0.0) {
    // Exact test: compare 2*z*conj(m) against the norm scaled bounds.
    const GaussianInt zl = to_lattice(z);
    const __int128 pr = static_cast<__int128>(zl.re) * region.modulus.re +
                        static_cast<__int128>(zl.im) * region.modulus.im;
    const __int128 pi = static_cast<__int128>(zl.im) * region.modulus.re -
                        static_cast<__int128>(zl.re) * region.modulus.im;
    const __int128 nm = static_cast<__int128>(region.modulus.re) * region.modulus.re +
                        static_cast<__int128>(region.modulus.im) * region.modulus.im;
    if (region.kind == RegionKind::fundamental) return pr >= 0 && pr < nm && pi >= 0 && pi < nm;
    return 2 * pr >= -nm && 2 * pr < nm && 2 * pi >= -nm && 2 * pi < nm;
  }
  const Complex c = coordinates(z, region.modulus);
  const double lo = region.kind == RegionKind::fundamental ? 0.0 : -0.5;
  const double hi = lo + 1.0;
  return c.real() >= lo - tol && c.real() < hi + tol && c.imag() >= lo - tol && c.imag() < hi + tol;
}

std::string to_string(Complex z) {
  const std::string re = detail::format_double(z.real());
  if (z.imag() == 0.0) return re;
  const std::string im = detail::format_double(z.imag());
  const bool neg = z.imag() < 0.0;
  if (z.real() == 0.0) return im + "i";
  return re + (neg ? "" : "+") + im + "i";
}

Complex parse_complex(std::string_view text) {
  const detail::ComplexTokens tok = detail::split_complex(text);
  auto number = [&](const std::string& s, bool coefficient) -> double {
    if (coefficient && (s.empty() || s == "+")) return 1.0;
    if (coefficient && s == "-") return -1.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
      fail(ErrorCode::invalid_argument, "malformed complex value: '" + std::string(text) + "'");
    return v;
  };
  double re = 0.0, im = 0.0;
  if (!tok.re.empty()) re = number(tok.re, false);
  if (tok.has_im) im = number(tok.im, true);
  return {re, im};
}

}  // namespace ccrt
