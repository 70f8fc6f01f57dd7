// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_COMPLEX_MOD_HPP
#define CCRT_COMPLEX_MOD_HPP

#include <string>
#include <string_view>

#include "ccrt/gaussian_int.hpp"

namespace ccrt {

// Floating-point modulo arithmetic with Gaussian-integer moduli.
//
// A modulus m tiles the plane with the squares m*(a+bi); coordinates of z
// with respect to m are z/m. Two canonical tiles are used throughout:
//   F_m = { m(a+bi) : 0 <= a,b < 1 }        (fundamental region)
//   S_m = { m(c+di) : -1/2 <= c,d < 1/2 }   (centered region)
// Inputs whose components are exact integers below 2^53 take an exact
// integer path, so half-integer and lattice boundaries resolve by the
// stated half-open conventions rather than by rounding luck.

enum class RegionKind { fundamental, centered };

struct Region {
  GaussianInt modulus;
  RegionKind kind = RegionKind::fundamental;
};

/// Coordinates z/m. Real and purely imaginary moduli divide per component.
Complex coordinates(Complex z, GaussianInt m);

/// Componentwise floor.
GaussianInt floor_c(Complex z);
/// Componentwise rounding with [x] = floor(x + 1/2).
GaussianInt round_c(Complex z);

/// <n>_m = n - m*floor(n/m), a value in F_m.
Complex mod_c(Complex n, GaussianInt m);

/// d_m(x, y) = x - y - [(x - y)/m]*m, a value in S_m.
Complex circ_dist(Complex x, Complex y, GaussianInt m);

/// Real special cases for a positive real modulus.
double mod_real(double x, double m);
double circ_dist_real(double x, double y, double m);

/// Half-open membership by coordinates. `tol` widens every bound by
/// tol (measured in coordinate units, i.e. relative to |m|).
bool in_region(Complex z, const Region& region, double tol = 0.0);

std::string to_string(Complex z);
/// Parses "a+bi" with real coefficients ("1.5-2e-3i", "-0.25", "3i").
Complex parse_complex(std::string_view text);

}  // namespace ccrt

#endif  // CCRT_COMPLEX_MOD_HPP
