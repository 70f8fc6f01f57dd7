// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "ccrt/ccrt.h"

namespace {

bool eq(ccrt_gint a, ccrt_gint b) { return a.re == b.re && a.im == b.im; }

struct SystemHandle {
  ccrt_system* p = nullptr;
  ~SystemHandle() { ccrt_system_destroy(p); }
};

}  // namespace

TEST_CASE("gaussian integer calls") {
  ccrt_gint z{};
  REQUIRE(ccrt_gint_parse("13+16i", &z) == CCRT_OK);
  CHECK(eq(z, {13, 16}));
  char buf[64];
  REQUIRE(ccrt_gint_format({-3, -4}, buf, sizeof buf) == CCRT_OK);
  CHECK(std::string(buf) == "-3-4i");
  CHECK(ccrt_gint_format({-3, -4}, buf, 3) == CCRT_E_LIMIT);

  ccrt_gint g{}, u{}, v{};
  REQUIRE(ccrt_gint_extended_gcd({19, 8}, {3, 4}, &g, &u, &v) == CCRT_OK);
  CHECK(eq(g, {1, 0}));
  CHECK(eq(u, {2, 0}));
  CHECK(eq(v, {-7, 4}));

  ccrt_gint p{};
  REQUIRE(ccrt_gint_mul({1, 4}, {-3, -4}, &p) == CCRT_OK);
  CHECK(eq(p, {13, -16}));
  CHECK(ccrt_gint_mul({INT64_MAX, 0}, {2, 0}, &p) == CCRT_E_OVERFLOW);
  CHECK(std::strlen(ccrt_last_error()) > 0);

  CHECK(ccrt_gint_rounded_quotient({1, 1}, {0, 0}, &p) == CCRT_E_DIVISION_BY_ZERO);
  REQUIRE(ccrt_gint_gcd({2, 0}, {1, 1}, &p) == CCRT_OK);
  CHECK(eq(p, {1, 1}));
  CHECK(ccrt_gint_mod_inverse({1, 1}, {2, 0}, &p) == CCRT_E_NO_INVERSE);
  int c = -1;
  REQUIRE(ccrt_gint_is_coprime({1, 1}, {1, -1}, &c) == CCRT_OK);
  CHECK(c == 0);
  CHECK(ccrt_gint_parse("1+x", &z) == CCRT_E_INVALID_ARGUMENT);
  CHECK(ccrt_gint_parse(nullptr, &z) == CCRT_E_INVALID_ARGUMENT);
}

TEST_CASE("complex modulo calls") {
  ccrt_complex r{};
  REQUIRE(ccrt_mod({2, 5}, {3, 4}, &r) == CCRT_OK);
  CHECK(std::abs(r.re + 1) < 1e-12);
  CHECK(std::abs(r.im - 1) < 1e-12);
  REQUIRE(ccrt_circ_dist({3, 3}, {1, -2}, {4, 0}, &r) == CCRT_OK);
  CHECK(std::abs(r.re + 2) < 1e-12);
  CHECK(std::abs(r.im - 1) < 1e-12);
  CHECK(ccrt_mod({1, 1}, {0, 0}, &r) == CCRT_E_DIVISION_BY_ZERO);
  ccrt_complex z{};
  REQUIRE(ccrt_complex_parse("1.5-2i", &z) == CCRT_OK);
  CHECK(z.re == 1.5);
  CHECK(z.im == -2.0);
}

TEST_CASE("system handle and reconstruction") {
  const ccrt_gint cof[] = {{1, 4}, {-3, -4}, {13, 16}};
  SystemHandle h;
  REQUIRE(ccrt_system_create(2, cof, 3, &h.p) == CCRT_OK);
  CHECK(ccrt_system_size(h.p) == 3);
  CHECK(ccrt_system_M(h.p) == 2);
  CHECK(ccrt_system_gamma(h.p) == 425);
  ccrt_gint v{};
  REQUIRE(ccrt_system_value(h.p, 0, 1, &v) == CCRT_OK);
  CHECK(eq(v, {25, -100}));
  REQUIRE(ccrt_system_value(h.p, 2, 3, &v) == CCRT_OK);
  CHECK(eq(v, {26, 32}));
  CHECK(ccrt_system_value(h.p, 3, 0, &v) == CCRT_E_INVALID_ARGUMENT);
  CHECK(ccrt_system_value(h.p, 0, 7, &v) == CCRT_E_INVALID_ARGUMENT);

  ccrt_complex rem[3];
  REQUIRE(ccrt_remainders(h.p, {17, 18}, rem) == CCRT_OK);
  CHECK(std::abs(rem[2].re + 15) < 1e-9);
  CHECK(std::abs(rem[2].im - 44) < 1e-9);

  ccrt_common_solution s{};
  ccrt_gint q[3];
  REQUIRE(ccrt_solve_common(h.p, rem, &s, q) == CCRT_OK);
  CHECK(s.n.re == 17.0);
  CHECK(s.n.im == 18.0);
  CHECK(eq(s.n0, {8, 9}));
  CHECK(eq(q[2], {-8, 22}));

  const double sig[] = {0.2, 0.3, 0.4};
  ccrt_estimate est{};
  REQUIRE(ccrt_estimate_run(h.p, rem, sig, &est, nullptr) == CCRT_OK);
  CHECK(std::abs(est.n_hat.re - 17) < 1e-9);
  CHECK(est.evaluations == 6);
  CHECK(est.common_stage_mults == 50);
  double obj = -1;
  REQUIRE(ccrt_objective(h.p, {17, 18}, rem, sig, &obj) == CCRT_OK);
  CHECK(obj < 1e-18);
  const double bad[] = {0.2, 0.0, 0.4};
  CHECK(ccrt_estimate_run(h.p, rem, bad, &est, nullptr) == CCRT_E_INVALID_ARGUMENT);

  ccrt_system* none = nullptr;
  const ccrt_gint assoc[] = {{1, 1}, {1, -1}};
  CHECK(ccrt_system_create(1, assoc, 2, &none) == CCRT_E_NOT_COPRIME);
  CHECK(none == nullptr);
}

TEST_CASE("coprime reconstruction and dual real") {
  const ccrt_gint cof[] = {{5, 0}, {6, 0}, {7, 0}};
  SystemHandle h;
  REQUIRE(ccrt_system_create(1, cof, 3, &h.p) == CCRT_OK);
  ccrt_complex rem[3], out{};
  REQUIRE(ccrt_remainders(h.p, {123.5, 17.25}, rem) == CCRT_OK);
  REQUIRE(ccrt_reconstruct_theorem1(h.p, rem, &out) == CCRT_OK);
  CHECK(std::abs(out.re - 123.5) < 1e-9);
  CHECK(std::abs(out.im - 17.25) < 1e-9);
  const double sig[] = {1, 1, 1};
  REQUIRE(ccrt_estimate_dual_real(h.p, rem, sig, &out) == CCRT_OK);
  CHECK(std::abs(out.re - 123.5) < 1e-9);
}

TEST_CASE("robustness and noise calls") {
  const ccrt_gint cof[] = {{3, 4}, {3, -4}};
  SystemHandle h;
  REQUIRE(ccrt_system_create(10, cof, 2, &h.p) == CCRT_OK);
  const ccrt_complex d[] = {{1, 0.5}, {-1, -0.5}};
  const double sig[] = {1, 1};
  ccrt_robustness rb{};
  REQUIRE(ccrt_robustness_analyze(h.p, {120, 130}, d, sig, &rb) == CCRT_OK);
  CHECK(rb.condition_holds == 1);
  CHECK(rb.in_region == 1);
  CHECK(rb.weighted_mean.re == 0.0);

  double r = 0;
  const double s3[] = {0.2, 0.3, 0.4};
  REQUIRE(ccrt_theoretical_rmse(s3, 3, &r) == CCRT_OK);
  CHECK(std::abs(r - 0.2173) < 5e-5);

  ccrt_probability p1{}, p4{};
  const double s2[] = {2.4, 2.5};
  REQUIRE(ccrt_error_preserving_probability(s2, 2, 10, 5000, 1, 1, &p1) == CCRT_OK);
  REQUIRE(ccrt_error_preserving_probability(s2, 2, 10, 5000, 1, 4, &p4) == CCRT_OK);
  CHECK(p1.p_joint_empirical == p4.p_joint_empirical);

  REQUIRE(ccrt_three_sigma_check({3, 4}, 5.0 / (6.0 * std::sqrt(2.0)), 400, &r) == CCRT_OK);
  CHECK(r > 0.9946);
  REQUIRE(ccrt_snr_from_u(0.01, &r) == CCRT_OK);
  CHECK(std::abs(r - 35.2288) < 1e-4);

  ccrt_complex y{}, rr{};
  REQUIRE(ccrt_channel_fold({2, 5}, {3, 4}, &y, &rr) == CCRT_OK);
  CHECK(std::abs(rr.re + 1) < 1e-12);
  CHECK(std::abs(rr.im - 1) < 1e-12);
}

TEST_CASE("campaign calls") {
  const char* cfg = R"({"campaign": "rmse", "system": {"M": 10, "cofactors": ["3+4i", "3-4i"]},
    "noise": {"snr_db": [36]}, "trials": 200, "seed": 4})";
  char* a = nullptr;
  char* b = nullptr;
  char* echo = nullptr;
  uint64_t seed = 0;
  REQUIRE(ccrt_campaign_run(cfg, 0, 0, 1, &a, &echo, &seed) == CCRT_OK);
  REQUIRE(ccrt_campaign_run(cfg, 0, 0, 3, &b, nullptr, nullptr) == CCRT_OK);
  CHECK(seed == 4);
  CHECK(std::string(a) == std::string(b));
  CHECK(std::string(echo).find("\"campaign\":\"rmse\"") != std::string::npos);
  ccrt_string_free(a);
  ccrt_string_free(b);
  ccrt_string_free(echo);

  char* bad = nullptr;
  CHECK(ccrt_campaign_run(R"({"campaign": "rmse"})", 0, 0, 1, &bad, nullptr, nullptr) == CCRT_E_CONFIG);
  CHECK(bad == nullptr);
  CHECK(std::string(ccrt_last_error()).find("system") != std::string::npos);

  const int Ls[] = {2, 4, 8};
  char* ops = nullptr;
  REQUIRE(ccrt_count_ops_csv(Ls, 3, 1, &ops) == CCRT_OK);
  CHECK(std::string(ops).find("4,8,82,128,26") != std::string::npos);
  ccrt_string_free(ops);
  CHECK(ccrt_fnv1a("a", 1) == 0xaf63dc4c8601ec8cULL);
  CHECK(std::string(ccrt_version()).size() > 0);
}
