// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/ccrt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "ccrt/adc.hpp"
#include "ccrt/crt.hpp"
#include "ccrt/error.hpp"
#include "ccrt/experiments.hpp"
#include "ccrt/mle.hpp"
#include "ccrt/noise.hpp"
#include "ccrt/robustness.hpp"

struct ccrt_system {
  ccrt::ModulusSystem sys;
};

namespace {

thread_local std::string g_last_error;

ccrt_status to_status(ccrt::ErrorCode c) {
  switch (c) {
    case ccrt::ErrorCode::invalid_argument: return CCRT_E_INVALID_ARGUMENT;
    case ccrt::ErrorCode::overflow: return CCRT_E_OVERFLOW;
    case ccrt::ErrorCode::division_by_zero: return CCRT_E_DIVISION_BY_ZERO;
    case ccrt::ErrorCode::not_coprime: return CCRT_E_NOT_COPRIME;
    case ccrt::ErrorCode::no_inverse: return CCRT_E_NO_INVERSE;
    case ccrt::ErrorCode::inconsistent_remainders: return CCRT_E_INCONSISTENT;
    case ccrt::ErrorCode::domain: return CCRT_E_DOMAIN;
    case ccrt::ErrorCode::limit_exceeded: return CCRT_E_LIMIT;
    case ccrt::ErrorCode::precondition: return CCRT_E_PRECONDITION;
    case ccrt::ErrorCode::config: return CCRT_E_CONFIG;
    case ccrt::ErrorCode::io: return CCRT_E_IO;
  }
  return CCRT_E_INTERNAL;
}

template <class Fn>
ccrt_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CCRT_OK;
  } catch (const ccrt::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CCRT_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CCRT_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) ccrt::fail(ccrt::ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

ccrt::GaussianInt in(ccrt_gint z) { return {z.re, z.im}; }
ccrt_gint out(ccrt::GaussianInt z) { return {z.re, z.im}; }
ccrt::Complex in(ccrt_complex z) { return {z.re, z.im}; }
ccrt_complex out(ccrt::Complex z) { return {z.real(), z.imag()}; }

std::vector<ccrt::Complex> complex_array(const ccrt_complex* p, std::size_t n) {
  need(p, "array");
  std::vector<ccrt::Complex> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(in(p[i]));
  return v;
}

std::vector<double> double_array(const double* p, std::size_t n) {
  need(p, "sigmas");
  return {p, p + n};
}

void copy_text(const std::string& s, char* buf, std::size_t cap) {
  need(buf, "buffer");
  if (s.size() + 1 > cap) ccrt::fail(ccrt::ErrorCode::limit_exceeded, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const ccrt::ModulusSystem& sys_of(const ccrt_system* s) {
  need(s, "system");
  return s->sys;
}

ccrt::NoisyRemainders noisy(const ccrt::ModulusSystem& sys, const ccrt_complex* r, const double* sigmas) {
  return {complex_array(r, sys.size()), double_array(sigmas, sys.size())};
}

}  // namespace

extern "C" {

const char* ccrt_last_error(void) { return g_last_error.c_str(); }
const char* ccrt_version(void) { return ccrt::version_string(); }
void ccrt_string_free(char* s) { std::free(s); }

ccrt_status ccrt_gint_parse(const char* text, ccrt_gint* o) {
  return guarded([&] {
    need(text, "text");
    need(o, "out");
    *o = out(ccrt::parse_gaussian(text));
  });
}

ccrt_status ccrt_gint_format(ccrt_gint z, char* buf, size_t cap) {
  return guarded([&] { copy_text(ccrt::to_string(in(z)), buf, cap); });
}

ccrt_status ccrt_gint_mul(ccrt_gint a, ccrt_gint b, ccrt_gint* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::mul(in(a), in(b)));
  });
}

ccrt_status ccrt_gint_rounded_quotient(ccrt_gint n, ccrt_gint m, ccrt_gint* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::rounded_quotient(in(n), in(m)));
  });
}

ccrt_status ccrt_gint_gcd(ccrt_gint a, ccrt_gint b, ccrt_gint* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::gcd(in(a), in(b)));
  });
}

ccrt_status ccrt_gint_extended_gcd(ccrt_gint a, ccrt_gint b, ccrt_gint* g, ccrt_gint* u, ccrt_gint* v) {
  return guarded([&] {
    need(g, "g");
    need(u, "u");
    need(v, "v");
    const ccrt::Bezout bz = ccrt::extended_gcd(in(a), in(b));
    *g = out(bz.g);
    *u = out(bz.u);
    *v = out(bz.v);
  });
}

ccrt_status ccrt_gint_mod_inverse(ccrt_gint a, ccrt_gint m, ccrt_gint* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::mod_inverse(in(a), in(m)));
  });
}

ccrt_status ccrt_gint_is_coprime(ccrt_gint a, ccrt_gint b, int* o) {
  return guarded([&] {
    need(o, "out");
    *o = ccrt::is_coprime(in(a), in(b)) ? 1 : 0;
  });
}

ccrt_status ccrt_complex_parse(const char* text, ccrt_complex* o) {
  return guarded([&] {
    need(text, "text");
    need(o, "out");
    *o = out(ccrt::parse_complex(text));
  });
}

ccrt_status ccrt_complex_format(ccrt_complex z, char* buf, size_t cap) {
  return guarded([&] { copy_text(ccrt::to_string(in(z)), buf, cap); });
}

ccrt_status ccrt_mod(ccrt_complex n, ccrt_gint m, ccrt_complex* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::mod_c(in(n), in(m)));
  });
}

ccrt_status ccrt_circ_dist(ccrt_complex x, ccrt_complex y, ccrt_gint m, ccrt_complex* o) {
  return guarded([&] {
    need(o, "out");
    *o = out(ccrt::circ_dist(in(x), in(y), in(m)));
  });
}

ccrt_status ccrt_system_create(int64_t M, const ccrt_gint* cofactors, size_t count, ccrt_system** o) {
  return guarded([&] {
    need(o, "out");
    *o = nullptr;
    if (count > 0) need(cofactors, "cofactors");
    std::vector<ccrt::GaussianInt> cs;
    for (std::size_t i = 0; i < count; ++i) cs.push_back(in(cofactors[i]));
    *o = new ccrt_system{ccrt::build_system(M, std::move(cs))};
  });
}

void ccrt_system_destroy(ccrt_system* s) { delete s; }
size_t ccrt_system_size(const ccrt_system* s) { return s ? s->sys.size() : 0; }
int64_t ccrt_system_M(const ccrt_system* s) { return s ? s->sys.M() : 0; }
int64_t ccrt_system_gamma(const ccrt_system* s) { return s ? s->sys.Gamma() : 0; }

ccrt_status ccrt_system_value(const ccrt_system* s, size_t index, int kind, ccrt_gint* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    if (index >= sys.size()) ccrt::fail(ccrt::ErrorCode::invalid_argument, "index out of range");
    switch (kind) {
      case 0: *o = out(sys.cofactors()[index]); break;
      case 1: *o = out(sys.gammas()[index]); break;
      case 2: *o = out(sys.gamma_bars()[index]); break;
      case 3: *o = out(sys.moduli()[index]); break;
      default: ccrt::fail(ccrt::ErrorCode::invalid_argument, "unknown value kind");
    }
  });
}

ccrt_status ccrt_remainders(const ccrt_system* s, ccrt_complex n, ccrt_complex* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    const auto r = ccrt::remainder_vector(in(n), sys);
    for (std::size_t i = 0; i < r.size(); ++i) o[i] = out(r[i]);
  });
}

ccrt_status ccrt_reconstruct_theorem1(const ccrt_system* s, const ccrt_complex* remainders, ccrt_complex* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    *o = out(ccrt::reconstruct_theorem1(complex_array(remainders, sys.size()), sys));
  });
}

ccrt_status ccrt_solve_common(const ccrt_system* s, const ccrt_complex* remainders, ccrt_common_solution* o,
                              ccrt_gint* q_out) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    const ccrt::CommonSolution sol = ccrt::solve_common(complex_array(remainders, sys.size()), sys);
    o->n = out(sol.N);
    o->r_common = out(sol.r_common);
    o->n0 = out(sol.N0);
    if (q_out)
      for (std::size_t i = 0; i < sol.q.size(); ++i) q_out[i] = out(sol.q[i]);
  });
}

ccrt_status ccrt_estimate_run(const ccrt_system* s, const ccrt_complex* remainders, const double* sigmas,
                              ccrt_estimate* o, ccrt_gint* q_out) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    const ccrt::Estimate e = ccrt::estimate(noisy(sys, remainders, sigmas), sys);
    o->n_hat = out(e.n_hat);
    o->rc_hat = out(e.rc_hat);
    o->n0_hat = out(e.n0_hat);
    o->objective = e.objective;
    o->evaluations = e.counts.evaluations;
    o->common_stage_mults = e.counts.common_stage_mults;
    o->reconstruction_mults = e.counts.reconstruction_mults;
    if (q_out)
      for (std::size_t i = 0; i < e.q_hat.size(); ++i) q_out[i] = out(e.q_hat[i]);
  });
}

ccrt_status ccrt_objective(const ccrt_system* s, ccrt_complex z, const ccrt_complex* remainders, const double* sigmas,
                           double* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    *o = ccrt::objective(in(z), noisy(sys, remainders, sigmas), sys);
  });
}

ccrt_status ccrt_estimate_dual_real(const ccrt_system* s, const ccrt_complex* remainders, const double* sigmas,
                                    ccrt_complex* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    *o = out(ccrt::estimate_dual_real(noisy(sys, remainders, sigmas), sys));
  });
}

ccrt_status ccrt_robustness_analyze(const ccrt_system* s, ccrt_complex n, const ccrt_complex* deltas,
                                    const double* sigmas, ccrt_robustness* o) {
  return guarded([&] {
    const auto& sys = sys_of(s);
    need(o, "out");
    ccrt::ErrorVector ev{complex_array(deltas, sys.size()), ccrt::compute_weights(double_array(sigmas, sys.size()))};
    const ccrt::RobustnessReport r = ccrt::analyze(in(n), ev, sys);
    o->condition_holds = r.condition_holds ? 1 : 0;
    o->in_region = r.in_region ? 1 : 0;
    o->mean_in_range = r.mean_in_range ? 1 : 0;
    o->weighted_mean = out(r.weighted_mean);
    o->min_margin = r.min_margin;
  });
}

ccrt_status ccrt_theoretical_rmse(const double* sigmas, size_t count, double* o) {
  return guarded([&] {
    need(o, "out");
    *o = ccrt::theoretical_rmse(double_array(sigmas, count));
  });
}

ccrt_status ccrt_error_preserving_probability(const double* sigmas, size_t count, int64_t M, int64_t trials,
                                              uint64_t seed, unsigned threads, ccrt_probability* o) {
  return guarded([&] {
    need(o, "out");
    const auto pe = ccrt::error_preserving_probability(double_array(sigmas, count), M, trials, seed, threads);
    *o = {pe.p_axis, pe.p_joint_predicted, pe.p_joint_empirical, pe.ci_low, pe.ci_high};
  });
}

ccrt_status ccrt_three_sigma_check(ccrt_gint modulus, double sigma, int grid, double* o) {
  return guarded([&] {
    need(o, "out");
    *o = ccrt::three_sigma_check(in(modulus), sigma, grid);
  });
}

ccrt_status ccrt_snr_from_u(double u, double* o) {
  return guarded([&] {
    need(o, "out");
    *o = ccrt::snr_from_u(u);
  });
}

ccrt_status ccrt_u_from_snr(double snr_db, double* o) {
  return guarded([&] {
    need(o, "out");
    *o = ccrt::u_from_snr(snr_db);
  });
}

ccrt_status ccrt_channel_fold(ccrt_complex sample, ccrt_gint modulus, ccrt_complex* y, ccrt_complex* r) {
  return guarded([&] {
    const ccrt::Folded f = ccrt::channel_fold(in(sample), ccrt::make_channel(in(modulus)));
    if (y) *y = out(f.y);
    if (r) *r = out(f.r);
  });
}

ccrt_status ccrt_campaign_run(const char* config_json, int has_seed, uint64_t seed, unsigned threads, char** csv_out,
                              char** config_echo_out, uint64_t* seed_used) {
  return guarded([&] {
    need(config_json, "config");
    need(csv_out, "csv_out");
    *csv_out = nullptr;
    if (config_echo_out) *config_echo_out = nullptr;
    const ccrt::CampaignOutput r =
        ccrt::run_campaign(config_json, has_seed ? std::optional<std::uint64_t>(seed) : std::nullopt, threads);
    char* csv = dup(r.csv);
    if (config_echo_out) {
      try {
        *config_echo_out = dup(r.normalized_config);
      } catch (...) {
        std::free(csv);
        throw;
      }
    }
    *csv_out = csv;
    if (seed_used) *seed_used = r.seed;
  });
}

ccrt_status ccrt_count_ops_csv(const int* Ls, size_t count, uint64_t seed, char** csv_out) {
  return guarded([&] {
    need(Ls, "Ls");
    need(csv_out, "csv_out");
    *csv_out = dup(ccrt::count_ops_csv(std::span<const int>(Ls, count), seed));
  });
}

uint64_t ccrt_fnv1a(const char* data, size_t size) {
  if (!data) return ccrt::fnv1a({});
  return ccrt::fnv1a(std::string_view(data, size));
}

}  // extern "C"
