// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ccrt/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include <json.hpp>

#include "ccrt/adc.hpp"
#include "ccrt/crt.hpp"
#include "ccrt/error.hpp"
#include "ccrt/mle.hpp"
#include "ccrt/noise.hpp"
#include "ccrt/parallel.hpp"
#include "ccrt/rng.hpp"
#include "ccrt/robustness.hpp"

#ifndef CCRT_VERSION_STRING
#define CCRT_VERSION_STRING "0.0.0"
#endif

namespace ccrt {

namespace {

using json = nlohmann::json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int line_at(std::string_view text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void error(const std::string& key, const std::string& msg) const {
    std::string where = "config error";
    const std::string needle = "\"" + leaf(key) + "\"";
    const auto pos = text_.find(needle);
    if (pos != std::string_view::npos) where += " at line " + std::to_string(line_at(text_, pos));
    fail(ErrorCode::config, where + ", key '" + key + "': " + msg);
  }

  const json& require(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.is_object()) error(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) error(join(path, key), "missing required key");
    return *it;
  }

  std::int64_t integer(const json& v, const std::string& key, std::int64_t lo) const {
    if (!v.is_number_integer()) error(key, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo) error(key, "must be >= " + std::to_string(lo));
    return x;
  }

  double real(const json& v, const std::string& key) const {
    if (!v.is_number()) error(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) error(key, "must be finite");
    return x;
  }

  double positive(const json& v, const std::string& key) const {
    const double x = real(v, key);
    if (!(x > 0.0)) error(key, "must be positive");
    return x;
  }

  std::vector<double> grid(const json& v, const std::string& key) const {
    if (!v.is_array()) error(key, "expected an array of numbers");
    if (v.empty()) error(key, "grid must not be empty");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(real(v[i], key + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::string text(const json& v, const std::string& key) const {
    if (!v.is_string()) error(key, "expected a string");
    return v.get<std::string>();
  }

  ModulusSystem system(const json& root, const std::string& key) const {
    const json& s = require(root, "", key);
    const std::int64_t M = integer(require(s, key, "M"), key + ".M", 1);
    const json& cof = require(s, key, "cofactors");
    if (!cof.is_array() || cof.empty()) error(key + ".cofactors", "expected a nonempty array of Gaussian integers");
    std::vector<GaussianInt> cs;
    for (std::size_t i = 0; i < cof.size(); ++i) {
      const std::string k = key + ".cofactors[" + std::to_string(i) + "]";
      try {
        if (cof[i].is_number_integer())
          cs.emplace_back(cof[i].get<std::int64_t>(), 0);
        else
          cs.push_back(parse_gaussian(text(cof[i], k)));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::config) throw;
        error(k, e.what());
      }
    }
    try {
      return build_system(M, std::move(cs));
    } catch (const Error& e) {
      error(key, e.what());
    }
  }

 private:
  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string leaf(const std::string& key) {
    std::string k = key;
    if (const auto b = k.find('['); b != std::string::npos) k = k.substr(0, b);
    if (const auto d = k.rfind('.'); d != std::string::npos) k = k.substr(d + 1);
    return k;
  }

  std::string_view text_;
};

struct NoisePoint {
  double snr;
  double u;
};

std::vector<NoisePoint> noise_grid(const Reader& rd, const json& root, bool allow_zero_u) {
  const json& noise = rd.require(root, "", "noise");
  const bool has_snr = noise.is_object() && noise.contains("snr_db");
  const bool has_u = noise.is_object() && noise.contains("u");
  if (has_snr == has_u) rd.error("noise", "give exactly one of 'snr_db' or 'u'");
  std::vector<NoisePoint> out;
  if (has_snr) {
    for (double s : rd.grid(noise["snr_db"], "noise.snr_db")) out.push_back({s, u_from_snr(s)});
  } else {
    const auto us = rd.grid(noise["u"], "noise.u");
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double u = us[i];
      if (u < 0.0 || (u == 0.0 && !allow_zero_u))
        rd.error("noise.u[" + std::to_string(i) + "]", allow_zero_u ? "must be >= 0" : "must be positive");
      out.push_back({u > 0.0 ? snr_from_u(u) : INFINITY, u});
    }
  }
  return out;
}

std::int64_t trials_of(const Reader& rd, const json& root) {
  return rd.integer(rd.require(root, "", "trials"), "trials", 1);
}

struct ReconstructionTrial {
  Complex err;
  bool preserved = false;
  bool condition = false;
};

// One trial of the remainder-domain experiment: N uniform in M*H, wrapped
// Gaussian remainder errors with sigma_i = u |M Gamma_i|.
ReconstructionTrial reconstruction_trial(const ModulusSystem& sys, std::span<const double> sigmas,
                                         std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  auto rng = trial_rng(seed, stream, index);
  const auto M = static_cast<double>(sys.M());
  std::uniform_real_distribution<double> pick(M, M * static_cast<double>(sys.Gamma() - 1));
  const Complex N{pick(rng), pick(rng)};
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t L = sys.size();
  NoisyRemainders obs;
  obs.sigmas.assign(sigmas.begin(), sigmas.end());
  ErrorVector ev;
  ev.weights = compute_weights(sigmas);
  for (std::size_t i = 0; i < L; ++i) {
    const double a = gauss(rng), b = gauss(rng);
    const Complex d = sigmas[i] * Complex{a, b};
    ev.deltas.push_back(d);
    obs.values.push_back(mod_c(N + d, sys.moduli()[i]));
  }
  const Estimate est = estimate(obs, sys);
  ReconstructionTrial out;
  out.err = est.n_hat - N;
  const Complex mean = weighted_mean_error(ev);
  out.preserved = std::abs(out.err.real() - mean.real()) <= 1e-9 * M &&
                  std::abs(out.err.imag() - mean.imag()) <= 1e-9 * M;
  out.condition = subset_condition(ev, sys.M()).holds;
  return out;
}

std::string run_remainder_campaign(const Reader& rd, const json& root, Campaign c, std::uint64_t seed,
                                   unsigned threads) {
  const ModulusSystem sys = rd.system(root, "system");
  const auto grid = noise_grid(rd, root, false);
  const std::int64_t trials = trials_of(rd, root);
  const double tau = root.contains("tau") ? rd.positive(root["tau"], "tau") : 0.25 * static_cast<double>(sys.M());

  std::string csv = c == Campaign::rmse ? "snr_db,u,rmse,rmse_theory,tfr,trials,seed\n"
                                        : "snr_db,u,tfr_tau,tfr_preserving,tfr_condition,trials,seed\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> sigmas;
    for (const auto& m : sys.moduli()) sigmas.push_back(grid[g].u * std::abs(m.to_complex()));
    std::vector<ReconstructionTrial> out(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t t) {
      out[static_cast<std::size_t>(t)] = reconstruction_trial(sys, sigmas, seed, g + 1, static_cast<std::uint64_t>(t));
    });
    double sq = 0.0;
    std::int64_t fail_tau = 0, fail_pres = 0, fail_cond = 0;
    for (const auto& r : out) {
      sq += std::norm(r.err);
      if (!(std::abs(r.err.real()) < tau && std::abs(r.err.imag()) < tau)) ++fail_tau;
      if (!r.preserved) ++fail_pres;
      if (!r.condition) ++fail_cond;
    }
    const auto n = static_cast<double>(trials);
    csv += num(grid[g].snr) + "," + num(grid[g].u) + ",";
    if (c == Campaign::rmse)
      csv += num(std::sqrt(sq / n)) + "," + num(theoretical_rmse(sigmas)) + "," + num(static_cast<double>(fail_tau) / n);
    else
      csv += num(static_cast<double>(fail_tau) / n) + "," + num(static_cast<double>(fail_pres) / n) + "," +
             num(static_cast<double>(fail_cond) / n);
    csv += "," + std::to_string(trials) + "," + std::to_string(seed) + "\n";
  }
  return csv;
}

std::string run_prob_campaign(const Reader& rd, const json& root, std::uint64_t seed, unsigned threads) {
  const ModulusSystem sys = rd.system(root, "system");
  const std::vector<double> base = rd.grid(rd.require(root, "", "sigma_base"), "sigma_base");
  const std::vector<double> ks = rd.grid(rd.require(root, "", "k"), "k");
  const std::int64_t trials = trials_of(rd, root);
  if (base.size() != sys.size()) rd.error("sigma_base", "needs one entry per cofactor");

  std::string csv = "k";
  for (std::size_t i = 0; i < base.size(); ++i) csv += ",sigma" + std::to_string(i + 1);
  csv += ",p_axis,p_joint_predicted,p_joint_empirical,ci_low,ci_high\n";
  for (std::size_t g = 0; g < ks.size(); ++g) {
    std::vector<double> sigmas;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double s = base[i] + ks[g];
      if (!(s > 0.0)) rd.error("k[" + std::to_string(g) + "]", "sigma_base + k must be positive");
      sigmas.push_back(s);
    }
    const ProbabilityEstimate pe = error_preserving_probability(sigmas, sys.M(), trials, splitmix64(seed + g), threads);
    csv += num(ks[g]);
    for (double s : sigmas) csv += "," + num(s);
    csv += "," + num(pe.p_axis) + "," + num(pe.p_joint_predicted) + "," + num(pe.p_joint_empirical) + "," +
           num(pe.ci_low) + "," + num(pe.ci_high) + "\n";
  }
  return csv;
}

std::string run_adc_campaign(const Reader& rd, const json& root, std::uint64_t seed, unsigned threads) {
  const auto grid = noise_grid(rd, root, true);
  const std::int64_t trials = trials_of(rd, root);
  const double tau = root.contains("tau") ? rd.positive(root["tau"], "tau") : 0.25;

  std::vector<Method> methods;
  if (root.contains("methods")) {
    const json& ms = root["methods"];
    if (!ms.is_array() || ms.empty()) rd.error("methods", "expected a nonempty array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string m = rd.text(ms[i], "methods[" + std::to_string(i) + "]");
      if (m == "mle_ccrt")
        methods.push_back(Method::mle_ccrt);
      else if (m == "dual_real")
        methods.push_back(Method::dual_real);
      else
        rd.error("methods[" + std::to_string(i) + "]", "unknown method '" + m + "' (mle_ccrt, dual_real)");
    }
  } else {
    methods = {Method::mle_ccrt};
  }

  Centering centering = Centering::signed_square;
  if (root.contains("centering")) {
    const std::string c = rd.text(root["centering"], "centering");
    if (c == "signed")
      centering = Centering::signed_square;
    else if (c == "none")
      centering = Centering::none;
    else
      rd.error("centering", "expected 'signed' or 'none'");
  }

  const json& sig = rd.require(root, "", "signal");
  SignalSpec spec;
  spec.amplitude = rd.real(rd.require(sig, "signal", "A"), "signal.A");
  const std::string mode = sig.contains("mode") ? rd.text(sig["mode"], "signal.mode") : "random";
  if (mode == "constant") {
    spec.mode = SignalMode::constant;
    spec.a = rd.real(rd.require(sig, "signal", "a"), "signal.a");
    spec.b = rd.real(rd.require(sig, "signal", "b"), "signal.b");
    if (std::abs(spec.a) > 1.0) rd.error("signal.a", "must lie in [-1, 1]");
    if (std::abs(spec.b) > 1.0) rd.error("signal.b", "must lie in [-1, 1]");
  } else if (mode != "random") {
    rd.error("signal.mode", "expected 'random' or 'constant'");
  }

  std::optional<ModulusSystem> complex_sys, real_sys;
  for (Method m : methods) {
    if (m == Method::mle_ccrt && !complex_sys) complex_sys = rd.system(root, "system");
    if (m == Method::dual_real && !real_sys) {
      real_sys = rd.system(root, "baseline_system");
      if (!real_sys->all_real()) rd.error("baseline_system.cofactors", "the dual real baseline needs real moduli");
    }
  }

  std::string csv = "snr_db,u,method,rrse_mean,tfr,trials,seed\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (Method m : methods) {
      const ModulusSystem& sys = m == Method::mle_ccrt ? *complex_sys : *real_sys;
      std::vector<TrialReport> out(static_cast<std::size_t>(trials));
      parallel_for(trials, threads, [&](std::int64_t t) {
        SignalSpec s = spec;
        s.seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(t) + 1));
        const BandlimitedSignal signal = gen_signal(s);
        RecoveryOptions opt;
        opt.method = m;
        opt.u = grid[g].u;
        opt.tau = tau;
        opt.centering = centering;
        opt.seed = seed;
        opt.stream = g + 1;
        opt.index = static_cast<std::uint64_t>(t);
        out[static_cast<std::size_t>(t)] = run_recovery(signal, sys, opt);
      });
      double rrse_sum = 0.0;
      std::int64_t failures = 0, samples = 0;
      for (const auto& r : out) {
        rrse_sum += r.rrse;
        failures += r.failures;
        samples += r.samples;
      }
      csv += num(grid[g].snr) + "," + num(grid[g].u) + "," + (m == Method::mle_ccrt ? "mle_ccrt" : "dual_real") +
             "," + num(rrse_sum / static_cast<double>(trials)) + "," +
             num(static_cast<double>(failures) / static_cast<double>(samples)) + "," + std::to_string(trials) + "," +
             std::to_string(seed) + "\n";
    }
  }
  return csv;
}

const std::vector<GaussianInt>& standard_cofactors() {
  static const std::vector<GaussianInt> list{{1, 4}, {1, -4}, {3, 4}, {3, -4}, {2, 7}, {2, -7}, {3, 0}, {7, 0}};
  return list;
}

}  // namespace

CampaignOutput run_campaign(std::string_view config_json, std::optional<std::uint64_t> seed_override,
                            unsigned threads) {
  json root;
  try {
    root = json::parse(config_json.begin(), config_json.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::config, "config error at line " + std::to_string(line_at(config_json, e.byte ? e.byte - 1 : 0)) +
                                ": malformed JSON (" + e.what() + ")");
  }
  Reader rd(config_json);
  if (!root.is_object()) rd.error("", "top level must be an object");
  const std::string name = rd.text(rd.require(root, "", "campaign"), "campaign");

  std::uint64_t seed = 0;
  if (seed_override)
    seed = *seed_override;
  else if (root.contains("seed"))
    seed = static_cast<std::uint64_t>(rd.integer(root["seed"], "seed", 0));
  root["seed"] = seed;

  CampaignOutput out;
  out.seed = seed;
  if (name == "rmse") {
    out.campaign = Campaign::rmse;
    out.csv = run_remainder_campaign(rd, root, Campaign::rmse, seed, threads);
  } else if (name == "tfr") {
    out.campaign = Campaign::tfr;
    out.csv = run_remainder_campaign(rd, root, Campaign::tfr, seed, threads);
  } else if (name == "prob") {
    out.campaign = Campaign::prob;
    out.csv = run_prob_campaign(rd, root, seed, threads);
  } else if (name == "adc") {
    out.campaign = Campaign::adc;
    out.csv = run_adc_campaign(rd, root, seed, threads);
  } else {
    rd.error("campaign", "unknown campaign '" + name + "' (rmse, tfr, prob, adc)");
  }
  out.normalized_config = root.dump();
  return out;
}

OpCountRow count_ops(int L, std::uint64_t seed) {
  if (L < 1 || L > 8) fail(ErrorCode::invalid_argument, "count_ops: L must be in [1, 8]");
  const auto& list = standard_cofactors();
  std::vector<GaussianInt> cof;
  const int paired = L % 2 == 0 ? L : L - 1;
  for (int i = 0; i < paired; ++i) cof.push_back(list[static_cast<std::size_t>(i)]);
  if (L % 2 == 1) cof.emplace_back(3, 0);
  const ModulusSystem sys = build_system(10, std::move(cof));

  auto rng = trial_rng(seed, 0x6f7073ULL, static_cast<std::uint64_t>(L));
  std::uniform_real_distribution<double> pick(0.0, static_cast<double>(sys.dynamic_range()));
  std::normal_distribution<double> gauss(0.0, 0.3);
  const Complex N{pick(rng), pick(rng)};
  NoisyRemainders obs;
  for (const auto& m : sys.moduli()) {
    obs.values.push_back(mod_c(N + Complex{gauss(rng), gauss(rng)}, m));
    obs.sigmas.push_back(1.0);
  }
  const Estimate est = estimate(obs, sys);
  return {L, est.counts.evaluations, est.counts.common_stage_mults, est.counts.reconstruction_mults};
}

std::string count_ops_csv(std::span<const int> Ls, std::uint64_t seed) {
  std::string csv = "L,evaluations,common_stage_mults,bound_8L2,reconstruction_mults\n";
  for (int L : Ls) {
    const OpCountRow r = count_ops(L, seed);
    csv += std::to_string(L) + "," + std::to_string(r.evaluations) + "," + std::to_string(r.common_stage_mults) + "," +
           std::to_string(8 * L * L) + "," + std::to_string(r.reconstruction_mults) + "\n";
  }
  return csv;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* version_string() { return CCRT_VERSION_STRING; }

}  // namespace ccrt
