// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

// ccrt: command line driver over the C API.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccrt/ccrt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Failure : std::runtime_error {
  int exit_code;
  Failure(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

void check(ccrt_status s, const std::string& what) {
  if (s == CCRT_OK) return;
  const bool input = s == CCRT_E_CONFIG || s == CCRT_E_INVALID_ARGUMENT || s == CCRT_E_NOT_COPRIME;
  throw Failure(input ? kExitConfig : kExitRuntime, what + ": " + ccrt_last_error());
}

struct CString {
  char* p = nullptr;
  ~CString() { ccrt_string_free(p); }
};

struct SystemHandle {
  ccrt_system* p = nullptr;
  ~SystemHandle() { ccrt_system_destroy(p); }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (cur.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(cur);
  }
  return out;
}

std::string fmt(ccrt_gint z) {
  char buf[64];
  check(ccrt_gint_format(z, buf, sizeof buf), "format");
  return buf;
}

std::string fmt(ccrt_complex z) {
  char buf[96];
  check(ccrt_complex_format(z, buf, sizeof buf), "format");
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure(kExitConfig, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct SystemInput {
  std::int64_t M = 1;
  std::vector<ccrt_gint> cofactors;
  std::vector<ccrt_complex> remainders;
  std::vector<double> sigmas;
};

ccrt_gint parse_gint(const std::string& s) {
  ccrt_gint z{};
  check(ccrt_gint_parse(s.c_str(), &z), "cofactor '" + s + "'");
  return z;
}

ccrt_complex parse_cx(const std::string& s) {
  ccrt_complex z{};
  check(ccrt_complex_parse(s.c_str(), &z), "value '" + s + "'");
  return z;
}

// Inputs come from --config (keys system.M, system.cofactors, remainders,
// sigmas) and are overridden by explicit flags.
SystemInput gather(const std::string& config, std::optional<std::int64_t> M, const std::string& cofactors,
                   const std::string& remainders, const std::string& sigmas) {
  SystemInput in;
  if (!config.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(config));
      if (j.contains("system")) {
        in.M = j["system"].at("M").get<std::int64_t>();
        for (const auto& c : j["system"].at("cofactors"))
          in.cofactors.push_back(c.is_string() ? parse_gint(c.get<std::string>())
                                               : ccrt_gint{c.get<std::int64_t>(), 0});
      }
      if (j.contains("remainders"))
        for (const auto& r : j["remainders"])
          in.remainders.push_back(r.is_string() ? parse_cx(r.get<std::string>()) : ccrt_complex{r.get<double>(), 0});
      if (j.contains("sigmas"))
        for (const auto& s : j["sigmas"]) in.sigmas.push_back(s.get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw Failure(kExitConfig, std::string("config error: ") + e.what());
    }
  }
  if (M) in.M = *M;
  if (!cofactors.empty()) {
    in.cofactors.clear();
    for (const auto& s : split_list(cofactors)) in.cofactors.push_back(parse_gint(s));
  }
  if (!remainders.empty()) {
    in.remainders.clear();
    for (const auto& s : split_list(remainders)) in.remainders.push_back(parse_cx(s));
  }
  if (!sigmas.empty()) {
    in.sigmas.clear();
    for (const auto& s : split_list(sigmas)) {
      try {
        std::size_t used = 0;
        in.sigmas.push_back(std::stod(s, &used));
      } catch (const std::exception&) {
        throw Failure(kExitConfig, "malformed sigma '" + s + "'");
      }
    }
  }
  if (in.cofactors.empty()) throw Failure(kExitConfig, "no cofactors given (--cofactors or system.cofactors)");
  return in;
}

SystemHandle make_system(const SystemInput& in) {
  SystemHandle h;
  check(ccrt_system_create(in.M, in.cofactors.data(), in.cofactors.size(), &h.p), "system");
  return h;
}

void require_count(const SystemInput& in, std::size_t n, const char* what) {
  if (n != in.cofactors.size())
    throw Failure(kExitConfig, std::string("expected ") + std::to_string(in.cofactors.size()) + " " + what +
                                   ", got " + std::to_string(n));
}

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure(kExitRuntime, "cannot write '" + tmp + "'");
    f << data;
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw Failure(kExitRuntime, "write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Failure(kExitRuntime, "cannot move output into place: " + ec.message());
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int cmd_reconstruct(const SystemInput& in) {
  require_count(in, in.remainders.size(), "remainders");
  SystemHandle sys = make_system(in);
  const std::size_t L = in.cofactors.size();
  ccrt_common_solution sol{};
  std::vector<ccrt_gint> q(L);
  check(ccrt_solve_common(sys.p, in.remainders.data(), &sol, q.data()), "reconstruct");
  std::cout << "M = " << in.M << "\n";
  std::cout << "Gamma = " << ccrt_system_gamma(sys.p) << "\n";
  std::cout << "gamma_bar =";
  for (std::size_t i = 0; i < L; ++i) {
    ccrt_gint g{};
    check(ccrt_system_value(sys.p, i, 2, &g), "system");
    std::cout << (i ? ", " : " ") << fmt(g);
  }
  std::cout << "\nr^c = " << fmt(sol.r_common) << "\nq =";
  for (std::size_t i = 0; i < L; ++i) std::cout << (i ? ", " : " ") << fmt(q[i]);
  std::cout << "\nN0 = " << fmt(sol.n0) << "\nN = " << fmt(sol.n) << "\n";
  return kExitOk;
}

int cmd_estimate(SystemInput in, bool csv) {
  require_count(in, in.remainders.size(), "remainders");
  if (in.sigmas.empty()) in.sigmas.assign(in.cofactors.size(), 1.0);
  require_count(in, in.sigmas.size(), "sigmas");
  SystemHandle sys = make_system(in);
  ccrt_estimate e{};
  std::vector<ccrt_gint> q(in.cofactors.size());
  check(ccrt_estimate_run(sys.p, in.remainders.data(), in.sigmas.data(), &e, q.data()), "estimate");
  nlohmann::ordered_json j;
  j["N_hat"] = fmt(e.n_hat);
  j["rc_hat"] = fmt(e.rc_hat);
  std::vector<std::string> qs;
  for (const auto& x : q) qs.push_back(fmt(x));
  j["q_hat"] = qs;
  j["N0_hat"] = fmt(e.n0_hat);
  j["objective"] = e.objective;
  j["evaluations"] = e.evaluations;
  j["common_stage_mults"] = e.common_stage_mults;
  j["reconstruction_mults"] = e.reconstruction_mults;
  std::cout << j.dump(2) << "\n";
  if (csv) {
    std::cout << "N_hat_re,N_hat_im,rc_hat_re,rc_hat_im,objective,evaluations\n";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%lld\n", e.n_hat.re, e.n_hat.im, e.rc_hat.re,
                  e.rc_hat.im, e.objective, static_cast<long long>(e.evaluations));
    std::cout << buf;
  }
  return kExitOk;
}

int cmd_campaign(const std::string& expected, const std::string& config_path, std::optional<std::uint64_t> seed,
                 unsigned threads, const std::string& out) {
  if (config_path.empty()) throw Failure(kExitConfig, "--config is required");
  const std::string text = read_file(config_path);
  {
    // Catch a campaign/subcommand mismatch before doing any work.
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_object() && j.contains("campaign") && j["campaign"].is_string() && j["campaign"] != expected)
      throw Failure(kExitConfig, "config error, key 'campaign': '" + j["campaign"].get<std::string>() +
                                     "' does not match subcommand sim-" + expected);
  }
  const auto start = std::chrono::steady_clock::now();
  CString csv, echo;
  std::uint64_t used = 0;
  check(ccrt_campaign_run(text.c_str(), seed ? 1 : 0, seed.value_or(0), threads, &csv.p, &echo.p, &used), "campaign");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.empty()) {
    std::cout << csv.p;
    return kExitOk;
  }
  const std::string data = csv.p;
  nlohmann::ordered_json m;
  m["campaign"] = expected;
  m["config"] = nlohmann::json::parse(echo.p);
  m["config_path"] = config_path;
  m["config_hash"] = hex64(ccrt_fnv1a(text.data(), text.size()));
  m["csv_hash"] = hex64(ccrt_fnv1a(data.data(), data.size()));
  m["seed"] = used;
  m["threads"] = threads;
  m["version"] = ccrt_version();
  m["wall_time_s"] = wall;
  try {
    write_atomic(out, data);
    write_atomic(out + ".manifest.json", m.dump(2) + "\n");
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(out, ec);
    throw;
  }
  std::cerr << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_count_ops(const std::vector<int>& Ls, std::uint64_t seed, const std::string& out) {
  if (Ls.empty()) throw Failure(kExitConfig, "--L must list at least one value");
  CString csv;
  check(ccrt_count_ops_csv(Ls.data(), Ls.size(), seed, &csv.p), "count-ops");
  if (out.empty())
    std::cout << csv.p;
  else
    write_atomic(out, csv.p);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex-valued CRT with Gaussian-integer moduli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ccrt_version()));

  std::string config, out;
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", out, "output CSV path (stdout if omitted)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::optional<std::int64_t> M;
  std::string cofactors, remainders, sigmas;
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--M", M, "common gcd M");
    sub->add_option("--cofactors", cofactors, "comma separated, e.g. 1+4i,-3-4i,13+16i");
    sub->add_option("--remainders", remainders, "comma separated; use --remainders=-3+6i,... for a leading minus");
  };
  auto* reconstruct = app.add_subcommand("reconstruct", "error-free reconstruction");
  add_system(reconstruct);
  auto* est = app.add_subcommand("estimate", "fast MLE estimate from noisy remainders");
  add_system(est);
  est->add_option("--sigmas", sigmas, "comma separated per-axis deviations");
  bool csv_row = false;
  est->add_flag("--csv", csv_row, "also print a CSV row");

  const std::vector<std::pair<std::string, std::string>> campaigns{
      {"rmse", "RMSE versus SNR"}, {"tfr", "trial fail rates versus SNR"},
      {"prob", "error preserving probability"}, {"adc", "multi-channel SR-ADC recovery"}};
  std::vector<std::pair<CLI::App*, std::string>> sims;
  for (const auto& [name, desc] : campaigns) sims.emplace_back(app.add_subcommand("sim-" + name, desc), name);

  std::vector<int> Ls{2, 4, 8};
  auto* ops = app.add_subcommand("count-ops", "count real multiplications per estimate");
  ops->add_option("--L", Ls, "channel counts")->delimiter(',');

  // Global flags are accepted after the subcommand as well.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*reconstruct) return cmd_reconstruct(gather(config, M, cofactors, remainders, ""));
    if (*est) return cmd_estimate(gather(config, M, cofactors, remainders, sigmas), csv_row);
    for (const auto& [sub, name] : sims)
      if (*sub) return cmd_campaign(name, config, seed, threads, out);
    if (*ops) return cmd_count_ops(Ls, seed.value_or(1), out);
  } catch (const Failure& f) {
    std::cerr << "ccrt: " << f.what() << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "ccrt: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
