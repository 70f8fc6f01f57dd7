// SPDX-FileCopyrightText: (c) 2026 The ccrt Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef CCRT_EXPERIMENTS_HPP
#define CCRT_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ccrt {

enum class Campaign { rmse, tfr, prob, adc };

struct CampaignOutput {
  Campaign campaign;
  std::string csv;
  std::uint64_t seed = 0;
  std::string normalized_config;  // compact JSON echo after defaults
};

/// Runs the campaign described by a JSON config. `seed_override` replaces the
/// config seed. Output bytes depend only on the config and the seed.
/// Throws Error(config) with line and key context on invalid configs.
CampaignOutput run_campaign(std::string_view config_json, std::optional<std::uint64_t> seed_override,
                            unsigned threads);

/// One row per L: L,evaluations,common_stage_mults,bound_8L2,reconstruction_mults
std::string count_ops_csv(std::span<const int> Ls, std::uint64_t seed);

struct OpCountRow {
  int L = 0;
  std::int64_t evaluations = 0;
  std::int64_t common_stage_mults = 0;
  std::int64_t reconstruction_mults = 0;
};
OpCountRow count_ops(int L, std::uint64_t seed);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

const char* version_string();

}  // namespace ccrt

#endif  // CCRT_EXPERIMENTS_HPP
