/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_IO_HPP
#define NOMA_IO_HPP

#include <string>

#include <json.hpp>

#include "noma/channel.hpp"
#include "noma/multi_carrier.hpp"
#include "noma/types.hpp"

namespace noma {

// Instance schema: {K, N, M, W_n, P_max, P_max_n[], weights[], gains[K][N],
// noises[K][N]}, row-major, SI units.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

nlohmann::json solve_report_to_json(const Instance& inst, const SolveReport& rep);

// Budget trace rows: iteration, n, budget, objective.
std::string trace_to_csv(const SolveReport& rep);

ChannelConfig channel_config_from_json(const nlohmann::json& j);
ChannelConfig load_channel_config(const std::string& path);

}  // namespace noma

#endif
