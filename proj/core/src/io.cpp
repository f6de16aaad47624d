/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace noma {

namespace {

template <typename T>
T get_field(const json& j, const char* name) {
    if (!j.contains(name))
        throw std::invalid_argument(std::string("missing field: ") + name);
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("malformed field: ") + name);
    }
}

}  // namespace

json instance_to_json(const Instance& inst) {
    return json{{"K", inst.K},
                {"N", inst.N},
                {"M", inst.M},
                {"W_n", inst.subcarrier_bandwidth_hz},
                {"P_max", inst.total_power_w},
                {"P_max_n", inst.subcarrier_power_cap_w},
                {"weights", inst.weight},
                {"gains", inst.gain},
                {"noises", inst.noise}};
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.K = get_field<int>(j, "K");
    inst.N = get_field<int>(j, "N");
    inst.M = get_field<int>(j, "M");
    inst.subcarrier_bandwidth_hz = get_field<double>(j, "W_n");
    inst.total_power_w = get_field<double>(j, "P_max");
    inst.subcarrier_power_cap_w = get_field<std::vector<double>>(j, "P_max_n");
    inst.weight = get_field<std::vector<double>>(j, "weights");
    inst.gain = get_field<std::vector<std::vector<double>>>(j, "gains");
    inst.noise = get_field<std::vector<std::vector<double>>>(j, "noises");
    inst.validate();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    out << instance_to_json(inst).dump(2) << '\n';
}

json solve_report_to_json(const Instance& inst, const SolveReport& rep) {
    const DecodingOrder order = decoding_order(inst);
    std::vector<double> user_rates(inst.K, 0.0);
    std::vector<double> p_n(inst.K);
    for (int n = 0; n < inst.N; ++n) {
        for (int k = 0; k < inst.K; ++k) p_n[k] = rep.powers.p[k][n];
        for (int k = 0; k < inst.K; ++k)
            user_rates[k] += user_rate(inst, order, n, p_n, k);
    }
    return json{{"solver", rep.solver},
                {"wsr_bit_per_s", rep.wsr},
                {"user_rates_bit_per_s", user_rates},
                {"powers", rep.powers.p},
                {"budgets", rep.budgets},
                {"iterations", rep.iterations},
                {"converged", rep.converged},
                {"ops",
                 {{"adds", rep.ops.adds},
                  {"muls", rep.ops.muls},
                  {"comparisons", rep.ops.comparisons},
                  {"total", rep.ops.total()}}}};
}

std::string trace_to_csv(const SolveReport& rep) {
    std::ostringstream out;
    out << "iteration,n,budget,objective\n";
    for (const IterationTrace& t : rep.trace) {
        for (std::size_t n = 0; n < t.budgets.size(); ++n)
            out << t.iteration << ',' << n << ',' << t.budgets[n] << ',' << t.objective
                << '\n';
    }
    return out.str();
}

ChannelConfig channel_config_from_json(const json& j) {
    ChannelConfig cfg;
    if (j.contains("cell_radius_m")) cfg.cell_radius_m = j.at("cell_radius_m").get<double>();
    if (j.contains("min_distance_m")) cfg.min_distance_m = j.at("min_distance_m").get<double>();
    if (j.contains("carrier_ghz")) cfg.carrier_ghz = j.at("carrier_ghz").get<double>();
    if (j.contains("pathloss_model")) cfg.pathloss_model = j.at("pathloss_model").get<std::string>();
    if (j.contains("shadowing_sigma_db"))
        cfg.shadowing_sigma_db = j.at("shadowing_sigma_db").get<double>();
    if (j.contains("noise_psd_dbm_hz"))
        cfg.noise_psd_dbm_hz = j.at("noise_psd_dbm_hz").get<double>();
    if (j.contains("bandwidth_hz")) cfg.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    if (j.contains("subcarriers")) cfg.subcarriers = j.at("subcarriers").get<int>();
    if (j.contains("max_multiplexed")) cfg.max_multiplexed = j.at("max_multiplexed").get<int>();
    if (j.contains("total_power_w")) cfg.total_power_w = j.at("total_power_w").get<double>();
    if (j.contains("weight_distribution"))
        cfg.weight_distribution = j.at("weight_distribution").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.validate();
    return cfg;
}

ChannelConfig load_channel_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return channel_config_from_json(j);
}

}  // namespace noma
