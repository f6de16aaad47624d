/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace noma {

void ChannelConfig::validate() const {
    if (!(min_distance_m > 0.0 && cell_radius_m > min_distance_m))
        throw std::invalid_argument("cell geometry requires radius > min_distance > 0");
    if (shadowing_sigma_db < 0.0)
        throw std::invalid_argument("shadowing sigma must be non-negative");
    if (subcarriers < 1) throw std::invalid_argument("subcarriers must be >= 1");
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("bandwidth must be positive");
    if (total_power_w <= 0.0) throw std::invalid_argument("total power must be positive");
    if (max_multiplexed < 1) throw std::invalid_argument("max_multiplexed must be >= 1");
    if (weight_distribution != "uniform01" && weight_distribution != "equal")
        throw std::invalid_argument("unknown weight distribution: " + weight_distribution);
    if (pathloss_model != "umts-urban")
        throw std::invalid_argument("unknown path loss model: " + pathloss_model);
}

double pathloss_db(const ChannelConfig& cfg, double distance_m) {
    (void)cfg;
    return 128.1 + 37.6 * std::log10(distance_m / 1000.0);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t substream) {
    const std::uint64_t mixed = splitmix64(splitmix64(seed) ^ splitmix64(~substream));
    return std::mt19937_64(mixed);
}

Instance generate_instance(const ChannelConfig& cfg, int K, std::uint64_t substream) {
    cfg.validate();
    if (K < 1) throw std::invalid_argument("K must be >= 1");

    std::mt19937_64 rng = seeded_stream(cfg.seed, substream);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> shadow(0.0, cfg.shadowing_sigma_db);
    std::exponential_distribution<double> fading(1.0);

    Instance inst;
    inst.K = K;
    inst.N = cfg.subcarriers;
    inst.M = std::min(cfg.max_multiplexed, K);
    inst.subcarrier_bandwidth_hz = cfg.bandwidth_hz / cfg.subcarriers;
    inst.total_power_w = cfg.total_power_w;
    inst.subcarrier_power_cap_w.assign(inst.N, cfg.total_power_w);
    inst.weight.resize(K);
    inst.gain.assign(K, std::vector<double>(inst.N));
    inst.noise.assign(K, std::vector<double>(inst.N));

    // dBm/Hz -> W over one subcarrier bandwidth.
    const double noise_w =
        std::pow(10.0, (cfg.noise_psd_dbm_hz - 30.0) / 10.0) * inst.subcarrier_bandwidth_hz;

    const double r0_sq = cfg.min_distance_m * cfg.min_distance_m;
    const double r_sq = cfg.cell_radius_m * cfg.cell_radius_m;
    for (int k = 0; k < K; ++k) {
        // Uniform in area over the annulus.
        const double d = std::sqrt(r0_sq + uniform(rng) * (r_sq - r0_sq));
        const double shadow_db = shadow(rng);
        const double large_scale = std::pow(10.0, -(pathloss_db(cfg, d) + shadow_db) / 10.0);
        for (int n = 0; n < inst.N; ++n) {
            inst.gain[k][n] = large_scale * fading(rng);
            inst.noise[k][n] = noise_w;
        }
    }
    for (int k = 0; k < K; ++k) {
        // 1 - U gives (0, 1]: weights must stay strictly positive.
        inst.weight[k] = cfg.weight_distribution == "equal" ? 1.0 : 1.0 - uniform(rng);
    }
    inst.validate();
    return inst;
}

}  // namespace noma
