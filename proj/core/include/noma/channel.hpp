/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_CHANNEL_HPP
#define NOMA_CHANNEL_HPP

#include <cstdint>
#include <random>
#include <string>

#include "noma/types.hpp"

namespace noma {

// Random instance generation parameters. Defaults follow the standard
// urban macro-cell setup: 500 m cell diameter, 2 GHz carrier, 5 MHz split
// into 10 subcarriers, -174 dBm/Hz noise floor, 1 W power budget.
struct ChannelConfig {
    double cell_radius_m = 250.0;
    double min_distance_m = 35.0;
    double carrier_ghz = 2.0;
    std::string pathloss_model = "umts-urban";  // 128.1 + 37.6 log10(d_km) dB
    double shadowing_sigma_db = 8.0;
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 5e6;
    int subcarriers = 10;
    int max_multiplexed = 2;  // M
    double total_power_w = 1.0;
    std::string weight_distribution = "uniform01";  // or "equal"
    std::uint64_t seed = 1;

    void validate() const;  // throws std::invalid_argument
};

// Distance-dependent path loss in dB for the configured model (d in meters).
double pathloss_db(const ChannelConfig& cfg, double distance_m);

// Deterministic splittable stream: same (seed, substream) gives the same
// engine state; distinct substreams are decorrelated via splitmix64 mixing.
std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t substream);

// Random instance with K users: positions uniform in area over the annulus
// [min_distance, radius], log-normal shadowing per user, unit-mean Rayleigh
// (exponential) fading per user and subcarrier, flat noise floor.
Instance generate_instance(const ChannelConfig& cfg, int K, std::uint64_t substream = 0);

}  // namespace noma

#endif
