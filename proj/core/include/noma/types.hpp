/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_TYPES_HPP
#define NOMA_TYPES_HPP

#include <cstdint>
#include <vector>

namespace noma {

// Counter for basic arithmetic operations on problem variables.
// Incremented inside the solver inner loops (MaxF, SCUS, SCPC, MCPC/JSPA).
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t comparisons = 0;

    std::uint64_t total() const { return adds + muls + comparisons; }

    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        muls += o.muls;
        comparisons += o.comparisons;
        return *this;
    }
};

// Full problem data for the downlink multi-carrier system.
// Powers are in watts, bandwidth in Hz, rates in bit/s. Channel gains are
// dimensionless (linear scale); dB conversions belong to the channel module.
struct Instance {
    int K = 0;  // number of users
    int N = 0;  // number of subcarriers
    int M = 1;  // max multiplexed users per subcarrier

    double subcarrier_bandwidth_hz = 0.0;       // W_n = W/N
    double total_power_w = 0.0;                 // P_max
    std::vector<double> subcarrier_power_cap_w; // P_max_n, size N

    std::vector<double> weight;               // size K, strictly positive
    std::vector<std::vector<double>> gain;    // K x N, strictly positive
    std::vector<std::vector<double>> noise;   // K x N received noise power, watts

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// SIC decoding order per subcarrier: users sorted from highest to lowest
// normalized noise power, ties broken by ascending user index.
struct DecodingOrder {
    std::vector<std::vector<int>> pi;      // pi[n][i] = user decoded i-th (0-based)
    std::vector<std::vector<int>> pi_inv;  // pi_inv[n][k] = decoding position of user k
};

// Per-user per-subcarrier transmit powers, watts.
struct PowerMatrix {
    std::vector<std::vector<double>> p;  // K x N, non-negative

    static PowerMatrix zeros(int K, int N) {
        PowerMatrix pm;
        pm.p.assign(K, std::vector<double>(N, 0.0));
        return pm;
    }
};

// Cumulative tail powers x_i^n: power of users decoded at position >= i.
// x[n] has K+1 entries; the last one is identically zero so that the
// boundary condition is a data invariant rather than a convention.
struct TailVector {
    std::vector<std::vector<double>> x;  // N x (K+1), non-increasing in i
};

}  // namespace noma

#endif
