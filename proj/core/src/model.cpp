/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace noma {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void Instance::validate() const {
    require(K >= 1, "K must be >= 1");
    require(N >= 1, "N must be >= 1");
    require(M >= 1 && M <= K, "M must satisfy 1 <= M <= K");
    require(subcarrier_bandwidth_hz > 0.0, "W_n must be positive");
    require(total_power_w > 0.0, "P_max must be positive");
    require(static_cast<int>(subcarrier_power_cap_w.size()) == N, "P_max_n must have N entries");
    for (double c : subcarrier_power_cap_w) require(c > 0.0, "P_max_n entries must be positive");
    require(static_cast<int>(weight.size()) == K, "weights must have K entries");
    for (double w : weight) require(w > 0.0, "weights must be strictly positive");
    require(static_cast<int>(gain.size()) == K, "gains must have K rows");
    require(static_cast<int>(noise.size()) == K, "noises must have K rows");
    for (int k = 0; k < K; ++k) {
        require(static_cast<int>(gain[k].size()) == N, "gains rows must have N entries");
        require(static_cast<int>(noise[k].size()) == N, "noises rows must have N entries");
        for (int n = 0; n < N; ++n) {
            require(gain[k][n] > 0.0, "gains must be strictly positive");
            require(noise[k][n] > 0.0, "noises must be strictly positive");
        }
    }
}

double normalized_noise(const Instance& inst, int k, int n) {
    return inst.noise[k][n] / inst.gain[k][n];
}

DecodingOrder decoding_order(const Instance& inst) {
    DecodingOrder order;
    order.pi.assign(inst.N, {});
    order.pi_inv.assign(inst.N, std::vector<int>(inst.K, 0));
    for (int n = 0; n < inst.N; ++n) {
        std::vector<int>& pi_n = order.pi[n];
        pi_n.resize(inst.K);
        std::iota(pi_n.begin(), pi_n.end(), 0);
        std::stable_sort(pi_n.begin(), pi_n.end(), [&](int a, int b) {
            return normalized_noise(inst, a, n) > normalized_noise(inst, b, n);
        });
        for (int i = 0; i < inst.K; ++i) order.pi_inv[n][pi_n[i]] = i;
    }
    return order;
}

double user_rate(const Instance& inst, const DecodingOrder& order, int n,
                 std::span<const double> p_n, int k) {
    if (p_n[k] == 0.0) return 0.0;
    double interference = 0.0;
    for (int j = order.pi_inv[n][k] + 1; j < inst.K; ++j)
        interference += p_n[order.pi[n][j]];
    const double eta = normalized_noise(inst, k, n);
    return inst.subcarrier_bandwidth_hz * std::log2(1.0 + p_n[k] / (interference + eta));
}

double weighted_sum_rate(const Instance& inst, const DecodingOrder& order,
                         const PowerMatrix& powers) {
    std::vector<double> p_n(inst.K);
    double total = 0.0;
    for (int n = 0; n < inst.N; ++n) {
        for (int k = 0; k < inst.K; ++k) p_n[k] = powers.p[k][n];
        for (int k = 0; k < inst.K; ++k)
            total += inst.weight[k] * user_rate(inst, order, n, p_n, k);
    }
    return total;
}

TailVector tails_from_powers(const DecodingOrder& order, const PowerMatrix& powers) {
    const int K = static_cast<int>(powers.p.size());
    const int N = K > 0 ? static_cast<int>(powers.p[0].size()) : 0;
    TailVector tails;
    tails.x.assign(N, std::vector<double>(K + 1, 0.0));
    for (int n = 0; n < N; ++n) {
        for (int i = K - 1; i >= 0; --i) {
            const double p = powers.p[order.pi[n][i]][n];
            if (p < 0.0) throw std::invalid_argument("powers must be non-negative");
            tails.x[n][i] = tails.x[n][i + 1] + p;
        }
    }
    return tails;
}

PowerMatrix powers_from_tails(const DecodingOrder& order, const TailVector& tails) {
    const int N = static_cast<int>(tails.x.size());
    const int K = N > 0 ? static_cast<int>(tails.x[0].size()) - 1 : 0;
    PowerMatrix powers = PowerMatrix::zeros(K, N);
    for (int n = 0; n < N; ++n) {
        if (tails.x[n][K] != 0.0)
            throw std::invalid_argument("last tail entry must be zero");
        for (int i = 0; i < K; ++i) {
            const double p = tails.x[n][i] - tails.x[n][i + 1];
            if (p < 0.0) throw std::invalid_argument("tails must be non-increasing");
            powers.p[order.pi[n][i]][n] = p;
        }
    }
    return powers;
}

SingleCarrierView SingleCarrierView::of(const Instance& inst, const DecodingOrder& order, int n) {
    SingleCarrierView sc;
    sc.bandwidth_hz = inst.subcarrier_bandwidth_hz;
    sc.weight.resize(inst.K);
    sc.noise_norm.resize(inst.K);
    sc.user.resize(inst.K);
    for (int i = 0; i < inst.K; ++i) {
        const int k = order.pi[n][i];
        sc.weight[i] = inst.weight[k];
        sc.noise_norm[i] = normalized_noise(inst, k, n);
        sc.user[i] = k;
    }
    return sc;
}

SingleCarrierView SingleCarrierView::restricted(std::span<const int> positions) const {
    SingleCarrierView sc;
    sc.bandwidth_hz = bandwidth_hz;
    sc.weight.reserve(positions.size());
    sc.noise_norm.reserve(positions.size());
    sc.user.reserve(positions.size());
    for (int p : positions) {
        sc.weight.push_back(weight[p]);
        sc.noise_norm.push_back(noise_norm[p]);
        sc.user.push_back(user[p]);
    }
    return sc;
}

double f_segment(const SingleCarrierView& sc, int j, int i, double x) {
    double v = sc.weight[i] * std::log2(x + sc.noise_norm[i]);
    if (j > 0) v -= sc.weight[j - 1] * std::log2(x + sc.noise_norm[j - 1]);
    return sc.bandwidth_hz * v;
}

double f_segment_deriv(const SingleCarrierView& sc, int j, int i, double x) {
    double v = sc.weight[i] / (x + sc.noise_norm[i]);
    if (j > 0) v -= sc.weight[j - 1] / (x + sc.noise_norm[j - 1]);
    return sc.bandwidth_hz * v / std::numbers::ln2_v<double>;
}

double objective_offset(const Instance& inst, const DecodingOrder& order) {
    double total = 0.0;
    for (int n = 0; n < inst.N; ++n) {
        const int last = order.pi[n][inst.K - 1];
        total += inst.subcarrier_bandwidth_hz * inst.weight[last] *
                 std::log2(1.0 / normalized_noise(inst, last, n));
    }
    return total;
}

double separable_objective(const Instance& inst, const DecodingOrder& order,
                           const TailVector& tails) {
    double total = 0.0;
    for (int n = 0; n < inst.N; ++n) {
        const SingleCarrierView sc = SingleCarrierView::of(inst, order, n);
        for (int i = 0; i < inst.K; ++i)
            total += f_segment(sc, i, i, tails.x[n][i]);
    }
    return total;
}

}  // namespace noma
