/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "noma/model.hpp"
#include "test_helpers.hpp"

using namespace noma;

namespace {

Instance tiny_instance(int K, double bandwidth = 1.0) {
    Instance inst;
    inst.K = K;
    inst.N = 1;
    inst.M = K;
    inst.subcarrier_bandwidth_hz = bandwidth;
    inst.total_power_w = 10.0;
    inst.subcarrier_power_cap_w = {10.0};
    inst.weight.assign(K, 1.0);
    inst.gain.assign(K, {1.0});
    inst.noise.assign(K, {1.0});
    return inst;
}

}  // namespace

TEST_CASE("normalized noise is eta over gain") {
    Instance inst = tiny_instance(1);
    inst.noise[0][0] = 2.0;
    inst.gain[0][0] = 1.0;
    CHECK(normalized_noise(inst, 0, 0) == doctest::Approx(2.0));
    inst.noise[0][0] = 1.0;
    inst.gain[0][0] = 4.0;
    CHECK(normalized_noise(inst, 0, 0) == doctest::Approx(0.25));
}

TEST_CASE("normalized noise matches log-domain arithmetic") {
    // -174 dBm/Hz over 500 kHz, gain drawn as a dB value.
    const double noise_w = std::pow(10.0, (-174.0 - 30.0) / 10.0) * 5e5;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> gain_db(-120.0, -70.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double g_db = gain_db(rng);
        Instance inst = tiny_instance(1, 5e5);
        inst.noise[0][0] = noise_w;
        inst.gain[0][0] = std::pow(10.0, g_db / 10.0);
        const double noise_dbm = 10.0 * std::log10(noise_w) + 30.0;
        const double eta_db = (noise_dbm - 30.0) - g_db;
        const double expected = std::pow(10.0, eta_db / 10.0);
        CHECK(normalized_noise(inst, 0, 0) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("decoding order sorts by normalized noise descending") {
    Instance inst = tiny_instance(3);
    inst.noise[0][0] = 3.0;
    inst.noise[1][0] = 1.0;
    inst.noise[2][0] = 2.0;
    const DecodingOrder order = decoding_order(inst);
    CHECK(order.pi[0] == std::vector<int>{0, 2, 1});

    SUBCASE("ties break by ascending user index") {
        inst.noise.assign(3, {1.0});
        const DecodingOrder tied = decoding_order(inst);
        CHECK(tied.pi[0] == std::vector<int>{0, 1, 2});
    }
}

TEST_CASE("decoding order inverse composes to identity") {
    std::mt19937_64 rng(11);
    const Instance inst = test::random_instance(rng, 8, 4, 2);
    const DecodingOrder order = decoding_order(inst);
    for (int n = 0; n < inst.N; ++n) {
        for (int i = 0; i < inst.K; ++i) CHECK(order.pi_inv[n][order.pi[n][i]] == i);
        for (int i = 0; i + 1 < inst.K; ++i)
            CHECK(normalized_noise(inst, order.pi[n][i], n) >=
                  normalized_noise(inst, order.pi[n][i + 1], n));
    }
}

TEST_CASE("user rate basics") {
    Instance inst = tiny_instance(1, 3.0);
    const DecodingOrder order = decoding_order(inst);

    // Single user at SNR 1: rate = W_n.
    std::vector<double> p = {1.0};
    CHECK(user_rate(inst, order, 0, p, 0) == doctest::Approx(3.0));
    p[0] = 0.0;
    CHECK(user_rate(inst, order, 0, p, 0) == 0.0);
}

TEST_CASE("user rate with SIC interference matches the direct formula") {
    Instance inst = tiny_instance(2, 1.0);
    inst.noise[0][0] = 4.0;  // user 0 decoded first
    inst.noise[1][0] = 1.0;
    const DecodingOrder order = decoding_order(inst);
    const std::vector<double> p = {3.0, 0.5};
    // First-decoded user sees the other's power as interference.
    CHECK(user_rate(inst, order, 0, p, 0) ==
          doctest::Approx(std::log2(1.0 + 3.0 / (0.5 + 4.0))));
    // Later-decoded user has its interference cancelled.
    CHECK(user_rate(inst, order, 0, p, 1) == doctest::Approx(std::log2(1.0 + 0.5 / 1.0)));
}

TEST_CASE("weighted sum rate basics") {
    Instance inst = tiny_instance(1, 3.0);
    inst.weight[0] = 2.0;
    const DecodingOrder order = decoding_order(inst);
    PowerMatrix zero = PowerMatrix::zeros(1, 1);
    CHECK(weighted_sum_rate(inst, order, zero) == 0.0);
    zero.p[0][0] = 1.0;  // p = eta, SNR 1
    CHECK(weighted_sum_rate(inst, order, zero) == doctest::Approx(6.0));
}

TEST_CASE("tail transform examples") {
    Instance inst = tiny_instance(2);
    const DecodingOrder order = decoding_order(inst);
    PowerMatrix pm = PowerMatrix::zeros(2, 1);
    pm.p[0][0] = 1.0;
    pm.p[1][0] = 2.0;
    const TailVector tails = tails_from_powers(order, pm);
    CHECK(tails.x[0] == std::vector<double>{3.0, 2.0, 0.0});
    const PowerMatrix back = powers_from_tails(order, tails);
    CHECK(back.p[0][0] == doctest::Approx(1.0));
    CHECK(back.p[1][0] == doctest::Approx(2.0));
}

TEST_CASE("tail transform round trip on random powers") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = test::random_instance(rng, 6, 3, 2);
        const DecodingOrder order = decoding_order(inst);
        const PowerMatrix pm = test::random_powers(rng, 6, 3, 10.0);
        const PowerMatrix back = powers_from_tails(order, tails_from_powers(order, pm));
        for (int k = 0; k < 6; ++k)
            for (int n = 0; n < 3; ++n)
                CHECK(back.p[k][n] == doctest::Approx(pm.p[k][n]).epsilon(1e-12));
    }
}

TEST_CASE("powers_from_tails rejects non-monotone tails") {
    Instance inst = tiny_instance(2);
    const DecodingOrder order = decoding_order(inst);
    TailVector bad;
    bad.x = {{1.0, 2.0, 0.0}};
    CHECK_THROWS_AS(powers_from_tails(order, bad), std::invalid_argument);
    TailVector bad_end;
    bad_end.x = {{1.0, 0.5, 0.1}};
    CHECK_THROWS_AS(powers_from_tails(order, bad_end), std::invalid_argument);
}

TEST_CASE("f_segment closed-form cases") {
    SingleCarrierView sc;
    sc.bandwidth_hz = 1.0;
    sc.weight = {2.0, 1.0};
    sc.noise_norm = {4.0, 1.0};
    sc.user = {0, 1};

    // First segment, w = 1, eta = 1, x = 1 -> log2(2) = 1.
    SingleCarrierView first;
    first.bandwidth_hz = 1.0;
    first.weight = {1.0};
    first.noise_norm = {1.0};
    first.user = {0};
    CHECK(f_segment(first, 0, 0, 1.0) == doctest::Approx(1.0));

    // Symmetric cancellation: equal weight and noise on both ends.
    SingleCarrierView sym;
    sym.bandwidth_hz = 1.0;
    sym.weight = {1.5, 1.5};
    sym.noise_norm = {2.0, 2.0};
    sym.user = {0, 1};
    for (double x : {0.0, 0.3, 2.0, 10.0})
        CHECK(f_segment(sym, 1, 1, x) == doctest::Approx(0.0));
}

TEST_CASE("f_segment equals the termwise sum over the segment") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const SingleCarrierView sc = test::random_view(rng, 6);
        for (int j = 0; j < 6; ++j) {
            for (int i = j; i < 6; ++i) {
                for (double x : {0.0, 0.1, 1.0, 7.5}) {
                    double termwise = 0.0;
                    for (int l = j; l <= i; ++l) termwise += f_segment(sc, l, l, x);
                    CHECK(f_segment(sc, j, i, x) ==
                          doctest::Approx(termwise).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("f_segment monotonicity changes sign at most once, bracketing c1") {
    std::mt19937_64 rng(19);
    const double budget = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        const SingleCarrierView sc = test::random_view(rng, 4);
        const int j = 1 + static_cast<int>(rng() % 3);
        const int i = j + static_cast<int>(rng() % (4 - j));
        const double wa = sc.weight[i], wb = sc.weight[j - 1];
        int sign_changes = 0;
        double prev_diff = 0.0;
        const int steps = 400;
        for (int s = 0; s < steps; ++s) {
            const double x0 = budget * s / steps;
            const double x1 = budget * (s + 1) / steps;
            const double diff = f_segment(sc, j, i, x1) - f_segment(sc, j, i, x0);
            if (s > 0 && diff * prev_diff < 0.0) {
                ++sign_changes;
                if (wa < wb) {
                    // The change is detected one step late, so the bracket is
                    // the previous interval extended by one step either side.
                    const double c1 = (wb * sc.noise_norm[i] - wa * sc.noise_norm[j - 1]) /
                                      (wa - wb);
                    CHECK(x0 - budget / steps <= c1);
                    CHECK(c1 <= x1 + budget / steps);
                }
            }
            prev_diff = diff;
        }
        CHECK(sign_changes <= 1);
        if (wa >= wb) CHECK(sign_changes == 0);  // strictly increasing branch
    }
}

TEST_CASE("objective offset trivial cases") {
    Instance inst = tiny_instance(2, 1.0);
    const DecodingOrder order = decoding_order(inst);
    CHECK(objective_offset(inst, order) == doctest::Approx(0.0));  // eta = 1

    Instance half = tiny_instance(1, 1.0);
    half.noise[0][0] = 0.5;
    CHECK(objective_offset(half, decoding_order(half)) == doctest::Approx(1.0));
}

TEST_CASE("weighted sum rate equals separable objective plus offset") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = test::random_instance(rng, 5, 3, 2);
        const DecodingOrder order = decoding_order(inst);
        const PowerMatrix pm = test::random_powers(rng, 5, 3, 0.2);
        const double wsr = weighted_sum_rate(inst, order, pm);
        const double f = separable_objective(inst, order, tails_from_powers(order, pm));
        const double offset = objective_offset(inst, order);
        CHECK(wsr == doctest::Approx(f + offset).epsilon(1e-9));
    }
}
