/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "noma/multi_carrier.hpp"
#include "test_helpers.hpp"

using namespace noma;

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

}  // namespace

TEST_CASE("capped simplex projection hand cases") {
    const std::vector<double> caps = {1.0, 1.0, 1.0};
    SUBCASE("interior point is a fixed point") {
        const std::vector<double> y = {0.2, 0.3, 0.1};
        const BudgetVector p = project_capped_simplex(y, 1.0, caps);
        for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(y[i]));
    }
    SUBCASE("uniform overshoot shifts down uniformly") {
        const std::vector<double> y = {1.0, 1.0, 1.0};
        const BudgetVector p = project_capped_simplex(y, 1.5, caps);
        for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("caps bind before the sum does") {
        const std::vector<double> y = {5.0, 0.0, 0.0};
        const BudgetVector p = project_capped_simplex(y, 2.0, caps);
        CHECK(p[0] == doctest::Approx(1.0));
        CHECK(p[1] == doctest::Approx(0.0));
        CHECK(p[2] == doctest::Approx(0.0));
    }
    SUBCASE("negative coordinates clamp at zero") {
        const std::vector<double> y = {-1.0, 0.4, 0.2};
        const BudgetVector p = project_capped_simplex(y, 1.0, caps);
        CHECK(p[0] == doctest::Approx(0.0));
        CHECK(p[1] == doctest::Approx(0.4));
        CHECK(p[2] == doctest::Approx(0.2));
    }
}

TEST_CASE("projection is the nearest feasible point") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    const std::vector<double> caps = {0.6, 0.8, 0.5, 1.0};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> y(4);
        for (double& v : y) v = u(rng);
        const BudgetVector p = project_capped_simplex(y, 1.2, caps);
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            CHECK(p[i] >= -1e-12);
            CHECK(p[i] <= caps[i] + 1e-12);
            sum += p[i];
        }
        CHECK(sum <= 1.2 + 1e-9);
        // No random feasible point is closer to y.
        for (int probe = 0; probe < 30; ++probe) {
            std::vector<double> q(4);
            double qs = 0.0;
            for (int i = 0; i < 4; ++i) {
                q[i] = std::min(caps[i], std::abs(u(rng)));
                qs += q[i];
            }
            if (qs > 1.2)
                for (double& v : q) v *= 1.2 / qs;
            CHECK(sq_dist(p, y) <= sq_dist(q, y) + 1e-9);
        }
    }
}

TEST_CASE("second stage value agrees between the direct and cached routes") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const SingleCarrierView sc = test::random_view(rng, 6);
        std::vector<int> active = {0, 2, 4, 5};
        const SecondStage cached(sc, active, 1.0);
        for (double b : {0.0, 0.05, 0.3, 0.7, 1.0}) {
            const double direct = second_stage_value(sc, active, b);
            CHECK(cached.value(b) == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("second stage gradient matches finite differences") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        const SingleCarrierView sc = test::random_view(rng, 5);
        std::vector<int> active(5);
        std::iota(active.begin(), active.end(), 0);
        for (double b : {0.05, 0.2, 0.5}) {
            const double g = second_stage_gradient(sc, active, b, 1.0);
            const double h = 1e-6;
            const double fd = (second_stage_value(sc, active, b + h) -
                               second_stage_value(sc, active, b - h)) /
                              (2.0 * h);
            // Away from breakpoints the two sides agree; allow slack for the
            // rare trial where b sits near one.
            CHECK(g == doctest::Approx(fd).epsilon(1e-3));
        }
    }
}

TEST_CASE("second stage value is concave and non-decreasing in the budget") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        const SingleCarrierView sc = test::random_view(rng, 5);
        std::vector<int> active = {0, 1, 2, 3, 4};
        const SecondStage cached(sc, active, 1.0);
        double prev = cached.value(0.0);
        std::vector<double> vals = {prev};
        for (int s = 1; s <= 40; ++s) {
            const double v = cached.value(s / 40.0);
            CHECK(v >= prev - 1e-10);
            vals.push_back(v);
            prev = v;
        }
        // Midpoint concavity on the sampled grid.
        for (std::size_t i = 0; i + 2 < vals.size(); ++i)
            CHECK(vals[i + 1] >= 0.5 * (vals[i] + vals[i + 2]) - 1e-9);
    }
}

TEST_CASE("mcpc on a single subcarrier spends the full budget") {
    std::mt19937_64 rng(83);
    const Instance inst = test::random_instance(rng, 4, 1, 4);
    const DecodingOrder order = decoding_order(inst);
    const SolveReport rep = mcpc(inst, order, SubcarrierAssignment::all_users(4, 1));
    CHECK(rep.converged);
    // One subcarrier: the optimum is SCPC at the full budget.
    const SingleCarrierView sc = SingleCarrierView::of(inst, order, 0);
    const double ref = sc_value(sc, scpc(sc, inst.total_power_w)) +
                       objective_offset(inst, order);
    CHECK(rep.wsr == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("mcpc splits the budget evenly across identical subcarriers") {
    std::mt19937_64 rng(89);
    Instance inst = test::random_instance(rng, 3, 2, 3);
    for (int k = 0; k < 3; ++k) inst.gain[k][1] = inst.gain[k][0];
    inst.subcarrier_power_cap_w = {1.0, 1.0};
    const DecodingOrder order = decoding_order(inst);
    SolverOptions opts;
    opts.epsilon = 1e-10;
    const SolveReport rep = mcpc(inst, order, SubcarrierAssignment::all_users(3, 2), opts);
    CHECK(rep.budgets[0] == doctest::Approx(rep.budgets[1]).epsilon(1e-3));
    CHECK(rep.budgets[0] + rep.budgets[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mcpc objective trace is non-decreasing") {
    std::mt19937_64 rng(97);
    const Instance inst = test::random_instance(rng, 5, 4, 5);
    const DecodingOrder order = decoding_order(inst);
    SolverOptions opts;
    opts.record_trace = true;
    const SolveReport rep = mcpc(inst, order, SubcarrierAssignment::all_users(5, 4), opts);
    REQUIRE(!rep.trace.empty());
    for (std::size_t i = 1; i < rep.trace.size(); ++i)
        CHECK(rep.trace[i].objective >= rep.trace[i - 1].objective - 1e-9);
}

TEST_CASE("jspa reduces to mcpc when every user fits on every subcarrier") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = test::random_instance(rng, 3, 2, 3);  // M == K
        const DecodingOrder order = decoding_order(inst);
        const SolveReport a = jspa(inst);
        const SolveReport b = mcpc(inst, order, SubcarrierAssignment::all_users(3, 2));
        CHECK(a.wsr >= b.wsr - 1e-6 * std::abs(b.wsr) - 1e-9);
    }
}

TEST_CASE("jspa respects the multiplexing cap and the power budget") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = test::random_instance(rng, 6, 3, 2);
        const SolveReport rep = jspa(inst);
        double total = 0.0;
        for (int n = 0; n < inst.N; ++n) {
            int active = 0;
            for (int k = 0; k < inst.K; ++k) {
                total += rep.powers.p[k][n];
                if (rep.powers.p[k][n] > 1e-12) ++active;
            }
            CHECK(active <= inst.M);
        }
        CHECK(total <= inst.total_power_w + 1e-6);
    }
}

TEST_CASE("exhaustive oracle dominates jspa and refuses large spaces") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 5; ++trial) {
        Instance inst = test::random_instance(rng, 4, 2, 2);
        const SolveReport best = exhaustive_oracle(inst);
        const SolveReport heur = jspa(inst);
        CHECK(best.wsr >= heur.wsr - 1e-6 * std::abs(best.wsr));
    }
    Instance big = test::random_instance(rng, 16, 8, 4);
    OracleOptions opts;
    opts.max_assignments = 1000;
    CHECK_THROWS_AS(exhaustive_oracle(big, opts), std::domain_error);
}

TEST_CASE("ftpc allocation shape") {
    std::mt19937_64 rng(109);
    Instance inst = test::random_instance(rng, 5, 4, 2);
    // Equal weights: the greedy selection reduces to the smallest noises.
    inst.weight.assign(inst.K, 1.0);
    const SolveReport rep = ftpc(inst);
    const DecodingOrder order = decoding_order(inst);
    for (int n = 0; n < inst.N; ++n) {
        // Only the last M decoding positions (smallest normalized noise) are on.
        double sum = 0.0;
        int active = 0;
        for (int k = 0; k < inst.K; ++k) {
            sum += rep.powers.p[k][n];
            if (rep.powers.p[k][n] > 0.0) {
                ++active;
                CHECK(order.pi_inv[n][k] >= inst.K - inst.M);
            }
        }
        CHECK(active == inst.M);
        CHECK(sum == doctest::Approx(std::min(inst.total_power_w / inst.N,
                                              inst.subcarrier_power_cap_w[n])));
        // Powers proportional to noise_norm^0.4.
        const SingleCarrierView sc = SingleCarrierView::of(inst, order, n);
        const int i0 = inst.K - inst.M;
        const double p0 = rep.powers.p[sc.user[i0]][n];
        const double p1 = rep.powers.p[sc.user[i0 + 1]][n];
        const double r = std::pow(sc.noise_norm[i0], 0.4) / std::pow(sc.noise_norm[i0 + 1], 0.4);
        CHECK(p0 / p1 == doctest::Approx(r).epsilon(1e-9));
    }
    CHECK(rep.wsr == doctest::Approx(weighted_sum_rate(inst, order, rep.powers)));
}

TEST_CASE("solver reports are internally consistent") {
    std::mt19937_64 rng(113);
    const Instance inst = test::random_instance(rng, 4, 3, 4);
    const DecodingOrder order = decoding_order(inst);
    for (const SolveReport& rep :
         {jspa(inst), mcpc(inst, order, SubcarrierAssignment::all_users(4, 3)), ftpc(inst)}) {
        CHECK(rep.wsr == doctest::Approx(weighted_sum_rate(inst, order, rep.powers)).epsilon(1e-9));
        for (int n = 0; n < inst.N; ++n) {
            double used = 0.0;
            for (int k = 0; k < inst.K; ++k) used += rep.powers.p[k][n];
            CHECK(used <= rep.budgets[n] + 1e-9);
        }
    }
}
