/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_MULTI_CARRIER_HPP
#define NOMA_MULTI_CARRIER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noma/model.hpp"
#include "noma/single_carrier.hpp"
#include "noma/types.hpp"

namespace noma {

// Per-subcarrier power budgets, an element of the capped simplex
// { b : sum b <= P_max, 0 <= b[n] <= caps[n] }.
using BudgetVector = std::vector<double>;

// Euclidean projection onto the capped simplex: clamp(y - tau, 0, caps) with
// tau = 0 when the clamped point already fits the total budget, otherwise the
// unique positive shift found by bisection (1e-12 absolute on tau).
BudgetVector project_capped_simplex(std::span<const double> y, double p_max,
                                    std::span<const double> caps);

// Active users per subcarrier, as 0-based decoding-order positions in
// ascending order (which is the decoding order itself).
struct SubcarrierAssignment {
    std::vector<std::vector<int>> active;

    static SubcarrierAssignment all_users(int K, int N);
};

// Optimal second-stage value of one subcarrier for a fixed active set:
// the power-control optimum under the given budget.
double second_stage_value(const SingleCarrierView& sc, std::span<const int> active,
                          double budget, OpCounter* ops = nullptr);

// Right derivative of the second-stage value with respect to the budget.
// cap is the subcarrier power limit used for the reference allocation.
double second_stage_gradient(const SingleCarrierView& sc, std::span<const int> active,
                             double budget, double cap, OpCounter* ops = nullptr);

// Cached form of the second stage: the allocation at any budget b equals the
// elementwise min of the cap-budget allocation with b, so value and gradient
// queries cost O(groups) after one O(s^2) setup.
struct SecondStage {
    SingleCarrierView view;  // restricted to the active users
    struct Group {
        int j, i;     // 0-based position range within the restricted view
        double tail;  // common tail of the group at the cap budget
    };
    std::vector<Group> groups;

    SecondStage() = default;
    SecondStage(const SingleCarrierView& sc, std::span<const int> active, double cap,
                OpCounter* ops = nullptr);

    double value(double budget, OpCounter* ops = nullptr) const;
    double gradient(double budget, OpCounter* ops = nullptr) const;
};

struct IterationTrace {
    int iteration = 0;
    double objective = 0.0;  // first-stage objective after the iteration
    BudgetVector budgets;
};

struct SolveReport {
    std::string solver;
    PowerMatrix powers;
    TailVector tails;
    BudgetVector budgets;
    double wsr = 0.0;  // weighted_sum_rate of powers, bit/s
    int iterations = 0;
    bool converged = true;
    OpCounter ops;
    std::vector<IterationTrace> trace;
};

struct SolverOptions {
    double epsilon = 1e-4;      // stop when the squared budget step falls below
    int max_iterations = 10000;
    bool record_trace = false;
};

// Optimal multi-carrier power control for a fixed assignment: projected
// gradient ascent on the per-subcarrier budgets from zero, exact
// (golden-section) line search, then per-subcarrier power control.
SolveReport mcpc(const Instance& inst, const DecodingOrder& order,
                 const SubcarrierAssignment& assignment, const SolverOptions& opts = {});

// Joint subcarrier and power allocation heuristic: the same outer loop as
// mcpc, with the second stage re-optimizing the user selection at every
// budget query. Converges to a stationary point.
SolveReport jspa(const Instance& inst, const SolverOptions& opts = {});

// Fractional transmit power control baseline with greedy subcarrier
// allocation: per subcarrier, the M users with the largest weights
// (ties, and therefore equal weights, broken by smallest normalized
// noise) share min(P_max/N, P_max_n) proportionally to noise_norm^decay.
SolveReport ftpc(const Instance& inst, double decay = 0.4);

struct OracleOptions {
    double epsilon = 1e-4;
    std::uint64_t max_assignments = 1000000;
};

// Reference optimum at desk scale: every assignment combination solved by
// mcpc, best kept. Refuses when the combination count exceeds the cap.
SolveReport exhaustive_oracle(const Instance& inst, const OracleOptions& opts = {});

}  // namespace noma

#endif
