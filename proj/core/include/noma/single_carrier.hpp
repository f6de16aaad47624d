/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_SINGLE_CARRIER_HPP
#define NOMA_SINGLE_CARRIER_HPP

#include <span>
#include <vector>

#include "noma/model.hpp"
#include "noma/types.hpp"

namespace noma {

// Argmax of f_segment(sc, j, i, .) on [0, budget]. Returns the budget in the
// increasing branch (j == 0 or w_i >= w_{j-1}); otherwise the clamped interior
// stationary point of the unimodal branch.
double max_f(const SingleCarrierView& sc, int j, int i, double budget,
             OpCounter* ops = nullptr);

// Single-carrier power control on a view already restricted to the active
// users, in decoding order. Returns the optimal non-increasing tails, each
// bounded by the budget. Worst case O(s^2) for s active users.
std::vector<double> scpc(const SingleCarrierView& active_view, double budget,
                         OpCounter* ops = nullptr);

// Convenience overload taking the full view plus active positions.
std::vector<double> scpc(const SingleCarrierView& sc, std::span<const int> active_positions,
                         double budget, OpCounter* ops = nullptr);

// Dense DP tables of the user-selection recursion. Cells are addressed by
// (m, j, i) with m in [0, M], j in [0, K], i in [0, K]; j and i follow the
// 1-based convention of the recursion, j = 0 being the initialization row.
// Stored values are relative to the all-zero allocation.
struct DpTables {
    int M = 0;
    int K = 0;
    std::vector<double> V;
    std::vector<double> X;
    struct Cell {
        int m, j, i;
    };
    std::vector<Cell> U;

    std::size_t idx(int m, int j, int i) const {
        return (static_cast<std::size_t>(m) * (K + 1) + j) * (K + 1) + i;
    }
    double v(int m, int j, int i) const { return V[idx(m, j, i)]; }
    double x(int m, int j, int i) const { return X[idx(m, j, i)]; }
    Cell u(int m, int j, int i) const { return U[idx(m, j, i)]; }
};

struct ScusResult {
    std::vector<double> tails;  // size K, non-increasing, at most M active users
    double value = 0.0;         // sum of all f_i terms at the returned tails
    DpTables tables;            // tables.v(M, K, K) == value - value at zero tails
};

// Optimal single-carrier user selection and power control: at most
// max_users active users, tails bounded by the budget. O(M K^2).
ScusResult scus(const SingleCarrierView& sc, double budget, int max_users,
                OpCounter* ops = nullptr);

// Termwise objective sum_i f_i(x_i) for a full tail vector on this view,
// evaluated over maximal equal-tail groups. Rejects non-monotone tails.
double sc_value(const SingleCarrierView& sc, std::span<const double> tails,
                OpCounter* ops = nullptr);

struct ScOracleResult {
    double value = 0.0;
    std::vector<double> tails;  // size K
    double gap_bound = 0.0;     // certified value gap of the grid search
};

// Independent reference: enumerate every active subset of size <= max_users
// and solve each exactly on a shared geometric grid by prefix-max dynamic
// programming over the chain constraint. gap_bound certifies how far the true
// optimum can sit above the returned value. Intended for K <= 8.
ScOracleResult sc_oracle(const SingleCarrierView& sc, double budget, int max_users,
                         int grid_points = 20000);

}  // namespace noma

#endif
