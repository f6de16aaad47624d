/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/single_carrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace noma {

double max_f(const SingleCarrierView& sc, int j, int i, double budget, OpCounter* ops) {
    if (ops) ops->comparisons += 1;
    if (j == 0 || sc.weight[i] >= sc.weight[j - 1]) return budget;
    const double wa = sc.weight[i], wb = sc.weight[j - 1];
    const double ea = sc.noise_norm[i], eb = sc.noise_norm[j - 1];
    const double c1 = (wb * ea - wa * eb) / (wa - wb);
    if (ops) {
        ops->adds += 2;
        ops->muls += 3;
        ops->comparisons += 2;
    }
    return std::max(0.0, std::min(c1, budget));
}

std::vector<double> scpc(const SingleCarrierView& active_view, double budget, OpCounter* ops) {
    const int s = active_view.size();
    std::vector<double> x(s, 0.0);
    for (int i = 0; i < s; ++i) {
        double xs = max_f(active_view, i, i, budget, ops);
        int j = i - 1;
        while (j >= 0 && x[j] < xs) {
            if (ops) ops->comparisons += 1;
            xs = max_f(active_view, j, i, budget, ops);
            --j;
        }
        if (ops) ops->comparisons += 1;
        for (int l = j + 1; l <= i; ++l) x[l] = xs;
    }
    return x;
}

std::vector<double> scpc(const SingleCarrierView& sc, std::span<const int> active_positions,
                         double budget, OpCounter* ops) {
    return scpc(sc.restricted(active_positions), budget, ops);
}

ScusResult scus(const SingleCarrierView& sc, double budget, int max_users, OpCounter* ops) {
    const int K = sc.size();
    const int M = max_users;
    if (budget < 0.0) throw std::invalid_argument("budget must be non-negative");
    if (M < 0 || M > K) throw std::invalid_argument("max_users must be in [0, K]");

    ScusResult res;
    res.tails.assign(K, 0.0);

    DpTables& t = res.tables;
    t.M = M;
    t.K = K;
    const std::size_t cells = static_cast<std::size_t>(M + 1) * (K + 1) * (K + 1);
    t.V.assign(cells, 0.0);
    t.X.assign(cells, 0.0);
    t.U.assign(cells, DpTables::Cell{0, 0, 0});

    const double wn = sc.bandwidth_hz;

    // Per-position logs so that the common cell evaluations (x* at 0 or at
    // the budget) need no transcendentals.
    std::vector<double> log_eta(K), log_budget_eta(K);
    for (int p = 0; p < K; ++p) {
        log_eta[p] = std::log2(sc.noise_norm[p]);
        log_budget_eta[p] = std::log2(budget + sc.noise_norm[p]);
    }

    // f_{j,i}(x) - f_{j,i}(0) for 1-based (j, i), using precomputed logs
    // where possible.
    auto gain_at = [&](int j, int i, double x) -> double {
        const int a = i - 1, b = j - 2;
        double lx_a, lx_b = 0.0;
        if (x == budget) {
            lx_a = log_budget_eta[a];
            if (j > 1) lx_b = log_budget_eta[b];
        } else {
            lx_a = std::log2(x + sc.noise_norm[a]);
            if (j > 1) lx_b = std::log2(x + sc.noise_norm[b]);
        }
        double v = sc.weight[a] * (lx_a - log_eta[a]);
        if (j > 1) v -= sc.weight[b] * (lx_b - log_eta[b]);
        if (ops) {
            ops->adds += 3;
            ops->muls += 3;
        }
        return wn * v;
    };

    if (M >= 1) {
        for (int j = 1; j <= K; ++j) {
            for (int i = j; i <= K; ++i) {
                // x* is independent of m.
                const double xs = max_f(sc, j - 1, i - 1, budget, ops);
                const bool xs_pos = xs > 0.0;
                double delta = 0.0;  // f_{j,i}(x*) - f_{j,i}(0)
                bool delta_ready = false;
                if (ops) ops->comparisons += 1;
                for (int m = 1; m <= M; ++m) {
                    const double v0 = t.V[t.idx(m, j - 1, j - 1)];
                    const double v2 = t.V[t.idx(m, j - 1, i)];
                    const std::size_t cell = t.idx(m, j, i);
                    bool take_v1 = false;
                    double v1 = 0.0;
                    // The tail above the first group is the budget itself, and
                    // x* may reach it; deeper groups must stay strictly below
                    // the previous group's tail (else merging dominates).
                    const bool below_prev =
                        j == 1 ? xs <= budget : xs < t.X[t.idx(m - 1, j - 1, j - 1)];
                    if (xs_pos && below_prev) {
                        if (!delta_ready) {
                            delta = gain_at(j, i, xs);
                            delta_ready = true;
                        }
                        v1 = t.V[t.idx(m - 1, j - 1, j - 1)] + delta;
                        if (ops) {
                            ops->adds += 1;
                            ops->comparisons += 2;
                        }
                        take_v1 = v1 >= v0 && v1 >= v2;
                    }
                    if (ops) ops->comparisons += 2;
                    if (take_v1) {
                        t.V[cell] = v1;
                        t.X[cell] = xs;
                        t.U[cell] = {m - 1, j - 1, j - 1};
                    } else if (v2 >= v0) {
                        t.V[cell] = v2;
                        t.X[cell] = t.X[t.idx(m, j - 1, i)];
                        t.U[cell] = {m, j - 1, i};
                    } else {
                        t.V[cell] = v0;
                        t.X[cell] = 0.0;
                        t.U[cell] = {m, j - 1, j - 1};
                    }
                }
            }
        }
    }

    // Backtrack from (M, K, K) to (0, 0, 0).
    int m = M, j = K, i = K;
    while (!(m == 0 && j == 0 && i == 0)) {
        const std::size_t cell = t.idx(m, j, i);
        const double x = t.X[cell];
        for (int l = std::max(j, 1); l <= i; ++l) res.tails[l - 1] = x;
        const DpTables::Cell u = t.U[cell];
        m = u.m;
        j = u.j;
        i = u.i;
    }

    // Absolute objective: DP values are relative to the all-zero tails, whose
    // termwise sum telescopes to the last user's term.
    const double zero_value = wn * sc.weight[K - 1] * log_eta[K - 1];
    res.value = t.V[t.idx(M, K, K)] + zero_value;
    return res;
}

double sc_value(const SingleCarrierView& sc, std::span<const double> tails, OpCounter* ops) {
    const int K = sc.size();
    if (static_cast<int>(tails.size()) != K)
        throw std::invalid_argument("tails size must match the view");
    if (K == 0) return 0.0;
    if (tails[K - 1] < 0.0) throw std::invalid_argument("tails must be non-negative");
    for (int i = 0; i + 1 < K; ++i)
        if (tails[i] < tails[i + 1]) throw std::invalid_argument("tails must be non-increasing");

    double total = 0.0;
    int g = 0;
    for (int i = 0; i < K; ++i) {
        if (i + 1 == K || tails[i + 1] != tails[i]) {
            total += f_segment(sc, g, i, tails[g]);
            if (ops) {
                ops->adds += 3;
                ops->muls += 3;
            }
            g = i + 1;
        }
    }
    return total;
}

ScOracleResult sc_oracle(const SingleCarrierView& sc, double budget, int max_users,
                         int grid_points) {
    const int K = sc.size();
    if (K > 16)
        throw std::domain_error("sc_oracle: K too large for subset enumeration (max 16)");
    const int M = std::min(max_users, K);
    const double wn = sc.bandwidth_hz;

    ScOracleResult res;
    res.tails.assign(K, 0.0);
    res.value = K > 0 ? f_segment(sc, 0, K - 1, 0.0) : 0.0;  // all-zero allocation
    res.gap_bound = 0.0;
    if (K == 0 || M == 0 || budget <= 0.0) return res;

    // Common candidate grid for every coordinate: zero, then geometric spacing
    // from far below the smallest noise level up to the budget. On such a grid
    // rounding the optimum down coordinate-wise keeps the tails monotone and
    // loses at most a certified amount per coordinate, because the slope of
    // each log term at x is below w / ((x + eta) ln 2), which caps the
    // cell-width-to-position ratio loss at (q - 1) per geometric cell and at
    // first_cell_fraction for the initial cell.
    const int G = std::max(grid_points, 64);
    double eta_min = sc.noise_norm[0];
    for (int p = 1; p < K; ++p) eta_min = std::min(eta_min, sc.noise_norm[p]);
    constexpr double kFirstCellFraction = 1e-5;
    const double x_min = kFirstCellFraction * std::min(eta_min, budget);
    const double q = std::pow(budget / x_min, 1.0 / (G - 1));
    std::vector<double> grid(G + 1);
    grid[0] = 0.0;
    for (int g = 1; g <= G; ++g) grid[g] = x_min * std::pow(q, g - 1);
    grid[G] = budget;
    const double cell_ratio = std::max(q - 1.0, kFirstCellFraction);

    // log2(grid + eta) per position, shared by every subset.
    std::vector<std::vector<double>> lg(K, std::vector<double>(G + 1));
    for (int p = 0; p < K; ++p)
        for (int g = 0; g <= G; ++g) lg[p][g] = std::log2(grid[g] + sc.noise_norm[p]);

    std::vector<int> positions;
    std::vector<std::vector<double>> suffix;  // per level: best value with x_l <= grid[g]
    std::vector<std::vector<int>> arg;        // per level: grid index achieving it
    double upper_bound = res.value;

    for (int s = 1; s <= M; ++s) {
        positions.resize(s);
        for (int l = 0; l < s; ++l) positions[l] = l;
        suffix.assign(s, std::vector<double>(G + 1));
        arg.assign(s, std::vector<int>(G + 1));
        while (true) {
            // Level l contributes f_l(x) = Wn (w_a log2(x + eta_a)
            //                               - w_b log2(x + eta_b)),
            // a = positions[l], b = positions[l-1] (no b term at l = 0).
            double gap = 0.0;
            for (int l = s - 1; l >= 0; --l) {
                const int a = positions[l];
                const double wa = sc.weight[a];
                double running = -std::numeric_limits<double>::infinity();
                int running_arg = 0;
                if (l == 0) {
                    gap += wn * wa * cell_ratio / std::numbers::ln2;
                    for (int g = 0; g <= G; ++g) {
                        double v = wn * wa * lg[a][g];
                        if (l + 1 < s) v += suffix[l + 1][g];
                        if (v > running) {
                            running = v;
                            running_arg = g;
                        }
                        suffix[l][g] = running;
                        arg[l][g] = running_arg;
                    }
                } else {
                    const int b = positions[l - 1];
                    const double wb = sc.weight[b];
                    gap += wn * (wa + wb) * cell_ratio / std::numbers::ln2;
                    for (int g = 0; g <= G; ++g) {
                        double v = wn * (wa * lg[a][g] - wb * lg[b][g]);
                        if (l + 1 < s) v += suffix[l + 1][g];
                        if (v > running) {
                            running = v;
                            running_arg = g;
                        }
                        suffix[l][g] = running;
                        arg[l][g] = running_arg;
                    }
                }
            }

            // Trailing positions after the last active one stay at zero.
            const int last = positions[s - 1];
            double value = suffix[0][G];
            if (last + 1 < K) value += f_segment(sc, last + 1, K - 1, 0.0);
            upper_bound = std::max(upper_bound, value + gap);

            if (value > res.value) {
                res.value = value;
                std::fill(res.tails.begin(), res.tails.end(), 0.0);
                int g = G, p = 0;
                for (int l = 0; l < s; ++l) {
                    g = arg[l][g];
                    for (; p <= positions[l]; ++p) res.tails[p] = grid[g];
                }
            }

            // Next combination.
            int l = s - 1;
            while (l >= 0 && positions[l] == K - s + l) --l;
            if (l < 0) break;
            ++positions[l];
            for (int t = l + 1; t < s; ++t) positions[t] = positions[t - 1] + 1;
        }
    }
    res.gap_bound = upper_bound - res.value;
    return res;
}

}  // namespace noma
