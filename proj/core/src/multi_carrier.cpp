/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/multi_carrier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace noma {

BudgetVector project_capped_simplex(std::span<const double> y, double p_max,
                                    std::span<const double> caps) {
    const int n = static_cast<int>(y.size());
    BudgetVector out(n);
    auto clamped_sum = [&](double tau) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::clamp(y[i] - tau, 0.0, caps[i]);
        return s;
    };
    double tau = 0.0;
    if (clamped_sum(0.0) > p_max) {
        double lo = 0.0;
        double hi = *std::max_element(y.begin(), y.end());
        // Relative tolerance: y can be arbitrarily large, and below the ulp
        // of the endpoints the midpoint rounds back onto them.
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (clamped_sum(mid) > p_max)
                lo = mid;
            else
                hi = mid;
        }
        tau = hi;  // the upper end keeps the sum at or below the budget
    }
    double sum = 0.0;
    int largest = 0;
    for (int i = 0; i < n; ++i) {
        out[i] = std::clamp(y[i] - tau, 0.0, caps[i]);
        sum += out[i];
        if (out[i] > out[largest]) largest = i;
    }
    if (sum > p_max && tau > 0.0) out[largest] -= sum - p_max;  // absorb rounding residue
    return out;
}

SubcarrierAssignment SubcarrierAssignment::all_users(int K, int N) {
    SubcarrierAssignment a;
    std::vector<int> all(K);
    std::iota(all.begin(), all.end(), 0);
    a.active.assign(N, all);
    return a;
}

SecondStage::SecondStage(const SingleCarrierView& sc, std::span<const int> active, double cap,
                         OpCounter* ops) {
    view = sc.restricted(active);
    const std::vector<double> ref = scpc(view, cap, ops);
    const int s = static_cast<int>(ref.size());
    int g = 0;
    for (int i = 0; i < s; ++i) {
        if (i + 1 == s || ref[i + 1] != ref[i]) {
            groups.push_back({g, i, ref[g]});
            g = i + 1;
        }
    }
}

double SecondStage::value(double budget, OpCounter* ops) const {
    double total = 0.0;
    for (const Group& g : groups) {
        total += f_segment(view, g.j, g.i, std::min(g.tail, budget));
        if (ops) {
            ops->adds += 3;
            ops->muls += 3;
            ops->comparisons += 1;
        }
    }
    return total;
}

double SecondStage::gradient(double budget, OpCounter* ops) const {
    double total = 0.0;
    for (const Group& g : groups) {
        if (ops) ops->comparisons += 1;
        if (g.tail > budget) {
            total += f_segment_deriv(view, g.j, g.i, budget);
            if (ops) {
                ops->adds += 3;
                ops->muls += 3;
            }
        }
    }
    return total;
}

double second_stage_value(const SingleCarrierView& sc, std::span<const int> active,
                          double budget, OpCounter* ops) {
    const SingleCarrierView r = sc.restricted(active);
    const std::vector<double> tails = scpc(r, budget, ops);
    return sc_value(r, tails, ops);
}

double second_stage_gradient(const SingleCarrierView& sc, std::span<const int> active,
                             double budget, double cap, OpCounter* ops) {
    return SecondStage(sc, active, cap, ops).gradient(budget, ops);
}

namespace {

// Full K-sized tail vector for one subcarrier from the tails of its active
// positions: positions up to and including an active one inherit its tail,
// positions after the last active one are zero.
std::vector<double> expand_tails(int K, std::span<const int> active,
                                 std::span<const double> reduced) {
    std::vector<double> full(K, 0.0);
    int p = 0;
    for (std::size_t l = 0; l < active.size(); ++l) {
        for (; p <= active[l]; ++p) full[p] = reduced[l];
    }
    return full;
}

struct AscentResult {
    BudgetVector budgets;
    double value = 0.0;
    int iterations = 0;
    bool converged = true;
    std::vector<IterationTrace> trace;
};

// Projected gradient ascent on the per-subcarrier budgets, starting from
// zero (or a given feasible point), with a bracketed golden-section exact
// line search along the projected ray.
AscentResult projected_gradient_ascent(
    int N, double p_max, std::span<const double> caps, const SolverOptions& opts,
    const std::function<double(int, double)>& value_fn,
    const std::function<double(int, double)>& gradient_fn, OpCounter* ops,
    const BudgetVector& start = {}) {
    AscentResult res;
    if (start.empty())
        res.budgets.assign(N, 0.0);
    else
        res.budgets = start;

    auto objective = [&](const BudgetVector& b) {
        double total = 0.0;
        for (int n = 0; n < N; ++n) total += value_fn(n, b[n]);
        if (ops) ops->adds += static_cast<std::uint64_t>(N);
        return total;
    };

    constexpr double golden = 0.6180339887498949;
    std::vector<double> direction(N), shifted(N);
    double current_value = objective(res.budgets);

    res.converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        double grad_max = 0.0;
        for (int n = 0; n < N; ++n) {
            direction[n] = gradient_fn(n, res.budgets[n]);
            grad_max = std::max(grad_max, std::abs(direction[n]));
        }
        if (grad_max == 0.0) {
            res.converged = true;
            break;
        }

        // Step range: far enough that the raw point exits the bounding box.
        double alpha_max = 0.0;
        for (int n = 0; n < N; ++n) {
            if (direction[n] > 0.0)
                alpha_max = std::max(alpha_max, (caps[n] - res.budgets[n]) / direction[n]);
        }
        alpha_max = std::max(2.0 * alpha_max, p_max / grad_max);

        auto point_at = [&](double alpha) {
            for (int n = 0; n < N; ++n) shifted[n] = res.budgets[n] + alpha * direction[n];
            if (ops) {
                ops->adds += static_cast<std::uint64_t>(N);
                ops->muls += static_cast<std::uint64_t>(N);
            }
            return project_capped_simplex(shifted, p_max, caps);
        };

        double best_alpha = 0.0, best_value = current_value;
        BudgetVector best_point = res.budgets;
        auto probe = [&](double alpha) {
            BudgetVector b = point_at(alpha);
            const double v = objective(b);
            if (v > best_value) {
                best_value = v;
                best_alpha = alpha;
                best_point = std::move(b);
            }
            return v;
        };

        // The arc value g(alpha) = F(project(P + alpha grad)) is only
        // piecewise smooth and can be multimodal when the gradient spans many
        // orders of magnitude (a near-saturated coordinate peaks at a tiny
        // alpha, the rest much later). Bracket the best step by a geometric
        // sweep first, then refine by golden section inside the bracket.
        constexpr int sweep_n = 61;
        double sweep_alpha = alpha_max;
        int sweep_best = -1;
        double sweep_best_value = current_value;
        double a = 0.0, b = alpha_max;
        for (int i = 0; i < sweep_n; ++i) {
            const double v = probe(sweep_alpha);
            if (v > sweep_best_value) {
                sweep_best_value = v;
                sweep_best = i;
            }
            sweep_alpha *= 0.5;
        }
        if (sweep_best >= 0) {
            a = alpha_max * std::ldexp(1.0, -(sweep_best + 1));
            b = sweep_best > 0 ? alpha_max * std::ldexp(1.0, -(sweep_best - 1))
                               : alpha_max;
        } else {
            b = alpha_max * std::ldexp(1.0, -(sweep_n - 1));
        }
        // Floor the tolerance at the ulp scale of the interval: alpha_max can
        // be driven by a near-zero gradient component while grad_max is huge,
        // and below the ulp of the endpoints the interval stops shrinking.
        const double tol = std::max(1e-10 * p_max / grad_max, 1e-12 * b);
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = probe(x1), f2 = probe(x2);
        for (int gs = 0; gs < 200 && b - a > tol; ++gs) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = probe(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = probe(x1);
            }
        }

        double step_sq = 0.0;
        for (int n = 0; n < N; ++n) {
            const double d = best_point[n] - res.budgets[n];
            step_sq += d * d;
        }
        res.budgets = best_point;
        current_value = best_value;
        res.iterations = it + 1;
        if (opts.record_trace) res.trace.push_back({it + 1, current_value, res.budgets});
        if (step_sq <= opts.epsilon) {
            res.converged = true;
            break;
        }
    }
    res.value = current_value;
    return res;
}

SolveReport finalize_report(const Instance& inst, const DecodingOrder& order,
                            std::string solver, AscentResult&& ascent,
                            const std::vector<std::vector<double>>& full_tails, OpCounter ops) {
    SolveReport rep;
    rep.solver = std::move(solver);
    rep.budgets = std::move(ascent.budgets);
    rep.iterations = ascent.iterations;
    rep.converged = ascent.converged;
    rep.trace = std::move(ascent.trace);
    rep.ops = ops;
    rep.tails.x.assign(inst.N, std::vector<double>(inst.K + 1, 0.0));
    for (int n = 0; n < inst.N; ++n)
        for (int i = 0; i < inst.K; ++i) rep.tails.x[n][i] = full_tails[n][i];
    rep.powers = powers_from_tails(order, rep.tails);
    rep.wsr = weighted_sum_rate(inst, order, rep.powers);
    return rep;
}

}  // namespace

SolveReport mcpc(const Instance& inst, const DecodingOrder& order,
                 const SubcarrierAssignment& assignment, const SolverOptions& opts) {
    if (static_cast<int>(assignment.active.size()) != inst.N)
        throw std::invalid_argument("assignment must cover all subcarriers");
    for (const auto& a : assignment.active)
        if (static_cast<int>(a.size()) > inst.M)
            throw std::invalid_argument("assignment exceeds the multiplexing limit");

    OpCounter ops;
    std::vector<SingleCarrierView> views;
    std::vector<SecondStage> stages;
    views.reserve(inst.N);
    stages.reserve(inst.N);
    for (int n = 0; n < inst.N; ++n) {
        views.push_back(SingleCarrierView::of(inst, order, n));
        stages.emplace_back(views[n], assignment.active[n], inst.subcarrier_power_cap_w[n],
                            &ops);
    }

    AscentResult ascent = projected_gradient_ascent(
        inst.N, inst.total_power_w, inst.subcarrier_power_cap_w, opts,
        [&](int n, double b) { return stages[n].value(b, &ops); },
        [&](int n, double b) { return stages[n].gradient(b, &ops); }, &ops);

    std::vector<std::vector<double>> full_tails(inst.N);
    for (int n = 0; n < inst.N; ++n) {
        const std::vector<double> reduced =
            scpc(stages[n].view, ascent.budgets[n], &ops);
        full_tails[n] = expand_tails(inst.K, assignment.active[n], reduced);
    }
    return finalize_report(inst, order, "mcpc", std::move(ascent), full_tails, ops);
}

SolveReport jspa(const Instance& inst, const SolverOptions& opts) {
    const DecodingOrder order = decoding_order(inst);
    OpCounter ops;
    std::vector<SingleCarrierView> views;
    views.reserve(inst.N);
    for (int n = 0; n < inst.N; ++n) views.push_back(SingleCarrierView::of(inst, order, n));

    auto active_from_tails = [&](const std::vector<double>& tails) {
        std::vector<int> active;
        for (int i = 0; i < inst.K; ++i) {
            const double next = i + 1 < inst.K ? tails[i + 1] : 0.0;
            if (tails[i] > next) active.push_back(i);
        }
        return active;
    };

    auto value_fn = [&](int n, double b) { return scus(views[n], b, inst.M, &ops).value; };
    auto gradient_fn = [&](int n, double b) {
        std::vector<int> active = active_from_tails(scus(views[n], b, inst.M, &ops).tails);
        if (active.empty()) {
            // Zero budget: ascend toward the steepest single activation.
            int best = 0;
            for (int i = 1; i < inst.K; ++i)
                if (views[n].weight[i] / views[n].noise_norm[i] >
                    views[n].weight[best] / views[n].noise_norm[best])
                    best = i;
            active.push_back(best);
        }
        return second_stage_gradient(views[n], active, b, inst.subcarrier_power_cap_w[n],
                                     &ops);
    };

    // The scus-based objective is not concave, so the ascent can settle in a
    // local maximum: run it from the zero and the uniform feasible points and
    // keep the better of the two.
    AscentResult ascent =
        projected_gradient_ascent(inst.N, inst.total_power_w, inst.subcarrier_power_cap_w,
                                  opts, value_fn, gradient_fn, &ops);
    BudgetVector uniform(inst.N);
    for (int n = 0; n < inst.N; ++n)
        uniform[n] =
            std::min(inst.total_power_w / inst.N, inst.subcarrier_power_cap_w[n]);
    AscentResult alt =
        projected_gradient_ascent(inst.N, inst.total_power_w, inst.subcarrier_power_cap_w,
                                  opts, value_fn, gradient_fn, &ops, uniform);
    if (alt.value > ascent.value) ascent = std::move(alt);

    std::vector<std::vector<double>> full_tails(inst.N);
    for (int n = 0; n < inst.N; ++n)
        full_tails[n] = scus(views[n], ascent.budgets[n], inst.M, &ops).tails;
    return finalize_report(inst, order, "jspa", std::move(ascent), full_tails, ops);
}

SolveReport ftpc(const Instance& inst, double decay) {
    const DecodingOrder order = decoding_order(inst);
    SolveReport rep;
    rep.solver = "ftpc";
    rep.powers = PowerMatrix::zeros(inst.K, inst.N);
    rep.budgets.assign(inst.N, 0.0);
    const int m = std::min(inst.M, inst.K);
    std::vector<int> pos(inst.K);
    for (int n = 0; n < inst.N; ++n) {
        const SingleCarrierView sc = SingleCarrierView::of(inst, order, n);
        const double budget =
            std::min(inst.total_power_w / inst.N, inst.subcarrier_power_cap_w[n]);
        rep.budgets[n] = budget;
        // Greedy subcarrier allocation by scheduler priority: serve the m
        // users with the largest weights, ties broken by channel quality
        // (under equal weights, the m smallest normalized noises). Power
        // within the subcarrier is fractional, larger for weaker channels.
        std::iota(pos.begin(), pos.end(), 0);
        std::partial_sort(pos.begin(), pos.begin() + m, pos.end(), [&](int a, int b) {
            if (sc.weight[a] != sc.weight[b]) return sc.weight[a] > sc.weight[b];
            return sc.noise_norm[a] < sc.noise_norm[b];
        });
        double denom = 0.0;
        for (int l = 0; l < m; ++l) denom += std::pow(sc.noise_norm[pos[l]], decay);
        for (int l = 0; l < m; ++l) {
            const double share = std::pow(sc.noise_norm[pos[l]], decay) / denom;
            rep.powers.p[sc.user[pos[l]]][n] = budget * share;
        }
    }
    rep.tails = tails_from_powers(order, rep.powers);
    rep.wsr = weighted_sum_rate(inst, order, rep.powers);
    rep.iterations = 0;
    rep.converged = true;
    return rep;
}

SolveReport exhaustive_oracle(const Instance& inst, const OracleOptions& opts) {
    const DecodingOrder order = decoding_order(inst);

    // All candidate active sets (positions) of size 1..M for one subcarrier.
    std::vector<std::vector<int>> subsets;
    const int m_cap = std::min(inst.M, inst.K);
    for (int mask = 1; mask < (1 << inst.K); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) > m_cap) continue;
        std::vector<int> s;
        for (int i = 0; i < inst.K; ++i)
            if (mask & (1 << i)) s.push_back(i);
        subsets.push_back(std::move(s));
    }

    double combos = 1.0;
    for (int n = 0; n < inst.N; ++n) combos *= static_cast<double>(subsets.size());
    if (combos > static_cast<double>(opts.max_assignments))
        throw std::domain_error(
            "exhaustive_oracle: " + std::to_string(combos) +
            " assignment combinations exceed the cap of " +
            std::to_string(opts.max_assignments));

    SolverOptions solver_opts;
    solver_opts.epsilon = opts.epsilon;

    SolveReport best;
    best.wsr = -std::numeric_limits<double>::infinity();
    SubcarrierAssignment assignment;
    assignment.active.assign(inst.N, subsets[0]);
    std::vector<std::size_t> odometer(inst.N, 0);
    while (true) {
        SolveReport rep = mcpc(inst, order, assignment, solver_opts);
        if (rep.wsr > best.wsr) best = std::move(rep);

        int n = 0;
        for (; n < inst.N; ++n) {
            if (++odometer[n] < subsets.size()) {
                assignment.active[n] = subsets[odometer[n]];
                break;
            }
            odometer[n] = 0;
            assignment.active[n] = subsets[0];
        }
        if (n == inst.N) break;
    }
    best.solver = "oracle";
    return best;
}

}  // namespace noma
