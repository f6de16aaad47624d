/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "noma/pf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "noma/model.hpp"

namespace noma {

SchedulerState SchedulerState::init(std::span<const double> initial_rates, double floor_rate) {
    SchedulerState s;
    s.t = 0;
    s.avg_rate.assign(initial_rates.begin(), initial_rates.end());
    s.weights.resize(s.avg_rate.size());
    for (std::size_t k = 0; k < s.avg_rate.size(); ++k) {
        s.avg_rate[k] = std::max(s.avg_rate[k], floor_rate);
        s.weights[k] = 1.0 / s.avg_rate[k];
    }
    return s;
}

SchedulerState pf_update(const SchedulerState& state, std::span<const double> rates, int T) {
    if (T < 1) throw std::invalid_argument("T must be >= 1");
    if (rates.size() != state.avg_rate.size())
        throw std::invalid_argument("rates size mismatch");
    SchedulerState next = state;
    next.t = state.t + 1;
    for (std::size_t k = 0; k < rates.size(); ++k) {
        if (rates[k] < 0.0) throw std::invalid_argument("rates must be non-negative");
        next.avg_rate[k] = (1.0 - 1.0 / T) * state.avg_rate[k] + rates[k] / T;
        next.weights[k] = 1.0 / next.avg_rate[k];
    }
    return next;
}

double fairness_index(std::span<const double> mean_rates) {
    double total = 0.0;
    for (double r : mean_rates) {
        if (r <= 0.0) throw std::domain_error("fairness index undefined for zero mean rate");
        total += std::log(r);
    }
    return total / static_cast<double>(mean_rates.size());
}

FrameResult run_frame(const Instance& inst,
                      const std::function<SolveReport(const Instance&)>& solver, int T,
                      double init_floor_rate) {
    Instance work = inst;
    const DecodingOrder order = decoding_order(inst);

    auto per_user_rates = [&](const SolveReport& rep) {
        std::vector<double> rates(inst.K, 0.0);
        std::vector<double> p_n(inst.K);
        for (int n = 0; n < inst.N; ++n) {
            for (int k = 0; k < inst.K; ++k) p_n[k] = rep.powers.p[k][n];
            for (int k = 0; k < inst.K; ++k)
                rates[k] += user_rate(work, order, n, p_n, k);
        }
        return rates;
    };

    FrameResult res;

    // Every user starts at the floor rate (equal weights): nobody enters the
    // frame with a head start, so unserved users out-weigh served ones from
    // the first update onwards.
    SchedulerState state = SchedulerState::init(std::vector<double>(inst.K, init_floor_rate),
                                                init_floor_rate);

    res.mean_rates.assign(inst.K, 0.0);
    for (int t = 1; t <= T; ++t) {
        work.weight = state.weights;
        SolveReport rep = solver(work);
        res.all_converged = res.all_converged && rep.converged;
        const std::vector<double> rates = per_user_rates(rep);
        for (int k = 0; k < inst.K; ++k) res.mean_rates[k] += rates[k] / T;
        res.slots.push_back({t, rates, state.avg_rate, state.weights});
        state = pf_update(state, rates, T);
    }

    res.sum_rate = 0.0;
    bool any_zero = false;
    for (double r : res.mean_rates) {
        res.sum_rate += r;
        any_zero = any_zero || r <= 0.0;
    }
    res.fairness = any_zero ? -std::numeric_limits<double>::infinity()
                            : fairness_index(res.mean_rates);
    return res;
}

}  // namespace noma
