/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_PF_HPP
#define NOMA_PF_HPP

#include <functional>
#include <vector>

#include "noma/multi_carrier.hpp"
#include "noma/types.hpp"

namespace noma {

// Proportional fair scheduler state over one frame. Weights are the
// reciprocal of the exponentially averaged rates.
struct SchedulerState {
    int t = 0;
    std::vector<double> avg_rate;  // bit/s, strictly positive
    std::vector<double> weights;   // 1 / avg_rate

    static SchedulerState init(std::span<const double> initial_rates, double floor_rate);
};

// Exponential averaging update: R_avg' = (1 - 1/T) R_avg + (1/T) R.
SchedulerState pf_update(const SchedulerState& state, std::span<const double> rates, int T);

// Proportional fairness index: mean natural log of the per-user mean rates.
// Throws std::domain_error if any mean rate is zero.
double fairness_index(std::span<const double> mean_rates);

struct FrameResult {
    std::vector<double> mean_rates;  // bit/s per user, averaged over the frame
    double fairness = 0.0;           // -inf when a user ends with zero mean rate
    double sum_rate = 0.0;
    bool all_converged = true;
    struct SlotRecord {
        int t;
        std::vector<double> rates, avg_rates, weights;
    };
    std::vector<SlotRecord> slots;
};

// One proportional fair frame of T slots on a fixed channel: average rates
// start at the floor (equal weights) and each slot re-solves with weights
// 1/avg_rate.
FrameResult run_frame(const Instance& inst,
                      const std::function<SolveReport(const Instance&)>& solver, int T = 20,
                      double init_floor_rate = 1e3);

}  // namespace noma

#endif
