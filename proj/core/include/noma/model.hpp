/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef NOMA_MODEL_HPP
#define NOMA_MODEL_HPP

#include <span>
#include <vector>

#include "noma/types.hpp"

namespace noma {

// Normalized noise power eta_k^n / g_k^n of user k on subcarrier n.
double normalized_noise(const Instance& inst, int k, int n);

// SIC decoding order: per subcarrier, users sorted by normalized noise
// descending; ties broken by ascending user index (deterministic).
DecodingOrder decoding_order(const Instance& inst);

// Shannon rate of user k on subcarrier n under SIC, bit/s. Interference
// comes only from users decoded after k. Zero power yields zero rate.
double user_rate(const Instance& inst, const DecodingOrder& order, int n,
                 std::span<const double> p_n, int k);

// Objective of the allocation problem: sum_k w_k sum_n R_k^n, bit/s.
double weighted_sum_rate(const Instance& inst, const DecodingOrder& order,
                         const PowerMatrix& powers);

// Change of variables between per-user powers and cumulative tails.
// The inverse rejects tail vectors that are not non-increasing.
TailVector tails_from_powers(const DecodingOrder& order, const PowerMatrix& powers);
PowerMatrix powers_from_tails(const DecodingOrder& order, const TailVector& tails);

// Parameters of one subcarrier arranged along its decoding order, so that
// noise_norm is non-increasing. Position p refers to the p-th decoded user.
struct SingleCarrierView {
    double bandwidth_hz = 0.0;
    std::vector<double> weight;      // weight[p] = w of p-th decoded user
    std::vector<double> noise_norm;  // non-increasing
    std::vector<int> user;           // original user index per position

    int size() const { return static_cast<int>(weight.size()); }

    static SingleCarrierView of(const Instance& inst, const DecodingOrder& order, int n);

    // Sub-view keeping only the given positions (0-based, strictly ascending).
    SingleCarrierView restricted(std::span<const int> positions) const;
};

// Value of the separable objective term for the segment of positions [j, i]
// (0-based, j <= i) when all tails on the segment equal x >= 0. Computed as a
// difference of weighted logs to avoid overflow of (x + eta)^w.
double f_segment(const SingleCarrierView& sc, int j, int i, double x);

// Derivative of f_segment with respect to x.
double f_segment_deriv(const SingleCarrierView& sc, int j, int i, double x);

// Constant dropped when passing to the separable objective:
// weighted_sum_rate == sum of f terms + objective_offset.
double objective_offset(const Instance& inst, const DecodingOrder& order);

// Sum of all per-subcarrier separable terms at the given tails (termwise).
double separable_objective(const Instance& inst, const DecodingOrder& order,
                           const TailVector& tails);

}  // namespace noma

#endif
