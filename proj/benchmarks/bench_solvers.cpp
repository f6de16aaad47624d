/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <benchmark/benchmark.h>

#include "noma/channel.hpp"
#include "noma/model.hpp"
#include "noma/multi_carrier.hpp"
#include "noma/single_carrier.hpp"

namespace {

noma::Instance make_instance(int K, int N, int M, std::uint64_t substream) {
    noma::ChannelConfig cfg;
    cfg.subcarriers = N;
    cfg.bandwidth_hz = 5e5 * N;
    cfg.max_multiplexed = M;
    cfg.seed = 7;
    return noma::generate_instance(cfg, K, substream);
}

void BM_scus(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int M = static_cast<int>(state.range(1));
    const noma::Instance inst = make_instance(K, 1, M, 0);
    const noma::SingleCarrierView sc =
        noma::SingleCarrierView::of(inst, noma::decoding_order(inst), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(noma::scus(sc, inst.total_power_w, M).value);
}
BENCHMARK(BM_scus)->Args({10, 2})->Args({20, 2})->Args({40, 2})->Args({20, 4});

void BM_scpc(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const noma::Instance inst = make_instance(K, 1, K, 0);
    const noma::SingleCarrierView sc =
        noma::SingleCarrierView::of(inst, noma::decoding_order(inst), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(noma::scpc(sc, inst.total_power_w).front());
}
BENCHMARK(BM_scpc)->Arg(10)->Arg(40);

void BM_jspa(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int M = static_cast<int>(state.range(1));
    const noma::Instance inst = make_instance(K, 10, M, 0);
    for (auto _ : state) benchmark::DoNotOptimize(noma::jspa(inst).wsr);
}
BENCHMARK(BM_jspa)->Args({10, 2})->Args({30, 2})->Args({10, 3});

void BM_mcpc(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    noma::Instance inst = make_instance(K, 10, K, 0);
    const noma::DecodingOrder order = noma::decoding_order(inst);
    const noma::SubcarrierAssignment assign =
        noma::SubcarrierAssignment::all_users(K, 10);
    for (auto _ : state) benchmark::DoNotOptimize(noma::mcpc(inst, order, assign).wsr);
}
BENCHMARK(BM_mcpc)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
