/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "noma/io.hpp"
#include "test_helpers.hpp"

using namespace noma;

TEST_CASE("instance json round trip") {
    std::mt19937_64 rng(137);
    const Instance inst = test::random_instance(rng, 4, 3, 2);
    const Instance back = instance_from_json(instance_to_json(inst));
    CHECK(back.K == inst.K);
    CHECK(back.N == inst.N);
    CHECK(back.M == inst.M);
    CHECK(back.subcarrier_bandwidth_hz == inst.subcarrier_bandwidth_hz);
    CHECK(back.total_power_w == inst.total_power_w);
    for (int k = 0; k < 4; ++k) {
        CHECK(back.weight[k] == inst.weight[k]);
        for (int n = 0; n < 3; ++n) {
            CHECK(back.gain[k][n] == inst.gain[k][n]);
            CHECK(back.noise[k][n] == inst.noise[k][n]);
        }
    }
}

TEST_CASE("instance file round trip") {
    std::mt19937_64 rng(139);
    const Instance inst = test::random_instance(rng, 3, 2, 2);
    const std::string path = "io_roundtrip_test.json";
    save_instance(inst, path);
    const Instance back = load_instance(path);
    CHECK(back.gain == inst.gain);
    std::remove(path.c_str());
}

TEST_CASE("malformed instances fail with the field name") {
    std::mt19937_64 rng(149);
    nlohmann::json j = instance_to_json(test::random_instance(rng, 3, 2, 2));

    SUBCASE("missing field") {
        j.erase("P_max");
        CHECK_THROWS_WITH_AS(instance_from_json(j), doctest::Contains("P_max"),
                             std::invalid_argument);
    }
    SUBCASE("wrong type") {
        j["K"] = "three";
        CHECK_THROWS_WITH_AS(instance_from_json(j), doctest::Contains("K"),
                             std::invalid_argument);
    }
    SUBCASE("inconsistent dimensions") {
        j["weights"] = std::vector<double>{1.0};
        CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
    }
}

TEST_CASE("solve report json carries rates and budgets") {
    std::mt19937_64 rng(151);
    const Instance inst = test::random_instance(rng, 3, 2, 2);
    const SolveReport rep = jspa(inst);
    const nlohmann::json j = solve_report_to_json(inst, rep);
    CHECK(j["solver"] == "jspa");
    CHECK(j["wsr_bit_per_s"].get<double>() == doctest::Approx(rep.wsr));
    CHECK(j["budgets"].size() == 2);
    CHECK(j["user_rates_bit_per_s"].size() == 3);
    CHECK(j["powers"].size() == 3);
    CHECK(j["converged"].get<bool>() == rep.converged);
    CHECK(j["ops"]["total"].get<std::uint64_t>() == rep.ops.total());
}

TEST_CASE("trace csv has the documented header") {
    std::mt19937_64 rng(157);
    const Instance inst = test::random_instance(rng, 3, 2, 2);
    SolverOptions opts;
    opts.record_trace = true;
    const SolveReport rep = jspa(inst, opts);
    const std::string csv = trace_to_csv(rep);
    CHECK(csv.rfind("iteration,n,budget,objective\n", 0) == 0);
    CHECK(csv.find('\n') != std::string::npos);
}

TEST_CASE("channel config json honours defaults and overrides") {
    nlohmann::json j;
    j["seed"] = 9;
    j["subcarriers"] = 4;
    const ChannelConfig cfg = channel_config_from_json(j);
    CHECK(cfg.seed == 9);
    CHECK(cfg.subcarriers == 4);
    CHECK(cfg.cell_radius_m == 250.0);  // default preserved
    CHECK(cfg.shadowing_sigma_db == 8.0);
}
