/*
 * Copyright (c) 2026 noma-wsr contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * noma-wsr: solver front end and desk-scale experiment runner.
 */
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "noma/channel.hpp"
#include "noma/io.hpp"
#include "noma/model.hpp"
#include "noma/multi_carrier.hpp"
#include "noma/pf.hpp"

namespace {

constexpr const char* kVersion = "noma-wsr 0.1.0";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NOMA_WSR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("NOMA_WSR_SEED", "not a valid unsigned integer");
        }
    }
    return 1;
}

struct Stats {
    double mean = 0.0, ci95 = 0.0;
};

Stats summarize(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return s;
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    var /= static_cast<double>(xs.size() - 1);
    s.ci95 = 1.96 * std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

// Runs fn(seed_index) for every index in [0, count) on up to jobs threads.
// Results must be written by index so the output is order-independent.
void for_each_seed(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return out;
}

void write_header(std::ostream& out, const std::string& experiment, int seeds,
                  std::uint64_t seed, int N, double epsilon) {
    out << "# " << kVersion << "\n";
    out << "# experiment=" << experiment << " seeds=" << seeds << " base_seed=" << seed
        << " N=" << N << " epsilon=" << epsilon << "\n";
}

noma::SolveReport run_solver(const std::string& solver, const noma::Instance& inst,
                             const noma::SolverOptions& opts) {
    if (solver == "jspa") return noma::jspa(inst, opts);
    if (solver == "ftpc") return noma::ftpc(inst);
    if (solver == "mcpc") {
        const noma::DecodingOrder order = noma::decoding_order(inst);
        // Fixed assignment: all users on every subcarrier (requires M = K).
        noma::Instance full = inst;
        full.M = inst.K;
        return noma::mcpc(full, order,
                          noma::SubcarrierAssignment::all_users(inst.K, inst.N), opts);
    }
    if (solver == "oracle") {
        noma::OracleOptions opts2;
        opts2.epsilon = opts.epsilon;
        return noma::exhaustive_oracle(inst, opts2);
    }
    throw std::runtime_error("unknown solver: " + solver);
}

noma::SolveReport run_solver(const std::string& solver, const noma::Instance& inst,
                             double epsilon) {
    noma::SolverOptions opts;
    opts.epsilon = epsilon;
    return run_solver(solver, inst, opts);
}

int cmd_generate(int K, int N, int M, std::uint64_t seed, const std::string& out_path) {
    noma::ChannelConfig cfg;
    cfg.subcarriers = N;
    cfg.bandwidth_hz = 5e5 * N;
    cfg.max_multiplexed = M;
    cfg.seed = seed;
    const noma::Instance inst = noma::generate_instance(cfg, K);
    if (out_path.empty())
        std::cout << noma::instance_to_json(inst).dump(2) << "\n";
    else
        noma::save_instance(inst, out_path);
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& solver,
              std::optional<int> M, double epsilon, const std::string& trace_path) {
    noma::Instance inst = noma::load_instance(instance_path);
    if (M) {
        inst.M = *M;
        inst.validate();
    }
    noma::SolverOptions opts;
    opts.epsilon = epsilon;
    opts.record_trace = !trace_path.empty();
    const noma::SolveReport rep = run_solver(solver, inst, opts);
    nlohmann::json j = noma::solve_report_to_json(inst, rep);
    if (solver == "oracle") {
        // Also report the heuristic for the gap, as the oracle is the reference.
        const noma::SolveReport heur = noma::jspa(inst, opts);
        j["jspa_wsr_bit_per_s"] = heur.wsr;
        j["jspa_gap_relative"] = (rep.wsr - heur.wsr) / std::max(rep.wsr, 1e-300);
    }
    std::cout << j.dump(2) << "\n";
    if (!trace_path.empty()) {
        auto out = open_out(trace_path);
        out << noma::trace_to_csv(rep);
    }
    return rep.converged ? 0 : 2;
}

noma::Instance experiment_instance(int K, int N, int M, std::uint64_t seed,
                                   std::uint64_t substream) {
    noma::ChannelConfig cfg;
    cfg.subcarriers = N;
    cfg.bandwidth_hz = 5e5 * N;
    cfg.max_multiplexed = M;
    cfg.seed = seed;
    return noma::generate_instance(cfg, K, substream);
}

int cmd_experiment(const std::string& experiment, std::vector<int> Ks, std::vector<int> Ms,
                   int N, int seeds, double epsilon, std::uint64_t seed,
                   std::vector<std::string> solvers, const std::string& out_path,
                   int jobs) {
    auto out = open_out(out_path);
    write_header(out, experiment, seeds, seed, N, epsilon);
    std::mutex log_mutex;

    auto collect = [&](int K, int M, const std::function<double(int)>& metric) {
        std::vector<double> xs(seeds, std::nan(""));
        for_each_seed(seeds, jobs, [&](int s) {
            try {
                xs[s] = metric(s);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "seed " << s << " (K=" << K << ", M=" << M
                          << ") failed: " << e.what() << "\n";
            }
        });
        std::vector<double> ok;
        for (double x : xs)
            if (!std::isnan(x)) ok.push_back(x);
        return std::make_pair(summarize(ok), static_cast<int>(ok.size()));
    };

    if (experiment == "wsr-vs-k") {
        out << "K,M,solver,seeds,mean_wsr_bit_per_s,ci95\n";
        for (const std::string& solver : solvers) {
            for (int K : Ks) {
                for (int M : Ms) {
                    auto [st, n] = collect(K, M, [&](int s) {
                        const noma::Instance inst = experiment_instance(K, N, M, seed, s);
                        return run_solver(solver, inst, epsilon).wsr;
                    });
                    out << K << ',' << M << ',' << solver << ',' << n << ',' << st.mean
                        << ',' << st.ci95 << '\n';
                }
            }
        }
    } else if (experiment == "opcount-vs-k") {
        out << "K,M,solver,seeds,mean_ops,ci95\n";
        for (const std::string& solver : solvers) {
            for (int K : Ks) {
                for (int M : Ms) {
                    auto [st, n] = collect(K, M, [&](int s) {
                        const noma::Instance inst = experiment_instance(K, N, M, seed, s);
                        return static_cast<double>(
                            run_solver(solver, inst, epsilon).ops.total());
                    });
                    out << K << ',' << M << ',' << solver << ',' << n << ',' << st.mean
                        << ',' << st.ci95 << '\n';
                }
            }
        }
    } else if (experiment == "pf-frame") {
        out << "seed,solver,K,M,fairness_index,sum_rate_bit_per_s\n";
        const int K = Ks.front();
        const int M = Ms.front();
        struct Row {
            double fairness, sum_rate;
        };
        for (const std::string& solver : solvers) {
            std::vector<Row> rows(seeds, {std::nan(""), std::nan("")});
            for_each_seed(seeds, jobs, [&](int s) {
                try {
                    const noma::Instance inst = experiment_instance(K, N, M, seed, s);
                    const noma::FrameResult fr = noma::run_frame(
                        inst, [&](const noma::Instance& i) {
                            return run_solver(solver, i, epsilon);
                        });
                    rows[s] = {fr.fairness, fr.sum_rate};
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::cerr << "seed " << s << " failed: " << e.what() << "\n";
                }
            });
            for (int s = 0; s < seeds; ++s) {
                if (std::isnan(rows[s].sum_rate)) continue;
                out << s << ',' << solver << ',' << K << ',' << M << ','
                    << rows[s].fairness << ',' << rows[s].sum_rate << '\n';
            }
        }
    } else if (experiment == "oracle-gap") {
        out << "K,M,seeds,mean_ratio_jspa_over_oracle,ci95\n";
        for (int K : Ks) {
            if (K > 6) throw std::runtime_error("oracle-gap is capped at K <= 6");
            for (int M : Ms) {
                auto [st, n] = collect(K, M, [&](int s) {
                    const noma::Instance inst = experiment_instance(K, N, M, seed, s);
                    const double best = run_solver("oracle", inst, epsilon).wsr;
                    const double heur = run_solver("jspa", inst, epsilon).wsr;
                    return heur / best;
                });
                out << K << ',' << M << ',' << n << ',' << st.mean << ',' << st.ci95
                    << '\n';
            }
        }
    } else {
        throw std::runtime_error("unknown experiment: " + experiment);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint subcarrier and power allocation for downlink NOMA"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // generate --------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Write a random instance as JSON");
    int gen_K = 10, gen_N = 10, gen_M = 2;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--K", gen_K, "number of users")->check(CLI::Range(1, 64));
    gen->add_option("--N", gen_N, "number of subcarriers")->check(CLI::PositiveNumber);
    gen->add_option("--M", gen_M, "multiplexing limit")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "RNG seed (default: NOMA_WSR_SEED or 1)");
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    // solve -----------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Solve one instance and print JSON");
    std::string sol_instance, sol_solver = "jspa", sol_trace;
    double sol_eps = 1e-4;
    int sol_M = -1;
    solve->add_option("--instance", sol_instance, "instance JSON file")->required();
    solve->add_option("--solver", sol_solver, "jspa|mcpc|ftpc|oracle")
        ->check(CLI::IsMember({"jspa", "mcpc", "ftpc", "oracle"}));
    solve->add_option("--M", sol_M, "override the multiplexing limit");
    solve->add_option("--epsilon", sol_eps, "convergence threshold")
        ->check(CLI::PositiveNumber);
    solve->add_option("--trace", sol_trace, "write the budget iteration trace CSV here");

    // experiment ------------------------------------------------------------
    auto* exp = app.add_subcommand("experiment", "Run an experiment grid, write CSV");
    std::string exp_id, exp_out = "experiment.csv";
    std::vector<int> exp_K = {10}, exp_M = {2};
    int exp_N = 10, exp_seeds = 200, exp_jobs = 1;
    double exp_eps = 1e-4;
    std::uint64_t exp_seed = 0;
    std::vector<std::string> exp_solvers = {"jspa"};
    exp->add_option("experiment", exp_id, "wsr-vs-k|opcount-vs-k|pf-frame|oracle-gap")
        ->required()
        ->check(CLI::IsMember({"wsr-vs-k", "opcount-vs-k", "pf-frame", "oracle-gap"}));
    exp->add_option("--K", exp_K, "user counts")->delimiter(',')->check(CLI::Range(1, 64));
    exp->add_option("--M", exp_M, "multiplexing limits")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    exp->add_option("--N", exp_N, "subcarriers")->check(CLI::PositiveNumber);
    exp->add_option("--seeds", exp_seeds, "number of seeds")->check(CLI::PositiveNumber);
    exp->add_option("--epsilon", exp_eps, "convergence threshold")
        ->check(CLI::PositiveNumber);
    exp->add_option("--seed", exp_seed, "base seed (default: NOMA_WSR_SEED or 1)");
    exp->add_option("--solver", exp_solvers, "solvers to compare")->delimiter(',');
    exp->add_option("--out", exp_out, "output CSV path");
    exp->add_option("--jobs", exp_jobs, "seed-level parallelism")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen->count("--seed") == 0) gen_seed = default_seed();
            return cmd_generate(gen_K, gen_N, gen_M, gen_seed, gen_out);
        }
        if (solve->parsed()) {
            std::optional<int> M;
            if (solve->count("--M")) M = sol_M;
            return cmd_solve(sol_instance, sol_solver, M, sol_eps, sol_trace);
        }
        if (exp->parsed()) {
            if (exp->count("--seed") == 0) exp_seed = default_seed();
            return cmd_experiment(exp_id, exp_K, exp_M, exp_N, exp_seeds, exp_eps,
                                  exp_seed, exp_solvers, exp_out, exp_jobs);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
