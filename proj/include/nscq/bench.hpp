// Copyright 2026 The nscq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <nscq/grover.hpp>
#include <nscq/metrics.hpp>
#include <nscq/nsc_model.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nscq::bench {

/// Options shared by single runs and sweep cells.
struct RunOptions {
    grover::Backend backend = grover::Backend::Fast;
    int iterations = 1;
    bool sample = false;          // also draw `shots` measurements
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;       // sampling / trajectory seed
    double noise_rate = 0.0;
    int trajectories = 100;
};

/// One line of sweep output.
struct SweepRow {
    int n = 0;
    std::uint64_t threshold = 0;
    int iterations = 0;
    std::uint64_t seed = 0;  // instance seed
    std::uint64_t search_space = 0;
    std::optional<std::uint64_t> feasible_count;
    std::optional<std::uint64_t> k_paper;
    std::optional<std::uint64_t> k_exact;
    std::optional<double> success;
    std::optional<double> baseline;
    std::optional<double> ratio;
    std::optional<double> sampled_success;
    grover::Backend backend = grover::Backend::Fast;
    std::uint64_t shots = 0;  // 0 when sampling is off
    double noise_rate = 0.0;
    std::string status = "ok";  // "ok" or "skipped:<reason>"
    double wall_time = 0.0;     // seconds; never part of the stable output
};

/// Runs one (instance, K, k) cell. Capacity problems become a skipped row
/// instead of an exception.
SweepRow evaluate_cell(const model::NscInstance &instance, const RunOptions &options);

struct SweepConfig {
    std::vector<int> nodes{4, 5, 6, 7, 8, 9, 10};
    std::vector<std::uint64_t> thresholds{1, 2};
    std::vector<int> iterations{1, 2};
    int seeds_per_size = 1;
    std::uint64_t master_seed = 0;
    RunOptions run;
    int workers = 0;  // 0: one per hardware thread

    /// Throws DomainError for empty ranges or invalid values.
    void validate() const;
};

/// Seed of the `replicate`-th instance with `n` nodes under `master`.
std::uint64_t instance_seed(std::uint64_t master, int n, int replicate);

/// One row per (n, replicate, K, k), ordered by that nesting regardless of
/// which worker finished first. Every (n, replicate) pair shares one graph.
std::vector<SweepRow> run_sweep(const SweepConfig &config);

/// Header: n,K,k,seed,N,M,k_paper,k_exact,success,baseline,ratio,backend,
/// shots,noise_rate,status,sampled_success[,wall_time]
std::string to_csv(const std::vector<SweepRow> &rows, bool include_wall_time = false);
std::string to_json(const std::vector<SweepRow> &rows, bool include_wall_time = false);
/// Success vs n, one polyline per (K, k) averaged over seeds, with the mean
/// baseline drawn dashed.
std::string to_svg(const std::vector<SweepRow> &rows);

/// Seeded binary instances with n cycling through [min_nodes, max_nodes]
/// and K alternating between 1 and 2.
std::vector<model::NscInstance> make_ensemble(int count, std::uint64_t master_seed,
                                              int min_nodes = 4, int max_nodes = 6);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyConfig {
    int instances = 30;
    std::uint64_t seed = 2024;
    int max_nodes = 6;
    int max_iterations = 10;  // amplification-law range 0..max_iterations
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::string to_text() const;
};

/// Per-basis oracle replay against kappa (flag, delay and sum registers).
CheckResult check_oracle_equivalence(const std::vector<model::NscInstance> &ensemble);
/// Dense oracle on the uniform input: ancilla leakage < 1e-12 and phase
/// (-1)^kappa on each node basis state.
CheckResult check_uncomputation(const std::vector<model::NscInstance> &ensemble);
/// Gate vs fast node distributions within 1e-10 for k in {1, 2}.
CheckResult check_backend_agreement(const std::vector<model::NscInstance> &ensemble);
/// Both noiseless backends against sin^2((2k+1) theta) within 1e-9.
CheckResult check_amplification_law(const std::vector<model::NscInstance> &ensemble,
                                    int max_iterations);

VerifyReport run_verification(const VerifyConfig &config);

} // namespace nscq::bench
