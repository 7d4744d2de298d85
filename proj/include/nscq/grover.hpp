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

#include <nscq/gadgets.hpp>
#include <nscq/metrics.hpp>
#include <nscq/nsc_model.hpp>
#include <nscq/statevec.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace nscq::grover {

using sv::QuantumCircuit;

/// Engines refuse more Grover iterations than this; use analytic_success.
inline constexpr int kMaxIterations = 64;

/// The three compute stages of the oracle, before the phase flip.
struct OracleStages {
    QuantumCircuit delays;   // per-arc delay loads
    QuantumCircuit adders;   // sequential sum of all delay registers
    QuantumCircuit compare;  // flag ^= [sum <= K]
};

OracleStages build_oracle_stages(const model::NscInstance &instance,
                                 const gadgets::RegisterLayout &layout);

/// compute stages, Z on the flag, then the stages inverted in reverse order.
/// On |mu>|0...0> the net effect is (-1)^kappa(mu) with all ancillas back at 0.
QuantumCircuit build_oracle(const model::NscInstance &instance,
                            const gadgets::RegisterLayout &layout);

enum class Backend { Gate, Fast, Noisy };

const char *backend_name(Backend backend) noexcept;

struct SearchOutcome {
    Backend backend = Backend::Fast;
    int iterations = 0;
    std::uint64_t search_space = 0;            // N
    std::vector<std::uint64_t> marked;         // encoded feasible assignments
    std::vector<double> node_distribution;     // exact (or trajectory mean)
    double success_probability = 0.0;
    double baseline = 0.0;
    std::optional<double> ratio;

    std::uint64_t shots = 0;  // 0: sampling was not requested
    std::uint64_t seed = 0;
    std::optional<sv::Counts> counts;
    std::optional<double> sampled_success;

    double noise_rate = 0.0;
    int trajectories = 0;
};

/// Dense simulation of the full register (node, delay, sum, flag, ...).
/// Requires C to be a power of two and the layout to fit kMaxQubits.
SearchOutcome grover_search_gate_level(const model::NscInstance &instance, int iterations,
                                       std::uint64_t shots = 0, std::uint64_t seed = 0);

/// Success probability after each of k = 0..max_iterations gate-level
/// Grover steps, from a single dense run.
std::vector<double> gate_level_success_trace(const model::NscInstance &instance,
                                             int max_iterations);

/// Node-space simulation with the phase flip taken from classical kappa.
SearchOutcome grover_search_fast(const model::NscInstance &instance, int iterations,
                                 std::uint64_t shots = 0, std::uint64_t seed = 0);

/// Gate-level search under the Pauli trajectory noise model; the reported
/// distribution is the mean over `trajectories` runs.
SearchOutcome grover_search_noisy(const model::NscInstance &instance, int iterations,
                                  double noise_rate, int trajectories, std::uint64_t seed,
                                  std::uint64_t shots = 0);

/// sin^2((2k+1) asin(sqrt(M/N))); 0 when M = 0.
double analytic_success(std::uint64_t search_space, std::uint64_t marked, int iterations);

inline constexpr int kMaxCountingQubits = 12;

struct CountEstimate {
    double m_hat = 0.0;
    int counting_qubits = 0;
    std::uint64_t outcome = 0;     // most frequent counting-register value
    double error_bound = 0.0;
    std::uint64_t search_space = 0;
    std::uint64_t shots = 0;
    sv::Counts counts;
};

/// 2 pi sqrt(M (N - M)) / 2^t + pi^2 N / 4^t: the additive error of a phase
/// estimate that lands within one grid step of the true eigenphase.
double counting_error_bound(std::uint64_t search_space, double marked, int counting_qubits);

/// Phase estimation of the Grover operator with `counting_qubits` qubits
/// controlling G^(2^j), simulated over the node space.
CountEstimate quantum_count(const model::NscInstance &instance, int counting_qubits,
                            std::uint64_t shots, std::uint64_t seed);

struct QuantumDecision {
    model::Verdict verdict = model::Verdict::Inconclusive;
    CountEstimate estimate;
    std::uint64_t delta = 0;
    double margin = 0.0;  // m_hat - delta
};

/// Holds iff m_hat >= delta; inconclusive when |m_hat - delta| does not
/// exceed the error bound.
QuantumDecision robust_decision_quantum(const model::NscInstance &instance,
                                        const model::RobustParams &params, int counting_qubits,
                                        std::uint64_t shots, std::uint64_t seed);

} // namespace nscq::grover
