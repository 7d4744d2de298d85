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

#include <nscq/nsc_model.hpp>
#include <nscq/statevec.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace nscq::complexity {

/// constant * base^exponent, kept symbolic so callers can compare growth
/// laws as well as evaluate them.
struct ExpressionRecord {
    double constant = 1.0;
    double base = 1.0;
    double exponent = 0.0;
    std::string label;

    [[nodiscard]] double evaluate() const;
};

struct IterationCounts {
    std::uint64_t k_paper = 0;  // ceil((pi/4) sqrt(N/M))
    std::uint64_t k_exact = 0;  // argmax of sin^2((2k+1) theta) over the first lobe
                                //   (smallest k on ties)
};

/// Throws DomainError when M = 0 or M > N.
IterationCounts optimal_iterations(std::uint64_t search_space, std::uint64_t marked);

struct QueryComparison {
    ExpressionRecord quantum;    // C^(|V|/2)
    ExpressionRecord classical;  // C^|V|
    [[nodiscard]] double ratio() const { return classical.evaluate() / quantum.evaluate(); }
};

QueryComparison grover_query_count(int cycle_length, int num_nodes);

/// ceil((pi/4) sqrt(1/alpha)); alpha in (0, 1].
std::uint64_t robust_iterations(double alpha);

struct PolyIterations {
    std::uint64_t raw = 0;        // floor((pi/4) sqrt(p(N)/alpha0)), may be 0
    std::uint64_t practical = 0;  // max(1, raw)
};

PolyIterations poly_precision_iterations(double alpha0, double p_of_n);

/// Expected random draws to hit a feasible assignment: 1/alpha.
double classical_sampling_cost(double alpha);
/// Counting queries at accuracy delta/2: sqrt(2/alpha).
double counting_cost(double alpha);

struct QubitBreakdown {
    int node = 0;
    int delay = 0;
    int sum = 0;
    int pad = 0;
    int carry = 1;
    int flag = 1;
    int comparator_ancilla = 0;
    int total = 0;
};

/// n|V| + |A| + 3 floor(log2|A|) + 4, split by register.
QubitBreakdown qubit_count(int bits_per_node, int num_nodes, int num_arcs);

struct ResourceEstimate {
    QubitBreakdown qubits;
    std::size_t delay_gates = 0;
    std::size_t adder_gates = 0;
    std::size_t comparator_gates = 0;
    std::size_t oracle_gate_count = 0;       // one compute pass
    std::size_t oracle_depth = 0;            // one compute pass
    std::size_t phase_oracle_gate_count = 0; // compute, flip, uncompute
    std::size_t phase_oracle_depth = 0;
    std::size_t diffuser_depth = 0;
    std::size_t iteration_depth = 0;         // phase oracle followed by diffuser
    std::size_t iteration_multi_qubit_gates = 0;
    std::map<std::string, std::size_t> iteration_gates_by_kind;
    std::string oracle_complexity = "O(|A| log |A|)";
    std::string iteration_complexity = "O(|A| log |A| + n|V|)";
};

/// Circuit depth under as-soon-as-possible layering.
std::size_t circuit_depth(const sv::QuantumCircuit &circuit);

/// Exact counts from the gadget builders for this instance.
ResourceEstimate oracle_cost(const model::NscInstance &instance);

enum class Hardness { Constant, Polynomial, ExponentialBoundary, Exponential };

const char *hardness_name(Hardness h) noexcept;

struct RegimeReport {
    double beta = 0.0;
    ExpressionRecord quantum_iterations;  // sqrt(p(N)/alpha0) with p(N) = N^beta
    ExpressionRecord classical_samples;   // p(N)/alpha0
    ExpressionRecord speedup;
    Hardness hardness = Hardness::Constant;

    [[nodiscard]] bool exponential() const noexcept {
        return hardness == Hardness::Exponential || hardness == Hardness::ExponentialBoundary;
    }
};

/// Growth laws for p(N) = N^beta over N = C^|V|.
RegimeReport regime_classify(double beta, int cycle_length, int num_nodes, double alpha0);

} // namespace nscq::complexity
