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

#include <nscq/complexity.hpp>

#include <nscq/error.hpp>
#include <nscq/gadgets.hpp>
#include <nscq/grover.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace nscq::complexity {

double ExpressionRecord::evaluate() const { return constant * std::pow(base, exponent); }

IterationCounts optimal_iterations(std::uint64_t search_space, std::uint64_t marked) {
    if (marked == 0) {
        throw DomainError("optimal iterations undefined for M = 0");
    }
    if (marked > search_space) {
        throw DomainError("M exceeds N");
    }
    IterationCounts k;
    const double ratio = static_cast<double>(search_space) / static_cast<double>(marked);
    k.k_paper = static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(ratio)));

    // argmax over the first amplification lobe, k <= floor(pi/(4 theta) - 1/2) + 1
    const double theta = std::asin(std::sqrt(1.0 / ratio));
    const double peak = std::numbers::pi / (4.0 * theta) - 0.5;
    const auto last = static_cast<std::uint64_t>(std::max(0.0, std::floor(peak))) + 1;
    double best = -1.0;
    for (std::uint64_t k_try = 0; k_try <= last; ++k_try) {
        const double s = std::sin((2.0 * static_cast<double>(k_try) + 1.0) * theta);
        const double p = s * s;
        if (p > best + 1e-12) {
            best = p;
            k.k_exact = k_try;
        }
    }
    return k;
}

QueryComparison grover_query_count(int cycle_length, int num_nodes) {
    if (cycle_length < 2 || num_nodes < 1) {
        throw DomainError("query count needs C >= 2 and |V| >= 1");
    }
    QueryComparison q;
    const double c = cycle_length;
    q.quantum = {1.0, c, num_nodes / 2.0, "C^(|V|/2)"};
    q.classical = {1.0, c, static_cast<double>(num_nodes), "C^|V|"};
    return q;
}

std::uint64_t robust_iterations(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(1.0 / alpha)));
}

PolyIterations poly_precision_iterations(double alpha0, double p_of_n) {
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
        throw DomainError("alpha0 must lie in (0, 1]");
    }
    if (!(p_of_n >= 1.0) || !std::isfinite(p_of_n)) {
        throw DomainError("p(N) must be a finite value >= 1");
    }
    PolyIterations it;
    it.raw = static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(p_of_n / alpha0)));
    it.practical = std::max<std::uint64_t>(1, it.raw);
    return it;
}

double classical_sampling_cost(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    return 1.0 / alpha;
}

double counting_cost(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    return std::sqrt(2.0 / alpha);
}

QubitBreakdown qubit_count(int bits_per_node, int num_nodes, int num_arcs) {
    if (bits_per_node < 1 || num_nodes < 2 || num_arcs < 1) {
        throw DomainError("qubit count needs n >= 1, |V| >= 2, |A| >= 1");
    }
    const int eps = static_cast<int>(std::bit_width(static_cast<unsigned>(num_arcs)));
    QubitBreakdown q;
    q.node = bits_per_node * num_nodes;
    q.delay = num_arcs;
    q.sum = eps;
    q.pad = eps;
    q.comparator_ancilla = eps - 1;
    q.total = q.node + q.delay + q.sum + q.pad + q.carry + q.flag + q.comparator_ancilla;
    return q;
}

std::size_t circuit_depth(const sv::QuantumCircuit &circuit) {
    std::vector<std::size_t> level(static_cast<std::size_t>(circuit.num_qubits()), 0);
    std::size_t depth = 0;
    for (const auto &g : circuit.gates()) {
        std::size_t at = 0;
        for (auto q : g.controls) {
            at = std::max(at, level[static_cast<std::size_t>(q)]);
        }
        for (auto q : g.targets) {
            at = std::max(at, level[static_cast<std::size_t>(q)]);
        }
        ++at;
        for (auto q : g.controls) {
            level[static_cast<std::size_t>(q)] = at;
        }
        for (auto q : g.targets) {
            level[static_cast<std::size_t>(q)] = at;
        }
        depth = std::max(depth, at);
    }
    return depth;
}

ResourceEstimate oracle_cost(const model::NscInstance &instance) {
    const auto layout = gadgets::layout(instance);
    const auto stages = grover::build_oracle_stages(instance, layout);

    ResourceEstimate r;
    r.qubits.node = static_cast<int>(layout.node_qubits().size());
    r.qubits.delay = layout.delay_width * static_cast<int>(layout.delay_regs.size());
    r.qubits.sum = layout.sum_reg.width;
    r.qubits.pad = layout.pad_reg.width;
    r.qubits.comparator_ancilla = layout.cmp_ancilla.width;
    r.qubits.total = layout.total_qubits;

    r.delay_gates = stages.delays.size();
    r.adder_gates = stages.adders.size();
    r.comparator_gates = stages.compare.size();

    sv::QuantumCircuit compute(layout.total_qubits);
    compute.append(stages.delays).append(stages.adders).append(stages.compare);
    r.oracle_gate_count = compute.size();
    r.oracle_depth = circuit_depth(compute);

    const auto oracle = grover::build_oracle(instance, layout);
    r.phase_oracle_gate_count = oracle.size();
    r.phase_oracle_depth = circuit_depth(oracle);

    const auto diff = gadgets::diffuser(layout.node_qubits(), layout.total_qubits);
    r.diffuser_depth = circuit_depth(diff);

    sv::QuantumCircuit iteration = oracle;
    iteration.append(diff);
    r.iteration_depth = circuit_depth(iteration);
    for (const auto &g : iteration.gates()) {
        ++r.iteration_gates_by_kind[sv::gate_name(g.kind)];
        if (g.arity() >= 2) {
            ++r.iteration_multi_qubit_gates;
        }
    }
    return r;
}

const char *hardness_name(Hardness h) noexcept {
    switch (h) {
    case Hardness::Constant: return "constant";
    case Hardness::Polynomial: return "polynomial";
    case Hardness::ExponentialBoundary: return "exponential-boundary";
    case Hardness::Exponential: return "exponential";
    }
    return "?";
}

RegimeReport regime_classify(double beta, int cycle_length, int num_nodes, double alpha0) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be a finite value >= 0");
    }
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
        throw DomainError("alpha0 must lie in (0, 1]");
    }
    if (cycle_length < 2 || num_nodes < 1) {
        throw DomainError("regime needs C >= 2 and |V| >= 1");
    }
    RegimeReport r;
    r.beta = beta;
    const double c = cycle_length;
    const double v = num_nodes;
    r.quantum_iterations = {std::sqrt(1.0 / alpha0), c, beta * v / 2.0, "N^(beta/2)"};
    r.classical_samples = {1.0 / alpha0, c, beta * v, "N^beta"};
    r.speedup = {std::sqrt(1.0 / alpha0), c, beta * v / 2.0, "N^(beta/2)"};
    if (beta == 0.0) {
        r.hardness = Hardness::Constant;
    } else if (beta < 1.0) {
        r.hardness = Hardness::Polynomial;
    } else if (beta == 1.0) {
        r.hardness = Hardness::ExponentialBoundary;
    } else {
        r.hardness = Hardness::Exponential;
    }
    return r;
}

} // namespace nscq::complexity
