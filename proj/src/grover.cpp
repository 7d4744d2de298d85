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

#include <nscq/grover.hpp>

#include <nscq/error.hpp>
#include <nscq/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nscq::grover {

using gadgets::RegisterLayout;
using model::NscInstance;

OracleStages build_oracle_stages(const NscInstance &instance, const RegisterLayout &layout) {
    const int width = layout.total_qubits;
    OracleStages s{QuantumCircuit(width), QuantumCircuit(width), QuantumCircuit(width)};
    for (std::size_t a = 0; a < instance.num_arcs(); ++a) {
        s.delays.append(gadgets::delay_oracle_for_edge(instance, a, layout));
    }
    const auto sum = layout.sum_reg.qubits();
    for (const auto &reg : layout.delay_regs) {
        s.adders.append(gadgets::add_into_sum(reg.qubits(), sum, layout.carry, width));
    }
    // a threshold at or above the largest representable sum is always met
    const std::uint64_t top = (std::uint64_t{1} << layout.sum_reg.width) - 1;
    const gadgets::ComparatorSpec spec{std::min(instance.threshold, top), layout.sum_reg.width};
    s.compare = gadgets::comparator_leq(sum, spec, layout.flag, layout.cmp_ancilla.qubits(), width);
    return s;
}

QuantumCircuit build_oracle(const NscInstance &instance, const RegisterLayout &layout) {
    const auto s = build_oracle_stages(instance, layout);
    QuantumCircuit oracle(layout.total_qubits);
    oracle.append(s.delays).append(s.adders).append(s.compare);
    oracle.append(sv::GateOp::z(layout.flag));
    oracle.append(sv::invert(s.compare)).append(sv::invert(s.adders)).append(sv::invert(s.delays));
    return oracle;
}

const char *backend_name(Backend backend) noexcept {
    switch (backend) {
    case Backend::Gate: return "gate";
    case Backend::Fast: return "fast";
    case Backend::Noisy: return "noisy";
    }
    return "?";
}

double analytic_success(std::uint64_t search_space, std::uint64_t marked, int iterations) {
    if (search_space == 0 || marked > search_space) {
        throw DomainError("analytic_success needs 0 <= M <= N and N >= 1");
    }
    if (iterations < 0) {
        throw DomainError("iteration count must be nonnegative");
    }
    if (marked == 0) {
        return 0.0;
    }
    if (iterations == 0) {
        return static_cast<double>(marked) / static_cast<double>(search_space);
    }
    const double theta =
        std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(search_space)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

namespace {

void check_iterations(int iterations) {
    if (iterations < 0 || iterations > kMaxIterations) {
        throw DomainError("iteration count " + std::to_string(iterations) +
                          " outside [0, " + std::to_string(kMaxIterations) +
                          "]; use analytic_success beyond that");
    }
}

RegisterLayout dense_layout(const NscInstance &instance) {
    const int c = instance.cycle_length;
    if ((c & (c - 1)) != 0) {
        throw DomainError("gate-level backend needs the cycle length to be a power of two, "
                          "got " + std::to_string(c));
    }
    auto l = gadgets::layout(instance);
    if (l.total_qubits > sv::kMaxQubits) {
        throw CapacityError("gate-level backend: instance needs " +
                            std::to_string(l.total_qubits) + " qubits, limit is " +
                            std::to_string(sv::kMaxQubits));
    }
    return l;
}

QuantumCircuit iteration_circuit(const NscInstance &instance, const RegisterLayout &layout) {
    const auto nodes = layout.node_qubits();
    QuantumCircuit c = build_oracle(instance, layout);
    c.append(gadgets::diffuser(nodes, layout.total_qubits));
    return c;
}

void finish(SearchOutcome &out, std::uint64_t shots, std::uint64_t seed) {
    const auto m = bench::success_metrics(out.node_distribution, out.marked);
    out.success_probability = m.success;
    out.baseline = m.baseline;
    out.ratio = m.ratio;
    out.shots = shots;
    out.seed = seed;
    if (shots > 0) {
        out.counts = sv::sample_distribution(out.node_distribution, shots,
                                             derive_seed(seed, 0x73686f7473ULL));
        std::uint64_t hits = 0;
        for (auto idx : out.marked) {
            if (auto it = out.counts->find(idx); it != out.counts->end()) {
                hits += it->second;
            }
        }
        out.sampled_success = static_cast<double>(hits) / static_cast<double>(shots);
    }
}

} // namespace

SearchOutcome grover_search_gate_level(const NscInstance &instance, int iterations,
                                       std::uint64_t shots, std::uint64_t seed) {
    check_iterations(iterations);
    const auto layout = dense_layout(instance);
    const auto nodes = layout.node_qubits();

    SearchOutcome out;
    out.backend = Backend::Gate;
    out.iterations = iterations;
    out.search_space = instance.search_space_size();
    out.marked = model::feasible_set(instance).members;

    sv::StateVector state(layout.total_qubits);
    sv::run_circuit(state, gadgets::hadamard_layer(nodes, layout.total_qubits));
    if (iterations > 0) {
        const auto step = iteration_circuit(instance, layout);
        for (int k = 0; k < iterations; ++k) {
            sv::run_circuit(state, step);
        }
    }
    out.node_distribution = sv::probabilities(state, nodes);
    finish(out, shots, seed);
    return out;
}

std::vector<double> gate_level_success_trace(const NscInstance &instance, int max_iterations) {
    check_iterations(max_iterations);
    const auto layout = dense_layout(instance);
    const auto nodes = layout.node_qubits();
    const auto marked = model::feasible_set(instance).members;

    sv::StateVector state(layout.total_qubits);
    sv::run_circuit(state, gadgets::hadamard_layer(nodes, layout.total_qubits));
    const auto step = iteration_circuit(instance, layout);
    std::vector<double> trace;
    for (int k = 0;; ++k) {
        const auto dist = sv::probabilities(state, nodes);
        trace.push_back(bench::success_metrics(dist, marked).success);
        if (k == max_iterations) {
            break;
        }
        sv::run_circuit(state, step);
    }
    return trace;
}

SearchOutcome grover_search_noisy(const NscInstance &instance, int iterations,
                                  double noise_rate, int trajectories, std::uint64_t seed,
                                  std::uint64_t shots) {
    check_iterations(iterations);
    if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) {
        throw DomainError("noise_rate must lie in [0, 1]");
    }
    if (trajectories < 1) {
        throw DomainError("trajectories must be at least 1");
    }
    const auto layout = dense_layout(instance);
    const auto nodes = layout.node_qubits();

    SearchOutcome out;
    out.backend = Backend::Noisy;
    out.iterations = iterations;
    out.search_space = instance.search_space_size();
    out.marked = model::feasible_set(instance).members;
    out.noise_rate = noise_rate;
    out.trajectories = trajectories;

    QuantumCircuit circuit = gadgets::hadamard_layer(nodes, layout.total_qubits);
    if (iterations > 0) {
        const auto step = iteration_circuit(instance, layout);
        for (int k = 0; k < iterations; ++k) {
            circuit.append(step);
        }
    }
    std::vector<double> mean(std::size_t{1} << nodes.size(), 0.0);
    sv::StateVector state(layout.total_qubits);
    for (int t = 0; t < trajectories; ++t) {
        auto amps = state.amplitudes();
        std::fill(amps.begin(), amps.end(), sv::Complex{0.0, 0.0});
        amps[0] = 1.0;
        sv::run_noisy_trajectory(state, circuit, noise_rate,
                                 derive_seed(seed, static_cast<std::uint64_t>(t)));
        const auto dist = sv::probabilities(state, nodes);
        for (std::size_t i = 0; i < mean.size(); ++i) {
            mean[i] += dist[i];
        }
    }
    for (auto &p : mean) {
        p /= trajectories;
    }
    out.node_distribution = std::move(mean);
    finish(out, shots, seed);
    return out;
}

namespace {

std::uint64_t fast_search_space(const NscInstance &instance) {
    const auto n = instance.search_space_size();
    if (n > model::kEnumerationCap) {
        throw CapacityError("fast backend is capped at 2^24 assignments, instance has " +
                            std::to_string(n));
    }
    return n;
}

/// One Grover step on real node-space amplitudes: phase flip on marked
/// entries, then the reflection 2|u><u| - I.
template <typename T>
void grover_step(std::span<T> amps, const std::vector<bool> &marked) {
    T sum{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (marked[i]) {
            amps[i] = -amps[i];
        }
        sum += amps[i];
    }
    const T twice_mean = sum * (2.0 / static_cast<double>(amps.size()));
    for (auto &a : amps) {
        a = twice_mean - a;
    }
}

} // namespace

SearchOutcome grover_search_fast(const NscInstance &instance, int iterations,
                                 std::uint64_t shots, std::uint64_t seed) {
    check_iterations(iterations);
    const auto n = fast_search_space(instance);
    const auto mask = model::feasibility_mask(instance);

    SearchOutcome out;
    out.backend = Backend::Fast;
    out.iterations = iterations;
    out.search_space = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (mask[i]) {
            out.marked.push_back(i);
        }
    }
    std::vector<double> amps(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int k = 0; k < iterations; ++k) {
        grover_step(std::span<double>(amps), mask);
    }
    out.node_distribution.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.node_distribution[i] = amps[i] * amps[i];
    }
    finish(out, shots, seed);
    return out;
}

double counting_error_bound(std::uint64_t search_space, double marked, int counting_qubits) {
    const double n = static_cast<double>(search_space);
    const double m = std::clamp(marked, 0.0, n);
    const double grid = std::ldexp(1.0, counting_qubits);
    return 2.0 * std::numbers::pi * std::sqrt(m * (n - m)) / grid +
           std::numbers::pi * std::numbers::pi * n / (grid * grid);
}

CountEstimate quantum_count(const NscInstance &instance, int counting_qubits,
                            std::uint64_t shots, std::uint64_t seed) {
    if (counting_qubits < 1 || counting_qubits > kMaxCountingQubits) {
        throw DomainError("counting qubits must lie in [1, " +
                          std::to_string(kMaxCountingQubits) + "]");
    }
    const auto n = fast_search_space(instance);
    const auto mask = model::feasibility_mask(instance);
    const int t = counting_qubits;
    const int node_bits = gadgets::bits_for(n - 1);
    if (node_bits + t > sv::kMaxQubits) {
        throw CapacityError("quantum counting needs " + std::to_string(node_bits + t) +
                            " qubits, limit is " + std::to_string(sv::kMaxQubits));
    }
    // controlled powers cost about 2^(2t-1) Grover steps of size N
    const double work = std::ldexp(static_cast<double>(n), 2 * t - 1);
    if (work > 0x1.0p36) {
        throw CapacityError("quantum counting with t=" + std::to_string(t) +
                            " over N=" + std::to_string(n) + " exceeds the work budget");
    }

    const int width = node_bits + t;
    sv::StateVector state(width);
    auto amps = state.amplitudes();
    amps[0] = 0.0;
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        amps[i] = u;
    }
    std::vector<sv::Qubit> counting;
    for (int j = 0; j < t; ++j) {
        counting.push_back(node_bits + j);
    }
    sv::run_circuit(state, gadgets::hadamard_layer(counting, width));

    const std::size_t block = std::size_t{1} << node_bits;
    for (int j = 0; j < t; ++j) {
        const std::uint64_t power = std::uint64_t{1} << j;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << t); ++y) {
            if (((y >> j) & 1U) == 0) {
                continue;
            }
            auto slice = amps.subspan(y * block, n);
            for (std::uint64_t r = 0; r < power; ++r) {
                grover_step(slice, mask);
            }
        }
    }
    sv::run_circuit(state, gadgets::inverse_qft(counting, width));

    CountEstimate est;
    est.counting_qubits = t;
    est.search_space = n;
    est.shots = shots;
    const auto dist = sv::probabilities(state, counting);
    est.counts = sv::sample_distribution(dist, shots, seed);
    std::uint64_t best = 0;
    for (const auto &[outcome, count] : est.counts) {
        if (count > best) {  // ties keep the smaller outcome
            best = count;
            est.outcome = outcome;
        }
    }
    const double theta = std::numbers::pi * static_cast<double>(est.outcome) / std::ldexp(1.0, t);
    const double s = std::sin(theta);
    est.m_hat = std::clamp(static_cast<double>(n) * s * s, 0.0, static_cast<double>(n));
    est.error_bound = counting_error_bound(n, est.m_hat, t);
    return est;
}

QuantumDecision robust_decision_quantum(const NscInstance &instance,
                                        const model::RobustParams &params, int counting_qubits,
                                        std::uint64_t shots, std::uint64_t seed) {
    QuantumDecision d;
    d.estimate = quantum_count(instance, counting_qubits, shots, seed);
    d.delta = params.delta(d.estimate.search_space);
    d.margin = d.estimate.m_hat - static_cast<double>(d.delta);
    if (std::abs(d.margin) <= d.estimate.error_bound) {
        d.verdict = model::Verdict::Inconclusive;
    } else {
        d.verdict = d.margin > 0 ? model::Verdict::Holds : model::Verdict::Fails;
    }
    return d;
}

} // namespace nscq::grover
