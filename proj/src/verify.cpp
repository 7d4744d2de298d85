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

#include <nscq/bench.hpp>

#include <nscq/error.hpp>
#include <nscq/gadgets.hpp>
#include <nscq/grover.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

namespace nscq::bench {

namespace {

std::uint64_t read_bits(std::uint64_t word, const gadgets::QubitRange &reg) {
    std::uint64_t v = 0;
    for (int i = 0; i < reg.width; ++i) {
        v |= ((word >> reg[i]) & 1ULL) << i;
    }
    return v;
}

template <typename Body>
CheckResult timed(const char *name, Body &&body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    result.name = name;
    try {
        body(result);
    } catch (const std::exception &e) {
        result.passed = false;
        result.detail = std::string("error: ") + e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace

CheckResult check_oracle_equivalence(const std::vector<model::NscInstance> &ensemble) {
    return timed("oracle-equivalence", [&](CheckResult &r) {
        std::uint64_t probes = 0;
        for (std::size_t e = 0; e < ensemble.size(); ++e) {
            const auto &inst = ensemble[e];
            const auto lay = gadgets::layout(inst);
            const auto stages = grover::build_oracle_stages(inst, lay);
            sv::QuantumCircuit compute(lay.total_qubits);
            compute.append(stages.delays).append(stages.adders).append(stages.compare);
            const auto oracle = grover::build_oracle(inst, lay);
            const std::uint64_t n_space = inst.search_space_size();
            for (std::uint64_t x = 0; x < n_space; ++x) {
                const auto mu = model::decode(x, inst.num_nodes(), inst.cycle_length);
                const auto out = sv::replay_basis(compute, x);
                const bool flag = ((out >> lay.flag) & 1ULL) != 0;
                bool ok = flag == model::kappa(inst, mu) &&
                          read_bits(out, lay.sum_reg) == model::total_delay(inst, mu);
                for (std::size_t a = 0; ok && a < inst.num_arcs(); ++a) {
                    const auto &arc = inst.graph.arcs()[a];
                    ok = read_bits(out, lay.delay_regs[a]) ==
                         inst.delays[a](mu[arc.from], mu[arc.to], inst.cycle_length);
                }
                ok = ok && sv::replay_basis(oracle, x) == x;
                ++probes;
                if (!ok) {
                    r.passed = false;
                    std::ostringstream msg;
                    msg << "instance " << e << " basis " << x << " disagrees";
                    r.detail = msg.str();
                    return;
                }
            }
        }
        r.passed = true;
        r.detail = std::to_string(probes) + " basis probes";
    });
}

CheckResult check_uncomputation(const std::vector<model::NscInstance> &ensemble) {
    return timed("uncomputation", [&](CheckResult &r) {
        double worst_leak = 0.0;
        double worst_phase = 0.0;
        for (const auto &inst : ensemble) {
            const auto lay = gadgets::layout(inst);
            if (lay.total_qubits > sv::kMaxQubits) {
                throw CapacityError("ensemble instance exceeds the dense capacity");
            }
            const auto nodes = lay.node_qubits();
            sv::StateVector state(lay.total_qubits);
            sv::run_circuit(state, gadgets::hadamard_layer(nodes, lay.total_qubits));
            sv::run_circuit(state, grover::build_oracle(inst, lay));
            const std::uint64_t n_space = inst.search_space_size();
            const double amp = 1.0 / std::sqrt(static_cast<double>(n_space));
            const auto amps = state.amplitudes();
            double leak = 0.0;
            for (std::size_t i = n_space; i < amps.size(); ++i) {
                leak += std::norm(amps[i]);
            }
            worst_leak = std::max(worst_leak, leak);
            for (std::uint64_t x = 0; x < n_space; ++x) {
                const auto mu = model::decode(x, inst.num_nodes(), inst.cycle_length);
                const double want = model::kappa(inst, mu) ? -amp : amp;
                worst_phase = std::max(worst_phase, std::abs(amps[x] - sv::Complex(want, 0.0)));
            }
        }
        r.passed = worst_leak < 1e-12 && worst_phase < 1e-12;
        std::ostringstream msg;
        msg << "max ancilla mass " << worst_leak << ", max phase error " << worst_phase;
        r.detail = msg.str();
    });
}

CheckResult check_backend_agreement(const std::vector<model::NscInstance> &ensemble) {
    return timed("backend-agreement", [&](CheckResult &r) {
        double worst = 0.0;
        for (const auto &inst : ensemble) {
            for (int k : {1, 2}) {
                const auto gate = grover::grover_search_gate_level(inst, k);
                const auto fast = grover::grover_search_fast(inst, k);
                for (std::size_t i = 0; i < fast.node_distribution.size(); ++i) {
                    worst = std::max(worst, std::abs(gate.node_distribution[i] -
                                                     fast.node_distribution[i]));
                }
            }
        }
        r.passed = worst <= 1e-10;
        std::ostringstream msg;
        msg << "max |gate - fast| " << worst;
        r.detail = msg.str();
    });
}

CheckResult check_amplification_law(const std::vector<model::NscInstance> &ensemble,
                                    int max_iterations) {
    return timed("amplification-law", [&](CheckResult &r) {
        double worst = 0.0;
        for (const auto &inst : ensemble) {
            const auto set = model::feasible_set(inst);
            const auto trace = grover::gate_level_success_trace(inst, max_iterations);
            for (int k = 0; k <= max_iterations; ++k) {
                const double want = grover::analytic_success(set.search_space, set.count(), k);
                const double fast = grover::grover_search_fast(inst, k).success_probability;
                worst = std::max({worst, std::abs(trace[static_cast<std::size_t>(k)] - want),
                                  std::abs(fast - want)});
            }
        }
        r.passed = worst <= 1e-9;
        std::ostringstream msg;
        msg << "max deviation from sin^2((2k+1) theta) " << worst;
        r.detail = msg.str();
    });
}

bool VerifyReport::passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return !checks.empty();
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    for (const auto &c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    out << (passed() ? "verification passed" : "verification FAILED") << '\n';
    return out.str();
}

VerifyReport run_verification(const VerifyConfig &config) {
    if (config.instances < 1 || config.max_nodes < 4 || config.max_iterations < 0 ||
        config.max_iterations > grover::kMaxIterations) {
        throw DomainError("invalid verification settings");
    }
    const auto ensemble = make_ensemble(config.instances, config.seed, 4, config.max_nodes);
    VerifyReport report;
    report.checks.push_back(check_oracle_equivalence(ensemble));
    report.checks.push_back(check_uncomputation(ensemble));
    report.checks.push_back(check_backend_agreement(ensemble));
    report.checks.push_back(check_amplification_law(ensemble, config.max_iterations));
    return report;
}

} // namespace nscq::bench
