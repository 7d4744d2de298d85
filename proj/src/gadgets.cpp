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

#include <nscq/gadgets.hpp>

#include <nscq/error.hpp>

#include <bit>
#include <numbers>
#include <string>

namespace nscq::gadgets {

using sv::GateOp;

std::vector<Qubit> QubitRange::qubits() const {
    std::vector<Qubit> out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) {
        out[static_cast<std::size_t>(i)] = start + i;
    }
    return out;
}

std::vector<Qubit> RegisterLayout::node_qubits() const {
    std::vector<Qubit> out;
    for (const auto &r : node_regs) {
        for (int i = 0; i < r.width; ++i) {
            out.push_back(r[i]);
        }
    }
    return out;
}

std::vector<Qubit> RegisterLayout::ancilla_qubits() const {
    const auto nodes = static_cast<Qubit>(node_qubits().size());
    std::vector<Qubit> out;
    for (Qubit q = nodes; q < total_qubits; ++q) {
        out.push_back(q);
    }
    return out;
}

int bits_for(std::uint64_t max_value) noexcept {
    return max_value == 0 ? 1 : static_cast<int>(std::bit_width(max_value));
}

RegisterLayout layout(const model::NscInstance &instance) {
    instance.validate();
    RegisterLayout l;
    l.bits_per_node = bits_for(static_cast<std::uint64_t>(instance.cycle_length - 1));
    const auto arcs = instance.num_arcs();

    std::uint64_t max_sum = 0;
    if (instance.mode == model::Mode::Binary) {
        l.delay_width = 1;
        max_sum = arcs;
    } else {
        std::uint64_t widest = 0;
        for (const auto &d : instance.delays) {
            widest = std::max<std::uint64_t>(widest, d.max_value());
        }
        l.delay_width = bits_for(widest);
        max_sum = instance.max_total_delay();
    }
    // binary: floor(log2|A|) + 1; general: ceil(log2(1 + sum of maxima))
    const int sum_width = bits_for(max_sum);

    Qubit next = 0;
    auto take = [&](int width) {
        QubitRange r{next, width};
        next += width;
        return r;
    };
    for (int v = 0; v < instance.num_nodes(); ++v) {
        l.node_regs.push_back(take(l.bits_per_node));
    }
    for (std::size_t a = 0; a < arcs; ++a) {
        l.delay_regs.push_back(take(l.delay_width));
    }
    l.sum_reg = take(sum_width);
    l.pad_reg = take(sum_width);
    l.carry = take(1).start;
    l.flag = take(1).start;
    l.cmp_ancilla = take(sum_width - 1);
    l.total_qubits = next;
    return l;
}

QuantumCircuit hadamard_layer(std::span<const Qubit> qubits, int width) {
    QuantumCircuit c(width);
    for (Qubit q : qubits) {
        c.append(GateOp::h(q));
    }
    return c;
}

namespace {

/// X-type gate on `target` conditioned on `controls` (with `negated` subset);
/// picks the narrowest named kind.
GateOp controlled_x(std::vector<Qubit> controls, std::vector<Qubit> negated, Qubit target) {
    GateOp g = GateOp::mcx(std::move(controls), target, std::move(negated));
    switch (g.controls.size()) {
    case 0:
        if (g.negated_controls.empty()) {
            g.kind = sv::GateKind::X;
        }
        break;
    case 1: g.kind = sv::GateKind::CNOT; break;
    case 2: g.kind = sv::GateKind::CCX; break;
    default: break;
    }
    return g;
}

/// Controls that match register `reg` holding the value `value`.
void match_value(const QubitRange &reg, std::uint64_t value, std::vector<Qubit> &controls,
                 std::vector<Qubit> &negated) {
    for (int b = 0; b < reg.width; ++b) {
        controls.push_back(reg[b]);
        if (((value >> b) & 1U) == 0) {
            negated.push_back(reg[b]);
        }
    }
}

} // namespace

QuantumCircuit delay_oracle_for_edge(const model::NscInstance &instance, std::size_t arc,
                                     const RegisterLayout &layout) {
    if (arc >= instance.num_arcs()) {
        throw StructuralError("arc index " + std::to_string(arc) + " out of range");
    }
    QuantumCircuit c(layout.total_qubits);
    const auto &a = instance.graph.arcs()[arc];
    const auto &delay = instance.delays[arc];
    const auto &ri = layout.node_regs[static_cast<std::size_t>(a.from)];
    const auto &rj = layout.node_regs[static_cast<std::size_t>(a.to)];
    const auto &out = layout.delay_regs[arc];

    if (const auto *p = delay.pattern()) {
        // one Toffoli; a 0 in the pattern becomes a negated control
        c.append(GateOp::ccx(ri[0], rj[0], out[0], p->a == 0, p->b == 0));
        return c;
    }

    const int cyc = instance.cycle_length;
    for (int vi = 0; vi < cyc; ++vi) {
        for (int vj = 0; vj < cyc; ++vj) {
            const std::uint64_t value = delay(vi, vj, cyc);
            if (value == 0) {
                continue;
            }
            if (value >> out.width) {
                throw EncodingError("arc " + std::to_string(arc) + ": delay value " +
                                    std::to_string(value) + " does not fit in " +
                                    std::to_string(out.width) + " bit(s)");
            }
            std::vector<Qubit> controls;
            std::vector<Qubit> negated;
            match_value(ri, static_cast<std::uint64_t>(vi), controls, negated);
            match_value(rj, static_cast<std::uint64_t>(vj), controls, negated);
            for (int b = 0; b < out.width; ++b) {
                if ((value >> b) & 1U) {
                    c.append(controlled_x(controls, negated, out[b]));
                }
            }
        }
    }
    return c;
}

QuantumCircuit add_into_sum(std::span<const Qubit> delay_reg, std::span<const Qubit> sum_reg,
                            Qubit carry, int width) {
    if (delay_reg.size() > sum_reg.size()) {
        throw EncodingError("adder: delay register (" + std::to_string(delay_reg.size()) +
                            " bits) is wider than the sum register (" +
                            std::to_string(sum_reg.size()) + " bits)");
    }
    QuantumCircuit c(width);
    for (std::size_t j = 0; j < delay_reg.size(); ++j) {
        // target register for adding 2^j: sum[j..], then carry
        std::vector<Qubit> reg(sum_reg.begin() + static_cast<std::ptrdiff_t>(j), sum_reg.end());
        reg.push_back(carry);
        // highest bit first so each flip sees the pre-increment low bits
        for (std::size_t i = reg.size(); i-- > 0;) {
            std::vector<Qubit> controls{delay_reg[j]};
            controls.insert(controls.end(), reg.begin(),
                            reg.begin() + static_cast<std::ptrdiff_t>(i));
            c.append(controlled_x(std::move(controls), {}, reg[i]));
        }
    }
    return c;
}

QuantumCircuit comparator_leq(std::span<const Qubit> sum_reg, const ComparatorSpec &spec,
                              Qubit flag, std::span<const Qubit> ancilla, int width) {
    const int m = static_cast<int>(sum_reg.size());
    if (m < 1 || spec.width != m) {
        throw EncodingError("comparator: spec width does not match the sum register");
    }
    if (m < 64 && spec.threshold >> m) {
        throw EncodingError("comparator: threshold " + std::to_string(spec.threshold) +
                            " not representable in " + std::to_string(m) + " bits");
    }
    QuantumCircuit c(width);
    // sum <= K  <=>  sum < T with T = K + 1
    const std::uint64_t t = spec.threshold + 1;
    if (t >> m) {
        c.append(GateOp::x(flag));
        return c;
    }
    if (static_cast<int>(ancilla.size()) < m - 1) {
        throw EncodingError("comparator: needs " + std::to_string(m - 1) + " ancilla qubits");
    }
    auto tbit = [&](int i) { return ((t >> i) & 1U) != 0; };
    // eq[i] holds [sum bits m-1..i agree with T]; eq[i] lives on ancilla[i-1]
    // for i >= 1. sum < T iff some i has T_i = 1, sum_i = 0 and eq[i+1].
    auto eq = [&](int i) { return ancilla[static_cast<std::size_t>(i - 1)]; };

    QuantumCircuit compute(width);
    for (int i = m - 1; i >= 1; --i) {
        const bool negated = !tbit(i);
        if (i == m - 1) {
            compute.append(GateOp::cnot(sum_reg[static_cast<std::size_t>(i)], eq(i), negated));
        } else {
            compute.append(GateOp::ccx(eq(i + 1), sum_reg[static_cast<std::size_t>(i)], eq(i),
                                       false, negated));
        }
    }
    c.append(compute);
    for (int i = m - 1; i >= 0; --i) {
        if (!tbit(i)) {
            continue;
        }
        const Qubit s = sum_reg[static_cast<std::size_t>(i)];
        if (i == m - 1) {
            c.append(GateOp::cnot(s, flag, true));
        } else {
            c.append(GateOp::ccx(eq(i + 1), s, flag, false, true));
        }
    }
    c.append(sv::invert(compute));
    return c;
}

QuantumCircuit diffuser(std::span<const Qubit> qubits, int width) {
    if (qubits.empty()) {
        throw StructuralError("diffuser needs at least one qubit");
    }
    QuantumCircuit c(width);
    for (Qubit q : qubits) {
        c.append(GateOp::h(q));
    }
    for (Qubit q : qubits) {
        c.append(GateOp::x(q));
    }
    std::vector<Qubit> controls(qubits.begin(), qubits.end() - 1);
    c.append(GateOp::mcz(std::move(controls), qubits.back()));
    for (Qubit q : qubits) {
        c.append(GateOp::x(q));
    }
    for (Qubit q : qubits) {
        c.append(GateOp::h(q));
    }
    return c;
}

QuantumCircuit qft(std::span<const Qubit> qubits, int width) {
    if (qubits.empty()) {
        throw StructuralError("qft needs at least one qubit");
    }
    QuantumCircuit c(width);
    const int t = static_cast<int>(qubits.size());
    for (int j = t - 1; j >= 0; --j) {
        c.append(GateOp::h(qubits[static_cast<std::size_t>(j)]));
        for (int k = j - 1; k >= 0; --k) {
            const double angle = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k));
            c.append(GateOp::cp(qubits[static_cast<std::size_t>(k)],
                                qubits[static_cast<std::size_t>(j)], angle));
        }
    }
    for (int i = 0; i < t / 2; ++i) {
        const Qubit a = qubits[static_cast<std::size_t>(i)];
        const Qubit b = qubits[static_cast<std::size_t>(t - 1 - i)];
        c.append(GateOp::cnot(a, b));
        c.append(GateOp::cnot(b, a));
        c.append(GateOp::cnot(a, b));
    }
    return c;
}

QuantumCircuit inverse_qft(std::span<const Qubit> qubits, int width) {
    return sv::invert(qft(qubits, width));
}

} // namespace nscq::gadgets
