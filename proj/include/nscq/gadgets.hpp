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
#include <span>
#include <vector>

namespace nscq::gadgets {

using sv::QuantumCircuit;
using sv::Qubit;

/// Contiguous run of qubits [start, start + width).
struct QubitRange {
    Qubit start = 0;
    int width = 0;

    [[nodiscard]] Qubit operator[](int i) const noexcept { return start + i; }
    [[nodiscard]] std::vector<Qubit> qubits() const;
    bool operator==(const QubitRange &) const = default;
};

/// Qubit assignment for the gate-level oracle.
///
/// Order on the register: node offsets, per-arc delays, sum, pad, carry,
/// flag, comparator work bits. The pad register is the adder's formatting
/// register (delay outputs zero-extended to the sum width); our adder does
/// not need it, so it stays |0> but is still allocated so the totals match
/// n|V| + |A| + 3*floor(log2|A|) + 4 in binary mode.
struct RegisterLayout {
    int bits_per_node = 1;       // ceil(log2 C)
    int delay_width = 1;         // w
    std::vector<QubitRange> node_regs;
    std::vector<QubitRange> delay_regs;
    QubitRange sum_reg;
    QubitRange pad_reg;
    Qubit carry = 0;
    Qubit flag = 0;
    QubitRange cmp_ancilla;
    int total_qubits = 0;

    [[nodiscard]] std::vector<Qubit> node_qubits() const;
    /// Every qubit except the node registers.
    [[nodiscard]] std::vector<Qubit> ancilla_qubits() const;
};

/// Bits needed for values 0..max_value (at least 1).
int bits_for(std::uint64_t max_value) noexcept;

/// Builds the register map. Never throws for size; dense-backend capacity
/// is checked by the engines that allocate state.
RegisterLayout layout(const model::NscInstance &instance);

QuantumCircuit hadamard_layer(std::span<const Qubit> qubits, int width);

/// XOR-loads h_a(mu_i, mu_j) into the arc's delay register, controlled on
/// the two node registers. Throws EncodingError when a value does not fit.
QuantumCircuit delay_oracle_for_edge(const model::NscInstance &instance, std::size_t arc,
                                     const RegisterLayout &layout);

/// sum <- sum + delay, rippling into `carry`. Each delay bit j drives a
/// controlled increment of (sum[j..], carry) built from a chain of
/// multi-controlled X gates. Throws EncodingError if delay is wider than sum.
QuantumCircuit add_into_sum(std::span<const Qubit> delay_reg, std::span<const Qubit> sum_reg,
                            Qubit carry, int width);

struct ComparatorSpec {
    std::uint64_t threshold = 0;  // K
    int width = 1;                // sum register width
};

/// flag ^= [sum <= K]. Work bits in `ancilla` (needs width - 1) are
/// returned to their input values. Throws EncodingError when K >= 2^width.
QuantumCircuit comparator_leq(std::span<const Qubit> sum_reg, const ComparatorSpec &spec,
                              Qubit flag, std::span<const Qubit> ancilla, int width);

/// H X MCZ X H over `qubits`: the reflection about the uniform state, up
/// to a global phase of -1.
QuantumCircuit diffuser(std::span<const Qubit> qubits, int width);

/// QFT|x> = 2^{-t/2} sum_y exp(2 pi i x y / 2^t) |y>, with qubits[0] the
/// least significant bit.
QuantumCircuit qft(std::span<const Qubit> qubits, int width);
QuantumCircuit inverse_qft(std::span<const Qubit> qubits, int width);

} // namespace nscq::gadgets
