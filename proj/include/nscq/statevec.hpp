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

#include <nscq/rng.hpp>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace nscq::sv {

using Complex = std::complex<double>;
using Qubit = int;

/// Largest register the dense backend accepts: 2^26 amplitudes (1 GiB).
inline constexpr int kMaxQubits = 26;

enum class GateKind { H, X, Z, CNOT, CCX, MCX, MCZ, CP };

const char *gate_name(GateKind kind) noexcept;

/// One gate of the circuit model.
///
/// `negated_controls` is a subset of `controls` whose condition is |0> rather
/// than |1>. Every kind has exactly one target.
struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<Qubit> controls;
    std::vector<Qubit> negated_controls;
    std::vector<Qubit> targets;
    double angle = 0.0;

    static GateOp h(Qubit target);
    static GateOp x(Qubit target);
    static GateOp z(Qubit target);
    static GateOp cnot(Qubit control, Qubit target, bool negated = false);
    static GateOp ccx(Qubit c0, Qubit c1, Qubit target, bool neg0 = false,
                      bool neg1 = false);
    static GateOp mcx(std::vector<Qubit> controls, Qubit target,
                      std::vector<Qubit> negated = {});
    static GateOp mcz(std::vector<Qubit> controls, Qubit target);
    static GateOp cp(Qubit control, Qubit target, double angle);

    [[nodiscard]] GateOp inverse() const;
    /// Number of distinct qubits the gate acts on (controls plus target).
    [[nodiscard]] std::size_t arity() const noexcept {
        return controls.size() + targets.size();
    }
    /// True for gates that only permute computational basis states.
    [[nodiscard]] bool is_permutation() const noexcept;

    bool operator==(const GateOp &) const = default;
};

/// Ordered gate list over a fixed register width. Treated as immutable once
/// handed out by a builder; `append` exists for the builders themselves.
class QuantumCircuit {
  public:
    QuantumCircuit() = default;
    explicit QuantumCircuit(int num_qubits);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<GateOp> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// Validates indices against num_qubits; throws StructuralError.
    QuantumCircuit &append(GateOp gate);
    QuantumCircuit &append(const QuantumCircuit &other);

    bool operator==(const QuantumCircuit &) const = default;

  private:
    int num_qubits_ = 0;
    std::vector<GateOp> gates_;
};

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits; throws CapacityError outside [1, kMaxQubits].
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::uint64_t index);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

  private:
    int num_qubits_;
    std::vector<Complex> amps_;
};

StateVector zero_state(int num_qubits);

void validate(const GateOp &gate, int num_qubits);

/// In-place gate application.
void apply(StateVector &state, const GateOp &gate);
/// Pauli Y on one qubit; only used by the noise model.
void apply_y(StateVector &state, Qubit target);

void run_circuit(StateVector &state, const QuantumCircuit &circuit);

QuantumCircuit invert(const QuantumCircuit &circuit);

/// Marginal distribution over `subset`; bit b of an outcome is subset[b].
std::vector<double> probabilities(const StateVector &state, std::span<const Qubit> subset);

using Counts = std::map<std::uint64_t, std::uint64_t>;

Counts sample(const StateVector &state, std::span<const Qubit> subset,
              std::uint64_t shots, std::uint64_t seed);

/// Draws `shots` outcomes from an explicit distribution (same inverse-CDF
/// procedure used by `sample`).
Counts sample_distribution(std::span<const double> distribution, std::uint64_t shots,
                           std::uint64_t seed);

/// Runs `circuit` with a Pauli error model: after every gate acting on two
/// or more qubits, each touched qubit independently receives a uniformly
/// chosen X, Y or Z with probability `noise_rate`.
void run_noisy_trajectory(StateVector &state, const QuantumCircuit &circuit,
                          double noise_rate, std::uint64_t seed);

/// Evolves a computational basis index through a circuit of permutation
/// gates (X, CNOT, CCX, MCX). Phase gates (Z, MCZ, CP) leave the index
/// unchanged; H throws StructuralError. Used for exhaustive classical replay.
std::uint64_t replay_basis(const QuantumCircuit &circuit, std::uint64_t input);

} // namespace nscq::sv
