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

#include <nscq/statevec.hpp>

#include <nscq/error.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace nscq::sv {

namespace {

using Index = std::uint64_t;

constexpr Index bit(Qubit q) { return Index{1} << q; }

/// Iterates every basis index whose bits under `fixed_mask` equal
/// `fixed_value`, in increasing order. Free bits below the lowest fixed bit
/// form contiguous runs; the remaining free bits are walked as subsets.
template <typename F>
void for_each_index(int num_qubits, Index fixed_mask, Index fixed_value, F &&f) {
    const Index all = bit(num_qubits) - 1;
    fixed_mask &= all;
    const Index run = fixed_mask != 0 ? (fixed_mask & (~fixed_mask + 1)) : bit(num_qubits);
    const Index outer = all & ~fixed_mask & ~(run - 1);
    Index x = 0;
    do {
        const Index base = x | fixed_value;
        for (Index j = 0; j < run; ++j) {
            f(base + j);
        }
        x = (x - outer) & outer;
    } while (x != 0);
}

struct ControlMasks {
    Index mask = 0;
    Index value = 0;
};

ControlMasks control_masks(const GateOp &gate) {
    ControlMasks m;
    for (Qubit c : gate.controls) {
        m.mask |= bit(c);
        m.value |= bit(c);
    }
    for (Qubit c : gate.negated_controls) {
        m.value &= ~bit(c);
    }
    return m;
}

bool controls_satisfied(const GateOp &gate, Index state) {
    const auto m = control_masks(gate);
    return (state & m.mask) == m.value;
}

std::string qubit_error(const GateOp &gate, Qubit q, int num_qubits) {
    return std::string(gate_name(gate.kind)) + ": qubit index " + std::to_string(q) +
           " out of range for " + std::to_string(num_qubits) + "-qubit register";
}

void apply_phase(StateVector &state, Index mask, Index value, Complex factor) {
    auto amps = state.amplitudes();
    for_each_index(state.num_qubits(), mask, value, [&](Index i) { amps[i] *= factor; });
}

} // namespace

const char *gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CCX: return "CCX";
    case GateKind::MCX: return "MCX";
    case GateKind::MCZ: return "MCZ";
    case GateKind::CP: return "CP";
    }
    return "?";
}

GateOp GateOp::h(Qubit target) { return {GateKind::H, {}, {}, {target}, 0.0}; }
GateOp GateOp::x(Qubit target) { return {GateKind::X, {}, {}, {target}, 0.0}; }
GateOp GateOp::z(Qubit target) { return {GateKind::Z, {}, {}, {target}, 0.0}; }

GateOp GateOp::cnot(Qubit control, Qubit target, bool negated) {
    GateOp g{GateKind::CNOT, {control}, {}, {target}, 0.0};
    if (negated) {
        g.negated_controls.push_back(control);
    }
    return g;
}

GateOp GateOp::ccx(Qubit c0, Qubit c1, Qubit target, bool neg0, bool neg1) {
    GateOp g{GateKind::CCX, {c0, c1}, {}, {target}, 0.0};
    if (neg0) {
        g.negated_controls.push_back(c0);
    }
    if (neg1) {
        g.negated_controls.push_back(c1);
    }
    return g;
}

GateOp GateOp::mcx(std::vector<Qubit> controls, Qubit target, std::vector<Qubit> negated) {
    return {GateKind::MCX, std::move(controls), std::move(negated), {target}, 0.0};
}

GateOp GateOp::mcz(std::vector<Qubit> controls, Qubit target) {
    return {GateKind::MCZ, std::move(controls), {}, {target}, 0.0};
}

GateOp GateOp::cp(Qubit control, Qubit target, double angle) {
    return {GateKind::CP, {control}, {}, {target}, angle};
}

GateOp GateOp::inverse() const {
    GateOp g = *this;
    if (kind == GateKind::CP) {
        g.angle = -angle;
    }
    return g;
}

bool GateOp::is_permutation() const noexcept {
    switch (kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CCX:
    case GateKind::MCX:
        return true;
    default:
        return false;
    }
}

void validate(const GateOp &gate, int num_qubits) {
    if (gate.targets.size() != 1) {
        throw StructuralError(std::string(gate_name(gate.kind)) + ": expected one target");
    }
    std::size_t expected_controls = 0;
    bool fixed_arity = true;
    switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z: expected_controls = 0; break;
    case GateKind::CNOT: expected_controls = 1; break;
    case GateKind::CCX: expected_controls = 2; break;
    case GateKind::CP:
        if (gate.controls.empty()) {
            throw StructuralError("CP: needs at least one control");
        }
        fixed_arity = false;
        break;
    case GateKind::MCX:
    case GateKind::MCZ: fixed_arity = false; break;
    }
    if (fixed_arity && gate.controls.size() != expected_controls) {
        throw StructuralError(std::string(gate_name(gate.kind)) + ": expected " +
                              std::to_string(expected_controls) + " control(s)");
    }
    Index seen = 0;
    auto claim = [&](Qubit q) {
        if (q < 0 || q >= num_qubits) {
            throw StructuralError(qubit_error(gate, q, num_qubits));
        }
        if (seen & bit(q)) {
            throw StructuralError(std::string(gate_name(gate.kind)) + ": qubit " +
                                  std::to_string(q) + " used twice");
        }
        seen |= bit(q);
    };
    for (Qubit c : gate.controls) {
        claim(c);
    }
    for (Qubit t : gate.targets) {
        claim(t);
    }
    for (Qubit c : gate.negated_controls) {
        if (std::find(gate.controls.begin(), gate.controls.end(), c) == gate.controls.end()) {
            throw StructuralError(std::string(gate_name(gate.kind)) +
                                  ": negated control is not a control");
        }
    }
    if (gate.kind != GateKind::MCX && gate.kind != GateKind::CNOT &&
        gate.kind != GateKind::CCX && !gate.negated_controls.empty()) {
        throw StructuralError(std::string(gate_name(gate.kind)) +
                              ": negated controls not supported");
    }
}

QuantumCircuit::QuantumCircuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 63) {
        throw StructuralError("circuit width must be in [0, 63]");
    }
}

QuantumCircuit &QuantumCircuit::append(GateOp gate) {
    validate(gate, num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

QuantumCircuit &QuantumCircuit::append(const QuantumCircuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw StructuralError("cannot concatenate circuits of different widths");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("dense state vector supports 1.." + std::to_string(kMaxQubits) +
                            " qubits, requested " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.size()) {
        throw StructuralError("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

StateVector zero_state(int num_qubits) { return StateVector(num_qubits); }

void apply(StateVector &state, const GateOp &gate) {
    validate(gate, state.num_qubits());
    const int n = state.num_qubits();
    const Index t = bit(gate.targets.front());
    const auto ctrl = control_masks(gate);
    auto amps = state.amplitudes();

    switch (gate.kind) {
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        for_each_index(n, t, 0, [&](Index i) {
            const Complex a = amps[i];
            const Complex b = amps[i | t];
            amps[i] = r * (a + b);
            amps[i | t] = r * (a - b);
        });
        break;
    }
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CCX:
    case GateKind::MCX:
        for_each_index(n, ctrl.mask | t, ctrl.value,
                       [&](Index i) { std::swap(amps[i], amps[i | t]); });
        break;
    case GateKind::Z:
    case GateKind::MCZ:
        apply_phase(state, ctrl.mask | t, ctrl.value | t, Complex{-1.0, 0.0});
        break;
    case GateKind::CP:
        apply_phase(state, ctrl.mask | t, ctrl.value | t, std::polar(1.0, gate.angle));
        break;
    }
}

void apply_y(StateVector &state, Qubit target) {
    if (target < 0 || target >= state.num_qubits()) {
        throw StructuralError("Y: qubit index out of range");
    }
    const Index t = bit(target);
    auto amps = state.amplitudes();
    const Complex i_unit{0.0, 1.0};
    // Y|0> = i|1>, Y|1> = -i|0>
    for_each_index(state.num_qubits(), t, 0, [&](Index i) {
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | t];
        amps[i] = -i_unit * a1;
        amps[i | t] = i_unit * a0;
    });
}

namespace {

// Cache blocking. A run of gates whose non-diagonal targets all fall in a
// small "local" qubit set (the low kMinLowBits qubits plus a few extras) is
// applied by gathering each 2^kLocalBits slice of the state into a buffer,
// running the whole run there, and scattering it back: one sweep over memory
// per run instead of one per gate.
constexpr int kLocalBits = 16;
constexpr int kMinLowBits = 12;

struct LocalGate {
    GateKind kind;
    Index outer_mask;  // conditions on qubits outside the local set
    Index outer_value;
    Index inner_mask;  // conditions inside the buffer (target excluded for X/H)
    Index inner_value;
    Index target;      // buffer bit of the target (X-type and H)
    Complex factor;    // diagonal gates
};

bool is_diagonal(GateKind k) {
    return k == GateKind::Z || k == GateKind::MCZ || k == GateKind::CP;
}

struct LocalSet {
    int low = 0;               // qubits [0, low) are local
    std::vector<Qubit> extra;  // further local qubits, ascending, all >= low
};

// Smallest-footprint local set covering `targets`, or nothing.
std::optional<LocalSet> choose_local(const std::vector<Qubit> &targets) {
    for (int low = kLocalBits; low >= kMinLowBits; --low) {
        LocalSet set{low, {}};
        for (Qubit t : targets) {
            if (t >= low) {
                set.extra.push_back(t);
            }
        }
        if (low + static_cast<int>(set.extra.size()) <= kLocalBits) {
            std::sort(set.extra.begin(), set.extra.end());
            return set;
        }
    }
    return std::nullopt;
}

LocalGate localize(const GateOp &g, const LocalSet &set) {
    // buffer position of a local qubit, -1 otherwise
    auto position = [&](Qubit q) -> int {
        if (q < set.low) {
            return q;
        }
        for (std::size_t e = 0; e < set.extra.size(); ++e) {
            if (set.extra[e] == q) {
                return set.low + static_cast<int>(e);
            }
        }
        return -1;
    };
    LocalGate lg{g.kind, 0, 0, 0, 0, 0, Complex{1.0, 0.0}};
    auto condition = [&](Qubit q, bool value) {
        const int p = position(q);
        if (p < 0) {
            lg.outer_mask |= bit(q);
            lg.outer_value |= value ? bit(q) : 0;
        } else {
            lg.inner_mask |= bit(p);
            lg.inner_value |= value ? bit(p) : 0;
        }
    };
    for (Qubit c : g.controls) {
        const bool negated = std::find(g.negated_controls.begin(), g.negated_controls.end(), c) !=
                             g.negated_controls.end();
        condition(c, !negated);
    }
    const Qubit t = g.targets.front();
    if (is_diagonal(g.kind)) {
        condition(t, true);
        lg.factor = g.kind == GateKind::CP ? std::polar(1.0, g.angle) : Complex{-1.0, 0.0};
    } else {
        lg.target = bit(position(t));
    }
    return lg;
}

void apply_local(std::span<Complex> buf, int bits, const LocalGate &g) {
    switch (g.kind) {
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        for_each_index(bits, g.inner_mask | g.target, g.inner_value, [&](Index i) {
            const Complex a = buf[i];
            const Complex b = buf[i | g.target];
            buf[i] = r * (a + b);
            buf[i | g.target] = r * (a - b);
        });
        break;
    }
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CCX:
    case GateKind::MCX:
        for_each_index(bits, g.inner_mask | g.target, g.inner_value,
                       [&](Index i) { std::swap(buf[i], buf[i | g.target]); });
        break;
    default:
        for_each_index(bits, g.inner_mask, g.inner_value, [&](Index i) { buf[i] *= g.factor; });
        break;
    }
}

void apply_blocked(StateVector &state, std::span<const GateOp> gates, const LocalSet &set) {
    std::vector<LocalGate> local;
    local.reserve(gates.size());
    for (const auto &g : gates) {
        local.push_back(localize(g, set));
    }
    const int n = state.num_qubits();
    const int k = static_cast<int>(set.extra.size());
    const int bits = set.low + k;
    const Index run = Index{1} << set.low;
    Index extra_mask = 0;
    for (Qubit q : set.extra) {
        extra_mask |= bit(q);
    }
    // offsets of the 2^k contiguous runs that make up one slice
    std::vector<Index> offsets(std::size_t{1} << k);
    for (std::size_t c = 0; c < offsets.size(); ++c) {
        Index off = 0;
        for (int e = 0; e < k; ++e) {
            if ((c >> e) & 1U) {
                off |= bit(set.extra[static_cast<std::size_t>(e)]);
            }
        }
        offsets[c] = off;
    }
    std::vector<Complex> buffer(std::size_t{1} << bits);
    auto amps = state.amplitudes();
    for_each_index(n, extra_mask | (run - 1), 0, [&](Index base) {
        bool any = false;
        for (const auto &g : local) {
            if ((base & g.outer_mask) == g.outer_value) {
                any = true;
                break;
            }
        }
        if (!any) {
            return;
        }
        // the run maps this slice into itself, so an all-zero slice stays zero
        bool nonzero = false;
        for (std::size_t c = 0; c < offsets.size() && !nonzero; ++c) {
            const Complex *src = amps.data() + (base | offsets[c]);
            for (Index r = 0; r < run; ++r) {
                if (src[r] != Complex{}) {
                    nonzero = true;
                    break;
                }
            }
        }
        if (!nonzero) {
            return;
        }
        for (std::size_t c = 0; c < offsets.size(); ++c) {
            std::copy_n(amps.data() + (base | offsets[c]), run, buffer.data() + c * run);
        }
        for (const auto &g : local) {
            if ((base & g.outer_mask) == g.outer_value) {
                apply_local(buffer, bits, g);
            }
        }
        for (std::size_t c = 0; c < offsets.size(); ++c) {
            std::copy_n(buffer.data() + c * run, run, amps.data() + (base | offsets[c]));
        }
    });
}

void run_gates(StateVector &state, std::span<const GateOp> gates) {
    if (state.num_qubits() <= kLocalBits) {
        for (const auto &g : gates) {
            apply(state, g);
        }
        return;
    }
    std::size_t i = 0;
    while (i < gates.size()) {
        // grow the run while some local set still covers every target
        std::vector<Qubit> targets;
        std::optional<LocalSet> set;
        std::size_t j = i;
        for (; j < gates.size(); ++j) {
            validate(gates[j], state.num_qubits());
            if (is_diagonal(gates[j].kind)) {
                continue;
            }
            const Qubit t = gates[j].targets.front();
            if (std::find(targets.begin(), targets.end(), t) != targets.end()) {
                continue;
            }
            targets.push_back(t);
            auto next = choose_local(targets);
            if (!next) {
                targets.pop_back();
                break;
            }
        }
        set = choose_local(targets);
        if (j - i >= 2 && set) {
            apply_blocked(state, gates.subspan(i, j - i), *set);
            i = j;
        } else {
            apply(state, gates[i]);
            ++i;
        }
    }
}

} // namespace

void run_circuit(StateVector &state, const QuantumCircuit &circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw StructuralError("circuit width " + std::to_string(circuit.num_qubits()) +
                              " does not match state width " +
                              std::to_string(state.num_qubits()));
    }
    run_gates(state, circuit.gates());
}

QuantumCircuit invert(const QuantumCircuit &circuit) {
    QuantumCircuit out(circuit.num_qubits());
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.append(it->inverse());
    }
    return out;
}

std::vector<double> probabilities(const StateVector &state, std::span<const Qubit> subset) {
    Index seen = 0;
    for (Qubit q : subset) {
        if (q < 0 || q >= state.num_qubits()) {
            throw StructuralError("probabilities: qubit index out of range");
        }
        if (seen & bit(q)) {
            throw StructuralError("probabilities: duplicate qubit " + std::to_string(q));
        }
        seen |= bit(q);
    }
    if (subset.size() > 30) {
        throw CapacityError("probabilities: marginal over more than 30 qubits");
    }
    std::vector<double> dist(std::size_t{1} << subset.size(), 0.0);
    const auto amps = state.amplitudes();

    // Contiguous low-order subsets (the node registers) reduce to a mask.
    bool contiguous_low = true;
    for (std::size_t b = 0; b < subset.size(); ++b) {
        contiguous_low = contiguous_low && subset[b] == static_cast<Qubit>(b);
    }
    if (contiguous_low) {
        const Index mask = dist.size() - 1;
        for (Index i = 0; i < amps.size(); ++i) {
            dist[i & mask] += std::norm(amps[i]);
        }
        return dist;
    }
    for (Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        Index outcome = 0;
        for (std::size_t b = 0; b < subset.size(); ++b) {
            outcome |= ((i >> subset[b]) & 1U) << b;
        }
        dist[outcome] += p;
    }
    return dist;
}

Counts sample_distribution(std::span<const double> distribution, std::uint64_t shots,
                           std::uint64_t seed) {
    if (shots == 0) {
        throw DomainError("sample: shots must be at least 1");
    }
    if (distribution.empty()) {
        throw StructuralError("sample: empty distribution");
    }
    std::vector<double> cumulative(distribution.size());
    double running = 0.0;
    for (std::size_t i = 0; i < distribution.size(); ++i) {
        running += distribution[i];
        cumulative[i] = running;
    }
    if (!(running > 0.0)) {
        throw StructuralError("sample: distribution has no mass");
    }
    Rng rng(seed);
    Counts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double x = rng.uniform() * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) {
            --it;
        }
        // Skip trailing zero-probability entries that share the final total.
        auto idx = static_cast<std::uint64_t>(it - cumulative.begin());
        while (idx > 0 && distribution[idx] == 0.0) {
            --idx;
        }
        ++counts[idx];
    }
    return counts;
}

Counts sample(const StateVector &state, std::span<const Qubit> subset, std::uint64_t shots,
              std::uint64_t seed) {
    const auto dist = probabilities(state, subset);
    return sample_distribution(dist, shots, seed);
}

void run_noisy_trajectory(StateVector &state, const QuantumCircuit &circuit,
                          double noise_rate, std::uint64_t seed) {
    if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) {
        throw DomainError("noise_rate must lie in [0, 1]");
    }
    if (circuit.num_qubits() != state.num_qubits()) {
        throw StructuralError("circuit width does not match state width");
    }
    if (noise_rate == 0.0) {
        run_circuit(state, circuit);
        return;
    }
    // Draw the Pauli events up front (they do not depend on the state) and
    // run the augmented circuit in one go. Y = i X Z, so each Y contributes a
    // global factor i that is restored at the end.
    Rng rng(seed);
    std::vector<GateOp> gates;
    gates.reserve(circuit.size() * 2);
    int y_count = 0;
    for (const auto &gate : circuit.gates()) {
        gates.push_back(gate);
        if (gate.arity() < 2) {
            continue;
        }
        auto hit = [&](Qubit q) {
            if (!rng.bernoulli(noise_rate)) {
                return;
            }
            switch (rng.below(3)) {
            case 0: gates.push_back(GateOp::x(q)); break;
            case 1:
                gates.push_back(GateOp::z(q));
                gates.push_back(GateOp::x(q));
                ++y_count;
                break;
            default: gates.push_back(GateOp::z(q)); break;
            }
        };
        for (Qubit q : gate.controls) {
            hit(q);
        }
        for (Qubit q : gate.targets) {
            hit(q);
        }
    }
    run_gates(state, gates);
    static const Complex kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (y_count % 4 != 0) {
        const Complex f = kPowers[y_count % 4];
        for (auto &a : state.amplitudes()) {
            a *= f;
        }
    }
}

std::uint64_t replay_basis(const QuantumCircuit &circuit, std::uint64_t input) {
    Index state = input;
    for (const auto &gate : circuit.gates()) {
        switch (gate.kind) {
        case GateKind::H:
            throw StructuralError("replay_basis: H does not preserve basis states");
        case GateKind::Z:
        case GateKind::MCZ:
        case GateKind::CP:
            break;
        default:
            if (controls_satisfied(gate, state)) {
                state ^= bit(gate.targets.front());
            }
            break;
        }
    }
    return state;
}

} // namespace nscq::sv
