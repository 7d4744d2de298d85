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

#include <nscq/error.hpp>
#include <nscq/statevec.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace nscq;
using namespace nscq::sv;

namespace {

// Straightforward reference: new[i] = sum_j U[i][j] old[j], built gate by
// gate from the textbook definition. Only for a handful of qubits.
std::vector<Complex> reference_apply(const std::vector<Complex> &in, int n, const GateOp &g) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> out(dim);
    auto bit = [](std::size_t i, int q) { return (i >> q) & 1U; };
    auto controls_ok = [&](std::size_t i) {
        // negated controls are listed in both vectors
        for (int c : g.controls) {
            const bool negated = std::find(g.negated_controls.begin(), g.negated_controls.end(),
                                           c) != g.negated_controls.end();
            if (bit(i, c) != (negated ? 0U : 1U)) {
                return false;
            }
        }
        return true;
    };
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < dim; ++j) {
        const Complex a = in[j];
        if (g.kind == GateKind::H) {
            const int t = g.targets[0];
            const std::size_t j0 = j & ~(std::size_t{1} << t);
            const std::size_t j1 = j0 | (std::size_t{1} << t);
            out[j0] += r * a;
            out[j1] += (bit(j, t) ? -r : r) * a;
            continue;
        }
        if (!controls_ok(j)) {
            out[j] += a;
            continue;
        }
        switch (g.kind) {
        case GateKind::X:
        case GateKind::CNOT:
        case GateKind::CCX:
        case GateKind::MCX:
            out[j ^ (std::size_t{1} << g.targets[0])] += a;
            break;
        case GateKind::Z:
        case GateKind::MCZ:
            out[j] += bit(j, g.targets[0]) ? -a : a;
            break;
        case GateKind::CP:
            out[j] += bit(j, g.targets[0]) ? std::polar(1.0, g.angle) * a : a;
            break;
        default:
            FAIL("unexpected gate");
        }
    }
    return out;
}

std::vector<Complex> to_vec(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

double max_diff(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

QuantumCircuit random_circuit(int n, int gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    QuantumCircuit c(n);
    auto pick = [&](std::vector<int> &avoid) {
        for (;;) {
            int q = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            if (std::find(avoid.begin(), avoid.end(), q) == avoid.end()) {
                avoid.push_back(q);
                return q;
            }
        }
    };
    for (int i = 0; i < gates; ++i) {
        std::vector<int> used;
        switch (rng() % 7) {
        case 0:
            c.append(GateOp::h(pick(used)));
            break;
        case 1:
            c.append(GateOp::x(pick(used)));
            break;
        case 2:
            c.append(GateOp::z(pick(used)));
            break;
        case 3: {
            int a = pick(used);
            c.append(GateOp::cnot(a, pick(used), rng() % 2 == 0));
            break;
        }
        case 4: {
            int a = pick(used);
            int b = pick(used);
            c.append(GateOp::ccx(a, b, pick(used), rng() % 2 == 0, rng() % 2 == 0));
            break;
        }
        case 5: {
            int a = pick(used);
            int b = pick(used);
            c.append(GateOp::mcz({a, b}, pick(used)));
            break;
        }
        default: {
            int a = pick(used);
            c.append(GateOp::cp(a, pick(used), 0.1 + static_cast<double>(rng() % 100) / 17.0));
            break;
        }
        }
    }
    return c;
}

} // namespace

TEST_CASE("zero state") {
    auto s1 = zero_state(1);
    CHECK(s1.size() == 2);
    CHECK(s1[0] == Complex(1, 0));
    CHECK(s1[1] == Complex(0, 0));

    auto s3 = zero_state(3);
    CHECK(s3[0] == Complex(1, 0));
    for (std::size_t i = 1; i < 8; ++i) {
        CHECK(s3[i] == Complex(0, 0));
    }

    auto s19 = zero_state(19);
    CHECK(s19.size() == (std::size_t{1} << 19));
    CHECK(s19.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("qubit cap") {
    CHECK_THROWS_AS(zero_state(0), CapacityError);
    CHECK_THROWS_AS(zero_state(kMaxQubits + 1), CapacityError);
    try {
        zero_state(27);
    } catch (const CapacityError &e) {
        CHECK(std::string(e.what()).find("26") != std::string::npos);
    }
}

TEST_CASE("single gates") {
    auto s = zero_state(1);
    apply(s, GateOp::h(0));
    CHECK(s[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(s[1].real() == doctest::Approx(1 / std::sqrt(2.0)));

    auto t = StateVector::basis(3, 0b011);
    apply(t, GateOp::ccx(0, 1, 2));
    CHECK(std::abs(t[0b111] - Complex(1, 0)) < 1e-15);

    auto u = zero_state(2);
    apply(u, GateOp::h(0));
    apply(u, GateOp::h(1));
    apply(u, GateOp::mcz({0}, 1));
    CHECK(u[0].real() == doctest::Approx(0.5));
    CHECK(u[1].real() == doctest::Approx(0.5));
    CHECK(u[2].real() == doctest::Approx(0.5));
    CHECK(u[3].real() == doctest::Approx(-0.5));
}

TEST_CASE("gate validation") {
    auto s = zero_state(2);
    CHECK_THROWS_AS(apply(s, GateOp::x(2)), StructuralError);
    CHECK_THROWS_AS(apply(s, GateOp::cnot(0, 0)), StructuralError);
    QuantumCircuit c(3);
    c.append(GateOp::x(2));
    CHECK_THROWS_AS(run_circuit(s, c), StructuralError);
    CHECK_THROWS_AS(QuantumCircuit(2).append(GateOp::x(5)), StructuralError);
}

TEST_CASE("gates match the reference on random circuits") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 3);
        auto c = random_circuit(n, 30, seed);
        // start from a non-trivial state
        auto s = zero_state(n);
        for (int q = 0; q < n; ++q) {
            apply(s, GateOp::h(q));
        }
        apply(s, GateOp::cp(0, 1, 0.3));
        auto ref = to_vec(s);
        for (const auto &g : c.gates()) {
            apply(s, g);
            ref = reference_apply(ref, n, g);
        }
        CHECK(max_diff(to_vec(s), ref) < 1e-12);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
    }
}

TEST_CASE("run_circuit and invert") {
    auto s = zero_state(3);
    apply(s, GateOp::h(1));
    const auto before = to_vec(s);
    run_circuit(s, QuantumCircuit(3));
    CHECK(max_diff(to_vec(s), before) == 0.0);

    auto h4 = zero_state(4);
    QuantumCircuit layer(4);
    for (int q = 0; q < 4; ++q) {
        layer.append(GateOp::h(q));
    }
    run_circuit(h4, layer);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(h4[i] - Complex(0.25, 0)) < 1e-15);
    }

    CHECK(invert(QuantumCircuit(2)).empty());
    QuantumCircuit hc(2);
    hc.append(GateOp::h(0)).append(GateOp::cnot(0, 1));
    auto inv = invert(hc);
    REQUIRE(inv.size() == 2);
    CHECK(inv.gates()[0] == GateOp::cnot(0, 1));
    CHECK(inv.gates()[1] == GateOp::h(0));

    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto c = random_circuit(5, 40, seed);
        CHECK(invert(invert(c)) == c);
        const std::uint64_t input = seed % 32;
        auto b = StateVector::basis(5, input);
        run_circuit(b, c);
        run_circuit(b, invert(c));
        CHECK(std::norm(b[input]) >= 1.0 - 1e-10);
    }
}

TEST_CASE("probabilities") {
    auto s = zero_state(2);
    apply(s, GateOp::h(0));
    apply(s, GateOp::h(1));
    const std::vector<Qubit> q0{0};
    auto p = probabilities(s, q0);
    CHECK(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));

    auto bell = zero_state(2);
    apply(bell, GateOp::h(0));
    apply(bell, GateOp::cnot(0, 1));
    const std::vector<Qubit> q1{1};
    auto pb = probabilities(bell, q1);
    CHECK(pb[0] == doctest::Approx(0.5));
    CHECK(pb[1] == doctest::Approx(0.5));

    const std::vector<Qubit> dup{0, 0};
    CHECK_THROWS_AS(probabilities(bell, dup), StructuralError);
    const std::vector<Qubit> out_of_range{3};
    CHECK_THROWS_AS(probabilities(bell, out_of_range), StructuralError);

    // full subset in permuted order is a relabelling of |a|^2
    auto r = zero_state(3);
    run_circuit(r, random_circuit(3, 20, 7));
    const std::vector<Qubit> perm{2, 0, 1};
    auto pr = probabilities(r, perm);
    for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t out = ((i >> 2) & 1U) | (((i >> 0) & 1U) << 1) | (((i >> 1) & 1U) << 2);
        CHECK(pr[out] == doctest::Approx(std::norm(r[i])).epsilon(1e-12));
    }
}

TEST_CASE("sampling") {
    auto b = StateVector::basis(4, 9);
    const std::vector<Qubit> all{0, 1, 2, 3};
    auto c = sample(b, all, 500, 3);
    REQUIRE(c.size() == 1);
    CHECK(c.at(9) == 500);

    auto u = zero_state(4);
    for (int q = 0; q < 4; ++q) {
        apply(u, GateOp::h(q));
    }
    const double sigma = std::sqrt(1024.0 / 16.0 * 15.0 / 16.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto counts = sample(u, all, 1024, seed);
        double chi2 = 0.0;
        std::uint64_t total = 0;
        for (std::uint64_t k = 0; k < 16; ++k) {
            const double got = counts.count(k) ? static_cast<double>(counts.at(k)) : 0.0;
            CHECK(std::abs(got - 64.0) < 5 * sigma);
            chi2 += (got - 64.0) * (got - 64.0) / 64.0;
            total += static_cast<std::uint64_t>(got);
        }
        CHECK(total == 1024);
        // chi-square with 15 dof, p = 0.001 critical value
        CHECK(chi2 < 37.697);
    }
    CHECK(sample(u, all, 1024, 5) == sample(u, all, 1024, 5));
    CHECK_THROWS_AS(sample(u, all, 0, 5), DomainError);
}

TEST_CASE("noisy trajectories") {
    auto c = random_circuit(4, 25, 11);
    auto a = zero_state(4);
    auto b = zero_state(4);
    run_circuit(a, c);
    run_noisy_trajectory(b, c, 0.0, 99);
    CHECK(to_vec(a) == to_vec(b));

    CHECK_THROWS_AS(run_noisy_trajectory(b, c, -0.1, 1), DomainError);
    CHECK_THROWS_AS(run_noisy_trajectory(b, c, 1.5, 1), DomainError);

    // rate 1 on a lone CNOT: both qubits always receive a Pauli, so the
    // output is never the clean |00>
    QuantumCircuit cx(2);
    cx.append(GateOp::cnot(0, 1));
    int untouched = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto s = zero_state(2);
        run_noisy_trajectory(s, cx, 1.0, seed);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        // Z on a |0> qubit is a global phase, so look for any bit flip
        if (std::norm(s[0]) > 0.999) {
            ++untouched;
        }
    }
    // P(both qubits draw Z) = 1/9
    CHECK(untouched > 0);
    CHECK(untouched < 50);

    auto n1 = zero_state(4);
    auto n2 = zero_state(4);
    run_noisy_trajectory(n1, c, 0.3, 42);
    run_noisy_trajectory(n2, c, 0.3, 42);
    CHECK(to_vec(n1) == to_vec(n2));
}

TEST_CASE("basis replay agrees with dense simulation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        QuantumCircuit c(6);
        for (int i = 0; i < 30; ++i) {
            const int t = static_cast<int>(rng() % 6);
            const int a = (t + 1 + static_cast<int>(rng() % 5)) % 6;
            int b = (t + 1 + static_cast<int>(rng() % 5)) % 6;
            if (b == a) {
                b = (b + 1) % 6 == t ? (b + 2) % 6 : (b + 1) % 6;
            }
            if (rng() % 2) {
                c.append(GateOp::cnot(a, t, rng() % 2 == 0));
            } else {
                c.append(GateOp::ccx(a, b, t, rng() % 2 == 0, rng() % 2 == 0));
            }
        }
        const std::uint64_t in = rng() % 64;
        auto s = StateVector::basis(6, in);
        run_circuit(s, c);
        const std::uint64_t out = replay_basis(c, in);
        CHECK(std::norm(s[out]) == doctest::Approx(1.0));
    }
    QuantumCircuit h(1);
    h.append(GateOp::h(0));
    CHECK_THROWS(replay_basis(h, 0));
}

TEST_CASE("wide circuits agree with gate-by-gate application") {
    // above 16 qubits run_circuit works on cached slices; apply() does not
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const int n = 18;
        auto c = random_circuit(n, 60, 500 + seed);
        auto a = zero_state(n);
        auto b = zero_state(n);
        // sparse start: a few basis states, including high ones
        for (auto *s : {&a, &b}) {
            auto amps = s->amplitudes();
            amps[0] = 0.0;
            amps[3] = 0.6;
            amps[(1U << 17) | 5U] = Complex(0.0, 0.8);
        }
        run_circuit(a, c);
        for (const auto &g : c.gates()) {
            apply(b, g);
        }
        CHECK(max_diff(to_vec(a), to_vec(b)) < 1e-12);

        auto na = zero_state(n);
        auto nb = zero_state(n);
        run_noisy_trajectory(na, c, 0.2, seed);
        run_noisy_trajectory(nb, c, 0.2, seed);
        CHECK(to_vec(na) == to_vec(nb));
        CHECK(std::abs(na.norm_squared() - 1.0) < 1e-10);
    }
}

TEST_CASE("trajectory matches an explicit replay of the noise draws") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (int n : {4, 18}) {
            auto c = random_circuit(n, 30, 900 + seed);
            auto s = zero_state(n);
            run_noisy_trajectory(s, c, 0.3, seed);

            auto ref = zero_state(n);
            Rng rng(seed);
            for (const auto &g : c.gates()) {
                apply(ref, g);
                if (g.arity() < 2) {
                    continue;
                }
                std::vector<Qubit> touched = g.controls;
                touched.insert(touched.end(), g.targets.begin(), g.targets.end());
                for (Qubit q : touched) {
                    if (!rng.bernoulli(0.3)) {
                        continue;
                    }
                    switch (rng.below(3)) {
                    case 0: apply(ref, GateOp::x(q)); break;
                    case 1: apply_y(ref, q); break;
                    default: apply(ref, GateOp::z(q)); break;
                    }
                }
            }
            CHECK(max_diff(to_vec(s), to_vec(ref)) < 1e-12);
        }
    }
}
