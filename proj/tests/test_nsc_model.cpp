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
#include <nscq/instance_io.hpp>
#include <nscq/nsc_model.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

using namespace nscq;
using namespace nscq::model;

namespace {

NscInstance single_arc(std::vector<std::uint32_t> table, std::uint64_t k,
                       Mode mode = Mode::Binary) {
    NscInstance inst;
    inst.graph = NetworkGraph(2, {{0, 1}});
    inst.cycle_length = static_cast<int>(table.size());
    inst.delays = {ArcDelay(PeriodicDelayTable(std::move(table)))};
    inst.threshold = k;
    inst.mode = mode;
    return inst;
}

// Independent evaluation straight from the definitions.
std::uint64_t reference_delay(const NscInstance &inst, const std::vector<int> &mu) {
    const int c = inst.cycle_length;
    std::uint64_t total = 0;
    for (std::size_t a = 0; a < inst.num_arcs(); ++a) {
        const auto &arc = inst.graph.arcs()[a];
        const int mi = mu[static_cast<std::size_t>(arc.from)];
        const int mj = mu[static_cast<std::size_t>(arc.to)];
        if (const auto *t = inst.delays[a].table()) {
            total += t->values()[static_cast<std::size_t>(((mi - mj) % c + c) % c)];
        } else {
            const auto *p = inst.delays[a].pattern();
            total += (mi == p->a && mj == p->b) ? 1 : 0;
        }
    }
    return total;
}

std::vector<std::vector<int>> all_assignments(int n, int c) {
    std::vector<std::vector<int>> out;
    std::vector<int> mu(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(mu);
        int v = 0;
        while (v < n && ++mu[static_cast<std::size_t>(v)] == c) {
            mu[static_cast<std::size_t>(v)] = 0;
            ++v;
        }
        if (v == n) {
            return out;
        }
    }
}

bool connected(const NetworkGraph &g) {
    std::vector<int> parent(static_cast<std::size_t>(g.num_nodes()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto &a : g.arcs()) {
        parent[static_cast<std::size_t>(find(a.from))] = find(a.to);
    }
    std::set<int> roots;
    for (int v = 0; v < g.num_nodes(); ++v) {
        roots.insert(find(v));
    }
    return roots.size() == 1;
}

} // namespace

TEST_CASE("graph and table validation") {
    CHECK_THROWS_AS(NetworkGraph(2, {{0, 0}}), StructuralError);
    CHECK_THROWS_AS(NetworkGraph(2, {{0, 2}}), StructuralError);
    CHECK_THROWS_AS(NetworkGraph(2, {}), StructuralError);
    CHECK_THROWS_AS(PeriodicDelayTable({1}), DomainError);

    PeriodicDelayTable t({4, 5, 6});
    for (int x = -7; x < 7; ++x) {
        CHECK(t.at(x) == t.at(x + 3));
    }
    CHECK(t.at(-1) == 6);
    CHECK(t.max_value() == 6);

    auto bad = single_arc({0, 2}, 1);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    auto general = single_arc({0, 1, 2}, 1, Mode::General);
    CHECK_NOTHROW(general.validate());
}

TEST_CASE("total delay and kappa") {
    auto inst = single_arc({0, 1}, 1);
    const std::vector<int> mu{0, 1};
    CHECK(total_delay(inst, mu) == 1);
    CHECK(kappa(inst, mu));
    inst.threshold = 0;
    CHECK_FALSE(kappa(inst, mu));

    const std::vector<int> bad{0, 2};
    CHECK_THROWS_AS(total_delay(inst, bad), DomainError);
    CHECK_THROWS_AS(kappa(inst, bad), DomainError);
    const std::vector<int> short_mu{0};
    CHECK_THROWS(total_delay(inst, short_mu));

    // all offsets equal reads h(0) on every arc
    auto g = random_instance(6, 3, Mode::General, 5, 4, 3);
    for (int c = 0; c < 4; ++c) {
        const std::vector<int> same(6, c);
        std::uint64_t want = 0;
        for (const auto &d : g.delays) {
            want += d.table()->values()[0];
        }
        CHECK(total_delay(g, same) == want);
    }

    // total 2 against K = 1
    NscInstance two;
    two.graph = NetworkGraph(3, {{0, 1}, {1, 2}});
    two.delays = {ArcDelay(PeriodicDelayTable({1, 1})), ArcDelay(PeriodicDelayTable({1, 1}))};
    two.threshold = 1;
    const std::vector<int> z{0, 0, 0};
    CHECK(total_delay(two, z) == 2);
    CHECK_FALSE(kappa(two, z));
}

TEST_CASE("total delay against independent evaluation") {
    for (std::uint64_t seed : {42ULL, 7ULL, 1234ULL}) {
        auto inst = random_instance(5, seed);
        for (const auto &mu : all_assignments(5, 2)) {
            CHECK(total_delay(inst, mu) == reference_delay(inst, mu));
        }
    }
    auto g = random_instance(4, 99, Mode::General, 4, 3, 5);
    for (const auto &mu : all_assignments(4, 3)) {
        CHECK(total_delay(g, mu) == reference_delay(g, mu));
    }
}

TEST_CASE("encode and decode") {
    for (std::uint64_t i = 0; i < 81; ++i) {
        auto mu = decode(i, 4, 3);
        CHECK(encode(mu, 3) == i);
    }
    const std::vector<int> mu{1, 0, 2};
    CHECK(encode(mu, 3) == 1 + 0 * 3 + 2 * 9);
}

TEST_CASE("feasible set") {
    auto inst = single_arc({0, 1}, 0);
    auto s = feasible_set(inst);
    CHECK(s.search_space == 4);
    CHECK(s.count() == 2);
    // (0,0) -> 0, (1,1) -> 3
    CHECK(s.members == std::vector<std::uint64_t>{0, 3});

    inst.threshold = 1;
    CHECK(feasible_set(inst).count() == 4);

    auto none = single_arc({3, 3, 3}, 2, Mode::General);
    CHECK(feasible_set(none).count() == 0);

    auto mask = feasibility_mask(inst);
    CHECK(std::count(mask.begin(), mask.end(), true) == 4);

    // enumeration cap
    auto big = random_instance(25, 1);
    CHECK_THROWS_AS(feasible_set(big), CapacityError);
}

TEST_CASE("feasible set matches brute force and is monotone in K") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = random_instance(4 + static_cast<int>(seed % 3), seed, Mode::General, 0, 3, 3);
        std::vector<std::uint64_t> prev;
        for (std::uint64_t k = 0; k <= 12; k += 3) {
            inst.threshold = k;
            std::vector<std::uint64_t> want;
            for (const auto &mu : all_assignments(inst.num_nodes(), 3)) {
                if (reference_delay(inst, mu) <= k) {
                    want.push_back(encode(mu, 3));
                }
            }
            std::sort(want.begin(), want.end());
            const auto got = feasible_set(inst).members;
            CHECK(got == want);
            CHECK(std::includes(got.begin(), got.end(), prev.begin(), prev.end()));
            prev = got;
        }
    }
}

TEST_CASE("global shifts preserve feasibility for difference-based delays") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = random_instance(4, seed, Mode::General, 4, 3, 3);
        REQUIRE(inst.all_difference_based());
        auto s = feasible_set(inst);
        std::set<std::uint64_t> members(s.members.begin(), s.members.end());
        if (!members.empty()) {
            CHECK(members.size() >= 3);
        }
        for (auto m : members) {
            auto mu = decode(m, 4, 3);
            for (auto &x : mu) {
                x = (x + 1) % 3;
            }
            CHECK(members.count(encode(mu, 3)) == 1);
        }
    }
}

TEST_CASE("robust decision") {
    auto inst = single_arc({0, 1}, 0);  // N = 4, M = 2
    auto holds = robust_decision_classical(inst, RobustParams::from_delta(1));
    CHECK(holds.verdict == Verdict::Holds);
    CHECK(holds.feasible_count == 2);
    CHECK(robust_decision_classical(inst, RobustParams::from_delta(3)).verdict == Verdict::Fails);

    auto half = robust_decision_classical(inst, RobustParams::from_alpha(0.5));
    CHECK(half.delta == 2);
    CHECK(half.verdict == Verdict::Holds);

    CHECK(RobustParams::from_alpha(0.1).delta(16) == 2);
    CHECK(RobustParams::from_alpha(0.25).delta(16) == 4);
    CHECK(RobustParams::from_alpha(1.0).delta(16) == 16);
    CHECK_THROWS_AS(RobustParams::from_alpha(0.0), DomainError);
    CHECK_THROWS_AS(RobustParams::from_alpha(1.5), DomainError);
    CHECK_THROWS_AS(RobustParams::from_delta(0), DomainError);
    CHECK_THROWS_AS(robust_decision_classical(inst, RobustParams::from_delta(5)), DomainError);
}

TEST_CASE("random instances") {
    auto a = random_instance(4, 7);
    CHECK(a.num_nodes() == 4);
    CHECK(a.num_arcs() == 5);
    CHECK(a == random_instance(4, 7));
    CHECK_FALSE(a == random_instance(4, 8));
    CHECK_THROWS_AS(random_instance(3, 1), DomainError);
    CHECK_THROWS_AS(random_instance(2, 1), DomainError);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto inst = random_instance(10, seed);
        CHECK(connected(inst.graph));
        std::set<std::pair<int, int>> edges;
        for (const auto &arc : inst.graph.arcs()) {
            CHECK(arc.from < arc.to);
            edges.insert({arc.from, arc.to});
        }
        CHECK(edges.size() == 11);
        CHECK(inst.graph.is_connected());
    }
}

TEST_CASE("classical random sampling") {
    auto all = single_arc({0, 1}, 1);  // M = N
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto r = classical_random_sampling(all, seed, 10);
        REQUIRE(r.trials.has_value());
        CHECK(*r.trials == 1);
    }
    auto none = single_arc({2, 2, 2}, 1, Mode::General);
    auto r = classical_random_sampling(none, 1, 50);
    CHECK_FALSE(r.trials.has_value());
    CHECK(r.draws == 50);

    // alpha = M/N = 0.5 -> mean trials near 2
    auto half = single_arc({0, 1}, 0);
    double sum = 0.0;
    for (std::uint64_t rep = 0; rep < 1000; ++rep) {
        sum += static_cast<double>(*classical_random_sampling(half, rep, 1000).trials);
    }
    CHECK(std::abs(sum / 1000.0 - 2.0) < 0.4);
}

TEST_CASE("empirical feasibility frequency tracks M/N") {
    auto inst = random_instance(6, 17, Mode::Binary, 1);
    const auto set = feasible_set(inst);
    const double p = static_cast<double>(set.count()) / static_cast<double>(set.search_space);
    REQUIRE(p > 0.0);
    // trials until first success are geometric with mean 1/p
    const int reps = 2000;
    double sum = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        sum += static_cast<double>(
            *classical_random_sampling(inst, static_cast<std::uint64_t>(rep), 100000).trials);
    }
    const double mean = sum / reps;
    const double sd = std::sqrt((1.0 - p) / (p * p) / reps);
    CHECK(std::abs(mean - 1.0 / p) < 3.0 * sd);
}

TEST_CASE("instance json round trip") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto b = random_instance(5, seed);
        CHECK(parse(serialize(b)) == b);
        auto g = random_instance(4, seed, Mode::General, 3, 3, 4);
        CHECK(parse(serialize(g)) == g);
    }
    auto no_seed = single_arc({0, 1}, 1);
    auto text = serialize(no_seed);
    CHECK(text.find("\"seed\": null") != std::string::npos);
    CHECK(parse(text) == no_seed);
}

TEST_CASE("instance json errors") {
    try {
        parse("{\n  \"nodes\": 2,\n  oops\n}");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("{\"nodes\": 2}"), ParseError);
    const char *both = R"({"nodes": 2, "cycle_length": 2, "threshold": 1, "mode": "binary",
        "edges": [{"i": 0, "j": 1, "table": [0, 1], "pattern": [1, 1]}], "seed": null})";
    CHECK_THROWS_AS(parse(both), ParseError);
    const char *bad_mode = R"({"nodes": 2, "cycle_length": 2, "threshold": 1, "mode": "fancy",
        "edges": [{"i": 0, "j": 1, "table": [0, 1]}], "seed": null})";
    CHECK_THROWS_AS(parse(bad_mode), ParseError);
    const char *ok = R"({"nodes": 2, "cycle_length": 2, "threshold": 1, "mode": "binary",
        "edges": [{"i": 0, "j": 1, "table": [0, 1]}], "seed": 3})";
    auto inst = parse(ok);
    CHECK(inst.seed == std::optional<std::uint64_t>(3));
    const char *self_loop = R"({"nodes": 2, "cycle_length": 2, "threshold": 1, "mode": "binary",
        "edges": [{"i": 1, "j": 1, "table": [0, 1]}], "seed": 3})";
    CHECK_THROWS_AS(parse(self_loop), Error);
}

TEST_CASE("instance files") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "nscq_model_test.json").string();
    auto inst = random_instance(6, 21);
    save(inst, path);
    CHECK(load(path) == inst);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load((dir / "definitely_missing_nscq.json").string()), IoError);
}
