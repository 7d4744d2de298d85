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
#include <nscq/metrics.hpp>

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace nscq;
using namespace nscq::bench;

TEST_CASE("success metrics") {
    const std::vector<double> uniform(16, 1.0 / 16);
    const std::vector<std::uint64_t> four{0, 5, 9, 15};
    auto m = success_metrics(uniform, four);
    CHECK(m.success == doctest::Approx(0.25));
    CHECK(m.baseline == doctest::Approx(0.25));
    REQUIRE(m.ratio.has_value());
    CHECK(*m.ratio == doctest::Approx(1.0));

    std::vector<double> ideal(16, 0.0);
    ideal[5] = 0.5;
    ideal[9] = 0.5;
    CHECK(success_metrics(ideal, four).success == doctest::Approx(1.0));

    const std::vector<double> exact{0.0, 0.0, 0.0, 1.0};
    const std::vector<std::uint64_t> one{3};
    auto e = success_metrics(exact, one);
    CHECK(e.success == 1.0);
    CHECK(e.baseline == 0.25);
    CHECK(*e.ratio == 4.0);

    CHECK_FALSE(success_metrics(uniform, {}).ratio.has_value());
    const std::vector<double> short_sum{0.5, 0.2};
    CHECK_THROWS_AS(success_metrics(short_sum, {}), StructuralError);
    const std::vector<double> negative{1.5, -0.5};
    CHECK_THROWS_AS(success_metrics(negative, {}), StructuralError);
    const std::vector<std::uint64_t> outside{16};
    CHECK_THROWS_AS(success_metrics(uniform, outside), StructuralError);
}

TEST_CASE("default sweep grid") {
    SweepConfig cfg;
    cfg.seeds_per_size = 2;
    auto rows = run_sweep(cfg);
    CHECK(rows.size() == 7 * 2 * 2 * 2);
    for (const auto &r : rows) {
        CHECK(r.status == "ok");
        REQUIRE(r.feasible_count.has_value());
        CHECK(*r.baseline == doctest::Approx(static_cast<double>(*r.feasible_count) /
                                             static_cast<double>(r.search_space)));
        if (*r.feasible_count > 0) {
            CHECK(*r.ratio == doctest::Approx(*r.success / *r.baseline));
        } else {
            CHECK_FALSE(r.ratio.has_value());
        }
        CHECK(std::abs(*r.success - grover::analytic_success(r.search_space, *r.feasible_count,
                                                             r.iterations)) < 1e-9);
    }
    // nesting order n, replicate, K, k
    CHECK(rows[0].n == 4);
    CHECK(rows[0].threshold == 1);
    CHECK(rows[1].iterations == 2);
    CHECK(rows[2].threshold == 2);
    CHECK(rows.back().n == 10);
}

TEST_CASE("sweep output is stable across worker counts") {
    SweepConfig cfg;
    cfg.nodes = {4, 5, 6, 7};
    cfg.seeds_per_size = 3;
    cfg.master_seed = 77;
    cfg.run.sample = true;
    cfg.run.shots = 256;
    cfg.workers = 1;
    const auto one = to_csv(run_sweep(cfg));
    cfg.workers = 4;
    const auto four = to_csv(run_sweep(cfg));
    CHECK(one == four);
    CHECK(one.rfind("n,K,k,seed,N,M,k_paper,k_exact,success,baseline,ratio,backend,shots,"
                    "noise_rate",
                    0) == 0);

    // a sub-sweep reproduces the matching rows of the full one
    SweepConfig sub = cfg;
    sub.nodes = {6};
    auto sub_rows = run_sweep(sub);
    auto full_rows = run_sweep(cfg);
    std::size_t matched = 0;
    for (const auto &s : sub_rows) {
        for (const auto &f : full_rows) {
            if (f.n == s.n && f.seed == s.seed && f.threshold == s.threshold &&
                f.iterations == s.iterations) {
                CHECK(f.success == s.success);
                CHECK(f.sampled_success == s.sampled_success);
                ++matched;
            }
        }
    }
    CHECK(matched == sub_rows.size());
}

TEST_CASE("gate-level cells above the cap are recorded as skipped") {
    SweepConfig cfg;
    cfg.nodes = {4, 7};
    cfg.thresholds = {1};
    cfg.iterations = {1};
    cfg.run.backend = grover::Backend::Gate;
    auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status == "skipped:capacity");
    CHECK(rows[1].feasible_count.has_value());
    CHECK_FALSE(rows[1].success.has_value());
    const auto csv = to_csv(rows);
    CHECK(csv.find("skipped:capacity") != std::string::npos);
}

TEST_CASE("sweep config validation") {
    SweepConfig cfg;
    cfg.nodes.clear();
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);
    cfg = SweepConfig{};
    cfg.run.shots = 0;
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);
    cfg = SweepConfig{};
    cfg.iterations = {65};
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);
    cfg = SweepConfig{};
    cfg.nodes = {3};
    CHECK_THROWS_AS(run_sweep(cfg), DomainError);
}

TEST_CASE("writers") {
    SweepConfig cfg;
    cfg.nodes = {4, 5};
    cfg.seeds_per_size = 2;
    auto rows = run_sweep(cfg);

    const auto csv = to_csv(rows);
    std::istringstream lines(csv);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 15);
        ++count;
    }
    CHECK(count == rows.size() + 1);
    CHECK(to_csv(rows, true).find(",wall_time\n") != std::string::npos);

    auto doc = nlohmann::json::parse(to_json(rows));
    REQUIRE(doc.is_array());
    CHECK(doc.size() == rows.size());
    CHECK(doc[0]["backend"] == "fast");
    CHECK_FALSE(doc[0].contains("wall_time"));

    const auto svg = to_svg(rows);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("ensembles and verification") {
    auto e = make_ensemble(6, 3);
    REQUIRE(e.size() == 6);
    CHECK(e[0].num_nodes() == 4);
    CHECK(e[1].num_nodes() == 5);
    CHECK(e[2].num_nodes() == 6);
    CHECK(e[0].threshold == 1);
    CHECK(e[3].threshold == 2);
    CHECK(e == make_ensemble(6, 3));
    CHECK_THROWS_AS(make_ensemble(0, 1), DomainError);

    VerifyConfig cfg;
    cfg.instances = 3;
    cfg.max_nodes = 5;
    cfg.max_iterations = 4;
    auto report = run_verification(cfg);
    CHECK(report.checks.size() == 4);
    CHECK(report.passed());
    CHECK(report.to_text().find("verification passed") != std::string::npos);
}
