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

#include <nscq/nscq.h>

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

namespace {

nscq_instance *make(int nodes, uint64_t seed) {
    nscq_generate_options g;
    nscq_generate_options_init(&g);
    g.nodes = nodes;
    g.seed = seed;
    nscq_instance *inst = nullptr;
    REQUIRE(nscq_instance_generate(&g, &inst) == NSCQ_OK);
    return inst;
}

} // namespace

TEST_CASE("instance lifecycle") {
    auto *inst = make(4, 7);
    nscq_instance_info info;
    REQUIRE(nscq_instance_info_get(inst, &info) == NSCQ_OK);
    CHECK(info.nodes == 4);
    CHECK(info.arcs == 5);
    CHECK(info.search_space == 16);
    CHECK(info.total_qubits == 19);

    char *json = nullptr;
    REQUIRE(nscq_instance_to_json(inst, &json) == NSCQ_OK);
    nscq_instance *copy = nullptr;
    REQUIRE(nscq_instance_parse(json, &copy) == NSCQ_OK);
    char *json2 = nullptr;
    REQUIRE(nscq_instance_to_json(copy, &json2) == NSCQ_OK);
    CHECK(std::strcmp(json, json2) == 0);
    nscq_string_free(json);
    nscq_string_free(json2);

    const auto path = (std::filesystem::temp_directory_path() / "nscq_capi_test.json").string();
    REQUIRE(nscq_instance_save(inst, path.c_str()) == NSCQ_OK);
    nscq_instance *loaded = nullptr;
    REQUIRE(nscq_instance_load(path.c_str(), &loaded) == NSCQ_OK);
    std::filesystem::remove(path);

    CHECK(nscq_instance_set_threshold(loaded, 3) == NSCQ_OK);
    REQUIRE(nscq_instance_info_get(loaded, &info) == NSCQ_OK);
    CHECK(info.threshold == 3);

    nscq_instance_free(inst);
    nscq_instance_free(copy);
    nscq_instance_free(loaded);
    nscq_instance_free(nullptr);
}

TEST_CASE("error reporting") {
    nscq_instance *inst = nullptr;
    CHECK(nscq_instance_parse("{\"nodes\": ", &inst) == NSCQ_ERR_PARSE);
    CHECK(std::string(nscq_last_error()).find("line") != std::string::npos);
    CHECK(inst == nullptr);
    CHECK(nscq_instance_load("/nonexistent/nscq.json", &inst) == NSCQ_ERR_IO);
    CHECK(nscq_instance_generate(nullptr, &inst) == NSCQ_ERR_NULL_ARGUMENT);

    nscq_generate_options g;
    nscq_generate_options_init(&g);
    g.nodes = 2;
    CHECK(nscq_instance_generate(&g, &inst) == NSCQ_ERR_DOMAIN);

    auto *big = make(10, 1);
    nscq_run_options opts;
    nscq_run_options_init(&opts);
    opts.backend = NSCQ_BACKEND_GATE;
    char *out = nullptr;
    CHECK(nscq_run(big, &opts, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_ERR_CAPACITY);
    CHECK(std::string(nscq_last_error()).find("gate") != std::string::npos);
    nscq_instance_free(big);

    auto *small = make(4, 1);
    CHECK(nscq_run(small, &opts, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_OK);
    CHECK(std::string(nscq_last_error()).empty());
    nscq_string_free(out);
    opts.iterations = 65;
    CHECK(nscq_run(small, &opts, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_ERR_DOMAIN);
    nscq_instance_free(small);
    CHECK(std::string(nscq_status_name(NSCQ_ERR_CAPACITY)) == "capacity error");
}

TEST_CASE("run, sweep, count, resources") {
    auto *inst = make(4, 7);
    nscq_run_options opts;
    nscq_run_options_init(&opts);
    char *out = nullptr;
    REQUIRE(nscq_run(inst, &opts, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_OK);
    const std::string row = out;
    nscq_string_free(out);
    CHECK(row.rfind("n,K,k,seed,N,M", 0) == 0);
    CHECK(row.find("\n4,1,1,7,16,") != std::string::npos);

    nscq_sweep_config cfg;
    nscq_sweep_config_init(&cfg);
    REQUIRE(nscq_sweep(&cfg, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_OK);
    const std::string a = out;
    nscq_string_free(out);
    REQUIRE(nscq_sweep(&cfg, NSCQ_FORMAT_CSV, 0, &out) == NSCQ_OK);
    CHECK(a == out);
    nscq_string_free(out);
    CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 7 * 2 * 2);

    REQUIRE(nscq_sweep(&cfg, NSCQ_FORMAT_SVG, 0, &out) == NSCQ_OK);
    CHECK(std::string(out).rfind("<svg", 0) == 0);
    nscq_string_free(out);

    nscq_count_options co;
    nscq_count_options_init(&co);
    nscq_count_result cr;
    REQUIRE(nscq_count(inst, &co, &cr) == NSCQ_OK);
    CHECK(cr.search_space == 16);
    CHECK(cr.delta == 4);
    if (cr.verdict != NSCQ_VERDICT_INCONCLUSIVE) {
        CHECK(cr.verdict == cr.classical_verdict);
    }

    REQUIRE(nscq_resources(inst, &out) == NSCQ_OK);
    CHECK(std::string(out).find("\"total_qubits\": 19") != std::string::npos);
    nscq_string_free(out);
    nscq_instance_free(inst);
}

TEST_CASE("verify") {
    nscq_verify_options vo;
    nscq_verify_options_init(&vo);
    CHECK(vo.instances == 30);
    vo.instances = 2;
    vo.max_nodes = 4;
    vo.max_iterations = 3;
    int passed = 0;
    char *report = nullptr;
    REQUIRE(nscq_verify(&vo, &passed, &report) == NSCQ_OK);
    CHECK(passed == 1);
    CHECK(std::string(report).find("PASS") != std::string::npos);
    nscq_string_free(report);
}
