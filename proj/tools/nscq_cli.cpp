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

// nscq command-line harness. Talks to the library only through nscq.h.

#include <nscq/nscq.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Failure {
    int code;
};

int exit_code_for(nscq_status status) {
    return status == NSCQ_ERR_CAPACITY ? kExitCapacity : kExitUsage;
}

void check(nscq_status status) {
    if (status != NSCQ_OK) {
        std::cerr << "error: " << nscq_status_name(status) << ": " << nscq_last_error() << '\n';
        throw Failure{exit_code_for(status)};
    }
}

// Owns a string returned by the library.
struct Text {
    char *ptr = nullptr;
    ~Text() { nscq_string_free(ptr); }
};

struct Instance {
    nscq_instance *ptr = nullptr;
    ~Instance() { nscq_instance_free(ptr); }
};

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text)) {
        std::cerr << "error: cannot write " << out_path << '\n';
        throw Failure{kExitUsage};
    }
}

// "4..10" or "4" -> list of ints
std::vector<long long> expand(const std::vector<std::string> &items) {
    std::vector<long long> out;
    for (const auto &item : items) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoll(item));
                continue;
            }
            const long long lo = std::stoll(item.substr(0, dots));
            const long long hi = std::stoll(item.substr(dots + 2));
            if (hi < lo) {
                throw std::invalid_argument(item);
            }
            for (long long v = lo; v <= hi; ++v) {
                out.push_back(v);
            }
        } catch (const std::logic_error &) {
            std::cerr << "error: bad range value '" << item << "'\n";
            throw Failure{kExitUsage};
        }
    }
    return out;
}

const std::map<std::string, nscq_backend> kBackends{
    {"gate", NSCQ_BACKEND_GATE}, {"fast", NSCQ_BACKEND_FAST}, {"noisy", NSCQ_BACKEND_NOISY}};
const std::map<std::string, nscq_format> kFormats{
    {"csv", NSCQ_FORMAT_CSV}, {"json", NSCQ_FORMAT_JSON}, {"svg", NSCQ_FORMAT_SVG}};

// Instance either from --instance or generated from --nodes/--seed.
struct InstanceSource {
    std::string path;
    int nodes = 4;
    std::uint64_t seed = 0;
    int cycle_length = 2;
    std::optional<std::uint64_t> threshold;
    bool general = false;

    void add_to(CLI::App *app, bool with_path) {
        if (with_path) {
            app->add_option("-i,--instance", path, "Instance JSON file")->check(CLI::ExistingFile);
        }
        app->add_option("--nodes", nodes, "Number of intersections when generating")
            ->capture_default_str();
        app->add_option("--seed", seed, "Generator seed")->capture_default_str();
        app->add_option("--cycle-length", cycle_length, "Cycle length C")->capture_default_str();
        app->add_option("--threshold", threshold, "Delay threshold K (default 1)");
        app->add_flag("--general", general, "Periodic delay tables instead of binary patterns");
    }

    void open(Instance &inst) const {
        if (!path.empty()) {
            check(nscq_instance_load(path.c_str(), &inst.ptr));
            if (threshold) {
                check(nscq_instance_set_threshold(inst.ptr, *threshold));
            }
            return;
        }
        nscq_generate_options g;
        nscq_generate_options_init(&g);
        g.nodes = nodes;
        g.seed = seed;
        g.cycle_length = cycle_length;
        g.threshold = threshold.value_or(1);
        g.general_mode = general ? 1 : 0;
        check(nscq_instance_generate(&g, &inst.ptr));
    }
};

std::string verdict_text(nscq_verdict v) {
    switch (v) {
    case NSCQ_VERDICT_HOLDS:
        return "holds";
    case NSCQ_VERDICT_FAILS:
        return "fails";
    case NSCQ_VERDICT_INCONCLUSIVE:
        break;
    }
    return "inconclusive";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Grover search for network signal coordination"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    auto format_check = CLI::IsMember({"csv", "json", "svg"});

    // generate
    auto *gen = app.add_subcommand("generate", "Write a random instance as JSON");
    InstanceSource gen_src;
    gen_src.add_to(gen, false);
    gen->add_option("-o,--out", out_path, "Output path (default stdout)");

    // run
    auto *run = app.add_subcommand("run", "Grover search on one instance, print one row");
    InstanceSource run_src;
    run_src.add_to(run, true);
    nscq_run_options run_opts;
    nscq_run_options_init(&run_opts);
    std::string backend = "fast";
    bool sample = false;
    bool wall_time = false;
    run->add_option("--iterations,-k", run_opts.iterations, "Grover iterations")
        ->capture_default_str();
    run->add_option("--backend", backend, "gate, fast or noisy")
        ->check(CLI::IsMember({"gate", "fast", "noisy"}))
        ->capture_default_str();
    auto *run_shots = run->add_option("--shots", run_opts.shots, "Measurement shots");
    run->add_flag("--sample", sample, "Also sample measurements");
    run->add_option("--noise-rate", run_opts.noise_rate, "Pauli error rate per gate qubit")
        ->capture_default_str();
    run->add_option("--trajectories", run_opts.trajectories, "Noisy trajectories")
        ->capture_default_str();
    run->add_option("--sample-seed", run_opts.seed, "Sampling and trajectory seed");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("-o,--out", out_path, "Output path (default stdout)");
    run->add_flag("--wall-time", wall_time, "Include the wall_time column");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Parameter sweep over n, K and k");
    std::vector<std::string> sweep_nodes{"4..10"};
    std::vector<std::string> sweep_thresholds{"1", "2"};
    std::vector<std::string> sweep_iterations{"1", "2"};
    nscq_sweep_config sweep_cfg;
    nscq_sweep_config_init(&sweep_cfg);
    std::string sweep_backend = "fast";
    bool sweep_sample = false;
    bool sweep_wall = false;
    sweep->add_option("--nodes", sweep_nodes, "Sizes, e.g. 4..10 or 4,6,8")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--threshold", sweep_thresholds, "Thresholds K")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--iterations,-k", sweep_iterations, "Iteration counts k")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--seeds", sweep_cfg.seeds_per_size, "Instances per size")
        ->capture_default_str();
    sweep->add_option("--seed", sweep_cfg.master_seed, "Master seed")->capture_default_str();
    sweep->add_option("--backend", sweep_backend, "gate, fast or noisy")
        ->check(CLI::IsMember({"gate", "fast", "noisy"}))
        ->capture_default_str();
    sweep->add_option("--shots", sweep_cfg.run.shots, "Measurement shots")
        ->capture_default_str();
    sweep->add_flag("--sample", sweep_sample, "Also sample measurements");
    sweep->add_option("--noise-rate", sweep_cfg.run.noise_rate, "Pauli error rate")
        ->capture_default_str();
    sweep->add_option("--trajectories", sweep_cfg.run.trajectories, "Noisy trajectories")
        ->capture_default_str();
    sweep->add_option("--workers", sweep_cfg.workers, "Worker threads (0: all cores)")
        ->capture_default_str();
    sweep->add_option("--format", format, "csv, json or svg")->check(format_check);
    sweep->add_option("-o,--out", out_path, "Output path (default stdout)");
    sweep->add_flag("--wall-time", sweep_wall, "Include the wall_time column");

    // count
    auto *count = app.add_subcommand("count", "Quantum counting and the robust verdict");
    InstanceSource count_src;
    count_src.add_to(count, true);
    nscq_count_options count_opts;
    nscq_count_options_init(&count_opts);
    count->add_option("-t,--counting-qubits", count_opts.counting_qubits, "Counting qubits")
        ->capture_default_str();
    count->add_option("--shots", count_opts.shots, "Measurement shots")->capture_default_str();
    count->add_option("--sample-seed", count_opts.seed, "Sampling seed");
    auto *alpha_opt =
        count->add_option("--alpha", count_opts.alpha, "Robust fraction")->capture_default_str();
    count->add_option("--delta", count_opts.delta, "Robust count")
        ->excludes(alpha_opt);
    count->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    count->add_option("-o,--out", out_path, "Output path (default stdout)");

    // resources
    auto *res = app.add_subcommand("resources", "Qubit and gate resource report");
    InstanceSource res_src;
    res_src.add_to(res, true);
    res->add_option("-o,--out", out_path, "Output path (default stdout)");

    // verify
    auto *verify = app.add_subcommand("verify", "Oracle and backend verification suite");
    nscq_verify_options verify_opts;
    nscq_verify_options_init(&verify_opts);
    verify->add_option("--instances", verify_opts.instances, "Ensemble size")
        ->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "Ensemble seed")->capture_default_str();
    verify->add_option("--max-nodes", verify_opts.max_nodes, "Largest ensemble size")
        ->capture_default_str();
    verify->add_option("--max-iterations", verify_opts.max_iterations,
                       "Amplification check range")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            Instance inst;
            gen_src.open(inst);
            if (out_path.empty() || out_path == "-") {
                Text text;
                check(nscq_instance_to_json(inst.ptr, &text.ptr));
                std::cout << text.ptr;
            } else {
                check(nscq_instance_save(inst.ptr, out_path.c_str()));
            }
        } else if (run->parsed()) {
            Instance inst;
            run_src.open(inst);
            run_opts.backend = kBackends.at(backend);
            run_opts.sample = (sample || run_shots->count() > 0) ? 1 : 0;
            Text text;
            check(nscq_run(inst.ptr, &run_opts, kFormats.at(format), wall_time ? 1 : 0,
                           &text.ptr));
            emit(text.ptr, out_path);
        } else if (sweep->parsed()) {
            const auto nodes_ll = expand(sweep_nodes);
            const auto thr_ll = expand(sweep_thresholds);
            const auto it_ll = expand(sweep_iterations);
            std::vector<int> nodes(nodes_ll.begin(), nodes_ll.end());
            std::vector<std::uint64_t> thresholds;
            for (auto v : thr_ll) {
                if (v < 0) {
                    std::cerr << "error: thresholds must be nonnegative\n";
                    return kExitUsage;
                }
                thresholds.push_back(static_cast<std::uint64_t>(v));
            }
            std::vector<int> iterations(it_ll.begin(), it_ll.end());
            sweep_cfg.nodes = nodes.data();
            sweep_cfg.num_nodes = nodes.size();
            sweep_cfg.thresholds = thresholds.data();
            sweep_cfg.num_thresholds = thresholds.size();
            sweep_cfg.iterations = iterations.data();
            sweep_cfg.num_iterations = iterations.size();
            sweep_cfg.run.backend = kBackends.at(sweep_backend);
            sweep_cfg.run.sample = sweep_sample ? 1 : 0;
            Text text;
            check(nscq_sweep(&sweep_cfg, kFormats.at(format), sweep_wall ? 1 : 0, &text.ptr));
            emit(text.ptr, out_path);
        } else if (count->parsed()) {
            Instance inst;
            count_src.open(inst);
            nscq_count_result r;
            check(nscq_count(inst.ptr, &count_opts, &r));
            char buf[1024];
            if (format == "json") {
                std::snprintf(buf, sizeof buf,
                              "{\n  \"N\": %llu,\n  \"counting_qubits\": %d,\n"
                              "  \"outcome\": %llu,\n  \"m_hat\": %.17g,\n"
                              "  \"error_bound\": %.17g,\n  \"delta\": %llu,\n"
                              "  \"margin\": %.17g,\n  \"verdict\": \"%s\",\n"
                              "  \"M\": %llu,\n  \"classical_verdict\": \"%s\"\n}\n",
                              static_cast<unsigned long long>(r.search_space), r.counting_qubits,
                              static_cast<unsigned long long>(r.outcome), r.m_hat, r.error_bound,
                              static_cast<unsigned long long>(r.delta), r.margin,
                              verdict_text(r.verdict).c_str(),
                              static_cast<unsigned long long>(r.exact_count),
                              verdict_text(r.classical_verdict).c_str());
            } else {
                std::snprintf(buf, sizeof buf,
                              "N,t,outcome,m_hat,error_bound,delta,margin,verdict,M,"
                              "classical_verdict\n%llu,%d,%llu,%.17g,%.17g,%llu,%.17g,%s,%llu,%s\n",
                              static_cast<unsigned long long>(r.search_space), r.counting_qubits,
                              static_cast<unsigned long long>(r.outcome), r.m_hat, r.error_bound,
                              static_cast<unsigned long long>(r.delta), r.margin,
                              verdict_text(r.verdict).c_str(),
                              static_cast<unsigned long long>(r.exact_count),
                              verdict_text(r.classical_verdict).c_str());
            }
            emit(buf, out_path);
        } else if (res->parsed()) {
            Instance inst;
            res_src.open(inst);
            Text text;
            check(nscq_resources(inst.ptr, &text.ptr));
            emit(text.ptr, out_path);
        } else if (verify->parsed()) {
            int passed = 0;
            Text text;
            check(nscq_verify(&verify_opts, &passed, &text.ptr));
            std::cout << text.ptr;
            return passed != 0 ? kExitOk : kExitVerifyFailed;
        }
    } catch (const Failure &f) {
        return f.code;
    }
    return kExitOk;
}
