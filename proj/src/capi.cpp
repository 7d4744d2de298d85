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

#include <nscq/bench.hpp>
#include <nscq/complexity.hpp>
#include <nscq/error.hpp>
#include <nscq/gadgets.hpp>
#include <nscq/grover.hpp>
#include <nscq/instance_io.hpp>
#include <nscq/nsc_model.hpp>

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

struct nscq_instance {
    nscq::model::NscInstance value;
};

namespace {

thread_local std::string last_error;

nscq_status status_for(nscq::ErrorKind kind) {
    switch (kind) {
    case nscq::ErrorKind::Domain:
        return NSCQ_ERR_DOMAIN;
    case nscq::ErrorKind::Structural:
        return NSCQ_ERR_STRUCTURAL;
    case nscq::ErrorKind::Capacity:
        return NSCQ_ERR_CAPACITY;
    case nscq::ErrorKind::Encoding:
        return NSCQ_ERR_ENCODING;
    case nscq::ErrorKind::Parse:
        return NSCQ_ERR_PARSE;
    case nscq::ErrorKind::Io:
        return NSCQ_ERR_IO;
    }
    return NSCQ_ERR_INTERNAL;
}

template <typename Body>
nscq_status guarded(Body &&body) {
    last_error.clear();
    try {
        body();
        return NSCQ_OK;
    } catch (const nscq::Error &e) {
        last_error = e.what();
        return status_for(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return NSCQ_ERR_CAPACITY;
    } catch (const std::exception &e) {
        last_error = e.what();
        return NSCQ_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return NSCQ_ERR_INTERNAL;
    }
}

nscq_status null_argument(const char *what) {
    last_error = std::string("null argument: ") + what;
    return NSCQ_ERR_NULL_ARGUMENT;
}

char *duplicate(const std::string &text) {
    auto *out = static_cast<char *>(std::malloc(text.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

nscq::grover::Backend to_backend(nscq_backend b) {
    switch (b) {
    case NSCQ_BACKEND_GATE:
        return nscq::grover::Backend::Gate;
    case NSCQ_BACKEND_FAST:
        return nscq::grover::Backend::Fast;
    case NSCQ_BACKEND_NOISY:
        return nscq::grover::Backend::Noisy;
    }
    throw nscq::DomainError("unknown backend selector " + std::to_string(static_cast<int>(b)));
}

nscq::bench::RunOptions to_run_options(const nscq_run_options &o) {
    nscq::bench::RunOptions r;
    r.backend = to_backend(o.backend);
    r.iterations = o.iterations;
    r.sample = o.sample != 0;
    r.shots = o.shots;
    r.seed = o.seed;
    r.noise_rate = o.noise_rate;
    r.trajectories = o.trajectories;
    return r;
}

nscq_verdict to_verdict(nscq::model::Verdict v) {
    switch (v) {
    case nscq::model::Verdict::Holds:
        return NSCQ_VERDICT_HOLDS;
    case nscq::model::Verdict::Fails:
        return NSCQ_VERDICT_FAILS;
    case nscq::model::Verdict::Inconclusive:
        break;
    }
    return NSCQ_VERDICT_INCONCLUSIVE;
}

std::string render(const std::vector<nscq::bench::SweepRow> &rows, nscq_format format,
                   bool wall_time) {
    switch (format) {
    case NSCQ_FORMAT_CSV:
        return nscq::bench::to_csv(rows, wall_time);
    case NSCQ_FORMAT_JSON:
        return nscq::bench::to_json(rows, wall_time);
    case NSCQ_FORMAT_SVG:
        return nscq::bench::to_svg(rows);
    }
    throw nscq::DomainError("unknown output format");
}

const int kDefaultNodes[] = {4, 5, 6, 7, 8, 9, 10};
const uint64_t kDefaultThresholds[] = {1, 2};
const int kDefaultIterations[] = {1, 2};

} // namespace

extern "C" {

const char *nscq_last_error(void) { return last_error.c_str(); }

const char *nscq_status_name(nscq_status status) {
    switch (status) {
    case NSCQ_OK:
        return "ok";
    case NSCQ_ERR_DOMAIN:
        return "domain error";
    case NSCQ_ERR_STRUCTURAL:
        return "structural error";
    case NSCQ_ERR_CAPACITY:
        return "capacity error";
    case NSCQ_ERR_ENCODING:
        return "encoding error";
    case NSCQ_ERR_PARSE:
        return "parse error";
    case NSCQ_ERR_IO:
        return "i/o error";
    case NSCQ_ERR_NULL_ARGUMENT:
        return "null argument";
    case NSCQ_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void nscq_string_free(char *text) { std::free(text); }

void nscq_generate_options_init(nscq_generate_options *options) {
    if (options == nullptr) {
        return;
    }
    options->nodes = 4;
    options->seed = 0;
    options->cycle_length = 2;
    options->threshold = 1;
    options->general_mode = 0;
    options->max_delay = 3;
}

nscq_status nscq_instance_generate(const nscq_generate_options *options, nscq_instance **out) {
    if (options == nullptr || out == nullptr) {
        return null_argument("options/out");
    }
    return guarded([&] {
        auto inst = nscq::model::random_instance(
            options->nodes, options->seed,
            options->general_mode != 0 ? nscq::model::Mode::General : nscq::model::Mode::Binary,
            options->threshold, options->cycle_length, options->max_delay);
        *out = new nscq_instance{std::move(inst)};
    });
}

nscq_status nscq_instance_load(const char *path, nscq_instance **out) {
    if (path == nullptr || out == nullptr) {
        return null_argument("path/out");
    }
    return guarded([&] { *out = new nscq_instance{nscq::model::load(path)}; });
}

nscq_status nscq_instance_parse(const char *json_text, nscq_instance **out) {
    if (json_text == nullptr || out == nullptr) {
        return null_argument("json_text/out");
    }
    return guarded([&] { *out = new nscq_instance{nscq::model::parse(json_text)}; });
}

nscq_status nscq_instance_save(const nscq_instance *instance, const char *path) {
    if (instance == nullptr || path == nullptr) {
        return null_argument("instance/path");
    }
    return guarded([&] { nscq::model::save(instance->value, path); });
}

nscq_status nscq_instance_to_json(const nscq_instance *instance, char **out) {
    if (instance == nullptr || out == nullptr) {
        return null_argument("instance/out");
    }
    return guarded([&] { *out = duplicate(nscq::model::serialize(instance->value)); });
}

nscq_status nscq_instance_set_threshold(nscq_instance *instance, uint64_t threshold) {
    if (instance == nullptr) {
        return null_argument("instance");
    }
    return guarded([&] {
        auto copy = instance->value;
        copy.threshold = threshold;
        copy.validate();
        instance->value = std::move(copy);
    });
}

nscq_status nscq_instance_info_get(const nscq_instance *instance, nscq_instance_info *out) {
    if (instance == nullptr || out == nullptr) {
        return null_argument("instance/out");
    }
    return guarded([&] {
        const auto &inst = instance->value;
        nscq_instance_info info{};
        info.nodes = inst.num_nodes();
        info.arcs = inst.num_arcs();
        info.cycle_length = inst.cycle_length;
        info.threshold = inst.threshold;
        info.general_mode = inst.mode == nscq::model::Mode::General ? 1 : 0;
        try {
            info.search_space = inst.search_space_size();
        } catch (const nscq::CapacityError &) {
            info.search_space = 0;
        }
        info.max_total_delay = inst.max_total_delay();
        info.total_qubits = nscq::gadgets::layout(inst).total_qubits;
        *out = info;
    });
}

void nscq_instance_free(nscq_instance *instance) { delete instance; }

void nscq_run_options_init(nscq_run_options *options) {
    if (options == nullptr) {
        return;
    }
    options->backend = NSCQ_BACKEND_FAST;
    options->iterations = 1;
    options->sample = 0;
    options->shots = 1024;
    options->seed = 0;
    options->noise_rate = 0.0;
    options->trajectories = 100;
}

nscq_status nscq_run(const nscq_instance *instance, const nscq_run_options *options,
                     nscq_format format, int include_wall_time, char **out) {
    if (instance == nullptr || options == nullptr || out == nullptr) {
        return null_argument("instance/options/out");
    }
    return guarded([&] {
        const auto run = to_run_options(*options);
        if (run.iterations < 0 || run.iterations > nscq::grover::kMaxIterations) {
            throw nscq::DomainError("iterations must lie in [0, 64]");
        }
        if (run.sample && run.shots == 0) {
            throw nscq::DomainError("shots must be at least 1");
        }
        if (!(run.noise_rate >= 0.0 && run.noise_rate <= 1.0)) {
            throw nscq::DomainError("noise rate must lie in [0, 1]");
        }
        const auto &inst = instance->value;
        // single runs report capacity problems as errors, not skipped rows
        if (run.backend != nscq::grover::Backend::Fast) {
            const auto l = nscq::gadgets::layout(inst);
            if (l.total_qubits > nscq::sv::kMaxQubits) {
                throw nscq::CapacityError(
                    std::string(nscq::grover::backend_name(run.backend)) +
                    " backend: instance needs " + std::to_string(l.total_qubits) +
                    " qubits, limit is " + std::to_string(nscq::sv::kMaxQubits));
            }
        }
        const auto n_space = inst.search_space_size();
        if (n_space > nscq::model::kEnumerationCap) {
            throw nscq::CapacityError("search space " + std::to_string(n_space) +
                                      " exceeds the enumeration limit " +
                                      std::to_string(nscq::model::kEnumerationCap));
        }
        auto row = nscq::bench::evaluate_cell(inst, run);
        if (row.status == "skipped:unsupported") {
            throw nscq::DomainError(
                "gate-level backend needs the cycle length to be a power of two");
        }
        *out = duplicate(render({row}, format, include_wall_time != 0));
    });
}

void nscq_sweep_config_init(nscq_sweep_config *config) {
    if (config == nullptr) {
        return;
    }
    config->nodes = kDefaultNodes;
    config->num_nodes = sizeof kDefaultNodes / sizeof kDefaultNodes[0];
    config->thresholds = kDefaultThresholds;
    config->num_thresholds = sizeof kDefaultThresholds / sizeof kDefaultThresholds[0];
    config->iterations = kDefaultIterations;
    config->num_iterations = sizeof kDefaultIterations / sizeof kDefaultIterations[0];
    config->seeds_per_size = 1;
    config->master_seed = 0;
    nscq_run_options_init(&config->run);
    config->workers = 0;
}

nscq_status nscq_sweep(const nscq_sweep_config *config, nscq_format format,
                       int include_wall_time, char **out) {
    if (config == nullptr || out == nullptr) {
        return null_argument("config/out");
    }
    if ((config->num_nodes > 0 && config->nodes == nullptr) ||
        (config->num_thresholds > 0 && config->thresholds == nullptr) ||
        (config->num_iterations > 0 && config->iterations == nullptr)) {
        return null_argument("sweep ranges");
    }
    return guarded([&] {
        nscq::bench::SweepConfig cfg;
        cfg.nodes.assign(config->nodes, config->nodes + config->num_nodes);
        cfg.thresholds.assign(config->thresholds, config->thresholds + config->num_thresholds);
        cfg.iterations.assign(config->iterations, config->iterations + config->num_iterations);
        cfg.seeds_per_size = config->seeds_per_size;
        cfg.master_seed = config->master_seed;
        cfg.run = to_run_options(config->run);
        cfg.workers = config->workers;
        *out = duplicate(render(nscq::bench::run_sweep(cfg), format, include_wall_time != 0));
    });
}

void nscq_count_options_init(nscq_count_options *options) {
    if (options == nullptr) {
        return;
    }
    options->counting_qubits = 7;
    options->shots = 1024;
    options->seed = 0;
    options->alpha = 0.25;
    options->delta = 0;
}

nscq_status nscq_count(const nscq_instance *instance, const nscq_count_options *options,
                       nscq_count_result *out) {
    if (instance == nullptr || options == nullptr || out == nullptr) {
        return null_argument("instance/options/out");
    }
    return guarded([&] {
        const auto params = options->delta > 0
                                ? nscq::model::RobustParams::from_delta(options->delta)
                                : nscq::model::RobustParams::from_alpha(options->alpha);
        const auto q = nscq::grover::robust_decision_quantum(
            instance->value, params, options->counting_qubits, options->shots, options->seed);
        const auto c = nscq::model::robust_decision_classical(instance->value, params);
        nscq_count_result r{};
        r.m_hat = q.estimate.m_hat;
        r.outcome = q.estimate.outcome;
        r.counting_qubits = q.estimate.counting_qubits;
        r.error_bound = q.estimate.error_bound;
        r.search_space = q.estimate.search_space;
        r.delta = q.delta;
        r.margin = q.margin;
        r.verdict = to_verdict(q.verdict);
        r.exact_count = c.feasible_count;
        r.classical_verdict = to_verdict(c.verdict);
        *out = r;
    });
}

nscq_status nscq_resources(const nscq_instance *instance, char **out) {
    if (instance == nullptr || out == nullptr) {
        return null_argument("instance/out");
    }
    return guarded([&] {
        const auto &inst = instance->value;
        const auto est = nscq::complexity::oracle_cost(inst);
        nlohmann::ordered_json j;
        j["nodes"] = inst.num_nodes();
        j["arcs"] = inst.num_arcs();
        j["cycle_length"] = inst.cycle_length;
        j["threshold"] = inst.threshold;
        nlohmann::ordered_json q;
        q["node"] = est.qubits.node;
        q["delay"] = est.qubits.delay;
        q["sum"] = est.qubits.sum;
        q["pad"] = est.qubits.pad;
        q["carry"] = est.qubits.carry;
        q["flag"] = est.qubits.flag;
        q["comparator_ancilla"] = est.qubits.comparator_ancilla;
        q["total"] = est.qubits.total;
        j["qubits"] = q;
        j["total_qubits"] = est.qubits.total;
        j["delay_gates"] = est.delay_gates;
        j["adder_gates"] = est.adder_gates;
        j["comparator_gates"] = est.comparator_gates;
        j["oracle_gate_count"] = est.oracle_gate_count;
        j["oracle_depth"] = est.oracle_depth;
        j["phase_oracle_gate_count"] = est.phase_oracle_gate_count;
        j["phase_oracle_depth"] = est.phase_oracle_depth;
        j["diffuser_depth"] = est.diffuser_depth;
        j["iteration_depth"] = est.iteration_depth;
        j["iteration_multi_qubit_gates"] = est.iteration_multi_qubit_gates;
        j["iteration_gates_by_kind"] = est.iteration_gates_by_kind;
        j["oracle_complexity"] = est.oracle_complexity;
        j["iteration_complexity"] = est.iteration_complexity;
        try {
            const auto n_space = inst.search_space_size();
            j["search_space"] = n_space;
            if (n_space <= nscq::model::kEnumerationCap) {
                const auto m = nscq::model::feasible_set(inst).count();
                j["feasible_count"] = m;
                if (m > 0) {
                    const auto k = nscq::complexity::optimal_iterations(n_space, m);
                    j["k_paper"] = k.k_paper;
                    j["k_exact"] = k.k_exact;
                }
            }
        } catch (const nscq::CapacityError &) {
            j["search_space"] = nullptr;
        }
        const auto queries = nscq::complexity::grover_query_count(inst.cycle_length,
                                                                  inst.num_nodes());
        j["quantum_queries"] = queries.quantum.evaluate();
        j["classical_queries"] = queries.classical.evaluate();
        *out = duplicate(j.dump(2) + "\n");
    });
}

void nscq_verify_options_init(nscq_verify_options *options) {
    if (options == nullptr) {
        return;
    }
    const nscq::bench::VerifyConfig defaults;
    options->instances = defaults.instances;
    options->seed = defaults.seed;
    options->max_nodes = defaults.max_nodes;
    options->max_iterations = defaults.max_iterations;
}

nscq_status nscq_verify(const nscq_verify_options *options, int *passed, char **report) {
    if (options == nullptr || passed == nullptr || report == nullptr) {
        return null_argument("options/passed/report");
    }
    return guarded([&] {
        nscq::bench::VerifyConfig cfg;
        cfg.instances = options->instances;
        cfg.seed = options->seed;
        cfg.max_nodes = options->max_nodes;
        cfg.max_iterations = options->max_iterations;
        const auto r = nscq::bench::run_verification(cfg);
        *report = duplicate(r.to_text());
        *passed = r.passed() ? 1 : 0;
    });
}

} // extern "C"
