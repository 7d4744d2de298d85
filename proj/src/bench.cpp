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

#include <nscq/complexity.hpp>
#include <nscq/error.hpp>
#include <nscq/gadgets.hpp>
#include <nscq/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace nscq::bench {

using grover::Backend;

namespace {

std::string number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

template <typename T>
std::string optional_field(const std::optional<T> &v) {
    if (!v) {
        return {};
    }
    if constexpr (std::is_floating_point_v<T>) {
        return number(*v);
    } else {
        return std::to_string(*v);
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

SweepRow evaluate_cell(const model::NscInstance &instance, const RunOptions &options) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.n = instance.num_nodes();
    row.threshold = instance.threshold;
    row.iterations = options.iterations;
    row.seed = instance.seed.value_or(0);
    row.backend = options.backend;
    row.shots = options.sample ? options.shots : 0;
    row.noise_rate = options.backend == Backend::Noisy ? options.noise_rate : 0.0;

    try {
        row.search_space = instance.search_space_size();
    } catch (const CapacityError &) {
        row.status = "skipped:search_space";
        return row;
    }
    if (row.search_space > model::kEnumerationCap) {
        row.status = "skipped:enumeration";
        return row;
    }
    const auto mask = model::feasibility_mask(instance);
    const auto m = static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), true));
    row.feasible_count = m;
    if (m > 0) {
        const auto k = complexity::optimal_iterations(row.search_space, m);
        row.k_paper = k.k_paper;
        row.k_exact = k.k_exact;
    }
    if (options.backend != Backend::Fast) {
        const auto layout = gadgets::layout(instance);
        if (layout.total_qubits > sv::kMaxQubits) {
            row.status = "skipped:capacity";
            row.wall_time = seconds_since(start);
            return row;
        }
    }

    const std::uint64_t shots = options.sample ? options.shots : 0;
    try {
        grover::SearchOutcome out;
        switch (options.backend) {
        case Backend::Fast:
            out = grover::grover_search_fast(instance, options.iterations, shots, options.seed);
            break;
        case Backend::Gate:
            out = grover::grover_search_gate_level(instance, options.iterations, shots,
                                                   options.seed);
            break;
        case Backend::Noisy:
            out = grover::grover_search_noisy(instance, options.iterations, options.noise_rate,
                                              options.trajectories, options.seed, shots);
            break;
        }
        row.success = out.success_probability;
        row.baseline = out.baseline;
        row.ratio = out.ratio;
        row.sampled_success = out.sampled_success;
    } catch (const CapacityError &) {
        row.status = "skipped:capacity";
    } catch (const DomainError &e) {
        // e.g. gate level with a cycle length that is not a power of two
        row.status = "skipped:unsupported";
    }
    row.wall_time = seconds_since(start);
    return row;
}

void SweepConfig::validate() const {
    if (nodes.empty() || thresholds.empty() || iterations.empty()) {
        throw DomainError("sweep ranges must be non-empty");
    }
    for (int n : nodes) {
        if (n < 4) {
            throw DomainError("sweep node sizes must be at least 4");
        }
    }
    for (int k : iterations) {
        if (k < 0 || k > grover::kMaxIterations) {
            throw DomainError("sweep iteration counts must lie in [0, 64]");
        }
    }
    if (seeds_per_size < 1) {
        throw DomainError("seeds per size must be at least 1");
    }
    if (run.shots < 1) {
        throw DomainError("shots must be at least 1");
    }
    if (!(run.noise_rate >= 0.0 && run.noise_rate <= 1.0)) {
        throw DomainError("noise rate must lie in [0, 1]");
    }
    if (run.trajectories < 1) {
        throw DomainError("trajectories must be at least 1");
    }
    if (workers < 0) {
        throw DomainError("worker count must be nonnegative");
    }
}

std::uint64_t instance_seed(std::uint64_t master, int n, int replicate) {
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(n)),
                       static_cast<std::uint64_t>(replicate));
}

std::vector<SweepRow> run_sweep(const SweepConfig &config) {
    config.validate();
    struct Group {
        int n;
        int replicate;
    };
    std::vector<Group> groups;
    for (int n : config.nodes) {
        for (int r = 0; r < config.seeds_per_size; ++r) {
            groups.push_back({n, r});
        }
    }
    const std::size_t per_group = config.thresholds.size() * config.iterations.size();
    std::vector<SweepRow> rows(groups.size() * per_group);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t g = next++; g < groups.size(); g = next++) {
            try {
                const auto seed = instance_seed(config.master_seed, groups[g].n,
                                                groups[g].replicate);
                auto instance = model::random_instance(groups[g].n, seed, model::Mode::Binary);
                std::size_t slot = g * per_group;
                for (auto k_threshold : config.thresholds) {
                    instance.threshold = k_threshold;
                    for (int k : config.iterations) {
                        RunOptions opts = config.run;
                        opts.iterations = k;
                        opts.seed = derive_seed(derive_seed(seed, k_threshold),
                                                static_cast<std::uint64_t>(k));
                        rows[slot++] = evaluate_cell(instance, opts);
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    unsigned count = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                        : std::max(1U, std::thread::hardware_concurrency());
    count = std::min<unsigned>(count, static_cast<unsigned>(groups.size()));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < count; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow> &rows, bool include_wall_time) {
    std::ostringstream out;
    out << "n,K,k,seed,N,M,k_paper,k_exact,success,baseline,ratio,backend,shots,noise_rate,"
           "status,sampled_success";
    if (include_wall_time) {
        out << ",wall_time";
    }
    out << '\n';
    for (const auto &r : rows) {
        out << r.n << ',' << r.threshold << ',' << r.iterations << ',' << r.seed << ','
            << r.search_space << ',' << optional_field(r.feasible_count) << ','
            << optional_field(r.k_paper) << ',' << optional_field(r.k_exact) << ','
            << optional_field(r.success) << ',' << optional_field(r.baseline) << ','
            << optional_field(r.ratio) << ',' << grover::backend_name(r.backend) << ','
            << r.shots << ',' << number(r.noise_rate) << ',' << r.status << ','
            << optional_field(r.sampled_success);
        if (include_wall_time) {
            out << ',' << number(r.wall_time);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<SweepRow> &rows, bool include_wall_time) {
    using ordered_json = nlohmann::ordered_json;
    auto opt = [](const auto &v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json doc = ordered_json::array();
    for (const auto &r : rows) {
        ordered_json o;
        o["n"] = r.n;
        o["K"] = r.threshold;
        o["k"] = r.iterations;
        o["seed"] = r.seed;
        o["N"] = r.search_space;
        o["M"] = opt(r.feasible_count);
        o["k_paper"] = opt(r.k_paper);
        o["k_exact"] = opt(r.k_exact);
        o["success"] = opt(r.success);
        o["baseline"] = opt(r.baseline);
        o["ratio"] = opt(r.ratio);
        o["backend"] = grover::backend_name(r.backend);
        o["shots"] = r.shots;
        o["noise_rate"] = r.noise_rate;
        o["status"] = r.status;
        o["sampled_success"] = opt(r.sampled_success);
        if (include_wall_time) {
            o["wall_time"] = r.wall_time;
        }
        doc.push_back(std::move(o));
    }
    return doc.dump(2) + "\n";
}

std::string to_svg(const std::vector<SweepRow> &rows) {
    struct Acc {
        double success = 0.0;
        double baseline = 0.0;
        int count = 0;
    };
    // (K, k) -> n -> running sums
    std::map<std::pair<std::uint64_t, int>, std::map<int, Acc>> series;
    int n_min = 1 << 30;
    int n_max = -1;
    for (const auto &r : rows) {
        if (!r.success || !r.baseline) {
            continue;
        }
        auto &acc = series[{r.threshold, r.iterations}][r.n];
        acc.success += *r.success;
        acc.baseline += *r.baseline;
        ++acc.count;
        n_min = std::min(n_min, r.n);
        n_max = std::max(n_max, r.n);
    }

    const double width = 640;
    const double height = 400;
    const double left = 60;
    const double right = 170;
    const double top = 30;
    const double bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    if (n_max < n_min) {
        n_min = 0;
        n_max = 1;
    }
    const double span = std::max(1, n_max - n_min);
    auto px = [&](int n) { return left + plot_w * (n - n_min) / span; };
    auto py = [&](double p) { return top + plot_h * (1.0 - p); };
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
           "Success probability vs input size (n)</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left << "\" y2=\""
        << py(1) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double p = i / 4.0;
        out << "<text x=\"" << left - 8 << "\" y=\"" << py(p) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << number(p) << "</text>\n";
    }
    for (int n = n_min; n <= n_max; ++n) {
        out << "<text x=\"" << px(n) << "\" y=\"" << py(0) + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n
            << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n</text>\n";

    std::size_t index = 0;
    for (const auto &[key, by_n] : series) {
        const char *color = colors[index % (sizeof colors / sizeof colors[0])];
        std::ostringstream success_pts;
        std::ostringstream baseline_pts;
        for (const auto &[n, acc] : by_n) {
            success_pts << number(px(n)) << ',' << number(py(acc.success / acc.count)) << ' ';
            baseline_pts << number(px(n)) << ',' << number(py(acc.baseline / acc.count)) << ' ';
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << success_pts.str() << "\"/>\n";
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-dasharray=\"4 3\" points=\"" << baseline_pts.str() << "\"/>\n";
        const double ly = top + 16.0 * static_cast<double>(index);
        out << "<text x=\"" << left + plot_w + 12 << "\" y=\"" << ly + 10 << "\" fill=\""
            << color << "\" font-family=\"sans-serif\" font-size=\"11\">(K, k) = ("
            << key.first << ", " << key.second << ")</text>\n";
        ++index;
    }
    out << "<text x=\"" << left + plot_w + 12 << "\" y=\""
        << top + 16.0 * static_cast<double>(index) + 10
        << "\" font-family=\"sans-serif\" font-size=\"11\">dashed: baseline M/N</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::vector<model::NscInstance> make_ensemble(int count, std::uint64_t master_seed,
                                              int min_nodes, int max_nodes) {
    if (count < 1 || min_nodes < 4 || max_nodes < min_nodes) {
        throw DomainError("ensemble needs count >= 1 and 4 <= min_nodes <= max_nodes");
    }
    std::vector<model::NscInstance> out;
    const int sizes = max_nodes - min_nodes + 1;
    for (int i = 0; i < count; ++i) {
        const int n = min_nodes + i % sizes;
        const std::uint64_t threshold = 1 + static_cast<std::uint64_t>((i / sizes) % 2);
        out.push_back(model::random_instance(n, derive_seed(master_seed, static_cast<std::uint64_t>(i)),
                                             model::Mode::Binary, threshold));
    }
    return out;
}

} // namespace nscq::bench
