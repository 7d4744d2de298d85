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

#include <nscq/nsc_model.hpp>

#include <nscq/error.hpp>
#include <nscq/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace nscq::model {

NetworkGraph::NetworkGraph(int num_nodes, std::vector<Arc> arcs)
    : num_nodes_(num_nodes), arcs_(std::move(arcs)) {
    if (num_nodes_ < 1) {
        throw StructuralError("graph needs at least one node");
    }
    if (arcs_.empty()) {
        throw StructuralError("graph needs at least one arc");
    }
    for (const auto &arc : arcs_) {
        if (arc.from < 0 || arc.from >= num_nodes_ || arc.to < 0 || arc.to >= num_nodes_) {
            throw StructuralError("arc (" + std::to_string(arc.from) + ", " +
                              std::to_string(arc.to) + ") references a missing node");
        }
        if (arc.from == arc.to) {
            throw StructuralError("self-loop on node " + std::to_string(arc.from));
        }
    }
}

bool NetworkGraph::is_connected() const {
    if (num_nodes_ == 0) {
        return false;
    }
    std::vector<int> parent(static_cast<std::size_t>(num_nodes_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    int components = num_nodes_;
    for (const auto &arc : arcs_) {
        const int a = find(arc.from);
        const int b = find(arc.to);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

PeriodicDelayTable::PeriodicDelayTable(std::vector<std::uint32_t> values)
    : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw DomainError("delay table needs a cycle length of at least 2");
    }
}

std::uint32_t PeriodicDelayTable::at(std::int64_t x) const noexcept {
    const auto c = static_cast<std::int64_t>(values_.size());
    const std::int64_t r = ((x % c) + c) % c;
    return values_[static_cast<std::size_t>(r)];
}

std::uint32_t PeriodicDelayTable::max_value() const noexcept {
    return values_.empty() ? 0U : *std::max_element(values_.begin(), values_.end());
}

std::uint32_t ArcDelay::operator()(int mu_i, int mu_j, int cycle_length) const {
    (void)cycle_length;
    if (const auto *t = table()) {
        return t->at(static_cast<std::int64_t>(mu_i) - mu_j);
    }
    const auto &p = std::get<CongestionPattern>(rep_);
    return (mu_i == p.a && mu_j == p.b) ? 1U : 0U;
}

std::uint32_t ArcDelay::max_value() const noexcept {
    if (const auto *t = table()) {
        return t->max_value();
    }
    return 1U;
}

const char *mode_name(Mode mode) noexcept {
    return mode == Mode::Binary ? "binary" : "general";
}

void NscInstance::validate() const {
    if (cycle_length < 2) {
        throw DomainError("cycle length must be at least 2");
    }
    if (graph.num_arcs() == 0) {
        throw DomainError("instance has no arcs");
    }
    if (delays.size() != graph.num_arcs()) {
        throw DomainError("expected one delay function per arc (" +
                          std::to_string(graph.num_arcs()) + "), got " +
                          std::to_string(delays.size()));
    }
    for (std::size_t a = 0; a < delays.size(); ++a) {
        const auto &d = delays[a];
        if (const auto *t = d.table()) {
            if (t->cycle_length() != cycle_length) {
                throw DomainError("arc " + std::to_string(a) + ": table length " +
                                  std::to_string(t->cycle_length()) +
                                  " differs from cycle length " +
                                  std::to_string(cycle_length));
            }
        } else {
            const auto *p = d.pattern();
            if (mode != Mode::Binary) {
                throw DomainError("arc " + std::to_string(a) +
                                  ": congestion patterns require binary mode");
            }
            if (p->a < 0 || p->a > 1 || p->b < 0 || p->b > 1) {
                throw DomainError("arc " + std::to_string(a) + ": pattern must be in {0,1}^2");
            }
        }
    }
    if (mode == Mode::Binary) {
        if (cycle_length != 2) {
            throw DomainError("binary mode requires cycle length 2");
        }
        for (const auto &d : delays) {
            if (d.max_value() > 1) {
                throw DomainError("binary mode requires delay values in {0, 1}");
            }
        }
    }
}

std::uint64_t NscInstance::search_space_size() const {
    std::uint64_t n = 1;
    for (int v = 0; v < num_nodes(); ++v) {
        if (n > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(cycle_length)) {
            throw CapacityError("search space C^|V| overflows 62 bits");
        }
        n *= static_cast<std::uint64_t>(cycle_length);
    }
    return n;
}

std::uint64_t NscInstance::max_total_delay() const noexcept {
    std::uint64_t total = 0;
    for (const auto &d : delays) {
        total += d.max_value();
    }
    return total;
}

bool NscInstance::all_difference_based() const noexcept {
    return std::all_of(delays.begin(), delays.end(),
                       [](const ArcDelay &d) { return d.depends_only_on_difference(); });
}

std::uint64_t encode(std::span<const int> mu, int cycle_length) {
    std::uint64_t index = 0;
    for (std::size_t v = mu.size(); v-- > 0;) {
        index = index * static_cast<std::uint64_t>(cycle_length) +
                static_cast<std::uint64_t>(mu[v]);
    }
    return index;
}

OffsetAssignment decode(std::uint64_t index, int num_nodes, int cycle_length) {
    OffsetAssignment mu(static_cast<std::size_t>(num_nodes));
    for (auto &m : mu) {
        m = static_cast<int>(index % static_cast<std::uint64_t>(cycle_length));
        index /= static_cast<std::uint64_t>(cycle_length);
    }
    return mu;
}

namespace {

void check_assignment(const NscInstance &instance, std::span<const int> mu) {
    if (mu.size() != static_cast<std::size_t>(instance.num_nodes())) {
        throw DomainError("assignment has " + std::to_string(mu.size()) +
                          " offsets, instance has " + std::to_string(instance.num_nodes()) +
                          " nodes");
    }
    for (std::size_t v = 0; v < mu.size(); ++v) {
        if (mu[v] < 0 || mu[v] >= instance.cycle_length) {
            throw DomainError("offset of node " + std::to_string(v) + " is " +
                              std::to_string(mu[v]) + ", outside [0, " +
                              std::to_string(instance.cycle_length) + ")");
        }
    }
}

std::uint64_t delay_unchecked(const NscInstance &instance, std::span<const int> mu) {
    std::uint64_t total = 0;
    const auto &arcs = instance.graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        total += instance.delays[a](mu[arcs[a].from], mu[arcs[a].to], instance.cycle_length);
    }
    return total;
}

void check_enumerable(const NscInstance &instance) {
    const auto n = instance.search_space_size();
    if (n > kEnumerationCap) {
        throw CapacityError("exhaustive enumeration is capped at 2^24 assignments, "
                            "instance has " + std::to_string(n));
    }
}

} // namespace

std::uint64_t total_delay(const NscInstance &instance, std::span<const int> mu) {
    check_assignment(instance, mu);
    return delay_unchecked(instance, mu);
}

bool kappa(const NscInstance &instance, std::span<const int> mu) {
    return total_delay(instance, mu) <= instance.threshold;
}

std::vector<bool> feasibility_mask(const NscInstance &instance) {
    instance.validate();
    check_enumerable(instance);
    const auto n = instance.search_space_size();
    std::vector<bool> mask(n);
    OffsetAssignment mu(static_cast<std::size_t>(instance.num_nodes()), 0);
    for (std::uint64_t index = 0; index < n; ++index) {
        mask[index] = delay_unchecked(instance, mu) <= instance.threshold;
        // odometer increment matching encode()'s digit order
        for (auto &m : mu) {
            if (++m < instance.cycle_length) {
                break;
            }
            m = 0;
        }
    }
    return mask;
}

FeasibleSet feasible_set(const NscInstance &instance) {
    const auto mask = feasibility_mask(instance);
    FeasibleSet set;
    set.search_space = mask.size();
    for (std::uint64_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            set.members.push_back(i);
        }
    }
    return set;
}

RobustParams RobustParams::from_delta(std::uint64_t delta) {
    if (delta < 1) {
        throw DomainError("delta must be at least 1");
    }
    RobustParams p;
    p.delta_ = delta;
    return p;
}

RobustParams RobustParams::from_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    RobustParams p;
    p.alpha_ = alpha;
    return p;
}

std::uint64_t RobustParams::delta(std::uint64_t search_space) const {
    std::uint64_t d = delta_;
    if (alpha_) {
        const double x = *alpha_ * static_cast<double>(search_space);
        const double nearest = std::round(x);
        // alpha*N that is an integer up to rounding noise is not bumped up
        d = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)
                ? static_cast<std::uint64_t>(nearest)
                : static_cast<std::uint64_t>(std::ceil(x));
        d = std::max<std::uint64_t>(d, 1);
    }
    if (d > search_space) {
        throw DomainError("delta " + std::to_string(d) + " exceeds search space size " +
                          std::to_string(search_space));
    }
    return d;
}

const char *verdict_name(Verdict verdict) noexcept {
    switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

RobustDecision robust_decision_classical(const NscInstance &instance,
                                         const RobustParams &params) {
    const auto set = feasible_set(instance);
    RobustDecision d;
    d.search_space = set.search_space;
    d.feasible_count = set.count();
    d.delta = params.delta(set.search_space);
    d.verdict = d.feasible_count >= d.delta ? Verdict::Holds : Verdict::Fails;
    return d;
}

namespace {

/// Decodes a Pruefer sequence into the edge list of its labeled tree.
std::vector<std::pair<int, int>> pruefer_tree(const std::vector<int> &sequence, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int x : sequence) {
        ++degree[x];
    }
    std::vector<std::pair<int, int>> edges;
    for (int x : sequence) {
        int leaf = 0;
        while (degree[leaf] != 1) {
            ++leaf;
        }
        edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
        --degree[leaf];
        --degree[x];
    }
    int u = -1;
    for (int v = 0; v < n; ++v) {
        if (degree[v] == 1) {
            if (u < 0) {
                u = v;
            } else {
                edges.emplace_back(u, v);
                break;
            }
        }
    }
    return edges;
}

} // namespace

NscInstance random_instance(int num_nodes, std::uint64_t seed, Mode mode,
                            std::uint64_t threshold, int cycle_length,
                            std::uint32_t max_delay) {
    // n+1 distinct simple edges need n(n-1)/2 >= n+1, i.e. n >= 4.
    if (num_nodes < 4) {
        throw DomainError("random_instance needs at least 4 nodes to place n+1 distinct "
                          "edges, got " + std::to_string(num_nodes));
    }
    if (mode == Mode::Binary) {
        cycle_length = 2;
    } else if (cycle_length < 2) {
        throw DomainError("cycle length must be at least 2");
    }
    Rng rng(seed);
    const auto n = static_cast<std::uint64_t>(num_nodes);
    std::vector<int> sequence(static_cast<std::size_t>(num_nodes - 2));
    for (auto &s : sequence) {
        s = static_cast<int>(rng.below(n));
    }
    auto tree = pruefer_tree(sequence, num_nodes);
    std::set<std::pair<int, int>> edges(tree.begin(), tree.end());
    while (edges.size() < n + 1) {
        const int u = static_cast<int>(rng.below(n));
        const int v = static_cast<int>(rng.below(n));
        if (u != v) {
            edges.emplace(std::min(u, v), std::max(u, v));
        }
    }

    NscInstance inst;
    std::vector<Arc> arcs;
    for (const auto &[u, v] : edges) {
        arcs.push_back({u, v});
    }
    inst.graph = NetworkGraph(num_nodes, std::move(arcs));
    inst.cycle_length = cycle_length;
    inst.threshold = threshold;
    inst.mode = mode;
    inst.seed = seed;
    for (std::size_t a = 0; a < edges.size(); ++a) {
        if (mode == Mode::Binary) {
            const int pa = static_cast<int>(rng.below(2));
            const int pb = static_cast<int>(rng.below(2));
            inst.delays.emplace_back(CongestionPattern{pa, pb});
        } else {
            std::vector<std::uint32_t> values(static_cast<std::size_t>(cycle_length));
            for (auto &v : values) {
                v = static_cast<std::uint32_t>(rng.below(std::uint64_t{max_delay} + 1));
            }
            inst.delays.emplace_back(PeriodicDelayTable(std::move(values)));
        }
    }
    inst.validate();
    return inst;
}

SamplingResult classical_random_sampling(const NscInstance &instance, std::uint64_t seed,
                                         std::uint64_t max_trials) {
    if (max_trials < 1) {
        throw DomainError("max_trials must be at least 1");
    }
    instance.validate();
    Rng rng(seed);
    OffsetAssignment mu(static_cast<std::size_t>(instance.num_nodes()));
    SamplingResult result;
    for (std::uint64_t trial = 1; trial <= max_trials; ++trial) {
        for (auto &m : mu) {
            m = static_cast<int>(rng.below(static_cast<std::uint64_t>(instance.cycle_length)));
        }
        ++result.draws;
        if (delay_unchecked(instance, mu) <= instance.threshold) {
            result.trials = trial;
            return result;
        }
    }
    return result;
}

} // namespace nscq::model
