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

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace nscq::model {

struct Arc {
    int from = 0;
    int to = 0;
    bool operator==(const Arc &) const = default;
};

class NetworkGraph {
  public:
    NetworkGraph() = default;
    /// Throws StructuralError on self-loops, bad indices, or an empty arc list.
    NetworkGraph(int num_nodes, std::vector<Arc> arcs);

    [[nodiscard]] int num_nodes() const noexcept { return num_nodes_; }
    [[nodiscard]] const std::vector<Arc> &arcs() const noexcept { return arcs_; }
    [[nodiscard]] std::size_t num_arcs() const noexcept { return arcs_.size(); }

    /// Connectivity of the underlying undirected graph.
    [[nodiscard]] bool is_connected() const;

    bool operator==(const NetworkGraph &) const = default;

  private:
    int num_nodes_ = 0;
    std::vector<Arc> arcs_;
};

/// h(x) for x = (mu_i - mu_j) mod C, stored as its C values.
class PeriodicDelayTable {
  public:
    PeriodicDelayTable() = default;
    /// Cycle length is values.size(); throws DomainError when < 2.
    explicit PeriodicDelayTable(std::vector<std::uint32_t> values);

    [[nodiscard]] int cycle_length() const noexcept { return static_cast<int>(values_.size()); }
    [[nodiscard]] const std::vector<std::uint32_t> &values() const noexcept { return values_; }

    /// Periodic lookup: any integer x, reduced modulo C.
    [[nodiscard]] std::uint32_t at(std::int64_t x) const noexcept;
    [[nodiscard]] std::uint32_t max_value() const noexcept;

    bool operator==(const PeriodicDelayTable &) const = default;

  private:
    std::vector<std::uint32_t> values_;
};

/// Binary congestion indicator: delay 1 iff (mu_i, mu_j) == (a, b).
/// This is what a single Toffoli with optionally negated controls computes.
struct CongestionPattern {
    int a = 1;
    int b = 1;
    bool operator==(const CongestionPattern &) const = default;
};

/// Per-arc delay function: a periodic difference table or, in binary mode,
/// a congestion pattern on the endpoint offsets.
class ArcDelay {
  public:
    ArcDelay() = default;
    ArcDelay(PeriodicDelayTable table) : rep_(std::move(table)) {}
    ArcDelay(CongestionPattern pattern) : rep_(pattern) {}

    [[nodiscard]] std::uint32_t operator()(int mu_i, int mu_j, int cycle_length) const;
    [[nodiscard]] std::uint32_t max_value() const noexcept;
    [[nodiscard]] bool depends_only_on_difference() const noexcept {
        return std::holds_alternative<PeriodicDelayTable>(rep_);
    }
    [[nodiscard]] const PeriodicDelayTable *table() const noexcept {
        return std::get_if<PeriodicDelayTable>(&rep_);
    }
    [[nodiscard]] const CongestionPattern *pattern() const noexcept {
        return std::get_if<CongestionPattern>(&rep_);
    }

    bool operator==(const ArcDelay &) const = default;

  private:
    std::variant<PeriodicDelayTable, CongestionPattern> rep_;
};

enum class Mode { Binary, General };

const char *mode_name(Mode mode) noexcept;

struct NscInstance {
    NetworkGraph graph;
    int cycle_length = 2;
    std::vector<ArcDelay> delays;
    std::uint64_t threshold = 1;
    Mode mode = Mode::Binary;
    std::optional<std::uint64_t> seed;

    /// Checks the cross-field invariants; throws DomainError.
    void validate() const;

    [[nodiscard]] int num_nodes() const noexcept { return graph.num_nodes(); }
    [[nodiscard]] std::size_t num_arcs() const noexcept { return graph.num_arcs(); }
    /// C^|V|; throws CapacityError when it does not fit in 62 bits.
    [[nodiscard]] std::uint64_t search_space_size() const;
    /// Sum over arcs of the largest delay value.
    [[nodiscard]] std::uint64_t max_total_delay() const noexcept;
    [[nodiscard]] bool all_difference_based() const noexcept;

    bool operator==(const NscInstance &) const = default;
};

/// Offsets, one per node, each in [0, C).
using OffsetAssignment = std::vector<int>;

/// Mixed-radix index of an assignment: sum_v mu_v * C^v.
std::uint64_t encode(std::span<const int> mu, int cycle_length);
OffsetAssignment decode(std::uint64_t index, int num_nodes, int cycle_length);

std::uint64_t total_delay(const NscInstance &instance, std::span<const int> mu);
bool kappa(const NscInstance &instance, std::span<const int> mu);

/// Largest search space the exhaustive routines will enumerate.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

struct FeasibleSet {
    std::uint64_t search_space = 0;           // N
    std::vector<std::uint64_t> members;       // encoded assignments, ascending
    [[nodiscard]] std::uint64_t count() const noexcept { return members.size(); }
};

FeasibleSet feasible_set(const NscInstance &instance);

/// kappa for every encoded assignment 0..N-1.
std::vector<bool> feasibility_mask(const NscInstance &instance);

/// Robustness requirement given as an explicit count or as a fraction of N.
class RobustParams {
  public:
    static RobustParams from_delta(std::uint64_t delta);
    static RobustParams from_alpha(double alpha);

    /// delta itself, or ceil(alpha * N). Throws DomainError when delta > N.
    [[nodiscard]] std::uint64_t delta(std::uint64_t search_space) const;
    [[nodiscard]] std::optional<double> alpha() const noexcept { return alpha_; }

  private:
    std::uint64_t delta_ = 1;
    std::optional<double> alpha_;
};

enum class Verdict { Holds, Fails, Inconclusive };

const char *verdict_name(Verdict verdict) noexcept;

struct RobustDecision {
    Verdict verdict = Verdict::Fails;
    std::uint64_t feasible_count = 0;  // M
    std::uint64_t delta = 0;
    std::uint64_t search_space = 0;
};

RobustDecision robust_decision_classical(const NscInstance &instance, const RobustParams &params);

/// Random connected graph with n nodes and n+1 edges: a uniform labeled tree
/// from a Pruefer sequence plus two extra distinct edges, oriented low to
/// high. Binary mode draws a congestion pattern per edge; general mode draws
/// a periodic table with values in [0, max_delay].
NscInstance random_instance(int num_nodes, std::uint64_t seed, Mode mode = Mode::Binary,
                            std::uint64_t threshold = 1, int cycle_length = 2,
                            std::uint32_t max_delay = 3);

struct SamplingResult {
    std::optional<std::uint64_t> trials;  // empty when the budget ran out
    std::uint64_t draws = 0;
};

SamplingResult classical_random_sampling(const NscInstance &instance, std::uint64_t seed,
                                         std::uint64_t max_trials);

} // namespace nscq::model
