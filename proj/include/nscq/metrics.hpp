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

namespace nscq::bench {

struct SuccessMetrics {
    double success = 0.0;   // probability mass on the marked set
    double baseline = 0.0;  // M / N
    std::optional<double> ratio;  // success / baseline; absent when M = 0
};

/// `distribution` is indexed by encoded assignment; `marked` lists the
/// feasible indices. Throws StructuralError when the distribution does not
/// sum to 1 within 1e-6, has negative entries, or a marked index is out of
/// range.
SuccessMetrics success_metrics(std::span<const double> distribution,
                               std::span<const std::uint64_t> marked);

} // namespace nscq::bench
