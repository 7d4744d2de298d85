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

#include <nscq/metrics.hpp>

#include <nscq/error.hpp>

#include <cmath>

namespace nscq::bench {

SuccessMetrics success_metrics(std::span<const double> distribution,
                               std::span<const std::uint64_t> marked) {
    if (distribution.empty()) {
        throw StructuralError("success_metrics: empty distribution");
    }
    double total = 0.0;
    for (double p : distribution) {
        if (!(p >= -1e-15) || !std::isfinite(p)) {
            throw StructuralError("success_metrics: distribution has a negative or "
                                  "non-finite entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw StructuralError("success_metrics: distribution sums to " +
                              std::to_string(total) + ", expected 1");
    }
    SuccessMetrics m;
    for (auto index : marked) {
        if (index >= distribution.size()) {
            throw StructuralError("success_metrics: marked index out of range");
        }
        m.success += distribution[index];
    }
    m.baseline = static_cast<double>(marked.size()) / static_cast<double>(distribution.size());
    if (!marked.empty()) {
        m.ratio = m.success / m.baseline;
    }
    return m;
}

} // namespace nscq::bench
