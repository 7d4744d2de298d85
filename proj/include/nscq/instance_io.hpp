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

#include <nscq/nsc_model.hpp>

#include <string>
#include <string_view>

namespace nscq::model {

/// Instance file format (JSON, UTF-8):
///
///     { "nodes": 4, "cycle_length": 2, "threshold": 1, "mode": "binary",
///       "edges": [ { "i": 0, "j": 1, "pattern": [1, 1] },
///                  { "i": 1, "j": 2, "table": [0, 1] } ],
///       "seed": 7 }
///
/// Each edge carries either a periodic "table" of C values or, in binary
/// mode, a congestion "pattern" [a, b]. "seed" may be null.
std::string serialize(const NscInstance &instance);

/// Throws ParseError (with 1-based line/column for syntax errors) or
/// DomainError when the document is well-formed but violates an invariant.
NscInstance parse(std::string_view text);

NscInstance load(const std::string &path);
void save(const NscInstance &instance, const std::string &path);

} // namespace nscq::model
