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

#include <nscq/instance_io.hpp>

#include <nscq/error.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nscq::model {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

ParseError schema_error(const std::string &what) {
    return ParseError("instance schema: " + what, 0, 0);
}

const json &field(const json &obj, const char *name, const std::string &where) {
    auto it = obj.find(name);
    if (it == obj.end()) {
        throw schema_error(where + ": missing field \"" + name + "\"");
    }
    return *it;
}

template <typename T>
T integer(const json &value, const std::string &where) {
    if (!value.is_number_integer()) {
        throw schema_error(where + ": expected an integer");
    }
    if (value.is_number_unsigned()) {
        return static_cast<T>(value.get<std::uint64_t>());
    }
    const auto v = value.get<std::int64_t>();
    if (v < 0) {
        throw schema_error(where + ": expected a nonnegative integer");
    }
    return static_cast<T>(v);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

std::string serialize(const NscInstance &instance) {
    ordered_json doc;
    doc["nodes"] = instance.num_nodes();
    doc["cycle_length"] = instance.cycle_length;
    doc["threshold"] = instance.threshold;
    doc["mode"] = mode_name(instance.mode);
    ordered_json edges = ordered_json::array();
    const auto &arcs = instance.graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        ordered_json e;
        e["i"] = arcs[a].from;
        e["j"] = arcs[a].to;
        if (const auto *t = instance.delays[a].table()) {
            e["table"] = t->values();
        } else {
            const auto *p = instance.delays[a].pattern();
            e["pattern"] = {p->a, p->b};
        }
        edges.push_back(std::move(e));
    }
    doc["edges"] = std::move(edges);
    doc["seed"] = instance.seed ? ordered_json(*instance.seed) : ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

NscInstance parse(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("instance JSON syntax error at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " + e.what(),
                         line, column);
    }
    if (!doc.is_object()) {
        throw schema_error("top level must be an object");
    }

    NscInstance inst;
    const int nodes = integer<int>(field(doc, "nodes", "instance"), "nodes");
    inst.cycle_length = integer<int>(field(doc, "cycle_length", "instance"), "cycle_length");
    inst.threshold = integer<std::uint64_t>(field(doc, "threshold", "instance"), "threshold");
    const auto &mode = field(doc, "mode", "instance");
    if (mode == "binary") {
        inst.mode = Mode::Binary;
    } else if (mode == "general") {
        inst.mode = Mode::General;
    } else {
        throw schema_error("mode must be \"binary\" or \"general\"");
    }

    const auto &edges = field(doc, "edges", "instance");
    if (!edges.is_array()) {
        throw schema_error("edges must be an array");
    }
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto where = "edges[" + std::to_string(k) + "]";
        const auto &e = edges[k];
        if (!e.is_object()) {
            throw schema_error(where + " must be an object");
        }
        arcs.push_back({integer<int>(field(e, "i", where), where + ".i"),
                        integer<int>(field(e, "j", where), where + ".j")});
        const bool has_table = e.contains("table");
        const bool has_pattern = e.contains("pattern");
        if (has_table == has_pattern) {
            throw schema_error(where + ": exactly one of \"table\" or \"pattern\" is required");
        }
        if (has_table) {
            const auto &t = e["table"];
            if (!t.is_array()) {
                throw schema_error(where + ".table must be an array");
            }
            std::vector<std::uint32_t> values;
            for (std::size_t x = 0; x < t.size(); ++x) {
                values.push_back(
                    integer<std::uint32_t>(t[x], where + ".table[" + std::to_string(x) + "]"));
            }
            inst.delays.emplace_back(PeriodicDelayTable(std::move(values)));
        } else {
            const auto &p = e["pattern"];
            if (!p.is_array() || p.size() != 2) {
                throw schema_error(where + ".pattern must be [a, b]");
            }
            inst.delays.emplace_back(CongestionPattern{integer<int>(p[0], where + ".pattern"),
                                                       integer<int>(p[1], where + ".pattern")});
        }
    }
    inst.graph = NetworkGraph(nodes, std::move(arcs));

    if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
        inst.seed = integer<std::uint64_t>(*it, "seed");
    }
    inst.validate();
    return inst;
}

NscInstance load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open instance file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void save(const NscInstance &instance, const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write instance file '" + path + "'");
    }
    out << serialize(instance);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

} // namespace nscq::model
