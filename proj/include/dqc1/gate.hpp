// Copyright 2026 The dqc1sim Authors.
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

// Unitary sources for protocol rounds.
//
// A gate is a small expression tree. Leaves are explicit matrices or named
// generators resolved against the acting player's input; inner nodes reverse,
// control, sequence, or counter-dispatch their children. Gates never store
// their arity: it is the number of targets of the op that holds them.

#ifndef DQC1_GATE_HPP
#define DQC1_GATE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqc1/qstate.hpp"

namespace dqc1 {

/// One player's private input: a bit string, a matrix, or nothing.
struct PlayerInput {
    std::string bits;
    std::optional<Matrix> matrix;

    static PlayerInput from_bits(std::string b) {
        for (char c : b) {
            if (c != '0' && c != '1') throw DomainError("bit string may only contain 0 and 1: \"" + b + "\"");
        }
        return PlayerInput{std::move(b), std::nullopt};
    }
    static PlayerInput from_matrix(Matrix m) { return PlayerInput{"", std::move(m)}; }

    std::string label() const {
        if (matrix) return "matrix[" + std::to_string(matrix->rows()) + "]";
        return bits;
    }
    int bit(std::size_t i) const {
        if (i >= bits.size()) throw DomainError("input bit " + std::to_string(i) + " missing from \"" + bits + "\"");
        return bits[i] == '1';
    }
    /// Bits read as an unsigned integer, first character most significant.
    std::uint64_t value() const {
        std::uint64_t v = 0;
        for (char c : bits) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
        return v;
    }
};

using Inputs = std::vector<PlayerInput>;

struct Gate;
using GatePtr = std::shared_ptr<const Gate>;

struct SequenceItem {
    GatePtr gate;
    std::vector<int> targets;  // indices into the parent's targets
};

struct Gate {
    enum class Kind { Explicit, Generator, Dagger, Controlled, Sequence, Dispatch };
    Kind kind = Kind::Explicit;
    Matrix matrix;
    std::string name;
    json params;
    GatePtr child;
    int control_value = 1;
    std::vector<SequenceItem> items;
    int counter_width = 0;
    std::vector<GatePtr> branches;
    bool increment = false;
};

inline GatePtr explicit_gate(Matrix m) {
    Gate g;
    g.kind = Gate::Kind::Explicit;
    g.matrix = std::move(m);
    return std::make_shared<const Gate>(std::move(g));
}

inline GatePtr generator_gate(std::string name, json params = json::object()) {
    Gate g;
    g.kind = Gate::Kind::Generator;
    g.name = std::move(name);
    g.params = std::move(params);
    return std::make_shared<const Gate>(std::move(g));
}

inline GatePtr dagger(GatePtr child) {
    Gate g;
    g.kind = Gate::Kind::Dagger;
    g.child = std::move(child);
    return std::make_shared<const Gate>(std::move(g));
}

/// The control is local qubit 0; the child acts on the remaining targets.
inline GatePtr controlled(GatePtr child, int value = 1) {
    Gate g;
    g.kind = Gate::Kind::Controlled;
    g.child = std::move(child);
    g.control_value = value;
    return std::make_shared<const Gate>(std::move(g));
}

inline GatePtr sequence(std::vector<SequenceItem> items) {
    Gate g;
    g.kind = Gate::Kind::Sequence;
    g.items = std::move(items);
    return std::make_shared<const Gate>(std::move(g));
}

/// The first `width` targets hold a counter value v; branch v acts on the rest.
/// With `increment`, the counter then advances by one modulo 2^width.
inline GatePtr dispatch(int width, std::vector<GatePtr> branches, bool increment) {
    Gate g;
    g.kind = Gate::Kind::Dispatch;
    g.counter_width = width;
    g.branches = std::move(branches);
    g.increment = increment;
    return std::make_shared<const Gate>(std::move(g));
}

// ---------------------------------------------------------------------------
// Generator registry.

class GeneratorRegistry {
public:
    using Fn = std::function<Matrix(const json &params, int arity, const PlayerInput &input,
                                    const GeneratorRegistry &registry)>;

    void add(const std::string &name, Fn fn) {
        if (fns_.count(name)) throw ValidationError("generator \"" + name + "\" registered twice");
        fns_.emplace(name, std::move(fn));
    }
    bool contains(const std::string &name) const { return fns_.count(name) != 0; }
    const Fn &at(const std::string &name) const {
        auto it = fns_.find(name);
        if (it == fns_.end()) throw ValidationError("unknown generator \"" + name + "\"");
        return it->second;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto &kv : fns_) out.push_back(kv.first);
        return out;
    }

private:
    std::map<std::string, Fn> fns_;
};

// ---------------------------------------------------------------------------
// Lowering to local gates.

/// Classical counter state used by the trace backend: dispatch reads the
/// counter value instead of controlling on it.
struct CounterTracker {
    int num_qubits = 0;
    std::map<int, int> bit;  // counter qubit -> current classical value

    std::uint64_t read(const std::vector<int> &qs) const {
        std::uint64_t v = 0;
        for (int q : qs) v = (v << 1) | static_cast<std::uint64_t>(bit.at(q));
        return v;
    }
    void write(const std::vector<int> &qs, std::uint64_t v) {
        const int w = static_cast<int>(qs.size());
        for (int j = 0; j < w; ++j) bit[qs[j]] = static_cast<int>((v >> (w - 1 - j)) & 1);
    }
};

inline Matrix increment_matrix(int width) {
    const std::uint64_t r = std::uint64_t{1} << width;
    std::vector<std::uint64_t> perm(r);
    for (std::uint64_t v = 0; v < r; ++v) perm[v] = (v + 1) % r;
    return permutation_matrix(perm);
}

inline void lower_gate(const Gate &g, const std::vector<int> &targets, const PlayerInput &input,
                       const GeneratorRegistry &reg, std::vector<LocalGate> &out,
                       CounterTracker *counter = nullptr, bool nested = false) {
    const int arity = static_cast<int>(targets.size());
    switch (g.kind) {
        case Gate::Kind::Explicit:
            if (g.matrix.rows() != (Eigen::Index{1} << arity)) {
                throw DimensionError("explicit matrix of dim " + std::to_string(g.matrix.rows()) + " on " +
                                     std::to_string(arity) + " targets");
            }
            out.push_back(LocalGate{g.matrix, targets, {}, {}});
            return;
        case Gate::Kind::Generator: {
            Matrix m = reg.at(g.name)(g.params, arity, input, reg);
            if (m.rows() != (Eigen::Index{1} << arity) || m.cols() != m.rows()) {
                throw DimensionError("generator \"" + g.name + "\" returned dim " + std::to_string(m.rows()) +
                                     " for " + std::to_string(arity) + " targets");
            }
            out.push_back(LocalGate{std::move(m), targets, {}, {}});
            return;
        }
        case Gate::Kind::Dagger: {
            std::vector<LocalGate> tmp;
            lower_gate(*g.child, targets, input, reg, tmp, counter, true);
            for (auto it = tmp.rbegin(); it != tmp.rend(); ++it) {
                it->matrix = it->matrix.adjoint().eval();
                out.push_back(std::move(*it));
            }
            return;
        }
        case Gate::Kind::Controlled: {
            if (arity < 1) throw DimensionError("controlled gate needs a control target");
            std::vector<int> rest(targets.begin() + 1, targets.end());
            std::vector<LocalGate> tmp;
            lower_gate(*g.child, rest, input, reg, tmp, counter, true);
            for (auto &lg : tmp) {
                lg.controls.insert(lg.controls.begin(), targets[0]);
                lg.control_values.insert(lg.control_values.begin(), g.control_value);
                out.push_back(std::move(lg));
            }
            return;
        }
        case Gate::Kind::Sequence:
            for (const auto &item : g.items) {
                std::vector<int> sub;
                for (int t : item.targets) {
                    if (t < 0 || t >= arity) throw IndexError("sequence target " + std::to_string(t) + " out of range");
                    sub.push_back(targets[static_cast<std::size_t>(t)]);
                }
                lower_gate(*item.gate, sub, input, reg, out, counter, nested);
            }
            return;
        case Gate::Kind::Dispatch: {
            const int w = g.counter_width;
            if (w < 0 || w > arity) throw DimensionError("dispatch counter wider than its targets");
            if (g.branches.size() != (std::size_t{1} << w)) {
                throw DimensionError("dispatch needs 2^width branches");
            }
            std::vector<int> cq(targets.begin(), targets.begin() + w);
            std::vector<int> rest(targets.begin() + w, targets.end());
            if (counter) {
                if (nested) throw ShapeError("counter dispatch must not sit under dagger or control");
                const std::uint64_t v = counter->read(cq);
                lower_gate(*g.branches[v], rest, input, reg, out, counter, true);
                if (g.increment) counter->write(cq, (v + 1) % g.branches.size());
                return;
            }
            for (std::size_t v = 0; v < g.branches.size(); ++v) {
                std::vector<LocalGate> tmp;
                lower_gate(*g.branches[v], rest, input, reg, tmp, nullptr, true);
                for (auto &lg : tmp) {
                    for (int j = 0; j < w; ++j) {
                        lg.controls.push_back(cq[static_cast<std::size_t>(j)]);
                        lg.control_values.push_back(static_cast<int>((v >> (w - 1 - j)) & 1));
                    }
                    out.push_back(std::move(lg));
                }
            }
            if (g.increment && w > 0) out.push_back(LocalGate{increment_matrix(w), cq, {}, {}});
            return;
        }
    }
}

/// Full 2^arity matrix of a gate.
inline Matrix gate_matrix(const Gate &g, int arity, const PlayerInput &input, const GeneratorRegistry &reg) {
    std::vector<int> targets(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) targets[static_cast<std::size_t>(i)] = i;
    std::vector<LocalGate> lowered;
    lower_gate(g, targets, input, reg, lowered);
    Matrix m = identity(Eigen::Index{1} << arity);
    for (const auto &lg : lowered) apply_left(m, arity, lg);
    return m;
}

// ---------------------------------------------------------------------------
// Structured text form.

inline json gate_to_json(const Gate &g) {
    switch (g.kind) {
        case Gate::Kind::Explicit:
            return json{{"explicit", matrix_to_json(g.matrix)}};
        case Gate::Kind::Generator:
            return json{{"generator", g.name}, {"params", g.params}};
        case Gate::Kind::Dagger:
            return json{{"dagger", gate_to_json(*g.child)}};
        case Gate::Kind::Controlled:
            return json{{"controlled", gate_to_json(*g.child)}, {"value", g.control_value}};
        case Gate::Kind::Sequence: {
            json items = json::array();
            for (const auto &it : g.items) items.push_back(json{{"unitary", gate_to_json(*it.gate)}, {"targets", it.targets}});
            return json{{"sequence", std::move(items)}};
        }
        case Gate::Kind::Dispatch: {
            json br = json::array();
            for (const auto &b : g.branches) br.push_back(gate_to_json(*b));
            return json{{"dispatch", json{{"counter", g.counter_width}, {"increment", g.increment}, {"branches", std::move(br)}}}};
        }
    }
    return json();
}

inline std::vector<int> int_list_from_json(const json &j, const std::string &where) {
    if (!j.is_array()) throw ParseError("expected a list of integers", where);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw ParseError("expected an integer", where + "/" + std::to_string(i));
        out.push_back(j[i].get<int>());
    }
    return out;
}

inline GatePtr gate_from_json(const json &j, const std::string &where) {
    if (!j.is_object()) throw ParseError("unitary must be an object", where);
    if (j.contains("explicit")) return explicit_gate(matrix_from_json(j.at("explicit"), where + "/explicit"));
    if (j.contains("generator")) {
        if (!j.at("generator").is_string()) throw ParseError("generator name must be a string", where + "/generator");
        json params = j.contains("params") ? j.at("params") : json::object();
        return generator_gate(j.at("generator").get<std::string>(), std::move(params));
    }
    if (j.contains("dagger")) return dagger(gate_from_json(j.at("dagger"), where + "/dagger"));
    if (j.contains("controlled")) {
        int value = 1;
        if (j.contains("value")) {
            if (!j.at("value").is_number_integer()) throw ParseError("control value must be 0 or 1", where + "/value");
            value = j.at("value").get<int>();
        }
        return controlled(gate_from_json(j.at("controlled"), where + "/controlled"), value);
    }
    if (j.contains("sequence")) {
        const json &s = j.at("sequence");
        if (!s.is_array()) throw ParseError("sequence must be a list", where + "/sequence");
        std::vector<SequenceItem> items;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string w = where + "/sequence/" + std::to_string(i);
            if (!s[i].contains("unitary")) throw ParseError("sequence item is missing field \"unitary\"", w);
            if (!s[i].contains("targets")) throw ParseError("sequence item is missing field \"targets\"", w);
            items.push_back({gate_from_json(s[i].at("unitary"), w + "/unitary"), int_list_from_json(s[i].at("targets"), w + "/targets")});
        }
        return sequence(std::move(items));
    }
    if (j.contains("dispatch")) {
        const json &d = j.at("dispatch");
        const std::string w = where + "/dispatch";
        for (const char *f : {"counter", "increment", "branches"}) {
            if (!d.contains(f)) throw ParseError(std::string("dispatch is missing field \"") + f + "\"", w);
        }
        std::vector<GatePtr> br;
        for (std::size_t i = 0; i < d.at("branches").size(); ++i) {
            br.push_back(gate_from_json(d.at("branches")[i], w + "/branches/" + std::to_string(i)));
        }
        return dispatch(d.at("counter").get<int>(), std::move(br), d.at("increment").get<bool>());
    }
    throw ParseError("unitary needs one of explicit, generator, dagger, controlled, sequence, dispatch", where);
}

inline bool same_gate(const Gate &a, const Gate &b) { return gate_to_json(a) == gate_to_json(b); }

}  // namespace dqc1

#endif
