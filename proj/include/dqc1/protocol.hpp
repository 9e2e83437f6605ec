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

// Protocol representation, validation, communication and cost accounting.

#ifndef DQC1_PROTOCOL_HPP
#define DQC1_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dqc1/gate.hpp"
#include "dqc1/generators.hpp"
#include "dqc1/qstate.hpp"

namespace dqc1 {

enum class Mode { Clocked, SemiUnclocked };
enum class Channel { Ghosted, Fixed };

struct Op {
    GatePtr unitary;
    std::vector<int> targets;
};

struct RoundAction {
    int player = 0;
    std::vector<Op> ops;
    std::vector<int> message;
    int to = -1;  // receiver, or -1 when nothing is sent
};

/// Clean qubits 0..clean-1 start in |0>, mixed qubits clean..total-1 in I/2.
/// owners[q] is the player holding qubit q before the first round.
struct RegisterLayout {
    int clean = 0;
    int mixed = 0;
    std::vector<int> owners;

    int total() const { return clean + mixed; }
    bool is_clean(int q) const { return q < clean; }
};

struct Measurement {
    enum class Kind { Projector, SingleQubit };
    Kind kind = Kind::SingleQubit;
    Matrix projector;         // Projector kind only
    std::vector<int> qubits;  // measured qubits, in projector order
    int accept_outcome = 0;   // SingleQubit kind only

    static Measurement single_qubit(int q, int outcome = 0) {
        Measurement m;
        m.kind = Kind::SingleQubit;
        m.qubits = {q};
        m.accept_outcome = outcome;
        return m;
    }
    static Measurement projector_on(Matrix p, std::vector<int> qs) {
        Measurement m;
        m.kind = Kind::Projector;
        m.projector = std::move(p);
        m.qubits = std::move(qs);
        return m;
    }
    Matrix as_projector() const {
        if (kind == Kind::Projector) return projector;
        return basis_projector(1, static_cast<std::uint64_t>(accept_outcome));
    }
};

struct DeclaredBias {
    double p = 0.5;
    double eps = 0.5;
};

/// Marks a Hadamard-test shaped protocol: `control` is the test qubit and
/// `counter` the round-counter register added by unclocking.
struct TraceFormTag {
    int control = 0;
    std::vector<int> counter;
};

struct ProtocolSpec {
    std::string name;
    int players = 2;
    RegisterLayout layout;
    std::vector<RoundAction> rounds;
    Mode mode = Mode::Clocked;
    Channel channel = Channel::Ghosted;
    Measurement measurement;
    DeclaredBias declared;
    std::optional<TraceFormTag> trace_form;

    int qubits() const { return layout.total(); }
};

struct Violation {
    std::string code;
    std::string message;
};

// ---------------------------------------------------------------------------
// Ownership replay.

/// Player holding the measured qubits at the end.
inline int measuring_player(const ProtocolSpec &p) {
    if (p.rounds.empty()) {
        if (p.measurement.qubits.empty() || p.layout.owners.empty()) return 0;
        const int q = p.measurement.qubits.front();
        return q >= 0 && q < static_cast<int>(p.layout.owners.size()) ? p.layout.owners[static_cast<std::size_t>(q)] : 0;
    }
    const RoundAction &last = p.rounds.back();
    return last.message.empty() ? last.player : last.to;
}

/// Owners after all rounds (assumes a valid schedule).
inline std::vector<int> final_owners(const ProtocolSpec &p) {
    std::vector<int> own = p.layout.owners;
    for (const auto &r : p.rounds)
        for (int q : r.message) own[static_cast<std::size_t>(q)] = r.to;
    return own;
}

inline int communication_of(const ProtocolSpec &p) {
    int c = 0;
    for (const auto &r : p.rounds) c += static_cast<int>(r.message.size());
    return c;
}

// ---------------------------------------------------------------------------
// Validation.

namespace detail {

inline void validate_gate(const Gate &g, int arity, const GeneratorRegistry &reg, const std::string &where,
                          std::vector<Violation> &out) {
    switch (g.kind) {
        case Gate::Kind::Explicit:
            if (g.matrix.rows() != g.matrix.cols() || g.matrix.rows() != (Eigen::Index{1} << arity)) {
                out.push_back({"gate", where + ": explicit matrix of dim " + std::to_string(g.matrix.rows()) +
                                           " does not match " + std::to_string(arity) + " targets"});
            } else if (!is_unitary(g.matrix)) {
                out.push_back({"unitarity", where + ": explicit matrix is not unitary (max |U^dag U - I| = " +
                                                std::to_string(max_abs(g.matrix.adjoint() * g.matrix - identity(g.matrix.rows()))) + ")"});
            }
            return;
        case Gate::Kind::Generator:
            if (!reg.contains(g.name)) out.push_back({"gate", where + ": unknown generator \"" + g.name + "\""});
            return;
        case Gate::Kind::Dagger:
            validate_gate(*g.child, arity, reg, where + "/dagger", out);
            return;
        case Gate::Kind::Controlled:
            if (arity < 1) {
                out.push_back({"gate", where + ": controlled gate without targets"});
                return;
            }
            if (g.control_value != 0 && g.control_value != 1) out.push_back({"gate", where + ": control value must be 0 or 1"});
            validate_gate(*g.child, arity - 1, reg, where + "/controlled", out);
            return;
        case Gate::Kind::Sequence:
            for (std::size_t i = 0; i < g.items.size(); ++i) {
                const auto &it = g.items[i];
                std::set<int> seen;
                bool ok = true;
                for (int t : it.targets) {
                    if (t < 0 || t >= arity || !seen.insert(t).second) ok = false;
                }
                const std::string w = where + "/sequence/" + std::to_string(i);
                if (!ok) {
                    out.push_back({"gate", w + ": bad local targets"});
                    continue;
                }
                validate_gate(*it.gate, static_cast<int>(it.targets.size()), reg, w, out);
            }
            return;
        case Gate::Kind::Dispatch:
            if (g.counter_width < 0 || g.counter_width > arity ||
                g.branches.size() != (std::size_t{1} << std::max(0, g.counter_width))) {
                out.push_back({"gate", where + ": dispatch needs 2^width branches and width <= targets"});
                return;
            }
            for (std::size_t i = 0; i < g.branches.size(); ++i) {
                validate_gate(*g.branches[i], arity - g.counter_width, reg, where + "/branch/" + std::to_string(i), out);
            }
            return;
    }
}

inline std::set<int> as_set(const std::vector<int> &v) { return std::set<int>(v.begin(), v.end()); }

}  // namespace detail

inline std::vector<Violation> validate(const ProtocolSpec &p, const GeneratorRegistry &reg = default_registry()) {
    std::vector<Violation> out;
    const int q = p.layout.total();
    if (p.players != 2 && p.players != 3) out.push_back({"players", "player count must be 2 or 3"});
    if (p.layout.clean < 0 || p.layout.mixed < 0) out.push_back({"layout", "negative register size"});
    if (static_cast<int>(p.layout.owners.size()) != q) {
        out.push_back({"layout", "owners list has " + std::to_string(p.layout.owners.size()) + " entries for " +
                                     std::to_string(q) + " qubits"});
        return out;
    }
    for (int i = 0; i < q; ++i) {
        const int o = p.layout.owners[static_cast<std::size_t>(i)];
        if (o < 0 || o >= p.players) out.push_back({"layout", "qubit " + std::to_string(i) + " has invalid owner"});
    }
    if (!out.empty()) return out;

    std::vector<int> own = p.layout.owners;
    auto check_list = [&](const std::vector<int> &qs, int player, const std::string &where, const char *code) {
        std::set<int> seen;
        for (int x : qs) {
            if (x < 0 || x >= q) {
                out.push_back({code, where + ": qubit " + std::to_string(x) + " out of range"});
                continue;
            }
            if (!seen.insert(x).second) out.push_back({code, where + ": qubit " + std::to_string(x) + " repeated"});
            if (own[static_cast<std::size_t>(x)] != player) {
                out.push_back({"ownership", where + ": qubit " + std::to_string(x) + " is held by player " +
                                                std::to_string(own[static_cast<std::size_t>(x)]) + ", not " +
                                                std::to_string(player)});
            }
        }
    };
    for (std::size_t r = 0; r < p.rounds.size(); ++r) {
        const RoundAction &ra = p.rounds[r];
        const std::string rw = "round " + std::to_string(r + 1);
        if (ra.player < 0 || ra.player >= p.players) {
            out.push_back({"players", rw + ": invalid acting player"});
            continue;
        }
        for (std::size_t k = 0; k < ra.ops.size(); ++k) {
            const std::string ow = rw + " op " + std::to_string(k + 1);
            check_list(ra.ops[k].targets, ra.player, ow, "gate");
            if (!ra.ops[k].unitary) {
                out.push_back({"gate", ow + ": missing unitary"});
                continue;
            }
            detail::validate_gate(*ra.ops[k].unitary, static_cast<int>(ra.ops[k].targets.size()), reg, ow, out);
        }
        check_list(ra.message, ra.player, rw + " message", "message");
        if (!ra.message.empty()) {
            if (ra.to < 0 || ra.to >= p.players || ra.to == ra.player) {
                out.push_back({"message", rw + ": invalid receiver"});
                continue;
            }
            for (int x : ra.message)
                if (x >= 0 && x < q) own[static_cast<std::size_t>(x)] = ra.to;
        }
    }

    // Measurement.
    const Measurement &m = p.measurement;
    const int mp = measuring_player(p);
    if (m.qubits.empty()) out.push_back({"measurement", "measurement has no qubits"});
    for (int x : m.qubits) {
        if (x < 0 || x >= q) {
            out.push_back({"measurement", "measured qubit " + std::to_string(x) + " out of range"});
        } else if (own[static_cast<std::size_t>(x)] != mp) {
            out.push_back({"measurement", "measured qubit " + std::to_string(x) + " is not held by the measuring player " +
                                              std::to_string(mp)});
        }
    }
    if (detail::as_set(m.qubits).size() != m.qubits.size()) out.push_back({"measurement", "repeated measured qubit"});
    if (m.kind == Measurement::Kind::Projector) {
        if (m.projector.rows() != (Eigen::Index{1} << m.qubits.size()) || m.projector.cols() != m.projector.rows()) {
            out.push_back({"measurement", "projector dimension does not match measured qubits"});
        } else if (!is_projector(m.projector)) {
            out.push_back({"measurement", "measurement matrix is not a projector"});
        }
    } else if (m.qubits.size() != 1 || (m.accept_outcome != 0 && m.accept_outcome != 1)) {
        out.push_back({"measurement", "single-qubit measurement needs one qubit and outcome 0 or 1"});
    }

    if (!(p.declared.p > 0 && p.declared.p < 1)) out.push_back({"declared", "reference point p must lie in (0,1)"});
    if (!(p.declared.eps >= 0 && p.declared.eps <= 0.5)) out.push_back({"declared", "declared bias must lie in [0,1/2]"});

    // Channel and mode.
    auto alternation_problems = [&](const char *code) {
        std::set<int> acting;
        for (const auto &r : p.rounds) acting.insert(r.player);
        if (acting.size() > 2) out.push_back({code, "more than two players act"});
        for (std::size_t r = 0; r + 1 < p.rounds.size(); ++r) {
            if (p.rounds[r].player == p.rounds[r + 1].player) {
                out.push_back({code, "rounds " + std::to_string(r + 1) + " and " + std::to_string(r + 2) +
                                         " have the same acting player"});
            }
        }
    };
    if (p.channel == Channel::Fixed) {
        alternation_problems("channel");
        std::optional<std::set<int>> fixed;
        for (std::size_t r = 0; r < p.rounds.size(); ++r) {
            const auto &ra = p.rounds[r];
            if (ra.message.empty()) {
                if (r + 1 != p.rounds.size() && p.mode == Mode::Clocked) {
                    out.push_back({"channel", "round " + std::to_string(r + 1) + " sends nothing on a fixed channel"});
                }
                continue;
            }
            const auto s = detail::as_set(ra.message);
            if (!fixed) fixed = s;
            if (s != *fixed) out.push_back({"channel", "round " + std::to_string(r + 1) + " sends a different qubit set"});
            if (r + 1 < p.rounds.size() && ra.to != p.rounds[r + 1].player) {
                out.push_back({"channel", "round " + std::to_string(r + 1) + " sends to a player who does not act next"});
            }
        }
    }
    if (p.mode == Mode::SemiUnclocked) {
        if (p.channel != Channel::Fixed) out.push_back({"mode", "semi-unclocked protocols need a fixed channel"});
        alternation_problems("mode");
        std::map<int, json> unitary_of;
        std::optional<std::set<int>> msg;
        for (std::size_t r = 0; r < p.rounds.size(); ++r) {
            const auto &ra = p.rounds[r];
            json ops = json::array();
            for (const auto &op : ra.ops) ops.push_back(json{{"u", op.unitary ? gate_to_json(*op.unitary) : json()}, {"t", op.targets}});
            auto it = unitary_of.find(ra.player);
            if (it == unitary_of.end()) {
                unitary_of.emplace(ra.player, ops);
            } else if (it->second != ops) {
                out.push_back({"mode", "round " + std::to_string(r + 1) + " uses a different unitary than the player's earlier rounds"});
            }
            const auto s = detail::as_set(ra.message);
            if (!msg) msg = s;
            if (s != *msg) out.push_back({"mode", "round " + std::to_string(r + 1) + " message set differs"});
        }
    }
    if (p.trace_form) {
        const auto &tf = *p.trace_form;
        if (tf.control < 0 || tf.control >= q || !p.layout.is_clean(tf.control)) {
            out.push_back({"trace_form", "trace-form control must be a clean qubit"});
        }
        for (int c : tf.counter) {
            if (c < 0 || c >= q || p.layout.is_clean(c)) out.push_back({"trace_form", "counter qubits must be mixed"});
        }
        if (m.kind != Measurement::Kind::SingleQubit || m.qubits != std::vector<int>{tf.control} || m.accept_outcome != 0) {
            out.push_back({"trace_form", "trace-form protocols measure the control qubit and accept on 0"});
        }
    }
    return out;
}

inline void require_valid(const ProtocolSpec &p, const GeneratorRegistry &reg = default_registry()) {
    const auto v = validate(p, reg);
    if (!v.empty()) {
        std::string msg = "invalid protocol";
        if (!p.name.empty()) msg += " \"" + p.name + "\"";
        for (const auto &x : v) msg += "\n  [" + x.code + "] " + x.message;
        throw ValidationError(msg);
    }
}

// ---------------------------------------------------------------------------
// Costs.

inline int communication_cost(const ProtocolSpec &p, const GeneratorRegistry &reg = default_registry()) {
    require_valid(p, reg);
    return communication_of(p);
}

/// c / eps^2. Exact whenever eps is dyadic.
inline double q1_cost(double c, double eps) {
    if (!(eps > 0 && eps <= 0.5)) throw DomainError("q1_cost needs 0 < eps <= 1/2");
    if (c < 0) throw DomainError("communication must be nonnegative");
    return c / (eps * eps);
}

/// c - floor(log2 eps).
inline double pp_cost(double c, double eps) {
    if (!(eps > 0 && eps < 0.5)) throw DomainError("pp_cost needs 0 < eps < 1/2");
    if (c < 0) throw DomainError("communication must be nonnegative");
    // ilogb returns the binary exponent, which is floor(log2 eps) for normal eps.
    return c - static_cast<double>(std::ilogb(eps));
}

struct CostReport {
    int communication = 0;
    double bias = 0;
    double q1_cost = 0;
    std::optional<double> pp_cost;  // undefined at eps = 1/2
    int qubits = 0;
};

inline CostReport cost_report(const ProtocolSpec &p, const GeneratorRegistry &reg = default_registry()) {
    CostReport r;
    r.communication = communication_cost(p, reg);
    r.bias = p.declared.eps;
    r.q1_cost = q1_cost(r.communication, r.bias);
    if (r.bias < 0.5) r.pp_cost = pp_cost(r.communication, r.bias);
    r.qubits = p.qubits();
    return r;
}

inline std::string format_number(double v) { return json(v).dump(); }

inline std::string cost_report_csv(const std::vector<CostReport> &rows) {
    std::ostringstream os;
    os << "communication,bias,q1_cost,pp_cost,qubits\n";
    for (const auto &r : rows) {
        os << r.communication << ',' << format_number(r.bias) << ',' << format_number(r.q1_cost) << ','
           << (r.pp_cost ? format_number(*r.pp_cost) : "") << ',' << r.qubits << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Relabeling.

/// Renames qubit q to perm[q] everywhere.
inline ProtocolSpec relabel_qubits(const ProtocolSpec &p, const std::vector<int> &perm) {
    if (static_cast<int>(perm.size()) != p.qubits()) throw DimensionError("relabeling must cover every qubit");
    auto map = [&](std::vector<int> v) {
        for (int &x : v) x = perm[static_cast<std::size_t>(x)];
        return v;
    };
    ProtocolSpec out = p;
    for (int q = 0; q < p.qubits(); ++q) out.layout.owners[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] = p.layout.owners[static_cast<std::size_t>(q)];
    for (auto &r : out.rounds) {
        for (auto &op : r.ops) op.targets = map(op.targets);
        r.message = map(r.message);
    }
    out.measurement.qubits = map(out.measurement.qubits);
    if (out.trace_form) {
        out.trace_form->control = perm[static_cast<std::size_t>(out.trace_form->control)];
        out.trace_form->counter = map(out.trace_form->counter);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Descriptor format.

inline constexpr int kDescriptorVersion = 1;

inline json protocol_to_json(const ProtocolSpec &p) {
    json rounds = json::array();
    for (const auto &r : p.rounds) {
        json ops = json::array();
        for (const auto &op : r.ops) ops.push_back(json{{"unitary", gate_to_json(*op.unitary)}, {"targets", op.targets}});
        json jr{{"player", r.player}, {"ops", std::move(ops)}, {"message", r.message}};
        jr["to"] = r.message.empty() ? json(nullptr) : json(r.to);
        rounds.push_back(std::move(jr));
    }
    json meas;
    if (p.measurement.kind == Measurement::Kind::SingleQubit) {
        meas = json{{"single_qubit", p.measurement.qubits.at(0)}, {"accept", p.measurement.accept_outcome}};
    } else {
        meas = json{{"projector", matrix_to_json(p.measurement.projector)}, {"qubits", p.measurement.qubits}};
    }
    json j{{"version", kDescriptorVersion},
           {"name", p.name},
           {"players", p.players},
           {"layout", json{{"clean", p.layout.clean}, {"mixed", p.layout.mixed}, {"owners", p.layout.owners}}},
           {"rounds", std::move(rounds)},
           {"mode", p.mode == Mode::Clocked ? "clocked" : "semi-unclocked"},
           {"channel", p.channel == Channel::Ghosted ? "ghosted" : "fixed"},
           {"measurement", std::move(meas)},
           {"declared", json{{"p", p.declared.p}, {"eps", p.declared.eps}}}};
    if (p.trace_form) j["trace_form"] = json{{"control", p.trace_form->control}, {"counter", p.trace_form->counter}};
    return j;
}

inline std::string serialize(const ProtocolSpec &p) { return protocol_to_json(p).dump(2); }

namespace detail {

inline const json &field(const json &j, const char *name, const std::string &where) {
    if (!j.is_object()) throw ParseError("expected an object", where);
    if (!j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"", where);
    return j.at(name);
}

inline int int_field(const json &j, const char *name, const std::string &where) {
    const json &v = field(j, name, where);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer", where + "/" + name);
    return v.get<int>();
}

inline double number_field(const json &j, const char *name, const std::string &where) {
    const json &v = field(j, name, where);
    if (!v.is_number()) throw ParseError(std::string("field \"") + name + "\" must be a number", where + "/" + name);
    return v.get<double>();
}

inline std::string string_field(const json &j, const char *name, const std::string &where) {
    const json &v = field(j, name, where);
    if (!v.is_string()) throw ParseError(std::string("field \"") + name + "\" must be a string", where + "/" + name);
    return v.get<std::string>();
}

}  // namespace detail

inline ProtocolSpec protocol_from_json(const json &j) {
    using detail::field;
    using detail::int_field;
    try {
        ProtocolSpec p;
        const int version = int_field(j, "version", "");
        if (version != kDescriptorVersion) throw ParseError("unsupported descriptor version " + std::to_string(version), "/version");
        if (j.contains("name") && j.at("name").is_string()) p.name = j.at("name").get<std::string>();
        p.players = int_field(j, "players", "");
        const json &lay = field(j, "layout", "");
        p.layout.clean = int_field(lay, "clean", "/layout");
        p.layout.mixed = int_field(lay, "mixed", "/layout");
        if (lay.contains("owners")) {
            p.layout.owners = int_list_from_json(lay.at("owners"), "/layout/owners");
        } else {
            p.layout.owners.assign(static_cast<std::size_t>(std::max(0, p.layout.total())), 0);
        }
        const json &rounds = field(j, "rounds", "");
        if (!rounds.is_array()) throw ParseError("\"rounds\" must be a list", "/rounds");
        for (std::size_t r = 0; r < rounds.size(); ++r) {
            const std::string w = "/rounds/" + std::to_string(r);
            const json &jr = rounds[r];
            RoundAction ra;
            ra.player = int_field(jr, "player", w);
            if (jr.contains("ops")) {
                const json &ops = jr.at("ops");
                if (!ops.is_array()) throw ParseError("\"ops\" must be a list", w + "/ops");
                for (std::size_t k = 0; k < ops.size(); ++k) {
                    const std::string ow = w + "/ops/" + std::to_string(k);
                    ra.ops.push_back(Op{gate_from_json(field(ops[k], "unitary", ow), ow + "/unitary"),
                                        int_list_from_json(field(ops[k], "targets", ow), ow + "/targets")});
                }
            } else if (jr.contains("unitary")) {
                ra.ops.push_back(Op{gate_from_json(jr.at("unitary"), w + "/unitary"),
                                    int_list_from_json(field(jr, "targets", w), w + "/targets")});
            } else {
                throw ParseError("missing field \"ops\"", w);
            }
            ra.message = int_list_from_json(field(jr, "message", w), w + "/message");
            if (jr.contains("to") && !jr.at("to").is_null()) ra.to = int_field(jr, "to", w);
            p.rounds.push_back(std::move(ra));
        }
        const std::string mode = detail::string_field(j, "mode", "");
        if (mode == "clocked") {
            p.mode = Mode::Clocked;
        } else if (mode == "semi-unclocked") {
            p.mode = Mode::SemiUnclocked;
        } else {
            throw ParseError("\"mode\" must be clocked or semi-unclocked", "/mode");
        }
        const std::string channel = detail::string_field(j, "channel", "");
        if (channel == "ghosted") {
            p.channel = Channel::Ghosted;
        } else if (channel == "fixed") {
            p.channel = Channel::Fixed;
        } else {
            throw ParseError("\"channel\" must be ghosted or fixed", "/channel");
        }
        const json &meas = field(j, "measurement", "");
        if (meas.contains("single_qubit")) {
            p.measurement = Measurement::single_qubit(int_field(meas, "single_qubit", "/measurement"),
                                                      meas.contains("accept") ? int_field(meas, "accept", "/measurement") : 0);
        } else if (meas.contains("projector")) {
            p.measurement = Measurement::projector_on(matrix_from_json(meas.at("projector"), "/measurement/projector"),
                                                      int_list_from_json(field(meas, "qubits", "/measurement"), "/measurement/qubits"));
        } else {
            throw ParseError("measurement needs \"single_qubit\" or \"projector\"", "/measurement");
        }
        const json &dec = field(j, "declared", "");
        p.declared.p = detail::number_field(dec, "p", "/declared");
        p.declared.eps = detail::number_field(dec, "eps", "/declared");
        if (j.contains("trace_form")) {
            const json &tf = j.at("trace_form");
            p.trace_form = TraceFormTag{int_field(tf, "control", "/trace_form"),
                                        int_list_from_json(field(tf, "counter", "/trace_form"), "/trace_form/counter")};
        }
        return p;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed descriptor: ") + e.what(), "");
    }
}

inline ProtocolSpec deserialize(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("descriptor is not valid structured text: ") + e.what(), "byte " + std::to_string(e.byte));
    }
    return protocol_from_json(j);
}

inline bool operator==(const ProtocolSpec &a, const ProtocolSpec &b) { return protocol_to_json(a) == protocol_to_json(b); }

}  // namespace dqc1

#endif
