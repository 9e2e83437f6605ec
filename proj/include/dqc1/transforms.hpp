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

// Protocol-to-protocol constructions with exact acceptance bookkeeping.
//
// Every pass returns the new protocol and a certificate stating the affine
// map a -> alpha * a + beta from base acceptance to output acceptance.

#ifndef DQC1_TRANSFORMS_HPP
#define DQC1_TRANSFORMS_HPP

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "dqc1/protocol.hpp"

namespace dqc1 {

struct TransformCert {
    std::string pass;
    double input_bias = 0;
    double predicted_bias = 0;
    double input_reference = 0.5;
    double predicted_reference = 0.5;
    double alpha = 1;
    double beta = 0;
    int communication_before = 0;
    int communication_after = 0;
    std::optional<double> cost_bound;

    double predict(double a) const { return alpha * a + beta; }

    json to_json() const {
        json j{{"pass", pass},
               {"input_bias", input_bias},
               {"predicted_bias", predicted_bias},
               {"input_reference", input_reference},
               {"predicted_reference", predicted_reference},
               {"acceptance_map", json{{"alpha", alpha}, {"beta", beta}}},
               {"communication_before", communication_before},
               {"communication_after", communication_after}};
        if (cost_bound) j["cost_bound"] = *cost_bound;
        return j;
    }
};

struct TransformResult {
    ProtocolSpec protocol;
    TransformCert cert;
};

namespace detail {

inline TransformCert make_cert(const std::string &pass, const ProtocolSpec &in, const ProtocolSpec &out, double alpha,
                               double beta) {
    TransformCert c;
    c.pass = pass;
    c.input_bias = in.declared.eps;
    c.input_reference = in.declared.p;
    c.alpha = alpha;
    c.beta = beta;
    c.predicted_bias = alpha * in.declared.eps;
    c.predicted_reference = alpha * in.declared.p + beta;
    c.communication_before = communication_of(in);
    c.communication_after = communication_of(out);
    return c;
}

inline std::vector<int> shifted(const std::vector<int> &v, int by) {
    std::vector<int> out = v;
    for (int &x : out) x += by;
    return out;
}

/// Moves every qubit index up by `by`, leaving room at the front.
inline ProtocolSpec shift_qubits(const ProtocolSpec &p, int by) {
    ProtocolSpec out = p;
    for (auto &r : out.rounds) {
        for (auto &op : r.ops) op.targets = shifted(op.targets, by);
        r.message = shifted(r.message, by);
    }
    out.measurement.qubits = shifted(out.measurement.qubits, by);
    out.layout.owners.insert(out.layout.owners.begin(), static_cast<std::size_t>(by), 0);
    if (out.trace_form) {
        out.trace_form->control += by;
        out.trace_form->counter = shifted(out.trace_form->counter, by);
    }
    return out;
}

inline std::set<int> acting_players(const ProtocolSpec &p) {
    std::set<int> s;
    for (const auto &r : p.rounds) s.insert(r.player);
    return s;
}

inline int other_player(const ProtocolSpec &p, int player) {
    for (const auto &r : p.rounds) {
        if (r.player != player) return r.player;
        if (!r.message.empty() && r.to != player) return r.to;
    }
    return player == 0 ? 1 : 0;
}

/// Sequence gate wrapping a list of ops, with targets relative to `support`.
inline GatePtr ops_as_sequence(const std::vector<Op> &ops, const std::vector<int> &support) {
    std::vector<SequenceItem> items;
    for (const auto &op : ops) {
        std::vector<int> local;
        for (int t : op.targets) {
            auto it = std::find(support.begin(), support.end(), t);
            if (it == support.end()) throw ShapeError("op target outside the supplied support");
            local.push_back(static_cast<int>(it - support.begin()));
        }
        items.push_back(SequenceItem{op.unitary, std::move(local)});
    }
    return sequence(std::move(items));
}

inline bool is_hadamard_op(const Op &op, int q) {
    return op.targets == std::vector<int>{q} && op.unitary->kind == Gate::Kind::Explicit &&
           max_abs(op.unitary->matrix - hadamard()) < 1e-12;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// k clean qubits -> one clean qubit.

inline TransformResult k_to_one_clean(const ProtocolSpec &p) {
    const int k = p.layout.clean;
    if (k < 1) throw DomainError("k_to_one_clean needs at least one clean qubit");
    if (p.mode != Mode::Clocked) throw ShapeError("k_to_one_clean needs a clocked protocol");
    require_valid(p);
    const int owner0 = p.layout.owners[0];
    for (int j = 1; j < k; ++j) {
        if (p.layout.owners[static_cast<std::size_t>(j)] != owner0) {
            throw ShapeError("all clean qubits must start with one player");
        }
    }
    const int meas = measuring_player(p);
    const int q = p.qubits();
    ProtocolSpec out = detail::shift_qubits(p, 1);
    const int coin = q + 1;
    out.name = p.name.empty() ? "k1" : p.name + "+k1";
    out.layout.clean = 1;
    out.layout.mixed = q + 1;
    out.layout.owners[0] = owner0;
    out.layout.owners.push_back(meas);
    out.channel = Channel::Ghosted;
    out.trace_form.reset();

    // A: flip the flag when all k original clean qubits are |0>.
    const std::uint64_t dk = std::uint64_t{1} << k;
    std::vector<std::uint64_t> perm(2 * dk);
    for (std::uint64_t v = 0; v < 2 * dk; ++v) perm[v] = (v % dk == 0) ? (v ^ dk) : v;
    std::vector<int> atargets{0};
    for (int j = 1; j <= k; ++j) atargets.push_back(j);
    Op a{explicit_gate(permutation_matrix(perm)), atargets};
    if (!out.rounds.empty() && out.rounds.front().player == owner0) {
        out.rounds.front().ops.insert(out.rounds.front().ops.begin(), a);
    } else {
        out.rounds.insert(out.rounds.begin(), RoundAction{owner0, {a}, {}, -1});
    }

    // Deliver the flag to the measuring player.
    if (owner0 != meas) {
        bool sent = false;
        for (auto &r : out.rounds) {
            if (r.player == owner0 && !r.message.empty() && r.to == meas) {
                r.message.push_back(0);
                sent = true;
                break;
            }
        }
        if (!sent) out.rounds.push_back(RoundAction{owner0, {}, {0}, meas});
    }

    // Flag |1>: original measurement. Flag |0>: accept iff the coin reads 1.
    const Matrix porig = p.measurement.as_projector();
    const auto dm = porig.rows();
    Matrix one = Matrix::Zero(2, 2), zero = Matrix::Zero(2, 2);
    one(1, 1) = 1;
    zero(0, 0) = 1;
    const Matrix proj = tensor(tensor(one, porig), identity(2)) + tensor(tensor(zero, identity(dm)), one);
    std::vector<int> mq{0};
    for (int x : p.measurement.qubits) mq.push_back(x + 1);
    mq.push_back(coin);
    out.measurement = Measurement::projector_on(proj, mq);

    const double alpha = std::ldexp(1.0, -k);
    const double beta = (1 - alpha) / 2;
    out.declared = DeclaredBias{alpha * p.declared.p + beta, alpha * p.declared.eps};
    return {out, detail::make_cert("k1", p, out, alpha, beta)};
}

// ---------------------------------------------------------------------------
// Projective measurement -> single-qubit measurement.

inline TransformResult projective_to_single_qubit(const ProtocolSpec &p) {
    if (p.mode != Mode::Clocked) throw ShapeError("sq-measure needs a clocked protocol");
    require_valid(p);
    const int meas = measuring_player(p);
    ProtocolSpec out = detail::shift_qubits(p, 1);
    out.name = p.name.empty() ? "sq" : p.name + "+sq";
    out.layout.clean = p.layout.clean + 1;
    out.layout.owners[0] = meas;
    out.trace_form.reset();

    // U_S = I (x) P + X (x) (I - P): flips the new qubit off the accepted subspace.
    const Matrix pm = p.measurement.as_projector();
    const auto d = pm.rows();
    Matrix us(2 * d, 2 * d);
    us.block(0, 0, d, d) = pm;
    us.block(d, d, d, d) = pm;
    us.block(0, d, d, d) = identity(d) - pm;
    us.block(d, 0, d, d) = identity(d) - pm;
    std::vector<int> targets{0};
    for (int x : p.measurement.qubits) targets.push_back(x + 1);
    Op op{explicit_gate(us), targets};
    if (!out.rounds.empty() && out.rounds.back().player == meas && out.rounds.back().message.empty()) {
        out.rounds.back().ops.push_back(op);
    } else {
        out.rounds.push_back(RoundAction{meas, {op}, {}, -1});
    }
    out.measurement = Measurement::single_qubit(0, 0);
    return {out, detail::make_cert("sq-measure", p, out, 1, 0)};
}

// ---------------------------------------------------------------------------
// Ghosted channel -> fixed channel.

/// Every round sends the whole set F of ever-communicated qubits; identity
/// rounds are inserted so the two players strictly alternate.
inline TransformResult to_fixed_channel(const ProtocolSpec &p) {
    if (p.mode != Mode::Clocked) throw ShapeError("fixed-channel conversion needs a clocked protocol");
    require_valid(p);
    if (detail::acting_players(p).size() > 2 || p.players != 2) throw ShapeError("fixed channel needs two players");
    std::set<int> fset;
    for (const auto &r : p.rounds) fset.insert(r.message.begin(), r.message.end());
    if (fset.empty()) throw ShapeError("protocol communicates nothing");
    std::vector<int> f(fset.begin(), fset.end());
    const int holder0 = p.layout.owners[static_cast<std::size_t>(f.front())];
    for (int x : f) {
        if (p.layout.owners[static_cast<std::size_t>(x)] != holder0) {
            throw ShapeError("communicated qubits must start with one player");
        }
    }
    const int meas = measuring_player(p);
    auto other = [](int pl) { return 1 - pl; };

    ProtocolSpec out = p;
    out.name = p.name.empty() ? "fixed" : p.name + "+fixed";
    out.channel = Channel::Fixed;
    out.rounds.clear();
    RoundAction cur{holder0, {}, {}, -1};
    auto close = [&] {
        cur.message = f;
        cur.to = other(cur.player);
        out.rounds.push_back(cur);
        cur = RoundAction{other(cur.player), {}, {}, -1};
    };
    for (const auto &r : p.rounds) {
        if (r.player != cur.player) close();
        cur.ops.insert(cur.ops.end(), r.ops.begin(), r.ops.end());
        if (!r.message.empty()) close();
    }
    if (cur.player == meas) {
        if (!cur.ops.empty() || out.rounds.empty()) out.rounds.push_back(cur);
    } else {
        close();
    }
    out.trace_form.reset();
    return {out, detail::make_cert("fixed", p, out, 1, 0)};
}

// ---------------------------------------------------------------------------
// Trace-estimation form.

/// Acceptance of the trace-form wrapper for a 2-clean base with bias eps/2^k.
inline double trace_form_acceptance(double eps, int k) { return 0.5 + 1.0 / 16 + std::ldexp(eps, -(k + 3)); }

inline TransformResult to_trace_form(const ProtocolSpec &base) {
    if (base.measurement.kind != Measurement::Kind::SingleQubit) throw ShapeError("trace form needs a single-qubit measurement");
    if (base.mode != Mode::Clocked) throw ShapeError("trace form needs a clocked protocol");
    ProtocolSpec pp = base.channel == Channel::Fixed ? base : to_fixed_channel(base).protocol;
    require_valid(pp);
    if (pp.rounds.empty()) throw ShapeError("trace form needs at least one round");
    const int q = pp.qubits();
    const int c = pp.layout.clean;
    const int mq = pp.measurement.qubits[0];
    const int outcome = pp.measurement.accept_outcome;
    const int meas = measuring_player(pp);
    const auto &rounds = pp.rounds;
    const std::size_t nr = rounds.size();

    std::vector<int> fmsg{0};
    for (const auto &r : rounds) {
        if (!r.message.empty()) {
            for (int x : r.message) fmsg.push_back(x + 1);
            break;
        }
    }
    auto fwd = [](const Op &op) {
        std::vector<int> t{0};
        for (int x : op.targets) t.push_back(x + 1);
        return Op{controlled(op.unitary), t};
    };
    auto rev = [](const Op &op) {
        std::vector<int> t{0};
        for (int x : op.targets) t.push_back(x + 1);
        return Op{controlled(dagger(op.unitary)), t};
    };
    const GatePtr h = explicit_gate(hadamard());
    const Op hop{h, {0}};

    // Clean-qubit projections: CNOT(clean_j -> anc_j) controlled on the test qubit,
    // placed where the clean qubit's owner acts next to time zero.
    const int x0 = rounds[0].player;
    const int x1 = nr > 1 ? rounds[1].player : -1;
    std::vector<Op> cnot_x0, cnot_x1;
    for (int j = 0; j < c; ++j) {
        Op op{controlled(explicit_gate(cnot())), {0, j + 1, q + 1 + j}};
        const int o = pp.layout.owners[static_cast<std::size_t>(j)];
        if (o == x0) {
            cnot_x0.push_back(op);
        } else if (o == x1) {
            cnot_x1.push_back(op);
        } else {
            throw ShapeError("clean qubit owner never acts near the start");
        }
    }
    const int manc = q + 1 + c;
    // Accept outcome 0 projects with a plain CNOT, outcome 1 with an anti-controlled one.
    const Op meas_proj{controlled(controlled(explicit_gate(pauli_x()), outcome == 0 ? 1 : 0)), {0, mq + 1, manc}};

    std::vector<RoundAction> out;
    const bool last_sends = !rounds.back().message.empty();
    if (last_sends) out.push_back(RoundAction{rounds.back().to, {hop}, fmsg, rounds.back().player});
    // Reverse sweep, rounds nr-1 .. 1.
    for (std::size_t jj = nr; jj-- > 1;) {
        RoundAction ra{rounds[jj].player, {}, fmsg, rounds[jj - 1].player};
        if (out.empty()) ra.ops.push_back(hop);
        for (auto it = rounds[jj].ops.rbegin(); it != rounds[jj].ops.rend(); ++it) ra.ops.push_back(rev(*it));
        if (jj == 1) ra.ops.insert(ra.ops.end(), cnot_x1.begin(), cnot_x1.end());
        out.push_back(std::move(ra));
    }
    // Midpoint round: reverse of round 0, projections, forward round 0.
    for (std::size_t jj = 0; jj < nr; ++jj) {
        RoundAction ra{rounds[jj].player, {}, {}, -1};
        if (jj == 0) {
            if (out.empty()) ra.ops.push_back(hop);
            for (auto it = rounds[0].ops.rbegin(); it != rounds[0].ops.rend(); ++it) ra.ops.push_back(rev(*it));
            ra.ops.insert(ra.ops.end(), cnot_x0.begin(), cnot_x0.end());
        }
        for (const auto &op : rounds[jj].ops) ra.ops.push_back(fwd(op));
        if (!rounds[jj].message.empty()) {
            ra.message = fmsg;
            ra.to = rounds[jj].to;
        } else {
            ra.ops.push_back(meas_proj);
            ra.ops.push_back(hop);
        }
        out.push_back(std::move(ra));
    }
    if (last_sends) out.push_back(RoundAction{rounds.back().to, {meas_proj, hop}, {}, -1});

    ProtocolSpec res;
    res.name = pp.name.empty() ? "trace-form" : pp.name + "+trace";
    res.players = pp.players;
    res.layout.clean = 1;
    res.layout.mixed = q + c + 1;
    const auto fin = final_owners(pp);
    res.layout.owners.assign(static_cast<std::size_t>(q + c + 2), 0);
    res.layout.owners[0] = out.front().player;
    for (int j = 0; j < q; ++j) res.layout.owners[static_cast<std::size_t>(j + 1)] = fin[static_cast<std::size_t>(j)];
    for (int j = 0; j < c; ++j) res.layout.owners[static_cast<std::size_t>(q + 1 + j)] = pp.layout.owners[static_cast<std::size_t>(j)];
    res.layout.owners[static_cast<std::size_t>(manc)] = meas;
    res.rounds = std::move(out);
    res.mode = Mode::Clocked;
    res.channel = Channel::Fixed;
    res.measurement = Measurement::single_qubit(0, 0);
    res.trace_form = TraceFormTag{0, {}};
    const double alpha = std::ldexp(1.0, -(c + 1));
    res.declared = DeclaredBias{0.5 + alpha * pp.declared.p, alpha * pp.declared.eps};
    TransformCert cert = detail::make_cert("trace-form", base, res, alpha, 0.5);
    return {res, cert};
}

// ---------------------------------------------------------------------------
// Unclocking with a round counter.

inline int ceil_log2(std::uint64_t v) {
    int w = 0;
    while ((std::uint64_t{1} << w) < v) ++w;
    return w;
}

inline TransformResult unclock(const ProtocolSpec &p, int r) {
    if (!p.trace_form || !p.trace_form->counter.empty()) throw ShapeError("unclock needs a trace-form protocol without a counter");
    if (r != static_cast<int>(p.rounds.size())) {
        throw ShapeError("round count " + std::to_string(r) + " does not match the protocol's " + std::to_string(p.rounds.size()));
    }
    if (p.mode != Mode::Clocked || p.channel != Channel::Fixed) throw ShapeError("unclock needs a clocked fixed-channel protocol");
    require_valid(p);
    if (r < 1) throw ShapeError("unclock needs at least one round");
    const int ctl = p.trace_form->control;
    auto rounds = p.rounds;
    if (rounds.front().ops.empty() || !detail::is_hadamard_op(rounds.front().ops.front(), ctl) || rounds.back().ops.empty() ||
        !detail::is_hadamard_op(rounds.back().ops.back(), ctl) || (r == 1 && rounds.front().ops.size() < 2)) {
        throw ShapeError("trace-form protocol must open and close with a Hadamard on the control");
    }
    rounds.front().ops.erase(rounds.front().ops.begin());
    rounds.back().ops.pop_back();

    const int sa = rounds.front().player;
    const int sb = detail::other_player(p, sa);
    const int pairs = (r + 1) / 2;
    const int w = ceil_log2(static_cast<std::uint64_t>(pairs));
    const int npairs = 1 << w;
    const int q = p.qubits();
    std::vector<int> counter;
    for (int j = 0; j < w; ++j) counter.push_back(q + j);

    auto support_of = [&](int parity) {
        std::set<int> s;
        for (std::size_t j = static_cast<std::size_t>(parity); j < rounds.size(); j += 2)
            for (const auto &op : rounds[j].ops) s.insert(op.targets.begin(), op.targets.end());
        return std::vector<int>(s.begin(), s.end());
    };
    const auto sup_a = support_of(0), sup_b = support_of(1);
    auto branches_for = [&](int parity, const std::vector<int> &sup) {
        std::vector<GatePtr> br;
        for (int i = 0; i < npairs; ++i) {
            const std::size_t j = static_cast<std::size_t>(2 * i + parity);
            br.push_back(j < rounds.size() ? detail::ops_as_sequence(rounds[j].ops, sup) : sequence({}));
        }
        return br;
    };
    std::vector<int> ta = counter, tb = counter;
    ta.insert(ta.end(), sup_a.begin(), sup_a.end());
    tb.insert(tb.end(), sup_b.begin(), sup_b.end());
    const GatePtr h = explicit_gate(hadamard());
    const Op hop{h, {ctl}};
    const Op da{dispatch(w, branches_for(0, sup_a), false), ta};
    const Op db{dispatch(w, branches_for(1, sup_b), true), tb};

    std::set<int> fset{ctl};
    for (const auto &ra : p.rounds) fset.insert(ra.message.begin(), ra.message.end());
    fset.insert(counter.begin(), counter.end());
    const std::vector<int> f(fset.begin(), fset.end());

    ProtocolSpec out = p;
    out.name = p.name.empty() ? "unclocked" : p.name + "+unclock";
    out.layout.mixed += w;
    for (int j = 0; j < w; ++j) out.layout.owners.push_back(sa);
    out.rounds.clear();
    for (int i = 0; i < npairs; ++i) {
        out.rounds.push_back(RoundAction{sa, {hop, da, hop}, f, sb});
        out.rounds.push_back(RoundAction{sb, {hop, db, hop}, f, sa});
    }
    out.mode = Mode::SemiUnclocked;
    out.channel = Channel::Fixed;
    out.trace_form = TraceFormTag{ctl, counter};
    return {out, detail::make_cert("unclock", p, out, 1, 0)};
}

inline TransformResult unclock(const ProtocolSpec &p) { return unclock(p, static_cast<int>(p.rounds.size())); }

// ---------------------------------------------------------------------------
// Two-round k-clean -> one clean qubit.

inline TransformResult two_round_one_clean(const ProtocolSpec &p) {
    require_valid(p);
    const int k = p.layout.clean;
    if (k < 1 || p.layout.mixed != 0) throw ShapeError("lemma1 needs k >= 1 clean qubits and no mixed qubits");
    if (p.rounds.size() != 2 && p.rounds.size() != 3) throw ShapeError("lemma1 needs rounds Alice -> Bob -> Alice");
    const int a = p.rounds[0].player;
    std::set<int> clean;
    for (int j = 0; j < k; ++j) clean.insert(j);
    for (int j = 0; j < k; ++j) {
        if (p.layout.owners[static_cast<std::size_t>(j)] != a) throw ShapeError("lemma1 needs Alice to hold every clean qubit");
    }
    const auto &r1 = p.rounds[0], &r2 = p.rounds[1];
    if (detail::as_set(r1.message) != clean || detail::as_set(r2.message) != clean || r2.player != r1.to || r2.to != a) {
        throw ShapeError("lemma1 needs both messages to carry the k clean qubits there and back");
    }
    if (p.rounds.size() == 3 && (p.rounds[2].player != a || !p.rounds[2].message.empty())) {
        throw ShapeError("lemma1's third round must be Alice's final unitary");
    }
    std::vector<int> cl(clean.begin(), clean.end());
    ProtocolSpec out = detail::shift_qubits(p, 1);
    out.name = p.name.empty() ? "lemma1" : p.name + "+lemma1";
    out.layout.clean = 1;
    out.layout.mixed = k;
    out.layout.owners[0] = a;
    std::vector<int> ft{0};
    for (int j = 0; j < k; ++j) ft.push_back(j + 1);
    out.rounds[0].ops = {Op{generator_gate("lemma1.flag", json{{"unitary", gate_to_json(*detail::ops_as_sequence(r1.ops, cl))}}), ft}};

    Matrix one = Matrix::Zero(2, 2);
    one(1, 1) = 1;
    std::vector<int> mq{0};
    for (int x : p.measurement.qubits) mq.push_back(x + 1);
    out.measurement = Measurement::projector_on(tensor(one, p.measurement.as_projector()), mq);
    const double alpha = std::ldexp(1.0, -k);
    out.declared = DeclaredBias{alpha * p.declared.p, alpha * p.declared.eps};
    return {out, detail::make_cert("lemma1", p, out, alpha, 0)};
}

// ---------------------------------------------------------------------------
// Classical PP protocol -> one-way one-clean protocol.

/// Deterministic-message private-coin protocol: Alice sends z = T(x) (c bits);
/// Bob accepts with probability 1/2 + eps when accept[y][z] = 1, else 1/2 - eps.
struct PPProtocol {
    int x_bits = 1;
    int y_bits = 1;
    int c = 1;
    std::vector<std::uint64_t> t_map;
    std::vector<std::vector<int>> accept;
    double eps = 0.25;

    double bob_acceptance(std::uint64_t x, std::uint64_t y) const {
        return accept.at(y).at(t_map.at(x)) ? 0.5 + eps : 0.5 - eps;
    }

    json to_json() const {
        return json{{"x_bits", x_bits}, {"y_bits", y_bits}, {"c", c}, {"t_map", t_map}, {"accept", accept}, {"eps", eps}};
    }

    static PPProtocol from_json(const json &j) {
        try {
            PPProtocol pp;
            pp.x_bits = detail::int_field(j, "x_bits", "");
            pp.y_bits = detail::int_field(j, "y_bits", "");
            pp.c = detail::int_field(j, "c", "");
            pp.eps = detail::number_field(j, "eps", "");
            const json &t = detail::field(j, "t_map", "");
            if (!t.is_array()) throw ParseError("\"t_map\" must be a list", "/t_map");
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i].is_array()) {
                    if (t[i].size() != 1) throw ShapeError("non-deterministic message map at x = " + std::to_string(i));
                    pp.t_map.push_back(t[i][0].get<std::uint64_t>());
                } else {
                    pp.t_map.push_back(t[i].get<std::uint64_t>());
                }
            }
            const json &a = detail::field(j, "accept", "");
            pp.accept = a.get<std::vector<std::vector<int>>>();
            return pp;
        } catch (const json::exception &e) {
            throw ParseError(std::string("malformed PP protocol: ") + e.what(), "");
        }
    }
};

inline void check_pp(const PPProtocol &pp) {
    if (pp.c < 1 || pp.x_bits < 1 || pp.y_bits < 1) throw DomainError("PP protocol sizes must be positive");
    if (!(pp.eps >= 0 && pp.eps <= 0.5)) throw DomainError("PP bias must lie in [0, 1/2]");
    if (pp.t_map.size() != (std::size_t{1} << pp.x_bits)) throw DimensionError("t_map needs 2^x_bits entries");
    for (auto z : pp.t_map) {
        if (z >= (std::uint64_t{1} << pp.c)) throw DomainError("message outside c bits");
    }
    if (pp.accept.size() != (std::size_t{1} << pp.y_bits)) throw DimensionError("accept table needs 2^y_bits rows");
    for (const auto &row : pp.accept) {
        if (row.size() != (std::size_t{1} << pp.c)) throw DimensionError("accept rows need 2^c entries");
        int ones = 0;
        for (int v : row) {
            if (v != 0 && v != 1) throw DomainError("accept entries must be 0 or 1");
            ones += v;
        }
        if (2 * ones != static_cast<int>(row.size())) {
            throw ShapeError("acceptance predicate must accept exactly half of the messages for every y");
        }
    }
}

inline TransformResult pp_to_oneway(const PPProtocol &pp) {
    check_pp(pp);
    const int c = pp.c;
    ProtocolSpec p;
    p.name = "pp-oneway";
    p.players = 2;
    p.layout.clean = 1;
    p.layout.mixed = c + 1;
    p.layout.owners.assign(static_cast<std::size_t>(c + 2), 0);
    p.layout.owners[static_cast<std::size_t>(c + 1)] = 1;
    std::vector<int> at, bt;
    for (int j = 0; j <= c; ++j) at.push_back(j);
    bt = at;
    bt.push_back(c + 1);
    p.rounds.push_back(RoundAction{0, {Op{generator_gate("pp.alice", json{{"c", c}, {"t_map", pp.t_map}}), at}}, at, 1});
    p.rounds.push_back(RoundAction{1, {Op{generator_gate("pp.bob", json{{"c", c}, {"eps", pp.eps}, {"accept", pp.accept}}), bt}}, {}, -1});
    p.measurement = Measurement::single_qubit(1, 1);
    const double alpha = std::ldexp(1.0, -c);
    p.declared = DeclaredBias{0.5, alpha * pp.eps};

    TransformCert cert;
    cert.pass = "pp-oneway";
    cert.input_bias = pp.eps;
    cert.input_reference = 0.5;
    cert.alpha = alpha;
    cert.beta = (1 - alpha) / 2;
    cert.predicted_bias = alpha * pp.eps;
    cert.predicted_reference = 0.5;
    cert.communication_before = c;
    cert.communication_after = communication_of(p);
    if (pp.eps > 0) cert.cost_bound = (c + 1) * std::ldexp(1.0, 2 * c) / (pp.eps * pp.eps);
    return {p, cert};
}

// ---------------------------------------------------------------------------
// Pass names for chaining.

inline TransformResult apply_pass(const std::string &name, const ProtocolSpec &p) {
    if (name == "k1") return k_to_one_clean(p);
    if (name == "sq-measure") return projective_to_single_qubit(p);
    if (name == "trace-form") return to_trace_form(p);
    if (name == "unclock") return unclock(p);
    if (name == "lemma1") return two_round_one_clean(p);
    if (name == "fixed") return to_fixed_channel(p);
    if (name == "pp-oneway") throw ShapeError("pp-oneway consumes a classical PP protocol, not a quantum descriptor");
    throw DomainError("unknown pass \"" + name + "\"");
}

}  // namespace dqc1

#endif
