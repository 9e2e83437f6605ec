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

// Acceptance probabilities of protocols.
//
// Three backends: a density matrix, an average of pure-state runs over the
// mixed-register basis, and a trace evaluation for Hadamard-test shaped
// protocols. Also the one-way trace formula and the repetition harness.

#ifndef DQC1_SIMULATOR_HPP
#define DQC1_SIMULATOR_HPP

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dqc1/protocol.hpp"

namespace dqc1 {

enum class Backend { Density, Ensemble, Trace };

inline const char *backend_name(Backend b) {
    switch (b) {
        case Backend::Density: return "density";
        case Backend::Ensemble: return "ensemble";
        case Backend::Trace: return "trace";
    }
    return "?";
}

inline Backend backend_from_name(const std::string &s) {
    if (s == "density") return Backend::Density;
    if (s == "ensemble") return Backend::Ensemble;
    if (s == "trace") return Backend::Trace;
    throw DomainError("unknown backend \"" + s + "\"");
}

inline constexpr int kDensityQubitLimit = 12;
inline constexpr int kEnsembleQubitLimit = 20;
inline constexpr int kTraceQubitLimit = 14;

struct SimOptions {
    const GeneratorRegistry *registry = nullptr;
    /// Mixed qubits pinned to a computational basis value instead of I/2.
    std::map<int, int> fixed;
    /// Ensemble backend: number of sampled branches (all branches when empty).
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;

    const GeneratorRegistry &reg() const { return registry ? *registry : default_registry(); }
};

struct LabeledInput {
    Inputs inputs;
    int label = -1;  // -1 when unknown
};

struct RunRecord {
    std::string input;
    double acceptance = 0;
    int label = -1;
    double elapsed = 0;
};

struct RunReport {
    std::vector<RunRecord> records;
    Backend backend = Backend::Density;
    std::optional<double> reference;
    std::optional<double> bias_measured;
    std::optional<double> bias_declared;
    std::uint64_t seed = 0;
    double elapsed = 0;

    double acceptance() const { return records.at(0).acceptance; }
};

inline std::string inputs_label(const Inputs &in) {
    std::string s;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (i) s += ':';
        s += in[i].label();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Lowering and initial states.

inline const PlayerInput &input_of(const Inputs &in, int player) {
    static const PlayerInput kEmpty;
    return player < static_cast<int>(in.size()) ? in[static_cast<std::size_t>(player)] : kEmpty;
}

inline std::vector<LocalGate> lower_protocol(const ProtocolSpec &p, const Inputs &in, const GeneratorRegistry &reg,
                                             CounterTracker *counter = nullptr) {
    std::vector<LocalGate> out;
    for (const auto &r : p.rounds)
        for (const auto &op : r.ops) lower_gate(*op.unitary, op.targets, input_of(in, r.player), reg, out, counter);
    return out;
}

inline void check_fixed(const ProtocolSpec &p, const std::map<int, int> &fixed) {
    for (const auto &[q, v] : fixed) {
        if (q < p.layout.clean || q >= p.qubits()) throw DomainError("only mixed qubits can be pinned");
        if (v != 0 && v != 1) throw DomainError("pinned value must be 0 or 1");
    }
}

/// Diagonal of the initial state |0..0><0..0| (x) I/2^m with pinned qubits.
inline std::vector<double> initial_diagonal(const ProtocolSpec &p, const std::map<int, int> &fixed) {
    const int q = p.qubits();
    const std::uint64_t dim = std::uint64_t{1} << q;
    std::vector<double> diag(dim);
    const int free = p.layout.mixed - static_cast<int>(fixed.size());
    const double w = std::ldexp(1.0, -free);
    for (std::uint64_t b = 0; b < dim; ++b) {
        bool ok = true;
        for (int j = 0; j < p.layout.clean && ok; ++j) ok = ((b >> (q - 1 - j)) & 1) == 0;
        for (const auto &[qb, v] : fixed) ok = ok && static_cast<int>((b >> (q - 1 - qb)) & 1) == v;
        diag[b] = ok ? w : 0.0;
    }
    return diag;
}

// ---------------------------------------------------------------------------
// Density backend.

inline double density_acceptance(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    const int q = p.qubits();
    if (q > kDensityQubitLimit) {
        throw BackendLimitError("density backend handles at most " + std::to_string(kDensityQubitLimit) + " qubits (protocol has " +
                                std::to_string(q) + "); use the ensemble or trace backend");
    }
    check_fixed(p, opt.fixed);
    const auto diag = initial_diagonal(p, opt.fixed);
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(diag.size()), static_cast<Eigen::Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
    for (const auto &g : lower_protocol(p, in, opt.reg())) conjugate_in_place(rho, q, g);
    return accept_probability_on(rho, p.measurement.as_projector(), p.measurement.qubits);
}

// ---------------------------------------------------------------------------
// Ensemble backend.

inline double ensemble_acceptance(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    const int q = p.qubits();
    if (q > kEnsembleQubitLimit) {
        throw BackendLimitError("ensemble backend handles at most " + std::to_string(kEnsembleQubitLimit) + " qubits");
    }
    check_fixed(p, opt.fixed);
    std::vector<int> free;
    std::uint64_t pinned = 0;
    for (int j = p.layout.clean; j < q; ++j) {
        auto it = opt.fixed.find(j);
        if (it == opt.fixed.end()) {
            free.push_back(j);
        } else if (it->second) {
            pinned |= std::uint64_t{1} << (q - 1 - j);
        }
    }
    const std::uint64_t branches = std::uint64_t{1} << free.size();
    std::vector<std::uint64_t> starts;
    if (opt.samples) {
        if (*opt.samples == 0) throw DomainError("ensemble sample count must be positive");
        for (std::uint64_t s = 0; s < *opt.samples; ++s) {
            std::mt19937_64 rng(derive_seed(opt.seed, s));
            starts.push_back(pinned | scatter_bits(std::uniform_int_distribution<std::uint64_t>(0, branches - 1)(rng), free, q));
        }
    } else {
        for (std::uint64_t b = 0; b < branches; ++b) starts.push_back(pinned | scatter_bits(b, free, q));
    }
    const auto gates = lower_protocol(p, in, opt.reg());
    const LocalGate meas{p.measurement.as_projector(), p.measurement.qubits, {}, {}};
    const std::uint64_t dim = std::uint64_t{1} << q;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(256, (std::uint64_t{1} << 22) / dim));
    double total = 0;
    for (std::uint64_t lo = 0; lo < starts.size(); lo += chunk) {
        const std::uint64_t n = std::min<std::uint64_t>(chunk, starts.size() - lo);
        Matrix psi = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
        for (std::uint64_t i = 0; i < n; ++i) psi(static_cast<Eigen::Index>(starts[lo + i]), static_cast<Eigen::Index>(i)) = 1;
        for (const auto &g : gates) apply_left(psi, q, g);
        Matrix phi = psi;
        apply_left(phi, q, meas);
        for (std::uint64_t i = 0; i < n; ++i) {
            total += checked_probability(psi.col(static_cast<Eigen::Index>(i)).dot(phi.col(static_cast<Eigen::Index>(i))));
        }
    }
    return checked_probability(total / static_cast<double>(starts.size()));
}

// ---------------------------------------------------------------------------
// Trace backend.

namespace detail {

inline bool is_control_hadamard(const LocalGate &g, int control) {
    return g.targets == std::vector<int>{control} && g.controls.empty() && max_abs(g.matrix - hadamard()) < 1e-12;
}

}  // namespace detail

/// Acceptance of a Hadamard-test shaped protocol as 1/2 + Re Tr(W)/2^{d+1},
/// with the round counter (if any) tracked classically per start value.
inline double trace_acceptance(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    if (!p.trace_form) throw ShapeError("protocol is not tagged as trace form");
    const int q = p.qubits();
    if (q > kTraceQubitLimit) {
        throw BackendLimitError("trace backend handles at most " + std::to_string(kTraceQubitLimit) + " qubits");
    }
    check_fixed(p, opt.fixed);
    const int control = p.trace_form->control;
    const std::vector<int> &counter = p.trace_form->counter;
    if (p.layout.clean != 1 || control != 0) throw ShapeError("trace form needs exactly one clean qubit, the control");
    const auto &m = p.measurement;
    if (m.kind != Measurement::Kind::SingleQubit || m.qubits != std::vector<int>{control} || m.accept_outcome != 0) {
        throw ShapeError("trace form must measure the control qubit and accept on 0");
    }
    std::vector<int> z;
    std::vector<int> zlocal(static_cast<std::size_t>(q), -1);
    for (int j = 1; j < q; ++j) {
        if (std::find(counter.begin(), counter.end(), j) != counter.end()) continue;
        zlocal[static_cast<std::size_t>(j)] = static_cast<int>(z.size());
        z.push_back(j);
    }
    const int dz = static_cast<int>(z.size());

    std::vector<int> free_counter;
    std::uint64_t counter_fixed = 0;
    for (std::size_t i = 0; i < counter.size(); ++i) {
        auto it = opt.fixed.find(counter[i]);
        if (it == opt.fixed.end()) {
            free_counter.push_back(static_cast<int>(i));
        } else if (it->second) {
            counter_fixed |= std::uint64_t{1} << (counter.size() - 1 - i);
        }
    }
    std::vector<int> free_z;
    std::uint64_t z_fixed = 0;
    for (int j = 0; j < dz; ++j) {
        auto it = opt.fixed.find(z[static_cast<std::size_t>(j)]);
        if (it == opt.fixed.end()) {
            free_z.push_back(j);
        } else if (it->second) {
            z_fixed |= std::uint64_t{1} << (dz - 1 - j);
        }
    }

    const std::uint64_t zdim = std::uint64_t{1} << dz;
    const std::uint64_t zcols = std::uint64_t{1} << free_z.size();
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(zcols, (std::uint64_t{1} << 22) / zdim));
    Complex total = 0;
    const int cw = static_cast<int>(counter.size());
    for (std::uint64_t cj = 0; cj < (std::uint64_t{1} << free_counter.size()); ++cj) {
        std::uint64_t start = counter_fixed;
        for (std::size_t i = 0; i < free_counter.size(); ++i) {
            if ((cj >> (free_counter.size() - 1 - i)) & 1) start |= std::uint64_t{1} << (cw - 1 - free_counter[i]);
        }
        CounterTracker tracker;
        tracker.num_qubits = q;
        tracker.write(counter, start);
        const auto gates = lower_protocol(p, in, opt.reg(), &tracker);

        // Shape: H_c, then controlled gates with H_c appearing in adjacent pairs, then H_c.
        if (gates.size() < 2 || !detail::is_control_hadamard(gates.front(), control) ||
            !detail::is_control_hadamard(gates.back(), control)) {
            throw ShapeError("trace form must open and close with a Hadamard on the control");
        }
        std::vector<LocalGate> w;
        for (std::size_t i = 1; i + 1 < gates.size(); ++i) {
            const LocalGate &g = gates[i];
            if (detail::is_control_hadamard(g, control)) {
                if (i + 2 < gates.size() && detail::is_control_hadamard(gates[i + 1], control)) {
                    ++i;
                    continue;
                }
                throw ShapeError("unpaired Hadamard on the control inside the trace form");
            }
            auto cpos = std::find(g.controls.begin(), g.controls.end(), control);
            if (cpos == g.controls.end() || g.control_values[static_cast<std::size_t>(cpos - g.controls.begin())] != 1) {
                throw ShapeError("gate inside the trace form is not controlled on the control qubit");
            }
            LocalGate lg;
            lg.matrix = g.matrix;
            for (int t : g.targets) {
                if (zlocal[static_cast<std::size_t>(t)] < 0) throw ShapeError("controlled gate acts on the control or counter");
                lg.targets.push_back(zlocal[static_cast<std::size_t>(t)]);
            }
            for (std::size_t k = 0; k < g.controls.size(); ++k) {
                if (g.controls[k] == control) continue;
                if (zlocal[static_cast<std::size_t>(g.controls[k])] < 0) throw ShapeError("controlled gate reads the counter register");
                lg.controls.push_back(zlocal[static_cast<std::size_t>(g.controls[k])]);
                lg.control_values.push_back(g.control_values[k]);
            }
            w.push_back(std::move(lg));
        }
        if (tracker.read(counter) != start) throw ShapeError("counter does not return to its start value");

        for (std::uint64_t lo = 0; lo < zcols; lo += chunk) {
            const std::uint64_t n = std::min(chunk, zcols - lo);
            std::vector<std::uint64_t> cols(n);
            Matrix block = Matrix::Zero(static_cast<Eigen::Index>(zdim), static_cast<Eigen::Index>(n));
            for (std::uint64_t i = 0; i < n; ++i) {
                cols[i] = z_fixed | scatter_bits(lo + i, free_z, dz);
                block(static_cast<Eigen::Index>(cols[i]), static_cast<Eigen::Index>(i)) = 1;
            }
            for (const auto &g : w) apply_left(block, dz, g);
            for (std::uint64_t i = 0; i < n; ++i) total += block(static_cast<Eigen::Index>(cols[i]), static_cast<Eigen::Index>(i));
        }
    }
    const int free_bits = static_cast<int>(free_z.size() + free_counter.size());
    return checked_probability(0.5 + std::ldexp(total.real(), -(free_bits + 1)));
}

// ---------------------------------------------------------------------------
// Entry points.

inline double acceptance(const ProtocolSpec &p, const Inputs &in, Backend b, const SimOptions &opt = {}) {
    switch (b) {
        case Backend::Density: return density_acceptance(p, in, opt);
        case Backend::Ensemble: return ensemble_acceptance(p, in, opt);
        case Backend::Trace: return trace_acceptance(p, in, opt);
    }
    return 0;
}

/// Bias around `ref`: min over 1-inputs of (acc - ref) and over 0-inputs of (ref - acc).
inline double bias_of(const std::vector<double> &acc, const std::vector<int> &labels, double ref) {
    if (acc.empty()) throw DomainError("bias needs at least one labeled input");
    if (acc.size() != labels.size()) throw DimensionError("acceptance and label counts differ");
    double eps = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (labels[i] == 1) {
            eps = std::min(eps, acc[i] - ref);
        } else if (labels[i] == 0) {
            eps = std::min(eps, ref - acc[i]);
        } else {
            throw DomainError("every input must be labeled 0 or 1");
        }
    }
    return eps;
}

inline RunReport run_batch(const ProtocolSpec &p, const std::vector<LabeledInput> &inputs, Backend b,
                           const SimOptions &opt = {}, std::optional<double> ref = std::nullopt) {
    require_valid(p, opt.reg());
    RunReport rep;
    rep.backend = b;
    rep.seed = opt.seed;
    rep.bias_declared = p.declared.eps;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto &li : inputs) {
        const auto s = std::chrono::steady_clock::now();
        RunRecord rec;
        rec.input = inputs_label(li.inputs);
        rec.label = li.label;
        rec.acceptance = acceptance(p, li.inputs, b, opt);
        rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
        rep.records.push_back(std::move(rec));
    }
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ref) {
        rep.reference = ref;
        std::vector<double> acc;
        std::vector<int> lab;
        for (const auto &r : rep.records) {
            acc.push_back(r.acceptance);
            lab.push_back(r.label);
        }
        rep.bias_measured = bias_of(acc, lab, *ref);
    }
    return rep;
}

inline RunReport run_density(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    return run_batch(p, {LabeledInput{in, -1}}, Backend::Density, opt);
}

inline RunReport run_ensemble(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    return run_batch(p, {LabeledInput{in, -1}}, Backend::Ensemble, opt);
}

inline RunReport run_trace(const ProtocolSpec &p, const Inputs &in, const SimOptions &opt = {}) {
    return run_batch(p, {LabeledInput{in, -1}}, Backend::Trace, opt);
}

inline double measure_bias(const ProtocolSpec &p, const std::vector<LabeledInput> &inputs, double ref,
                           Backend b = Backend::Density, const SimOptions &opt = {}) {
    if (inputs.empty()) throw DomainError("measure_bias needs a nonempty input set");
    return *run_batch(p, inputs, b, opt, ref).bias_measured;
}

// ---------------------------------------------------------------------------
// One-way trace formula.

/// Re tr(B A) / 2^{m+1} for padded m-qubit unitaries.
inline double oneway_bias(const Matrix &ua, const Matrix &ub) {
    if (ua.rows() != ua.cols() || ub.rows() != ub.cols() || ua.rows() != ub.rows()) {
        throw DimensionError("one-way unitaries must be square with equal dimension");
    }
    const int m = qubit_count(ua.rows());
    return std::ldexp((ub * ua).trace().real(), -(m + 1));
}

/// Hadamard-test one-way protocol: Alice holds a private qubits and c message
/// qubits, Bob holds b private qubits. Qubit 0 is the clean control; Alice
/// applies controlled-ua on (private, message), Bob controlled-ub on (message, private).
inline ProtocolSpec oneway_protocol(const Matrix &ua, const Matrix &ub, int a, int c, int b) {
    if (ua.rows() != (Eigen::Index{1} << (a + c)) || ub.rows() != (Eigen::Index{1} << (c + b))) {
        throw DimensionError("local unitary dimensions do not match the register split");
    }
    ProtocolSpec p;
    p.name = "oneway";
    p.players = 2;
    const int m = a + c + b;
    p.layout.clean = 1;
    p.layout.mixed = m;
    p.layout.owners.assign(static_cast<std::size_t>(m + 1), 0);
    for (int j = 1 + a + c; j <= m; ++j) p.layout.owners[static_cast<std::size_t>(j)] = 1;
    std::vector<int> alice_t{0}, msg{0}, bob_t{0};
    for (int j = 1; j <= a + c; ++j) alice_t.push_back(j);
    for (int j = 1 + a; j <= a + c; ++j) msg.push_back(j);
    for (int j = 1 + a; j <= m; ++j) bob_t.push_back(j);
    const GatePtr h = explicit_gate(hadamard());
    p.rounds.push_back(RoundAction{0, {Op{h, {0}}, Op{controlled(explicit_gate(ua)), alice_t}}, msg, 1});
    p.rounds.push_back(RoundAction{1, {Op{controlled(explicit_gate(ub)), bob_t}, Op{h, {0}}}, {}, -1});
    p.measurement = Measurement::single_qubit(0, 0);
    p.trace_form = TraceFormTag{0, {}};
    return p;
}

// ---------------------------------------------------------------------------
// Repetition.

struct RepetitionPlan {
    std::int64_t t = 1;
    std::int64_t threshold = 1;  // accept iff at least this many runs accept
};

struct AmplifyResult {
    RepetitionPlan plan;
    double error = 0;
    double miss_one = 0;   // Pr[Bin(t, acc1) < p t]
    double false_zero = 0; // Pr[Bin(t, acc0) >= p t]
};

inline double binomial_pmf(std::int64_t t, std::int64_t s, double a) {
    if (a <= 0) return s == 0 ? 1.0 : 0.0;
    if (a >= 1) return s == t ? 1.0 : 0.0;
    const double lc = std::lgamma(static_cast<double>(t) + 1) - std::lgamma(static_cast<double>(s) + 1) -
                      std::lgamma(static_cast<double>(t - s) + 1);
    return std::exp(lc + static_cast<double>(s) * std::log(a) + static_cast<double>(t - s) * std::log1p(-a));
}

inline AmplifyResult amplify(double acc0, double acc1, double p, double eps) {
    constexpr double slack = 1e-12;
    if (!(eps > 0 && eps <= 0.5) || !(p > 0 && p < 1)) throw DomainError("amplify needs 0 < eps <= 1/2 and 0 < p < 1");
    if (!(acc0 >= -slack && acc0 <= p - eps + slack && p + eps <= acc1 + slack && acc1 <= 1 + slack)) {
        throw DomainError("amplify needs acc0 <= p - eps <= p + eps <= acc1");
    }
    AmplifyResult r;
    r.plan.t = static_cast<std::int64_t>(std::ceil(4.0 / (eps * eps)));
    r.plan.threshold = static_cast<std::int64_t>(std::ceil(p * static_cast<double>(r.plan.t)));
    for (std::int64_t s = 0; s <= r.plan.t; ++s) {
        if (s < r.plan.threshold) {
            r.miss_one += binomial_pmf(r.plan.t, s, acc1);
        } else {
            r.false_zero += binomial_pmf(r.plan.t, s, acc0);
        }
    }
    r.error = std::max(r.miss_one, r.false_zero);
    return r;
}

}  // namespace dqc1

#endif
