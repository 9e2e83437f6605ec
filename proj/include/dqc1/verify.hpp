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

// End-to-end checks shared by the acceptance binary and `dqc1 verify`.
// Each check reports pass/fail with the largest observed deviation.

#ifndef DQC1_VERIFY_HPP
#define DQC1_VERIFY_HPP

#include <chrono>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dqc1/classical.hpp"
#include "dqc1/problems.hpp"
#include "dqc1/random_protocols.hpp"
#include "dqc1/simulator.hpp"
#include "dqc1/transforms.hpp"

namespace dqc1 {

struct CheckResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double time_limit = 0;  // 0 when unbounded
};

namespace verify {

inline constexpr double kTol = 1e-9;

/// Accumulates failures and the worst deviation.
struct Tally {
    bool ok = true;
    double worst = 0;
    std::vector<std::string> notes;

    void close(double got, double want, const std::string &what, double tol = kTol) {
        const double d = std::abs(got - want);
        worst = std::max(worst, d);
        if (!(d <= tol)) fail(what + ": got " + format_number(got) + ", want " + format_number(want));
    }
    void check(bool cond, const std::string &what) {
        if (!cond) fail(what);
    }
    void fail(const std::string &what) {
        ok = false;
        if (notes.size() < 5) notes.push_back(what);
    }
    std::string summary(const std::string &extra = "") const {
        std::ostringstream os;
        os << "max deviation " << worst;
        if (!extra.empty()) os << "; " << extra;
        for (const auto &n : notes) os << "; " << n;
        return os.str();
    }
};

inline std::vector<double> acceptances(const ProtocolSpec &p, const std::vector<LabeledInput> &in, Backend b = Backend::Density,
                                       const SimOptions &opt = {}) {
    std::vector<double> out;
    for (const auto &li : in) out.push_back(acceptance(p, li.inputs, b, opt));
    return out;
}

// 1. IP2.
inline CheckResult ip2_example() {
    Tally t;
    for (int n = 1; n <= 3; ++n) {
        const auto in = ip2_inputs(n);
        const auto clocked = ip2_clocked(n), one = ip2_one_clean(n);
        const auto a = acceptances(clocked, in), b = acceptances(one, in);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const int lab = in[i].label;
            t.close(a[i], lab, "clocked n=" + std::to_string(n));
            t.close(lab ? b[i] : 1 - b[i], 0.625, "one-clean correct answer n=" + std::to_string(n));
        }
        t.check(communication_cost(clocked) == 2 * n, "clocked communication");
        t.check(communication_cost(one) == 2 * n + 1, "one-clean communication");
        t.close(cost_report(one).q1_cost, 64.0 * (2 * n + 1), "Q1 cost");
    }
    return {1, "IP2 clocked error 0, one-clean 5/8, costs", t.ok, t.summary(), 0, 10};
}

// 2. k clean -> one clean.
inline CheckResult k1_cert() {
    Tally t;
    for (int n = 1; n <= 3; ++n) {
        const auto in = ip2_inputs(n);
        const auto res = k_to_one_clean(ip2_clocked(n));
        const double bias = measure_bias(res.protocol, in, res.cert.predicted_reference);
        t.close(bias, 0.5 / 4, "IP2 chain n=" + std::to_string(n));
        t.close(res.cert.predicted_bias, 0.125, "cert bias");
    }
    int tested = 0;
    for (std::uint64_t s = 0; tested < 20; ++s) {
        RandomProtocolOptions o;
        o.clean = 2;
        o.mixed = static_cast<int>(s % 3);
        o.rounds = 2 + static_cast<int>(s % 3);
        auto base = random_protocol(o, 1000 + s);
        auto in = all_bit_inputs(2);
        const auto acc = acceptances(base, in);
        const double ref = label_by_midpoint(in, acc);
        const double eps = bias_of(acc, [&] {
            std::vector<int> l;
            for (const auto &x : in) l.push_back(x.label);
            return l;
        }(), ref);
        if (eps <= 1e-6) continue;
        base.declared = DeclaredBias{std::clamp(ref, 1e-3, 1 - 1e-3), std::min(eps, 0.5)};
        const auto res = k_to_one_clean(base);
        if (res.protocol.qubits() > 6) continue;
        ++tested;
        const double out = measure_bias(res.protocol, in, res.cert.alpha * ref + res.cert.beta);
        t.close(out, eps / 4, "random seed " + std::to_string(1000 + s));
    }
    return {2, "k-to-one-clean bias eps/2^k (IP2 chain + 20 random)", t.ok, t.summary(), 0, 0};
}

// 3. Trace form and unclocking.
inline CheckResult trace_form_formula() {
    Tally t;
    std::vector<ProtocolSpec> wrapped;
    for (int n = 1; n <= 2; ++n) {
        const auto in = ip2_inputs(n);
        const auto k1 = k_to_one_clean(ip2_clocked(n));
        const auto sq = projective_to_single_qubit(k1.protocol);
        const auto tf = to_trace_form(sq.protocol);
        const auto acc = acceptances(tf.protocol, in, Backend::Trace);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const double signed_eps = (in[i].label ? 1 : -1) * 0.5;
            t.close(acc[i], trace_form_acceptance(signed_eps, 2), "trace form IP2 n=" + std::to_string(n));
        }
        wrapped.push_back(tf.protocol);
        wrapped.push_back(unclock(tf.protocol).protocol);
    }
    for (std::uint64_t s = 0; s < 6; ++s) {
        RandomProtocolOptions o;
        o.clean = 1 + static_cast<int>(s % 2);
        o.mixed = 1;
        o.rounds = 2 + static_cast<int>(s % 2);
        o.single_qubit_measurement = true;
        const auto tf = to_trace_form(random_protocol(o, 2000 + s));
        wrapped.push_back(tf.protocol);
        wrapped.push_back(unclock(tf.protocol).protocol);
    }
    for (int n : {2, 4}) wrapped.push_back(abc_protocol(n));
    int compared = 0;
    for (const auto &p : wrapped) {
        if (p.qubits() > 10) continue;
        ++compared;
        std::vector<Inputs> cases;
        if (p.players == 3) {
            cases.push_back(abc_instance(1 << (p.qubits() - 1), 1, 7).inputs());
        } else {
            for (const auto &li : all_bit_inputs(2)) cases.push_back(li.inputs);
        }
        for (const auto &in : cases) {
            t.close(acceptance(p, in, Backend::Trace), acceptance(p, in, Backend::Density), "trace vs density " + p.name);
        }
    }
    int starts_checked = 0;
    for (const auto &p : wrapped) {
        if (!p.trace_form || p.trace_form->counter.empty()) continue;
        const int r = static_cast<int>(p.rounds.size()) / 2;
        if (r > 8) continue;
        const auto &ctr = p.trace_form->counter;
        const auto in = all_bit_inputs(2);
        for (const auto &li : in) {
            const double avg = acceptance(p, li.inputs, Backend::Trace);
            for (int start = 0; start < (1 << ctr.size()); ++start) {
                SimOptions opt;
                for (std::size_t b = 0; b < ctr.size(); ++b) opt.fixed[ctr[b]] = (start >> (ctr.size() - 1 - b)) & 1;
                t.close(acceptance(p, li.inputs, Backend::Trace, opt), avg, "counter start " + std::to_string(start));
                ++starts_checked;
            }
        }
    }
    return {3, "trace-form acceptance 1/2+1/16+eps/2^(k+3), trace = density, counter starts", t.ok,
            t.summary(std::to_string(compared) + " protocols compared, " + std::to_string(starts_checked) + " counter starts"), 0, 60};
}

// 4. MIDDLE.
inline CheckResult middle_formulas() {
    Tally t;
    std::mt19937_64 rng(derive_seed(4, 0));
    for (int n : {2, 4, 8}) {
        const auto std_p = middle_protocol(n), one = middle_protocol(n, MiddleVariant::OneClean);
        t.check(communication_cost(std_p) == communication_cost(one), "one-clean communication differs");
        std::vector<MiddleInstance> cases;
        if (n <= 4) {
            for (const auto &li : middle_inputs(n)) cases.push_back(middle_instance(li.inputs[0].bits, li.inputs[1].bits));
        } else {
            std::uniform_int_distribution<std::uint64_t> d(0, 255);
            for (int i = 0; i < 1000; ++i) cases.push_back(middle_instance(to_bits(d(rng), 8), to_bits(d(rng), 8)));
        }
        const double nn = n;
        for (const auto &c : cases) {
            const Inputs in{PlayerInput::from_bits(c.x), PlayerInput::from_bits(c.y)};
            const double tt = c.t;
            t.close(acceptance(std_p, in, Backend::Density), 4 * tt * tt / (nn * nn), "standard n=" + std::to_string(n));
            t.close(acceptance(one, in, Backend::Density), 2 * tt * tt / (nn * nn * nn), "one-clean n=" + std::to_string(n));
        }
    }
    return {4, "MIDDLE acceptance 4t^2/n^2 and 2t^2/n^3", t.ok, t.summary(), 0, 60};
}

// 5. ABC.
inline CheckResult abc_exact() {
    Tally t;
    std::mt19937_64 rng(derive_seed(5, 0));
    for (int n : {2, 4, 8}) {
        const auto p = abc_protocol(n);
        const int l = qubit_count(n);
        for (int label : {1, -1}) {
            for (int trial = 0; trial < 100; ++trial) {
                const auto inst = abc_instance(n, label, rng());
                const double want = label == 1 ? 1.0 : 0.0;
                t.close(acceptance(p, inst.inputs(), Backend::Density), want, "ABC n=" + std::to_string(n));
                SimOptions pinned;
                for (int j = 1; j <= l; ++j) pinned.fixed[j] = static_cast<int>(rng() & 1);
                t.close(acceptance(p, inst.inputs(), Backend::Density, pinned), want, "ABC catalyst n=" + std::to_string(n));
            }
        }
    }
    return {5, "ABC acceptance exactly 1 / 0, catalyst-independent", t.ok, t.summary(), 0, 30};
}

// 6. PP -> one-way.
inline std::vector<PPProtocol> toy_pp_protocols(double eps) {
    PPProtocol xor1;
    xor1.x_bits = 1;
    xor1.y_bits = 1;
    xor1.c = 1;
    xor1.t_map = {0, 1};
    xor1.accept = {{0, 1}, {1, 0}};
    xor1.eps = eps;
    PPProtocol two;
    two.x_bits = 2;
    two.y_bits = 2;
    two.c = 2;
    two.t_map = {0, 1, 2, 3};
    two.eps = eps;
    for (int y = 0; y < 4; ++y) {
        std::vector<int> row;
        for (int z = 0; z < 4; ++z) row.push_back(((z >> 1) ^ (y >> 1) ^ ((z & 1) & (y & 1))) & 1);
        two.accept.push_back(row);
    }
    return {xor1, two};
}

inline CheckResult pp_oneway() {
    Tally t;
    for (double eps : {0.25, 0.125}) {
        for (const auto &pp : toy_pp_protocols(eps)) {
            const auto res = pp_to_oneway(pp);
            const double scale = std::ldexp(1.0, -pp.c);
            for (std::uint64_t x = 0; x < pp.t_map.size(); ++x)
                for (std::uint64_t y = 0; y < pp.accept.size(); ++y) {
                    const Inputs in{PlayerInput::from_bits(to_bits(x, pp.x_bits)), PlayerInput::from_bits(to_bits(y, pp.y_bits))};
                    const double sign = pp.accept[y][pp.t_map[x]] ? 1 : -1;
                    t.close(acceptance(res.protocol, in, Backend::Density), 0.5 + sign * eps * scale, "c=" + std::to_string(pp.c));
                }
            t.close(*res.cert.cost_bound, (pp.c + 1) * std::ldexp(1.0, 2 * pp.c) / (eps * eps), "cost bound");
        }
    }
    return {6, "PP to one-way acceptance 1/2 + eps/2^c, cost bound", t.ok, t.summary(), 0, 0};
}

// 7. One-way bias formula.
inline CheckResult oneway_formula() {
    Tally t;
    std::mt19937_64 rng(derive_seed(7, 0));
    for (int i = 0; i < 50; ++i) {
        const int a = static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 3), b = static_cast<int>(rng() % 3);
        const Matrix ua = haar_unitary(1 << (a + c), rng()), ub = haar_unitary(1 << (c + b), rng());
        const auto p = oneway_protocol(ua, ub, a, c, b);
        const Matrix pa = tensor(ua, identity(Eigen::Index{1} << b)), pb = tensor(identity(Eigen::Index{1} << a), ub);
        const double formula = oneway_bias(pa, pb);
        t.close(acceptance(p, {}, Backend::Density) - 0.5, formula, "protocol " + std::to_string(i));
        t.check(std::abs(formula) <= 0.5 + kTol, "|bias| > 1/2");
    }
    return {7, "one-way bias formula Re tr / 2^(m+1)", t.ok, t.summary(), 0, 0};
}

// 8. Amplification.
inline CheckResult amplification() {
    Tally t;
    std::ostringstream os;
    for (double eps : {0.5, 0.25, 0.125}) {
        const auto r = amplify(0.5 - eps, 0.5 + eps, 0.5, eps);
        t.check(r.plan.t == static_cast<std::int64_t>(std::ceil(4 / (eps * eps))), "repetition count");
        t.check(r.error <= 1.0 / 3, "error above 1/3 at eps " + format_number(eps));
        os << "eps " << eps << ": t=" << r.plan.t << " error " << r.error << "  ";
    }
    return {8, "amplification error <= 1/3 after 4/eps^2 runs", t.ok, t.summary(os.str()), 0, 0};
}

// 9. Caps.
inline double cap_closed_form_4_1() { return 2.0 / 3 - std::sqrt(3.0) / (2 * std::numbers::pi); }

inline CheckResult caps_lemma() {
    Tally t;
    std::ostringstream os;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 1}, {8, 2}, {16, 2}}) {
        const double est = cap_probability_mc(n, k, 100000, derive_seed(9, static_cast<std::uint64_t>(n)));
        t.check(est > cap_lower_bound(k), "below bound at n=" + std::to_string(n));
        os << "(" << n << "," << k << ") " << est << " > " << cap_lower_bound(k) << "  ";
        if (n == 4) t.close(est, cap_closed_form_4_1(), "closed form", 0.01);
    }
    return {9, "caps probability above e^-k/(16 sqrt k); (4,1) matches closed form", t.ok, t.summary(os.str()), 0, 60};
}

// 10. Classical ABC.
inline CheckResult classical_abc(int trials = 100) {
    Tally t;
    const int n = 16, k = 2;
    const int want_bits = index_bits(cap_codebook_size(k)) + knr_rounds(0.01 * std::sqrt(static_cast<double>(k) / n));
    std::ostringstream os;
    std::mt19937_64 rng(derive_seed(10, 0));
    for (int label : {1, -1}) {
        int ok = 0;
        for (int i = 0; i < trials; ++i) {
            const auto inst = abc_instance(n, label, rng());
            const auto r = abc_classical(inst, 0, k, rng());
            ok += r.answer == (label == 1 ? 1 : 0);
            t.check(r.transcript.total == want_bits, "transcript length varies");
        }
        const double rate = static_cast<double>(ok) / trials;
        t.check(rate >= 0.9, "success rate " + format_number(rate));
        os << "label " << label << ": " << rate << "  ";
    }
    os << "transcript " << want_bits << " bits";
    return {10, "classical ABC success >= 0.9, deterministic transcript", t.ok, t.summary(os.str()), 0, 0};
}

// 11. Discrepancy.

/// Independent oracle: recursive include/exclude over rows, then columns.
inline double disc_recursive(const SignMatrix &m) {
    double best = 0;
    std::vector<int> rows;
    std::function<void(int)> over_rows = [&](int i) {
        if (i == m.rows) {
            if (rows.empty()) return;
            std::vector<double> s(static_cast<std::size_t>(m.cols), 0.0);
            for (int r : rows)
                for (int c = 0; c < m.cols; ++c) s[static_cast<std::size_t>(c)] += m.weight(r, c) * m.at(r, c);
            std::function<void(int, double, bool)> over_cols = [&](int c, double acc, bool any) {
                if (c == m.cols) {
                    if (any) best = std::max(best, std::abs(acc));
                    return;
                }
                over_cols(c + 1, acc, any);
                over_cols(c + 1, acc + s[static_cast<std::size_t>(c)], true);
            };
            over_cols(0, 0.0, false);
            return;
        }
        over_rows(i + 1);
        rows.push_back(i);
        over_rows(i + 1);
        rows.pop_back();
    };
    over_rows(0);
    return best;
}

inline CheckResult discrepancy() {
    Tally t;
    const auto eq = uniform_sign_matrix(2, 2, {1, -1, -1, 1});
    t.check(disc_bruteforce(eq).value == 0.25, "equality matrix value not exactly 1/4");
    std::mt19937_64 rng(derive_seed(11, 0));
    for (int i = 0; i < 20; ++i) {
        std::vector<int> e(36);
        for (int &v : e) v = (rng() & 1) ? 1 : -1;
        const auto m = uniform_sign_matrix(6, 6, e);
        t.close(disc_bruteforce(m).value, disc_recursive(m), "random 6x6", 1e-12);
    }
    return {11, "discrepancy brute force vs recursive oracle", t.ok, t.summary(), 0, 0};
}

// 12. Razborov samplers.
inline CheckResult razborov() {
    Tally t;
    std::mt19937_64 rng(derive_seed(12, 0));
    const int n = 14, len = n / 2 + 1, w = len / 4;
    for (auto which : {Razborov::Mu0, Razborov::Mu1}) {
        const int want_meet = which == Razborov::Mu0 ? 1 : 0;
        for (int i = 0; i < 100000; ++i) {
            const auto s = razborov_sample(n, which, rng);
            int wx = 0, wy = 0, meet = 0;
            for (int j = 0; j < len; ++j) {
                wx += s.x[static_cast<std::size_t>(j)] == '1';
                wy += s.y[static_cast<std::size_t>(j)] == '1';
                meet += s.x[static_cast<std::size_t>(j)] == '1' && s.y[static_cast<std::size_t>(j)] == '1';
            }
            if (wx != w || wy != w || meet != want_meet) {
                t.fail("constraint violated at draw " + std::to_string(i));
                break;
            }
            if (i < 1000) {
                const auto padded = middle_pad(s, n);
                int sum = 0;
                for (std::size_t j = 0; j < padded.x.size(); ++j) sum += padded.x[j] == '1' && padded.y[j] == '1';
                t.check(sum - n / 2 == (which == Razborov::Mu0 ? 0 : -1), "middle_pad offset");
            }
        }
    }
    return {12, "Razborov samplers: weight/intersection; middle_pad offsets", t.ok, t.summary(), 0, 0};
}

}  // namespace verify

inline std::vector<std::function<CheckResult()>> acceptance_checks() {
    return {verify::ip2_example,    verify::k1_cert, verify::trace_form_formula, verify::middle_formulas,
            verify::abc_exact,      verify::pp_oneway,     verify::oneway_formula,     verify::amplification,
            verify::caps_lemma,     [] { return verify::classical_abc(); }, verify::discrepancy, verify::razborov};
}

/// Runs one check, catching errors as failures and enforcing its time limit.
inline CheckResult run_check(const std::function<CheckResult()> &f, int id) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = f();
    } catch (const std::exception &e) {
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0 && r.seconds > r.time_limit) {
        r.pass = false;
        r.detail += "; exceeded " + format_number(r.time_limit) + " s";
    }
    return r;
}

}  // namespace dqc1

#endif
