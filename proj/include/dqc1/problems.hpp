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

// Built-in protocol families (IP2, MIDDLE, ABC) and their input generators.

#ifndef DQC1_PROBLEMS_HPP
#define DQC1_PROBLEMS_HPP

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dqc1/protocol.hpp"
#include "dqc1/simulator.hpp"
#include "dqc1/transforms.hpp"

namespace dqc1 {

inline std::string to_bits(std::uint64_t v, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((v >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

// ---------------------------------------------------------------------------
// IP2: inner product mod 2.

inline int ip2(const std::string &x, const std::string &y) {
    if (x.size() != y.size()) throw DomainError("IP2 inputs must have equal length");
    int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s ^= (x[i] == '1') & (y[i] == '1');
    return s;
}

namespace detail {

// Shared round schedule; a and b are the register indices of the two qubits.
inline std::vector<RoundAction> ip2_rounds(int n, int a, int b, std::vector<Op> prefix, std::vector<int> first_msg) {
    std::vector<RoundAction> rounds;
    auto gen = [](const char *name, int r) { return generator_gate(name, json{{"round", r}}); };
    std::vector<Op> ops = std::move(prefix);
    ops.push_back(Op{gen("ip2.alice", 1), {a}});
    rounds.push_back(RoundAction{0, std::move(ops), std::move(first_msg), 1});
    for (int i = 1; i <= n; ++i) {
        if (i > 1) rounds.push_back(RoundAction{0, {Op{gen("ip2.alice", i), {a}}}, {a}, 1});
        const bool last = i == n;
        rounds.push_back(RoundAction{1, {Op{gen("ip2.bob", i), {a, b}}}, last ? std::vector<int>{} : std::vector<int>{a},
                                     last ? -1 : 0});
    }
    return rounds;
}

}  // namespace detail

/// Two clean qubits; Bob accumulates sum_i x_i y_i mod 2 on the second one.
inline ProtocolSpec ip2_clocked(int n) {
    if (n < 1) throw DomainError("IP2 needs n >= 1");
    ProtocolSpec p;
    p.name = "ip2-clocked";
    p.players = 2;
    p.layout = RegisterLayout{2, 0, {0, 0}};
    p.rounds = detail::ip2_rounds(n, 0, 1, {}, {0, 1});
    p.measurement = Measurement::single_qubit(1, 1);
    p.declared = DeclaredBias{0.5, 0.5};
    return p;
}

/// One clean flag plus the two IP2 qubits in the mixed state. The flag is
/// raised only when both start in |0>; otherwise the outcome is a fair coin
/// read off the first qubit in the |+> basis.
inline ProtocolSpec ip2_one_clean(int n) {
    if (n < 1) throw DomainError("IP2 needs n >= 1");
    std::vector<std::uint64_t> perm(8);
    for (std::uint64_t v = 0; v < 8; ++v) perm[v] = (v % 4 == 0) ? (v ^ 4) : v;
    ProtocolSpec p;
    p.name = "ip2-one-clean";
    p.players = 2;
    p.layout = RegisterLayout{1, 2, {0, 0, 0}};
    p.rounds = detail::ip2_rounds(n, 1, 2, {Op{explicit_gate(permutation_matrix(perm)), {0, 1, 2}}}, {0, 1, 2});
    Matrix one = Matrix::Zero(2, 2), zero = Matrix::Zero(2, 2), plus = Matrix::Constant(2, 2, Complex(0.5, 0));
    one(1, 1) = 1;
    zero(0, 0) = 1;
    const Matrix proj = tensor(tensor(one, identity(2)), one) + tensor(tensor(zero, plus), identity(2));
    p.measurement = Measurement::projector_on(proj, {0, 1, 2});
    p.declared = DeclaredBias{0.5, 0.125};
    return p;
}

inline std::vector<LabeledInput> ip2_inputs(int n) {
    std::vector<LabeledInput> out;
    const std::uint64_t d = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < d; ++x) {
        for (std::uint64_t y = 0; y < d; ++y) {
            const auto xs = to_bits(x, n), ys = to_bits(y, n);
            out.push_back(LabeledInput{{PlayerInput::from_bits(xs), PlayerInput::from_bits(ys)}, ip2(xs, ys)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// MIDDLE: is sum_i x_i y_i different from n/2?

struct MiddleInstance {
    int n = 0;
    std::string x, y;
    int t = 0;

    int label() const { return t != 0 ? 1 : 0; }
};

inline MiddleInstance middle_instance(const std::string &x, const std::string &y) {
    const int n = static_cast<int>(x.size());
    if (y.size() != x.size()) throw DomainError("MIDDLE inputs must have equal length");
    if (n < 2 || !is_power_of_two(static_cast<std::uint64_t>(n))) throw DomainError("MIDDLE n must be a power of two >= 2");
    PlayerInput::from_bits(x);
    PlayerInput::from_bits(y);
    int s = 0;
    for (int i = 0; i < n; ++i) s += (x[static_cast<std::size_t>(i)] == '1') & (y[static_cast<std::size_t>(i)] == '1');
    return MiddleInstance{n, x, y, s - n / 2};
}

enum class MiddleVariant { Standard, OneClean };

inline ProtocolSpec middle_protocol(int n, MiddleVariant variant = MiddleVariant::Standard) {
    if (n < 2 || !is_power_of_two(static_cast<std::uint64_t>(n))) throw DomainError("MIDDLE n must be a power of two >= 2");
    const int l = qubit_count(n);
    std::vector<int> all;
    for (int j = 0; j <= l; ++j) all.push_back(j);
    const json par{{"n", n}};
    ProtocolSpec p;
    p.name = "middle";
    p.players = 2;
    p.layout = RegisterLayout{l + 1, 0, std::vector<int>(static_cast<std::size_t>(l + 1), 0)};
    p.rounds = {RoundAction{0, {Op{generator_gate("middle.prep", par), all}}, all, 1},
                RoundAction{1, {Op{generator_gate("middle.phase", par), all}}, all, 0},
                RoundAction{0, {Op{generator_gate("middle.final", par), all}}, {}, -1}};
    std::vector<int> index(all.begin(), all.end() - 1);
    p.measurement = Measurement::projector_on(basis_projector(l, 0), index);
    const double q = 2.0 / (static_cast<double>(n) * n);
    p.declared = DeclaredBias{q, q};
    if (variant == MiddleVariant::Standard) return p;
    ProtocolSpec out = two_round_one_clean(p).protocol;
    out.name = "middle-one-clean";
    return out;
}

inline std::vector<LabeledInput> middle_inputs(int n) {
    std::vector<LabeledInput> out;
    const std::uint64_t d = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < d; ++x) {
        for (std::uint64_t y = 0; y < d; ++y) {
            auto inst = middle_instance(to_bits(x, n), to_bits(y, n));
            out.push_back(LabeledInput{{PlayerInput::from_bits(inst.x), PlayerInput::from_bits(inst.y)}, inst.label()});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ABC: is the product of three orthogonal matrices +I or -I?

struct AbcInstance {
    int n = 0;
    RealMatrix a, b, c;
    int label = 1;  // +1 for ABC = I, -1 for ABC = -I

    Inputs inputs() const {
        return {PlayerInput::from_matrix(to_complex(a)), PlayerInput::from_matrix(to_complex(b)),
                PlayerInput::from_matrix(to_complex(c))};
    }
};

inline AbcInstance abc_instance(int n, int label, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0) throw DomainError("ABC needs an even n >= 2");
    if (label != 1 && label != -1) throw DomainError("ABC label must be +1 or -1");
    AbcInstance inst;
    inst.n = n;
    inst.label = label;
    inst.b = haar_orthogonal(n, true, derive_seed(seed, 1));
    inst.c = haar_orthogonal(n, true, derive_seed(seed, 2));
    inst.a = static_cast<double>(label) * (inst.b * inst.c).transpose();
    return inst;
}

/// Hadamard test on a control qubit with controlled A^T, B^T, C^T applied by
/// three players in turn to a log n-qubit mixed register.
inline ProtocolSpec abc_protocol(int n) {
    if (n < 2 || n % 2 != 0) throw DomainError("ABC needs an even n >= 2");
    if (!is_power_of_two(static_cast<std::uint64_t>(n))) throw DomainError("ABC register needs n to be a power of two");
    const int l = qubit_count(n);
    std::vector<int> all;
    for (int j = 0; j <= l; ++j) all.push_back(j);
    const GatePtr cm = controlled(generator_gate("input.matrix", json{{"transpose", true}}));
    const GatePtr h = explicit_gate(hadamard());
    ProtocolSpec p;
    p.name = "abc";
    p.players = 3;
    p.layout = RegisterLayout{1, l, std::vector<int>(static_cast<std::size_t>(l + 1), 0)};
    p.rounds = {RoundAction{0, {Op{h, {0}}, Op{cm, all}}, all, 1}, RoundAction{1, {Op{cm, all}}, all, 2},
                RoundAction{2, {Op{cm, all}, Op{h, {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0, 0);
    p.declared = DeclaredBias{0.5, 0.5};
    p.trace_form = TraceFormTag{0, {}};
    return p;
}

// ---------------------------------------------------------------------------
// Hard distributions for MIDDLE via disjointness.

struct StringPair {
    std::string x, y;
};

enum class Razborov { Mu0, Mu1 };

namespace detail {

/// Uniform k-subset of `pool` by partial Fisher-Yates.
inline std::vector<int> pick(std::vector<int> pool, int k, std::mt19937_64 &rng) {
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> d(static_cast<std::size_t>(i), pool.size() - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[d(rng)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

}  // namespace detail

/// Strings of length n/2+1 and weight (n/2+1)/4 whose supports meet in one
/// index (mu0) or none (mu1), uniform over all such pairs.
inline StringPair razborov_sample(int n, Razborov which, std::mt19937_64 &rng) {
    const int len = n / 2 + 1;
    if (n < 2 || n % 2 != 0 || len % 4 != 0) throw DomainError("razborov_sample needs n/2+1 divisible by 4");
    const int w = len / 4;
    std::vector<int> idx(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) idx[static_cast<std::size_t>(i)] = i;
    const auto xs = detail::pick(idx, w, rng);
    std::vector<bool> inx(static_cast<std::size_t>(len), false);
    for (int i : xs) inx[static_cast<std::size_t>(i)] = true;
    std::vector<int> rest;
    for (int i = 0; i < len; ++i) {
        if (!inx[static_cast<std::size_t>(i)]) rest.push_back(i);
    }
    std::vector<int> ys;
    if (which == Razborov::Mu0) {
        ys = detail::pick(rest, w - 1, rng);
        ys.push_back(detail::pick(xs, 1, rng).front());
    } else {
        ys = detail::pick(rest, w, rng);
    }
    StringPair out{std::string(static_cast<std::size_t>(len), '0'), std::string(static_cast<std::size_t>(len), '0')};
    for (int i : xs) out.x[static_cast<std::size_t>(i)] = '1';
    for (int i : ys) out.y[static_cast<std::size_t>(i)] = '1';
    return out;
}

inline StringPair razborov_sample(int n, Razborov which, std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    return razborov_sample(n, which, rng);
}

/// Prepends n/2-1 ones to both strings, turning disjointness into MIDDLE.
inline StringPair middle_pad(const StringPair &p, int n) {
    const auto len = static_cast<std::size_t>(n / 2 + 1);
    if (n < 2 || n % 2 != 0 || p.x.size() != len || p.y.size() != len) throw DomainError("middle_pad needs strings of length n/2+1");
    PlayerInput::from_bits(p.x);
    PlayerInput::from_bits(p.y);
    const std::string pad(static_cast<std::size_t>(n / 2 - 1), '1');
    return StringPair{pad + p.x, pad + p.y};
}

}  // namespace dqc1

#endif
