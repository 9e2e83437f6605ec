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

// Built-in input-parameterized unitaries and the default registry.

#ifndef DQC1_GENERATORS_HPP
#define DQC1_GENERATORS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "dqc1/gate.hpp"
#include "dqc1/qstate.hpp"

namespace dqc1 {

namespace gen {

inline int param_int(const json &p, const char *key) {
    if (!p.contains(key) || !p.at(key).is_number_integer()) {
        throw ValidationError(std::string("generator parameter \"") + key + "\" missing or not an integer");
    }
    return p.at(key).get<int>();
}

inline void require_arity(int arity, int want, const char *name) {
    if (arity != want) {
        throw DimensionError(std::string(name) + " acts on " + std::to_string(want) + " qubits, got " +
                             std::to_string(arity));
    }
}

inline int log2_exact(int n, const char *what) {
    if (!is_power_of_two(n)) throw DomainError(std::string(what) + " must be a power of two");
    return qubit_count(n);
}

inline Matrix hadamard_all(int qubits) {
    Matrix h = identity(1);
    for (int i = 0; i < qubits; ++i) h = tensor(h, hadamard());
    return h;
}

/// Haar-random unitary whose seed mixes in the player's input bits.
inline Matrix haar(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const auto seed = p.contains("seed") ? p.at("seed").get<std::uint64_t>() : std::uint64_t{0};
    const std::uint64_t s = derive_seed(derive_seed(seed, in.bits.size()), in.value());
    return haar_unitary(1 << arity, s);
}

/// The player's matrix input, optionally transposed.
inline Matrix input_matrix(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    if (!in.matrix) throw DomainError("player has no matrix input");
    require_arity(arity, qubit_count(in.matrix->rows()), "input.matrix");
    if (p.value("transpose", false)) return in.matrix->transpose();
    return *in.matrix;
}

// IP2: Alice flips the shared qubit by x_1 and then by x_{i-1} xor x_i,
// so that before Bob's i-th CNOT the qubit holds x_i.
inline Matrix ip2_alice(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    require_arity(arity, 1, "ip2.alice");
    const int r = param_int(p, "round");
    if (r < 1) throw DomainError("ip2 round is 1-based");
    const std::size_t i = static_cast<std::size_t>(r - 1);
    const int flip = r == 1 ? in.bit(0) : in.bit(i - 1) ^ in.bit(i);
    return flip ? pauli_x() : identity(2);
}

inline Matrix ip2_bob(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    require_arity(arity, 2, "ip2.bob");
    const int r = param_int(p, "round");
    if (r < 1) throw DomainError("ip2 round is 1-based");
    return in.bit(static_cast<std::size_t>(r - 1)) ? cnot() : identity(4);
}

/// |i, b> -> |i, b xor x_i> on log n index qubits plus one value qubit.
inline Matrix middle_xor(const PlayerInput &in, int n) {
    std::vector<std::uint64_t> perm(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < 2; ++b) perm[static_cast<std::size_t>(2 * i + b)] = static_cast<std::uint64_t>(2 * i + (b ^ in.bit(static_cast<std::size_t>(i))));
    return permutation_matrix(perm);
}

inline Matrix middle_prep(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const int n = param_int(p, "n");
    const int l = log2_exact(n, "MIDDLE n");
    require_arity(arity, l + 1, "middle.prep");
    return middle_xor(in, n) * tensor(hadamard_all(l), identity(2));
}

inline Matrix middle_phase(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const int n = param_int(p, "n");
    require_arity(arity, log2_exact(n, "MIDDLE n") + 1, "middle.phase");
    Matrix d = identity(2 * n);
    for (int i = 0; i < n; ++i) {
        if (in.bit(static_cast<std::size_t>(i))) d(2 * i + 1, 2 * i + 1) = -1;
    }
    return d;
}

inline Matrix middle_final(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const int n = param_int(p, "n");
    const int l = log2_exact(n, "MIDDLE n");
    require_arity(arity, l + 1, "middle.final");
    return tensor(hadamard_all(l), identity(2)) * middle_xor(in, n);
}

/// Orthonormal basis whose first vector is phi: Gram-Schmidt over the standard
/// basis, taking the smallest index first and skipping dependent vectors.
inline Matrix complete_basis(const Vector &phi) {
    const Eigen::Index d = phi.size();
    Matrix basis(d, d);
    basis.col(0) = phi / phi.norm();
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < d && filled < d; ++e) {
        Vector v = Vector::Zero(d);
        v(e) = 1;
        for (Eigen::Index j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        for (Eigen::Index j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        const double nv = v.norm();
        if (nv > 1e-6) basis.col(filled++) = v / nv;
    }
    if (filled != d) throw NumericalError("basis completion failed");
    return basis;
}

/// Flag unitary: |0>|phi> <-> |1>|phi>, identity on the other basis vectors,
/// where phi is the wrapped unitary applied to |0...0>.
inline Matrix lemma1_flag(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &reg) {
    if (!p.contains("unitary")) throw ValidationError("lemma1.flag needs parameter \"unitary\"");
    const int k = arity - 1;
    GatePtr w1 = gate_from_json(p.at("unitary"), "/params/unitary");
    const Matrix w = gate_matrix(*w1, k, in, reg);
    const Matrix basis = complete_basis(w.col(0));
    const Eigen::Index d = basis.rows();
    Matrix out = Matrix::Zero(2 * d, 2 * d);
    const Matrix proj0 = basis.col(0) * basis.col(0).adjoint();
    out.block(0, d, d, d) = proj0;
    out.block(d, 0, d, d) = proj0;
    Matrix rest = Matrix::Zero(d, d);
    for (Eigen::Index j = 1; j < d; ++j) rest += basis.col(j) * basis.col(j).adjoint();
    out.block(0, 0, d, d) = rest;
    out.block(d, d, d, d) = rest;
    return out;
}

/// Alice's message encoder for a deterministic classical message z = T(x):
/// swaps |0>|z> and |1>|z>.
inline Matrix pp_alice(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const int c = param_int(p, "c");
    require_arity(arity, c + 1, "pp.alice");
    const auto &tmap = p.at("t_map");
    const std::uint64_t x = in.value();
    if (x >= tmap.size()) throw DomainError("pp.alice: input outside the message map");
    const std::uint64_t z = tmap[x].get<std::uint64_t>();
    const std::uint64_t dz = std::uint64_t{1} << c;
    std::vector<std::uint64_t> perm(2 * dz);
    for (std::uint64_t v = 0; v < 2 * dz; ++v) perm[v] = v;
    perm[z] = dz + z;
    perm[dz + z] = z;
    return permutation_matrix(perm);
}

/// Bob's side on [flag, z_1..z_c, coin]. Flag 0: swap z_1 with the coin.
/// Flag 1: rotate each accepted/rejected message pair onto z_1 so that z_1 = 1
/// with probability 1/2 + eps on accepted messages and 1/2 - eps on rejected ones.
inline Matrix pp_bob(const json &p, int arity, const PlayerInput &in, const GeneratorRegistry &) {
    const int c = param_int(p, "c");
    require_arity(arity, c + 2, "pp.bob");
    const double eps = p.at("eps").get<double>();
    const auto &table = p.at("accept");
    const std::uint64_t y = in.value();
    if (y >= table.size()) throw DomainError("pp.bob: input outside the acceptance table");
    const std::uint64_t dz = std::uint64_t{1} << c;
    std::vector<std::uint64_t> acc, rej;
    for (std::uint64_t z = 0; z < dz; ++z) (table[y][z].get<int>() ? acc : rej).push_back(z);
    if (acc.size() != rej.size()) throw ShapeError("pp.bob: acceptance predicate is not balanced");
    const double q = 0.5 + eps;
    const double sa = std::sqrt(q), sb = std::sqrt(1 - q);
    Matrix ub = Matrix::Zero(static_cast<Eigen::Index>(dz), static_cast<Eigen::Index>(dz));
    const std::uint64_t half = dz / 2;
    for (std::uint64_t w = 0; w < acc.size(); ++w) {
        const auto one = static_cast<Eigen::Index>(half + w), zero = static_cast<Eigen::Index>(w);
        const auto a = static_cast<Eigen::Index>(acc[w]), r = static_cast<Eigen::Index>(rej[w]);
        ub(one, a) = sa;
        ub(zero, a) = sb;
        ub(one, r) = sb;
        ub(zero, r) = -sa;
    }
    // Flag-0 block: swap of z_1 (most significant z bit) with the coin.
    const std::uint64_t dim = 4 * dz;
    std::vector<std::uint64_t> perm(2 * dz);
    for (std::uint64_t v = 0; v < 2 * dz; ++v) {
        const std::uint64_t z = v >> 1, coin = v & 1;
        const std::uint64_t z1 = (z >> (c - 1)) & 1;
        const std::uint64_t nz = (z & ~(std::uint64_t{1} << (c - 1))) | (coin << (c - 1));
        perm[v] = (nz << 1) | z1;
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto h = static_cast<Eigen::Index>(2 * dz);
    out.block(0, 0, h, h) = permutation_matrix(perm);
    out.block(h, h, h, h) = tensor(ub, identity(2));
    return out;
}

}  // namespace gen

inline void register_builtin_generators(GeneratorRegistry &reg) {
    reg.add("haar", gen::haar);
    reg.add("input.matrix", gen::input_matrix);
    reg.add("ip2.alice", gen::ip2_alice);
    reg.add("ip2.bob", gen::ip2_bob);
    reg.add("middle.prep", gen::middle_prep);
    reg.add("middle.phase", gen::middle_phase);
    reg.add("middle.final", gen::middle_final);
    reg.add("lemma1.flag", gen::lemma1_flag);
    reg.add("pp.alice", gen::pp_alice);
    reg.add("pp.bob", gen::pp_bob);
}

/// Process-wide registry holding the built-ins; initialised once, read-only after.
inline const GeneratorRegistry &default_registry() {
    static const GeneratorRegistry reg = [] {
        GeneratorRegistry r;
        register_builtin_generators(r);
        return r;
    }();
    return reg;
}

}  // namespace dqc1

#endif
