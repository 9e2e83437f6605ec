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

// Dense complex linear algebra for small qubit registers.
//
// Qubit 0 is the most significant tensor factor: in a q-qubit basis index b,
// qubit j is the bit (b >> (q - 1 - j)) & 1.

#ifndef DQC1_QSTATE_HPP
#define DQC1_QSTATE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dqc1/errors.hpp"
#include "json.hpp"

namespace dqc1 {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;
using json = nlohmann::json;

inline constexpr double kTolerance = 1e-9;
inline constexpr double kClampTolerance = 1e-6;

inline bool is_power_of_two(std::int64_t d) { return d > 0 && (d & (d - 1)) == 0; }

/// Number of qubits for a power-of-two dimension.
inline int qubit_count(std::int64_t dim) {
    if (!is_power_of_two(dim)) {
        throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int q = 0;
    while ((std::int64_t{1} << q) < dim) ++q;
    return q;
}

inline void require_square_pow2(const Matrix &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + " is not square");
    }
    qubit_count(m.rows());
}

// ---------------------------------------------------------------------------
// Seeds and common gates.

/// Splits a root seed into an independent child seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
    std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline Matrix identity(std::int64_t dim) { return Matrix::Identity(dim, dim); }

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Matrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m << s, s, s, -s;
    return m;
}

/// Control is the first qubit, target the second.
inline Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

inline Matrix basis_projector(int qubits, std::uint64_t index) {
    Matrix m = Matrix::Zero(std::int64_t{1} << qubits, std::int64_t{1} << qubits);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1;
    return m;
}

/// Permutation matrix with column b mapped to row perm[b].
inline Matrix permutation_matrix(const std::vector<std::uint64_t> &perm) {
    const auto d = static_cast<Eigen::Index>(perm.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) m(static_cast<Eigen::Index>(perm[b]), b) = 1;
    return m;
}

inline Matrix to_complex(const RealMatrix &r) { return r.cast<Complex>(); }

// ---------------------------------------------------------------------------
// Validity checks.

inline double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool is_unitary(const Matrix &u, double tol = kTolerance) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

inline bool is_hermitian(const Matrix &m, double tol = kTolerance) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

inline bool is_projector(const Matrix &p, double tol = kTolerance) {
    return is_hermitian(p, tol) && max_abs(p * p - p) <= tol;
}

// ---------------------------------------------------------------------------
// Tensor products and partial traces.

/// Kronecker product; `a` occupies the most significant qubits.
inline Matrix tensor(const Matrix &a, const Matrix &b) {
    require_square_pow2(a, "left tensor operand");
    require_square_pow2(b, "right tensor operand");
    const auto da = a.rows(), db = b.rows();
    Matrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b;
    return out;
}

inline void check_qubit_list(const std::vector<int> &qs, int q, const char *what) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] < 0 || qs[i] >= q) {
            throw IndexError(std::string(what) + ": qubit " + std::to_string(qs[i]) + " out of range [0," +
                             std::to_string(q) + ")");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qs[i] == qs[j]) throw IndexError(std::string(what) + ": repeated qubit " + std::to_string(qs[i]));
        }
    }
}

/// Scatters the bits of `local` (|qs| bits, qs[0] most significant) into a q-qubit index.
inline std::uint64_t scatter_bits(std::uint64_t local, const std::vector<int> &qs, int q) {
    std::uint64_t out = 0;
    const int t = static_cast<int>(qs.size());
    for (int j = 0; j < t; ++j) {
        if ((local >> (t - 1 - j)) & 1) out |= std::uint64_t{1} << (q - 1 - qs[j]);
    }
    return out;
}

inline std::uint64_t gather_bits(std::uint64_t global, const std::vector<int> &qs, int q) {
    std::uint64_t out = 0;
    for (int qb : qs) out = (out << 1) | ((global >> (q - 1 - qb)) & 1);
    return out;
}

/// Reduced state on `keep`, in the order listed.
inline Matrix partial_trace(const Matrix &rho, const std::vector<int> &keep) {
    require_square_pow2(rho, "density matrix");
    const int q = qubit_count(rho.rows());
    check_qubit_list(keep, q, "partial_trace");
    std::vector<int> traced;
    for (int j = 0; j < q; ++j) {
        if (std::find(keep.begin(), keep.end(), j) == keep.end()) traced.push_back(j);
    }
    const std::uint64_t dk = std::uint64_t{1} << keep.size();
    const std::uint64_t dt = std::uint64_t{1} << traced.size();
    std::vector<std::uint64_t> kidx(dk), tidx(dt);
    for (std::uint64_t i = 0; i < dk; ++i) kidx[i] = scatter_bits(i, keep, q);
    for (std::uint64_t i = 0; i < dt; ++i) tidx[i] = scatter_bits(i, traced, q);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::uint64_t i = 0; i < dk; ++i)
        for (std::uint64_t j = 0; j < dk; ++j) {
            Complex s = 0;
            for (std::uint64_t t = 0; t < dt; ++t) s += rho(kidx[i] | tidx[t], kidx[j] | tidx[t]);
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Local operator application.

/// A matrix acting on `targets`, applied only where each control qubit equals
/// the matching entry of `control_values`.
struct LocalGate {
    Matrix matrix;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<int> control_values;
};

/// m <- G m, where m has 2^q rows and any number of columns.
/// G need not be unitary (projectors use the same path).
inline void apply_left(Matrix &m, int q, const LocalGate &g) {
    const int t = static_cast<int>(g.targets.size());
    if (g.matrix.rows() != (Eigen::Index{1} << t) || g.matrix.cols() != g.matrix.rows()) {
        throw DimensionError("gate of dimension " + std::to_string(g.matrix.rows()) + " on " + std::to_string(t) +
                             " targets");
    }
    if (m.rows() != (Eigen::Index{1} << q)) throw DimensionError("state has wrong row count");
    std::vector<int> all = g.targets;
    all.insert(all.end(), g.controls.begin(), g.controls.end());
    check_qubit_list(all, q, "apply");
    if (g.control_values.size() != g.controls.size()) throw DimensionError("control value count mismatch");

    const std::uint64_t dt = std::uint64_t{1} << t;
    std::vector<std::uint64_t> offset(dt);
    for (std::uint64_t a = 0; a < dt; ++a) offset[a] = scatter_bits(a, g.targets, q);
    const std::uint64_t tmask = offset[dt - 1];
    std::uint64_t cmask = 0, cval = 0;
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (q - 1 - g.controls[i]);
        cmask |= bit;
        if (g.control_values[i]) cval |= bit;
    }

    struct Entry {
        std::uint32_t a, b;
        Complex v;
    };
    std::vector<Entry> nz;
    bool diagonal_identity = true;
    for (std::uint64_t a = 0; a < dt; ++a)
        for (std::uint64_t b = 0; b < dt; ++b) {
            const Complex v = g.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (v != Complex(0)) nz.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), v});
            if (v != (a == b ? Complex(1) : Complex(0))) diagonal_identity = false;
        }
    if (diagonal_identity) return;

    const Eigen::Index cols = m.cols();
    std::vector<Complex> tmp(static_cast<std::size_t>(dt * cols));
    Complex *data = m.data();
    const std::uint64_t dim = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) != 0 || (base & cmask) != cval) continue;
        for (std::uint64_t a = 0; a < dt; ++a) {
            const Complex *row = data + (base | offset[a]) * cols;
            std::copy(row, row + cols, tmp.begin() + static_cast<std::ptrdiff_t>(a * cols));
        }
        for (std::uint64_t a = 0; a < dt; ++a) std::fill_n(data + (base | offset[a]) * cols, cols, Complex(0));
        for (const Entry &e : nz) {
            Complex *dst = data + (base | offset[e.a]) * cols;
            const Complex *src = tmp.data() + e.b * cols;
            for (Eigen::Index c = 0; c < cols; ++c) dst[c] += e.v * src[c];
        }
    }
}

/// m <- m G^dagger, mixing columns within each row.
inline void apply_right_adjoint(Matrix &m, int q, const LocalGate &g) {
    const int t = static_cast<int>(g.targets.size());
    if (g.matrix.rows() != (Eigen::Index{1} << t) || g.matrix.cols() != g.matrix.rows()) {
        throw DimensionError("gate of dimension " + std::to_string(g.matrix.rows()) + " on " + std::to_string(t) +
                             " targets");
    }
    if (m.cols() != (Eigen::Index{1} << q)) throw DimensionError("state has wrong column count");
    const std::uint64_t dt = std::uint64_t{1} << t;
    std::vector<std::uint64_t> offset(dt);
    for (std::uint64_t a = 0; a < dt; ++a) offset[a] = scatter_bits(a, g.targets, q);
    const std::uint64_t tmask = offset[dt - 1];
    std::uint64_t cmask = 0, cval = 0;
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (q - 1 - g.controls[i]);
        cmask |= bit;
        if (g.control_values[i]) cval |= bit;
    }
    struct Entry {
        std::uint32_t a, b;
        Complex v;
    };
    std::vector<Entry> nz;
    bool identity_gate = true;
    for (std::uint64_t a = 0; a < dt; ++a)
        for (std::uint64_t b = 0; b < dt; ++b) {
            const Complex v = g.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (v != Complex(0)) nz.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), std::conj(v)});
            if (v != (a == b ? Complex(1) : Complex(0))) identity_gate = false;
        }
    if (identity_gate) return;

    std::vector<std::uint64_t> bases;
    const std::uint64_t dim = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) == 0 && (base & cmask) == cval) bases.push_back(base);
    }
    std::vector<Complex> tmp(dt);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Complex *row = m.data() + r * m.cols();
        for (std::uint64_t base : bases) {
            for (std::uint64_t a = 0; a < dt; ++a) {
                tmp[a] = row[base | offset[a]];
                row[base | offset[a]] = Complex(0);
            }
            for (const Entry &e : nz) row[base | offset[e.a]] += e.v * tmp[e.b];
        }
    }
}

/// rho <- G rho G^dagger.
inline void conjugate_in_place(Matrix &rho, int q, const LocalGate &g) {
    apply_left(rho, q, g);
    apply_right_adjoint(rho, q, g);
}

/// (U embedded on targets) rho (U embedded)^dagger.
inline Matrix apply_on_subset(const Matrix &rho, const Matrix &u, const std::vector<int> &targets) {
    require_square_pow2(rho, "density matrix");
    if (u.rows() != u.cols() || u.rows() != (Eigen::Index{1} << targets.size())) {
        throw DimensionError("unitary dimension does not match target count");
    }
    Matrix out = rho;
    conjugate_in_place(out, qubit_count(rho.rows()), LocalGate{u, targets, {}, {}});
    return out;
}

/// Checks that a computed probability is real and inside [0,1] up to kClampTolerance, then clamps.
inline double checked_probability(Complex v) {
    if (std::abs(v.imag()) > kClampTolerance) {
        throw NumericalError("probability has imaginary part " + std::to_string(v.imag()));
    }
    const double r = v.real();
    if (r < -kClampTolerance || r > 1 + kClampTolerance) {
        throw NumericalError("probability " + std::to_string(r) + " outside [0,1]");
    }
    return std::clamp(r, 0.0, 1.0);
}

/// Tr(P rho).
inline double accept_probability(const Matrix &rho, const Matrix &p) {
    if (rho.rows() != p.rows() || rho.cols() != p.cols()) throw DimensionError("projector and state dims differ");
    Complex tr = 0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) tr += p.row(i).transpose().cwiseProduct(rho.col(i)).sum();
    return checked_probability(tr);
}

/// Tr((P on `qubits`) rho).
inline double accept_probability_on(const Matrix &rho, const Matrix &p, const std::vector<int> &qubits) {
    return accept_probability(partial_trace(rho, qubits), p);
}

// ---------------------------------------------------------------------------
// Haar sampling.

/// Haar-random orthogonal matrix via Gaussian QR with the sign(diag R) correction.
inline RealMatrix haar_orthogonal(int n, bool special, std::uint64_t seed) {
    if (n < 1) throw DomainError("haar_orthogonal needs n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd &r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0) q.col(j) *= -1.0;
    }
    if (special && q.determinant() < 0) q.col(n - 1) *= -1.0;
    return q;
}

/// Haar-random unitary via complex Gaussian QR with the phase(diag R) correction.
inline Matrix haar_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("haar_unitary needs n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = normal(rng);
            g(i, j) = Complex(re, normal(rng));
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd &r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

/// Haar-random unit vector in R^n.
inline RealVector haar_unit_vector(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
    return v / v.norm();
}

// ---------------------------------------------------------------------------
// Matrix exchange format: {"dim": d, "entries": [[re, im], ...]} row-major.

inline json matrix_to_json(const Matrix &m) {
    if (m.rows() != m.cols()) throw DimensionError("only square matrices are exchanged");
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const json &j, const std::string &where = "") {
    if (!j.is_object()) throw ParseError("matrix must be an object", where);
    if (!j.contains("dim")) throw ParseError("matrix is missing field \"dim\"", where);
    if (!j.contains("entries")) throw ParseError("matrix is missing field \"entries\"", where);
    const json &jd = j.at("dim");
    if (!jd.is_number_integer() || jd.get<std::int64_t>() < 1) throw ParseError("\"dim\" must be a positive integer", where + "/dim");
    const auto d = jd.get<Eigen::Index>();
    const json &e = j.at("entries");
    if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != d * d) {
        throw ParseError("\"entries\" must hold dim*dim [re, im] pairs", where + "/entries");
    }
    Matrix m(d, d);
    for (Eigen::Index k = 0; k < d * d; ++k) {
        const json &p = e[static_cast<std::size_t>(k)];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ParseError("entry must be [re, im]", where + "/entries/" + std::to_string(k));
        }
        m(k / d, k % d) = Complex(p[0].get<double>(), p[1].get<double>());
    }
    return m;
}

inline std::string matrix_to_text(const Matrix &m) { return matrix_to_json(m).dump(); }

inline Matrix matrix_from_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return matrix_from_json(j);
}

}  // namespace dqc1

#endif
