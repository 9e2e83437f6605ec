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

// Classical baselines: sign-sketch inner-product estimation, spherical-cap
// codebooks, the randomized ABC protocol, and brute-force discrepancy.

#ifndef DQC1_CLASSICAL_HPP
#define DQC1_CLASSICAL_HPP

#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dqc1/problems.hpp"
#include "dqc1/qstate.hpp"

namespace dqc1 {

struct Transcript {
    std::vector<int> bits_sent;  // per player
    int total = 0;

    json to_json() const { return json{{"bits_sent", bits_sent}, {"total", total}}; }
};

inline Transcript make_transcript(std::vector<int> bits) {
    Transcript t;
    t.bits_sent = std::move(bits);
    for (int b : t.bits_sent) t.total += b;
    return t;
}

// ---------------------------------------------------------------------------
// Inner-product estimation by shared random hyperplanes.

inline constexpr double kKnrConstant = 8.0;

inline int knr_rounds(double eps, double c = kKnrConstant) {
    if (!(eps > 0 && eps < 1)) throw DomainError("knr accuracy must lie in (0,1)");
    if (!(c > 0)) throw DomainError("knr constant must be positive");
    return static_cast<int>(std::ceil(c / (eps * eps)));
}

struct KnrResult {
    double estimate = 0;
    int agreements = 0;
    int rounds = 0;
    Transcript transcript;
};

/// Alice sends sign<a, r_j> for s shared Gaussian directions r_j; Bob counts
/// agreements with sign<b, r_j> and inverts the angle.
inline KnrResult knr_estimate(const RealVector &a, const RealVector &b, double eps, std::uint64_t seed,
                              double c = kKnrConstant) {
    if (a.size() != b.size() || a.size() == 0) throw DimensionError("knr vectors must have equal nonzero length");
    if (std::abs(a.norm() - 1) > 1e-9 || std::abs(b.norm() - 1) > 1e-9) throw DomainError("knr inputs must be unit vectors");
    const int s = knr_rounds(eps, c);
    std::mt19937_64 rng(derive_seed(seed, 0x6b6e72));
    boost::random::normal_distribution<double> normal;
    const Eigen::Index n = a.size();
    int agree = 0;
    for (int j = 0; j < s; ++j) {
        double da = 0, db = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double r = normal(rng);
            da += a(i) * r;
            db += b(i) * r;
        }
        agree += (da >= 0) == (db >= 0);
    }
    KnrResult out;
    out.agreements = agree;
    out.rounds = s;
    out.estimate = std::cos(std::numbers::pi * (1.0 - static_cast<double>(agree) / s));
    out.transcript = make_transcript({s, 0});
    return out;
}

// ---------------------------------------------------------------------------
// Spherical caps.

inline void check_cap_parameter(int n, int k) {
    if (k < 1 || 4 * k > n) throw DomainError("cap parameter needs 1 <= k <= n/4");
}

inline int cap_codebook_size(int k) {
    return static_cast<int>(std::ceil(32.0 * std::sqrt(static_cast<double>(k)) * std::exp(2.0 * k)));
}

inline double cap_lower_bound(int k) { return std::exp(-static_cast<double>(k)) / (16.0 * std::sqrt(static_cast<double>(k))); }

inline int index_bits(int size) {
    int b = 0;
    while ((std::int64_t{1} << b) < size) ++b;
    return b;
}

struct CapCodebook {
    int n = 0;
    int k = 0;
    int size = 0;
    RealMatrix vectors;  // one unit vector per row
    std::uint64_t seed = 0;
};

inline CapCodebook cap_codebook(int n, int k, std::uint64_t seed) {
    check_cap_parameter(n, k);
    CapCodebook cb{n, k, cap_codebook_size(k), RealMatrix(cap_codebook_size(k), n), seed};
    std::mt19937_64 rng(derive_seed(seed, 0x636170));
    for (int j = 0; j < cb.size; ++j) cb.vectors.row(j) = haar_unit_vector(n, rng).transpose();
    return cb;
}

/// Fraction of Haar-random unit W with <e_1, W>^2 >= k/n.
inline double cap_probability_mc(int n, int k, int samples, std::uint64_t seed) {
    check_cap_parameter(n, k);
    if (samples < 10000) throw DomainError("cap Monte Carlo needs at least 10^4 samples");
    std::mt19937_64 rng(derive_seed(seed, 0x6d63));
    const double thr = static_cast<double>(k) / n;
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        const RealVector w = haar_unit_vector(n, rng);
        hits += w(0) * w(0) >= thr;
    }
    return static_cast<double>(hits) / samples;
}

// ---------------------------------------------------------------------------
// Randomized ABC protocol.

struct AbcClassicalResult {
    int answer = 0;  // 1 for ABC = I, 0 for ABC = -I
    double estimate = 0;
    double true_value = 0;   // <A_i, B W_max>
    double cap_value = 0;    // <W_max, C_i>
    bool cap_hit = false;    // cap_value >= sqrt(k/n)
    int codeword = 0;
    Transcript transcript;   // players: Alice, Bob, Charlie
};

inline AbcClassicalResult abc_classical(const AbcInstance &inst, int i, int k, std::uint64_t seed,
                                        double c = kKnrConstant) {
    const int n = inst.n;
    check_cap_parameter(n, k);
    if (i < 0 || i >= n) throw IndexError("row index out of range");
    const CapCodebook cb = cap_codebook(n, k, derive_seed(seed, 1));
    const RealVector ci = inst.c.col(i);
    int best = 0;
    double best_val = -2;
    for (int j = 0; j < cb.size; ++j) {
        const double v = cb.vectors.row(j).dot(ci.transpose());
        if (v > best_val) {
            best_val = v;
            best = j;
        }
    }
    const RealVector w = cb.vectors.row(best).transpose();
    RealVector bw = inst.b * w;
    bw /= bw.norm();
    const RealVector ai = inst.a.row(i).transpose();
    const double eps = 0.01 * std::sqrt(static_cast<double>(k) / n);
    const KnrResult knr = knr_estimate(ai, bw, eps, derive_seed(seed, 2), c);

    AbcClassicalResult out;
    out.estimate = knr.estimate;
    out.answer = knr.estimate > 0 ? 1 : 0;
    out.true_value = ai.dot(bw);
    out.cap_value = best_val;
    out.cap_hit = best_val >= std::sqrt(static_cast<double>(k) / n);
    out.codeword = best;
    out.transcript = make_transcript({knr.transcript.bits_sent[0], 0, index_bits(cb.size)});
    return out;
}

// ---------------------------------------------------------------------------
// Discrepancy.

inline constexpr int kDiscMaxSide = 16;

struct SignMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> entries;     // row-major, +1 or -1
    std::vector<double> weights;  // row-major, sums to 1

    int at(int r, int c) const { return entries[static_cast<std::size_t>(r * cols + c)]; }
    double weight(int r, int c) const { return weights[static_cast<std::size_t>(r * cols + c)]; }
};

inline void check_sign_matrix(const SignMatrix &m) {
    if (m.rows < 1 || m.cols < 1) throw DimensionError("sign matrix must be nonempty");
    const auto cells = static_cast<std::size_t>(m.rows * m.cols);
    if (m.entries.size() != cells || m.weights.size() != cells) throw DimensionError("sign matrix entry count mismatch");
    double total = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        if (m.entries[i] != 1 && m.entries[i] != -1) throw DomainError("sign matrix entries must be +1 or -1");
        if (!(m.weights[i] >= 0)) throw DomainError("weights must be nonnegative");
        total += m.weights[i];
    }
    if (std::abs(total - 1) > 1e-12) throw DomainError("weights must sum to 1");
}

inline SignMatrix uniform_sign_matrix(int rows, int cols, std::vector<int> entries) {
    SignMatrix m{rows, cols, std::move(entries),
                 std::vector<double>(static_cast<std::size_t>(rows * cols), 1.0 / (static_cast<double>(rows) * cols))};
    check_sign_matrix(m);
    return m;
}

struct DiscResult {
    double value = 0;
    std::vector<int> rows;
    std::vector<int> cols;

    json to_json() const { return json{{"value", value}, {"rectangle", json{{"rows", rows}, {"cols", cols}}}}; }
};

inline std::vector<int> mask_members(std::uint32_t mask) {
    std::vector<int> v;
    for (int i = 0; mask >> i; ++i) {
        if ((mask >> i) & 1) v.push_back(i);
    }
    return v;
}

/// Maximum over nonempty rectangles R x C of |sum mu(x,y) M(x,y)|. Subsets are
/// bit masks with row i as bit i; the witness is the first maximizer in
/// (row mask, column mask) order.
inline DiscResult disc_bruteforce(const SignMatrix &m) {
    if (m.rows > kDiscMaxSide || m.cols > kDiscMaxSide) {
        throw BackendLimitError("discrepancy enumeration handles at most 16x16 matrices");
    }
    check_sign_matrix(m);
    const std::uint32_t nr = 1u << m.rows, nc = 1u << m.cols;
    std::vector<double> colsum(static_cast<std::size_t>(m.cols));
    std::vector<double> subset(nc);
    double best = -1;
    std::uint32_t br = 0, bc = 0;
    for (std::uint32_t r = 1; r < nr; ++r) {
        std::fill(colsum.begin(), colsum.end(), 0.0);
        for (int i = 0; i < m.rows; ++i) {
            if (!((r >> i) & 1)) continue;
            for (int j = 0; j < m.cols; ++j) colsum[static_cast<std::size_t>(j)] += m.weight(i, j) * m.at(i, j);
        }
        subset[0] = 0;
        for (std::uint32_t c = 1; c < nc; ++c) {
            subset[c] = subset[c & (c - 1)] + colsum[static_cast<std::size_t>(std::countr_zero(c))];
            const double v = std::abs(subset[c]);
            if (v > best) {
                best = v;
                br = r;
                bc = c;
            }
        }
    }
    return DiscResult{best, mask_members(br), mask_members(bc)};
}

/// Reads comma-separated rows; blank lines are skipped.
inline std::vector<std::vector<double>> read_csv_numbers(const std::string &text, const std::string &what) {
    std::vector<std::vector<double>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
            } catch (const std::logic_error &) {
                throw ParseError("bad number \"" + cell + "\" in " + what, "line " + std::to_string(lineno));
            }
        }
        if (!out.empty() && row.size() != out.front().size()) {
            throw ParseError("ragged row in " + what, "line " + std::to_string(lineno));
        }
        out.push_back(std::move(row));
    }
    if (out.empty()) throw ParseError("no rows in " + what, "line 1");
    return out;
}

inline SignMatrix sign_matrix_from_csv(const std::string &matrix_csv, const std::string &weights_csv = "") {
    const auto rows = read_csv_numbers(matrix_csv, "sign matrix");
    SignMatrix m;
    m.rows = static_cast<int>(rows.size());
    m.cols = static_cast<int>(rows.front().size());
    for (const auto &r : rows)
        for (double v : r) m.entries.push_back(static_cast<int>(v));
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        if (static_cast<double>(m.entries[i]) != rows[i / static_cast<std::size_t>(m.cols)][i % static_cast<std::size_t>(m.cols)]) {
            throw DomainError("sign matrix entries must be +1 or -1");
        }
    }
    if (weights_csv.empty()) {
        m.weights.assign(m.entries.size(), 1.0 / static_cast<double>(m.entries.size()));
    } else {
        const auto w = read_csv_numbers(weights_csv, "weights");
        if (static_cast<int>(w.size()) != m.rows || static_cast<int>(w.front().size()) != m.cols) {
            throw DimensionError("weights must match the sign matrix shape");
        }
        for (const auto &r : w) m.weights.insert(m.weights.end(), r.begin(), r.end());
    }
    if (m.rows > kDiscMaxSide || m.cols > kDiscMaxSide) return m;
    check_sign_matrix(m);
    return m;
}

}  // namespace dqc1

#endif
