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

// Seeded generators of small random protocols, used by property tests and
// the verification suite. Local unitaries come from the "haar" generator, so
// they depend on the acting player's input.

#ifndef DQC1_RANDOM_PROTOCOLS_HPP
#define DQC1_RANDOM_PROTOCOLS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "dqc1/problems.hpp"
#include "dqc1/simulator.hpp"

namespace dqc1 {

struct RandomProtocolOptions {
    int clean = 2;
    int mixed = 1;
    int rounds = 3;
    int input_bits = 2;
    bool single_qubit_measurement = false;
};

namespace detail {

inline std::vector<int> random_subset(const std::vector<int> &from, int min_size, int max_size, std::mt19937_64 &rng) {
    std::vector<int> pool = from;
    std::shuffle(pool.begin(), pool.end(), rng);
    const int hi = std::min<int>(max_size, static_cast<int>(pool.size()));
    const int lo = std::min(min_size, hi);
    std::uniform_int_distribution<int> size(lo, hi);
    pool.resize(static_cast<std::size_t>(size(rng)));
    std::sort(pool.begin(), pool.end());
    return pool;
}

inline Matrix random_projector(int qubits, std::mt19937_64 &rng) {
    const Eigen::Index d = Eigen::Index{1} << qubits;
    std::uniform_int_distribution<Eigen::Index> rank(1, d - 1);
    const Matrix u = haar_unitary(static_cast<int>(d), rng());
    const Matrix v = u.leftCols(rank(rng));
    return v * v.adjoint();
}

}  // namespace detail

/// Two-player clocked protocol with a ghosted channel. Alice starts with the
/// clean qubits and some mixed ones; Bob keeps his own mixed qubits private,
/// so every communicated qubit starts with Alice.
inline ProtocolSpec random_protocol(const RandomProtocolOptions &o, std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0x7270));
    const int q = o.clean + o.mixed;
    ProtocolSpec p;
    p.name = "random";
    p.players = 2;
    p.layout.clean = o.clean;
    p.layout.mixed = o.mixed;
    p.layout.owners.assign(static_cast<std::size_t>(q), 0);
    std::bernoulli_distribution coin(0.5);
    std::vector<bool> shareable(static_cast<std::size_t>(q), true);
    for (int j = o.clean; j < q; ++j) {
        if (coin(rng)) {
            p.layout.owners[static_cast<std::size_t>(j)] = 1;
            shareable[static_cast<std::size_t>(j)] = false;
        }
    }
    auto owner = p.layout.owners;
    for (int r = 0; r < o.rounds; ++r) {
        const int pl = r % 2;
        std::vector<int> held, movable;
        for (int j = 0; j < q; ++j) {
            if (owner[static_cast<std::size_t>(j)] != pl) continue;
            held.push_back(j);
            if (shareable[static_cast<std::size_t>(j)]) movable.push_back(j);
        }
        RoundAction ra{pl, {}, {}, -1};
        std::uniform_int_distribution<int> nops(1, 2);
        const int k = nops(rng);
        for (int i = 0; i < k && !held.empty(); ++i) {
            const auto t = detail::random_subset(held, 1, 3, rng);
            ra.ops.push_back(Op{generator_gate("haar", json{{"seed", rng() >> 11}}), t});
        }
        if (r + 1 < o.rounds) {
            ra.message = detail::random_subset(movable, 1, static_cast<int>(movable.size()), rng);
            ra.to = 1 - pl;
            for (int j : ra.message) owner[static_cast<std::size_t>(j)] = 1 - pl;
        }
        p.rounds.push_back(std::move(ra));
    }
    const int meas = p.rounds.back().player;
    std::vector<int> held;
    for (int j = 0; j < q; ++j) {
        if (owner[static_cast<std::size_t>(j)] == meas) held.push_back(j);
    }
    if (o.single_qubit_measurement) {
        const auto t = detail::random_subset(held, 1, 1, rng);
        std::uniform_int_distribution<int> outcome(0, 1);
        p.measurement = Measurement::single_qubit(t[0], outcome(rng));
    } else {
        const auto t = detail::random_subset(held, 1, 3, rng);
        p.measurement = Measurement::projector_on(detail::random_projector(static_cast<int>(t.size()), rng), t);
    }
    p.declared = DeclaredBias{0.5, 0.25};
    return p;
}

/// Clean-only protocol Alice -> Bob -> Alice whose messages are the clean register.
inline ProtocolSpec random_two_round(int k, std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0x7472));
    ProtocolSpec p;
    p.name = "random-two-round";
    p.players = 2;
    p.layout.clean = k;
    p.layout.mixed = 0;
    p.layout.owners.assign(static_cast<std::size_t>(k), 0);
    std::vector<int> all;
    for (int j = 0; j < k; ++j) all.push_back(j);
    auto ops = [&] {
        std::vector<Op> v;
        for (int i = 0; i < 2; ++i) v.push_back(Op{generator_gate("haar", json{{"seed", rng() >> 11}}), detail::random_subset(all, 1, k, rng)});
        return v;
    };
    p.rounds = {RoundAction{0, ops(), all, 1}, RoundAction{1, ops(), all, 0}, RoundAction{0, ops(), {}, -1}};
    const auto t = detail::random_subset(all, 1, k, rng);
    p.measurement = Measurement::projector_on(detail::random_projector(static_cast<int>(t.size()), rng), t);
    p.declared = DeclaredBias{0.5, 0.25};
    return p;
}

/// Every pair of bit strings of the given length; labels unknown.
inline std::vector<LabeledInput> all_bit_inputs(int bits) {
    std::vector<LabeledInput> out;
    const std::uint64_t d = std::uint64_t{1} << bits;
    for (std::uint64_t x = 0; x < d; ++x)
        for (std::uint64_t y = 0; y < d; ++y)
            out.push_back(LabeledInput{{PlayerInput::from_bits(to_bits(x, bits)), PlayerInput::from_bits(to_bits(y, bits))}, -1});
    return out;
}

/// Labels inputs by thresholding acceptances at the midpoint of their range,
/// returning that midpoint as the reference point.
inline double label_by_midpoint(std::vector<LabeledInput> &inputs, const std::vector<double> &acc) {
    const auto [lo, hi] = std::minmax_element(acc.begin(), acc.end());
    const double mid = (*lo + *hi) / 2;
    for (std::size_t i = 0; i < inputs.size(); ++i) inputs[i].label = acc[i] >= mid ? 1 : 0;
    return mid;
}

}  // namespace dqc1

#endif
