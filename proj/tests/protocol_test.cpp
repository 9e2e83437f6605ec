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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dqc1/problems.hpp"
#include "dqc1/protocol.hpp"
#include "dqc1/random_protocols.hpp"
#include "dqc1/simulator.hpp"

namespace dqc1 {
namespace {

bool has_code(const std::vector<Violation> &v, const std::string &code) {
    return std::any_of(v.begin(), v.end(), [&](const Violation &x) { return x.code == code; });
}

ProtocolSpec random_valid(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RandomProtocolOptions o;
    o.clean = 1 + static_cast<int>(rng() % 3);
    o.mixed = static_cast<int>(rng() % 3);
    o.rounds = 1 + static_cast<int>(rng() % 4);
    return random_protocol(o, seed);
}

TEST(Validate, BuiltinsAreValid) {
    for (int n = 1; n <= 4; ++n) {
        EXPECT_TRUE(validate(ip2_clocked(n)).empty());
        EXPECT_TRUE(validate(ip2_one_clean(n)).empty());
    }
    for (int n : {2, 4, 8}) {
        EXPECT_TRUE(validate(middle_protocol(n)).empty());
        EXPECT_TRUE(validate(middle_protocol(n, MiddleVariant::OneClean)).empty());
        EXPECT_TRUE(validate(abc_protocol(n)).empty());
    }
}

TEST(Validate, UnitaryOnForeignQubit) {
    ProtocolSpec p = ip2_clocked(2);
    // Round 2 is Bob's; after round 1 Alice holds nothing, so give her an op there.
    p.rounds[2].ops.push_back(Op{explicit_gate(pauli_x()), {1}});
    p.rounds[2].player = 0;
    EXPECT_TRUE(has_code(validate(p), "ownership"));
}

TEST(Validate, BobTouchesQubitHeldByAlice) {
    ProtocolSpec p;
    p.layout = RegisterLayout{2, 0, {0, 0}};
    p.rounds = {RoundAction{0, {Op{explicit_gate(hadamard()), {0}}}, {0}, 1},
                RoundAction{1, {Op{explicit_gate(cnot()), {0, 1}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0);
    const auto v = validate(p);
    EXPECT_TRUE(has_code(v, "ownership"));
}

TEST(Validate, SemiUnclockedWithDifferentMessageSets) {
    ProtocolSpec p;
    p.mode = Mode::SemiUnclocked;
    p.channel = Channel::Fixed;
    p.layout = RegisterLayout{2, 0, {0, 0}};
    const GatePtr ua = explicit_gate(hadamard());
    const GatePtr ub = explicit_gate(pauli_x());
    p.rounds = {RoundAction{0, {Op{ua, {0}}}, {0, 1}, 1}, RoundAction{1, {Op{ub, {0}}}, {0}, 0},
                RoundAction{0, {Op{ua, {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0);
    EXPECT_TRUE(has_code(validate(p), "mode"));
}

TEST(Validate, SemiUnclockedNeedsFixedChannel) {
    ProtocolSpec p;
    p.mode = Mode::SemiUnclocked;
    p.layout = RegisterLayout{1, 0, {0}};
    p.rounds = {RoundAction{0, {Op{explicit_gate(hadamard()), {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0);
    EXPECT_TRUE(has_code(validate(p), "mode"));
}

TEST(Validate, MeasurementOnForeignQubit) {
    ProtocolSpec p = ip2_clocked(1);
    // Bob ships qubit 0 back, so Alice measures but qubit 1 stays with Bob.
    p.rounds.back().message = {0};
    p.rounds.back().to = 0;
    p.measurement = Measurement::single_qubit(1);
    EXPECT_TRUE(has_code(validate(p), "measurement"));
}

TEST(Validate, NonProjectorMeasurement) {
    ProtocolSpec p = ip2_clocked(1);
    p.measurement = Measurement::projector_on(pauli_x(), {1});
    EXPECT_TRUE(has_code(validate(p), "measurement"));
}

TEST(Validate, NonUnitaryExplicitMatrix) {
    ProtocolSpec p;
    p.layout = RegisterLayout{1, 0, {0}};
    Matrix h = hadamard();
    h(0, 0) += 1e-3;
    p.rounds = {RoundAction{0, {Op{explicit_gate(h), {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0);
    EXPECT_TRUE(has_code(validate(p), "unitarity"));
    EXPECT_THROW(require_valid(p), ValidationError);
}

TEST(Validate, DeclaredBiasRange) {
    ProtocolSpec p = ip2_clocked(1);
    p.declared.eps = 0.6;
    EXPECT_TRUE(has_code(validate(p), "declared"));
    p.declared = DeclaredBias{1.0, 0.25};
    EXPECT_TRUE(has_code(validate(p), "declared"));
}

// Independent replay: every op and message only uses qubits its player holds.
TEST(Validate, RandomProtocolsReplayConsistently) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ProtocolSpec p = random_valid(seed);
        ASSERT_TRUE(validate(p).empty()) << "seed " << seed;
        std::vector<int> owner = p.layout.owners;
        for (const auto &r : p.rounds) {
            for (const auto &op : r.ops)
                for (int t : op.targets) EXPECT_EQ(owner[static_cast<std::size_t>(t)], r.player);
            for (int t : r.message) {
                EXPECT_EQ(owner[static_cast<std::size_t>(t)], r.player);
                owner[static_cast<std::size_t>(t)] = r.to;
            }
        }
        for (int t : p.measurement.qubits) EXPECT_EQ(owner[static_cast<std::size_t>(t)], p.rounds.back().player);
    }
}

TEST(CommunicationCost, Ip2) {
    EXPECT_EQ(communication_cost(ip2_clocked(4)), 8);
    EXPECT_EQ(communication_cost(ip2_one_clean(4)), 9);
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(communication_cost(ip2_clocked(n)), 2 * n);
        EXPECT_EQ(communication_cost(ip2_one_clean(n)), 2 * n + 1);
    }
}

TEST(CommunicationCost, EmptyRoundList) {
    ProtocolSpec p;
    p.layout = RegisterLayout{1, 0, {0}};
    p.measurement = Measurement::single_qubit(0);
    EXPECT_EQ(communication_cost(p), 0);
}

TEST(CommunicationCost, InvalidProtocolRaises) {
    ProtocolSpec p = ip2_clocked(2);
    p.players = 5;
    EXPECT_THROW(communication_cost(p), ValidationError);
}

TEST(CommunicationCost, InvariantUnderRelabeling) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ProtocolSpec p = random_valid(seed);
        std::vector<int> perm(static_cast<std::size_t>(p.qubits()));
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 rng(seed + 1000);
        std::shuffle(perm.begin(), perm.end(), rng);
        const ProtocolSpec r = relabel_qubits(p, perm);
        // Relabeled qubits may break clean-before-mixed order, so count directly.
        int direct = 0;
        for (const auto &ra : r.rounds) direct += static_cast<int>(ra.message.size());
        EXPECT_EQ(direct, communication_cost(p));
    }
}

TEST(Q1Cost, Examples) {
    EXPECT_EQ(q1_cost(9, 0.125), 576.0);
    EXPECT_NEAR(q1_cost(10, 0.1), 1000.0, 1e-9);
    EXPECT_EQ(q1_cost(0, 0.25), 0.0);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(q1_cost(2 * n + 1, 0.125), 64.0 * (2 * n + 1));
}

TEST(Q1Cost, DomainErrors) {
    EXPECT_THROW(q1_cost(1, 0), DomainError);
    EXPECT_THROW(q1_cost(1, 0.51), DomainError);
    EXPECT_THROW(q1_cost(1, -0.1), DomainError);
}

TEST(PpCost, Examples) {
    EXPECT_EQ(pp_cost(5, 0.125), 8.0);
    EXPECT_EQ(pp_cost(1, 0.25), 3.0);
    EXPECT_EQ(pp_cost(3, 0.3), 5.0);
}

TEST(PpCost, DomainErrors) {
    EXPECT_THROW(pp_cost(1, 0.5), DomainError);
    EXPECT_THROW(pp_cost(1, 0), DomainError);
}

// floor(log2 eps) by integer bracketing: the k with 2^k <= eps < 2^{k+1}.
int floor_log2_oracle(double eps) {
    int k = 0;
    while (std::ldexp(1.0, k) > eps) --k;
    while (std::ldexp(1.0, k + 1) <= eps) ++k;
    return k;
}

TEST(PpCost, MatchesBracketingOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(1e-6, 0.5);
    for (int i = 0; i < 2000; ++i) {
        const double eps = u(rng);
        if (eps >= 0.5) continue;
        const int c = static_cast<int>(rng() % 50);
        EXPECT_EQ(pp_cost(c, eps), c - floor_log2_oracle(eps)) << eps;
    }
    for (int k = 2; k < 40; ++k) EXPECT_EQ(pp_cost(0, std::ldexp(1.0, -k)), k);
}

TEST(Costs, MonotoneInBiasAndCommunication) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(1e-4, 0.4999);
    for (int i = 0; i < 2000; ++i) {
        double e1 = u(rng), e2 = u(rng);
        if (e1 > e2) std::swap(e1, e2);
        const double c1 = static_cast<double>(rng() % 100);
        const double c2 = c1 + static_cast<double>(rng() % 10);
        EXPECT_GE(q1_cost(c1, e1), q1_cost(c1, e2));
        EXPECT_GE(pp_cost(c1, e1), pp_cost(c1, e2));
        EXPECT_LE(q1_cost(c1, e1), q1_cost(c2, e1));
        EXPECT_LE(pp_cost(c1, e1), pp_cost(c2, e1));
        EXPECT_GE(q1_cost(c1, e1), c1);
        EXPECT_GE(pp_cost(c1, e1), c1);
    }
}

TEST(CostReport, CsvHeaderAndRow) {
    const auto rep = cost_report(ip2_one_clean(4));
    EXPECT_EQ(rep.communication, 9);
    EXPECT_EQ(rep.q1_cost, 576.0);
    ASSERT_TRUE(rep.pp_cost.has_value());
    EXPECT_EQ(*rep.pp_cost, 12.0);
    EXPECT_EQ(rep.qubits, 3);
    EXPECT_EQ(cost_report_csv({rep}), "communication,bias,q1_cost,pp_cost,qubits\n9,0.125,576.0,12.0,3\n");
}

TEST(Serialization, Ip2RoundTrip) {
    for (const auto &p : {ip2_clocked(3), ip2_one_clean(3)}) {
        const std::string text = serialize(p);
        const ProtocolSpec q = deserialize(text);
        EXPECT_TRUE(q == p);
        EXPECT_EQ(serialize(q), text);
    }
}

TEST(Serialization, RandomProtocolsRoundTripBitExact) {
    std::mt19937_64 rng(30);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ProtocolSpec p = random_valid(seed);
        const ProtocolSpec q = deserialize(serialize(p));
        EXPECT_TRUE(q == p);
        // Explicit projector entries must survive bit for bit.
        if (p.measurement.kind == Measurement::Kind::Projector) {
            EXPECT_EQ(q.measurement.projector, p.measurement.projector);
        }
    }
    const ProtocolSpec w = oneway_protocol(haar_unitary(4, 1), haar_unitary(4, 2), 1, 1, 1);
    const ProtocolSpec back = deserialize(serialize(w));
    EXPECT_EQ(back.rounds[0].ops[1].unitary->child->matrix, w.rounds[0].ops[1].unitary->child->matrix);
}

TEST(Serialization, MissingModeNamesField) {
    json j = protocol_to_json(ip2_clocked(2));
    j.erase("mode");
    try {
        deserialize(j.dump());
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("\"mode\""), std::string::npos) << e.what();
    }
}

TEST(Serialization, MalformedTextReportsLocation) {
    try {
        deserialize("{\"version\": 1,");
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        EXPECT_NE(e.where.find("byte"), std::string::npos);
    }
}

TEST(Serialization, PerturbedMatrixFailsValidationAfterParse) {
    const ProtocolSpec p = oneway_protocol(haar_unitary(2, 3), haar_unitary(2, 4), 0, 1, 0);
    json j = protocol_to_json(p);
    std::string text = j.dump();
    ProtocolSpec q = deserialize(text);
    ASSERT_TRUE(validate(q).empty());
    // Nudge one entry of Alice's explicit matrix by 1e-3.
    json &entry = j["rounds"][0]["ops"][1]["unitary"]["controlled"]["explicit"]["entries"][0][0];
    ASSERT_TRUE(entry.is_number()) << j["rounds"][0]["ops"][1].dump();
    entry = entry.get<double>() + 1e-3;
    q = deserialize(j.dump());
    EXPECT_TRUE(has_code(validate(q), "unitarity"));
}

}  // namespace
}  // namespace dqc1
