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

#include <cmath>
#include <random>

#include "dqc1/problems.hpp"
#include "dqc1/random_protocols.hpp"
#include "dqc1/simulator.hpp"
#include "dqc1/transforms.hpp"

namespace dqc1 {
namespace {

constexpr double kTol = 1e-9;

Inputs bits(const std::string &x, const std::string &y) { return {PlayerInput::from_bits(x), PlayerInput::from_bits(y)}; }

ProtocolSpec random_base(std::uint64_t seed, int clean, int mixed, int rounds, bool single) {
    RandomProtocolOptions o;
    o.clean = clean;
    o.mixed = mixed;
    o.rounds = rounds;
    o.single_qubit_measurement = single;
    return random_protocol(o, seed);
}

/// One clean qubit held by Alice, an input-free op, then a projector on all qubits.
ProtocolSpec one_clean_with_projector(const Matrix &proj, int mixed, std::uint64_t seed) {
    ProtocolSpec p;
    const int q = 1 + mixed;
    p.layout = RegisterLayout{1, mixed, std::vector<int>(static_cast<std::size_t>(q), 0)};
    std::vector<int> all;
    for (int j = 0; j < q; ++j) all.push_back(j);
    p.rounds = {RoundAction{0, {Op{explicit_gate(haar_unitary(1 << q, seed)), all}}, {}, -1}};
    p.measurement = Measurement::projector_on(proj, all);
    return p;
}

// Checks acceptance(out) = alpha * acceptance(base) + beta on every input.
void expect_affine(const ProtocolSpec &base, const TransformResult &res, const std::vector<LabeledInput> &in,
                   Backend out_backend = Backend::Density) {
    for (const auto &li : in) {
        const double a = acceptance(base, li.inputs, Backend::Density);
        const double b = acceptance(res.protocol, li.inputs, out_backend);
        EXPECT_NEAR(b, res.cert.predict(a), kTol) << res.cert.pass << " " << inputs_label(li.inputs);
    }
}

TEST(KToOneClean, Ip2CertBias) {
    for (int n = 1; n <= 3; ++n) {
        const auto res = k_to_one_clean(ip2_clocked(n));
        EXPECT_EQ(res.cert.predicted_bias, 0.125);
        EXPECT_EQ(res.cert.alpha, 0.25);
        EXPECT_EQ(res.cert.beta, 0.375);
        EXPECT_EQ(res.protocol.layout.clean, 1);
        EXPECT_EQ(res.protocol.layout.mixed, 2 + 1);
        EXPECT_NEAR(measure_bias(res.protocol, ip2_inputs(n), res.cert.predicted_reference), 0.125, kTol);
    }
}

TEST(KToOneClean, SingleCleanQubitHalvesBias) {
    ProtocolSpec p = random_base(3, 1, 1, 2, true);
    p.declared = DeclaredBias{0.5, 0.5};
    const auto res = k_to_one_clean(p);
    EXPECT_EQ(res.cert.predicted_bias, 0.25);
    expect_affine(p, res, all_bit_inputs(2));
}

TEST(KToOneClean, ZeroCleanQubitsRejected) {
    ProtocolSpec p;
    p.layout = RegisterLayout{0, 1, {0}};
    p.rounds = {RoundAction{0, {Op{explicit_gate(hadamard()), {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0);
    EXPECT_THROW(k_to_one_clean(p), DomainError);
}

TEST(KToOneClean, AffineMapOnRandomTwoCleanBases) {
    for (std::uint64_t s = 0; s < 25; ++s) {
        const ProtocolSpec base = random_base(100 + s, 2, static_cast<int>(s % 3), 1 + static_cast<int>(s % 4), s % 2);
        const auto res = k_to_one_clean(base);
        ASSERT_LE(res.protocol.qubits(), 6);
        EXPECT_DOUBLE_EQ(res.cert.alpha, 0.25);
        EXPECT_DOUBLE_EQ(res.cert.beta, 0.375);
        expect_affine(base, res, all_bit_inputs(2));
        const int c = communication_cost(base);
        EXPECT_TRUE(res.cert.communication_after == c || res.cert.communication_after == c + 1);
        EXPECT_EQ(res.cert.communication_after, communication_cost(res.protocol));
    }
}

TEST(KToOneClean, AffineMapForThreeCleanQubits) {
    const ProtocolSpec base = random_base(7, 3, 1, 3, false);
    const auto res = k_to_one_clean(base);
    EXPECT_DOUBLE_EQ(res.cert.alpha, 0.125);
    EXPECT_DOUBLE_EQ(res.cert.beta, 0.4375);
    expect_affine(base, res, all_bit_inputs(2));
}

TEST(ProjectiveToSingleQubit, AcceptAllAndRejectAll) {
    for (int mixed = 0; mixed <= 2; ++mixed) {
        const int d = 2 << mixed;
        const auto all = projective_to_single_qubit(one_clean_with_projector(identity(d), mixed, 1));
        const auto none = projective_to_single_qubit(one_clean_with_projector(Matrix::Zero(d, d), mixed, 1));
        EXPECT_EQ(all.protocol.measurement.kind, Measurement::Kind::SingleQubit);
        EXPECT_NEAR(acceptance(all.protocol, {}, Backend::Density), 1.0, kTol);
        EXPECT_NEAR(acceptance(none.protocol, {}, Backend::Density), 0.0, kTol);
    }
}

TEST(ProjectiveToSingleQubit, RandomRankThreeProjectorPreserved) {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix u = haar_unitary(8, rng());
        const Matrix v = u.leftCols(3);
        const ProtocolSpec base = one_clean_with_projector(v * v.adjoint(), 2, rng());
        const auto res = projective_to_single_qubit(base);
        EXPECT_EQ(res.cert.alpha, 1.0);
        EXPECT_EQ(res.cert.beta, 0.0);
        EXPECT_NEAR(acceptance(res.protocol, {}, Backend::Density), acceptance(base, {}, Backend::Density), kTol);
    }
}

TEST(ProjectiveToSingleQubit, PreservesAcceptanceOfK1Outputs) {
    for (int n = 1; n <= 2; ++n) {
        const auto k1 = k_to_one_clean(ip2_clocked(n));
        const auto sq = projective_to_single_qubit(k1.protocol);
        expect_affine(k1.protocol, sq, ip2_inputs(n));
    }
}

TEST(FixedChannel, PreservesAcceptanceAndSendsEveryRound) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ProtocolSpec base = random_base(200 + s, 1, 1, 3, true);
        const auto res = to_fixed_channel(base);
        EXPECT_EQ(res.protocol.channel, Channel::Fixed);
        EXPECT_TRUE(validate(res.protocol).empty());
        expect_affine(base, res, all_bit_inputs(2));
        EXPECT_EQ(res.cert.communication_after, communication_cost(res.protocol));
    }
}

// Two clean qubits; Alice applies u to qubit 1 and sends both to Bob, who measures qubit 1.
ProtocolSpec two_clean_base(const Matrix &u) {
    ProtocolSpec p;
    p.layout = RegisterLayout{2, 0, {0, 0}};
    p.rounds = {RoundAction{0, {Op{explicit_gate(u), {1}}}, {0, 1}, 1},
                RoundAction{1, {Op{explicit_gate(identity(2)), {1}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(1, 0);
    return p;
}

TEST(TraceForm, FormulaEndpoints) {
    EXPECT_DOUBLE_EQ(trace_form_acceptance(0.5, 0), 0.5 + 1.0 / 16 + 0.5 / 8);
    // p0 = 1/2 + a/8: a = 1 gives 5/8, a = 1/2 gives 9/16.
    const auto a1 = to_trace_form(two_clean_base(identity(2)));
    EXPECT_DOUBLE_EQ(a1.cert.alpha, 0.125);
    EXPECT_DOUBLE_EQ(a1.cert.beta, 0.5);
    EXPECT_NEAR(acceptance(a1.protocol, {}, Backend::Trace), 0.625, kTol);
    const auto ah = to_trace_form(two_clean_base(hadamard()));
    EXPECT_NEAR(acceptance(ah.protocol, {}, Backend::Trace), 9.0 / 16, kTol);
    EXPECT_NEAR(acceptance(ah.protocol, {}, Backend::Density), 9.0 / 16, kTol);
}

TEST(TraceForm, SilentProtocolRejected) {
    ProtocolSpec p;
    p.layout = RegisterLayout{1, 0, {0}};
    p.rounds = {RoundAction{0, {Op{explicit_gate(identity(2)), {0}}}, {}, -1}};
    p.measurement = Measurement::single_qubit(0, 0);
    EXPECT_THROW(to_trace_form(p), ShapeError);
}

TEST(TraceForm, Ip2ChainMatchesFormula) {
    for (int n = 1; n <= 2; ++n) {
        const auto sq = projective_to_single_qubit(k_to_one_clean(ip2_clocked(n)).protocol);
        const auto tf = to_trace_form(sq.protocol);
        ASSERT_TRUE(tf.protocol.trace_form.has_value());
        for (const auto &li : ip2_inputs(n)) {
            const double eps = li.label ? 0.5 : -0.5;
            EXPECT_NEAR(acceptance(tf.protocol, li.inputs, Backend::Trace), trace_form_acceptance(eps, 2), kTol);
        }
        expect_affine(sq.protocol, tf, ip2_inputs(n), Backend::Trace);
    }
}

TEST(TraceForm, RandomBasesTraceAgreesWithDensity) {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const ProtocolSpec base = random_base(300 + s, 1, 1, 2 + static_cast<int>(s % 2), true);
        const auto tf = to_trace_form(base);
        EXPECT_DOUBLE_EQ(tf.cert.alpha, std::ldexp(1.0, -(base.layout.clean + 1)));
        EXPECT_EQ(tf.cert.communication_after, communication_cost(tf.protocol));
        for (const auto &li : all_bit_inputs(1)) {
            const Inputs in = bits(li.inputs[0].bits + "0", li.inputs[1].bits + "1");
            if (tf.protocol.qubits() <= 10) {
                EXPECT_NEAR(acceptance(tf.protocol, in, Backend::Trace), acceptance(tf.protocol, in, Backend::Density), kTol);
            }
            EXPECT_NEAR(acceptance(tf.protocol, in, Backend::Trace), tf.cert.predict(acceptance(base, in, Backend::Density)), kTol);
        }
    }
}

TEST(TraceForm, MultiQubitMeasurementRejected) {
    EXPECT_THROW(to_trace_form(ip2_one_clean(2)), ShapeError);
}

TEST(Unclock, AcceptanceUnchangedForEveryCounterStart) {
    for (std::uint64_t s = 0; s < 4; ++s) {
        const auto tf = to_trace_form(random_base(400 + s, 1, 1, 2 + static_cast<int>(s % 3), true));
        const auto un = unclock(tf.protocol);
        EXPECT_EQ(un.protocol.mode, Mode::SemiUnclocked);
        EXPECT_TRUE(validate(un.protocol).empty());
        ASSERT_TRUE(un.protocol.trace_form.has_value());
        const auto &ctr = un.protocol.trace_form->counter;
        // One counter value per Alice/Bob round pair.
        const auto pairs = (tf.protocol.rounds.size() + 1) / 2;
        EXPECT_EQ(static_cast<int>(ctr.size()), ceil_log2(pairs));
        EXPECT_EQ(un.protocol.qubits(), tf.protocol.qubits() + static_cast<int>(ctr.size()));
        for (const auto &li : all_bit_inputs(2)) {
            const double want = acceptance(tf.protocol, li.inputs, Backend::Trace);
            EXPECT_NEAR(acceptance(un.protocol, li.inputs, Backend::Trace), want, kTol);
            for (int start = 0; start < (1 << ctr.size()); ++start) {
                SimOptions opt;
                for (std::size_t b = 0; b < ctr.size(); ++b) opt.fixed[ctr[b]] = (start >> (ctr.size() - 1 - b)) & 1;
                EXPECT_NEAR(acceptance(un.protocol, li.inputs, Backend::Trace, opt), want, kTol) << "start " << start;
            }
        }
    }
}

TEST(Unclock, RoundCountMismatchRejected) {
    const auto tf = to_trace_form(random_base(5, 1, 1, 2, true));
    EXPECT_THROW(unclock(tf.protocol, static_cast<int>(tf.protocol.rounds.size()) + 3), ShapeError);
}

TEST(Unclock, RejectsNonTraceForm) { EXPECT_THROW(unclock(ip2_clocked(2)), ShapeError); }

TEST(Unclock, Ip2ChainCommunicationMatchesCert) {
    const auto sq = projective_to_single_qubit(k_to_one_clean(ip2_clocked(2)).protocol);
    const auto tf = to_trace_form(sq.protocol);
    const auto un = unclock(tf.protocol);
    EXPECT_EQ(un.cert.communication_after, communication_cost(un.protocol));
    EXPECT_GE(un.cert.communication_after, tf.cert.communication_after);
    for (const auto &li : ip2_inputs(2)) {
        EXPECT_NEAR(acceptance(un.protocol, li.inputs, Backend::Trace), acceptance(tf.protocol, li.inputs, Backend::Trace),
                    kTol);
    }
}

// Full chain: bias 1/2 shrinks to 1/2^{k+3} around 9/16.
TEST(Composition, Ip2ChainBias) {
    for (int n = 1; n <= 2; ++n) {
        ProtocolSpec p = ip2_clocked(n);
        double alpha = 1, beta = 0;
        for (const char *pass : {"k1", "sq-measure", "trace-form", "unclock"}) {
            const auto res = apply_pass(pass, p);
            beta = res.cert.alpha * beta + res.cert.beta;
            alpha *= res.cert.alpha;
            p = res.protocol;
        }
        EXPECT_DOUBLE_EQ(alpha, 1.0 / 32);
        EXPECT_DOUBLE_EQ(alpha * 0.5 + beta, 0.5 + 1.0 / 16 + 0.5 / 32 - 0.5 / 32);
        EXPECT_NEAR(measure_bias(p, ip2_inputs(n), 9.0 / 16, Backend::Trace), 0.5 / 32, kTol);
        EXPECT_NEAR(p.declared.eps, 0.5 / 32, kTol);
    }
}

TEST(Lemma1, MiddleOneInputScalesToOneThirtySecond) {
    const ProtocolSpec base = middle_protocol(4);
    const auto res = two_round_one_clean(base);
    EXPECT_EQ(res.protocol.layout.clean, 1);
    EXPECT_DOUBLE_EQ(res.cert.alpha, 0.125);
    // t = -1: sum x_i y_i = 1.
    const Inputs one = bits("1000", "1000");
    EXPECT_NEAR(acceptance(base, one, Backend::Density), 0.25, kTol);
    EXPECT_NEAR(acceptance(res.protocol, one, Backend::Density), 1.0 / 32, kTol);
    const Inputs zero = bits("1100", "1100");
    EXPECT_NEAR(acceptance(res.protocol, zero, Backend::Density), 0.0, kTol);
}

TEST(Lemma1, RandomTwoRoundScalesByQuarter) {
    for (std::uint64_t s = 0; s < 15; ++s) {
        const ProtocolSpec base = random_two_round(2, s);
        const auto res = two_round_one_clean(base);
        ASSERT_LE(res.protocol.qubits(), 6);
        EXPECT_DOUBLE_EQ(res.cert.alpha, 0.25);
        EXPECT_DOUBLE_EQ(res.cert.beta, 0.0);
        expect_affine(base, res, {LabeledInput{bits("0", "1"), -1}});
    }
}

TEST(Lemma1, ShapeMismatch) { EXPECT_THROW(two_round_one_clean(ip2_clocked(2)), ShapeError); }

PPProtocol xor_pp(double eps) {
    PPProtocol pp;
    pp.t_map = {0, 1};
    pp.accept = {{0, 1}, {1, 0}};
    pp.eps = eps;
    return pp;
}

TEST(PpToOneway, OneBitToy) {
    const auto res = pp_to_oneway(xor_pp(0.25));
    EXPECT_EQ(res.cert.predicted_bias, 0.125);
    EXPECT_EQ(*res.cert.cost_bound, 2 * 4 / 0.0625);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double want = (x ^ y) ? 0.625 : 0.375;
            EXPECT_NEAR(acceptance(res.protocol, bits(std::to_string(x), std::to_string(y)), Backend::Density), want, kTol);
        }
}

TEST(PpToOneway, ZeroBiasIsHalfEverywhere) {
    const auto res = pp_to_oneway(xor_pp(0.0));
    EXPECT_FALSE(res.cert.cost_bound.has_value());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            EXPECT_NEAR(acceptance(res.protocol, bits(std::to_string(x), std::to_string(y)), Backend::Density), 0.5, kTol);
}

TEST(PpToOneway, TwoBitFunction) {
    PPProtocol pp;
    pp.x_bits = pp.y_bits = pp.c = 2;
    pp.t_map = {3, 1, 0, 2};
    pp.eps = 0.3;
    pp.accept = {{1, 1, 0, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 0, 1, 1}};
    const auto res = pp_to_oneway(pp);
    for (std::uint64_t x = 0; x < 4; ++x)
        for (std::uint64_t y = 0; y < 4; ++y) {
            const double sign = pp.accept[y][pp.t_map[x]] ? 1 : -1;
            EXPECT_NEAR(acceptance(res.protocol, bits(to_bits(x, 2), to_bits(y, 2)), Backend::Density),
                        0.5 + sign * 0.3 / 4, kTol);
        }
}

TEST(PpToOneway, NonDeterministicMapRejected) {
    json j = xor_pp(0.25).to_json();
    j["t_map"] = json::array({json::array({0, 1}), 1});
    EXPECT_THROW(PPProtocol::from_json(j), ShapeError);
    j["t_map"] = json::array({json::array({1}), 0});
    EXPECT_EQ(PPProtocol::from_json(j).t_map, (std::vector<std::uint64_t>{1, 0}));
}

TEST(PpToOneway, UnbalancedPredicateRejected) {
    PPProtocol pp = xor_pp(0.25);
    pp.accept = {{1, 1}, {1, 0}};
    EXPECT_THROW(pp_to_oneway(pp), ShapeError);
}

TEST(ApplyPass, Names) {
    EXPECT_THROW(apply_pass("nope", ip2_clocked(1)), DomainError);
    EXPECT_THROW(apply_pass("pp-oneway", ip2_clocked(1)), ShapeError);
    EXPECT_EQ(apply_pass("k1", ip2_clocked(1)).cert.pass, "k1");
}

}  // namespace
}  // namespace dqc1
