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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <random>

#include "dqc1/problems.hpp"
#include "dqc1/simulator.hpp"

namespace dqc1 {
namespace {

constexpr double kTol = 1e-9;

Inputs bits(const std::string &x, const std::string &y) { return {PlayerInput::from_bits(x), PlayerInput::from_bits(y)}; }

int popcount_and(const std::string &x, const std::string &y) {
    int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] == '1' && y[i] == '1';
    return s;
}

int weight(const std::string &x) { return static_cast<int>(std::count(x.begin(), x.end(), '1')); }

TEST(Ip2, InnerProductMod2) {
    EXPECT_EQ(ip2("1", "1"), 1);
    EXPECT_EQ(ip2("11", "11"), 0);
    EXPECT_EQ(ip2("101", "111"), 0);
    EXPECT_EQ(ip2("101", "100"), 1);
    EXPECT_THROW(ip2("1", "11"), DomainError);
}

TEST(Ip2, ClockedExactAndOneCleanEighth) {
    EXPECT_NEAR(measure_bias(ip2_clocked(2), ip2_inputs(2), 0.5), 0.5, kTol);
    EXPECT_NEAR(measure_bias(ip2_one_clean(2), ip2_inputs(2), 0.5), 0.125, kTol);
    EXPECT_NEAR(acceptance(ip2_clocked(1), bits("1", "1"), Backend::Density), 1.0, kTol);
    EXPECT_THROW(ip2_clocked(0), DomainError);
}

TEST(Ip2, OneCleanFiveEighthsUpToThree) {
    for (int n = 1; n <= 3; ++n)
        for (const auto &li : ip2_inputs(n)) {
            const double acc = acceptance(ip2_one_clean(n), li.inputs, Backend::Density);
            EXPECT_NEAR(li.label ? acc : 1 - acc, 0.625, kTol);
        }
}

TEST(Middle, InstanceOffset) {
    const auto inst = middle_instance("1100", "1010");
    EXPECT_EQ(inst.t, -1);
    EXPECT_EQ(inst.label(), 1);
    EXPECT_EQ(middle_instance("1100", "1100").t, 0);
    EXPECT_EQ(middle_instance("1100", "1100").label(), 0);
    EXPECT_THROW(middle_instance("110", "101"), DomainError);
    EXPECT_THROW(middle_instance("1100", "101"), DomainError);
}

TEST(Middle, Examples) {
    const auto std4 = middle_protocol(4), one4 = middle_protocol(4, MiddleVariant::OneClean);
    EXPECT_NEAR(acceptance(std4, bits("1100", "1010"), Backend::Density), 0.25, kTol);
    EXPECT_NEAR(acceptance(std4, bits("1100", "1100"), Backend::Density), 0.0, kTol);
    EXPECT_NEAR(acceptance(one4, bits("1100", "1010"), Backend::Density), 0.03125, kTol);
    EXPECT_THROW(middle_protocol(6), DomainError);
    EXPECT_THROW(middle_protocol(1), DomainError);
}

TEST(Middle, RegisterAndCommunication) {
    for (int n : {2, 4, 8}) {
        const int l = qubit_count(n);
        const auto p = middle_protocol(n), one = middle_protocol(n, MiddleVariant::OneClean);
        EXPECT_EQ(p.layout.clean, l + 1);
        EXPECT_EQ(communication_cost(p), 2 * l + 2);
        EXPECT_EQ(communication_cost(one), communication_cost(p));
        EXPECT_EQ(one.layout.clean, 1);
    }
}

TEST(Middle, ExhaustiveAcceptanceFormulas) {
    for (int n : {2, 4}) {
        const auto p = middle_protocol(n), one = middle_protocol(n, MiddleVariant::OneClean);
        const double nn = n;
        for (const auto &li : middle_inputs(n)) {
            const auto inst = middle_instance(li.inputs[0].bits, li.inputs[1].bits);
            const double t = inst.t;
            EXPECT_NEAR(acceptance(p, li.inputs, Backend::Density), 4 * t * t / (nn * nn), kTol);
            EXPECT_NEAR(acceptance(one, li.inputs, Backend::Density), 2 * t * t / (nn * nn * nn), kTol);
        }
    }
}

TEST(Middle, SampledAtEight) {
    const auto p = middle_protocol(8), one = middle_protocol(8, MiddleVariant::OneClean);
    std::mt19937_64 rng(80);
    std::uniform_int_distribution<std::uint64_t> d(0, 255);
    for (int i = 0; i < 200; ++i) {
        const auto inst = middle_instance(to_bits(d(rng), 8), to_bits(d(rng), 8));
        const Inputs in = bits(inst.x, inst.y);
        const double t = inst.t;
        EXPECT_NEAR(acceptance(p, in, Backend::Density), 4 * t * t / 64, kTol);
        EXPECT_NEAR(acceptance(one, in, Backend::Density), 2 * t * t / 512, kTol);
    }
}

TEST(Abc, TwoByTwoBothLabels) {
    const auto p = abc_protocol(2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        EXPECT_NEAR(acceptance(p, abc_instance(2, 1, s).inputs(), Backend::Density), 1.0, kTol);
        EXPECT_NEAR(acceptance(p, abc_instance(2, -1, s).inputs(), Backend::Density), 0.0, kTol);
    }
}

TEST(Abc, FourByFourHundredTrialsWithCatalystSubstitution) {
    const auto p = abc_protocol(4);
    std::mt19937_64 rng(44);
    for (int label : {1, -1}) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto inst = abc_instance(4, label, rng());
            const double want = label == 1 ? 1.0 : 0.0;
            EXPECT_NEAR(acceptance(p, inst.inputs(), Backend::Density), want, kTol);
            SimOptions pinned;
            pinned.fixed[1] = static_cast<int>(rng() & 1);
            pinned.fixed[2] = static_cast<int>(rng() & 1);
            EXPECT_NEAR(acceptance(p, inst.inputs(), Backend::Density, pinned), want, kTol);
            EXPECT_NEAR(acceptance(p, inst.inputs(), Backend::Trace), want, kTol);
        }
    }
}

TEST(Abc, DomainErrors) {
    EXPECT_THROW(abc_protocol(3), DomainError);
    EXPECT_THROW(abc_protocol(6), DomainError);
    EXPECT_THROW(abc_instance(5, 1, 0), DomainError);
    EXPECT_THROW(abc_instance(4, 0, 0), DomainError);
}

TEST(Abc, InstanceInvariantsOverThousandSeeds) {
    double orth = 0, prod = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const int label = s % 2 ? -1 : 1;
        const auto inst = abc_instance(8, label, s);
        const RealMatrix id = RealMatrix::Identity(8, 8);
        for (const RealMatrix *m : {&inst.a, &inst.b, &inst.c}) {
            orth = std::max(orth, (m->transpose() * *m - id).cwiseAbs().maxCoeff());
        }
        EXPECT_NEAR(inst.b.determinant(), 1.0, 1e-9);
        prod = std::max(prod, (inst.a * inst.b * inst.c - label * id).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(orth, 1e-9);
    EXPECT_LT(prod, 1e-8);
}

TEST(Abc, CommunicationIsTwoHops) {
    for (int n : {2, 4, 8}) EXPECT_EQ(communication_cost(abc_protocol(n)), 2 * (qubit_count(n) + 1));
}

TEST(Razborov, ConstraintsOnEveryDraw) {
    std::mt19937_64 rng(90);
    for (int n : {6, 14, 22, 30}) {
        const int len = n / 2 + 1, w = len / 4;
        for (int i = 0; i < 500; ++i) {
            const auto m1 = razborov_sample(n, Razborov::Mu1, rng);
            const auto m0 = razborov_sample(n, Razborov::Mu0, rng);
            ASSERT_EQ(static_cast<int>(m1.x.size()), len);
            ASSERT_EQ(weight(m1.x), w);
            ASSERT_EQ(weight(m1.y), w);
            ASSERT_EQ(popcount_and(m1.x, m1.y), 0);
            ASSERT_EQ(weight(m0.x), w);
            ASSERT_EQ(weight(m0.y), w);
            ASSERT_EQ(popcount_and(m0.x, m0.y), 1);
        }
    }
}

TEST(Razborov, DivisibilityRequired) {
    EXPECT_THROW(razborov_sample(8, Razborov::Mu0, std::uint64_t{1}), DomainError);
    EXPECT_THROW(razborov_sample(7, Razborov::Mu1, std::uint64_t{1}), DomainError);
}

// Chi-square against the uniform law on the exhaustively enumerated admissible set.
double uniformity_p_value(Razborov which, int draws, std::uint64_t seed) {
    constexpr int n = 14, len = 8, w = 2;
    const int want_meet = which == Razborov::Mu0 ? 1 : 0;
    std::map<std::pair<std::string, std::string>, long> counts;
    for (int x = 0; x < (1 << len); ++x)
        for (int y = 0; y < (1 << len); ++y) {
            const auto xs = to_bits(static_cast<std::uint64_t>(x), len), ys = to_bits(static_cast<std::uint64_t>(y), len);
            if (weight(xs) == w && weight(ys) == w && popcount_and(xs, ys) == want_meet) counts[{xs, ys}] = 0;
        }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < draws; ++i) {
        const auto s = razborov_sample(n, which, rng);
        auto it = counts.find({s.x, s.y});
        if (it == counts.end()) return 0.0;
        ++it->second;
    }
    const double expect = static_cast<double>(draws) / static_cast<double>(counts.size());
    double chi2 = 0;
    for (const auto &[k, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
    const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, chi2));
}

TEST(Razborov, UniformOverAdmissiblePairs) {
    EXPECT_GT(uniformity_p_value(Razborov::Mu1, 100000, 91), 0.001);
    EXPECT_GT(uniformity_p_value(Razborov::Mu0, 100000, 92), 0.001);
}

TEST(MiddlePad, Examples) {
    constexpr int n = 14;
    const auto m1 = middle_pad(razborov_sample(n, Razborov::Mu1, std::uint64_t{3}), n);
    const auto m0 = middle_pad(razborov_sample(n, Razborov::Mu0, std::uint64_t{3}), n);
    EXPECT_EQ(m1.x.size(), 14u);
    EXPECT_EQ(popcount_and(m1.x, m1.y), 6);
    EXPECT_EQ(popcount_and(m0.x, m0.y), 7);
    const auto z = middle_pad(StringPair{"00000000", "00000000"}, n);
    EXPECT_EQ(z.x, "11111100000000");
    EXPECT_EQ(popcount_and(z.x, z.y), 6);
    EXPECT_THROW(middle_pad(StringPair{"000", "000"}, n), DomainError);
}

TEST(MiddlePad, ReductionLabels) {
    // At n = 6 the padded strings are MIDDLE inputs of length 6; t = -1 for mu1 and 0 for mu0.
    std::mt19937_64 rng(93);
    for (int i = 0; i < 50; ++i) {
        const auto a = middle_pad(razborov_sample(6, Razborov::Mu1, rng), 6);
        const auto b = middle_pad(razborov_sample(6, Razborov::Mu0, rng), 6);
        EXPECT_EQ(popcount_and(a.x, a.y) - 3, -1);
        EXPECT_EQ(popcount_and(b.x, b.y) - 3, 0);
    }
}

}  // namespace
}  // namespace dqc1
