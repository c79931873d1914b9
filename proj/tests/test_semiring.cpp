/*
 * Copyright 2026 The wamc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include "support.hpp"

using namespace wamc;
using wamc::support::Rng;

namespace {

constexpr int kSamples = 1500;
constexpr double kTol = 1e-9;

// Wider draws than the automaton sampler: arbitrary reals for prob and the
// expectation semiring, small integers and the special values otherwise.
template <Semiring S>
Weight<S> draw(Rng& rng)
{
    std::uniform_int_distribution<int> pick(0, 9);
    int k = pick(rng);
    if (k == 0) return S::zero();
    if (k == 1) return S::one();
    if constexpr (std::is_same_v<S, ProbSemiring>) {
        return std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    } else if constexpr (std::is_same_v<S, ExpectationSemiring>) {
        Expectation e{std::uniform_real_distribution<double>(0.0, 2.0)(rng),
                      std::uniform_real_distribution<double>(0.0, 10.0)(rng)};
        return e;
    } else {
        return wamc::support::sample<S>(rng);
    }
}

template <Semiring S>
void expect_near(const Weight<S>& a, const Weight<S>& b, const char* law)
{
    EXPECT_TRUE(S::near(a, b, kTol)) << law << ": " << S::format(a) << " vs " << S::format(b);
}

template <class S>
class SemiringLaws : public ::testing::Test {};

using AllSemirings = ::testing::Types<BooleanSemiring, ProbSemiring, MaxPlusSemiring, MinPlusSemiring, MaxMinSemiring,
                                      ExpectationSemiring>;
TYPED_TEST_SUITE(SemiringLaws, AllSemirings);

TYPED_TEST(SemiringLaws, AxiomsHoldOnSampledTriples)
{
    using S = TypeParam;
    Rng rng(7);
    for (int i = 0; i < kSamples; ++i) {
        auto a = draw<S>(rng), b = draw<S>(rng), c = draw<S>(rng);
        expect_near<S>(S::plus(S::plus(a, b), c), S::plus(a, S::plus(b, c)), "plus associative");
        expect_near<S>(S::plus(a, b), S::plus(b, a), "plus commutative");
        expect_near<S>(S::plus(a, S::zero()), a, "zero is neutral");
        expect_near<S>(S::times(S::times(a, b), c), S::times(a, S::times(b, c)), "times associative");
        expect_near<S>(S::times(a, S::one()), a, "one is right neutral");
        expect_near<S>(S::times(S::one(), a), a, "one is left neutral");
        expect_near<S>(S::times(a, S::zero()), S::zero(), "zero annihilates right");
        expect_near<S>(S::times(S::zero(), a), S::zero(), "zero annihilates left");
        expect_near<S>(S::times(a, S::plus(b, c)), S::plus(S::times(a, b), S::times(a, c)), "left distributive");
        expect_near<S>(S::times(S::plus(a, b), c), S::plus(S::times(a, c), S::times(b, c)), "right distributive");
        if constexpr (S::flags.commutative) expect_near<S>(S::times(a, b), S::times(b, a), "times commutative");
        if constexpr (S::flags.idempotent) expect_near<S>(S::plus(a, a), a, "plus idempotent");
    }
}

TYPED_TEST(SemiringLaws, OrderFlagsHold)
{
    using S = TypeParam;
    Rng rng(11);
    for (int i = 0; i < kSamples; ++i) {
        auto a = draw<S>(rng), b = draw<S>(rng), c = draw<S>(rng);
        auto ab = S::compare(a, b);
        auto ba = S::compare(b, a);
        // Antisymmetric view of one relation.
        if (ab == Order::less) EXPECT_EQ(ba, Order::greater);
        if (ab == Order::equal) EXPECT_EQ(ba, Order::equal);
        if (ab == Order::incomparable) EXPECT_EQ(ba, Order::incomparable);
        if constexpr (S::flags.ordered) EXPECT_NE(ab, Order::incomparable);
        if constexpr (S::flags.zero_is_infimum) EXPECT_TRUE(compare_weight<S>(Cmp::ge, a, S::zero()));
        if constexpr (S::flags.order_preserving) {
            if (compare_weight<S>(Cmp::ge, a, b)) {
                EXPECT_TRUE(compare_weight<S>(Cmp::ge, S::plus(a, c), S::plus(b, c)));
                EXPECT_TRUE(compare_weight<S>(Cmp::ge, S::times(a, c), S::times(b, c)));
                EXPECT_TRUE(compare_weight<S>(Cmp::ge, S::times(c, a), S::times(c, b)));
            }
        }
    }
}

TYPED_TEST(SemiringLaws, FormatParsesBack)
{
    using S = TypeParam;
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        auto a = draw<S>(rng);
        auto back = S::parse_literal(S::format(a));
        ASSERT_TRUE(back.has_value()) << S::format(a);
        EXPECT_EQ(*back, a);
    }
}

TEST(Expectation, PlusIsProbabilityWeightedAverage)
{
    using E = ExpectationSemiring;
    auto s = E::plus({0.25, 4.0}, {0.75, 8.0});
    EXPECT_DOUBLE_EQ(s.p, 1.0);
    EXPECT_DOUBLE_EQ(s.v, 7.0);
    auto t = E::times({0.5, 2.0}, {0.5, 3.0});
    EXPECT_DOUBLE_EQ(t.p, 0.25);
    EXPECT_DOUBLE_EQ(t.v, 5.0);
}

TEST(Expectation, ZeroOverZeroIsZero)
{
    using E = ExpectationSemiring;
    EXPECT_EQ(E::plus(E::zero(), E::zero()), E::zero());
    EXPECT_EQ(E::times({0.0, 5.0}, {1.0, 1.0}), E::zero());
    EXPECT_EQ(*E::parse_literal("(0, 7)"), E::zero());
}

TEST(Expectation, OrderIsPartial)
{
    using E = ExpectationSemiring;
    EXPECT_EQ(E::compare({0.9, 1.0}, {0.5, 2.0}), Order::greater);
    EXPECT_EQ(E::compare({0.9, 3.0}, {0.5, 2.0}), Order::incomparable);
    EXPECT_FALSE(compare_weight<E>(Cmp::ge, {0.9, 3.0}, {0.5, 2.0}));
    EXPECT_FALSE(compare_weight<E>(Cmp::lt, {0.9, 3.0}, {0.5, 2.0}));
    EXPECT_FALSE(E::flags.monotone());
}

TEST(Literals, RealsAndSpecials)
{
    EXPECT_DOUBLE_EQ(*ProbSemiring::parse_literal("1/3"), 1.0 / 3);
    EXPECT_DOUBLE_EQ(*ProbSemiring::parse_literal(" 0.25 "), 0.25);
    EXPECT_FALSE(ProbSemiring::parse_literal("-0.5"));
    EXPECT_FALSE(ProbSemiring::parse_literal("inf"));
    EXPECT_EQ(*MaxPlusSemiring::parse_literal("-inf"), -detail::inf);
    EXPECT_FALSE(MaxPlusSemiring::parse_literal("-2"));
    EXPECT_EQ(*MinPlusSemiring::parse_literal("inf"), detail::inf);
    EXPECT_EQ(*BooleanSemiring::parse_literal("true"), true);
    EXPECT_FALSE(BooleanSemiring::parse_literal("2"));
    EXPECT_THROW(parse_weight<ProbSemiring>("abc"), ParseError);
    EXPECT_EQ(MaxPlusSemiring::format(21.0), "21");
    EXPECT_EQ(ProbSemiring::format(0.5), "0.5");
}

TEST(Order, MinPlusIsInverted)
{
    EXPECT_TRUE(compare_weight<MinPlusSemiring>(Cmp::gt, 2.0, 5.0));
    EXPECT_TRUE(compare_weight<MinPlusSemiring>(Cmp::gt, 0.0, detail::inf));
    EXPECT_EQ(sup<MinPlusSemiring>(2.0, 5.0), 2.0);
    EXPECT_EQ(inf<MaxPlusSemiring>(2.0, 5.0), 2.0);
}

TEST(Registry, NamesResolve)
{
    EXPECT_EQ(make_semiring("maxplus").kind, SemiringKind::maxplus);
    EXPECT_EQ(make_semiring("prob").flags.closure, ClosureStrategy::linear_solve);
    EXPECT_THROW(make_semiring("tropical"), ConfigError);
    EXPECT_EQ(*parse_cmp(">="), Cmp::ge);
    EXPECT_FALSE(parse_cmp("=>"));
}

} // namespace
