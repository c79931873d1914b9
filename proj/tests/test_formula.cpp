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

using B = BooleanSemiring;
using P = ProbSemiring;
using MP = MaxPlusSemiring;

template <Semiring S = P>
std::string round(const std::string& text)
{
    return to_string(parse_formula<S>(text));
}

TEST(Parser, Precedence)
{
    EXPECT_EQ(round("a | b & c"), "(a | (b & c))");
    EXPECT_EQ(round("a -> b -> c"), "(a -> (b -> c))");
    EXPECT_EQ(round("a | b -> c"), "((a | b) -> c)");
    EXPECT_EQ(round("a U{>0, 3} b & c"), "((a U{>0, 3} b) & c)");
    EXPECT_EQ(round("!a & b"), "(!a & b)");
    EXPECT_EQ(round("!(a & b)"), "!(a & b)");
    EXPECT_EQ(round("a AU{>=0.5, inf} b"), "(a AU{>=0.5, inf} b)");
    EXPECT_EQ(round("[d]{>= 1/3}.ok"), "[d]{>=" + P::format(1.0 / 3) + "}.ok");
}

TEST(Parser, Sugar)
{
    EXPECT_EQ(round("UX{>0.5} ok"), "(true U{>0.5, 1} ok)");
    EXPECT_EQ(round("AX{>=1} ok"), "(true AU{>=1, 1} ok)");
    EXPECT_EQ(round("AF{>0, 4} ok"), "(true AU{>0, 4} ok)");
    EXPECT_EQ(round("UF{<=2, inf} ok"), "(true U{<=2, inf} ok)");
}

TEST(Parser, SemiringLiterals)
{
    EXPECT_EQ(round<MP>("true U{>=21, 9} ok"), "(true U{>=21, 9} ok)");
    EXPECT_EQ(round<MP>("true U{>-inf, 9} ok"), "(true U{>-inf, 9} ok)");
    EXPECT_EQ(round<ExpectationSemiring>("a U{>=(0.5, 2), 3} b"), "(a U{>=(0.5,2), 3} b)");
    EXPECT_EQ(round<B>("[x]{>0}.true"), "[x]{>0}.true");
    EXPECT_THROW(parse_formula<P>("a U{>=-1, 3} b"), ParseError);
    EXPECT_THROW(parse_formula<B>("a U{>=2, 3} b"), ParseError);
}

TEST(Parser, Errors)
{
    for (const char* bad : {"", "a &", "(a", "a U{>0} b", "[l]{>0}a", "U", "a b", "a U{0, 2} b", "a U{>0, -1} b",
                            "[l{>0}.a", "!", "a | | b", "AX{>0, 3} a", "EX a"}) {
        EXPECT_THROW(parse_formula<P>(bad), ParseError) << bad;
    }
}

TEST(Parser, RandomRoundTrip)
{
    Rng rng(1);
    support::FormulaSpace space{{"p", "q", "ok"}, {"a", "b"}};
    std::vector<double> pool{0.0, 0.25, 1.0 / 3, 1.0, 2.5};
    for (int i = 0; i < 500; ++i) {
        auto f = support::random_formula<P>(rng, space, pool, 4);
        auto text = to_string(f);
        EXPECT_TRUE(same_formula(parse_formula<P>(text), f)) << text;
    }
}

TEST(Length, Inductive)
{
    EXPECT_EQ(leng(parse_formula<P>("a")), 1u);
    EXPECT_EQ(leng(parse_formula<P>("!!a")), 3u);
    EXPECT_EQ(leng(parse_formula<P>("a | [l]{>0}.!b")), 4u);
    EXPECT_EQ(leng(parse_formula<P>("(a U{>0, 2} b) AU{>0, 3} c")), 3u);
}

bool only_strict_or_ge(const Formula<P>& f)
{
    if (!f) return true;
    bool ok = true;
    if (f->kind == NodeKind::diamond || f->kind == NodeKind::until || f->kind == NodeKind::all_until)
        ok = f->cmp == Cmp::gt || f->cmp == Cmp::ge;
    return ok && only_strict_or_ge(f->lhs) && only_strict_or_ge(f->rhs);
}

TEST(Normalize, LeavesOnlyGreaterComparisons)
{
    Rng rng(2);
    support::FormulaSpace space{{"p", "q"}, {"a"}};
    std::vector<double> pool{0.0, 0.5, 1.0};
    for (int i = 0; i < 300; ++i) EXPECT_TRUE(only_strict_or_ge(normalize_cmp(support::random_formula<P>(rng, space, pool, 3))));
    EXPECT_EQ(to_string(normalize_cmp(parse_formula<P>("a U{<=0.5, 2} b"))), "!(a U{>0.5, 2} b)");
    EXPECT_EQ(to_string(normalize_cmp(parse_formula<P>("[l]{=1}.b"))), "([l]{>=1}.b & ![l]{>1}.b)");
    EXPECT_EQ(to_string(normalize_cmp(parse_formula<P>("a AU{<1, 3} b"))),
              "(!(((a U{>=1, 3} b) & !(a U{>1, 3} b)) | (a U{>1, 3} b)) & (a AU{>=0, 3} b))");
}

// Reference CTL semantics on a total transition relation. EX and AX follow
// the CTL$ next operators, which also count the empty path: phi | EX phi.
struct Ctl {
    const Automaton<B>& a;

    std::vector<std::vector<StateId>> succ() const
    {
        std::vector<std::vector<StateId>> s(a.num_states());
        for (StateId x = 0; x < a.num_states(); ++x)
            for (LabelId l = 0; l < a.num_labels(); ++l)
                for (const auto& e : a.matrix(l).row(x)) s[x].push_back(e.index);
        return s;
    }

    StateSet ex(const StateSet& f) const
    {
        auto s = succ();
        StateSet r(f.size());
        for (StateId x = 0; x < f.size(); ++x)
            for (auto y : s[x]) r[x] = r[x] || f[y];
        return r;
    }

    StateSet ax(const StateSet& f) const
    {
        auto s = succ();
        StateSet r(f.size(), true);
        for (StateId x = 0; x < f.size(); ++x)
            for (auto y : s[x]) r[x] = r[x] && f[y];
        return r;
    }

    StateSet eu(const StateSet& f, const StateSet& g) const
    {
        StateSet r = g;
        for (bool changed = true; changed;) {
            changed = false;
            auto next = ex(r);
            for (StateId x = 0; x < r.size(); ++x)
                if (!r[x] && f[x] && next[x]) r[x] = changed = true;
        }
        return r;
    }

    StateSet au(const StateSet& f, const StateSet& g) const
    {
        StateSet r = g;
        for (bool changed = true; changed;) {
            changed = false;
            auto next = ax(r);
            for (StateId x = 0; x < r.size(); ++x)
                if (!r[x] && f[x] && next[x]) r[x] = changed = true;
        }
        return r;
    }
};

StateSet lor(const StateSet& a, const StateSet& b)
{
    StateSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
    return r;
}

StateSet lnot(const StateSet& a)
{
    StateSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = !a[i];
    return r;
}

Automaton<B> total_random(Rng& rng, std::size_t n)
{
    AutomatonBuilder<B> b;
    std::bernoulli_distribution coin(0.4);
    for (std::size_t x = 0; x < n; ++x) {
        PropSet props;
        if (coin(rng)) props.insert("p");
        if (coin(rng)) props.insert("q");
        b.add_state("s" + std::to_string(x), props);
    }
    b.add_label("a");
    for (std::size_t x = 0; x < n; ++x) {
        bool any = false;
        for (std::size_t y = 0; y < n; ++y)
            if (coin(rng)) {
                b.add_transition("s" + std::to_string(x), "a", "s" + std::to_string(y), true);
                any = true;
            }
        if (!any) b.add_transition("s" + std::to_string(x), "a", "s" + std::to_string((x + 1) % n), true);
    }
    b.set_all_init(true);
    b.set_all_final(true);
    return b.build();
}

TEST(CtlCompat, MatchesReferenceSemantics)
{
    Rng rng(4);
    for (int round = 0; round < 100; ++round) {
        auto a = total_random(rng, 2 + round % 6);
        Ctl ctl{a};
        auto p = a.atom("p"), q = a.atom("q");
        auto run = [&](const char* text) { return check(a, ctl_compat<B>(text)).satisfied(); };
        EXPECT_EQ(run("EX p"), lor(p, ctl.ex(p)));
        EXPECT_EQ(run("AX p"), lor(p, ctl.ax(p)));
        EXPECT_EQ(run("EF q"), ctl.eu(all_states(p.size()), q));
        EXPECT_EQ(run("AF q"), ctl.au(all_states(p.size()), q));
        EXPECT_EQ(run("E[p U q]"), ctl.eu(p, q));
        EXPECT_EQ(run("A[p U q]"), ctl.au(p, q));
        EXPECT_EQ(run("AG p"), lnot(ctl.eu(all_states(p.size()), lnot(p))));
        EXPECT_EQ(run("EG p"), lnot(ctl.au(all_states(p.size()), lnot(p))));
        EXPECT_EQ(run("EG p & !AF q"), [&] {
            auto eg = lnot(ctl.au(all_states(p.size()), lnot(p)));
            auto af = ctl.au(all_states(p.size()), q);
            StateSet r(p.size());
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = eg[i] && !af[i];
            return r;
        }());
    }
}

TEST(CtlCompat, RejectsNonBooleanAndCtlSyntaxErrors)
{
    EXPECT_THROW(ctl_compat<P>("EF ok"), UnsupportedError);
    EXPECT_THROW(ctl_compat<B>("E[p q]"), ParseError);
    EXPECT_THROW(ctl_compat<B>("a U{>0, 2} b"), ParseError);
    EXPECT_EQ(to_string(ctl_compat<B>("AG ok")), "!(true U{>0, inf} !ok)");
    // A proposition named A is still an atom.
    EXPECT_EQ(to_string(ctl_compat<B>("A & E")), "(A & E)");
}

} // namespace
