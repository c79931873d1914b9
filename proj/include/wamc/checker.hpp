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

#ifndef WAMC_CHECKER_HPP
#define WAMC_CHECKER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wamc/automaton.hpp"
#include "wamc/closure.hpp"
#include "wamc/errors.hpp"
#include "wamc/formula.hpp"
#include "wamc/linalg.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

enum class Mark : std::uint8_t { unsat, sat, undefined };

/// Per-state verdicts of one check.
template <Semiring S>
struct SatResult {
    std::vector<Mark> marks;
    /// Value compared against the threshold, per state (quantitative operators only).
    std::optional<std::vector<Weight<S>>> weights;
    /// Matrix-vector products spent by the loops.
    std::size_t products = 0;

    bool holds(StateId x) const { return marks.at(x) == Mark::sat; }

    StateSet satisfied() const
    {
        StateSet s(marks.size());
        for (std::size_t x = 0; x < marks.size(); ++x) s[x] = marks[x] == Mark::sat;
        return s;
    }

    static SatResult from_set(const StateSet& s)
    {
        SatResult r;
        r.marks.reserve(s.size());
        for (bool b : s) r.marks.push_back(b ? Mark::sat : Mark::unsat);
        return r;
    }
};

struct CheckOptions {
    /// Keep iterating after every state is decided so that weights are exact.
    bool full_weights = false;
    /// Rewrite <, <=, = into > and >= before evaluation. Ignored for
    /// partially ordered semirings, where the rewrite is unsound and every
    /// comparison is made directly on the accumulated weight.
    bool normalize = true;
};

namespace detail {

template <Semiring S>
bool early_exit(Cmp cmp)
{
    return S::flags.monotone() && (cmp == Cmp::gt || cmp == Cmp::ge);
}

inline StateSet set_and_not(const StateSet& a, const StateSet& b)
{
    StateSet s(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) s[x] = a[x] && !b[x];
    return s;
}

template <Semiring S>
void check_sets(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, const char* what)
{
    require_size(phi1.size(), a.num_states(), what);
    require_size(phi2.size(), a.num_states(), what);
}

/// Shared by the finite and infinite until: Phi2 states decided on a(x)*b(x),
/// states that can still collect weight undefined, and every other state
/// decided on the zero weight.
template <Semiring S>
SatResult<S> until_init(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, Cmp cmp,
                        const Weight<S>& p, bool zero_steps)
{
    std::size_t n = a.num_states();
    SatResult<S> r;
    r.marks.assign(n, compare_weight<S>(cmp, S::zero(), p) ? Mark::sat : Mark::unsat);
    r.weights.emplace(n, S::zero());
    for (StateId x = 0; x < n; ++x) {
        if (phi2[x]) {
            auto w = S::times(a.init().at(x), a.final().at(x));
            (*r.weights)[x] = w;
            r.marks[x] = compare_weight<S>(cmp, w, p) ? Mark::sat : Mark::unsat;
        } else if (phi1[x] && !zero_steps) {
            r.marks[x] = Mark::undefined;
        }
    }
    return r;
}

/// Value a(x)*u(x) for every still-undefined state; marks early when allowed.
template <Semiring S>
void until_decide(const Automaton<S>& a, SatResult<S>& r, const Vector<S>& u, Cmp cmp, const Weight<S>& p,
                  bool early)
{
    for (const auto& e : u.entries()) {
        auto x = e.index;
        auto w = S::times(a.init().at(x), e.value);
        (*r.weights)[x] = w;
        if (early && r.marks[x] == Mark::undefined && compare_weight<S>(cmp, w, p)) r.marks[x] = Mark::sat;
    }
}

template <Semiring S>
void until_finish(SatResult<S>& r, Cmp cmp, const Weight<S>& p)
{
    for (std::size_t x = 0; x < r.marks.size(); ++x)
        if (r.marks[x] == Mark::undefined)
            r.marks[x] = compare_weight<S>(cmp, (*r.weights)[x], p) ? Mark::sat : Mark::unsat;
}

inline bool any_undefined(const std::vector<Mark>& marks)
{
    return std::find(marks.begin(), marks.end(), Mark::undefined) != marks.end();
}

/// M[Phi1 & !Phi2, Phi2] * b[Phi2]
template <Semiring S>
Vector<S> until_first_step(const Automaton<S>& a, const StateSet& mid, const StateSet& phi2)
{
    return mat_vec(restrict(a.summed(), mid, phi2), restrict(a.final(), phi2));
}

} // namespace detail

/// [a]{cmp p}.phi for the states in `sat`.
template <Semiring S>
SatResult<S> check_diamond(const Automaton<S>& a, LabelId label, Cmp cmp, const Weight<S>& p, const StateSet& sat,
                           const CheckOptions& opts = {})
{
    if (label >= a.num_labels()) throw ModelError("unknown label index " + std::to_string(label));
    detail::require_size(sat.size(), a.num_states(), "check_diamond");
    std::size_t n = a.num_states();
    bool early = detail::early_exit<S>(cmp) && !opts.full_weights;
    SatResult<S> r;
    r.marks.assign(n, Mark::undefined);
    r.weights.emplace(n, S::zero());
    const auto& m = a.matrix(label);
    for (StateId x = 0; x < n; ++x) {
        Weight<S> sum = S::zero();
        bool first = true;
        for (const auto& e : m.row(x)) {
            if (!sat[e.index]) continue;
            sum = first ? e.value : S::plus(sum, e.value);
            first = false;
            if (early && compare_weight<S>(cmp, sum, p)) {
                r.marks[x] = Mark::sat;
                break;
            }
        }
        (*r.weights)[x] = sum;
        if (r.marks[x] == Mark::undefined) r.marks[x] = compare_weight<S>(cmp, sum, p) ? Mark::sat : Mark::unsat;
    }
    return r;
}

template <Semiring S>
SatResult<S> check_diamond(const Automaton<S>& a, std::string_view label, Cmp cmp, const Weight<S>& p,
                           const StateSet& sat, const CheckOptions& opts = {})
{
    return check_diamond(a, a.label(label), cmp, p, sat, opts);
}

/// phi1 U^t_{cmp p} phi2 for finite t.
template <Semiring S>
SatResult<S> check_until_finite(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, Cmp cmp,
                                const Weight<S>& p, std::uint64_t t, const CheckOptions& opts = {})
{
    detail::check_sets(a, phi1, phi2, "check_until_finite");
    auto r = detail::until_init(a, phi1, phi2, cmp, p, t == 0);
    if (t == 0) return r;
    bool early = detail::early_exit<S>(cmp);
    auto mid = detail::set_and_not(phi1, phi2);
    auto step = restrict(a.summed(), mid, mid);

    Vector<S> v = detail::until_first_step(a, mid, phi2);
    Vector<S> u = v;
    r.products = 1;
    detail::until_decide(a, r, u, cmp, p, early);
    for (std::uint64_t l = 2; l <= t; ++l) {
        if (v.nnz() == 0) break;
        if (early && !opts.full_weights && !detail::any_undefined(r.marks)) break;
        v = mat_vec(step, v);
        auto next = vec_add(u, v);
        ++r.products;
        bool stable = S::flags.idempotent && next == u;
        u = std::move(next);
        detail::until_decide(a, r, u, cmp, p, early);
        if (stable) break;
    }
    detail::until_finish(r, cmp, p);
    return r;
}

/// phi1 U^inf_{cmp p} phi2 through the closure matrix.
template <Semiring S>
SatResult<S> check_until_infinite(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, Cmp cmp,
                                  const Weight<S>& p)
{
    detail::check_sets(a, phi1, phi2, "check_until_infinite");
    if constexpr (S::flags.closure == ClosureStrategy::none) {
        throw UnsupportedError("unbounded until is not supported over the " + std::string(S::name) +
                               " semiring: it can only be checked for finite t");
    } else {
        auto r = detail::until_init(a, phi1, phi2, cmp, p, false);
        auto mid = detail::set_and_not(phi1, phi2);
        Vector<S> v = detail::until_first_step(a, mid, phi2);
        auto n = closure(a, phi1, phi2);
        Vector<S> u = mat_vec(n.matrix, v);
        r.products = 2;
        detail::until_decide(a, r, u, cmp, p, false);
        detail::until_finish(r, cmp, p);
        return r;
    }
}

/// Until weights a(x)*u(x) with every state accumulated to the end.
template <Semiring S>
std::vector<Weight<S>> until_weights(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, Bound t)
{
    CheckOptions full{.full_weights = true};
    auto r = t ? check_until_finite(a, phi1, phi2, Cmp::ge, S::zero(), *t, full)
               : check_until_infinite(a, phi1, phi2, Cmp::ge, S::zero());
    return std::move(*r.weights);
}

/// phi1 AU^t_{cmp p} phi2: the until plus the absence of contradicting
/// paths (escapes into !phi1 & !phi2, or survival for min(t, n) steps).
template <Semiring S>
SatResult<S> check_au(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, Cmp cmp,
                      const Weight<S>& p, Bound t, const CheckOptions& opts = {})
{
    if constexpr (!S::flags.monotone()) {
        throw UnsupportedError("AU is not supported over the " + std::string(S::name) +
                               " semiring: it needs an order-preserving semiring with zero as infimum");
    } else {
        auto r = t ? check_until_finite(a, phi1, phi2, cmp, p, *t, opts) : check_until_infinite(a, phi1, phi2, cmp, p);
        std::size_t n = a.num_states();
        // Paths from a state outside phi1 | phi2 never qualify; with t = 0 only phi2 states do.
        for (StateId x = 0; x < n; ++x)
            if (!phi2[x] && (!phi1[x] || (t && *t == 0))) r.marks[x] = Mark::unsat;
        if (t && *t == 0) return r;
        std::uint64_t m = t ? std::min<std::uint64_t>(*t, n) : n;
        auto mid = detail::set_and_not(phi1, phi2);
        StateSet escape(n);
        for (StateId x = 0; x < n; ++x) escape[x] = !phi1[x] && !phi2[x];
        auto step = restrict(a.summed(), mid, mid);

        auto kill = [&](const Vector<S>& w) {
            for (const auto& e : w.entries())
                if (r.marks[e.index] == Mark::sat) r.marks[e.index] = Mark::unsat;
        };
        auto any_sat = [&] { return std::find(r.marks.begin(), r.marks.end(), Mark::sat) != r.marks.end(); };

        Vector<S> w = mat_vec(restrict(a.summed(), mid, escape), Vector<S>::ones(escape));
        ++r.products;
        kill(w);
        for (std::uint64_t k = 1; k < m && any_sat() && w.nnz() > 0; ++k) {
            w = mat_vec(step, w);
            ++r.products;
            kill(w);
        }
        w = Vector<S>::ones(mid);
        for (std::uint64_t k = 0; k < m && w.nnz() > 0; ++k) {
            w = mat_vec(step, w);
            ++r.products;
        }
        kill(w);
        return r;
    }
}

namespace detail {

template <Semiring S>
void collect(const Formula<S>& f, std::vector<const FormulaNode<S>*>& out, std::map<const FormulaNode<S>*, bool>& seen)
{
    if (!f || seen.count(f.get())) return;
    seen[f.get()] = true;
    collect(f->lhs, out, seen);
    collect(f->rhs, out, seen);
    out.push_back(f.get());
}

template <Semiring S>
std::size_t node_leng(const FormulaNode<S>* f, std::map<const FormulaNode<S>*, std::size_t>& memo)
{
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    std::size_t l = 1;
    if (f->lhs) l = std::max(l, node_leng(f->lhs.get(), memo) + 1);
    if (f->rhs) l = std::max(l, node_leng(f->rhs.get(), memo) + 1);
    memo[f] = l;
    return l;
}

template <Semiring S>
SatResult<S> evaluate(const Automaton<S>& a, const FormulaNode<S>& f, const StateSet* l, const StateSet* r,
                      const CheckOptions& opts)
{
    std::size_t n = a.num_states();
    auto pointwise = [&](auto op) {
        StateSet s(n);
        for (std::size_t x = 0; x < n; ++x) s[x] = op(x);
        return SatResult<S>::from_set(s);
    };
    switch (f.kind) {
    case NodeKind::constant: return SatResult<S>::from_set(f.value ? all_states(n) : no_states(n));
    case NodeKind::atom: return SatResult<S>::from_set(a.atom(f.name));
    case NodeKind::negation: return pointwise([&](std::size_t x) { return !(*l)[x]; });
    case NodeKind::disjunction: return pointwise([&](std::size_t x) { return (*l)[x] || (*r)[x]; });
    case NodeKind::conjunction: return pointwise([&](std::size_t x) { return (*l)[x] && (*r)[x]; });
    case NodeKind::implication: return pointwise([&](std::size_t x) { return !(*l)[x] || (*r)[x]; });
    case NodeKind::diamond: return check_diamond(a, a.label(f.name), f.cmp, f.threshold, *l, opts);
    case NodeKind::until:
        if (f.bound) return check_until_finite(a, *l, *r, f.cmp, f.threshold, *f.bound, opts);
        return check_until_infinite(a, *l, *r, f.cmp, f.threshold);
    case NodeKind::all_until: return check_au(a, *l, *r, f.cmp, f.threshold, f.bound, opts);
    }
    throw Error("unknown formula node");
}

} // namespace detail

/// Evaluates phi bottom-up by formula length. Weights are reported when the
/// root of phi is a diamond or path operator.
template <Semiring S>
SatResult<S> check(const Automaton<S>& a, const Formula<S>& phi, const CheckOptions& opts = {})
{
    Formula<S> f = opts.normalize && S::flags.ordered ? normalize_cmp(phi) : phi;
    std::vector<const FormulaNode<S>*> nodes;
    std::map<const FormulaNode<S>*, bool> seen;
    detail::collect(f, nodes, seen);
    std::map<const FormulaNode<S>*, std::size_t> lengths;
    std::stable_sort(nodes.begin(), nodes.end(), [&](auto x, auto y) {
        return detail::node_leng(x, lengths) < detail::node_leng(y, lengths);
    });

    std::map<const FormulaNode<S>*, StateSet> sets;
    SatResult<S> root;
    std::size_t products = 0;
    for (auto node : nodes) {
        const StateSet* l = node->lhs ? &sets.at(node->lhs.get()) : nullptr;
        const StateSet* r = node->rhs ? &sets.at(node->rhs.get()) : nullptr;
        auto res = detail::evaluate(a, *node, l, r, opts);
        products += res.products;
        sets[node] = res.satisfied();
        if (node == f.get()) root = std::move(res);
    }
    root.products = products;

    // A rewritten root (e.g. <= became a negation) carries no weights; take
    // them from the generated operator, which is the longest node of its kind.
    bool quantitative = phi->kind == NodeKind::diamond || phi->kind == NodeKind::until ||
                        phi->kind == NodeKind::all_until;
    if (quantitative && !root.weights && opts.full_weights) {
        NodeKind base = phi->kind == NodeKind::diamond ? NodeKind::diamond : NodeKind::until;
        const FormulaNode<S>* op = nullptr;
        for (auto node : nodes)
            if (node->kind == base) op = node;
        if (op) {
            const StateSet* l = &sets.at(op->lhs.get());
            const StateSet* r = op->rhs ? &sets.at(op->rhs.get()) : nullptr;
            root.weights = std::move(detail::evaluate(a, *op, l, r, opts).weights);
        }
    }
    return root;
}

} // namespace wamc

#endif // WAMC_CHECKER_HPP
