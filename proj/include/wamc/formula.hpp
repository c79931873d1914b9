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

#ifndef WAMC_FORMULA_HPP
#define WAMC_FORMULA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "wamc/semiring.hpp"

namespace wamc {

/// Step bound of a path operator; empty means unbounded.
using Bound = std::optional<std::uint64_t>;
inline constexpr Bound unbounded = std::nullopt;

enum class NodeKind { constant, atom, negation, disjunction, conjunction, implication, diamond, until, all_until };

template <Semiring S>
struct FormulaNode;

/// Immutable CTL$ formula tree; subtrees may be shared.
template <Semiring S>
using Formula = std::shared_ptr<const FormulaNode<S>>;

template <Semiring S>
struct FormulaNode {
    NodeKind kind = NodeKind::constant;
    bool value = false;   // constant
    std::string name;     // atom name, or diamond label
    Cmp cmp = Cmp::ge;    // diamond, until, all_until
    Weight<S> threshold = S::zero();
    Bound bound = unbounded; // until, all_until
    Formula<S> lhs;          // sole operand of unary nodes
    Formula<S> rhs;
};

/// Constructors for formula nodes.
namespace fml {

template <Semiring S>
Formula<S> constant(bool value)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = NodeKind::constant;
    n->value = value;
    return n;
}

template <Semiring S>
Formula<S> atom(std::string name)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = NodeKind::atom;
    n->name = std::move(name);
    return n;
}

template <Semiring S>
Formula<S> negation(Formula<S> f)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = NodeKind::negation;
    n->lhs = std::move(f);
    return n;
}

template <Semiring S>
Formula<S> binary(NodeKind kind, Formula<S> a, Formula<S> b)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = kind;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

template <Semiring S>
Formula<S> disjunction(Formula<S> a, Formula<S> b)
{
    return binary<S>(NodeKind::disjunction, std::move(a), std::move(b));
}

template <Semiring S>
Formula<S> conjunction(Formula<S> a, Formula<S> b)
{
    return binary<S>(NodeKind::conjunction, std::move(a), std::move(b));
}

template <Semiring S>
Formula<S> implication(Formula<S> a, Formula<S> b)
{
    return binary<S>(NodeKind::implication, std::move(a), std::move(b));
}

/// [label]_{cmp p}. f
template <Semiring S>
Formula<S> diamond(std::string label, Cmp cmp, Weight<S> p, Formula<S> f)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = NodeKind::diamond;
    n->name = std::move(label);
    n->cmp = cmp;
    n->threshold = std::move(p);
    n->lhs = std::move(f);
    return n;
}

template <Semiring S>
Formula<S> path(NodeKind kind, Formula<S> f1, Cmp cmp, Weight<S> p, Bound bound, Formula<S> f2)
{
    auto n = std::make_shared<FormulaNode<S>>();
    n->kind = kind;
    n->cmp = cmp;
    n->threshold = std::move(p);
    n->bound = bound;
    n->lhs = std::move(f1);
    n->rhs = std::move(f2);
    return n;
}

/// f1 U^bound_{cmp p} f2
template <Semiring S>
Formula<S> until(Formula<S> f1, Cmp cmp, Weight<S> p, Bound bound, Formula<S> f2)
{
    return path<S>(NodeKind::until, std::move(f1), cmp, std::move(p), bound, std::move(f2));
}

/// f1 AU^bound_{cmp p} f2
template <Semiring S>
Formula<S> all_until(Formula<S> f1, Cmp cmp, Weight<S> p, Bound bound, Formula<S> f2)
{
    return path<S>(NodeKind::all_until, std::move(f1), cmp, std::move(p), bound, std::move(f2));
}

} // namespace fml

inline bool is_unary(NodeKind k) noexcept { return k == NodeKind::negation || k == NodeKind::diamond; }

inline bool is_binary(NodeKind k) noexcept
{
    return k == NodeKind::disjunction || k == NodeKind::conjunction || k == NodeKind::implication ||
           k == NodeKind::until || k == NodeKind::all_until;
}

/// Structural equality; weights compared exactly.
template <Semiring S>
bool same_formula(const Formula<S>& a, const Formula<S>& b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case NodeKind::constant: return a->value == b->value;
    case NodeKind::atom: return a->name == b->name;
    case NodeKind::negation: return same_formula(a->lhs, b->lhs);
    case NodeKind::disjunction:
    case NodeKind::conjunction:
    case NodeKind::implication: return same_formula(a->lhs, b->lhs) && same_formula(a->rhs, b->rhs);
    case NodeKind::diamond:
        return a->name == b->name && a->cmp == b->cmp && a->threshold == b->threshold && same_formula(a->lhs, b->lhs);
    case NodeKind::until:
    case NodeKind::all_until:
        return a->cmp == b->cmp && a->threshold == b->threshold && a->bound == b->bound &&
               same_formula(a->lhs, b->lhs) && same_formula(a->rhs, b->rhs);
    }
    return false;
}

/// Inductive formula length: atoms 1, negation and diamond add one,
/// binary operators take the longer operand plus one.
template <Semiring S>
std::size_t leng(const Formula<S>& f)
{
    switch (f->kind) {
    case NodeKind::constant:
    case NodeKind::atom: return 1;
    case NodeKind::negation:
    case NodeKind::diamond: return leng(f->lhs) + 1;
    default: return std::max(leng(f->lhs), leng(f->rhs)) + 1;
    }
}

inline std::string bound_to_string(Bound b) { return b ? std::to_string(*b) : "inf"; }

/// Concrete syntax; binary operators are fully parenthesized so that the
/// text parses back to the same tree.
template <Semiring S>
std::string to_string(const Formula<S>& f)
{
    switch (f->kind) {
    case NodeKind::constant: return f->value ? "true" : "false";
    case NodeKind::atom: return f->name;
    case NodeKind::negation: return "!" + to_string(f->lhs);
    case NodeKind::disjunction: return "(" + to_string(f->lhs) + " | " + to_string(f->rhs) + ")";
    case NodeKind::conjunction: return "(" + to_string(f->lhs) + " & " + to_string(f->rhs) + ")";
    case NodeKind::implication: return "(" + to_string(f->lhs) + " -> " + to_string(f->rhs) + ")";
    case NodeKind::diamond:
        return "[" + f->name + "]{" + std::string(to_string(f->cmp)) + S::format(f->threshold) + "}." +
               to_string(f->lhs);
    case NodeKind::until:
    case NodeKind::all_until:
        return "(" + to_string(f->lhs) + (f->kind == NodeKind::until ? " U{" : " AU{") +
               std::string(to_string(f->cmp)) + S::format(f->threshold) + ", " + bound_to_string(f->bound) + "} " +
               to_string(f->rhs) + ")";
    }
    return "?";
}

/// Rewrite every threshold comparison into {>, >=}:
///   op_<= = !op_>,  op_= = op_>= & !op_>,  op_< = !(op_= | op_>).
/// For AU the rewrite applies to the embedded U; the all-paths condition
/// is kept as AU_{>= 0}, which holds exactly when that condition does.
template <Semiring S>
Formula<S> normalize_cmp(const Formula<S>& f)
{
    using namespace fml;
    switch (f->kind) {
    case NodeKind::constant:
    case NodeKind::atom: return f;
    case NodeKind::negation: return negation<S>(normalize_cmp(f->lhs));
    case NodeKind::disjunction:
    case NodeKind::conjunction:
    case NodeKind::implication: return binary<S>(f->kind, normalize_cmp(f->lhs), normalize_cmp(f->rhs));
    default: break;
    }

    Formula<S> a = normalize_cmp(f->lhs);
    Formula<S> b = f->rhs ? normalize_cmp(f->rhs) : nullptr;
    const auto& p = f->threshold;
    auto make = [&](NodeKind kind, Cmp cmp, const Weight<S>& threshold) -> Formula<S> {
        if (kind == NodeKind::diamond) return diamond<S>(f->name, cmp, threshold, a);
        return path<S>(kind, a, cmp, threshold, f->bound, b);
    };
    // Comparison part, always on the existential operator for path formulas.
    NodeKind base = f->kind == NodeKind::all_until ? NodeKind::until : f->kind;
    auto equal = [&] { return conjunction<S>(make(base, Cmp::ge, p), negation<S>(make(base, Cmp::gt, p))); };

    if (f->cmp == Cmp::ge || f->cmp == Cmp::gt) return make(f->kind, f->cmp, p);

    Formula<S> cmp_part;
    switch (f->cmp) {
    case Cmp::le: cmp_part = negation<S>(make(base, Cmp::gt, p)); break;
    case Cmp::eq: cmp_part = equal(); break;
    case Cmp::lt: cmp_part = negation<S>(disjunction<S>(equal(), make(base, Cmp::gt, p))); break;
    default: break;
    }
    if (f->kind != NodeKind::all_until) return cmp_part;
    return conjunction<S>(cmp_part, make(NodeKind::all_until, Cmp::ge, S::zero()));
}

} // namespace wamc

#endif // WAMC_FORMULA_HPP
