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

#ifndef WAMC_BISIM_HPP
#define WAMC_BISIM_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "wamc/automaton.hpp"
#include "wamc/errors.hpp"
#include "wamc/linalg.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

inline constexpr double default_bisim_tolerance = 1e-9;

/// Disjoint cover of the state set; class ids are dense and ordered by
/// their lowest member.
class Partition {
public:
    Partition() = default;

    /// Renumbers arbitrary ids so that classes appear in order of their lowest member.
    static Partition from_ids(const std::vector<std::size_t>& ids)
    {
        Partition p;
        std::vector<std::size_t> renumber;
        std::vector<std::size_t> seen_ids;
        p.class_of_.resize(ids.size());
        for (std::size_t x = 0; x < ids.size(); ++x) {
            auto it = std::find(seen_ids.begin(), seen_ids.end(), ids[x]);
            std::size_t c;
            if (it == seen_ids.end()) {
                c = seen_ids.size();
                seen_ids.push_back(ids[x]);
                p.classes_.emplace_back();
            } else {
                c = static_cast<std::size_t>(it - seen_ids.begin());
            }
            p.class_of_[x] = c;
            p.classes_[c].push_back(x);
        }
        return p;
    }

    static Partition discrete(std::size_t n)
    {
        std::vector<std::size_t> ids(n);
        for (std::size_t x = 0; x < n; ++x) ids[x] = x;
        return from_ids(ids);
    }

    std::size_t num_states() const noexcept { return class_of_.size(); }
    std::size_t size() const noexcept { return classes_.size(); }
    std::size_t class_of(StateId x) const { return class_of_.at(x); }
    const std::vector<StateId>& members(std::size_t c) const { return classes_.at(c); }
    const std::vector<std::vector<StateId>>& classes() const noexcept { return classes_; }
    StateId representative(std::size_t c) const { return classes_.at(c).front(); }

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::size_t> class_of_;
    std::vector<std::vector<StateId>> classes_;
};

namespace detail {

template <Semiring S>
struct Signature {
    struct Item {
        LabelId label;
        std::size_t cls;
        Weight<S> weight;
    };
    std::vector<Item> items;
};

/// M_a(x, C) for every label a and class C with non-zero mass.
template <Semiring S>
Signature<S> signature(const Automaton<S>& a, const Partition& p, StateId x)
{
    Signature<S> sig;
    for (LabelId l = 0; l < a.num_labels(); ++l) {
        std::vector<std::pair<std::size_t, Weight<S>>> mass;
        for (const auto& e : a.matrix(l).row(x)) {
            auto c = p.class_of(e.index);
            auto it = std::find_if(mass.begin(), mass.end(), [&](const auto& m) { return m.first == c; });
            if (it == mass.end())
                mass.emplace_back(c, e.value);
            else
                it->second = S::plus(it->second, e.value);
        }
        std::sort(mass.begin(), mass.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        for (auto& [c, w] : mass)
            if (!is_zero<S>(w)) sig.items.push_back({l, c, w});
    }
    return sig;
}

template <Semiring S>
bool same_signature(const Signature<S>& u, const Signature<S>& v, double tol)
{
    if (u.items.size() != v.items.size()) return false;
    for (std::size_t i = 0; i < u.items.size(); ++i) {
        const auto& a = u.items[i];
        const auto& b = v.items[i];
        if (a.label != b.label || a.cls != b.cls || !S::near(a.weight, b.weight, tol)) return false;
    }
    return true;
}

template <Semiring S>
bool same_local(const Automaton<S>& a, StateId x, StateId y, double tol)
{
    return a.ap(x) == a.ap(y) && S::near(a.init().at(x), a.init().at(y), tol) &&
           S::near(a.final().at(x), a.final().at(y), tol);
}

/// Splits every class of p by `same`, comparing each member with the
/// leader of the groups formed so far.
template <typename Same>
Partition split(const Partition& p, Same same)
{
    std::vector<std::size_t> ids(p.num_states());
    std::size_t next = 0;
    for (const auto& members : p.classes()) {
        std::vector<StateId> leaders;
        std::vector<std::size_t> leader_ids;
        for (auto x : members) {
            std::size_t i = 0;
            while (i < leaders.size() && !same(leaders[i], x)) ++i;
            if (i == leaders.size()) {
                leaders.push_back(x);
                leader_ids.push_back(next++);
            }
            ids[x] = leader_ids[i];
        }
    }
    return Partition::from_ids(ids);
}

} // namespace detail

/// Coarsest partition whose classes agree on AP, initial and final weight
/// and on the per-label mass into every class.
template <Semiring S>
Partition largest_bisimulation(const Automaton<S>& a, double tol = default_bisim_tolerance)
{
    std::size_t n = a.num_states();
    Partition p = detail::split(Partition::from_ids(std::vector<std::size_t>(n, 0)),
                                [&](StateId x, StateId y) { return detail::same_local(a, x, y, tol); });
    for (;;) {
        std::vector<detail::Signature<S>> sigs;
        sigs.reserve(n);
        for (StateId x = 0; x < n; ++x) sigs.push_back(detail::signature(a, p, x));
        Partition next =
            detail::split(p, [&](StateId x, StateId y) { return detail::same_signature<S>(sigs[x], sigs[y], tol); });
        if (next.size() == p.size()) return next;
        p = std::move(next);
    }
}

/// True iff every class agrees with its representative on all four conditions.
template <Semiring S>
bool is_bisimulation(const Automaton<S>& a, const Partition& p, double tol = default_bisim_tolerance)
{
    if (p.num_states() != a.num_states()) return false;
    for (const auto& members : p.classes()) {
        auto rep = members.front();
        auto rep_sig = detail::signature(a, p, rep);
        for (auto x : members) {
            if (!detail::same_local(a, rep, x, tol)) return false;
            if (!detail::same_signature<S>(rep_sig, detail::signature(a, p, x), tol)) return false;
        }
    }
    return true;
}

/// One state per class, named after and weighted like its representative.
template <Semiring S>
Automaton<S> quotient(const Automaton<S>& a, const Partition& p, double tol = default_bisim_tolerance)
{
    if (!is_bisimulation(a, p, tol)) throw ModelError("quotient: partition is not a bisimulation");
    std::size_t k = p.size();
    std::vector<std::string> names;
    std::vector<PropSet> ap;
    std::vector<Entry<S>> init, fin;
    for (std::size_t c = 0; c < k; ++c) {
        auto rep = p.representative(c);
        names.push_back(a.state_name(rep));
        ap.push_back(a.ap(rep));
        init.push_back({c, a.init().at(rep)});
        fin.push_back({c, a.final().at(rep)});
    }
    std::vector<Matrix<S>> matrices;
    for (LabelId l = 0; l < a.num_labels(); ++l) {
        std::vector<typename Matrix<S>::Row> rows(k);
        for (std::size_t c = 0; c < k; ++c)
            for (const auto& item : detail::signature(a, p, p.representative(c)).items)
                if (item.label == l) rows[c].push_back({item.cls, item.weight});
        matrices.emplace_back(k, std::move(rows));
    }
    std::vector<std::string> alphabet;
    for (LabelId l = 0; l < a.num_labels(); ++l) alphabet.push_back(a.label_name(l));
    return Automaton<S>(std::move(names), std::move(alphabet), std::move(matrices), Vector<S>(k, std::move(init)),
                        Vector<S>(k, std::move(fin)), std::move(ap));
}

/// Block-diagonal union. Both automata need the same label set; the
/// second automaton's labels are matched by name. State names that clash
/// are disambiguated by prefixing every state with 1_ or 2_.
template <Semiring S>
Automaton<S> union_automata(const Automaton<S>& a1, const Automaton<S>& a2)
{
    std::set<std::string> l1, l2;
    for (LabelId l = 0; l < a1.num_labels(); ++l) l1.insert(a1.label_name(l));
    for (LabelId l = 0; l < a2.num_labels(); ++l) l2.insert(a2.label_name(l));
    if (l1 != l2) throw ModelError("union: automata have different alphabets");

    std::size_t n1 = a1.num_states(), n2 = a2.num_states(), n = n1 + n2;
    bool clash = false;
    for (StateId x = 0; x < n2; ++x) clash = clash || a1.find_state(a2.state_name(x)).has_value();
    std::vector<std::string> names;
    for (StateId x = 0; x < n1; ++x) names.push_back((clash ? "1_" : "") + a1.state_name(x));
    for (StateId x = 0; x < n2; ++x) names.push_back((clash ? "2_" : "") + a2.state_name(x));

    std::vector<PropSet> ap;
    std::vector<Entry<S>> init, fin;
    for (StateId x = 0; x < n1; ++x) ap.push_back(a1.ap(x));
    for (StateId x = 0; x < n2; ++x) ap.push_back(a2.ap(x));
    for (const auto& e : a1.init().entries()) init.push_back(e);
    for (const auto& e : a2.init().entries()) init.push_back({e.index + n1, e.value});
    for (const auto& e : a1.final().entries()) fin.push_back(e);
    for (const auto& e : a2.final().entries()) fin.push_back({e.index + n1, e.value});

    std::vector<std::string> alphabet;
    std::vector<Matrix<S>> matrices;
    for (LabelId l = 0; l < a1.num_labels(); ++l) {
        alphabet.push_back(a1.label_name(l));
        const auto& m1 = a1.matrix(l);
        const auto& m2 = a2.matrix(a2.label(a1.label_name(l)));
        std::vector<typename Matrix<S>::Row> rows(n);
        for (StateId x = 0; x < n1; ++x) rows[x].assign(m1.row(x).begin(), m1.row(x).end());
        for (StateId x = 0; x < n2; ++x)
            for (const auto& e : m2.row(x)) rows[x + n1].push_back({e.index + n1, e.value});
        matrices.emplace_back(n, std::move(rows));
    }
    return Automaton<S>(std::move(names), std::move(alphabet), std::move(matrices), Vector<S>(n, std::move(init)),
                        Vector<S>(n, std::move(fin)), std::move(ap));
}

/// Bisimulation equivalence: on the coarsest bisimulation of the union,
/// every class carries the same initial and final mass from both sides.
template <Semiring S>
bool automata_equivalent(const Automaton<S>& a1, const Automaton<S>& a2, double tol = default_bisim_tolerance)
{
    auto u = union_automata(a1, a2);
    auto p = largest_bisimulation(u, tol);
    std::size_t n1 = a1.num_states();
    for (const auto& members : p.classes()) {
        Weight<S> i1 = S::zero(), i2 = S::zero(), f1 = S::zero(), f2 = S::zero();
        for (auto x : members) {
            auto& i = x < n1 ? i1 : i2;
            auto& f = x < n1 ? f1 : f2;
            i = S::plus(i, u.init().at(x));
            f = S::plus(f, u.final().at(x));
        }
        if (!S::near(i1, i2, tol) || !S::near(f1, f2, tol)) return false;
    }
    return true;
}

/// "class: C0 = L L'" per class.
template <Semiring S>
std::string class_report(const Automaton<S>& a, const Partition& p)
{
    std::string out;
    for (std::size_t c = 0; c < p.size(); ++c) {
        out += "class: C" + std::to_string(c) + " =";
        for (auto x : p.members(c)) out += " " + a.state_name(x);
        out += "\n";
    }
    return out;
}

} // namespace wamc

#endif // WAMC_BISIM_HPP
