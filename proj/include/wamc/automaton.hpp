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

#ifndef WAMC_AUTOMATON_HPP
#define WAMC_AUTOMATON_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "wamc/errors.hpp"
#include "wamc/linalg.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

using StateId = std::size_t;
using LabelId = std::size_t;
using PropSet = std::set<std::string, std::less<>>;

/// Words that cannot name an atomic proposition because the formula
/// grammar gives them another meaning.
inline bool is_reserved_word(std::string_view s) noexcept
{
    static constexpr std::string_view words[] = {"true", "false", "U",  "AU", "AX", "UX",
                                                 "AF",   "UF",    "EX", "EF", "EG", "AG"};
    return std::find(std::begin(words), std::end(words), s) != std::end(words);
}

inline bool is_identifier(std::string_view s) noexcept
{
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(s.front())) return false;
    return std::all_of(s.begin() + 1, s.end(), tail);
}

/// State and label names: any run of printable characters without
/// whitespace, '=', ',' or '#'.
inline bool is_valid_name(std::string_view s) noexcept
{
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](char c) {
        return c <= ' ' || c == '=' || c == ',' || c == '#' || c == 127;
    });
}

/// Alternating state/label sequence; labels[i] leads from states[i] to states[i+1].
struct Path {
    std::vector<StateId> states;
    std::vector<LabelId> labels;

    std::size_t length() const noexcept { return labels.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Finite weighted automaton (S, alpha, T, beta) over semiring S with
/// atomic-proposition labeling. Immutable once constructed.
template <Semiring S>
class Automaton {
public:
    using value_type = Weight<S>;

    Automaton(std::vector<std::string> states, std::vector<std::string> alphabet, std::vector<Matrix<S>> matrices,
              Vector<S> init, Vector<S> final, std::vector<PropSet> ap)
        : states_(std::move(states)),
          alphabet_(std::move(alphabet)),
          matrices_(std::move(matrices)),
          init_(std::move(init)),
          final_(std::move(final)),
          ap_(std::move(ap)),
          summed_(std::make_shared<SummedCache>())
    {
        validate();
    }

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_labels() const noexcept { return alphabet_.size(); }
    const std::vector<std::string>& state_names() const noexcept { return states_; }
    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    const std::string& state_name(StateId x) const { return states_.at(x); }
    const std::string& label_name(LabelId a) const { return alphabet_.at(a); }

    std::optional<StateId> find_state(std::string_view name) const
    {
        auto it = state_index_.find(name);
        if (it == state_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<LabelId> find_label(std::string_view name) const
    {
        auto it = label_index_.find(name);
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    StateId state(std::string_view name) const
    {
        if (auto x = find_state(name)) return *x;
        throw ModelError("unknown state '" + std::string(name) + "'");
    }

    LabelId label(std::string_view name) const
    {
        if (auto a = find_label(name)) return *a;
        throw ModelError("unknown label '" + std::string(name) + "'");
    }

    /// M_a with M_a(x,y) = T(x,a,y).
    const Matrix<S>& matrix(LabelId a) const { return matrices_.at(a); }
    const std::vector<Matrix<S>>& matrices() const noexcept { return matrices_; }

    /// M = sum over all labels of M_a; computed on first use.
    const Matrix<S>& summed() const
    {
        std::call_once(summed_->once, [this] {
            Matrix<S> m(num_states());
            for (const auto& ma : matrices_) m = mat_add(m, ma);
            summed_->value = std::move(m);
        });
        return summed_->value;
    }

    value_type transition(StateId x, LabelId a, StateId y) const { return matrices_.at(a).at(x, y); }

    /// Row vector a with a(x) = alpha(x).
    const Vector<S>& init() const noexcept { return init_; }
    /// Column vector b with b(x) = beta(x).
    const Vector<S>& final() const noexcept { return final_; }

    const PropSet& ap(StateId x) const { return ap_.at(x); }
    const std::vector<PropSet>& ap() const noexcept { return ap_; }

    /// States where proposition `name` holds; `true` and `false` are built in.
    StateSet atom(std::string_view name) const
    {
        if (name == "true") return all_states(num_states());
        if (name == "false") return no_states(num_states());
        StateSet set(num_states(), false);
        for (std::size_t x = 0; x < num_states(); ++x) set[x] = ap_[x].count(name) > 0;
        return set;
    }

    friend bool operator==(const Automaton& a, const Automaton& b)
    {
        return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ && a.matrices_ == b.matrices_ &&
               a.init_ == b.init_ && a.final_ == b.final_ && a.ap_ == b.ap_;
    }

private:
    struct SummedCache {
        std::once_flag once;
        Matrix<S> value;
    };

    void validate()
    {
        std::size_t n = states_.size();
        for (StateId x = 0; x < n; ++x) {
            if (!is_valid_name(states_[x])) throw ModelError("invalid state name '" + states_[x] + "'");
            if (!state_index_.emplace(states_[x], x).second)
                throw ModelError("duplicate state '" + states_[x] + "'");
        }
        for (LabelId a = 0; a < alphabet_.size(); ++a) {
            if (!is_valid_name(alphabet_[a])) throw ModelError("invalid label name '" + alphabet_[a] + "'");
            if (!label_index_.emplace(alphabet_[a], a).second)
                throw ModelError("duplicate label '" + alphabet_[a] + "'");
        }
        if (matrices_.size() != alphabet_.size())
            throw ModelError("expected one matrix per label (" + std::to_string(alphabet_.size()) + "), got " +
                             std::to_string(matrices_.size()));
        for (const auto& m : matrices_) {
            if (m.size() != n) throw DimensionError("transition matrix is not " + std::to_string(n) + "x" + std::to_string(n));
            for (std::size_t x = 0; x < n; ++x)
                for (const auto& e : m.row(x))
                    if (!S::valid(e.value)) throw ModelError("invalid transition weight " + S::format(e.value));
        }
        if (init_.size() != n || final_.size() != n) throw DimensionError("initial/final vector size mismatch");
        for (const auto* v : {&init_, &final_})
            for (const auto& e : v->entries())
                if (!S::valid(e.value)) throw ModelError("invalid initial/final weight " + S::format(e.value));
        if (ap_.size() != n) throw DimensionError("proposition labeling size mismatch");
        for (const auto& props : ap_)
            for (const auto& p : props)
                if (!is_identifier(p) || is_reserved_word(p))
                    throw ModelError("invalid atomic proposition '" + p + "'");
    }

    std::vector<std::string> states_;
    std::vector<std::string> alphabet_;
    std::vector<Matrix<S>> matrices_;
    Vector<S> init_;
    Vector<S> final_;
    std::vector<PropSet> ap_;
    std::map<std::string, StateId, std::less<>> state_index_;
    std::map<std::string, LabelId, std::less<>> label_index_;
    std::shared_ptr<SummedCache> summed_;
};

/// Incremental construction of an automaton by name.
template <Semiring S>
class AutomatonBuilder {
public:
    StateId add_state(std::string name, PropSet props = {})
    {
        if (!is_valid_name(name)) throw ModelError("invalid state name '" + name + "'");
        if (index_of(states_, name)) throw ModelError("duplicate state '" + name + "'");
        states_.push_back(std::move(name));
        ap_.push_back(std::move(props));
        return states_.size() - 1;
    }

    LabelId add_label(std::string name)
    {
        if (!is_valid_name(name)) throw ModelError("invalid label name '" + name + "'");
        if (index_of(alphabet_, name)) throw ModelError("duplicate label '" + name + "'");
        alphabet_.push_back(std::move(name));
        return alphabet_.size() - 1;
    }

    void add_prop(std::string_view state, std::string prop) { ap_[require(states_, state, "state")].insert(std::move(prop)); }

    /// At most one transition per (x, a, y).
    void add_transition(std::string_view from, std::string_view label, std::string_view to, Weight<S> w)
    {
        auto key = std::make_tuple(require(states_, from, "state"), require(alphabet_, label, "label"),
                                   require(states_, to, "state"));
        if (!transitions_.emplace(key, w).second)
            throw ModelError("duplicate transition " + std::string(from) + " " + std::string(label) + " " +
                             std::string(to));
    }

    void set_init(std::string_view state, Weight<S> w) { init_[require(states_, state, "state")] = w; }
    void set_final(std::string_view state, Weight<S> w) { final_[require(states_, state, "state")] = w; }

    void set_all_init(Weight<S> w)
    {
        for (std::size_t x = 0; x < states_.size(); ++x) init_[x] = w;
    }
    void set_all_final(Weight<S> w)
    {
        for (std::size_t x = 0; x < states_.size(); ++x) final_[x] = w;
    }

    Automaton<S> build() const
    {
        std::size_t n = states_.size();
        std::vector<std::vector<typename Matrix<S>::Triplet>> triplets(alphabet_.size());
        for (const auto& [key, w] : transitions_) {
            auto [x, a, y] = key;
            triplets[a].push_back({x, y, w});
        }
        std::vector<Matrix<S>> matrices;
        for (const auto& t : triplets) matrices.push_back(Matrix<S>::from_triplets(n, t));
        auto to_vector = [n](const std::map<StateId, Weight<S>>& m) {
            std::vector<Entry<S>> entries;
            for (const auto& [x, w] : m) entries.push_back({x, w});
            return Vector<S>(n, std::move(entries));
        };
        return Automaton<S>(states_, alphabet_, std::move(matrices), to_vector(init_), to_vector(final_), ap_);
    }

private:
    static std::optional<std::size_t> index_of(const std::vector<std::string>& names, std::string_view name)
    {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) return std::nullopt;
        return static_cast<std::size_t>(it - names.begin());
    }

    static std::size_t require(const std::vector<std::string>& names, std::string_view name, const char* what)
    {
        if (auto i = index_of(names, name)) return *i;
        throw ModelError(std::string("unknown ") + what + " '" + std::string(name) + "'");
    }

    std::vector<std::string> states_;
    std::vector<std::string> alphabet_;
    std::vector<PropSet> ap_;
    std::map<std::tuple<StateId, LabelId, StateId>, Weight<S>> transitions_;
    std::map<StateId, Weight<S>> init_;
    std::map<StateId, Weight<S>> final_;
};

/// ce(pi) = alpha(pi_0) * prod T(pi_i, a_{i+1}, pi_{i+1}) * beta(pi_last).
template <Semiring S>
Weight<S> path_weight(const Automaton<S>& a, const Path& path)
{
    if (path.states.empty() || path.states.size() != path.labels.size() + 1)
        throw ModelError("malformed path: need one more state than labels");
    for (auto x : path.states)
        if (x >= a.num_states()) throw ModelError("path state out of range");
    for (auto l : path.labels)
        if (l >= a.num_labels()) throw ModelError("path label out of range");

    Weight<S> w = a.init().at(path.states.front());
    for (std::size_t i = 0; i < path.labels.size(); ++i) {
        auto t = a.transition(path.states[i], path.labels[i], path.states[i + 1]);
        if (is_zero<S>(t))
            throw ModelError("no transition " + a.state_name(path.states[i]) + " -" + a.label_name(path.labels[i]) +
                             "-> " + a.state_name(path.states[i + 1]));
        w = S::times(w, t);
    }
    return S::times(w, a.final().at(path.states.back()));
}

namespace detail {

template <Semiring S>
Vector<S> start_vector(const Automaton<S>& a, std::optional<StateId> from)
{
    if (!from) return a.init();
    if (*from >= a.num_states()) throw ModelError("start state out of range");
    return Vector<S>(a.num_states(), {{*from, a.init().at(*from)}});
}

} // namespace detail

/// d_seq = a * prod M_{a_i}; row vector of weights of reaching each state.
template <Semiring S>
Vector<S> reach_vector(const Automaton<S>& a, std::span<const LabelId> seq, std::optional<StateId> from = {})
{
    Vector<S> d = detail::start_vector(a, from);
    for (auto l : seq) {
        if (l >= a.num_labels()) throw ModelError("label out of range");
        d = vec_mat(d, a.matrix(l));
    }
    return d;
}

/// ca(seq) = a * prod M_{a_i} * b, or pinned at `from`:
/// ca_x(seq) = a(x) e_x * prod M_{a_i} * b.
template <Semiring S>
Weight<S> seq_weight(const Automaton<S>& a, std::span<const LabelId> seq, std::optional<StateId> from = {})
{
    return dot(reach_vector(a, seq, from), a.final());
}

/// ca(*^m) = a * M^m * b with M the label-summed matrix.
template <Semiring S>
Weight<S> any_label_weight(const Automaton<S>& a, std::uint64_t m, std::optional<StateId> from = {})
{
    Vector<S> d = detail::start_vector(a, from);
    for (std::uint64_t k = 0; k < m; ++k) d = vec_mat(d, a.summed());
    return dot(d, a.final());
}

template <Semiring S>
std::vector<LabelId> resolve_labels(const Automaton<S>& a, std::span<const std::string> names)
{
    std::vector<LabelId> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(a.label(n));
    return out;
}

inline constexpr std::size_t max_enumeration_length = 12;

/// Every path of length <= max_len starting at `from`, including the empty
/// path. Paths are listed depth first, labels and targets in index order.
template <Semiring S>
std::vector<Path> enumerate_paths(const Automaton<S>& a, StateId from, std::size_t max_len)
{
    if (max_len > max_enumeration_length)
        throw ModelError("path enumeration bound " + std::to_string(max_len) + " exceeds " +
                         std::to_string(max_enumeration_length));
    if (from >= a.num_states()) throw ModelError("start state out of range");

    std::vector<Path> out;
    Path current{{from}, {}};
    auto visit = [&](auto&& self) -> void {
        out.push_back(current);
        if (current.length() == max_len) return;
        StateId x = current.states.back();
        for (LabelId l = 0; l < a.num_labels(); ++l) {
            for (const auto& e : a.matrix(l).row(x)) {
                current.labels.push_back(l);
                current.states.push_back(e.index);
                self(self);
                current.labels.pop_back();
                current.states.pop_back();
            }
        }
    };
    visit(visit);
    return out;
}

} // namespace wamc

#endif // WAMC_AUTOMATON_HPP
