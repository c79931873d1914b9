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

#ifndef WAMC_AUTOMATON_IO_HPP
#define WAMC_AUTOMATON_IO_HPP

#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wamc/automaton.hpp"
#include "wamc/errors.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

/// An automaton over whichever semiring its file declares.
using AnyAutomaton = std::variant<Automaton<BooleanSemiring>, Automaton<ProbSemiring>, Automaton<MaxPlusSemiring>,
                                  Automaton<MinPlusSemiring>, Automaton<MaxMinSemiring>,
                                  Automaton<ExpectationSemiring>>;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

struct ModelLine {
    std::size_t number;
    std::string_view key;
    std::string_view body;
};

/// Non-blank, comment-stripped `key: body` lines.
inline std::vector<ModelLine> model_lines(std::string_view text)
{
    std::vector<ModelLine> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", number);
        out.push_back({number, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
    }
    return out;
}

template <Semiring S>
Automaton<S> build_automaton(const std::vector<ModelLine>& lines)
{
    AutomatonBuilder<S> builder;
    for (const auto& line : lines) {
        try {
            if (line.key == "semiring") {
                continue;
            } else if (line.key == "states") {
                for (auto name : split_ws(line.body)) {
                    if (!is_valid_name(name)) throw ParseError("invalid state name '" + std::string(name) + "'", line.number);
                    builder.add_state(std::string(name));
                }
            } else if (line.key == "alphabet") {
                for (auto name : split_ws(line.body)) {
                    if (!is_valid_name(name)) throw ParseError("invalid label name '" + std::string(name) + "'", line.number);
                    builder.add_label(std::string(name));
                }
            } else if (line.key == "init" || line.key == "final") {
                bool init = line.key == "init";
                auto pairs = split_ws(line.body);
                if (pairs.empty()) throw ParseError("expected name=weight pairs", line.number);
                for (auto pair : pairs) {
                    auto eq = pair.find('=');
                    if (eq == std::string_view::npos) throw ParseError("expected name=weight, got '" + std::string(pair) + "'", line.number);
                    auto name = pair.substr(0, eq);
                    auto w = parse_weight<S>(pair.substr(eq + 1), line.number);
                    if (name == "*")
                        init ? builder.set_all_init(w) : builder.set_all_final(w);
                    else
                        init ? builder.set_init(name, w) : builder.set_final(name, w);
                }
            } else if (line.key == "ap") {
                auto words = split_ws(line.body);
                if (words.empty()) throw ParseError("expected a state name", line.number);
                for (std::size_t i = 1; i < words.size(); ++i) {
                    if (!is_identifier(words[i]) || is_reserved_word(words[i]))
                        throw ParseError("invalid atomic proposition '" + std::string(words[i]) + "'", line.number);
                    builder.add_prop(words[0], std::string(words[i]));
                }
            } else if (line.key == "trans") {
                auto words = split_ws(line.body);
                if (words.size() < 4) throw ParseError("expected 'trans: from label to weight'", line.number);
                // The weight is the rest of the line so that "(p, v)" may contain blanks.
                auto rest = line.body.substr(static_cast<std::size_t>(words[3].data() - line.body.data()));
                auto w = parse_weight<S>(rest, line.number);
                if (is_zero<S>(w)) throw ParseError("transition weight is the semiring zero", line.number);
                builder.add_transition(words[0], words[1], words[2], w);
            } else {
                throw ParseError("unknown key '" + std::string(line.key) + "'", line.number);
            }
        } catch (const ModelError& e) {
            throw ParseError(e.what(), line.number);
        }
    }
    try {
        return builder.build();
    } catch (const ModelError& e) {
        throw ParseError(e.what());
    }
}

} // namespace detail

/// Semiring declared by a model text, without parsing the rest.
inline SemiringSpec declared_semiring(std::string_view text)
{
    for (const auto& line : detail::model_lines(text)) {
        if (line.key != "semiring") continue;
        try {
            return make_semiring(line.body);
        } catch (const ConfigError& e) {
            throw ParseError(e.what(), line.number);
        }
    }
    throw ParseError("missing 'semiring:' declaration");
}

/// Parse a model whose semiring must be S.
template <Semiring S>
Automaton<S> parse_automaton_as(std::string_view text)
{
    auto lines = detail::model_lines(text);
    bool seen = false;
    for (const auto& line : lines) {
        if (line.key != "semiring") continue;
        if (seen) throw ParseError("duplicate 'semiring:' declaration", line.number);
        seen = true;
        if (line.body != S::name)
            throw ParseError("model declares semiring '" + std::string(line.body) + "', expected '" +
                                 std::string(S::name) + "'",
                             line.number);
    }
    if (!seen) throw ParseError("missing 'semiring:' declaration");
    return detail::build_automaton<S>(lines);
}

inline AnyAutomaton parse_automaton(std::string_view text)
{
    auto spec = declared_semiring(text);
    return visit_semiring(spec.kind, [&]<class S>(std::type_identity<S>) -> AnyAutomaton {
        return parse_automaton_as<S>(text);
    });
}

inline AnyAutomaton parse_automaton(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_automaton(text);
}

/// Text form accepted by parse_automaton; parse(serialize(a)) == a.
template <Semiring S>
std::string serialize_automaton(const Automaton<S>& a)
{
    std::ostringstream out;
    out << "semiring: " << S::name << '\n';
    out << "states:";
    for (const auto& s : a.state_names()) out << ' ' << s;
    out << '\n';
    out << "alphabet:";
    for (const auto& l : a.alphabet()) out << ' ' << l;
    out << '\n';
    for (const auto& e : a.init().entries()) out << "init: " << a.state_name(e.index) << '=' << S::format(e.value) << '\n';
    for (const auto& e : a.final().entries()) out << "final: " << a.state_name(e.index) << '=' << S::format(e.value) << '\n';
    for (StateId x = 0; x < a.num_states(); ++x) {
        if (a.ap(x).empty()) continue;
        out << "ap: " << a.state_name(x);
        for (const auto& p : a.ap(x)) out << ' ' << p;
        out << '\n';
    }
    for (StateId x = 0; x < a.num_states(); ++x)
        for (LabelId l = 0; l < a.num_labels(); ++l)
            for (const auto& e : a.matrix(l).row(x))
                out << "trans: " << a.state_name(x) << ' ' << a.label_name(l) << ' ' << a.state_name(e.index) << ' '
                    << S::format(e.value) << '\n';
    return out.str();
}

inline std::string serialize_automaton(const AnyAutomaton& a)
{
    return std::visit([](const auto& typed) { return serialize_automaton(typed); }, a);
}

} // namespace wamc

#endif // WAMC_AUTOMATON_IO_HPP
