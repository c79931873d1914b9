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

#ifndef WAMC_FORMULA_PARSER_HPP
#define WAMC_FORMULA_PARSER_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "wamc/automaton.hpp"
#include "wamc/errors.hpp"
#include "wamc/formula.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

namespace detail {

/// Recursive descent over the formula grammar
///
///   impl  := disj ("->" impl)?
///   disj  := conj ("|" conj)*
///   conj  := unary (("&" | "U" params | "AU" params) unary)*
///   unary := "!" unary | "(" impl ")" | "true" | "false" | IDENT
///          | "[" LABEL "]" "{" CMP WEIGHT "}" "." unary
///          | ("AX" | "UX") "{" CMP WEIGHT "}" unary
///          | ("AF" | "UF") "{" CMP WEIGHT "," BOUND "}" unary
///
/// In CTL mode the temporal forms are instead EX/AX/EF/AF/EG/AG unary and
/// A[impl U impl], E[impl U impl], expanded into CTL$ over the Boolean
/// semiring.
template <Semiring S>
class FormulaParser {
public:
    FormulaParser(std::string_view text, bool ctl) : text_(text), ctl_(ctl) {}

    Formula<S> parse()
    {
        auto f = implication();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("formula: " + what + " at column " + std::to_string(pos_ + 1));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (text_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    static bool ident_head(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_tail(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    /// Identifier at the cursor without consuming it.
    std::string_view peek_ident()
    {
        skip_ws();
        if (pos_ >= text_.size() || !ident_head(text_[pos_])) return {};
        std::size_t end = pos_ + 1;
        while (end < text_.size() && ident_tail(text_[end])) ++end;
        return text_.substr(pos_, end - pos_);
    }

    bool accept_keyword(std::string_view kw)
    {
        if (peek_ident() != kw) return false;
        pos_ += kw.size();
        return true;
    }

    Formula<S> implication()
    {
        auto lhs = disjunction();
        if (accept("->")) return fml::implication<S>(lhs, implication());
        return lhs;
    }

    Formula<S> disjunction()
    {
        auto lhs = conjunction();
        while (accept("|")) lhs = fml::disjunction<S>(lhs, conjunction());
        return lhs;
    }

    Formula<S> conjunction()
    {
        auto lhs = unary();
        for (;;) {
            if (accept("&")) {
                lhs = fml::conjunction<S>(lhs, unary());
            } else if (!ctl_ && (peek_ident() == "U" || peek_ident() == "AU")) {
                bool all = accept_keyword("AU");
                if (!all) accept_keyword("U");
                auto [cmp, p, bound] = params(true);
                auto rhs = unary();
                lhs = all ? fml::all_until<S>(lhs, cmp, p, bound, rhs) : fml::until<S>(lhs, cmp, p, bound, rhs);
            } else {
                return lhs;
            }
        }
    }

    struct Params {
        Cmp cmp;
        Weight<S> threshold;
        Bound bound;
    };

    /// "{" CMP WEIGHT ("," BOUND)? "}"
    Params params(bool with_bound)
    {
        expect("{");
        skip_ws();
        Cmp cmp;
        if (accept(">=")) cmp = Cmp::ge;
        else if (accept("<=")) cmp = Cmp::le;
        else if (accept(">")) cmp = Cmp::gt;
        else if (accept("<")) cmp = Cmp::lt;
        else if (accept("=")) cmp = Cmp::eq;
        else fail("expected a comparison operator");

        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '(') {
            auto close = text_.find(')', pos_);
            if (close == std::string_view::npos) fail("unterminated weight literal");
            pos_ = close + 1;
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}') ++pos_;
        }
        auto literal = trim(text_.substr(start, pos_ - start));
        if (literal.empty()) fail("expected a weight");
        auto w = S::parse_literal(literal);
        if (!w) fail("invalid " + std::string(S::name) + " weight '" + std::string(literal) + "'");

        Bound bound = unbounded;
        if (with_bound) {
            expect(",");
            bound = parse_bound();
        }
        expect("}");
        return {cmp, *w, bound};
    }

    Bound parse_bound()
    {
        skip_ws();
        if (accept_keyword("inf")) return unbounded;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a step bound (natural number or inf)");
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{}) fail("step bound out of range");
        return value;
    }

    Formula<S> unary()
    {
        skip_ws();
        if (at_end()) fail("unexpected end of formula");
        if (accept("!")) return fml::negation<S>(unary());
        if (accept("(")) {
            auto f = implication();
            expect(")");
            return f;
        }
        if (!ctl_ && accept("[")) {
            auto close = text_.find(']', pos_);
            if (close == std::string_view::npos) fail("expected ']'");
            auto label = trim(text_.substr(pos_, close - pos_));
            if (!is_valid_name(label)) fail("invalid label '" + std::string(label) + "'");
            pos_ = close + 1;
            auto [cmp, p, bound] = params(false);
            expect(".");
            return fml::diamond<S>(std::string(label), cmp, p, unary());
        }

        auto word = peek_ident();
        if (word.empty()) fail("expected a formula");
        if (ctl_) {
            if (auto f = ctl_operator(word)) return f;
        } else if (word == "AX" || word == "UX" || word == "AF" || word == "UF") {
            pos_ += word.size();
            bool next = word.back() == 'X';
            auto [cmp, p, bound] = params(!next);
            if (next) bound = 1;
            auto body = unary();
            auto top = fml::constant<S>(true);
            return word.front() == 'A' ? fml::all_until<S>(top, cmp, p, bound, body)
                                       : fml::until<S>(top, cmp, p, bound, body);
        }
        pos_ += word.size();
        if (word == "true") return fml::constant<S>(true);
        if (word == "false") return fml::constant<S>(false);
        if (is_reserved_word(word)) fail("unexpected keyword '" + std::string(word) + "'");
        return fml::atom<S>(std::string(word));
    }

    /// CTL path operators as CTL$ formulas with threshold > 0 over the Boolean semiring.
    Formula<S> ctl_operator(std::string_view word)
    {
        auto top = fml::constant<S>(true);
        auto zero = S::zero();
        auto eu = [&](Formula<S> a, Bound t, Formula<S> b) { return fml::until<S>(a, Cmp::gt, zero, t, b); };
        auto au = [&](Formula<S> a, Bound t, Formula<S> b) { return fml::all_until<S>(a, Cmp::gt, zero, t, b); };

        if (word == "A" || word == "E") {
            std::size_t save = pos_;
            pos_ += word.size();
            if (!accept("[")) {
                pos_ = save;
                return nullptr;
            }
            auto a = implication();
            if (!accept_keyword("U")) fail("expected 'U'");
            auto b = implication();
            expect("]");
            return word == "A" ? au(a, unbounded, b) : eu(a, unbounded, b);
        }
        if (word.size() != 2 || (word[0] != 'E' && word[0] != 'A') ||
            (word[1] != 'X' && word[1] != 'F' && word[1] != 'G'))
            return nullptr;
        pos_ += 2;
        auto body = unary();
        if (word == "EX") return eu(top, 1, body);
        if (word == "AX") return au(top, 1, body);
        if (word == "EF") return eu(top, unbounded, body);
        if (word == "AF") return au(top, unbounded, body);
        if (word == "AG") return fml::negation<S>(eu(top, unbounded, fml::negation<S>(body)));
        return fml::negation<S>(au(top, unbounded, fml::negation<S>(body))); // EG
    }

    std::string_view text_;
    bool ctl_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse CTL$ concrete syntax with weight literals of semiring S.
template <Semiring S>
Formula<S> parse_formula(std::string_view text)
{
    return detail::FormulaParser<S>(text, false).parse();
}

/// Parse a CTL formula (EX, AX, EF, AF, EG, AG, A[..U..], E[..U..]) into
/// its CTL$ expansion. Only meaningful over the Boolean semiring.
template <Semiring S>
Formula<S> ctl_compat(std::string_view text)
{
    if constexpr (!std::is_same_v<S, BooleanSemiring>) {
        throw UnsupportedError("CTL compatibility mode requires a boolean model, got " + std::string(S::name));
    } else {
        return detail::FormulaParser<S>(text, true).parse();
    }
}

} // namespace wamc

#endif // WAMC_FORMULA_PARSER_HPP
