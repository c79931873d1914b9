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

#ifndef WAMC_SEMIRING_HPP
#define WAMC_SEMIRING_HPP

#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

#include "wamc/errors.hpp"

namespace wamc {

/// Result of comparing two weights under a semiring's (partial) order.
enum class Order { less, equal, greater, incomparable };

/// Comparison operator carried by threshold formulas.
enum class Cmp { lt, le, eq, ge, gt };

/// How the closure sum over all powers of a matrix is obtained, if at all.
enum class ClosureStrategy { finite_sum, linear_solve, positive_cycle, none };

struct SemiringFlags {
    bool ordered;
    bool order_preserving;
    bool idempotent;
    bool commutative;
    bool zero_is_infimum;
    ClosureStrategy closure;

    /// Weights accumulate monotonically, so threshold tests may stop early.
    constexpr bool monotone() const noexcept { return ordered && order_preserving && zero_is_infimum; }
};

inline std::string_view to_string(Cmp c) noexcept
{
    switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ge: return ">=";
    case Cmp::gt: return ">";
    }
    return "?";
}

inline std::string_view to_string(ClosureStrategy s) noexcept
{
    switch (s) {
    case ClosureStrategy::finite_sum: return "finite_sum";
    case ClosureStrategy::linear_solve: return "linear_solve";
    case ClosureStrategy::positive_cycle: return "positive_cycle";
    case ClosureStrategy::none: return "none";
    }
    return "?";
}

inline std::optional<Cmp> parse_cmp(std::string_view s) noexcept
{
    if (s == "<") return Cmp::lt;
    if (s == "<=") return Cmp::le;
    if (s == "=") return Cmp::eq;
    if (s == ">=") return Cmp::ge;
    if (s == ">") return Cmp::gt;
    return std::nullopt;
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_decimal(std::string_view s) noexcept
{
    s = trim(s);
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || std::isnan(value)) return std::nullopt;
    return value;
}

/// Decimal literal, `inf`, `-inf`, or a fraction `p/q` of two decimals.
inline std::optional<double> parse_real(std::string_view s) noexcept
{
    s = trim(s);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    auto num = parse_decimal(s.substr(0, slash));
    auto den = parse_decimal(s.substr(slash + 1));
    if (!num || !den || *den == 0.0 || std::isinf(*num) || std::isinf(*den)) return std::nullopt;
    return *num / *den;
}

/// Shortest text that reads back to the same double.
inline std::string format_real(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

inline bool near_real(double a, double b, double tol) noexcept
{
    if (a == b) return true;
    if (std::isinf(a) || std::isinf(b)) return false;
    return std::fabs(a - b) <= tol;
}

inline Order compare_real(double a, double b) noexcept
{
    if (a < b) return Order::less;
    if (a > b) return Order::greater;
    return Order::equal;
}

constexpr double inf = std::numeric_limits<double>::infinity();

} // namespace detail

enum class SemiringKind { boolean, prob, maxplus, minplus, maxmin, expectation };

// clang-format off
template <class S>
concept Semiring = requires(const typename S::value_type& a, std::string_view text, double tol) {
    typename S::value_type;
    { S::kind } -> std::convertible_to<SemiringKind>;
    { S::name } -> std::convertible_to<std::string_view>;
    { S::flags } -> std::convertible_to<SemiringFlags>;
    { S::zero() } -> std::same_as<typename S::value_type>;
    { S::one() } -> std::same_as<typename S::value_type>;
    { S::plus(a, a) } -> std::same_as<typename S::value_type>;
    { S::times(a, a) } -> std::same_as<typename S::value_type>;
    { S::compare(a, a) } -> std::same_as<Order>;
    { S::valid(a) } -> std::same_as<bool>;
    { S::near(a, a, tol) } -> std::same_as<bool>;
    { S::before(a, a) } -> std::same_as<bool>;
    { S::parse_literal(text) } -> std::same_as<std::optional<typename S::value_type>>;
    { S::format(a) } -> std::same_as<std::string>;
};
// clang-format on

/// ({0,1}, or, and, 0, 1).
struct BooleanSemiring {
    using value_type = bool;
    static constexpr SemiringKind kind = SemiringKind::boolean;
    static constexpr std::string_view name = "boolean";
    static constexpr SemiringFlags flags{true, true, true, true, true, ClosureStrategy::finite_sum};

    static value_type zero() noexcept { return false; }
    static value_type one() noexcept { return true; }
    static value_type plus(bool a, bool b) noexcept { return a || b; }
    static value_type times(bool a, bool b) noexcept { return a && b; }
    static Order compare(bool a, bool b) noexcept
    {
        return a == b ? Order::equal : (a ? Order::greater : Order::less);
    }
    static bool valid(bool) noexcept { return true; }
    static bool near(bool a, bool b, double) noexcept { return a == b; }
    static bool before(bool a, bool b) noexcept { return !a && b; }
    static std::optional<value_type> parse_literal(std::string_view s) noexcept
    {
        s = detail::trim(s);
        if (s == "1" || s == "true") return true;
        if (s == "0" || s == "false") return false;
        return std::nullopt;
    }
    static std::string format(bool a) { return a ? "1" : "0"; }
};

namespace detail {

/// Shared pieces of the semirings whose payload is a single double.
template <class Derived>
struct RealSemiringBase {
    using value_type = double;

    static bool near(double a, double b, double tol) noexcept { return near_real(a, b, tol); }
    static bool before(double a, double b) noexcept { return a < b; }
    static std::optional<value_type> parse_literal(std::string_view s) noexcept
    {
        auto v = parse_real(s);
        if (!v || !Derived::valid(*v)) return std::nullopt;
        return v;
    }
    static std::string format(double a) { return format_real(a); }
};

} // namespace detail

/// (R+, +, *, 0, 1): probabilistic weights.
struct ProbSemiring : detail::RealSemiringBase<ProbSemiring> {
    static constexpr SemiringKind kind = SemiringKind::prob;
    static constexpr std::string_view name = "prob";
    static constexpr SemiringFlags flags{true, true, false, true, true, ClosureStrategy::linear_solve};

    static double zero() noexcept { return 0.0; }
    static double one() noexcept { return 1.0; }
    static double plus(double a, double b) noexcept { return a + b; }
    static double times(double a, double b) noexcept { return a * b; }
    static Order compare(double a, double b) noexcept { return detail::compare_real(a, b); }
    static bool valid(double a) noexcept { return std::isfinite(a) && a >= 0.0; }
};

/// (R+ u {-inf, inf}, max, +, -inf, 0), completed so that divergent path
/// weights are representable.
struct MaxPlusSemiring : detail::RealSemiringBase<MaxPlusSemiring> {
    static constexpr SemiringKind kind = SemiringKind::maxplus;
    static constexpr std::string_view name = "maxplus";
    static constexpr SemiringFlags flags{true, true, true, true, true, ClosureStrategy::positive_cycle};

    static double zero() noexcept { return -detail::inf; }
    static double one() noexcept { return 0.0; }
    static double plus(double a, double b) noexcept { return a < b ? b : a; }
    static double times(double a, double b) noexcept
    {
        if (a == -detail::inf || b == -detail::inf) return -detail::inf;
        return a + b;
    }
    static Order compare(double a, double b) noexcept { return detail::compare_real(a, b); }
    static bool valid(double a) noexcept { return !std::isnan(a) && (a >= 0.0 || a == -detail::inf); }
};

/// (R+ u {inf}, min, +, inf, 0) with the inverse order: a >= b iff a = min(a,b).
struct MinPlusSemiring : detail::RealSemiringBase<MinPlusSemiring> {
    static constexpr SemiringKind kind = SemiringKind::minplus;
    static constexpr std::string_view name = "minplus";
    static constexpr SemiringFlags flags{true, true, true, true, true, ClosureStrategy::finite_sum};

    static double zero() noexcept { return detail::inf; }
    static double one() noexcept { return 0.0; }
    static double plus(double a, double b) noexcept { return a < b ? a : b; }
    static double times(double a, double b) noexcept
    {
        if (a == detail::inf || b == detail::inf) return detail::inf;
        return a + b;
    }
    static Order compare(double a, double b) noexcept { return detail::compare_real(b, a); }
    static bool valid(double a) noexcept { return !std::isnan(a) && a >= 0.0; }
};

/// (R+ u {inf}, max, min, 0, inf): bottleneck weights.
struct MaxMinSemiring : detail::RealSemiringBase<MaxMinSemiring> {
    static constexpr SemiringKind kind = SemiringKind::maxmin;
    static constexpr std::string_view name = "maxmin";
    static constexpr SemiringFlags flags{true, true, true, true, true, ClosureStrategy::finite_sum};

    static double zero() noexcept { return 0.0; }
    static double one() noexcept { return detail::inf; }
    static double plus(double a, double b) noexcept { return a < b ? b : a; }
    static double times(double a, double b) noexcept { return a < b ? a : b; }
    static Order compare(double a, double b) noexcept { return detail::compare_real(a, b); }
    static bool valid(double a) noexcept { return !std::isnan(a) && a >= 0.0; }
};

/// Payload of the expectation semiring: a probability mass and the expected
/// cost of the paths carrying it.
struct Expectation {
    double p = 0.0;
    double v = 0.0;

    friend bool operator==(const Expectation&, const Expectation&) = default;
};

/// Pairs (p, v) with (p1,v1)*(p2,v2) = (p1 p2, v1 + v2) and
/// (p1,v1)+(p2,v2) = (p1 + p2, (p1 v1 + p2 v2)/(p1 + p2)), 0/0 = 0.
/// Every pair with p = 0 is identified with the zero (0, 0).
struct ExpectationSemiring {
    using value_type = Expectation;
    static constexpr SemiringKind kind = SemiringKind::expectation;
    static constexpr std::string_view name = "expectation";
    static constexpr SemiringFlags flags{false, false, false, true, false, ClosureStrategy::none};

    static Expectation normalize(Expectation e) noexcept { return e.p == 0.0 ? Expectation{} : e; }
    static Expectation zero() noexcept { return {0.0, 0.0}; }
    static Expectation one() noexcept { return {1.0, 0.0}; }
    static Expectation plus(const Expectation& a, const Expectation& b) noexcept
    {
        double p = a.p + b.p;
        if (p == 0.0) return zero();
        return {p, (a.p * a.v + b.p * b.v) / p};
    }
    static Expectation times(const Expectation& a, const Expectation& b) noexcept
    {
        return normalize({a.p * b.p, a.v + b.v});
    }
    /// (p1,v1) >= (p2,v2) iff p1 >= p2 and v1 <= v2; a partial order.
    static Order compare(const Expectation& a, const Expectation& b) noexcept
    {
        if (a == b) return Order::equal;
        if (a.p >= b.p && a.v <= b.v) return Order::greater;
        if (a.p <= b.p && a.v >= b.v) return Order::less;
        return Order::incomparable;
    }
    static bool valid(const Expectation& a) noexcept
    {
        return std::isfinite(a.p) && std::isfinite(a.v) && a.p >= 0.0 && a.v >= 0.0;
    }
    static bool near(const Expectation& a, const Expectation& b, double tol) noexcept
    {
        return detail::near_real(a.p, b.p, tol) && detail::near_real(a.v, b.v, tol);
    }
    static bool before(const Expectation& a, const Expectation& b) noexcept
    {
        return a.p < b.p || (a.p == b.p && a.v < b.v);
    }
    static std::optional<Expectation> parse_literal(std::string_view s) noexcept
    {
        s = detail::trim(s);
        if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
        s = s.substr(1, s.size() - 2);
        auto comma = s.find(',');
        if (comma == std::string_view::npos) return std::nullopt;
        auto p = detail::parse_real(s.substr(0, comma));
        auto v = detail::parse_real(s.substr(comma + 1));
        if (!p || !v) return std::nullopt;
        Expectation e{*p, *v};
        if (!valid(e)) return std::nullopt;
        return normalize(e);
    }
    static std::string format(const Expectation& a)
    {
        return "(" + detail::format_real(a.p) + "," + detail::format_real(a.v) + ")";
    }
};

static_assert(Semiring<BooleanSemiring>);
static_assert(Semiring<ProbSemiring>);
static_assert(Semiring<MaxPlusSemiring>);
static_assert(Semiring<MinPlusSemiring>);
static_assert(Semiring<MaxMinSemiring>);
static_assert(Semiring<ExpectationSemiring>);

template <Semiring S>
using Weight = typename S::value_type;

template <Semiring S>
bool is_zero(const Weight<S>& w)
{
    return w == S::zero();
}

/// w cmp p under the semiring order. Incomparable pairs satisfy none of
/// <, <=, >=, > and satisfy = only on payload equality.
template <Semiring S>
bool compare_weight(Cmp cmp, const Weight<S>& w, const Weight<S>& p)
{
    Order o = S::compare(w, p);
    switch (cmp) {
    case Cmp::lt: return o == Order::less;
    case Cmp::le: return o == Order::less || o == Order::equal;
    case Cmp::eq: return o == Order::equal;
    case Cmp::ge: return o == Order::greater || o == Order::equal;
    case Cmp::gt: return o == Order::greater;
    }
    return false;
}

/// sup(a,b) = a if a > b, else b.
template <Semiring S>
Weight<S> sup(const Weight<S>& a, const Weight<S>& b)
{
    return S::compare(a, b) == Order::greater ? a : b;
}

/// inf(a,b) = a if a < b, else b.
template <Semiring S>
Weight<S> inf(const Weight<S>& a, const Weight<S>& b)
{
    return S::compare(a, b) == Order::less ? a : b;
}

/// Parse a weight literal or throw ParseError naming the semiring.
template <Semiring S>
Weight<S> parse_weight(std::string_view text, std::size_t line = 0)
{
    auto w = S::parse_literal(text);
    if (!w)
        throw ParseError("invalid " + std::string(S::name) + " weight '" + std::string(text) + "'", line);
    return *w;
}

/// Runtime description of a semiring instance.
struct SemiringSpec {
    SemiringKind kind;
    std::string_view name;
    SemiringFlags flags;
};

template <Semiring S>
constexpr SemiringSpec spec_of() noexcept
{
    return {S::kind, S::name, S::flags};
}

/// Invoke `f(std::type_identity<S>{})` with the semiring type for `kind`.
template <class F>
decltype(auto) visit_semiring(SemiringKind kind, F&& f)
{
    switch (kind) {
    case SemiringKind::boolean: return f(std::type_identity<BooleanSemiring>{});
    case SemiringKind::prob: return f(std::type_identity<ProbSemiring>{});
    case SemiringKind::maxplus: return f(std::type_identity<MaxPlusSemiring>{});
    case SemiringKind::minplus: return f(std::type_identity<MinPlusSemiring>{});
    case SemiringKind::maxmin: return f(std::type_identity<MaxMinSemiring>{});
    case SemiringKind::expectation: return f(std::type_identity<ExpectationSemiring>{});
    }
    throw ConfigError("unknown semiring kind");
}

inline SemiringSpec make_semiring(std::string_view name)
{
    for (auto kind : {SemiringKind::boolean, SemiringKind::prob, SemiringKind::maxplus, SemiringKind::minplus,
                      SemiringKind::maxmin, SemiringKind::expectation}) {
        auto spec = visit_semiring(kind, []<class S>(std::type_identity<S>) { return spec_of<S>(); });
        if (spec.name == name) return spec;
    }
    throw ConfigError("unknown semiring '" + std::string(name) +
                      "' (expected boolean, prob, maxplus, minplus, maxmin or expectation)");
}

} // namespace wamc

#endif // WAMC_SEMIRING_HPP
