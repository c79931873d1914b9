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

// Helpers shared by the test programs: fixture loading, random automata,
// brute-force oracles and a CLI runner.

#ifndef WAMC_TESTS_SUPPORT_HPP
#define WAMC_TESTS_SUPPORT_HPP

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "wamc/wamc.hpp"

namespace wamc::support {

inline std::string model_path(const std::string& name) { return std::string(WAMC_MODELS_DIR) + "/" + name; }

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <Semiring S>
Automaton<S> load(const std::string& name)
{
    return parse_automaton_as<S>(read_text(model_path(name)));
}

using Rng = std::mt19937_64;

/// Random non-zero-or-zero payloads; small integers keep tropical sums exact.
template <Semiring S>
Weight<S> sample(Rng& rng);

template <>
inline bool sample<BooleanSemiring>(Rng& rng)
{
    return std::uniform_int_distribution<int>(0, 1)(rng) == 1;
}

template <>
inline double sample<ProbSemiring>(Rng& rng)
{
    static const double pool[] = {0.0, 0.1, 0.2, 0.25, 1.0 / 3, 0.5, 0.75, 1.0, 1.5, 2.0};
    return pool[std::uniform_int_distribution<std::size_t>(0, std::size(pool) - 1)(rng)];
}

template <>
inline double sample<MaxPlusSemiring>(Rng& rng)
{
    int k = std::uniform_int_distribution<int>(-1, 8)(rng);
    return k == -1 ? -detail::inf : static_cast<double>(k);
}

template <>
inline double sample<MinPlusSemiring>(Rng& rng)
{
    int k = std::uniform_int_distribution<int>(0, 10)(rng);
    return k == 10 ? detail::inf : static_cast<double>(k);
}

template <>
inline double sample<MaxMinSemiring>(Rng& rng)
{
    int k = std::uniform_int_distribution<int>(0, 10)(rng);
    return k == 10 ? detail::inf : static_cast<double>(k);
}

template <>
inline Expectation sample<ExpectationSemiring>(Rng& rng)
{
    static const double ps[] = {0.0, 0.25, 0.5, 1.0, 2.0};
    double p = ps[std::uniform_int_distribution<std::size_t>(0, std::size(ps) - 1)(rng)];
    double v = static_cast<double>(std::uniform_int_distribution<int>(0, 6)(rng));
    return ExpectationSemiring::times(Expectation{p, v}, ExpectationSemiring::one());
}

template <Semiring S>
Weight<S> sample_nonzero(Rng& rng)
{
    for (;;) {
        auto w = sample<S>(rng);
        if (!is_zero<S>(w)) return w;
    }
}

/// Random automaton over atoms p, q with sparse transitions.
template <Semiring S>
Automaton<S> random_automaton(Rng& rng, std::size_t n, std::size_t labels, double density = 0.15)
{
    AutomatonBuilder<S> b;
    std::bernoulli_distribution coin(0.5), arc(density), weighted(0.7);
    for (std::size_t x = 0; x < n; ++x) {
        PropSet props;
        if (coin(rng)) props.insert("p");
        if (coin(rng)) props.insert("q");
        b.add_state("s" + std::to_string(x), props);
    }
    for (std::size_t l = 0; l < labels; ++l) b.add_label(std::string(1, static_cast<char>('a' + l)));
    for (std::size_t x = 0; x < n; ++x) {
        auto name = "s" + std::to_string(x);
        if (weighted(rng)) b.set_init(name, sample_nonzero<S>(rng));
        if (weighted(rng)) b.set_final(name, sample_nonzero<S>(rng));
        for (std::size_t l = 0; l < labels; ++l)
            for (std::size_t y = 0; y < n; ++y)
                if (arc(rng))
                    b.add_transition(name, std::string(1, static_cast<char>('a' + l)), "s" + std::to_string(y),
                                     sample_nonzero<S>(rng));
    }
    return b.build();
}

inline StateSet random_set(Rng& rng, std::size_t n, double p = 0.5)
{
    std::bernoulli_distribution coin(p);
    StateSet s(n);
    for (std::size_t x = 0; x < n; ++x) s[x] = coin(rng);
    return s;
}

/// Sum over explicit paths from x that stay in phi1 & !phi2 and first hit
/// phi2 within t steps (t = 0 allows only the empty path).
template <Semiring S>
Weight<S> brute_until(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, StateId x,
                      std::uint64_t t)
{
    Weight<S> total = S::zero();
    std::function<void(StateId, Weight<S>, std::uint64_t)> walk = [&](StateId y, Weight<S> w, std::uint64_t steps) {
        if (phi2[y]) {
            total = S::plus(total, S::times(w, a.final().at(y)));
            return;
        }
        if (!phi1[y] || steps == t) return;
        for (LabelId l = 0; l < a.num_labels(); ++l)
            for (const auto& e : a.matrix(l).row(y)) walk(e.index, S::times(w, e.value), steps + 1);
    };
    walk(x, a.init().at(x), 0);
    return total;
}

/// Explicit-path version of the AU side condition: no path from x leaves
/// phi1 | phi2 before phi2, and none stays in phi1 & !phi2 for m steps.
template <Semiring S>
bool brute_all_paths(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2, StateId x, std::uint64_t t)
{
    if (phi2[x]) return true;
    if (!phi1[x] || t == 0) return false;
    std::uint64_t m = std::min<std::uint64_t>(t, a.num_states());
    std::function<bool(StateId, std::uint64_t)> ok = [&](StateId y, std::uint64_t steps) {
        if (phi2[y]) return true;
        if (!phi1[y]) return false;
        if (steps == m) return false;
        for (LabelId l = 0; l < a.num_labels(); ++l)
            for (const auto& e : a.matrix(l).row(y))
                if (!ok(e.index, steps + 1)) return false;
        return true;
    };
    return ok(x, 0);
}

struct FormulaSpace {
    std::vector<std::string> atoms;
    std::vector<std::string> labels;
    bool unbounded = true;
    bool all_until = true;
    std::uint64_t max_bound = 4;
};

/// Random formula of at most `depth` operator levels; thresholds come from `pool`.
template <Semiring S>
Formula<S> random_formula(Rng& rng, const FormulaSpace& space, const std::vector<Weight<S>>& pool, int depth)
{
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (depth == 0 || pick(4) == 0) {
        std::size_t k = pick(space.atoms.size() + 1);
        if (k == space.atoms.size()) return fml::constant<S>(pick(2) == 0);
        return fml::atom<S>(space.atoms[k]);
    }
    static const Cmp cmps[] = {Cmp::lt, Cmp::le, Cmp::eq, Cmp::ge, Cmp::gt};
    auto sub = [&] { return random_formula<S>(rng, space, pool, depth - 1); };
    auto cmp = cmps[pick(5)];
    auto p = pool[pick(pool.size())];
    auto bound = [&]() -> Bound {
        std::size_t k = pick(space.max_bound + (space.unbounded ? 2 : 1));
        if (k > space.max_bound) return unbounded;
        return k;
    };
    switch (pick(space.all_until ? 7 : 6)) {
    case 0: return fml::negation<S>(sub());
    case 1: return fml::disjunction<S>(sub(), sub());
    case 2: return fml::conjunction<S>(sub(), sub());
    case 3: return fml::implication<S>(sub(), sub());
    case 4: return fml::diamond<S>(space.labels[pick(space.labels.size())], cmp, p, sub());
    case 5: return fml::until<S>(sub(), cmp, p, bound(), sub());
    default: return fml::all_until<S>(sub(), cmp, p, bound(), sub());
    }
}

struct CliResult {
    int status = -1;
    std::string out;
};

/// Runs the wamc binary with a shell-quoted argument string; stderr is
/// discarded unless merged into the captured output.
inline CliResult run_cli(const std::string& args, bool with_stderr = false)
{
    std::string cmd = std::string("\"") + WAMC_CLI_PATH + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

inline std::string quote(const std::string& s) { return "'" + s + "'"; }

} // namespace wamc::support

#endif // WAMC_TESTS_SUPPORT_HPP
