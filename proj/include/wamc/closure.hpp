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

#ifndef WAMC_CLOSURE_HPP
#define WAMC_CLOSURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "wamc/automaton.hpp"
#include "wamc/errors.hpp"
#include "wamc/linalg.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

/// N = sum_{k>=0} R^k together with the strategy that produced it.
template <Semiring S>
struct ClosureMatrix {
    Matrix<S> matrix;
    ClosureStrategy strategy;
};

/// Row-sum threshold for trap detection and the residual bound of the linear solve.
inline constexpr double closure_tolerance = 1e-9;

namespace detail {

/// reach[x][y]: y reachable from x in the graph of r, reflexively.
template <Semiring S>
std::vector<std::vector<bool>> reachability(const Matrix<S>& r)
{
    std::size_t n = r.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::vector<std::size_t> stack;
    for (std::size_t x = 0; x < n; ++x) {
        auto& seen = reach[x];
        seen[x] = true;
        stack.assign(1, x);
        while (!stack.empty()) {
            auto y = stack.back();
            stack.pop_back();
            for (const auto& e : r.row(y))
                if (!seen[e.index]) {
                    seen[e.index] = true;
                    stack.push_back(e.index);
                }
        }
    }
    return reach;
}

/// Strongly connected components (Tarjan); returns component id per vertex.
template <Semiring S>
std::vector<std::size_t> strong_components(const Matrix<S>& r, std::size_t& count)
{
    std::size_t n = r.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t next = 0;
    count = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    std::vector<Frame> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        frames.push_back({root, 0});
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            auto row = r.row(f.v);
            if (f.edge < row.size()) {
                auto w = row[f.edge++].index;
                if (index[w] == unvisited) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            auto v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
        }
    }
    return comp;
}

/// (I - R)^{-1} for a substochastic R after zeroing the rows of every
/// closed stochastic subset (trap).
template <Semiring S>
Matrix<S> closure_linear_solve(const Matrix<S>& r)
{
    static_assert(std::is_same_v<Weight<S>, double>, "linear solve needs real weights");
    std::size_t n = r.size();

    // Greatest set X in which every row keeps (almost) all of its mass inside X.
    std::vector<bool> trap(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (!trap[x]) continue;
            double inside = 0.0;
            for (const auto& e : r.row(x))
                if (trap[e.index]) inside += e.value;
            if (inside < 1.0 - closure_tolerance) {
                trap[x] = false;
                changed = true;
            }
        }
    }

    std::vector<typename Matrix<S>::Row> rows(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (trap[x]) continue;
        double total = 0.0;
        for (const auto& e : r.row(x)) total += e.value;
        if (total > 1.0 + closure_tolerance)
            throw UnsupportedError("unbounded until over prob needs substochastic transition weights (row sum " +
                                   detail::format_real(total) + ")");
        for (const auto& e : r.row(x))
            if (!trap[e.index]) rows[x].push_back(e);
    }
    Matrix<S> pruned(n, std::move(rows));

    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& e : pruned.row(x))
            a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(e.index)) -= e.value;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::MatrixXd inv = lu.inverse();
    Eigen::MatrixXd residual = a * inv - Eigen::MatrixXd::Identity(a.rows(), a.cols());
    if (n > 0 && (!inv.allFinite() || residual.cwiseAbs().maxCoeff() > closure_tolerance))
        throw NumericError("closure: (I - R) is singular or ill-conditioned");

    auto reach = reachability(pruned);
    std::vector<typename Matrix<S>::Row> out(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            double v = inv(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            if (reach[x][y] && v > 0.0) out[x].push_back({y, v});
        }
    return Matrix<S>(n, std::move(out));
}

/// Max/plus star: a cycle of positive weight makes every pair routed
/// through it infinite; all other entries come from the first n powers.
template <Semiring S>
Matrix<S> closure_positive_cycle(const Matrix<S>& r)
{
    static_assert(std::is_same_v<Weight<S>, double>, "positive-cycle closure needs real weights");
    std::size_t n = r.size();
    std::size_t count = 0;
    auto comp = strong_components(r, count);
    std::vector<bool> positive(count, false);
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& e : r.row(x))
            if (comp[x] == comp[e.index] && S::compare(e.value, S::one()) == Order::greater) positive[comp[x]] = true;

    auto dense = power_sum(r, n).to_dense();
    auto reach = reachability(r);
    for (std::size_t c = 0; c < count; ++c) {
        if (!positive[c]) continue;
        std::size_t member = 0;
        while (comp[member] != c) ++member;
        for (std::size_t x = 0; x < n; ++x) {
            if (!reach[x][member]) continue;
            for (std::size_t y = 0; y < n; ++y)
                if (reach[member][y]) dense[x][y] = std::numeric_limits<double>::infinity();
        }
    }
    return Matrix<S>::from_dense(dense);
}

} // namespace detail

/// sum_{k>=0} R^k using the semiring's closure strategy.
template <Semiring S>
ClosureMatrix<S> closure_of(const Matrix<S>& r)
{
    constexpr auto strategy = S::flags.closure;
    if constexpr (strategy == ClosureStrategy::finite_sum) {
        return {power_sum(r, r.size()), strategy};
    } else if constexpr (strategy == ClosureStrategy::linear_solve) {
        return {detail::closure_linear_solve<S>(r), strategy};
    } else if constexpr (strategy == ClosureStrategy::positive_cycle) {
        return {detail::closure_positive_cycle<S>(r), strategy};
    } else {
        throw UnsupportedError("the " + std::string(S::name) +
                               " semiring has no closure: unbounded until can only be checked for finite t");
    }
}

/// N[phi1 & !phi2, phi1 & !phi2] for the label-summed matrix of `a`.
template <Semiring S>
ClosureMatrix<S> closure(const Automaton<S>& a, const StateSet& phi1, const StateSet& phi2)
{
    detail::require_size(phi1.size(), a.num_states(), "closure");
    detail::require_size(phi2.size(), a.num_states(), "closure");
    StateSet mid(a.num_states());
    for (std::size_t x = 0; x < mid.size(); ++x) mid[x] = phi1[x] && !phi2[x];
    return closure_of(restrict(a.summed(), mid, mid));
}

} // namespace wamc

#endif // WAMC_CLOSURE_HPP
