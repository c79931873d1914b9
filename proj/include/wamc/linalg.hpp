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

#ifndef WAMC_LINALG_HPP
#define WAMC_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wamc/errors.hpp"
#include "wamc/semiring.hpp"

namespace wamc {

/// Membership indicator over states 0..n-1.
using StateSet = std::vector<bool>;

inline StateSet all_states(std::size_t n) { return StateSet(n, true); }
inline StateSet no_states(std::size_t n) { return StateSet(n, false); }

template <Semiring S>
struct Entry {
    std::size_t index;
    Weight<S> value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

namespace detail {

inline void require_size(std::size_t a, std::size_t b, const char* op)
{
    if (a != b)
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
}

/// Dense scratch row that remembers which slots have been written, so the
/// first contribution is stored verbatim instead of being added to zero.
template <Semiring S>
class Accumulator {
public:
    explicit Accumulator(std::size_t n) : values_(n, S::zero()), touched_(n, false) {}

    void add(std::size_t i, const Weight<S>& w)
    {
        if (touched_[i]) {
            values_[i] = S::plus(values_[i], w);
        } else {
            values_[i] = w;
            touched_[i] = true;
        }
    }

    /// Sorted non-zero entries; resets the accumulator.
    std::vector<Entry<S>> drain()
    {
        std::vector<Entry<S>> out;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!touched_[i]) continue;
            if (!is_zero<S>(values_[i])) out.push_back({i, values_[i]});
            values_[i] = S::zero();
            touched_[i] = false;
        }
        return out;
    }

private:
    std::vector<Weight<S>> values_;
    std::vector<bool> touched_;
};

} // namespace detail

/// Sparse vector over S; absent positions hold zero.
template <Semiring S>
class Vector {
public:
    using value_type = Weight<S>;

    Vector() = default;
    explicit Vector(std::size_t n) : n_(n) {}

    /// Entries must be in range; zeros are dropped, duplicates are combined with plus.
    Vector(std::size_t n, std::vector<Entry<S>> entries) : n_(n)
    {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const Entry<S>& a, const Entry<S>& b) { return a.index < b.index; });
        for (auto& e : entries) {
            if (e.index >= n) throw DimensionError("vector index " + std::to_string(e.index) + " out of range");
            if (!entries_.empty() && entries_.back().index == e.index)
                entries_.back().value = S::plus(entries_.back().value, e.value);
            else
                entries_.push_back(std::move(e));
        }
        std::erase_if(entries_, [](const Entry<S>& e) { return is_zero<S>(e.value); });
    }

    static Vector from_dense(const std::vector<value_type>& dense)
    {
        Vector v(dense.size());
        for (std::size_t i = 0; i < dense.size(); ++i)
            if (!is_zero<S>(dense[i])) v.entries_.push_back({i, dense[i]});
        return v;
    }

    /// e_i: one at position i.
    static Vector unit(std::size_t n, std::size_t i) { return Vector(n, {{i, S::one()}}); }

    /// e^T restricted to `set`: one wherever the set holds.
    static Vector ones(const StateSet& set)
    {
        Vector v(set.size());
        for (std::size_t i = 0; i < set.size(); ++i)
            if (set[i]) v.entries_.push_back({i, S::one()});
        return v;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return entries_.size(); }
    std::span<const Entry<S>> entries() const noexcept { return entries_; }

    value_type at(std::size_t i) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const Entry<S>& e, std::size_t j) { return e.index < j; });
        return it != entries_.end() && it->index == i ? it->value : S::zero();
    }

    std::vector<value_type> to_dense() const
    {
        std::vector<value_type> d(n_, S::zero());
        for (const auto& e : entries_) d[e.index] = e.value;
        return d;
    }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Entry<S>> entries_;
};

/// Square sparse matrix over S, row-major with sorted column indices.
template <Semiring S>
class Matrix {
public:
    using value_type = Weight<S>;
    using Row = std::vector<Entry<S>>;

    Matrix() = default;
    explicit Matrix(std::size_t n) : rows_(n) {}

    /// Rows are sorted, zeros dropped, duplicates combined with plus.
    Matrix(std::size_t n, std::vector<Row> rows) : rows_(std::move(rows))
    {
        detail::require_size(rows_.size(), n, "Matrix");
        for (auto& row : rows_) {
            Vector<S> normalized(n, std::move(row));
            row.assign(normalized.entries().begin(), normalized.entries().end());
        }
    }

    struct Triplet {
        std::size_t row;
        std::size_t col;
        value_type value;
    };

    static Matrix from_triplets(std::size_t n, const std::vector<Triplet>& triplets)
    {
        std::vector<Row> rows(n);
        for (const auto& t : triplets) {
            if (t.row >= n) throw DimensionError("matrix row " + std::to_string(t.row) + " out of range");
            rows[t.row].push_back({t.col, t.value});
        }
        return Matrix(n, std::move(rows));
    }

    static Matrix from_dense(const std::vector<std::vector<value_type>>& dense)
    {
        std::size_t n = dense.size();
        Matrix m(n);
        for (std::size_t x = 0; x < n; ++x) {
            detail::require_size(dense[x].size(), n, "Matrix::from_dense");
            for (std::size_t y = 0; y < n; ++y)
                if (!is_zero<S>(dense[x][y])) m.rows_[x].push_back({y, dense[x][y]});
        }
        return m;
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, S::one()});
        return m;
    }

    /// I[set, set]: one on the diagonal where the set holds.
    static Matrix diagonal(const StateSet& set)
    {
        Matrix m(set.size());
        for (std::size_t i = 0; i < set.size(); ++i)
            if (set[i]) m.rows_[i].push_back({i, S::one()});
        return m;
    }

    std::size_t size() const noexcept { return rows_.size(); }
    std::span<const Entry<S>> row(std::size_t x) const { return rows_.at(x); }

    std::size_t nnz() const noexcept
    {
        std::size_t k = 0;
        for (const auto& r : rows_) k += r.size();
        return k;
    }

    value_type at(std::size_t x, std::size_t y) const
    {
        const auto& r = rows_.at(x);
        auto it = std::lower_bound(r.begin(), r.end(), y, [](const Entry<S>& e, std::size_t j) { return e.index < j; });
        return it != r.end() && it->index == y ? it->value : S::zero();
    }

    std::vector<std::vector<value_type>> to_dense() const
    {
        std::size_t n = size();
        std::vector<std::vector<value_type>> d(n, std::vector<value_type>(n, S::zero()));
        for (std::size_t x = 0; x < n; ++x)
            for (const auto& e : rows_[x]) d[x][e.index] = e.value;
        return d;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::vector<Row> rows_;
};

/// (v M)(y) = sum_x v(x) M(x,y).
template <Semiring S>
Vector<S> vec_mat(const Vector<S>& v, const Matrix<S>& m)
{
    detail::require_size(v.size(), m.size(), "vec_mat");
    detail::Accumulator<S> acc(m.size());
    for (const auto& ve : v.entries())
        for (const auto& me : m.row(ve.index)) acc.add(me.index, S::times(ve.value, me.value));
    return Vector<S>(m.size(), acc.drain());
}

/// (M w)(x) = sum_y M(x,y) w(y).
template <Semiring S>
Vector<S> mat_vec(const Matrix<S>& m, const Vector<S>& w)
{
    detail::require_size(w.size(), m.size(), "mat_vec");
    auto dense = w.to_dense();
    std::vector<Entry<S>> out;
    for (std::size_t x = 0; x < m.size(); ++x) {
        bool any = false;
        Weight<S> sum = S::zero();
        for (const auto& me : m.row(x)) {
            const auto& wy = dense[me.index];
            if (is_zero<S>(wy)) continue;
            auto term = S::times(me.value, wy);
            sum = any ? S::plus(sum, term) : term;
            any = true;
        }
        if (any && !is_zero<S>(sum)) out.push_back({x, sum});
    }
    return Vector<S>(m.size(), std::move(out));
}

/// Row vector times column vector.
template <Semiring S>
Weight<S> dot(const Vector<S>& row, const Vector<S>& col)
{
    detail::require_size(row.size(), col.size(), "dot");
    bool any = false;
    Weight<S> sum = S::zero();
    for (const auto& e : row.entries()) {
        auto c = col.at(e.index);
        if (is_zero<S>(c)) continue;
        auto term = S::times(e.value, c);
        sum = any ? S::plus(sum, term) : term;
        any = true;
    }
    return sum;
}

template <Semiring S>
Vector<S> vec_add(const Vector<S>& a, const Vector<S>& b)
{
    detail::require_size(a.size(), b.size(), "vec_add");
    detail::Accumulator<S> acc(a.size());
    for (const auto& e : a.entries()) acc.add(e.index, e.value);
    for (const auto& e : b.entries()) acc.add(e.index, e.value);
    return Vector<S>(a.size(), acc.drain());
}

template <Semiring S>
Matrix<S> mat_add(const Matrix<S>& a, const Matrix<S>& b)
{
    detail::require_size(a.size(), b.size(), "mat_add");
    std::size_t n = a.size();
    detail::Accumulator<S> acc(n);
    std::vector<typename Matrix<S>::Row> rows(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (const auto& e : a.row(x)) acc.add(e.index, e.value);
        for (const auto& e : b.row(x)) acc.add(e.index, e.value);
        rows[x] = acc.drain();
    }
    return Matrix<S>(n, std::move(rows));
}

/// (A B)(x,z) = sum_y A(x,y) B(y,z).
template <Semiring S>
Matrix<S> mat_mat(const Matrix<S>& a, const Matrix<S>& b)
{
    detail::require_size(a.size(), b.size(), "mat_mat");
    std::size_t n = a.size();
    detail::Accumulator<S> acc(n);
    std::vector<typename Matrix<S>::Row> rows(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (const auto& ae : a.row(x))
            for (const auto& be : b.row(ae.index)) acc.add(be.index, S::times(ae.value, be.value));
        rows[x] = acc.drain();
    }
    return Matrix<S>(n, std::move(rows));
}

/// M^t by iterated squaring; M^0 = I.
template <Semiring S>
Matrix<S> mat_power(const Matrix<S>& m, std::uint64_t t)
{
    Matrix<S> result = Matrix<S>::identity(m.size());
    Matrix<S> base = m;
    while (t > 0) {
        if (t & 1u) result = mat_mat(result, base);
        t >>= 1u;
        if (t > 0) base = mat_mat(base, base);
    }
    return result;
}

/// sum_{k=0}^{t} M^k by repeated multiplication.
template <Semiring S>
Matrix<S> power_sum_accumulate(const Matrix<S>& m, std::uint64_t t)
{
    Matrix<S> sum = Matrix<S>::identity(m.size());
    Matrix<S> power = sum;
    for (std::uint64_t k = 1; k <= t; ++k) {
        power = mat_mat(power, m);
        sum = mat_add(sum, power);
    }
    return sum;
}

/// (M + I)^t, which equals sum_{k=0}^{t} M^k only for idempotent plus.
template <Semiring S>
Matrix<S> power_sum_squaring(const Matrix<S>& m, std::uint64_t t)
{
    return mat_power(mat_add(m, Matrix<S>::identity(m.size())), t);
}

/// sum_{k=0}^{t} M^k, by squaring when the semiring is idempotent.
template <Semiring S>
Matrix<S> power_sum(const Matrix<S>& m, std::uint64_t t)
{
    if constexpr (S::flags.idempotent)
        return power_sum_squaring(m, t);
    else
        return power_sum_accumulate(m, t);
}

/// M[rows, cols]: keeps M(x,y) iff x in rows and y in cols.
template <Semiring S>
Matrix<S> restrict(const Matrix<S>& m, const StateSet& rows, const StateSet& cols)
{
    detail::require_size(rows.size(), m.size(), "restrict");
    detail::require_size(cols.size(), m.size(), "restrict");
    std::size_t n = m.size();
    std::vector<typename Matrix<S>::Row> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (!rows[x]) continue;
        for (const auto& e : m.row(x))
            if (cols[e.index]) out[x].push_back(e);
    }
    return Matrix<S>(n, std::move(out));
}

/// x[set] = x I[set, set].
template <Semiring S>
Vector<S> restrict(const Vector<S>& v, const StateSet& set)
{
    detail::require_size(set.size(), v.size(), "restrict");
    std::vector<Entry<S>> out;
    for (const auto& e : v.entries())
        if (set[e.index]) out.push_back(e);
    return Vector<S>(v.size(), std::move(out));
}

template <Semiring S>
bool near(const Matrix<S>& a, const Matrix<S>& b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
            if (!S::near(a.at(x, y), b.at(x, y), tol)) return false;
    return true;
}

template <Semiring S>
bool near(const Vector<S>& a, const Vector<S>& b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!S::near(a.at(i), b.at(i), tol)) return false;
    return true;
}

} // namespace wamc

#endif // WAMC_LINALG_HPP
