#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace nodehilb {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of rationals. Only ever used inside a single graded
/// piece, so sizes stay small.
class RatMatrix
{
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw std::invalid_argument("RatMatrix: ragged initializer");
            }
            for (long v : row) {
                data_.emplace_back(v);
            }
        }
    }

    static RatMatrix identity(std::size_t n)
    {
        RatMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = 1;
        }
        return out;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static RatMatrix from_columns(std::size_t rows, std::span<const RatVector> columns)
    {
        RatMatrix out(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows) {
                throw std::invalid_argument("RatMatrix::from_columns: column length mismatch");
            }
            for (std::size_t r = 0; r < rows; ++r) {
                out(r, c) = columns[c][r];
            }
        }
        return out;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const
    {
        for (const auto& v : data_) {
            if (sgn(v) != 0) {
                return false;
            }
        }
        return true;
    }

    RatVector column(std::size_t c) const
    {
        RatVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

    RatVector operator*(const RatVector& v) const
    {
        if (v.size() != cols_) {
            throw std::invalid_argument("RatMatrix * vector: dimension mismatch");
        }
        RatVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (sgn((*this)(r, c)) != 0) {
                    out[r] += (*this)(r, c) * v[c];
                }
            }
        }
        return out;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("RatMatrix product: dimension mismatch (" + std::to_string(a.cols_) +
                                        " vs " + std::to_string(b.rows_) + ")");
        }
        RatMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw std::invalid_argument("RatMatrix difference: shape mismatch");
        }
        RatMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            out.data_[i] = a.data_[i] - b.data_[i];
        }
        return out;
    }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    RatMatrix reduced;               // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of row r, for r < rank
    std::size_t rank() const { return pivots.size(); }
};

/// Exact Gauss-Jordan elimination. Pivots are chosen left to right, so the
/// column order decides which coordinates become pivots.
inline RowEchelon rref(RatMatrix m)
{
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != row) {
            for (std::size_t c = col; c < m.cols(); ++c) {
                std::swap(m(pivot, c), m(row, c));
            }
        }
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) {
            m(row, c) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) {
                continue;
            }
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                m(r, c) -= f * m(row, c);
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

/// Basis of the null space, one vector per free column. Empty iff injective.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m)
{
    const auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) {
        is_pivot[p] = true;
    }
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        RatVector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            v[ech.pivots[r]] = -ech.reduced(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of a x = b (free variables set to zero), or nullopt.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b)
{
    if (b.size() != a.rows()) {
        throw std::invalid_argument("solve: right-hand side has wrong length");
    }
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            aug(r, c) = a(r, c);
        }
        aug(r, a.cols()) = b[r];
    }
    const auto ech = rref(std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) {
        return std::nullopt;
    }
    RatVector x(a.cols());
    for (std::size_t r = 0; r < ech.rank(); ++r) {
        x[ech.pivots[r]] = ech.reduced(r, a.cols());
    }
    return x;
}

/// Expresses `target` in the span of sparse vectors keyed by `Key`. The
/// coordinate set is the union of all supports.
template <typename Key, typename Compare>
std::optional<RatVector> solve_in_span(std::span<const std::map<Key, Rational, Compare>* const> vectors,
                                       const std::map<Key, Rational, Compare>& target)
{
    std::map<Key, std::size_t, Compare> index;
    auto register_keys = [&](const std::map<Key, Rational, Compare>& v) {
        for (const auto& kv : v) {
            index.try_emplace(kv.first, 0);
        }
    };
    for (const auto* v : vectors) {
        register_keys(*v);
    }
    register_keys(target);
    std::size_t next = 0;
    for (auto& kv : index) {
        kv.second = next++;
    }
    RatMatrix a(index.size(), vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        for (const auto& [key, val] : *vectors[c]) {
            a(index.at(key), c) = val;
        }
    }
    RatVector b(index.size());
    for (const auto& [key, val] : target) {
        b[index.at(key)] = val;
    }
    return solve(a, b);
}

/// Coefficients expressing `target` in span(vectors), or nullopt (not in span).
/// All nonzero inputs must be homogeneous of one common bidegree.
inline std::optional<RatVector> span_solve(std::span<const Poly> vectors, const Poly& target)
{
    std::optional<Bidegree> common;
    auto check = [&](const Poly& p) {
        if (p.is_zero()) {
            return;
        }
        const auto bd = p.bidegree();
        if (!bd) {
            throw std::invalid_argument("span_solve: inhomogeneous input " + p.to_string());
        }
        if (common && *common != *bd) {
            throw std::invalid_argument("span_solve: inputs of different bidegrees");
        }
        common = bd;
    };
    for (const auto& v : vectors) {
        check(v);
    }
    check(target);
    std::vector<const Poly::TermMap*> cols;
    cols.reserve(vectors.size());
    for (const auto& v : vectors) {
        cols.push_back(&v.terms());
    }
    return solve_in_span<Monomial, GrlexGreater>(cols, target.terms());
}

} // namespace nodehilb
