#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace nodehilb {

/// (number of points, homological degree). Homological degree is always even
/// for the spaces modelled here.
struct Bidegree {
    int n = 0;
    int d = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.n + b.n, a.d + b.d}; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// Exponent vector over x_1..x_m, y_1..y_m (in that order).
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t size() const { return exps.size(); }

    std::uint32_t total_degree() const
    {
        return std::accumulate(exps.begin(), exps.end(), std::uint32_t{0});
    }

    // x-part and y-part degrees, for an ambient with m = size()/2.
    std::uint32_t x_degree() const
    {
        return std::accumulate(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(exps.size() / 2),
                               std::uint32_t{0});
    }
    std::uint32_t y_degree() const { return total_degree() - x_degree(); }

    /// x^a y^b has bidegree (|a|+|b|, 2|b|).
    Bidegree bidegree() const
    {
        return {static_cast<int>(total_degree()), 2 * static_cast<int>(y_degree())};
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            out.exps[i] = a.exps[i] + b.exps[i];
        }
        return out;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, x_1 > ... > x_m > y_1 > ... > y_m. Used as a
/// "greater first" comparator so that maps iterate from the leading monomial
/// downwards.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        const auto da = a.total_degree();
        const auto db = b.total_degree();
        if (da != db) {
            return da > db;
        }
        return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
    }
};

inline std::string variable_name(std::size_t m, std::size_t var)
{
    return (var < m ? "x" : "y") + std::to_string(var % m + 1);
}

inline std::string to_string(const Monomial& mono)
{
    const std::size_t m = mono.size() / 2;
    std::string out;
    for (std::size_t v = 0; v < mono.size(); ++v) {
        if (mono.exps[v] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += variable_name(m, v);
        if (mono.exps[v] > 1) {
            out += '^' + std::to_string(mono.exps[v]);
        }
    }
    return out;
}

namespace detail {

// Shared by polynomial and Weyl rendering: "c*word" with signs pulled out.
template <typename Terms, typename WordFn>
std::string render_terms(const Terms& terms, WordFn&& word)
{
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms) {
        const bool negative = sgn(c) < 0;
        if (first) {
            if (negative) {
                out += '-';
            }
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational mag = abs(c);
        const std::string w = word(key);
        if (w.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += w;
        } else {
            out += to_string(mag) + '*' + w;
        }
    }
    return out;
}

} // namespace detail

/// Element of Q[x_1..x_m, y_1..y_m]. No zero coefficients are ever stored.
class Poly
{
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit Poly(std::size_t m = 0) : m_(m) {}

    static Poly constant(std::size_t m, const Rational& c)
    {
        Poly p(m);
        p.add_term(Monomial(2 * m), c);
        return p;
    }

    /// Variable by 0-based index into (x_1..x_m, y_1..y_m).
    static Poly variable(std::size_t m, std::size_t var)
    {
        if (var >= 2 * m) {
            throw std::out_of_range("Poly::variable: index " + std::to_string(var) + " out of range");
        }
        Monomial mono(2 * m);
        mono.exps[var] = 1;
        return monomial(m, std::move(mono), 1);
    }

    // 1-based, as in the mathematical notation.
    static Poly x(std::size_t m, std::size_t i) { return variable(m, i - 1); }
    static Poly y(std::size_t m, std::size_t i) { return variable(m, m + i - 1); }

    static Poly monomial(std::size_t m, Monomial mono, const Rational& c)
    {
        if (mono.size() != 2 * m) {
            throw std::invalid_argument("Poly::monomial: exponent vector has wrong length");
        }
        Poly p(m);
        p.add_term(std::move(mono), c);
        return p;
    }

    std::size_t ambient() const { return m_; }
    std::size_t num_vars() const { return 2 * m_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Monomial& mono) const
    {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Monomial mono, const Rational& c)
    {
        if (is_zero_q(c)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
        if (!inserted) {
            it->second += c;
            if (is_zero_q(it->second)) {
                terms_.erase(it);
            }
        }
    }

    Poly& operator+=(const Poly& other)
    {
        check_same(other, "poly_add");
        for (const auto& [mono, c] : other.terms_) {
            add_term(mono, c);
        }
        return *this;
    }

    Poly& operator-=(const Poly& other)
    {
        check_same(other, "poly_sub");
        for (const auto& [mono, c] : other.terms_) {
            add_term(mono, -c);
        }
        return *this;
    }

    Poly& operator*=(const Rational& s)
    {
        if (is_zero_q(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [mono, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check_same(b, "poly_mul");
        Poly out(a.m_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                out.add_term(ma * mb, ca * cb);
            }
        }
        return out;
    }

    Poly pow(std::uint32_t e) const
    {
        Poly out = constant(m_, 1);
        for (std::uint32_t i = 0; i < e; ++i) {
            out = out * *this;
        }
        return out;
    }

    /// Formal partial derivative in the variable with 0-based index `var`.
    Poly derivative(std::size_t var) const
    {
        if (var >= num_vars()) {
            throw std::out_of_range("poly_derivative: variable index " + std::to_string(var) + " out of range");
        }
        Poly out(m_);
        for (const auto& [mono, c] : terms_) {
            const auto e = mono.exps[var];
            if (e == 0) {
                continue;
            }
            Monomial lowered = mono;
            lowered.exps[var] = e - 1;
            out.add_term(std::move(lowered), c * e);
        }
        return out;
    }

    bool is_homogeneous() const
    {
        if (terms_.empty()) {
            return true;
        }
        const auto bd = terms_.begin()->first.bidegree();
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return t.first.bidegree() == bd; });
    }

    /// Bidegree of a nonzero homogeneous polynomial; nullopt otherwise.
    std::optional<Bidegree> bidegree() const
    {
        if (terms_.empty() || !is_homogeneous()) {
            return std::nullopt;
        }
        return terms_.begin()->first.bidegree();
    }

    std::string to_string() const
    {
        return detail::render_terms(terms_, [](const Monomial& mono) { return nodehilb::to_string(mono); });
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.m_ == b.m_ && a.terms_ == b.terms_; }

private:
    static bool is_zero_q(const Rational& c) { return sgn(c) == 0; }

    void check_same(const Poly& other, const char* op) const
    {
        if (m_ != other.m_) {
            throw std::invalid_argument(std::string(op) + ": mismatched ambient variable count (" +
                                        std::to_string(m_) + " vs " + std::to_string(other.m_) + ")");
        }
    }

    std::size_t m_;
    TermMap terms_;
};

inline Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
inline Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly poly_derivative(const Poly& p, std::size_t var) { return p.derivative(var); }

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

} // namespace nodehilb
