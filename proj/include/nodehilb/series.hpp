#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "node_module.hpp"
#include "rational.hpp"

// Poincare series of the node's module, truncated in q (number of points).
// t only ever appears squared, so coefficients are indexed by the half
// degree j of t^(2j).

namespace nodehilb::series {

/// Polynomial in T = t^2.
class TPoly
{
public:
    TPoly() = default;
    explicit TPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// 1 + T + ... + T^(len-1); zero when len <= 0.
    static TPoly geometric(int len)
    {
        return len <= 0 ? TPoly() : TPoly(std::vector<Rational>(static_cast<std::size_t>(len), Rational(1)));
    }

    static TPoly monomial(std::size_t j, const Rational& c = 1)
    {
        std::vector<Rational> v(j + 1);
        v[j] = c;
        return TPoly(std::move(v));
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Rational coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Rational(0); }

    /// Degree in T; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    bool is_palindromic() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != coeffs_[coeffs_.size() - 1 - i]) {
                return false;
            }
        }
        return true;
    }

    Rational at_one() const
    {
        Rational s = 0;
        for (const auto& c : coeffs_) {
            s += c;
        }
        return s;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b)
    {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = a.coeff(i) + b.coeff(i);
        }
        return TPoly(std::move(v));
    }

    friend TPoly operator-(const TPoly& a, const TPoly& b)
    {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = a.coeff(i) - b.coeff(i);
        }
        return TPoly(std::move(v));
    }

    friend TPoly operator*(const TPoly& a, const TPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t k = 0; k < b.coeffs_.size(); ++k) {
                v[i + k] += a.coeffs_[i] * b.coeffs_[k];
            }
        }
        return TPoly(std::move(v));
    }

    TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
    TPoly& operator-=(const TPoly& o) { return *this = *this - o; }

    friend bool operator==(const TPoly&, const TPoly&) = default;

    /// "1 + 3t^2 + t^4"
    std::string to_string() const
    {
        if (coeffs_.empty()) {
            return "0";
        }
        std::string out;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const Rational& c = coeffs_[j];
            if (sgn(c) == 0) {
                continue;
            }
            if (!out.empty()) {
                out += sgn(c) < 0 ? " - " : " + ";
            } else if (sgn(c) < 0) {
                out += '-';
            }
            const Rational mag = abs(c);
            if (j == 0) {
                out += nodehilb::to_string(mag);
                continue;
            }
            if (mag != 1) {
                out += nodehilb::to_string(mag);
            }
            out += j == 1 ? std::string("t^2") : "t^" + std::to_string(2 * j);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

/// Exact polynomial in q and T = t^2, keyed by (q exponent, T exponent).
class BiPoly
{
public:
    using TermMap = std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>;

    BiPoly() = default;

    static BiPoly term(std::uint32_t qe, std::uint32_t te, const Rational& c)
    {
        BiPoly p;
        p.add(qe, te, c);
        return p;
    }
    static BiPoly one() { return term(0, 0, 1); }
    static BiPoly q() { return term(1, 0, 1); }
    static BiPoly t2() { return term(0, 1, 1); }

    const TermMap& terms() const { return terms_; }

    Rational coeff(std::uint32_t qe, std::uint32_t te) const
    {
        auto it = terms_.find({qe, te});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(std::uint32_t qe, std::uint32_t te, const Rational& c)
    {
        if (sgn(c) == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace({qe, te}, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b)
    {
        for (const auto& [k, c] : b.terms_) {
            a.add(k.first, k.second, c);
        }
        return a;
    }

    friend BiPoly operator-(BiPoly a, const BiPoly& b)
    {
        for (const auto& [k, c] : b.terms_) {
            a.add(k.first, k.second, -c);
        }
        return a;
    }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        BiPoly out;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return out;
    }

    BiPoly pow(std::uint32_t e) const
    {
        BiPoly out = one();
        for (std::uint32_t i = 0; i < e; ++i) {
            out = out * *this;
        }
        return out;
    }

    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    TermMap terms_;
};

struct RationalFunctionSpec {
    BiPoly numerator;
    BiPoly denominator;
};

/// Truncated series sum c[n][j] q^n t^(2j), 0 <= n, j <= order.
class Series2
{
public:
    explicit Series2(int order = 0) : order_(order)
    {
        if (order < 0) {
            throw std::invalid_argument("Series2: negative order");
        }
        const auto side = static_cast<std::size_t>(order) + 1;
        c_.assign(side * side, Rational(0));
    }

    /// Truncation of a polynomial; terms beyond the window are dropped.
    static Series2 from_poly(const BiPoly& p, int order)
    {
        Series2 s(order);
        for (const auto& [k, c] : p.terms()) {
            if (static_cast<int>(k.first) <= order && static_cast<int>(k.second) <= order) {
                s.at(static_cast<int>(k.first), static_cast<int>(k.second)) += c;
            }
        }
        return s;
    }

    int order() const { return order_; }

    Rational& at(int n, int j) { return c_[index(n, j)]; }
    const Rational& at(int n, int j) const { return c_[index(n, j)]; }

    /// Row n as a polynomial in t^2.
    TPoly row(int n) const
    {
        std::vector<Rational> v(static_cast<std::size_t>(order_) + 1);
        for (int j = 0; j <= order_; ++j) {
            v[static_cast<std::size_t>(j)] = at(n, j);
        }
        return TPoly(std::move(v));
    }

    void add_row(int n, const TPoly& p)
    {
        for (int j = 0; j <= std::min(order_, p.degree()); ++j) {
            at(n, j) += p.coeff(static_cast<std::size_t>(j));
        }
    }

    friend Series2 operator+(const Series2& a, const Series2& b)
    {
        a.check_same(b);
        Series2 out(a.order_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            out.c_[i] = a.c_[i] + b.c_[i];
        }
        return out;
    }

    friend Series2 operator-(const Series2& a, const Series2& b)
    {
        a.check_same(b);
        Series2 out(a.order_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            out.c_[i] = a.c_[i] - b.c_[i];
        }
        return out;
    }

    friend Series2 operator*(const Series2& a, const Series2& b)
    {
        a.check_same(b);
        const int N = a.order_;
        Series2 out(N);
        for (int n1 = 0; n1 <= N; ++n1) {
            for (int j1 = 0; j1 <= N; ++j1) {
                const Rational& ca = a.at(n1, j1);
                if (sgn(ca) == 0) {
                    continue;
                }
                for (int n2 = 0; n1 + n2 <= N; ++n2) {
                    for (int j2 = 0; j1 + j2 <= N; ++j2) {
                        const Rational& cb = b.at(n2, j2);
                        if (sgn(cb) != 0) {
                            out.at(n1 + n2, j1 + j2) += ca * cb;
                        }
                    }
                }
            }
        }
        return out;
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    Series2 inverse() const
    {
        const Rational& c0 = at(0, 0);
        if (sgn(c0) == 0) {
            throw std::domain_error("Series2::inverse: constant term is zero (non-invertible denominator)");
        }
        const int N = order_;
        Series2 out(N);
        for (int n = 0; n <= N; ++n) {
            for (int j = 0; j <= N; ++j) {
                Rational acc = (n == 0 && j == 0) ? Rational(1) : Rational(0);
                for (int a = 0; a <= n; ++a) {
                    for (int b = 0; b <= j; ++b) {
                        if (a == 0 && b == 0) {
                            continue;
                        }
                        const Rational& d = at(a, b);
                        if (sgn(d) != 0) {
                            acc -= d * out.at(n - a, j - b);
                        }
                    }
                }
                out.at(n, j) = acc / c0;
            }
        }
        return out;
    }

    friend bool operator==(const Series2&, const Series2&) = default;

private:
    std::size_t index(int n, int j) const
    {
        if (n < 0 || j < 0 || n > order_ || j > order_) {
            throw std::out_of_range("Series2: coefficient (" + std::to_string(n) + "," + std::to_string(j) +
                                    ") outside truncation window");
        }
        return static_cast<std::size_t>(n) * (static_cast<std::size_t>(order_) + 1) + static_cast<std::size_t>(j);
    }

    void check_same(const Series2& o) const
    {
        if (order_ != o.order_) {
            throw std::invalid_argument("Series2: mismatched truncation orders (" + std::to_string(order_) + " vs " +
                                        std::to_string(o.order_) + ")");
        }
    }

    int order_;
    std::vector<Rational> c_;
};

struct SeriesComparison {
    bool equal = true;
    std::optional<std::pair<int, int>> first_difference; // (n, j), smallest n then j
};

inline SeriesComparison series_equal(const Series2& a, const Series2& b)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument("series_equal: mismatched truncation orders");
    }
    for (int n = 0; n <= a.order(); ++n) {
        for (int j = 0; j <= a.order(); ++j) {
            if (a.at(n, j) != b.at(n, j)) {
                return {false, std::make_pair(n, j)};
            }
        }
    }
    return {};
}

inline Series2 expand(const RationalFunctionSpec& rf, int order)
{
    const Series2 den = Series2::from_poly(rf.denominator, order);
    if (sgn(den.at(0, 0)) == 0) {
        throw std::domain_error("expand: denominator has zero constant term");
    }
    return Series2::from_poly(rf.numerator, order) * den.inverse();
}

/// (q^2 t^2 - q + 1) / ((1 - q)^2 (1 - q t^2)^2)
inline RationalFunctionSpec closed_form_spec()
{
    const BiPoly one = BiPoly::one();
    const BiPoly q = BiPoly::q();
    const BiPoly qt = q * BiPoly::t2();
    return {q * qt - q + one, (one - q).pow(2) * (one - qt).pow(2)};
}

inline Series2 closed_form_pv(int order) { return expand(closed_form_spec(), order); }

/// Poincare polynomial of the component M_{n,k}, a blow-up of P^(n-k) x P^k
/// along P^(n-k-1) x P^(k-1).
inline TPoly component_poincare(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        throw std::out_of_range("component_poincare: need 0 <= k <= n");
    }
    return TPoly::monomial(1) * TPoly::geometric(k) * TPoly::geometric(n - k) +
           TPoly::geometric(n - k + 1) * TPoly::geometric(k + 1);
}

/// Poincare polynomial of E^n_{k,k+1} = M_{n,k} \cap M_{n,k+1}, i.e. P^(n-k-1) x P^k.
inline TPoly intersection_poincare(int n, int k)
{
    if (n < 1 || k < 0 || k > n - 1) {
        throw std::out_of_range("intersection_poincare: need 0 <= k <= n-1");
    }
    return TPoly::geometric(k + 1) * TPoly::geometric(n - k);
}

/// Mayer-Vietoris row: sum of component polynomials minus intersections.
inline TPoly mv_row(int n)
{
    TPoly row;
    for (int k = 0; k <= n; ++k) {
        row += component_poincare(n, k);
    }
    for (int k = 0; k + 1 <= n; ++k) {
        row -= intersection_poincare(n, k);
    }
    return row;
}

inline Series2 mv_pv(int order)
{
    Series2 s(order);
    for (int n = 0; n <= order; ++n) {
        s.add_row(n, mv_row(n));
    }
    return s;
}

/// Generating function of the punctual Hilbert schemes at the node:
/// 1 + sum_{m>=1} q^m (1 + (m-1) t^2).
inline Series2 punctual_factor(int order)
{
    Series2 s(order);
    s.at(0, 0) = 1;
    for (int m = 1; m <= order; ++m) {
        s.at(m, 0) += 1;
        if (m >= 2 && order >= 1) {
            s.at(m, 1) += m - 1;
        }
    }
    return s;
}

/// Generating function of the smooth locus (two affine lines): 1/(1 - q t^2)^2.
inline Series2 smooth_locus_factor(int order)
{
    const BiPoly qt = BiPoly::q() * BiPoly::t2();
    return expand({BiPoly::one(), (BiPoly::one() - qt).pow(2)}, order);
}

/// Motivic descent for a curve with a single node: smooth-locus series times
/// the punctual series at the singular point.
inline Series2 paving_pv(int order) { return smooth_locus_factor(order) * punctual_factor(order); }

/// V'' = Q[x1,x2,y1,y2]: 1 / ((1-q)^2 (1-qt^2)^2).
inline Series2 free_module_pv(int order)
{
    const BiPoly one = BiPoly::one();
    const BiPoly q = BiPoly::q();
    const BiPoly qt = q * BiPoly::t2();
    return expand({one, (one - q).pow(2) * (one - qt).pow(2)}, order);
}

/// U, free over Q[x1,x2,y1+y2] on x1-x2 in bidegree (1,0): q / ((1-q)^2 (1-qt^2)).
inline Series2 submodule_pv(int order)
{
    const BiPoly one = BiPoly::one();
    const BiPoly q = BiPoly::q();
    const BiPoly qt = q * BiPoly::t2();
    return expand({q, (one - q).pow(2) * (one - qt)}, order);
}

inline Series2 module_pv(int order) { return free_module_pv(order) - submodule_pv(order); }

struct EnumerationMismatch {
    std::string which; // "V''", "U" or "V'"
    int n = 0;
    int d = 0;
    Rational series_value;
    std::size_t enumerated = 0;
};

struct ModuleIdentityReport {
    int order = 0;
    int enumeration_bound = 0;
    SeriesComparison difference_vs_closed; // P_V'' - P_U against the closed form
    std::optional<EnumerationMismatch> enumeration_mismatch;

    bool all_pass() const { return difference_vs_closed.equal && !enumeration_mismatch; }
};

/// P_V'' - P_U = P_V to the given order, and the three series against the
/// graded dimensions enumerated by `module` for n <= enumeration_bound.
inline ModuleIdentityReport module_pv_identity(int order, const node::NodeModule& module, int enumeration_bound)
{
    if (enumeration_bound > module.n_limit()) {
        throw std::invalid_argument("module_pv_identity: enumeration bound beyond the module's precomputed pieces");
    }
    ModuleIdentityReport report;
    report.order = order;
    report.enumeration_bound = enumeration_bound;
    const Series2 vpp = free_module_pv(order);
    const Series2 u = submodule_pv(order);
    const Series2 closed = closed_form_pv(order);
    report.difference_vs_closed = series_equal(vpp - u, closed);

    const int bound = std::min(order, enumeration_bound);
    for (int n = 0; n <= bound && !report.enumeration_mismatch; ++n) {
        for (int j = 0; j <= order && !report.enumeration_mismatch; ++j) {
            const auto& pc = module.piece(n, j);
            auto check = [&](const char* which, const Rational& value, std::size_t enumerated) {
                if (!report.enumeration_mismatch && value != Rational(static_cast<long>(enumerated))) {
                    report.enumeration_mismatch = EnumerationMismatch{which, n, 2 * j, value, enumerated};
                }
            };
            check("V''", vpp.at(n, j), pc.dim_vpp());
            check("U", u.at(n, j), pc.dim_u());
            check("V'", closed.at(n, j), pc.dim());
        }
    }
    return report;
}

} // namespace nodehilb::series
