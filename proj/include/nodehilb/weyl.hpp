#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace nodehilb {

/// Normal-ordered word x^a y^b dx^c dy^e in the Weyl algebra of A^{2m}.
/// Stored as one exponent vector of length 4m laid out as [x | y | dx | dy].
class WeylMonomial
{
public:
    WeylMonomial() = default;
    explicit WeylMonomial(std::size_t m) : m_(m), exps_(4 * m, 0) {}

    std::size_t ambient() const { return m_; }

    // Blocks, 0-based index within each block.
    std::uint32_t& x(std::size_t i) { return exps_[i]; }
    std::uint32_t& y(std::size_t i) { return exps_[m_ + i]; }
    std::uint32_t& dx(std::size_t i) { return exps_[2 * m_ + i]; }
    std::uint32_t& dy(std::size_t i) { return exps_[3 * m_ + i]; }
    std::uint32_t x(std::size_t i) const { return exps_[i]; }
    std::uint32_t y(std::size_t i) const { return exps_[m_ + i]; }
    std::uint32_t dx(std::size_t i) const { return exps_[2 * m_ + i]; }
    std::uint32_t dy(std::size_t i) const { return exps_[3 * m_ + i]; }

    // Position symbol p in [0, 2m) pairs with derivation symbol 2m + p.
    std::uint32_t& slot(std::size_t s) { return exps_[s]; }
    std::uint32_t slot(std::size_t s) const { return exps_[s]; }

    /// Total degree in all 4m symbols.
    std::uint32_t bernstein_degree() const
    {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
    }

    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    friend bool operator==(const WeylMonomial&, const WeylMonomial&) = default;

    std::string to_string() const
    {
        static constexpr const char* prefixes[4] = {"x", "y", "dx", "dy"};
        std::string out;
        for (std::size_t s = 0; s < exps_.size(); ++s) {
            if (exps_[s] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += '*';
            }
            out += prefixes[s / m_] + std::to_string(s % m_ + 1);
            if (exps_[s] > 1) {
                out += '^' + std::to_string(exps_[s]);
            }
        }
        return out;
    }

private:
    std::size_t m_ = 0;
    std::vector<std::uint32_t> exps_;
};

/// Bernstein degree first, then lexicographic in [x | y | dx | dy]; greater first.
struct WeylOrder {
    bool operator()(const WeylMonomial& a, const WeylMonomial& b) const
    {
        const auto da = a.bernstein_degree();
        const auto db = b.bernstein_degree();
        if (da != db) {
            return da > db;
        }
        const auto& ea = a.exponents();
        const auto& eb = b.exponents();
        return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
    }
};

class WeylElement
{
public:
    using TermMap = std::map<WeylMonomial, Rational, WeylOrder>;

    explicit WeylElement(std::size_t m = 0) : m_(m) {}

    static WeylElement constant(std::size_t m, const Rational& c)
    {
        WeylElement w(m);
        w.add_term(WeylMonomial(m), c);
        return w;
    }

    static WeylElement term(WeylMonomial mono, const Rational& c)
    {
        WeylElement w(mono.ambient());
        w.add_term(std::move(mono), c);
        return w;
    }

    // Single symbols, 1-based index.
    static WeylElement x(std::size_t m, std::size_t i) { return symbol(m, 0, i); }
    static WeylElement y(std::size_t m, std::size_t i) { return symbol(m, 1, i); }
    static WeylElement dx(std::size_t m, std::size_t i) { return symbol(m, 2, i); }
    static WeylElement dy(std::size_t m, std::size_t i) { return symbol(m, 3, i); }

    /// Multiplication operator by a polynomial.
    static WeylElement from_poly(const Poly& p)
    {
        const std::size_t m = p.ambient();
        WeylElement w(m);
        for (const auto& [mono, c] : p.terms()) {
            WeylMonomial wm(m);
            for (std::size_t v = 0; v < 2 * m; ++v) {
                wm.slot(v) = mono.exps[v];
            }
            w.add_term(std::move(wm), c);
        }
        return w;
    }

    std::size_t ambient() const { return m_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const WeylMonomial& mono) const
    {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(WeylMonomial mono, const Rational& c)
    {
        if (sgn(c) == 0) {
            return;
        }
        if (mono.ambient() != m_) {
            throw std::invalid_argument("WeylElement::add_term: monomial has wrong ambient");
        }
        auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    WeylElement& operator+=(const WeylElement& o)
    {
        check_same(o, "weyl_add");
        for (const auto& [mono, c] : o.terms_) {
            add_term(mono, c);
        }
        return *this;
    }

    WeylElement& operator-=(const WeylElement& o)
    {
        check_same(o, "weyl_sub");
        for (const auto& [mono, c] : o.terms_) {
            add_term(mono, -c);
        }
        return *this;
    }

    WeylElement& operator*=(const Rational& s)
    {
        if (sgn(s) == 0) {
            terms_.clear();
        }
        for (auto& [mono, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(WeylElement a, const Rational& s) { return a *= s; }
    friend WeylElement operator*(const Rational& s, WeylElement a) { return a *= s; }

    /// Normal-ordered product. Moving dx_i^g past x_i^a uses
    ///   d^g u^a = sum_k C(g,k) a!/(a-k)! u^(a-k) d^(g-k),
    /// which is the closed form of repeatedly applying d u = u d + 1.
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b)
    {
        a.check_same(b, "weyl_mul");
        WeylElement out(a.m_);
        for (const auto& [la, ca] : a.terms_) {
            for (const auto& [rb, cb] : b.terms_) {
                multiply_words(la, rb, ca * cb, out);
            }
        }
        return out;
    }

    WeylElement pow(std::uint32_t e) const
    {
        WeylElement out = constant(m_, 1);
        for (std::uint32_t i = 0; i < e; ++i) {
            out = out * *this;
        }
        return out;
    }

    /// Largest Bernstein degree among the terms (0 for the zero element).
    std::uint32_t filtration_degree() const
    {
        return terms_.empty() ? 0 : terms_.begin()->first.bernstein_degree();
    }

    std::string to_string() const
    {
        return detail::render_terms(terms_, [](const WeylMonomial& w) { return w.to_string(); });
    }

    friend bool operator==(const WeylElement& a, const WeylElement& b)
    {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

private:
    static WeylElement symbol(std::size_t m, std::size_t block, std::size_t i)
    {
        if (i < 1 || i > m) {
            throw std::out_of_range("WeylElement: variable index " + std::to_string(i) + " out of range 1.." +
                                    std::to_string(m));
        }
        WeylMonomial mono(m);
        mono.slot(block * m + i - 1) = 1;
        return term(std::move(mono), 1);
    }

    static void multiply_words(const WeylMonomial& left, const WeylMonomial& right, const Rational& coeff,
                               WeylElement& out)
    {
        const std::size_t m = left.ambient();
        WeylMonomial base(m);
        for (std::size_t s = 0; s < 4 * m; ++s) {
            base.slot(s) = left.slot(s) + right.slot(s);
        }
        expand_pair(left, right, 0, base, Rational(coeff), out);
    }

    // Recursion over the 2m commuting (position, derivation) pairs.
    static void expand_pair(const WeylMonomial& left, const WeylMonomial& right, std::size_t pair,
                            WeylMonomial& current, const Rational& coeff, WeylElement& out)
    {
        const std::size_t m = left.ambient();
        if (pair == 2 * m) {
            out.add_term(current, coeff);
            return;
        }
        const std::size_t pos = pair;
        const std::size_t der = 2 * m + pair;
        const std::uint32_t g = left.slot(der);
        const std::uint32_t a = right.slot(pos);
        const std::uint32_t kmax = std::min(g, a);
        for (std::uint32_t k = 0; k <= kmax; ++k) {
            const Integer mult = binomial(g, k) * falling_factorial(a, k);
            current.slot(pos) -= k;
            current.slot(der) -= k;
            expand_pair(left, right, pair + 1, current, coeff * Rational(mult), out);
            current.slot(pos) += k;
            current.slot(der) += k;
        }
    }

    void check_same(const WeylElement& o, const char* op) const
    {
        if (m_ != o.m_) {
            throw std::invalid_argument(std::string(op) + ": mismatched ambient (" + std::to_string(m_) + " vs " +
                                        std::to_string(o.m_) + ")");
        }
    }

    std::size_t m_;
    TermMap terms_;
};

inline WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) { return a * b; }

inline WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

inline std::ostream& operator<<(std::ostream& os, const WeylElement& w) { return os << w.to_string(); }

/// Differential-operator action on Q[x_1..x_m, y_1..y_m].
inline Poly act(const WeylElement& w, const Poly& p)
{
    if (w.ambient() != p.ambient()) {
        throw std::invalid_argument("act: mismatched ambient (" + std::to_string(w.ambient()) + " vs " +
                                    std::to_string(p.ambient()) + ")");
    }
    const std::size_t m = w.ambient();
    Poly out(m);
    for (const auto& [wm, cw] : w.terms()) {
        for (const auto& [pm, cp] : p.terms()) {
            Rational c = cw * cp;
            Monomial result = pm;
            bool vanishes = false;
            for (std::size_t v = 0; v < 2 * m && !vanishes; ++v) {
                const std::uint32_t order = wm.slot(2 * m + v);
                if (order > result.exps[v]) {
                    vanishes = true;
                    break;
                }
                c *= Rational(falling_factorial(result.exps[v], order));
                result.exps[v] -= order;
            }
            if (vanishes) {
                continue;
            }
            for (std::size_t v = 0; v < 2 * m; ++v) {
                result.exps[v] += wm.slot(v);
            }
            out.add_term(std::move(result), c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The subalgebra A_m = < x_i, d_i = dy_i, mu_plus = sum y_i, mu_minus = sum dx_i >

struct AGenerator {
    enum class Kind { X, D, MuPlus, MuMinus };

    Kind kind;
    std::size_t index = 0; // 1-based for X and D, unused otherwise

    static AGenerator x(std::size_t i) { return {Kind::X, i}; }
    static AGenerator d(std::size_t i) { return {Kind::D, i}; }
    static AGenerator mu_plus() { return {Kind::MuPlus, 0}; }
    static AGenerator mu_minus() { return {Kind::MuMinus, 0}; }

    Bidegree bidegree() const
    {
        switch (kind) {
        case Kind::X:
            return {1, 0};
        case Kind::D:
            return {-1, -2};
        case Kind::MuPlus:
            return {1, 2};
        case Kind::MuMinus:
            return {-1, 0};
        }
        return {};
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::X:
            return "x" + std::to_string(index);
        case Kind::D:
            return "d" + std::to_string(index);
        case Kind::MuPlus:
            return "mu_plus";
        case Kind::MuMinus:
            return "mu_minus";
        }
        return {};
    }

    friend bool operator==(const AGenerator&, const AGenerator&) = default;
};

/// All 2m + 2 generators in a fixed order: x_1..x_m, d_1..d_m, mu_plus, mu_minus.
inline std::vector<AGenerator> a_generators(std::size_t m)
{
    std::vector<AGenerator> out;
    for (std::size_t i = 1; i <= m; ++i) {
        out.push_back(AGenerator::x(i));
    }
    for (std::size_t i = 1; i <= m; ++i) {
        out.push_back(AGenerator::d(i));
    }
    out.push_back(AGenerator::mu_plus());
    out.push_back(AGenerator::mu_minus());
    return out;
}

inline WeylElement generator_element(const AGenerator& g, std::size_t m)
{
    if (m == 0) {
        throw std::invalid_argument("generator_element: ambient must be at least 1");
    }
    switch (g.kind) {
    case AGenerator::Kind::X:
        return WeylElement::x(m, g.index);
    case AGenerator::Kind::D:
        return WeylElement::dy(m, g.index);
    case AGenerator::Kind::MuPlus: {
        WeylElement w(m);
        for (std::size_t i = 1; i <= m; ++i) {
            w += WeylElement::y(m, i);
        }
        return w;
    }
    case AGenerator::Kind::MuMinus: {
        WeylElement w(m);
        for (std::size_t i = 1; i <= m; ++i) {
            w += WeylElement::dx(m, i);
        }
        return w;
    }
    }
    throw std::invalid_argument("generator_element: unknown generator");
}

struct RelationCheck {
    std::string family; // e.g. "[d_i,mu_plus]=1"
    std::size_t i = 0;  // 0 when the family has no index
    std::size_t j = 0;
    int expected = 0;   // the commutator must equal this scalar
    std::string actual; // rendered commutator
    bool pass = false;
};

struct RelationReport {
    std::size_t m = 0;
    std::vector<RelationCheck> checks;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
    }
};

/// Checks every defining relation of A_m inside the Weyl algebra.
inline RelationReport verify_relations(std::size_t m)
{
    if (m == 0) {
        throw std::invalid_argument("verify_relations: ambient must be at least 1");
    }
    RelationReport report{m, {}};
    auto gen = [m](const AGenerator& g) { return generator_element(g, m); };
    auto record = [&](std::string family, std::size_t i, std::size_t j, const AGenerator& a, const AGenerator& b,
                      int expected) {
        const WeylElement c = commutator(gen(a), gen(b));
        const bool pass = c == WeylElement::constant(m, expected);
        report.checks.push_back({std::move(family), i, j, expected, c.to_string(), pass});
    };
    using G = AGenerator;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            record("[x_i,x_j]=0", i, j, G::x(i), G::x(j), 0);
        }
    }
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            record("[d_i,d_j]=0", i, j, G::d(i), G::d(j), 0);
        }
    }
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            record("[d_i,x_j]=0", i, j, G::d(i), G::x(j), 0);
        }
    }
    for (std::size_t i = 1; i <= m; ++i) {
        record("[x_i,mu_plus]=0", i, 0, G::x(i), G::mu_plus(), 0);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        record("[d_i,mu_minus]=0", i, 0, G::d(i), G::mu_minus(), 0);
    }
    record("[mu_plus,mu_minus]=0", 0, 0, G::mu_plus(), G::mu_minus(), 0);
    for (std::size_t i = 1; i <= m; ++i) {
        record("[d_i,mu_plus]=1", i, 0, G::d(i), G::mu_plus(), 1);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        record("[mu_minus,x_i]=1", i, 0, G::mu_minus(), G::x(i), 1);
    }
    return report;
}

/// Spanning word x^alpha mu_plus^s d^delta mu_minus^r of A_m.
struct AMonomial {
    std::vector<std::uint32_t> alpha;
    std::uint32_t s = 0;
    std::vector<std::uint32_t> delta;
    std::uint32_t r = 0;

    std::size_t ambient() const { return alpha.size(); }

    std::uint32_t bernstein_degree() const
    {
        return std::accumulate(alpha.begin(), alpha.end(), s) + std::accumulate(delta.begin(), delta.end(), r);
    }

    friend auto operator<=>(const AMonomial&, const AMonomial&) = default;

    std::string to_string() const
    {
        std::string out;
        auto put = [&](const std::string& name, std::uint32_t e) {
            if (e == 0) {
                return;
            }
            if (!out.empty()) {
                out += '*';
            }
            out += name;
            if (e > 1) {
                out += '^' + std::to_string(e);
            }
        };
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            put("x" + std::to_string(i + 1), alpha[i]);
        }
        put("mu_plus", s);
        for (std::size_t i = 0; i < delta.size(); ++i) {
            put("d" + std::to_string(i + 1), delta[i]);
        }
        put("mu_minus", r);
        return out.empty() ? "1" : out;
    }
};

namespace detail {

// Every exponent vector of length m summing to `total`, with its multinomial coefficient.
inline void compositions(std::size_t m, std::uint32_t total,
                         std::vector<std::pair<std::vector<std::uint32_t>, Integer>>& out)
{
    std::vector<std::uint32_t> cur(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
        if (pos + 1 == m) {
            cur[pos] = left;
            Integer mult = factorial(total);
            for (auto e : cur) {
                mult /= factorial(e);
            }
            out.emplace_back(cur, mult);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, total);
}

} // namespace detail

/// Weyl normal form of an A-word. The word is already normally ordered
/// (positions before derivations), so this is a multinomial expansion.
inline WeylElement expand(const AMonomial& a)
{
    const std::size_t m = a.ambient();
    std::vector<std::pair<std::vector<std::uint32_t>, Integer>> ys, dxs;
    detail::compositions(m, a.s, ys);
    detail::compositions(m, a.r, dxs);
    WeylElement out(m);
    for (const auto& [beta, cb] : ys) {
        for (const auto& [gamma, cg] : dxs) {
            WeylMonomial w(m);
            for (std::size_t i = 0; i < m; ++i) {
                w.x(i) = a.alpha[i];
                w.y(i) = beta[i];
                w.dx(i) = gamma[i];
                w.dy(i) = a.delta[i];
            }
            out.add_term(std::move(w), Rational(cb * cg));
        }
    }
    return out;
}

using AExpansion = std::map<AMonomial, Rational>;

inline WeylElement expand(const AExpansion& e, std::size_t m)
{
    WeylElement out(m);
    for (const auto& [a, c] : e) {
        out += expand(a) * c;
    }
    return out;
}

/// Coefficients of `w` over the A-words, or nullopt when w is not in A_m.
///
/// Candidates are restricted to A-words within the Bernstein filtration level
/// of w. Among those, the word (alpha, s, delta, r) expands exactly onto the
/// Weyl monomials x^alpha y^beta dx^gamma dy^delta with |beta| = s,
/// |gamma| = r, and distinct words have disjoint supports. A word that shares
/// no monomial with w therefore cannot occur, so the candidate set read off
/// the support of w is complete and a failed solve is a proof of
/// non-membership.
inline std::optional<AExpansion> a_membership(const WeylElement& w)
{
    const std::size_t m = w.ambient();
    std::set<AMonomial> candidates;
    for (const auto& [mono, c] : w.terms()) {
        AMonomial a;
        a.alpha.resize(m);
        a.delta.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            a.alpha[i] = mono.x(i);
            a.s += mono.y(i);
            a.delta[i] = mono.dy(i);
            a.r += mono.dx(i);
        }
        candidates.insert(std::move(a));
    }
    std::vector<AMonomial> words(candidates.begin(), candidates.end());
    std::vector<WeylElement> expansions;
    expansions.reserve(words.size());
    for (const auto& a : words) {
        expansions.push_back(expand(a));
    }
    std::vector<const WeylElement::TermMap*> cols;
    for (const auto& e : expansions) {
        cols.push_back(&e.terms());
    }
    const auto sol = solve_in_span<WeylMonomial, WeylOrder>(cols, w.terms());
    if (!sol) {
        return std::nullopt;
    }
    AExpansion out;
    for (std::size_t c = 0; c < words.size(); ++c) {
        if (sgn((*sol)[c]) != 0) {
            out.emplace(words[c], (*sol)[c]);
        }
    }
    return out;
}

} // namespace nodehilb
