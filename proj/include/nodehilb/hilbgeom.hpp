#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "node_module.hpp"
#include "rational.hpp"
#include "series.hpp"

// Combinatorial models of the Hilbert schemes of points on the node:
// the components M_{n,k}, their additive cohomology bases, the pullbacks
// x_1^*, x_2^* and the affine paving.

namespace nodehilb::hilb {

/// Irreducible components of C^[n] for a curve with m branches through one
/// planar singularity: binom(n+m-1, n).
inline Integer component_count(int n, int m)
{
    if (n < 0 || m < 1) {
        throw std::invalid_argument("component_count: need n >= 0 and m >= 1");
    }
    return binomial(static_cast<std::uint64_t>(n + m - 1), static_cast<std::uint64_t>(n));
}

/// M_{n,k}: closure of k points on {y=0} and n-k on {x=0}.
struct ComponentId {
    int n = 0;
    int k = 0;
    friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

/// E^n_{k,k+1} = M_{n,k} cap M_{n,k+1} = P^(n-k-1) x P^k, with generators
/// mu, nu of its cohomology.
struct Intersection {
    int n = 0;
    int k = 0;
    // Restrictions of mu, nu to either neighbour; kept as documentation only.
    std::string restriction_left;
    std::string restriction_right;
};

inline std::vector<ComponentId> components(int n)
{
    std::vector<ComponentId> out;
    for (int k = 0; k <= n; ++k) {
        out.push_back({n, k});
    }
    return out;
}

/// Only consecutive components meet.
inline std::vector<Intersection> intersections(int n)
{
    std::vector<Intersection> out;
    for (int k = 0; k + 1 <= n; ++k) {
        const auto left = std::to_string(n) + "," + std::to_string(k);
        const auto right = std::to_string(n) + "," + std::to_string(k + 1);
        out.push_back({n, k, "mu -> a_{" + left + "} - zeta_{" + left + "}, nu -> b_{" + left + "} - zeta_{" + left + "}",
                       "mu -> a_{" + right + "} - zeta_{" + right + "}, nu -> b_{" + right + "} - zeta_{" + right +
                           "}"});
    }
    return out;
}

enum class CohKind { Plain, Zeta };

/// a^i b^j (plain) or zeta a^i b^j in H^*(M_{n,k}).
struct CohBasisElem {
    int n = 0;
    int k = 0;
    CohKind kind = CohKind::Plain;
    int i = 0;
    int j = 0;

    int degree() const { return 2 * (i + j + (kind == CohKind::Zeta ? 1 : 0)); }

    /// Plain: i <= n-k, j <= k. Zeta: i <= n-k-1, j <= k-1 (so 1 <= k <= n-1).
    bool in_range() const
    {
        if (n < 0 || k < 0 || k > n || i < 0 || j < 0) {
            return false;
        }
        if (kind == CohKind::Plain) {
            return i <= n - k && j <= k;
        }
        return i <= n - k - 1 && j <= k - 1;
    }

    std::string to_string() const
    {
        std::string out = kind == CohKind::Zeta ? "zeta" : "";
        auto put = [&](const char* sym, int e) {
            if (e == 0) {
                return;
            }
            if (!out.empty()) {
                out += '*';
            }
            out += sym;
            if (e > 1) {
                out += '^' + std::to_string(e);
            }
        };
        put("a", i);
        put("b", j);
        return out.empty() ? "1" : out;
    }

    friend bool operator==(const CohBasisElem&, const CohBasisElem&) = default;
};

/// (n, k, degree, kind, i, j)
struct CohOrder {
    bool operator()(const CohBasisElem& x, const CohBasisElem& y) const
    {
        return std::make_tuple(x.n, x.k, x.degree(), x.kind, x.i, x.j) <
               std::make_tuple(y.n, y.k, y.degree(), y.kind, y.i, y.j);
    }
};

/// Linear combination of basis elements at a single level n.
class CohClass
{
public:
    using TermMap = std::map<CohBasisElem, Rational, CohOrder>;

    CohClass() = default;

    static CohClass basis(const CohBasisElem& e)
    {
        CohClass c;
        c.add_term(e, 1);
        return c;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const CohBasisElem& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const CohBasisElem& e, const Rational& c)
    {
        if (sgn(c) == 0) {
            return;
        }
        if (!e.in_range()) {
            throw std::invalid_argument("CohClass: " + e.to_string() + " is not a basis element of M_{" +
                                        std::to_string(e.n) + "," + std::to_string(e.k) + "}");
        }
        if (!terms_.empty() && terms_.begin()->first.n != e.n) {
            throw std::invalid_argument("CohClass: all terms must share one level n");
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    std::string to_string() const
    {
        return detail::render_terms(terms_, [](const CohBasisElem& e) {
            auto s = e.to_string();
            s = s == "1" ? std::string() : s;
            return s + "[" + std::to_string(e.n) + "," + std::to_string(e.k) + "]";
        });
    }

    friend bool operator==(const CohClass&, const CohClass&) = default;

private:
    TermMap terms_;
};

/// Additive basis of H^*(M_{n,k}), ordered by (degree, kind, i, j).
inline std::vector<CohBasisElem> coh_basis(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        throw std::out_of_range("coh_basis: need 0 <= k <= n");
    }
    std::vector<CohBasisElem> out;
    for (int i = 0; i <= n - k; ++i) {
        for (int j = 0; j <= k; ++j) {
            out.push_back({n, k, CohKind::Plain, i, j});
        }
    }
    for (int i = 0; i <= n - k - 1; ++i) {
        for (int j = 0; j <= k - 1; ++j) {
            out.push_back({n, k, CohKind::Zeta, i, j});
        }
    }
    std::sort(out.begin(), out.end(), CohOrder{});
    return out;
}

/// Degree census of coh_basis(n, k).
inline series::TPoly poincare_from_basis(int n, int k)
{
    std::vector<Rational> counts(static_cast<std::size_t>(n) + 1);
    for (const auto& e : coh_basis(n, k)) {
        counts[static_cast<std::size_t>(e.degree() / 2)] += 1;
    }
    return series::TPoly(std::move(counts));
}

namespace detail {

// Images landing outside the level-n ranges have no target basis element
// and are sent to zero.
template <typename Retarget>
CohClass pull_back(const CohClass& c, Retarget&& retarget)
{
    CohClass out;
    for (const auto& [e, coef] : c.terms()) {
        const auto image = retarget(e);
        if (image.in_range()) {
            out.add_term(image, coef);
        }
    }
    return out;
}

} // namespace detail

/// x_1^*: H^*(M_{n+1,k}) -> H^*(M_{n,k}), basis to basis.
inline CohClass pullback_x1(const CohClass& c)
{
    return detail::pull_back(c, [](const CohBasisElem& e) {
        return CohBasisElem{e.n - 1, e.k, e.kind, e.i, e.j};
    });
}

/// x_2^*: H^*(M_{n+1,k+1}) -> H^*(M_{n,k}); component 0 has no target.
inline CohClass pullback_x2(const CohClass& c)
{
    return detail::pull_back(c, [](const CohBasisElem& e) {
        return CohBasisElem{e.n - 1, e.k - 1, e.kind, e.i, e.j};
    });
}

/// Full basis of \oplus_k H^*(M_{n,k}).
inline std::vector<CohBasisElem> level_basis(int n)
{
    std::vector<CohBasisElem> out;
    for (int k = 0; k <= n; ++k) {
        auto b = coh_basis(n, k);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

enum class Pullback { X1, X2 };

/// Matrix of x_1^* or x_2^* from level n+1 to level n in the level bases.
inline RatMatrix pullback_matrix(Pullback which, int n)
{
    const auto src = level_basis(n + 1);
    const auto dst = level_basis(n);
    std::map<CohBasisElem, std::size_t, CohOrder> row;
    for (std::size_t r = 0; r < dst.size(); ++r) {
        row.emplace(dst[r], r);
    }
    RatMatrix out(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const CohClass e = CohClass::basis(src[c]);
        const CohClass img = which == Pullback::X1 ? pullback_x1(e) : pullback_x2(e);
        for (const auto& [t, coef] : img.terms()) {
            out(row.at(t), c) = coef;
        }
    }
    return out;
}

struct ComponentKernel {
    int n = 0;
    int k = 0;
    std::vector<CohClass> basis;
};

/// For each k, a basis of { c in H^{<2n}(M_{n,k}) : x_1^* c = 0 and x_2^* c = 0 }.
inline std::vector<ComponentKernel> kernel_intersection(int n)
{
    if (n < 1) {
        throw std::invalid_argument("kernel_intersection: need n >= 1");
    }
    std::vector<ComponentKernel> out;
    const auto targets = level_basis(n - 1);
    std::map<CohBasisElem, std::size_t, CohOrder> row;
    for (std::size_t r = 0; r < targets.size(); ++r) {
        row.emplace(targets[r], r);
    }
    for (int k = 0; k <= n; ++k) {
        std::vector<CohBasisElem> src;
        for (const auto& e : coh_basis(n, k)) {
            if (e.degree() < 2 * n) {
                src.push_back(e);
            }
        }
        // Rows [0, T) hold x_1^*, rows [T, 2T) hold x_2^*.
        RatMatrix mat(2 * targets.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            const CohClass e = CohClass::basis(src[c]);
            const CohClass img1 = pullback_x1(e);
            for (const auto& [t, coef] : img1.terms()) {
                mat(row.at(t), c) = coef;
            }
            const CohClass img2 = pullback_x2(e);
            for (const auto& [t, coef] : img2.terms()) {
                mat(targets.size() + row.at(t), c) = coef;
            }
        }
        ComponentKernel ck{n, k, {}};
        for (const auto& v : kernel_basis(mat)) {
            CohClass cls;
            for (std::size_t c = 0; c < src.size(); ++c) {
                cls.add_term(src[c], v[c]);
            }
            ck.basis.push_back(std::move(cls));
        }
        out.push_back(std::move(ck));
    }
    return out;
}

/// Cell count of P^p x P^q by degree.
inline series::TPoly product_of_projective_spaces(int p, int q)
{
    std::vector<Rational> counts(static_cast<std::size_t>(std::max(p + q, 0)) + 1);
    for (int u = 0; u <= p; ++u) {
        for (int v = 0; v <= q; ++v) {
            counts[static_cast<std::size_t>(u + v)] += 1;
        }
    }
    return series::TPoly(std::move(counts));
}

struct MvEntry {
    int d = 0; // homological degree
    Rational components;
    Rational intersections;
    std::size_t module_dim = 0;
    bool pass() const { return components - intersections == Rational(static_cast<long>(module_dim)); }
};

struct MvReport {
    int n = 0;
    std::vector<MvEntry> entries;
    bool all_pass() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const MvEntry& e) { return e.pass(); });
    }
};

/// Split Mayer-Vietoris sequence at the level of dimensions:
/// sum_k dim H_d(M_{n,k}) - sum_k dim H_d(E^n_{k,k+1}) = dim V_{n,d}.
/// Component dimensions come from the explicit bases, intersection
/// dimensions from counting cells of P^(n-k-1) x P^k.
inline MvReport mv_dimension_check(int n, const node::NodeModule& module)
{
    if (n < 0) {
        throw std::invalid_argument("mv_dimension_check: negative n");
    }
    MvReport report{n, {}};
    for (int j = 0; j <= n; ++j) {
        MvEntry e;
        e.d = 2 * j;
        for (int k = 0; k <= n; ++k) {
            e.components += poincare_from_basis(n, k).coeff(static_cast<std::size_t>(j));
        }
        for (int k = 0; k + 1 <= n; ++k) {
            e.intersections += product_of_projective_spaces(n - k - 1, k).coeff(static_cast<std::size_t>(j));
        }
        e.module_dim = module.piece(n, j).dim();
        report.entries.push_back(std::move(e));
    }
    return report;
}

struct PunctualCell {
    int index = 0; // 0 is the zero-cell, 1..c-1 the affine lines of the chain
    int dim = 0;
};

/// Affine paving of the punctual Hilbert scheme of length c at the node, a
/// chain of c-1 projective lines: one zero-cell and c-1 one-cells.
inline std::vector<PunctualCell> punctual_cells(int c)
{
    if (c < 0) {
        throw std::invalid_argument("punctual_cells: negative length");
    }
    std::vector<PunctualCell> out{{0, 0}};
    for (int d = 1; d <= c - 1; ++d) {
        out.push_back({d, 1});
    }
    return out;
}

inline series::TPoly punctual_poincare(int c)
{
    std::vector<Rational> counts(2);
    for (const auto& cell : punctual_cells(c)) {
        counts[static_cast<std::size_t>(cell.dim)] += 1;
    }
    return series::TPoly(std::move(counts));
}

/// a points on the smooth part of one branch, b on the other, c at the node,
/// and d selecting the punctual cell.
struct PavingCell {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;
    int dim() const { return a + b + (d >= 1 ? 1 : 0); }
    friend auto operator<=>(const PavingCell&, const PavingCell&) = default;
};

inline std::vector<PavingCell> paving_cells(int n)
{
    if (n < 0) {
        throw std::invalid_argument("paving_cells: negative n");
    }
    std::vector<PavingCell> out;
    for (int c = 0; c <= n; ++c) {
        for (int a = n - c; a >= 0; --a) {
            const int b = n - c - a;
            for (const auto& cell : punctual_cells(c)) {
                out.push_back({a, b, c, cell.index});
            }
        }
    }
    return out;
}

inline series::TPoly paving_census(int n)
{
    std::vector<Rational> counts(static_cast<std::size_t>(n) + 1);
    for (const auto& cell : paving_cells(n)) {
        counts[static_cast<std::size_t>(cell.dim())] += 1;
    }
    return series::TPoly(std::move(counts));
}

} // namespace nodehilb::hilb
