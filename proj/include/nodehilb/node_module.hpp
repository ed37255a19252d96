#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "weyl.hpp"

// The node {xy = 0}: the A_2-module V' = Q[x1,x2,y1,y2] / U with
// U = Q[x1, x2, y1 + y2] (x1 - x2), x_i in bidegree (1,0), y_i in (1,2).

namespace nodehilb::node {

inline constexpr std::size_t kAmbient = 2;

/// x1^a x2^b (y1+y2)^s (x1-x2); these span U and are linearly independent.
struct UBasisElement {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t s = 0;

    Bidegree bidegree() const { return {static_cast<int>(a + b + s + 1), 2 * static_cast<int>(s)}; }

    Poly poly() const
    {
        const Poly x1 = Poly::x(kAmbient, 1);
        const Poly x2 = Poly::x(kAmbient, 2);
        const Poly sum_y = Poly::y(kAmbient, 1) + Poly::y(kAmbient, 2);
        return x1.pow(a) * x2.pow(b) * sum_y.pow(s) * (x1 - x2);
    }
};

/// Canonical coset representative together with its bidegree.
struct NodeClass {
    Poly rep{kAmbient};
    Bidegree deg;

    bool is_zero() const { return rep.is_zero(); }
    friend bool operator==(const NodeClass&, const NodeClass&) = default;
};

/// dims[n][j] = dim V_{n,2j}; rows are ragged (entries with j > n are zero
/// and not stored).
struct BettiTable {
    std::vector<std::vector<int>> rows;

    int at(std::size_t n, std::size_t j) const
    {
        return (n < rows.size() && j < rows[n].size()) ? rows[n][j] : 0;
    }
};

struct GenerationEntry {
    int target_points = 0; // K
    int fundamental_points = 0; // n; the piece is V_{K,2n}
    std::size_t rank = 0;
    std::size_t dim = 0;
    bool pass() const { return rank == dim; }
};

struct GenerationReport {
    int bound = 0;
    std::vector<GenerationEntry> entries;
    bool all_pass() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass(); });
    }
};

struct ExtensionWitness {
    Poly u{kAmbient};        // element of U
    Poly multiplier{kAmbient};
    Poly product{kAmbient};
    NodeClass reduced;
    bool product_outside_u = false; // certified by reduce and by span_solve
};

struct NoExtensionReport {
    ExtensionWitness via_y1;
    ExtensionWitness via_y2;
    ExtensionWitness control; // (y1+y2) u, which must stay inside U
    bool certified() const
    {
        return via_y1.product_outside_u && via_y2.product_outside_u && !control.product_outside_u;
    }
};

struct OperatorRelationEntry {
    int n = 0;
    int d = 0;
    std::string relation;
    bool pass = false;
};

struct OperatorRelationReport {
    int bound = 0;
    std::vector<OperatorRelationEntry> entries;
    bool all_pass() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
    }
};

struct InjectivityEntry {
    std::string generator;
    int n = 0;
    int d = 0;
    std::size_t rank = 0;
    std::size_t dim = 0;
    bool pass() const { return rank == dim; }
};

struct InjectivityReport {
    int bound = 0;
    std::vector<InjectivityEntry> entries;
    bool all_pass() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass(); });
    }
};

/// Graded pieces V''_{n,2j}, U_{n,2j} and the chosen complement, precomputed
/// for every n up to a fixed limit. Instances are immutable after construction.
class NodeModule
{
public:
    struct Piece {
        int n = 0;
        int j = 0;
        std::vector<Monomial> monomials;          // basis of V'', leading first
        std::vector<UBasisElement> u_basis;       // spanning set of U
        std::vector<Poly> echelon;                // RREF of U, leading coefficient 1 on the pivot
        std::vector<Monomial> pivots;             // pivot monomial of each echelon row
        std::vector<Monomial> complement;         // non-pivot monomials: basis of V'
        std::map<Monomial, std::size_t, GrlexGreater> complement_index;

        std::size_t dim_vpp() const { return monomials.size(); }
        std::size_t dim_u() const { return pivots.size(); }
        std::size_t dim() const { return complement.size(); }
    };

    explicit NodeModule(int n_limit) : n_limit_(n_limit)
    {
        if (n_limit < 0) {
            throw std::invalid_argument("NodeModule: negative limit");
        }
        pieces_.resize(static_cast<std::size_t>(n_limit) + 1);
        for (int n = 0; n <= n_limit; ++n) {
            for (int j = 0; j <= n; ++j) {
                pieces_[n].push_back(build_piece(n, j));
            }
        }
    }

    int n_limit() const { return n_limit_; }

    /// Piece of bidegree (n, 2j). Pieces outside 0 <= j <= n are zero.
    const Piece& piece(int n, int j) const
    {
        if (n > n_limit_) {
            throw std::out_of_range("NodeModule: piece n=" + std::to_string(n) + " beyond precomputed limit " +
                                    std::to_string(n_limit_));
        }
        if (n < 0 || j < 0 || j > n) {
            return empty_piece();
        }
        return pieces_[n][j];
    }

    const Piece& piece(Bidegree deg) const
    {
        if (deg.d % 2 != 0) {
            return empty_piece();
        }
        return piece(deg.n, deg.d / 2);
    }

    int dim_piece(int n, int d) const
    {
        if (n < 0 || d < 0) {
            throw std::invalid_argument("dim_piece: negative bidegree");
        }
        if (d % 2 != 0) {
            throw std::invalid_argument("dim_piece: odd homological degree " + std::to_string(d));
        }
        return static_cast<int>(piece(n, d / 2).dim());
    }

    NodeClass reduce(const Poly& p) const
    {
        check_ambient(p);
        if (p.is_zero()) {
            return NodeClass{Poly(kAmbient), {0, 0}};
        }
        const auto deg = p.bidegree();
        if (!deg) {
            throw std::invalid_argument("reduce: inhomogeneous input " + p.to_string());
        }
        return reduce(p, *deg);
    }

    /// Reduction with the bidegree supplied, so that zero keeps its degree.
    NodeClass reduce(const Poly& p, Bidegree deg) const
    {
        check_ambient(p);
        if (!p.is_zero() && p.bidegree() != std::optional<Bidegree>(deg)) {
            throw std::invalid_argument("reduce: input is not homogeneous of the stated bidegree");
        }
        if (p.is_zero() || deg.n < 0 || deg.d < 0) {
            return NodeClass{Poly(kAmbient), deg};
        }
        const Piece& pc = piece(deg);
        Poly out = p;
        for (std::size_t r = 0; r < pc.echelon.size(); ++r) {
            const Rational c = out.coeff(pc.pivots[r]);
            if (sgn(c) != 0) {
                out -= pc.echelon[r] * c;
            }
        }
        return NodeClass{std::move(out), deg};
    }

    /// Act by a generator, then reduce. Landing in negative degree gives 0.
    NodeClass apply(const AGenerator& g, const NodeClass& v) const
    {
        const Bidegree target = v.deg + g.bidegree();
        if (target.n < 0 || target.d < 0) {
            return NodeClass{Poly(kAmbient), target};
        }
        return reduce(act(generator_element(g, kAmbient), v.rep), target);
    }

    /// y1^k y2^(n-k) / (k! (n-k)!), the class of the component M_{n,k}.
    NodeClass fundamental_class(int n, int k) const
    {
        if (n < 0 || k < 0 || k > n) {
            throw std::out_of_range("fundamental_class: need 0 <= k <= n (got n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ")");
        }
        Monomial mono(2 * kAmbient);
        mono.exps[2] = static_cast<std::uint32_t>(k);
        mono.exps[3] = static_cast<std::uint32_t>(n - k);
        const Rational c(Integer(1), factorial(k) * factorial(n - k));
        return reduce(Poly::monomial(kAmbient, mono, c), Bidegree{n, 2 * n});
    }

    /// Coordinates of a canonical representative over the complement basis.
    RatVector coordinates(const NodeClass& v) const
    {
        const Piece& pc = piece(v.deg);
        RatVector out(pc.dim());
        for (const auto& [mono, c] : v.rep.terms()) {
            auto it = pc.complement_index.find(mono);
            if (it == pc.complement_index.end()) {
                throw std::invalid_argument("coordinates: representative is not canonical");
            }
            out[it->second] = c;
        }
        return out;
    }

    NodeClass basis_class(Bidegree deg, std::size_t idx) const
    {
        const Piece& pc = piece(deg);
        return NodeClass{Poly::monomial(kAmbient, pc.complement.at(idx), 1), deg};
    }

    /// Matrix of g : V_{n,d} -> V_{(n,d) + deg g} in complement bases.
    RatMatrix operator_matrix(const AGenerator& g, Bidegree source) const
    {
        const Bidegree target = source + g.bidegree();
        const Piece& src = piece(source);
        const std::size_t rows = (target.n < 0 || target.d < 0) ? 0 : piece(target).dim();
        RatMatrix out(rows, src.dim());
        for (std::size_t c = 0; c < src.dim(); ++c) {
            const auto image = apply(g, basis_class(source, c));
            if (rows == 0) {
                continue;
            }
            const auto coords = coordinates(image);
            for (std::size_t r = 0; r < rows; ++r) {
                out(r, c) = coords[r];
            }
        }
        return out;
    }

    BettiTable betti_table(int bound) const
    {
        if (bound < 0) {
            throw std::invalid_argument("betti_table: negative bound");
        }
        BettiTable t;
        for (int n = 0; n <= bound; ++n) {
            std::vector<int> row;
            for (int j = 0; j <= n; ++j) {
                row.push_back(dim_piece(n, 2 * j));
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    /// x1,x2-translates of the fundamental classes [M_{n,k}] against V_{K,2n}.
    GenerationReport check_generation(int bound) const
    {
        GenerationReport report{bound, {}};
        const Poly x1 = Poly::x(kAmbient, 1);
        const Poly x2 = Poly::x(kAmbient, 2);
        for (int n = 0; n <= bound; ++n) {
            for (int big_k = n; big_k <= bound; ++big_k) {
                const Bidegree deg{big_k, 2 * n};
                std::vector<RatVector> columns;
                const int shift = big_k - n;
                for (int k = 0; k <= n; ++k) {
                    const Poly fc = fundamental_class(n, k).rep;
                    for (int a = 0; a <= shift; ++a) {
                        const Poly translate = x1.pow(a) * x2.pow(shift - a) * fc;
                        columns.push_back(coordinates(reduce(translate, deg)));
                    }
                }
                const std::size_t dim = piece(deg).dim();
                const std::size_t rk = dim == 0 ? 0 : rank(RatMatrix::from_columns(dim, columns));
                report.entries.push_back({big_k, n, rk, dim});
            }
        }
        return report;
    }

    /// u = x1 - x2 is in U but y1 u is not: separate multiplication by y1
    /// does not descend to V'.
    NoExtensionReport check_no_extension() const
    {
        const UBasisElement generator{0, 0, 0};
        auto witness = [&](const Poly& multiplier) {
            ExtensionWitness w;
            w.u = generator.poly();
            w.multiplier = multiplier;
            w.product = multiplier * w.u;
            w.reduced = reduce(w.product);
            const Piece& pc = piece(w.reduced.deg);
            std::vector<Poly> span;
            for (const auto& e : pc.u_basis) {
                span.push_back(e.poly());
            }
            const bool outside = !span_solve(span, w.product).has_value();
            w.product_outside_u = outside && !w.reduced.is_zero();
            return w;
        };
        return NoExtensionReport{witness(Poly::y(kAmbient, 1)), witness(Poly::y(kAmbient, 2)),
                                 witness(Poly::y(kAmbient, 1) + Poly::y(kAmbient, 2))};
    }

    /// Every A_2 relation as an exact identity of operator matrices on each
    /// piece V_{n,d} with n <= bound. Needs n_limit() >= bound + 2.
    OperatorRelationReport check_operator_relations(int bound) const
    {
        using G = AGenerator;
        struct Pair {
            std::string name;
            G a;
            G b;
            bool identity;
        };
        std::vector<Pair> pairs;
        for (std::size_t i = 1; i <= kAmbient; ++i) {
            for (std::size_t j = 1; j <= kAmbient; ++j) {
                pairs.push_back({"[x" + std::to_string(i) + ",x" + std::to_string(j) + "]=0", G::x(i), G::x(j), false});
                pairs.push_back({"[d" + std::to_string(i) + ",d" + std::to_string(j) + "]=0", G::d(i), G::d(j), false});
                pairs.push_back({"[d" + std::to_string(i) + ",x" + std::to_string(j) + "]=0", G::d(i), G::x(j), false});
            }
        }
        for (std::size_t i = 1; i <= kAmbient; ++i) {
            const auto s = std::to_string(i);
            pairs.push_back({"[x" + s + ",mu_plus]=0", G::x(i), G::mu_plus(), false});
            pairs.push_back({"[d" + s + ",mu_minus]=0", G::d(i), G::mu_minus(), false});
            pairs.push_back({"[d" + s + ",mu_plus]=Id", G::d(i), G::mu_plus(), true});
            pairs.push_back({"[mu_minus,x" + s + "]=Id", G::mu_minus(), G::x(i), true});
        }
        pairs.push_back({"[mu_plus,mu_minus]=0", G::mu_plus(), G::mu_minus(), false});

        OperatorRelationReport report{bound, {}};
        for (int n = 0; n <= bound; ++n) {
            for (int j = 0; j <= n; ++j) {
                const Bidegree src{n, 2 * j};
                for (const auto& p : pairs) {
                    const RatMatrix ab = operator_matrix(p.a, src + p.b.bidegree()) * operator_matrix(p.b, src);
                    const RatMatrix ba = operator_matrix(p.b, src + p.a.bidegree()) * operator_matrix(p.a, src);
                    const RatMatrix comm = ab - ba;
                    const bool pass = p.identity ? comm == RatMatrix::identity(piece(src).dim()) : comm.is_zero();
                    report.entries.push_back({n, 2 * j, p.name, pass});
                }
            }
        }
        return report;
    }

    /// Multiplication by x1, x2 and mu_plus is injective on each V_{n,d},
    /// n <= bound. Needs n_limit() >= bound + 1.
    InjectivityReport check_injectivity(int bound) const
    {
        InjectivityReport report{bound, {}};
        const std::vector<AGenerator> raising{AGenerator::x(1), AGenerator::x(2), AGenerator::mu_plus()};
        for (int n = 0; n <= bound; ++n) {
            for (int j = 0; j <= n; ++j) {
                const Bidegree src{n, 2 * j};
                for (const auto& g : raising) {
                    const RatMatrix mat = operator_matrix(g, src);
                    report.entries.push_back({g.name(), n, 2 * j, rank(mat), piece(src).dim()});
                }
            }
        }
        return report;
    }

    /// reduce(g . u) == 0, i.e. g maps the U-element u back into U.
    bool preserves_u(const AGenerator& g, const UBasisElement& u) const
    {
        const Bidegree target = u.bidegree() + g.bidegree();
        if (target.n < 0 || target.d < 0) {
            return true;
        }
        return reduce(act(generator_element(g, kAmbient), u.poly()), target).is_zero();
    }

private:
    static const Piece& empty_piece()
    {
        static const Piece empty{};
        return empty;
    }

    static void check_ambient(const Poly& p)
    {
        if (p.ambient() != kAmbient) {
            throw std::invalid_argument("node module: polynomial must live in Q[x1,x2,y1,y2]");
        }
    }

    static Piece build_piece(int n, int j)
    {
        Piece pc;
        pc.n = n;
        pc.j = j;
        const auto xdeg = static_cast<std::uint32_t>(n - j);
        const auto ydeg = static_cast<std::uint32_t>(j);
        for (std::uint32_t a = xdeg + 1; a-- > 0;) {
            for (std::uint32_t c = ydeg + 1; c-- > 0;) {
                pc.monomials.push_back(Monomial({a, xdeg - a, c, ydeg - c}));
            }
        }
        std::sort(pc.monomials.begin(), pc.monomials.end(), GrlexGreater{});

        if (xdeg >= 1) {
            for (std::uint32_t a = xdeg; a-- > 0;) {
                pc.u_basis.push_back({a, xdeg - 1 - a, ydeg});
            }
        }
        std::map<Monomial, std::size_t, GrlexGreater> col;
        for (std::size_t i = 0; i < pc.monomials.size(); ++i) {
            col.emplace(pc.monomials[i], i);
        }
        RatMatrix mat(pc.u_basis.size(), pc.monomials.size());
        for (std::size_t r = 0; r < pc.u_basis.size(); ++r) {
            const Poly u = pc.u_basis[r].poly();
            for (const auto& [mono, c] : u.terms()) {
                mat(r, col.at(mono)) = c;
            }
        }
        const auto ech = rref(std::move(mat));
        std::vector<bool> is_pivot(pc.monomials.size(), false);
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            Poly row(kAmbient);
            for (std::size_t c = 0; c < pc.monomials.size(); ++c) {
                row.add_term(pc.monomials[c], ech.reduced(r, c));
            }
            pc.echelon.push_back(std::move(row));
            pc.pivots.push_back(pc.monomials[ech.pivots[r]]);
            is_pivot[ech.pivots[r]] = true;
        }
        for (std::size_t c = 0; c < pc.monomials.size(); ++c) {
            if (!is_pivot[c]) {
                pc.complement_index.emplace(pc.monomials[c], pc.complement.size());
                pc.complement.push_back(pc.monomials[c]);
            }
        }
        return pc;
    }

    int n_limit_;
    std::vector<std::vector<Piece>> pieces_;
};

} // namespace nodehilb::node
