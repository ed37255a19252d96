#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nodehilb/node_module.hpp"
#include "support/random.hpp"

using namespace nodehilb;
using node::NodeClass;
using node::NodeModule;
using node::UBasisElement;

namespace {

Poly x1() { return Poly::x(2, 1); }
Poly x2() { return Poly::x(2, 2); }
Poly y1() { return Poly::y(2, 1); }
Poly y2() { return Poly::y(2, 2); }

const NodeModule& module12()
{
    static const NodeModule m(12);
    return m;
}

// Oracle: dim V''_{n,2j} by enumerating exponent tuples, dim U_{n,2j} by
// counting the free generators x1^a x2^b (y1+y2)^j (x1-x2) with a+b = n-j-1.
std::size_t brute_dim(int n, int j)
{
    std::size_t vpp = 0;
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; a + b <= n; ++b) {
            for (int c = 0; a + b + c <= n; ++c) {
                const int e = n - a - b - c;
                if (c + e == j) {
                    ++vpp;
                }
            }
        }
    }
    std::size_t u = 0;
    for (int a = 0; a + 1 <= n - j; ++a) {
        ++u; // b = n - j - 1 - a
    }
    return vpp - u;
}

} // namespace

TEST(UBasisElement, BidegreeAndPolynomial)
{
    const UBasisElement u{1, 0, 1};
    EXPECT_EQ(u.bidegree(), (Bidegree{3, 2}));
    EXPECT_EQ(u.poly(), x1() * (y1() + y2()) * (x1() - x2()));
    EXPECT_EQ(*u.poly().bidegree(), u.bidegree());
}

TEST(Reduce, Examples)
{
    const auto& mod = module12();
    EXPECT_TRUE(mod.reduce(x1() - x2()).is_zero());
    const auto r = mod.reduce(y1() - y2());
    EXPECT_EQ(r.rep, y1() - y2());
    EXPECT_EQ(r.deg, (Bidegree{1, 2}));
    EXPECT_TRUE(mod.reduce(x1() * x1() - x2() * x2()).is_zero());
    EXPECT_THROW(mod.reduce(x1() + y1()), std::invalid_argument);
    EXPECT_THROW(mod.reduce(Poly::x(3, 1)), std::invalid_argument);
    EXPECT_THROW(mod.reduce(x1().pow(13)), std::out_of_range);
}

TEST(Reduce, CanonicalRepresentativeAvoidsPivots)
{
    // In V_{2,0} the pivots are x1^2 and x1*x2, leaving x2^2.
    const auto& pc = module12().piece(2, 0);
    ASSERT_EQ(pc.complement.size(), 1u);
    EXPECT_EQ(to_string(pc.complement[0]), "x2^2");
    EXPECT_EQ(module12().reduce(x1() * x1()).rep, x2() * x2());
}

TEST(Reduce, IsALinearProjection)
{
    const auto& mod = module12();
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(1, 6)(rng);
        const std::uint32_t j = std::uniform_int_distribution<std::uint32_t>(0, n)(rng);
        const Poly p = testsupport::random_homogeneous(rng, 2, n, j);
        const Poly q = testsupport::random_homogeneous(rng, 2, n, j);
        const Rational s = testsupport::random_rational(rng);
        const Bidegree deg{static_cast<int>(n), 2 * static_cast<int>(j)};
        const auto rp = mod.reduce(p, deg);
        ASSERT_EQ(mod.reduce(rp.rep, deg), rp);
        ASSERT_EQ(mod.reduce(p + q * s, deg).rep, rp.rep + mod.reduce(q, deg).rep * s);
        // p - reduce(p) lies in U
        const Poly diff = p - rp.rep;
        std::vector<Poly> span;
        for (const auto& u : mod.piece(deg).u_basis) {
            span.push_back(u.poly());
        }
        ASSERT_TRUE(diff.is_zero() || span_solve(span, diff).has_value());
    }
}

TEST(Reduce, KernelHasDimensionOfU)
{
    const auto& mod = module12();
    for (int n = 0; n <= 8; ++n) {
        for (int j = 0; j <= n; ++j) {
            const auto& pc = mod.piece(n, j);
            std::vector<RatVector> cols;
            for (const auto& mono : pc.monomials) {
                cols.push_back(mod.coordinates(mod.reduce(Poly::monomial(2, mono, 1), {n, 2 * j})));
            }
            const std::size_t rk = pc.dim() == 0 ? 0 : rank(RatMatrix::from_columns(pc.dim(), cols));
            ASSERT_EQ(pc.dim_vpp() - rk, pc.dim_u()) << n << "," << j;
            ASSERT_EQ(pc.dim_u(), pc.u_basis.size()) << "U generators independent";
        }
    }
}

TEST(DimPiece, Examples)
{
    const auto& mod = module12();
    EXPECT_EQ(mod.dim_piece(2, 2), 3);
    EXPECT_EQ(mod.dim_piece(0, 0), 1);
    EXPECT_EQ(mod.dim_piece(5, 6), 10);
    EXPECT_EQ(mod.dim_piece(3, 8), 0);
    EXPECT_THROW(mod.dim_piece(2, 3), std::invalid_argument);
}

TEST(DimPiece, MatchesBruteForceCount)
{
    for (int n = 0; n <= 12; ++n) {
        for (int j = 0; j <= n; ++j) {
            ASSERT_EQ(static_cast<std::size_t>(module12().dim_piece(n, 2 * j)), brute_dim(n, j)) << n << "," << j;
        }
        EXPECT_EQ(module12().dim_piece(n, 2 * n), n + 1);
    }
}

TEST(BettiTable, ReproducesTheKnownTable)
{
    const auto t = module12().betti_table(5);
    const std::vector<std::vector<int>> expected{
        {1}, {1, 2}, {1, 3, 3}, {1, 4, 5, 4}, {1, 5, 7, 7, 5}, {1, 6, 9, 10, 9, 6}};
    EXPECT_EQ(t.rows, expected);
    EXPECT_EQ(t.at(2, 5), 0);
    EXPECT_EQ(module12().betti_table(0).rows, (std::vector<std::vector<int>>{{1}}));
}

TEST(Apply, Examples)
{
    const auto& mod = module12();
    const NodeClass unit = mod.reduce(Poly::constant(2, 1));
    const auto up = mod.apply(AGenerator::mu_plus(), unit);
    EXPECT_EQ(up.rep, y1() + y2());
    EXPECT_EQ(up.deg, (Bidegree{1, 2}));

    EXPECT_EQ(mod.apply(AGenerator::d(1), mod.reduce(y1() * y2())).rep, y2());

    // mu_minus(x1^2 x2) = 2 x1 x2 + x1^2; in V_{2,0} every x-monomial is x2^2.
    const auto down = mod.apply(AGenerator::mu_minus(), mod.reduce(x1() * x1() * x2()));
    EXPECT_EQ(down, mod.reduce(Rational(2) * x1() * x2() + x1() * x1()));
    EXPECT_EQ(down.rep, Rational(3) * x2() * x2());

    const auto below = mod.apply(AGenerator::d(1), unit);
    EXPECT_TRUE(below.is_zero());
    EXPECT_EQ(below.deg, (Bidegree{-1, -2}));
}

TEST(FundamentalClass, Normalization)
{
    const auto& mod = module12();
    EXPECT_EQ(mod.fundamental_class(1, 1).rep, y1());
    EXPECT_EQ(mod.fundamental_class(2, 1).rep, y1() * y2());
    EXPECT_EQ(mod.fundamental_class(3, 2).rep, y1() * y1() * y2() * make_rational(1, 2));
    EXPECT_EQ(mod.fundamental_class(3, 2).deg, (Bidegree{3, 6}));
    EXPECT_THROW(mod.fundamental_class(2, 3), std::out_of_range);
    // d_1 [M_{i+j,i}] = [M_{i+j-1,i-1}], d_2 [M_{i+j,i}] = [M_{i+j-1,i}]
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto fc = mod.fundamental_class(n, k);
            if (k >= 1) {
                ASSERT_EQ(mod.apply(AGenerator::d(1), fc), mod.fundamental_class(n - 1, k - 1));
            }
            if (k <= n - 1) {
                ASSERT_EQ(mod.apply(AGenerator::d(2), fc), mod.fundamental_class(n - 1, k));
            }
        }
    }
}

TEST(CheckGeneration, SmallBounds)
{
    const auto& mod = module12();
    const auto r1 = mod.check_generation(1);
    EXPECT_TRUE(r1.all_pass());
    const auto r2 = mod.check_generation(2);
    EXPECT_TRUE(r2.all_pass());
    bool saw_v22 = false;
    for (const auto& e : r2.entries) {
        if (e.target_points == 2 && e.fundamental_points == 1) {
            EXPECT_EQ(e.dim, 3u);
            EXPECT_EQ(e.rank, 3u);
            saw_v22 = true;
        }
        if (e.target_points == 1 && e.fundamental_points == 0) {
            EXPECT_EQ(e.dim, 1u);
        }
        if (e.target_points == e.fundamental_points) {
            EXPECT_EQ(e.dim, static_cast<std::size_t>(e.fundamental_points + 1));
        }
    }
    EXPECT_TRUE(saw_v22);
    EXPECT_TRUE(mod.check_generation(6).all_pass());
}

TEST(CheckNoExtension, WitnessAndControl)
{
    const auto report = module12().check_no_extension();
    EXPECT_TRUE(report.certified());
    EXPECT_EQ(report.via_y1.u, x1() - x2());
    EXPECT_FALSE(report.via_y1.reduced.is_zero());
    EXPECT_FALSE(report.via_y2.reduced.is_zero());
    EXPECT_TRUE(report.control.reduced.is_zero());
    // U_{2,2} is spanned by (y1+y2)(x1-x2) alone.
    const auto& pc = module12().piece(2, 1);
    ASSERT_EQ(pc.u_basis.size(), 1u);
    const std::vector<Poly> span{pc.u_basis[0].poly()};
    EXPECT_FALSE(span_solve(span, y1() * (x1() - x2())));
    // y1 and y2 witnesses are swap-symmetric: their sum is the control.
    EXPECT_TRUE((report.via_y1.reduced.rep + report.via_y2.reduced.rep).is_zero());
}

TEST(WellDefinedness, GeneratorsPreserveU)
{
    const auto& mod = module12();
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::uint32_t> e(0, 3);
    for (int i = 0; i < 120; ++i) {
        // random U element of one bidegree: combination of generators
        const std::uint32_t s = e(rng), ab = e(rng);
        Poly u(2);
        for (std::uint32_t a = 0; a <= ab; ++a) {
            u += UBasisElement{a, ab - a, s}.poly() * testsupport::random_rational(rng);
        }
        const Bidegree deg{static_cast<int>(ab + s + 1), 2 * static_cast<int>(s)};
        for (const auto& g : a_generators(2)) {
            const Bidegree target = deg + g.bidegree();
            const Poly image = act(generator_element(g, 2), u);
            if (target.n < 0 || target.d < 0) {
                ASSERT_TRUE(image.is_zero());
                continue;
            }
            ASSERT_TRUE(mod.reduce(image, target).is_zero()) << g.name() << " on " << u;
            ASSERT_TRUE(mod.preserves_u(g, UBasisElement{0, ab, s}));
        }
    }
}

TEST(OperatorRelations, HoldOnSmallPieces)
{
    const NodeModule mod(6);
    const auto report = mod.check_operator_relations(4);
    EXPECT_TRUE(report.all_pass());
    EXPECT_EQ(report.entries.size(), 15u * 21u); // 15 pieces, 3m^2+4m+1 relations
}

TEST(Injectivity, RaisingOperators)
{
    const auto report = module12().check_injectivity(8);
    EXPECT_TRUE(report.all_pass());
    // mu_minus is not injective: it kills the diagonal
    const auto mat = module12().operator_matrix(AGenerator::mu_minus(), {3, 6});
    EXPECT_EQ(mat.rows(), 0u);
    EXPECT_EQ(mat.cols(), 4u);
}
