#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <vector>

#include "nodehilb/hilbgeom.hpp"
#include "nodehilb/series.hpp"

using namespace nodehilb;
using namespace nodehilb::hilb;

namespace {

// (zeta?, i, j) with the ranges spelled out separately from the library.
using Elem = std::tuple<int, int, int>;

bool oracle_in_range(int n, int k, const Elem& e)
{
    const auto [z, i, j] = e;
    if (k < 0 || k > n) {
        return false;
    }
    return z == 0 ? (i <= n - k && j <= k) : (i + 1 <= n - k && j + 1 <= k);
}

std::vector<Elem> oracle_basis(int n, int k)
{
    std::vector<Elem> out;
    for (int z = 0; z <= 1; ++z) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (oracle_in_range(n, k, {z, i, j})) {
                    out.emplace_back(z, i, j);
                }
            }
        }
    }
    return out;
}

// Both pullbacks send basis elements to distinct basis elements or zero, so
// the joint kernel is spanned by the elements both maps kill.
std::set<Elem> oracle_kernel(int n, int k)
{
    std::set<Elem> out;
    for (const auto& e : oracle_basis(n, k)) {
        const auto [z, i, j] = e;
        if (2 * (z + i + j) >= 2 * n) {
            continue;
        }
        if (!oracle_in_range(n - 1, k, e) && !oracle_in_range(n - 1, k - 1, e)) {
            out.insert(e);
        }
    }
    return out;
}

Integer count_multisets(int n, int m)
{
    // number of ways to write n as an ordered sum of m nonnegative parts
    if (m == 1) {
        return 1;
    }
    Integer total = 0;
    for (int first = 0; first <= n; ++first) {
        total += count_multisets(n - first, m - 1);
    }
    return total;
}

CohClass cls(int n, int k, CohKind kind, int i, int j)
{
    return CohClass::basis({n, k, kind, i, j});
}

} // namespace

TEST(Components, Count)
{
    EXPECT_EQ(component_count(4, 2), 5);
    EXPECT_EQ(component_count(7, 1), 1);
    EXPECT_EQ(component_count(3, 3), 10);
    EXPECT_THROW(component_count(-1, 2), std::invalid_argument);
    EXPECT_THROW(component_count(3, 0), std::invalid_argument);
    for (int n = 0; n <= 8; ++n) {
        for (int m = 1; m <= 4; ++m) {
            ASSERT_EQ(component_count(n, m), count_multisets(n, m)) << n << "," << m;
        }
    }
}

TEST(Components, ListingAndIntersections)
{
    EXPECT_EQ(components(2).size(), 3U);
    EXPECT_EQ(intersections(2).size(), 2U);
    EXPECT_EQ(components(0).size(), 1U);
    EXPECT_TRUE(intersections(0).empty());
    for (int n = 0; n <= 20; ++n) {
        ASSERT_EQ(Integer(static_cast<long>(components(n).size())), component_count(n, 2));
    }
}

TEST(CohBasis, Examples)
{
    const auto b20 = coh_basis(2, 0);
    ASSERT_EQ(b20.size(), 3U);
    EXPECT_EQ(b20[0].to_string(), "1");
    EXPECT_EQ(b20[2].to_string(), "a^2");

    const auto b21 = coh_basis(2, 1);
    ASSERT_EQ(b21.size(), 5U);
    std::vector<int> per_degree(3);
    for (const auto& e : b21) {
        ++per_degree[static_cast<std::size_t>(e.degree() / 2)];
    }
    EXPECT_EQ(per_degree, (std::vector<int>{1, 3, 1}));
    EXPECT_EQ(coh_basis(3, 1).size(), 8U);
    EXPECT_THROW(coh_basis(2, 3), std::out_of_range);

    const CohBasisElem z{4, 2, CohKind::Zeta, 1, 1};
    EXPECT_EQ(z.to_string(), "zeta*a*b");
    EXPECT_EQ(z.degree(), 6);
}

TEST(CohBasis, CensusMatchesComponentPolynomial)
{
    for (int n = 0; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            ASSERT_EQ(poincare_from_basis(n, k), series::component_poincare(n, k)) << n << "," << k;
            ASSERT_EQ(coh_basis(n, k).size(), oracle_basis(n, k).size());
        }
    }
}

TEST(CohClass, RejectsOutOfRangeAndMixedLevels)
{
    CohClass c;
    EXPECT_THROW(c.add_term({2, 1, CohKind::Plain, 2, 0}, 1), std::invalid_argument);
    c.add_term({2, 1, CohKind::Plain, 1, 0}, 1);
    EXPECT_THROW(c.add_term({3, 1, CohKind::Plain, 1, 0}, 1), std::invalid_argument);
}

TEST(Pullback, Examples)
{
    EXPECT_TRUE(pullback_x1(cls(3, 1, CohKind::Plain, 2, 1)).is_zero());
    EXPECT_EQ(pullback_x1(cls(3, 1, CohKind::Plain, 1, 1)), cls(2, 1, CohKind::Plain, 1, 1));
    EXPECT_EQ(pullback_x1(cls(3, 1, CohKind::Zeta, 0, 0)), cls(2, 1, CohKind::Zeta, 0, 0));
    EXPECT_TRUE(pullback_x2(cls(2, 1, CohKind::Plain, 0, 1)).is_zero());
    EXPECT_EQ(pullback_x2(cls(2, 1, CohKind::Plain, 1, 0)), cls(1, 0, CohKind::Plain, 1, 0));
    EXPECT_TRUE(pullback_x2(cls(3, 1, CohKind::Zeta, 1, 0)).is_zero());
    EXPECT_TRUE(pullback_x2(cls(3, 0, CohKind::Plain, 0, 0)).is_zero());
}

TEST(Pullback, Commute)
{
    // x_1^* x_2^* = x_2^* x_1^* from level n+2 to level n
    for (int n = 0; n <= 8; ++n) {
        const auto x1_hi = pullback_matrix(Pullback::X1, n + 1);
        const auto x2_hi = pullback_matrix(Pullback::X2, n + 1);
        const auto x1_lo = pullback_matrix(Pullback::X1, n);
        const auto x2_lo = pullback_matrix(Pullback::X2, n);
        ASSERT_EQ(x1_lo * x2_hi, x2_lo * x1_hi) << n;
    }
}

TEST(Kernel, MatchesOracle)
{
    for (int n = 2; n <= 8; ++n) {
        const auto kernels = kernel_intersection(n);
        ASSERT_EQ(kernels.size(), static_cast<std::size_t>(n + 1));
        for (const auto& ck : kernels) {
            const auto expected = oracle_kernel(n, ck.k);
            ASSERT_EQ(ck.basis.size(), expected.size()) << n << "," << ck.k;
            for (const auto& c : ck.basis) {
                ASSERT_EQ(c.terms().size(), 1U);
                const auto& [e, coef] = *c.terms().begin();
                EXPECT_EQ(coef, 1);
                EXPECT_TRUE(expected.contains({e.kind == CohKind::Zeta ? 1 : 0, e.i, e.j}));
            }
            const bool interior = ck.k >= 1 && ck.k <= n - 1;
            ASSERT_EQ(ck.basis.size(), interior ? 1U : 0U);
            if (interior) {
                EXPECT_EQ(ck.basis[0], cls(n, ck.k, CohKind::Zeta, n - ck.k - 1, ck.k - 1));
            }
        }
    }
    EXPECT_EQ(kernel_intersection(2)[1].basis[0].to_string(), cls(2, 1, CohKind::Zeta, 0, 0).to_string());
    EXPECT_EQ(kernel_intersection(4)[2].basis[0], cls(4, 2, CohKind::Zeta, 1, 1));
    EXPECT_THROW(kernel_intersection(0), std::invalid_argument);
}

TEST(MayerVietoris, Dimensions)
{
    const node::NodeModule module(10);
    const auto r2 = mv_dimension_check(2, module);
    ASSERT_EQ(r2.entries.size(), 3U);
    EXPECT_EQ(r2.entries[1].components, 5);
    EXPECT_EQ(r2.entries[1].intersections, 2);
    EXPECT_EQ(r2.entries[1].module_dim, 3U);
    for (int n = 0; n <= 10; ++n) {
        ASSERT_TRUE(mv_dimension_check(n, module).all_pass()) << n;
    }
}

TEST(ProjectiveSpaces, CellCount)
{
    EXPECT_EQ(product_of_projective_spaces(1, 1), series::TPoly({Rational(1), Rational(2), Rational(1)}));
    EXPECT_EQ(product_of_projective_spaces(0, 0), series::TPoly({Rational(1)}));
}

TEST(Paving, PunctualCells)
{
    EXPECT_EQ(punctual_cells(0).size(), 1U);
    EXPECT_EQ(punctual_cells(1).size(), 1U);
    const auto c3 = punctual_cells(3);
    ASSERT_EQ(c3.size(), 3U);
    EXPECT_EQ(c3[0].dim, 0);
    EXPECT_EQ(c3[1].dim, 1);
    EXPECT_EQ(c3[2].dim, 1);
    EXPECT_EQ(punctual_poincare(3), series::TPoly({Rational(1), Rational(2)}));
    EXPECT_THROW(punctual_cells(-1), std::invalid_argument);
}

TEST(Paving, CensusMatchesSeries)
{
    EXPECT_EQ(paving_census(2), series::TPoly({Rational(1), Rational(3), Rational(3)}));
    const auto s = series::paving_pv(15);
    const auto closed = series::closed_form_pv(15);
    for (int n = 0; n <= 15; ++n) {
        ASSERT_EQ(paving_census(n), s.row(n)) << n;
        ASSERT_EQ(paving_census(n), closed.row(n)) << n;
    }
    std::set<PavingCell> unique;
    for (const auto& c : paving_cells(6)) {
        EXPECT_EQ(c.a + c.b + c.c, 6);
        unique.insert(c);
    }
    EXPECT_EQ(unique.size(), paving_cells(6).size());
}
