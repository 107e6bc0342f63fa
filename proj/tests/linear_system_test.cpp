#include "hypersum/errors.hpp"
#include "hypersum/factored.hpp"
#include "hypersum/linear_system.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypersum;

namespace {

Polynomial K = Polynomial::variable("k");
Polynomial N = Polynomial::variable("n");
Polynomial A = Polynomial::variable("a");
Polynomial B = Polynomial::variable("b");

}  // namespace

TEST(RationalFunction, CanonicalForm) {
    RationalFunction f(K * K - 1, 2 * K - 2);
    EXPECT_EQ(f.num(), (K + 1) * Rational(1, 2));
    EXPECT_EQ(f.den(), Polynomial(1));
    RationalFunction g(N + 1, N - 1);
    EXPECT_EQ(g * RationalFunction(N - 1, N + 1), RationalFunction(1));
    EXPECT_EQ(RationalFunction(-K, -2 * N).den(), N);
    EXPECT_EQ(RationalFunction(1, K) + RationalFunction(1, K + 1), RationalFunction(2 * K + 1, K * K + K));
    EXPECT_THROW(RationalFunction(K, Polynomial()), DivisionError);
}

TEST(LinearSystem, SmallCases) {
    auto x = solve_linear_system({{RationalFunction(1)}}, {RationalFunction(N, N + 1)});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], RationalFunction(N, N + 1));
    EXPECT_FALSE(solve_linear_system({{RationalFunction(1)}, {RationalFunction(1)}}, {RationalFunction(1), RationalFunction(2)}));
    auto y = solve_linear_system({{RationalFunction(1), RationalFunction(0)}, {RationalFunction(0), RationalFunction(1)}},
                                 {RationalFunction(A), RationalFunction(B)});
    ASSERT_TRUE(y);
    EXPECT_EQ((*y)[0], RationalFunction(A));
    EXPECT_EQ((*y)[1], RationalFunction(B));
}

TEST(LinearSystem, RandomSolutionsSatisfySystem) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int t = 0; t < 40; ++t) {
        std::size_t rows = 2 + t % 3, cols = 2 + (t / 3) % 3;
        std::vector<std::vector<RationalFunction>> m(rows, std::vector<RationalFunction>(cols));
        std::vector<RationalFunction> rhs(rows);
        for (auto& row : m)
            for (auto& e : row) e = RationalFunction(Polynomial(c(rng)) + N * c(rng), Polynomial(1) + A * (c(rng) % 2 ? 1 : 0));
        // Consistent right-hand side from a known solution.
        std::vector<RationalFunction> x0(cols);
        for (auto& v : x0) v = RationalFunction(Polynomial(c(rng)) + A);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) rhs[i] = rhs[i] + m[i][j] * x0[j];
        auto x = solve_linear_system(m, rhs);
        ASSERT_TRUE(x);
        for (std::size_t i = 0; i < rows; ++i) {
            RationalFunction s;
            for (std::size_t j = 0; j < cols; ++j) s = s + m[i][j] * (*x)[j];
            EXPECT_EQ(s, rhs[i]);
        }
    }
}

TEST(LinearSystem, KernelVector) {
    // x0 + n*x1 = 0, and a duplicate row
    PolyMatrix m = {{Polynomial(1), N}, {Polynomial(2), 2 * N}};
    EchelonForm ef = row_reduce(m, 2);
    ASSERT_EQ(ef.rows.size(), 1u);
    EXPECT_FALSE(ef.is_pivot(1));
    auto v = ef.kernel_vector(1);
    EXPECT_TRUE((v[0] + N * v[1]).is_zero());
    EXPECT_FALSE(v[1].is_zero());
}

TEST(Factored, CoprimeRefinement) {
    FactoredRational f;
    f.multiply_factor((K - 1) * (K + N), 1);
    f.multiply_factor((K - 1) * (K + 2), -1);
    f.refine_coprime();
    EXPECT_EQ(f.to_rational_function(), RationalFunction(K + N, K + 2));
    auto basis = coprime_basis({K * K - 1, K * K + 2 * K + 1});
    EXPECT_EQ(basis.size(), 2u);
}

TEST(Factored, DisplayFactorization) {
    Polynomial p = 8 * (N - 1) * (N - 1);
    FactoredRational f = factor_polynomial(p);
    EXPECT_EQ(f.coefficient(), Rational(8));
    ASSERT_EQ(f.factors().size(), 1u);
    EXPECT_EQ(f.factors().begin()->second, 2);

    Polynomial q = (2 * A + 2 * B + 2 * N - 1) * (2 * A + 2 * B + N - 1) * N * (N * N + A);
    FactoredRational g = factor_polynomial(-3 * q);
    EXPECT_EQ(g.numerator() * Rational(1, 1), -3 * q);
    EXPECT_EQ(g.factors().size(), 4u);
    Polynomial r = (7 * N * N - 7 * N + 2);
    EXPECT_EQ(factor_polynomial(r).factors().size(), 1u);
}
