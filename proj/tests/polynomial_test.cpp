#include "hypersum/errors.hpp"
#include "hypersum/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypersum;

namespace {

Polynomial K = Polynomial::variable("k");
Polynomial N = Polynomial::variable("n");
Polynomial A = Polynomial::variable("a");

Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Polynomial p;
    for (int t = 0; t < terms; ++t) {
        Polynomial m(coef(rng));
        for (const auto& v : vars) m *= Polynomial::monomial(v, deg(rng));
        p += m;
    }
    return p;
}

// Determinant of a rational matrix by Gaussian elimination.
Rational det(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

Rational sylvester(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    int n = da + db;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
    return det(m);
}

}  // namespace

TEST(Polynomial, Arithmetic) {
    EXPECT_EQ((K - 1) * (K + 1), K * K - 1);
    EXPECT_EQ((6 * K * K + 4 * K).content(), Rational(2));
    EXPECT_EQ((K * K - 1).exact_div(K - 1), K + 1);
    EXPECT_THROW((K * K + 1).exact_div(K - 1), DivisionError);
    EXPECT_EQ((K * K * N).derivative("k"), 2 * K * N);
    EXPECT_TRUE((K - K).is_zero());
    EXPECT_TRUE((K - K).variables().empty());
}

TEST(Polynomial, SubstituteAndShift) {
    Polynomial p = N * N + K;
    EXPECT_EQ(p.shift("n", 1), N * N + 2 * N + 1 + K);
    EXPECT_EQ(p.evaluate({{"n", Rational(3)}}), K + 9);
    EXPECT_EQ(p.evaluate_all({{"n", Rational(3)}, {"k", Rational(1, 2)}}), Rational(19, 2));
}

TEST(Polynomial, ToString) {
    EXPECT_EQ((K * K - 2 * K * N + N * N).to_string(), "k^2 - 2*k*n + n^2");
    EXPECT_EQ((-K + Polynomial(Rational(1, 2))).to_string(), "-k + 1/2");
}

TEST(Polynomial, Gcd) {
    EXPECT_EQ(gcd(K * K - 1, K * K - 2 * K + 1), K - 1);
    EXPECT_EQ(gcd(K - N, K + N), Polynomial(1));
    EXPECT_EQ(gcd(Polynomial(), 3 * K), K);
    EXPECT_EQ(gcd((K + N) * (A - 1) * 4, (K + N) * (A + 2) * 6), K + N);
}

TEST(Polynomial, GcdRandomProperty) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        std::vector<std::string> vars = {"k", "n"};
        if (t % 3 == 0) vars.push_back("a");
        Polynomial a = random_poly(rng, vars, 2, 3);
        Polynomial b = random_poly(rng, vars, 2, 3);
        Polynomial g = random_poly(rng, vars, 2, 2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        Polynomial h = gcd(a * g, b * g);
        EXPECT_TRUE(h.divide_exact(g.primitive_part()).has_value()) << h.to_string() << " / " << g.to_string();
        EXPECT_TRUE((a * g).divide_exact(h).has_value());
        EXPECT_TRUE((b * g).divide_exact(h).has_value());
    }
}

TEST(Polynomial, ResultantMatchesSylvester) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int t = 0; t < 80; ++t) {
        int da = 1 + t % 4, db = 1 + (t / 4) % 4;
        std::vector<Polynomial> ca, cb;
        for (int i = 0; i <= da; ++i) ca.push_back(Polynomial(coef(rng)) + Polynomial(coef(rng)) * N);
        for (int i = 0; i <= db; ++i) cb.push_back(Polynomial(coef(rng)) * N * N + Polynomial(coef(rng)));
        if (ca.back().is_zero()) ca.back() = Polynomial(1);
        if (cb.back().is_zero()) cb.back() = N;
        Polynomial a = Polynomial::from_coefficients("k", ca);
        Polynomial b = Polynomial::from_coefficients("k", cb);
        Polynomial res = resultant(a, b, "k");
        for (int nv : {-2, 3, 5}) {
            std::vector<Rational> va, vb;
            for (auto& c : ca) va.push_back(c.evaluate_all({{"n", Rational(nv)}}));
            for (auto& c : cb) vb.push_back(c.evaluate_all({{"n", Rational(nv)}}));
            if (va.back() == 0 || vb.back() == 0) continue;
            EXPECT_EQ(res.evaluate_all({{"n", Rational(nv)}}), sylvester(va, vb));
        }
    }
}

TEST(Polynomial, IntegerRoots) {
    auto r = integer_roots((K - 3) * (K + 2), "k");
    EXPECT_EQ(r, (std::vector<Integer>{-2, 3}));
    EXPECT_TRUE(integer_roots(K - N, "k").empty());
    EXPECT_TRUE(integer_roots(K * K + 1, "k").empty());
    EXPECT_EQ(integer_roots((K - 5) * (K - N) * K, "k"), (std::vector<Integer>{0, 5}));
    EXPECT_EQ(integer_roots(2 * K - 1, "k").size(), 0u);
}

TEST(Polynomial, Dispersion) {
    EXPECT_EQ(dispersion_set(K, K - 3, "k"), (std::vector<long>{3}));
    EXPECT_TRUE(dispersion_set(K - 1, K - N - 1, "k").empty());
    // gcd(k(k-2), k+2) = 1, so only j = 0 qualifies; the mirrored pair has {0, 2}.
    EXPECT_EQ(dispersion_set(K * (K - 2), K, "k"), (std::vector<long>{0}));
    EXPECT_EQ(dispersion_set(K, K * (K - 2), "k"), (std::vector<long>{0, 2}));
}

TEST(Polynomial, DispersionMatchesBruteForce) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(-6, 6);
    for (int t = 0; t < 100; ++t) {
        auto lin = [&]() {
            Polynomial p = K + small(rng);
            if (t % 2) p += N * (small(rng) % 2);
            return p;
        };
        Polynomial q = lin(), r = lin();
        if (t % 3 == 0) q *= lin();
        if (t % 4 == 0) r *= K * K + small(rng);
        if (t % 5 == 0) q *= K * K + 2 * K + 2;
        auto fast = dispersion_set(q, r, "k");
        std::vector<long> brute;
        for (long j = 0; j <= 40; ++j)
            if (gcd(q, r.shift("k", Rational(j))).degree("k") > 0) brute.push_back(j);
        EXPECT_EQ(fast, brute) << q.to_string() << " ; " << r.to_string();
    }
}
