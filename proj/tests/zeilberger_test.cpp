#include "hypersum/errors.hpp"
#include "hypersum/evaluate.hpp"
#include "hypersum/zeilberger.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypersum;

namespace {

Recurrence R(const char* text, const char* var = "n") { return recurrence_from_expr(parse(text), var); }

const char* kKrawtchouk = "(-1)^n*p^n*binomial(NN,n)*pochhammer(-n,k)*pochhammer(-x,k)/(pochhammer(-NN,k)*factorial(k))*(1/p)^k";

// Brute force s(m) = sum over k = 0..m of F(m, k) for integer m, all terms exact.
Rational brute_sum(const Expr& F, long m, long kmax) {
    Rational s = 0;
    for (long k = 0; k <= kmax; ++k) s += evaluate_rational(F, "k", Rational(k), {{"n", Rational(m)}});
    return s;
}

// sum_j sigma_j(n) F(n-j,k) = G(n,k) - G(n,k-1) at integer points, G = certificate * F.
void expect_certificate(const Expr& F, const ZeilbergerResult& z, const Assignment& params) {
    const auto& c = z.certificate;
    Expr G = from_rational_function(c.certificate) * F;
    int checked = 0;
    for (long n = 3; n <= 8; ++n) {
        for (long k = 1; k <= n + 1; ++k) {
            Assignment at = params;
            at["n"] = n;
            try {
                Rational lhs = 0;
                for (std::size_t j = 0; j < c.sigma.size(); ++j) {
                    Expr term = from_rational_function(c.sigma[j]) * substitute(F, "n", parse("n") - Expr(static_cast<long>(j)));
                    lhs += evaluate_rational(term, "k", Rational(k), at);
                }
                Rational rhs = evaluate_rational(G, "k", Rational(k), at) - evaluate_rational(G, "k", Rational(k - 1), at);
                EXPECT_EQ(lhs, rhs) << "n = " << n << ", k = " << k;
                ++checked;
            } catch (const PoleAtPoint&) {
            }
        }
    }
    EXPECT_GT(checked, 10);
}

}  // namespace

TEST(Recurrence, FromExpressionAndNormalization) {
    Recurrence r = R("2*sum(n-1) - sum(n)");
    EXPECT_EQ(r.direction, Direction::Down);
    EXPECT_EQ(print(r.to_expr()), "2*sum(n - 1) - sum(n)");
    EXPECT_TRUE(recurrences_equal(r, R("14*sum(n-1) - 7*sum(n)")));
    EXPECT_TRUE(recurrences_equal(r, R("-2*sum(n-1) + sum(n)")));
    EXPECT_TRUE(recurrences_equal(r, R("(n+3)*(2*sum(n-1) - sum(n))")));
    EXPECT_FALSE(recurrences_equal(r, R("sum(n-1) - sum(n)")));
    Recurrence shifted = R("2*sum(n+2) - sum(n+3)");
    EXPECT_TRUE(recurrences_equal(r, shifted));
}

TEST(Recurrence, DirectionRoundTrip) {
    Recurrence down = R("2*sum(n-1) - sum(n)");
    Recurrence up = to_direction(down, Direction::Up);
    EXPECT_EQ(up.direction, Direction::Up);
    EXPECT_TRUE(recurrences_equal(up, R("2*sum(n) - sum(n+1)")));
    Recurrence back = to_direction(up, Direction::Down);
    EXPECT_EQ(back.coefficients, down.coefficients);

    Recurrence three = R("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)");
    EXPECT_EQ(to_direction(to_direction(three, Direction::Up), Direction::Down).coefficients, three.coefficients);
}

TEST(Zeilberger, BinomialRow) {
    ZeilbergerResult z = sumrecursion(parse("binomial(n,k)"), "k", "n");
    EXPECT_EQ(print(z.recurrence.to_expr()), "2*sum(n - 1) - sum(n)");
    EXPECT_EQ(z.certificate.order, 1);
    expect_certificate(parse("binomial(n,k)"), z, {});
}

TEST(Zeilberger, SumsOfCubesAndFranel) {
    Expr a = parse("binomial(n,k)^3");
    Expr b = parse("binomial(n,k)^2*binomial(2*k,n)");
    ZeilbergerResult za = sumrecursion(a, "k", "n");
    ZeilbergerResult zb = sumrecursion(b, "k", "n");
    Recurrence expected = R("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)");
    EXPECT_TRUE(recurrences_equal(za.recurrence, expected));
    EXPECT_TRUE(recurrences_equal(zb.recurrence, expected));
    EXPECT_TRUE(recurrences_equal(za.recurrence, zb.recurrence));
    expect_certificate(a, za, {});
    expect_certificate(b, zb, {});
    // both sums satisfy it numerically and agree at n = 0, 1
    for (const Expr* F : {&a, &b}) {
        std::vector<Rational> s;
        for (long m = 0; m <= 9; ++m) s.push_back(brute_sum(*F, m, m));
        EXPECT_EQ(s[0], 1);
        EXPECT_EQ(s[1], 2);
        for (long m = 2; m <= 9; ++m) {
            Rational lhs = 8 * Rational((m - 1) * (m - 1)) * s[m - 2] - Rational(m * m) * s[m] +
                           Rational(7 * m * m - 7 * m + 2) * s[m - 1];
            EXPECT_EQ(lhs, 0) << m;
        }
    }
}

TEST(Zeilberger, TraceOfSquares) {
    Trace t;
    ZeilbergerResult z = sumrecursion(parse("binomial(n,k)^2"), "k", "n", {}, &t);
    std::vector<std::string> expected{
        "F(n,k)/F(n-1,k):= n^2/(k - n)^2",
        "F(n,k)/F(n,k-1):= (k - n - 1)^2/k^2",
        "Zeilberger algorithm applicable",
        "applying Zeilberger algorithm for order:= 1",
        "p:= k^2*zb_sigma(1) - 2*k*n*zb_sigma(1) + n^2*zb_sigma(1) + n^2",
        "q:= k^2 - 2*k*n + n^2 - 2*k + 2*n + 1",
        "r:= k^2",
        "degreebound := 1",
        "f:= (2*k - 3*n + 2)/n",
        "p:= -(4*k^2*n - 8*k*n^2 + 3*n^3 - 2*k^2 + 4*k*n - 2*n^2)/n",
        "Zeilberger algorithm successful",
    };
    EXPECT_EQ(t.lines(), expected);
    EXPECT_TRUE(recurrences_equal(z.recurrence, R("4*sum(n-1)*n - 2*sum(n-1) - sum(n)*n")));
}

TEST(Zeilberger, UpwardRecurrence) {
    ZeilbergerOptions options;
    options.direction = Direction::Up;
    ZeilbergerResult z = sumrecursion(parse("binomial(n,k)^2"), "k", "n", options);
    EXPECT_EQ(z.recurrence.direction, Direction::Up);
    Recurrence expected = R("sum(n+1)*n + sum(n+1) - 4*sum(n)*n - 2*sum(n)");
    EXPECT_EQ(expected.direction, Direction::Up);
    EXPECT_EQ(z.recurrence.coefficients, expected.coefficients);
}

TEST(Zeilberger, Clausen) {
    Expr F = parse(
        "factorial(a+k-1)*factorial(b+k-1)/(factorial(k)*factorial(-1/2+a+b+k))*"
        "factorial(a+n-k-1)*factorial(b+n-k-1)/(factorial(n-k)*factorial(-1/2+a+b+n-k))");
    ZeilbergerResult z = sumrecursion(F, "k", "n");
    EXPECT_TRUE(recurrences_equal(
        z.recurrence, R("(2*a + 2*b + 2*n - 1)*(2*a + 2*b + n - 1)*sum(n)*n - 2*(2*a + n - 1)*(a + b + n - 1)*(2*b + n - 1)*sum(n - 1)")));
}

TEST(Zeilberger, Dougall) {
    Expr F = parse(
        "pochhammer(d,k)*pochhammer(1+d/2,k)*pochhammer(d+b-a,k)*pochhammer(d+c-a,k)*pochhammer(1+a-b-c,k)*"
        "pochhammer(n+a,k)*pochhammer(-n,k)/(factorial(k)*pochhammer(d/2,k)*pochhammer(1+a-b,k)*pochhammer(1+a-c,k)*"
        "pochhammer(b+c+d-a,k)*pochhammer(1+d-a-n,k)*pochhammer(1+d+n,k))");
    ZeilbergerResult z = sumrecursion(F, "k", "n");
    EXPECT_TRUE(recurrences_equal(z.recurrence, R("(2*a - b - c - d + n)*(b + n - 1)*(c + n - 1)*(d + n)*sum(n - 1)"
                                                  " + (a - b - c - d - n + 1)*(a - b + n)*(a - c + n)*(a - d + n - 1)*sum(n)")));
}

TEST(Zeilberger, KrawtchoukInEachParameter) {
    Expr F = parse(kKrawtchouk);
    EXPECT_TRUE(recurrences_equal(sumrecursion(F, "k", "n").recurrence,
                                  R("(x + 1 - 2*p - NN*p + (2*p - 1)*n)*sum(n - 1) - ((n - NN - 2)*(p - 1)*sum(n - 2)*p + sum(n)*n)")));
    EXPECT_TRUE(recurrences_equal(sumrecursion(F, "k", "x").recurrence,
                                  R("-((x - 1 + NN*p - n - 2*(x - 1)*p)*sum(x - 1) + (x - 1 - NN)*sum(x)*p + (p - 1)*(x - 1)*sum(x - 2))",
                                    "x")));
    EXPECT_TRUE(recurrences_equal(sumrecursion(F, "k", "NN").recurrence,
                                  R("(x + 1 + n + (p - 2)*NN)*sum(NN - 1) - ((x + 1 - NN)*sum(NN - 2) - (n - NN)*(p - 1)*sum(NN))",
                                    "NN")));
}

TEST(Zeilberger, Failures) {
    EXPECT_THROW(sumrecursion(parse("binomial(n/2,k)"), "k", "n"), ZeilbergerNotApplicable);
    Expr hard = parse("binomial(n,k)*binomial(6*k,n)");
    EXPECT_THROW(sumrecursion(hard, "k", "n"), OrderExceeded);
    ZeilbergerOptions six;
    six.max_order = 6;
    ZeilbergerResult z = sumrecursion(hard, "k", "n", six);
    EXPECT_EQ(z.recurrence.order(), 6);
    ZeilbergerOptions fixed;
    fixed.fixed_order = 2;
    EXPECT_THROW(sumrecursion(parse("binomial(n,k)^3"), "k", "n", [] {
                     ZeilbergerOptions o;
                     o.fixed_order = 1;
                     return o;
                 }()),
                 OrderExceeded);
    EXPECT_EQ(sumrecursion(parse("binomial(n,k)^3"), "k", "n", fixed).certificate.order, 2);
}

TEST(ClosedForm, FirstOrder) {
    Recurrence pow2 = sumrecursion(parse("binomial(n,k)"), "k", "n").recurrence;
    EXPECT_EQ(first_order_closed_form(pow2, Expr(1)), parse("2^n"));

    Recurrence vandermonde = R("(n - 1 + c - b)*sum(n - 1) - (n - 1 + c)*sum(n)");
    EXPECT_EQ(first_order_closed_form(vandermonde, Expr(1)), parse("pochhammer(c-b,n)/pochhammer(c,n)"));

    EXPECT_EQ(first_order_closed_form(R("sum(n-1) - sum(n)"), parse("v")), parse("v"));
    EXPECT_THROW(first_order_closed_form(R("8*(n-1)^2*sum(n-2) - sum(n)*n^2 + (7*n^2-7*n+2)*sum(n-1)"), Expr(1)),
                 DegenerateRecurrence);

    // irreducible quadratic coefficient stays a formal product
    Expr q = first_order_closed_form(R("(n^2+1)*sum(n-1) - sum(n)"), Expr(1));
    EXPECT_EQ(q, parse("prod(j^2+1, j, 1, n)"));
}
