#include "hypersum/errors.hpp"
#include "hypersum/hyper.hpp"
#include "hypersum/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hypersum;

namespace {

Recurrence R(const char* text, const char* var = "n") { return recurrence_from_expr(parse(text), var); }

HyperSpec spec(std::initializer_list<const char*> upper, std::initializer_list<const char*> lower, const char* x) {
    HyperSpec s;
    for (const char* a : upper) s.upper.push_back(parse(a));
    for (const char* b : lower) s.lower.push_back(parse(b));
    s.x = parse(x);
    return s;
}

}  // namespace

TEST(Hyperterm, Shapes) {
    EXPECT_EQ(hyperterm(spec({}, {}, "x"), "k"), parse("x^k/factorial(k)"));
    EXPECT_EQ(hyperterm(spec({"a", "b"}, {"c"}, "z"), "k"),
              parse("pochhammer(a,k)*pochhammer(b,k)*z^k/(pochhammer(c,k)*factorial(k))"));
    // (1)_k/(1)_k cancels in the term ratio
    EXPECT_EQ(term_ratio(hyperterm(spec({"1"}, {"1"}, "x"), "k"), "k").rational(),
              term_ratio(parse("x^k/factorial(k)"), "k").rational());
}

TEST(Hyperterm, RatioProperty) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> count(0, 3), num(-9, 9), den(1, 4);
    auto random_rational = [&] {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        return r;
    };
    for (int trial = 0; trial < 50; ++trial) {
        HyperSpec s;
        int p = count(rng), q = count(rng);
        for (int i = 0; i < p; ++i) s.upper.push_back(Expr(random_rational()));
        for (int j = 0; j < q; ++j) {
            Rational b = random_rational();
            if (b.get_den() == 1 && b <= 0) b += 1 - b;  // keep lower parameters off the poles
            s.lower.push_back(Expr(b));
        }
        Rational x = random_rational();
        if (x == 0) x = 1;
        s.x = Expr(x);
        const Expr k = Expr::symbol("k");
        Expr expected = Expr(x) / k;
        for (const auto& a : s.upper) expected = expected * (a + k - Expr(1));
        for (const auto& b : s.lower) expected = expected / (b + k - Expr(1));
        EXPECT_EQ(term_ratio(hyperterm(s, "k"), "k").rational(), *to_rational_function(expected)) << print(hyperterm(s, "k"));
    }
}

TEST(Hyperrecursion, Vandermonde) {
    ZeilbergerResult z = hyperrecursion(spec({"-n", "b"}, {"c"}, "1"), "n");
    EXPECT_TRUE(recurrences_equal(z.recurrence, R("(n - 1 + c - b)*sum(n - 1) - (n - 1 + c)*sum(n)")));
    EXPECT_EQ(first_order_closed_form(z.recurrence, Expr(1)), parse("pochhammer(c-b,n)/pochhammer(c,n)"));
}

TEST(Hyperrecursion, BinomialTheorem) {
    HyperSpec s = spec({"-n"}, {}, "x");
    ZeilbergerResult z = hyperrecursion(s, "n");
    EXPECT_TRUE(recurrences_equal(z.recurrence, R("sum(n) - (1 - x)*sum(n - 1)")));
    // sum_k (-n)_k x^k/k! = (1-x)^n at x = 1/3
    Expr term = substitute(hyperterm(s, "k"), "x", Expr(Rational(1, 3)));
    for (long m = 0; m <= 6; ++m) {
        Expr brute = finite_sum(substitute(term, "n", Expr(m)), "k", 0, m);
        Rational expected = 1;
        for (long i = 0; i < m; ++i) expected *= Rational(2, 3);
        EXPECT_EQ(brute, Expr(expected)) << m;
    }
}

TEST(Hyperrecursion, AgreesWithSumrecursion) {
    for (const HyperSpec& s : {spec({"-n", "b"}, {"c"}, "1"), spec({"-n", "n+1"}, {"1"}, "x"), spec({"-n", "a"}, {"2*a"}, "2"),
                               spec({"-n", "-n"}, {"1"}, "1")}) {
        Recurrence direct = sumrecursion(hyperterm(s, "k"), "k", "n").recurrence;
        EXPECT_TRUE(recurrences_equal(hyperrecursion(s, "n").recurrence, direct));
    }
}

TEST(Hyperrecursion, KrawtchoukTerm) {
    Expr term = parse("(-1)^n*p^n*binomial(NN,n)") * hyperterm(spec({"-n", "-x"}, {"-NN"}, "1/p"), "k");
    EXPECT_TRUE(recurrences_equal(sumrecursion(term, "k", "n").recurrence,
                                  R("(x + 1 - 2*p - NN*p + (2*p - 1)*n)*sum(n - 1) - ((n - NN - 2)*(p - 1)*sum(n - 2)*p + sum(n)*n)")));
}

TEST(Hyperrecursion, Rejections) {
    EXPECT_THROW(hyperrecursion(spec({"-n"}, {}, "n"), "n"), ZeilbergerNotApplicable);
    EXPECT_THROW(hyperrecursion(spec({"-n"}, {"-2"}, "1"), "n"), ZeilbergerNotApplicable);
    ZeilbergerOptions one;
    one.fixed_order = 1;
    EXPECT_NO_THROW(hyperrecursion(spec({"-n", "b"}, {"c"}, "1"), "n", one));
}

TEST(Hyperrecursion, Dougall) {
    HyperSpec s = spec({"d", "1+d/2", "d+b-a", "d+c-a", "1+a-b-c", "n+a", "-n"},
                       {"d/2", "1+a-b", "1+a-c", "b+c+d-a", "1+d-a-n", "1+d+n"}, "1");
    ZeilbergerResult z = hyperrecursion(s, "n");
    EXPECT_TRUE(recurrences_equal(z.recurrence, R("(2*a - b - c - d + n)*(b + n - 1)*(c + n - 1)*(d + n)*sum(n - 1)"
                                                  " + (a - b - c - d - n + 1)*(a - b + n)*(a - c + n)*(a - d + n - 1)*sum(n)")));
}
