#include "hypersum/errors.hpp"
#include "hypersum/hypergeometric.hpp"

#include <gtest/gtest.h>

#include <map>
#include <optional>
#include <random>

using namespace hypersum;

namespace {

Expr S(const char* name) { return Expr::symbol(name); }

// Value of e with every symbol replaced, or nothing at a pole.
std::optional<Rational> value_at(const Expr& e, const std::map<std::string, long>& point) {
    try {
        Expr v = e;
        for (const auto& [name, x] : point) v = substitute(v, name, Expr(x));
        if (!v.is_number()) return std::nullopt;
        return v.value();
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Checks a == b at random integer points where both are defined.
void expect_equal_values(const Expr& a, const Expr& b, int points = 20, std::uint64_t seed = 7) {
    std::set<std::string> names = free_symbols(a);
    for (const auto& s : free_symbols(b)) names.insert(s);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(0, 12);
    int checked = 0;
    for (int tries = 0; tries < 400 && checked < points; ++tries) {
        std::map<std::string, long> point;
        for (const auto& s : names) point[s] = dist(rng);
        auto va = value_at(a, point);
        auto vb = value_at(b, point);
        if (!va || !vb) continue;
        EXPECT_EQ(*va, *vb) << print(a) << " vs " << print(b);
        ++checked;
    }
    EXPECT_GT(checked, 0) << "no defined points for " << print(a);
}

Expr ratio_expr(const TermRatio& r) { return from_factored(r.ratio); }

}  // namespace

TEST(GammaProduct, Conversion) {
    GammaProduct gp = to_gamma_product(parse("binomial(n,k)"), "k");
    gp.merge_shift_classes();
    EXPECT_EQ(gp.gammas.size(), 3u);
    EXPECT_EQ(gp.to_expr(), parse("gamma(n+1)/(gamma(k+1)*gamma(n+1-k))"));

    GammaProduct g = to_gamma_product(parse("gamma(a)"), "k");
    ASSERT_EQ(g.gammas.size(), 1u);
    EXPECT_EQ(g.gammas[0].multiplicity, 1);
    EXPECT_TRUE(g.prefactor.is_constant());
    EXPECT_EQ(g.prefactor.coefficient(), 1);

    EXPECT_THROW(to_gamma_product(parse("factorial(k/2)"), "k"), NotGammaRepresentable);
    EXPECT_THROW(to_gamma_product(parse("factorial(k)^k"), "k"), NotGammaRepresentable);
}

TEST(GammaProduct, SimplifyGamma) {
    Expr k = S("k"), n = S("n");
    EXPECT_EQ(simplify_gamma(parse("gamma(k+2)/gamma(k)")), k * (k + 1));
    Expr g = parse("gamma(n+1)/(gamma(k+1)*gamma(n+1-k))");
    EXPECT_EQ(simplify_gamma(g), g);
    EXPECT_EQ(simplify_gamma(parse("gamma(k+n)/gamma(k+n-3)")), (k + n - 1) * (k + n - 2) * (k + n - 3));
    // Oracle: k = 2, n = 5 gives 6!/3!.
    EXPECT_EQ(substitute(substitute(simplify_gamma(parse("gamma(k+n)/gamma(k+n-3)")), "k", Expr(2)), "n", Expr(5)),
              Expr(120));
}

TEST(GammaProduct, SimplifyCombinatorial) {
    Expr k = S("k");
    EXPECT_EQ(simplify_combinatorial(parse("pochhammer(a,k)/pochhammer(a,k-1)")), S("a") + k - 1);
    EXPECT_EQ(simplify_combinatorial(parse("binomial(n,k)")), parse("gamma(n+1)/(gamma(k+1)*gamma(n+1-k))"));

    Expr kraw = parse("(-1)^n*p^n*binomial(NN,n)*pochhammer(-n,k)*pochhammer(-x,k)/(pochhammer(-NN,k)*factorial(k)*p^k)");
    Expr shifted = substitute(kraw, "k", k + 1);
    Expr r = simplify_combinatorial(shifted / kraw);
    EXPECT_EQ(r, parse("(k - n)*(k - x)/((k - NN)*(k + 1)*p)"));
}

TEST(GammaProduct, GammaToFactorial) {
    Expr g = parse("gamma(n+1)/(gamma(k+1)*gamma(n+1-k))");
    EXPECT_EQ(gamma_to_factorial(g), parse("factorial(n)/(factorial(-(k-n))*factorial(k))"));
    EXPECT_EQ(print(gamma_to_factorial(g)), "factorial(n)/(factorial(k)*factorial(-(k - n)))");
    EXPECT_EQ(gamma_to_factorial(parse("gamma(x)")), parse("factorial(x-1)"));
    Expr plain = parse("k^2 + binomial(n,k)");
    EXPECT_EQ(gamma_to_factorial(plain), plain);

    for (const char* text : {"factorial(n)/(factorial(k)*factorial(n-k))", "factorial(2*k)/factorial(k)^2",
                             "factorial(n+k)*factorial(k)/factorial(n+2*k+1)"}) {
        Expr e = parse(text);
        expect_equal_values(gamma_to_factorial(to_gamma_product(e).to_expr()), e);
    }
}

TEST(TermRatio, Examples) {
    Expr k = S("k"), n = S("n");
    EXPECT_EQ(ratio_expr(term_ratio(parse("pochhammer(k-n,n)"), "k")), (k - 1) / (k - n - 1));
    EXPECT_EQ(term_ratio(parse("binomial(n,k)^2"), "n").rational(),
              *to_rational_function(parse("n^2/(k^2 - 2*k*n + n^2)")));
    EXPECT_EQ(term_ratio(parse("binomial(n,k)^2"), "k").rational(),
              *to_rational_function(parse("(k^2 - 2*k*n - 2*k + n^2 + 2*n + 1)/k^2")));
    EXPECT_EQ(ratio_expr(term_ratio(parse("1/k"), "k")), (k - 1) / k);
    EXPECT_EQ(ratio_expr(term_ratio(parse("1/k"), "k", Direction::Up)), k / (k + 1));
    EXPECT_EQ(ratio_expr(term_ratio(parse("(-1)^k*4^k"), "k")), Expr(-4));
    EXPECT_EQ(ratio_expr(term_ratio(parse("prod(a + b*j + c*j^2, j, 1, k)"), "k")),
              parse("a + b*k + c*k^2"));

    EXPECT_THROW(term_ratio(parse("factorial(k/2)"), "k"), NotHypergeometric);
    EXPECT_THROW(term_ratio(parse("factorial(k)^k"), "k"), NotHypergeometric);
    EXPECT_THROW(term_ratio(parse("2^(k^2)"), "k"), NotHypergeometric);
}

TEST(TermRatio, NumericOracle) {
    const char* corpus[] = {
        "binomial(n,k)^2",
        "(-1)^k*binomial(n,k)*binomial(2*k,k)/4^k",
        "factorial(2*k)/(factorial(k+1)*factorial(k))",
        "pochhammer(a,k)*pochhammer(b,k)/(pochhammer(c,k)*factorial(k))",
        "binomial(n,k)*binomial(6*k,n)",
        "k*factorial(k) + factorial(k+1)",
        "(k^2+1)*binomial(n,2*k)/(k+3)",
        "prod(a + j, j, 1, 2*k)",
    };
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(1, 9);
    for (const char* text : corpus) {
        Expr e = parse(text);
        for (const char* var : {"k", "n"}) {
            if (!depends_on(e, var)) continue;
            TermRatio down = term_ratio(e, var);
            TermRatio up = term_ratio(e, var, Direction::Up);
            Expr prev = substitute(e, var, Expr::symbol(var) - 1);
            Expr next = substitute(e, var, Expr::symbol(var) + 1);
            int checked = 0;
            for (int t = 0; t < 200 && checked < 15; ++t) {
                std::map<std::string, long> point;
                for (const auto& s : free_symbols(e)) point[s] = dist(rng);
                point[var] += 3;
                auto a = value_at(e, point), b = value_at(prev, point), c = value_at(next, point);
                if (!a || !b || !c || *a == 0 || *b == 0) continue;
                std::map<std::string, Rational> q;
                for (const auto& [s, x] : point) q[s] = x;
                try {
                    EXPECT_EQ(down.ratio.evaluate_all(q), *a / *b) << text << " in " << var;
                    EXPECT_EQ(up.ratio.evaluate_all(q), *c / *a) << text << " in " << var;
                } catch (const DivisionError&) {
                    continue;
                }
                ++checked;
            }
            EXPECT_GT(checked, 0) << text;
        }
    }
}

TEST(TermRatio, SimplifiedTermEqualsInput) {
    for (const char* text : {"binomial(n,k)^2*binomial(n+k,k)", "factorial(k+3)/factorial(k)",
                             "pochhammer(a,k+2)/pochhammer(a,k)", "(-1)^k*binomial(2*n,n+k)*4^(k+1)"}) {
        Expr e = parse(text);
        expect_equal_values(simplify_combinatorial(e), e);
    }
}
