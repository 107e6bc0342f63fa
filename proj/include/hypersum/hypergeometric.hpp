#pragma once

#include "hypersum/expr.hpp"

#include <string>
#include <vector>

namespace hypersum {

enum class Direction { Down, Up };

struct GammaFactor {
    Polynomial argument;
    int multiplicity = 0;
};

struct PowerFactor {
    Expr base;
    Polynomial exponent;
};

struct ProdFactor {
    Expr body;
    std::string index;
    Expr lower;
    Expr upper;
    int multiplicity = 0;
};

/// prefactor * prod(base^exponent) * prod(Gamma(arg)^m) * prod(products) * opaque factors.
struct GammaProduct {
    FactoredRational prefactor;
    std::vector<PowerFactor> powers;
    std::vector<GammaFactor> gammas;
    std::vector<ProdFactor> prods;
    std::vector<std::pair<Expr, int>> opaque;  // factors outside the recognized classes

    /// this * other^exponent, with like factors merged.
    void multiply(const GammaProduct& other, int exponent = 1);
    /// Merges Gamma factors (and products) whose arguments differ by integers.
    void merge_shift_classes();
    /// True when nothing but the rational prefactor remains.
    bool is_rational() const;
    Expr to_expr() const;
};

/// Rewrites factorials, binomials and Pochhammer symbols as Gamma terms.
/// With a nonempty var, Gamma arguments must be integer-linear in var.
GammaProduct to_gamma_product(const Expr& e, const std::string& var = "");

Expr simplify_gamma(const Expr& e);
Expr simplify_combinatorial(const Expr& e);
/// Gamma(x) -> factorial(x - 1) everywhere.
Expr gamma_to_factorial(const Expr& e);

struct TermRatio {
    FactoredRational ratio;  // coprime factors
    Direction direction = Direction::Down;
    RationalFunction rational() const { return ratio.to_rational_function(); }
};

/// a(var)/a(var-1) (down) or a(var+1)/a(var) (up). Throws NotHypergeometric.
TermRatio term_ratio(const Expr& e, const std::string& var, Direction direction = Direction::Down);

}  // namespace hypersum
