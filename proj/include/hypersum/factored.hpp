#pragma once

#include "hypersum/rational_function.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hypersum {

/// Rational function kept as coefficient * prod(factor^exponent).
///
/// Factors are primitive with positive leading coefficient and nonconstant;
/// exponents are nonzero. Factors are not necessarily irreducible or coprime
/// unless refine_coprime() has been called.
class FactoredRational {
public:
    FactoredRational() : coef_(1) {}
    explicit FactoredRational(const Rational& c) : coef_(c) {}
    static FactoredRational from_polynomial(const Polynomial& p);
    static FactoredRational from_rational_function(const RationalFunction& f);

    const Rational& coefficient() const { return coef_; }
    const std::map<Polynomial, int>& factors() const { return factors_; }
    bool is_zero() const { return coef_ == 0; }
    bool is_constant() const { return factors_.empty(); }
    bool depends_on(std::string_view var) const;

    void multiply_factor(const Polynomial& p, int exponent);
    void scale(const Rational& c) { coef_ *= c; }

    FactoredRational& operator*=(const FactoredRational& other);
    friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) { return a *= b; }
    friend FactoredRational operator/(FactoredRational a, const FactoredRational& b) { return a *= b.inverse(); }
    FactoredRational inverse() const;
    FactoredRational pow(int exponent) const;

    FactoredRational substitute(std::string_view var, const Polynomial& value) const;
    FactoredRational shift(std::string_view var, const Rational& c) const;
    /// Throws DivisionError when a denominator factor vanishes.
    Rational evaluate_all(const std::map<std::string, Rational>& point) const;

    /// Splits factors so that any two distinct factors are coprime.
    void refine_coprime();
    /// (factors depending on var, the rest including the coefficient).
    std::pair<FactoredRational, FactoredRational> split(std::string_view var) const;

    /// Product of positive-exponent factors times the coefficient's numerator.
    Polynomial numerator() const;
    /// Product of negative-exponent factors times the coefficient's denominator.
    Polynomial denominator() const;
    RationalFunction to_rational_function() const;

    friend bool operator==(const FactoredRational& a, const FactoredRational& b) {
        return a.coef_ == b.coef_ && a.factors_ == b.factors_;
    }

private:
    Rational coef_;
    std::map<Polynomial, int> factors_;
};

/// Pairwise coprime normalized polynomials whose products generate every input.
std::vector<Polynomial> coprime_basis(const std::vector<Polynomial>& polys);

/// Factorization for display: integer content, linear factors with rational
/// roots (also multi-parameter linear forms), and square-free parts of the rest.
FactoredRational factor_polynomial(const Polynomial& p);

}  // namespace hypersum
