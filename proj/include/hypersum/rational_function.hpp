#pragma once

#include "hypersum/polynomial.hpp"

namespace hypersum {

/// Quotient of polynomials in lowest terms; the denominator's grlex-leading
/// coefficient is 1.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(long value) : num_(value), den_(1) {}  // NOLINT
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT
    explicit RationalFunction(const Rational& c) : num_(c), den_(1) {}
    RationalFunction(const Polynomial& num, const Polynomial& den);

    /// Skips the gcd; caller guarantees num and den are coprime.
    static RationalFunction from_coprime(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool depends_on(std::string_view var) const { return num_.depends_on(var) || den_.depends_on(var); }

    RationalFunction operator-() const;
    RationalFunction inverse() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction substitute(std::string_view var, const Polynomial& value) const;
    RationalFunction shift(std::string_view var, const Rational& c) const;
    RationalFunction evaluate(const std::map<std::string, Rational>& point) const;
    /// Throws DivisionError when the denominator vanishes.
    Rational evaluate_all(const std::map<std::string, Rational>& point) const;

    std::string to_string() const;

private:
    Polynomial num_;
    Polynomial den_;
    void normalize_scale();
};

RationalFunction pow(const RationalFunction& base, int exponent);

}  // namespace hypersum
