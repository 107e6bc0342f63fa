#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypersum {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in descending graded-lexicographic order. The variable list
/// holds exactly the symbols that occur, sorted by name; the first name is the
/// most significant one in the lexicographic tie break. Two polynomials with the
/// same value therefore compare equal structurally.
class Polynomial {
public:
    static constexpr std::size_t kMaxVars = 12;
    using Exponents = std::array<std::uint16_t, kMaxVars>;

    struct Term {
        Exponents exp{};
        std::uint32_t degree = 0;
        Rational coef;
    };

    Polynomial() = default;
    Polynomial(long value);  // NOLINT: integer literals are polynomials
    explicit Polynomial(const Rational& value);

    static Polynomial variable(const std::string& name);
    static Polynomial monomial(const std::string& name, unsigned power, const Rational& coef = 1);

    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    bool is_one() const;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    /// Coefficient of the grlex-leading term.
    const Rational& leading_numeric_coefficient() const;

    bool depends_on(std::string_view var) const;
    int degree(std::string_view var) const;  // -1 for zero
    int total_degree() const;                // -1 for zero

    /// Coefficients with respect to var; entry i multiplies var^i.
    std::vector<Polynomial> coefficients(std::string_view var) const;
    static Polynomial from_coefficients(const std::string& var, const std::vector<Polynomial>& coeffs);
    Polynomial leading_coefficient(std::string_view var) const;
    Polynomial coefficient(std::string_view var, int power) const;

    /// Positive rational c such that p / c has coprime integer coefficients.
    Rational content() const;
    Polynomial primitive_part() const;
    /// Primitive part with positive grlex-leading coefficient.
    Polynomial normalized() const;

    Polynomial derivative(std::string_view var) const;
    Polynomial substitute(std::string_view var, const Polynomial& value) const;
    /// p(var + c).
    Polynomial shift(std::string_view var, const Rational& c) const;
    Polynomial evaluate(const std::map<std::string, Rational>& point) const;
    Rational evaluate_all(const std::map<std::string, Rational>& point) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(Polynomial a, long c) { return a *= Rational(c); }

    /// Exact quotient if divisor divides *this.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
    /// Exact quotient; throws DivisionError when not divisible.
    Polynomial exact_div(const Polynomial& divisor) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

    /// Builds a polynomial from raw terms over the given variables (any order, duplicates allowed).
    static Polynomial from_terms(std::vector<std::string> vars, std::vector<Term> terms);
    /// Same polynomial expressed over a superset of its variables.
    std::vector<Term> terms_over(const std::vector<std::string>& vars) const;

private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;

    void canonicalize();
    int var_index(std::string_view var) const;
};

Polynomial pow(const Polynomial& base, unsigned exponent);

/// Primitive gcd (positive leading coefficient); gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Resultant with respect to var (subresultant PRS).
Polynomial resultant(const Polynomial& a, const Polynomial& b, const std::string& var);
/// All integers z with p|_{var=z} identically zero in the remaining symbols.
std::vector<Integer> integer_roots(const Polynomial& p, const std::string& var);
/// All j >= 0 such that gcd(q(var), r(var + j)) has positive degree in var.
std::vector<long> dispersion_set(const Polynomial& q, const Polynomial& r, const std::string& var);
/// Union of variable lists, sorted.
std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace hypersum
