#include "hypersum/rational_function.hpp"

#include "hypersum/errors.hpp"

namespace hypersum {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionError("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    Polynomial g = gcd(num, den);
    if (g.is_constant()) {
        num_ = num;
        den_ = den;
    } else {
        num_ = num.exact_div(g);
        den_ = den.exact_div(g);
    }
    normalize_scale();
}

RationalFunction RationalFunction::from_coprime(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionError("rational function with zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize_scale();
    return r;
}

void RationalFunction::normalize_scale() {
    Rational c = den_.leading_numeric_coefficient();
    if (c == 1) return;
    Rational inv = 1 / c;
    num_ *= inv;
    den_ *= inv;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionError("division by zero rational function");
    RationalFunction r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_scale();
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * (1 / a.den_.constant_value()) + b.num_ * (1 / b.den_.constant_value()));
    Polynomial g = gcd(a.den_, b.den_);
    Polynomial ad = a.den_.exact_div(g);
    Polynomial bd = b.den_.exact_div(g);
    return RationalFunction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_ * (1 / (a.den_.constant_value() * b.den_.constant_value())));
    Polynomial g1 = gcd(a.num_, b.den_);
    Polynomial g2 = gcd(b.num_, a.den_);
    return RationalFunction::from_coprime(a.num_.exact_div(g1) * b.num_.exact_div(g2),
                                          a.den_.exact_div(g2) * b.den_.exact_div(g1));
}

RationalFunction pow(const RationalFunction& base, int exponent) {
    if (exponent < 0) return pow(base.inverse(), -exponent);
    return RationalFunction::from_coprime(pow(base.num(), static_cast<unsigned>(exponent)),
                                          pow(base.den(), static_cast<unsigned>(exponent)));
}

RationalFunction RationalFunction::substitute(std::string_view var, const Polynomial& value) const {
    return RationalFunction(num_.substitute(var, value), den_.substitute(var, value));
}

RationalFunction RationalFunction::shift(std::string_view var, const Rational& c) const {
    // Shifting preserves coprimality.
    return from_coprime(num_.shift(var, c), den_.shift(var, c));
}

RationalFunction RationalFunction::evaluate(const std::map<std::string, Rational>& point) const {
    Polynomial d = den_.evaluate(point);
    if (d.is_zero()) throw DivisionError("denominator vanishes at evaluation point");
    return RationalFunction(num_.evaluate(point), d);
}

Rational RationalFunction::evaluate_all(const std::map<std::string, Rational>& point) const {
    Rational d = den_.evaluate_all(point);
    if (d == 0) throw DivisionError("denominator vanishes at evaluation point");
    return num_.evaluate_all(point) / d;
}

std::string RationalFunction::to_string() const {
    if (is_polynomial()) return (num_ * (1 / den_.constant_value())).to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace hypersum
