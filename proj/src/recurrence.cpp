#include "hypersum/recurrence.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <map>

namespace hypersum {

void Recurrence::normalize() {
    Polynomial g;
    for (const auto& c : coefficients) g = gcd(g, c);
    if (g.is_zero()) return;
    for (auto& c : coefficients) c = c.exact_div(g);
    // exact_div by a primitive gcd may leave rational content
    Rational content = 0;
    for (const auto& c : coefficients) {
        if (c.is_zero()) continue;
        Rational cc = c.content();
        if (content == 0) {
            content = cc;
        } else {
            Integer num, den;
            mpz_gcd(num.get_mpz_t(), content.get_num().get_mpz_t(), cc.get_num().get_mpz_t());
            mpz_lcm(den.get_mpz_t(), content.get_den().get_mpz_t(), cc.get_den().get_mpz_t());
            content = Rational(num, den);
            content.canonicalize();
        }
    }
    std::size_t far = coefficients.size();
    while (far > 0 && coefficients[far - 1].is_zero()) --far;
    Rational scale = 1 / content;
    if (far > 0 && coefficients[far - 1].leading_numeric_coefficient() < 0) scale = -scale;
    for (auto& c : coefficients) c *= scale;
}

Expr Recurrence::to_expr(bool factor) const {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        const Polynomial& c = coefficients[j];
        if (c.is_zero()) continue;
        Expr ce = factor ? from_rational_factored(RationalFunction(c)) : from_polynomial(c);
        terms.push_back(ce * Expr::sum_ref(var, shift_of(j)));
    }
    return add(std::move(terms));
}

Recurrence to_direction(const Recurrence& rec, Direction direction) {
    if (rec.direction == direction) return rec;
    Recurrence out;
    out.var = rec.var;
    out.direction = direction;
    const int order = rec.order();
    // down -> up: n -> n + J; up -> down: n -> n - J. Coefficient lists reverse.
    Rational shift = direction == Direction::Up ? order : -order;
    for (int i = 0; i <= order; ++i) out.coefficients.push_back(rec.coefficients[order - i].shift(rec.var, shift));
    out.normalize();
    return out;
}

bool recurrences_equal(const Recurrence& a, const Recurrence& b) {
    if (a.var != b.var) return false;
    Recurrence x = to_direction(a, Direction::Down);
    Recurrence y = to_direction(b, Direction::Down);
    auto trim = [](Recurrence& r) {
        while (!r.coefficients.empty() && r.coefficients.back().is_zero()) r.coefficients.pop_back();
    };
    trim(x);
    trim(y);
    x.normalize();
    y.normalize();
    return x.coefficients == y.coefficients;
}

Recurrence recurrence_from_expr(const Expr& e, const std::string& var) {
    Expr ex = expand(e);
    std::vector<Expr> terms = ex.kind() == Kind::Add ? ex.args() : std::vector<Expr>{ex};
    std::map<long, Polynomial> by_shift;
    for (const auto& t : terms) {
        std::vector<Expr> fs = t.kind() == Kind::Mul ? t.args() : std::vector<Expr>{t};
        std::optional<long> shift;
        std::vector<Expr> rest;
        for (const auto& f : fs) {
            if (f.kind() == Kind::SumRef) {
                if (shift || f.name() != var) throw Error("recurrence term is not linear in sum(" + var + ")");
                shift = f.shift();
            } else {
                rest.push_back(f);
            }
        }
        if (!shift) throw Error("recurrence term without sum(" + var + "): " + print(t));
        auto c = to_polynomial(mul(std::move(rest)));
        if (!c) throw Error("recurrence coefficient is not polynomial: " + print(t));
        by_shift[*shift] += *c;
    }
    if (by_shift.empty()) throw Error("empty recurrence");
    long lo = by_shift.begin()->first;
    long hi = by_shift.rbegin()->first;
    Recurrence rec;
    rec.var = var;
    if (lo == 0) {
        rec.direction = Direction::Up;
        for (long s = 0; s <= hi; ++s) rec.coefficients.push_back(by_shift.count(s) ? by_shift[s] : Polynomial());
    } else {
        rec.direction = Direction::Down;
        for (long s = hi; s >= lo; --s) {
            Polynomial c = by_shift.count(s) ? by_shift[s] : Polynomial();
            rec.coefficients.push_back(c.shift(var, Rational(-hi)));
        }
    }
    rec.normalize();
    return rec;
}

}  // namespace hypersum
