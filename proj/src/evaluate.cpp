#include "hypersum/evaluate.hpp"

#include "hypersum/errors.hpp"

#include <optional>

namespace hypersum {

namespace {

// Leading term c * eps^order of a Laurent expansion in eps = var - at.
struct Value {
    enum class State { Regular, Zero, Small };
    // Zero: identically zero near the point. Small: O(eps^order) with unknown coefficient.
    State state = State::Regular;
    Rational c = 1;
    int order = 0;
    std::map<Rational, int> gam;

    static Value zero() { return Value{State::Zero, 0, 0, {}}; }
    static Value small(int order) { return Value{State::Small, 0, order, {}}; }
    static Value of(const Rational& v, int order = 0) {
        if (v == 0) return zero();
        return Value{State::Regular, v, order, {}};
    }
};

Rational factorial_of(long m) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Rational(f);
}

Rational rational_power(const Rational& a, long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    Rational out(num, den);
    out.canonicalize();
    if (e < 0) {
        if (out == 0) throw PoleAtPoint("division by zero");
        out = 1 / out;
    }
    return out;
}

bool is_int(const Rational& x) { return x.get_den() == 1; }

// (x)_m = x (x+1) ... (x+m-1), and 1/((x-1) ... (x+m)) for negative m; integer products.
Rational rising(const Rational& x, long m) {
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    Integer num = 1, den = 1, qq;
    const unsigned long count = static_cast<unsigned long>(m < 0 ? -m : m);
    for (unsigned long i = 0; i < count; ++i) {
        Integer t = m > 0 ? Integer(p + q * i) : Integer(p - q * (i + 1));
        if (t == 0) {
            if (m > 0) return 0;
            throw PoleAtPoint("Pochhammer pole");
        }
        num *= t;
    }
    mpz_pow_ui(qq.get_mpz_t(), q.get_mpz_t(), count);
    Rational out = m > 0 ? Rational(num, qq) : Rational(qq, num);
    out.canonicalize();
    return out;
}

long to_long(const Rational& x) {
    if (!is_int(x) || !x.get_num().fits_slong_p()) throw Error("integer out of range");
    return x.get_num().get_si();
}

Value multiply(const Value& a, const Value& b) {
    using S = Value::State;
    if (a.state == S::Zero || b.state == S::Zero) return Value::zero();
    if (a.state == S::Small || b.state == S::Small) return Value::small(a.order + b.order);
    Value out{S::Regular, a.c * b.c, a.order + b.order, a.gam};
    for (const auto& [x, e] : b.gam)
        if ((out.gam[x] += e) == 0) out.gam.erase(x);
    return out;
}

Value power(const Value& a, long e) {
    using S = Value::State;
    if (e == 0) return Value::of(1);
    if (a.state == S::Zero) {
        if (e < 0) throw PoleAtPoint("division by zero");
        return a;
    }
    if (a.state == S::Small) {
        if (e < 0) throw PoleAtPoint("division by an undetermined zero");
        return Value::small(static_cast<int>(a.order * e));
    }
    Value out{S::Regular, rational_power(a.c, e), static_cast<int>(a.order * e), {}};
    for (const auto& [x, m] : a.gam) out.gam[x] = static_cast<int>(m * e);
    return out;
}

Value add_values(const std::vector<Value>& vs) {
    using S = Value::State;
    std::optional<int> small, regular;
    for (const auto& v : vs) {
        if (v.state == S::Small) small = small ? std::min(*small, v.order) : v.order;
        if (v.state == S::Regular) regular = regular ? std::min(*regular, v.order) : v.order;
    }
    if (!regular) return small ? Value::small(*small) : Value::zero();
    Value sum{S::Regular, 0, *regular, {}};
    bool first = true;
    for (const auto& v : vs) {
        if (v.state != S::Regular || v.order != *regular) continue;
        if (first) {
            sum.gam = v.gam;
            first = false;
        } else if (v.gam != sum.gam) {
            throw Error("sum of values with different Gamma factors");
        }
        sum.c += v.c;
    }
    if (sum.c == 0) {
        int bound = *regular + 1;
        return Value::small(small ? std::min(*small, bound) : bound);
    }
    if (small && *small <= sum.order) return Value::small(*small);
    return sum;
}

// p(at + eps) = c eps^j + ...; j = -1 for the zero polynomial.
struct Expansion {
    Rational c;
    int j = -1;
};

Expansion expand_at(const Polynomial& p, const std::string& var, const Rational& at) {
    if (!var.empty() && p.depends_on(var)) {
        auto cs = p.shift(var, at).coefficients(var);
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (!cs[j].is_zero()) return {cs[j].constant_value(), static_cast<int>(j)};
        return {};
    }
    if (p.is_zero()) return {};
    return {p.constant_value(), 0};
}

class Evaluator {
public:
    Evaluator(const std::string& var, const Rational& at, const Assignment& values)
        : var_(var), at_(at), values_(values) {}

    Value eval(const Expr& e) {
        switch (e.kind()) {
            case Kind::Number:
                return Value::of(e.value());
            case Kind::Symbol:
                return symbol(e.name());
            case Kind::Add:
                return add(e);
            case Kind::Mul: {
                Value v = Value::of(1);
                for (const auto& f : e.args()) {
                    v = multiply(v, eval(f));
                    if (v.state == Value::State::Zero) break;
                }
                return v;
            }
            case Kind::Pow:
                return pow_value(e);
            case Kind::Factorial:
                return gamma_value(argument(e.arg(0), 1), false);
            case Kind::Gamma:
                return gamma_value(argument(e.arg(0), 0), false);
            case Kind::Binomial:
                return binomial_value(e);
            case Kind::Pochhammer:
                return pochhammer_value(e);
            case Kind::Prod:
                return prod_value(e);
            case Kind::SumRef:
                throw Error("cannot evaluate sum(" + e.name() + ")");
        }
        throw Error("unknown expression");
    }

private:
    // x0 + c eps^j for an argument; j = 0 when it does not move with var.
    struct Arg {
        Rational x0;
        Rational c;
        int j = 0;
    };

    const std::string& var_;
    Rational at_;
    const Assignment& values_;

    Value symbol(const std::string& name) {
        if (!var_.empty() && name == var_) return at_ == 0 ? Value::of(1, 1) : Value::of(at_);
        auto it = values_.find(name);
        if (it == values_.end()) throw Error("no value for " + name);
        return Value::of(it->second);
    }

    std::optional<Polynomial> local_polynomial(const Expr& e) {
        auto p = to_polynomial(e);
        if (!p) return std::nullopt;
        Assignment point;
        for (const auto& v : p->variables()) {
            if (v == var_) continue;
            auto it = values_.find(v);
            if (it == values_.end()) throw Error("no value for " + v);
            point[v] = it->second;
        }
        return point.empty() ? *p : p->evaluate(point);
    }

    Value add(const Expr& e) {
        // Rational sums are expanded exactly so that cancellations keep their order.
        if (auto r = to_rational_function(e)) {
            auto num = local_polynomial(from_polynomial(r->num()));
            auto den = local_polynomial(from_polynomial(r->den()));
            Expansion n = expand_at(*num, var_, at_);
            Expansion d = expand_at(*den, var_, at_);
            if (d.j < 0) throw PoleAtPoint("division by zero");
            if (n.j < 0) return Value::zero();
            return Value::of(n.c / d.c, n.j - d.j);
        }
        std::vector<Value> vs;
        for (const auto& t : e.args()) vs.push_back(eval(t));
        return add_values(vs);
    }

    Arg argument(const Expr& x, long offset) {
        if (auto p = local_polynomial(x)) {
            Polynomial q = *p + Polynomial(offset);
            if (!var_.empty() && q.depends_on(var_)) {
                auto cs = q.shift(var_, at_).coefficients(var_);
                Arg a{cs[0].constant_value(), 0, 0};
                for (std::size_t j = 1; j < cs.size(); ++j)
                    if (!cs[j].is_zero()) return {a.x0, cs[j].constant_value(), static_cast<int>(j)};
                return a;
            }
            return {q.constant_value(), 0, 0};
        }
        Rational v = limit_of(eval(x));
        return {v + offset, 0, 0};
    }

    static Rational limit_of(const Value& v) {
        if (v.state == Value::State::Zero) return 0;
        if (v.state == Value::State::Small) {
            if (v.order > 0) return 0;
            throw PoleAtPoint("undetermined limit");
        }
        if (!v.gam.empty()) throw Error("argument is not rational");
        if (v.order > 0) return 0;
        if (v.order < 0) throw PoleAtPoint("pole");
        return v.c;
    }

    // Gamma(a) or 1/Gamma(a).
    static Value gamma_value(const Arg& a, bool inverse) {
        Value v;
        if (is_int(a.x0) && a.x0 <= 0) {
            if (a.j == 0) {
                if (inverse) return Value::zero();
                throw PoleAtPoint("Gamma pole at " + a.x0.get_str());
            }
            long m = to_long(-a.x0);
            // Gamma(-m + c eps^j) = (-1)^m / (m! c) eps^-j + ...
            Rational c = Rational(m % 2 == 0 ? 1 : -1) / (factorial_of(m) * a.c);
            v = Value::of(c, -a.j);
        } else if (is_int(a.x0)) {
            v = Value::of(factorial_of(to_long(a.x0) - 1));
        } else {
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), a.x0.get_num().get_mpz_t(), a.x0.get_den().get_mpz_t());
            Rational frac = a.x0 - Rational(fl);
            long m = fl.get_si();
            // Gamma(frac + m) = Gamma(frac) (frac)_m
            v = Value::of(rising(frac, m));
            v.gam[frac] = 1;
        }
        return inverse ? power(v, -1) : v;
    }

    Value binomial_value(const Expr& e) {
        Arg a = argument(e.arg(0), 0);
        Arg b = argument(e.arg(1), 0);
        if (a.j == 0 && is_int(a.x0) && a.x0 < 0 && is_int(b.x0)) {
            // negative integer top: falling factorial over b!
            if (b.x0 < 0) return Value::zero();
            Rational r = 1;
            for (long i = 0, n = to_long(b.x0); i < n; ++i) r = r * (a.x0 - i) / (i + 1);
            return Value::of(r);
        }
        Arg a1{a.x0 + 1, a.c, a.j};
        Arg b1{b.x0 + 1, b.c, b.j};
        Arg d = difference(a, b);
        d.x0 += 1;
        return multiply(gamma_value(a1, false), multiply(gamma_value(b1, true), gamma_value(d, true)));
    }

    Value pochhammer_value(const Expr& e) {
        Arg a = argument(e.arg(0), 0);
        Arg c = argument(e.arg(1), 0);
        if (a.j == 0 && is_int(a.x0) && a.x0 <= 0 && is_int(c.x0)) {
            return Value::of(rising(a.x0, to_long(c.x0)));
        }
        if (!is_int(a.x0) && is_int(c.x0)) return Value::of(rising(a.x0, to_long(c.x0)));
        Arg s = difference(a, Arg{-c.x0, -c.c, c.j});
        return multiply(gamma_value(s, false), gamma_value(a, true));
    }

    // a - b as a perturbed argument.
    static Arg difference(const Arg& a, const Arg& b) {
        Arg out{a.x0 - b.x0, 0, 0};
        if (a.j == 0 && b.j == 0) return out;
        if (a.j == b.j) {
            out.c = a.c - b.c;
            out.j = out.c == 0 ? 0 : a.j;
            // higher order terms are not tracked; a vanishing leading term is treated as no motion
        } else if (b.j == 0 || (a.j != 0 && a.j < b.j)) {
            out.c = a.c;
            out.j = a.j;
        } else {
            out.c = -b.c;
            out.j = b.j;
        }
        return out;
    }

    Value pow_value(const Expr& e) {
        const Expr& base = e.arg(0);
        const Expr& ex = e.arg(1);
        if (ex.is_integer()) return power(eval(base), to_long(ex.value()));
        Rational x = limit_of(eval(ex));
        Value b = eval(base);
        if (is_int(x)) return power(b, to_long(x));
        if (b.state != Value::State::Regular || b.order != 0 || !b.gam.empty())
            throw Error("non-integer power of a moving or transcendental base");
        Rational v = rational_power(b.c, to_long(Rational(x.get_num())));
        unsigned long q = x.get_den().get_ui();
        Integer rn, rd;
        Integer an = abs(v.get_num());
        bool exact = mpz_root(rn.get_mpz_t(), an.get_mpz_t(), q) != 0;
        exact = exact && mpz_root(rd.get_mpz_t(), v.get_den().get_mpz_t(), q) != 0;
        if (!exact || (v < 0 && q % 2 == 0)) throw Error("value is not rational: " + print(e));
        Rational r(rn, rd);
        r.canonicalize();
        return Value::of(v < 0 ? Rational(-r) : r);
    }

    Value prod_value(const Expr& e) {
        const Expr& body = e.arg(0);
        const std::string& index = e.arg(1).name();
        Rational lo = limit_of(eval(e.arg(2)));
        Rational up = limit_of(eval(e.arg(3)));
        if (!is_int(lo) || !is_int(up)) throw Error("product bounds are not integers");
        long a = to_long(lo), b = to_long(up);
        Value v = Value::of(1);
        for (long j = a; j <= b; ++j) v = multiply(v, eval(substitute(body, index, Expr(j))));
        for (long j = b + 1; j <= a - 1; ++j) v = multiply(v, power(eval(substitute(body, index, Expr(j))), -1));
        return v;
    }
};

}  // namespace

Expr Limit::to_expr() const {
    std::vector<Expr> fs{Expr(coefficient)};
    for (const auto& [x, e] : gammas) fs.push_back(pow(gamma(Expr(x)), Expr(static_cast<long>(e))));
    return mul(std::move(fs));
}

Limit evaluate_limit(const Expr& e, const std::string& var, const Rational& at, const Assignment& values) {
    Evaluator ev(var, at, values);
    Value v = ev.eval(e);
    switch (v.state) {
        case Value::State::Zero:
            return Limit{0, {}};
        case Value::State::Small:
            if (v.order > 0) return Limit{0, {}};
            throw PoleAtPoint("limit cannot be determined at " + var + " = " + at.get_str());
        case Value::State::Regular:
            break;
    }
    if (v.order > 0) return Limit{0, {}};
    if (v.order < 0) throw PoleAtPoint("pole at " + var + " = " + at.get_str());
    return Limit{v.c, v.gam};
}

Rational evaluate_rational(const Expr& e, const std::string& var, const Rational& at, const Assignment& values) {
    Limit l = evaluate_limit(e, var, at, values);
    if (!l.is_rational()) throw Error("value is not rational: " + print(l.to_expr()));
    return l.coefficient;
}

}  // namespace hypersum
