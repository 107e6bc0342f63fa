#include "hypersum/hypergeometric.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <map>

namespace hypersum {

namespace {

bool integer_constant(const Polynomial& p, long& out) {
    if (!p.is_constant()) return false;
    Rational c = p.constant_value();
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return false;
    out = c.get_num().get_si();
    return true;
}

Polynomial gamma_argument(const Expr& arg, const std::string& var) {
    auto p = to_polynomial(arg);
    if (!p) throw NotGammaRepresentable("argument " + print(arg) + " is not polynomial");
    if (!var.empty()) {
        long c = 0;
        if (p->degree(var) > 1 || !integer_constant(p->coefficient(var, 1), c))
            throw NotGammaRepresentable("argument " + print(arg) + " is not integer-linear in " + var);
    }
    return *p;
}

void add_gamma(GammaProduct& gp, const Polynomial& arg, int m) {
    if (m == 0) return;
    auto it = std::find_if(gp.gammas.begin(), gp.gammas.end(), [&](const GammaFactor& g) { return g.argument == arg; });
    if (it == gp.gammas.end()) {
        gp.gammas.push_back({arg, m});
    } else if ((it->multiplicity += m) == 0) {
        gp.gammas.erase(it);
    }
}

void add_power(GammaProduct& gp, const Expr& base, const Polynomial& exponent) {
    if (exponent.is_zero()) return;
    auto it = std::find_if(gp.powers.begin(), gp.powers.end(), [&](const PowerFactor& p) { return p.base == base; });
    if (it == gp.powers.end()) {
        gp.powers.push_back({base, exponent});
    } else {
        it->exponent += exponent;
        if (it->exponent.is_zero()) gp.powers.erase(it);
    }
}

bool same_prod(const ProdFactor& a, const ProdFactor& b) {
    return a.body == b.body && a.index == b.index && a.lower == b.lower && a.upper == b.upper;
}

void add_prod(GammaProduct& gp, const ProdFactor& f, int m) {
    if (m == 0) return;
    auto it = std::find_if(gp.prods.begin(), gp.prods.end(), [&](const ProdFactor& p) { return same_prod(p, f); });
    if (it == gp.prods.end()) {
        ProdFactor g = f;
        g.multiplicity = m;
        gp.prods.push_back(std::move(g));
    } else if ((it->multiplicity += m) == 0) {
        gp.prods.erase(it);
    }
}

void add_opaque(GammaProduct& gp, const Expr& e, int m) {
    if (m == 0) return;
    auto it = std::find_if(gp.opaque.begin(), gp.opaque.end(), [&](const auto& p) { return p.first == e; });
    if (it == gp.opaque.end()) {
        gp.opaque.emplace_back(e, m);
    } else if ((it->second += m) == 0) {
        gp.opaque.erase(it);
    }
}

void accumulate(GammaProduct& gp, const Expr& e, int m, const std::string& var);

void accumulate_function(GammaProduct& gp, const Expr& e, int m, const std::string& var) {
    // Arguments free of var that are not polynomial are kept as constants.
    if (!var.empty() && !depends_on(e, var)) {
        for (const auto& a : e.args())
            if (!to_polynomial(a)) {
                add_opaque(gp, e, m);
                return;
            }
    }
    switch (e.kind()) {
        case Kind::Factorial:
            add_gamma(gp, gamma_argument(e.arg(0), var) + Polynomial(1), m);
            return;
        case Kind::Gamma:
            add_gamma(gp, gamma_argument(e.arg(0), var), m);
            return;
        case Kind::Binomial: {
            Polynomial a = gamma_argument(e.arg(0), var);
            Polynomial b = gamma_argument(e.arg(1), var);
            add_gamma(gp, a + Polynomial(1), m);
            add_gamma(gp, b + Polynomial(1), -m);
            add_gamma(gp, a - b + Polynomial(1), -m);
            return;
        }
        case Kind::Pochhammer: {
            Polynomial a = gamma_argument(e.arg(0), var);
            Polynomial c = gamma_argument(e.arg(1), var);
            add_gamma(gp, a + c, m);
            add_gamma(gp, a, -m);
            return;
        }
        default:
            break;
    }
}

void accumulate(GammaProduct& gp, const Expr& e, int m, const std::string& var) {
    if (m == 0) return;
    switch (e.kind()) {
        case Kind::Number:
            if (e.value() == 0 && m < 0) throw DivisionError("division by zero");
            gp.prefactor *= FactoredRational(e.value()).pow(m);
            return;
        case Kind::Symbol:
            gp.prefactor.multiply_factor(Polynomial::variable(e.name()), m);
            return;
        case Kind::Add: {
            if (auto r = to_rational_function(e)) {
                if (r->is_zero() && m < 0) throw DivisionError("division by zero");
                gp.prefactor *= FactoredRational::from_rational_function(*r).pow(m);
                return;
            }
            // Sum of similar terms: t0 * (1 + sum of rational ratios t_i/t0).
            GammaProduct t0 = to_gamma_product(e.arg(0), var);
            RationalFunction sum(1);
            for (std::size_t i = 1; i < e.args().size(); ++i) {
                GammaProduct ti = to_gamma_product(e.arg(i), var);
                ti.multiply(t0, -1);
                ti.merge_shift_classes();
                if (!ti.is_rational())
                    throw NotGammaRepresentable("sum of terms without rational ratio: " + print(e));
                sum = sum + ti.prefactor.to_rational_function();
            }
            if (sum.is_zero()) {
                if (m < 0) throw DivisionError("division by zero");
                gp.prefactor = FactoredRational(0);
                return;
            }
            gp.multiply(t0, m);
            gp.prefactor *= FactoredRational::from_rational_function(sum).pow(m);
            return;
        }
        case Kind::Mul:
            for (const auto& f : e.args()) accumulate(gp, f, m, var);
            return;
        case Kind::Pow: {
            const Expr& base = e.arg(0);
            const Expr& exponent = e.arg(1);
            if (exponent.is_integer() && exponent.value().get_num().fits_sint_p()) {
                accumulate(gp, base, m * static_cast<int>(exponent.value().get_num().get_si()), var);
                return;
            }
            auto ep = to_polynomial(exponent);
            if (!ep) {
                if (!var.empty() && depends_on(e, var))
                    throw NotGammaRepresentable("exponent " + print(exponent) + " is not polynomial");
                add_opaque(gp, e, m);
                return;
            }
            if (!var.empty() && depends_on(base, var))
                throw NotGammaRepresentable("power " + print(e) + " has a base depending on " + var);
            add_power(gp, base, *ep * Rational(m));
            return;
        }
        case Kind::Factorial:
        case Kind::Gamma:
        case Kind::Binomial:
        case Kind::Pochhammer:
            accumulate_function(gp, e, m, var);
            return;
        case Kind::Prod:
            add_prod(gp, ProdFactor{e.arg(0), e.arg(1).name(), e.arg(2), e.arg(3), 0}, m);
            return;
        case Kind::SumRef:
            throw NotGammaRepresentable("sum reference inside a term");
    }
}

}  // namespace

void GammaProduct::multiply(const GammaProduct& other, int exponent) {
    if (exponent == 0) return;
    prefactor *= other.prefactor.pow(exponent);
    for (const auto& p : other.powers) add_power(*this, p.base, p.exponent * Rational(exponent));
    for (const auto& g : other.gammas) add_gamma(*this, g.argument, g.multiplicity * exponent);
    for (const auto& p : other.prods) add_prod(*this, p, p.multiplicity * exponent);
    for (const auto& [e, m] : other.opaque) add_opaque(*this, e, m * exponent);
}

void GammaProduct::merge_shift_classes() {
    // Products whose upper bounds differ by an integer.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < prods.size() && !changed; ++i) {
            for (std::size_t j = 0; j < prods.size() && !changed; ++j) {
                if (i == j) continue;
                const ProdFactor& a = prods[i];
                const ProdFactor& b = prods[j];
                if (a.body != b.body || a.index != b.index || a.lower != b.lower) continue;
                auto d = to_polynomial(b.upper - a.upper);
                long shift = 0;
                if (!d || !integer_constant(*d, shift) || shift <= 0) continue;
                // prod(.., upper + s) = prod(.., upper) * body(upper + 1) ... body(upper + s)
                ProdFactor base = a;
                ProdFactor high = b;
                int m = high.multiplicity;
                prods.erase(prods.begin() + static_cast<long>(j));
                add_prod(*this, base, m);
                for (long s = 1; s <= shift; ++s)
                    accumulate(*this, substitute(base.body, base.index, base.upper + Expr(s)), m, "");
                changed = true;
            }
        }
    }
    // Gamma arguments that differ by an integer.
    std::map<Polynomial, std::vector<GammaFactor>> classes;
    for (const auto& g : gammas) {
        Rational c = g.argument.constant_value();
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
        classes[g.argument - Polynomial(Rational(fl))].push_back(g);
    }
    std::vector<GammaFactor> merged;
    for (auto& [key, members] : classes) {
        auto lowest = std::min_element(members.begin(), members.end(), [](const GammaFactor& a, const GammaFactor& b) {
            return a.argument.constant_value() < b.argument.constant_value();
        });
        Polynomial rep = lowest->argument;
        int total = 0;
        for (const auto& g : members) {
            long d = 0;
            integer_constant(g.argument - rep, d);
            for (long i = 0; i < d; ++i) prefactor.multiply_factor(rep + Polynomial(i), g.multiplicity);
            total += g.multiplicity;
        }
        if (total != 0) merged.push_back({rep, total});
    }
    gammas = std::move(merged);
    // Constant integer exponents move into the prefactor.
    std::vector<PowerFactor> kept;
    for (const auto& p : powers) {
        long e = 0;
        if (integer_constant(p.exponent, e)) {
            if (auto r = to_rational_function(p.base)) {
                prefactor *= FactoredRational::from_rational_function(*r).pow(static_cast<int>(e));
            } else {
                add_opaque(*this, p.base, static_cast<int>(e));
            }
        } else {
            kept.push_back(p);
        }
    }
    powers = std::move(kept);
    prefactor.refine_coprime();
}

bool GammaProduct::is_rational() const { return powers.empty() && gammas.empty() && prods.empty() && opaque.empty(); }

Expr GammaProduct::to_expr() const {
    std::vector<Expr> fs{from_factored(prefactor)};
    for (const auto& p : powers) fs.push_back(pow(p.base, from_polynomial(p.exponent)));
    for (const auto& g : gammas) fs.push_back(pow(gamma(from_polynomial(g.argument)), Expr(static_cast<long>(g.multiplicity))));
    for (const auto& p : prods)
        fs.push_back(pow(prod(p.body, p.index, p.lower, p.upper), Expr(static_cast<long>(p.multiplicity))));
    for (const auto& [e, m] : opaque) fs.push_back(pow(e, Expr(static_cast<long>(m))));
    return mul(std::move(fs));
}

GammaProduct to_gamma_product(const Expr& e, const std::string& var) {
    GammaProduct gp;
    accumulate(gp, e, 1, var);
    return gp;
}

Expr simplify_gamma(const Expr& e) {
    GammaProduct gp = to_gamma_product(e);
    gp.merge_shift_classes();
    return gp.to_expr();
}

Expr simplify_combinatorial(const Expr& e) { return simplify_gamma(e); }

Expr gamma_to_factorial(const Expr& e) {
    if (e.args().empty()) return e;
    std::vector<Expr> args;
    for (const auto& a : e.args()) args.push_back(gamma_to_factorial(a));
    switch (e.kind()) {
        case Kind::Gamma:
            return factorial(args[0] - Expr(1));
        case Kind::Add:
            return add(std::move(args));
        case Kind::Mul:
            return mul(std::move(args));
        case Kind::Pow:
            return pow(args[0], args[1]);
        case Kind::Factorial:
            return factorial(args[0]);
        case Kind::Binomial:
            return binomial(args[0], args[1]);
        case Kind::Pochhammer:
            return pochhammer(args[0], args[1]);
        case Kind::Prod:
            return prod(args[0], e.arg(1).name(), args[2], args[3]);
        default:
            return e;
    }
}

namespace {

FactoredRational rational_in(const Expr& e, const std::string& var) {
    auto r = to_rational_function(e);
    if (!r) throw NotHypergeometric("factor " + print(e) + " is not rational in " + var);
    return FactoredRational::from_rational_function(*r);
}

// upper/lower bound of a product as alpha*var + beta with integer alpha >= 0.
long bound_slope(const Expr& bound, const std::string& var) {
    auto p = to_polynomial(bound);
    long alpha = 0;
    if (!p || p->degree(var) > 1 || !integer_constant(p->coefficient(var, 1), alpha) || alpha < 0)
        throw NotHypergeometric("product bound " + print(bound) + " is not increasing integer-linear in " + var);
    return alpha;
}

}  // namespace

TermRatio term_ratio(const Expr& e, const std::string& var, Direction direction) {
    GammaProduct gp;
    try {
        gp = to_gamma_product(e, var);
    } catch (const NotGammaRepresentable& err) {
        throw NotHypergeometric(err.what());
    }
    if (gp.prefactor.is_zero()) throw NotHypergeometric("zero term");
    FactoredRational r;
    // Rational prefactor.
    {
        auto [dep, indep] = gp.prefactor.split(var);
        r *= dep / dep.shift(var, -1);
    }
    for (const auto& p : gp.powers) {
        if (!p.exponent.depends_on(var)) continue;
        long alpha = 0;
        if (p.exponent.degree(var) > 1 || !integer_constant(p.exponent.coefficient(var, 1), alpha))
            throw NotHypergeometric("exponent " + p.exponent.to_string() + " is not integer-linear in " + var);
        r *= rational_in(p.base, var).pow(static_cast<int>(alpha));
    }
    for (const auto& g : gp.gammas) {
        if (!g.argument.depends_on(var)) continue;
        long alpha = 0;
        integer_constant(g.argument.coefficient(var, 1), alpha);
        FactoredRational c;
        if (alpha > 0) {
            for (long i = 1; i <= alpha; ++i) c.multiply_factor(g.argument - Polynomial(i), 1);
        } else {
            for (long i = 0; i < -alpha; ++i) c.multiply_factor(g.argument + Polynomial(i), -1);
        }
        r *= c.pow(g.multiplicity);
    }
    for (const auto& p : gp.prods) {
        FactoredRational c;
        long hi = bound_slope(p.upper, var);
        long lo = bound_slope(p.lower, var);
        for (long i = 0; i < hi; ++i) c *= rational_in(substitute(p.body, p.index, p.upper - Expr(i)), var);
        for (long i = 1; i <= lo; ++i) c *= rational_in(substitute(p.body, p.index, p.lower - Expr(i)), var).inverse();
        r *= c.pow(p.multiplicity);
    }
    for (const auto& [x, m] : gp.opaque)
        if (depends_on(x, var)) throw NotHypergeometric("factor " + print(x) + " is not hypergeometric in " + var);
    r.refine_coprime();
    if (direction == Direction::Up) r = r.shift(var, 1);
    return TermRatio{r, direction};
}

}  // namespace hypersum
