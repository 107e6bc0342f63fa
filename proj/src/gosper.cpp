#include "hypersum/gosper.hpp"

#include "hypersum/errors.hpp"
#include "hypersum/evaluate.hpp"
#include "hypersum/linear_system.hpp"

#include <algorithm>

namespace hypersum {

namespace {

std::string show(const Polynomial& p) { return print(from_polynomial(p)); }

Polynomial falling_power_shift(const std::string& var, int i) {
    // (var - 1)^i
    return pow(Polynomial::variable(var) - Polynomial(1), static_cast<unsigned>(i));
}

// Kernel of the homogeneous Gosper system with columns c_0..c_D, sigma_0..sigma_J.
struct CoreSolution {
    std::vector<RationalFunction> sigma;
    RationalFunction f;
};

std::optional<CoreSolution> solve_core(const std::vector<Polynomial>& p_parts, const Polynomial& q, const Polynomial& r,
                                       const std::string& var, int bound) {
    const int nc = bound + 1;  // may be 0
    const std::size_t ns = p_parts.size();
    const Polynomial k = Polynomial::variable(var);
    const Polynomial q1 = q.shift(var, 1);
    std::vector<Polynomial> columns;
    for (int i = 0; i < nc; ++i) {
        Polynomial ki = pow(k, static_cast<unsigned>(i));
        columns.push_back(r * falling_power_shift(var, i) - q1 * ki);
    }
    for (const auto& part : p_parts) columns.push_back(part);
    int rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.degree(var) + 1);
    PolyMatrix m(rows, std::vector<Polynomial>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto coeffs = columns[j].coefficients(var);
        for (std::size_t i = 0; i < coeffs.size(); ++i) m[i][j] = coeffs[i];
    }
    EchelonForm ech = row_reduce(std::move(m), columns.size());
    for (std::size_t col = 0; col < columns.size(); ++col) {
        if (ech.is_pivot(static_cast<int>(col))) continue;
        std::vector<Polynomial> x = ech.kernel_vector(static_cast<int>(col));
        auto first = std::find_if(x.begin() + nc, x.end(), [](const Polynomial& v) { return !v.is_zero(); });
        if (first == x.end()) continue;
        Polynomial norm = *first;
        CoreSolution out;
        for (std::size_t j = 0; j < ns; ++j) out.sigma.emplace_back(x[nc + j], norm);
        Polynomial fnum;
        for (int i = 0; i < nc; ++i) fnum += x[i] * pow(k, static_cast<unsigned>(i));
        out.f = RationalFunction(fnum, norm);
        return out;
    }
    return std::nullopt;
}

long expression_size(const Expr& e) {
    long n = 1;
    for (const auto& a : e.args()) n += expression_size(a);
    return n;
}

// Moves factors body(upper + 1) into a neighbouring product prod(body, j, lower, upper).
Expr absorb_products(Expr g) {
    for (bool changed = true; changed;) {
        changed = false;
        if (g.kind() != Kind::Mul) break;
        for (const auto& f : g.args()) {
            Expr base = f;
            long m = 1;
            if (f.kind() == Kind::Pow && f.arg(1).is_integer()) {
                base = f.arg(0);
                m = f.arg(1).value().get_num().get_si();
            }
            if (base.kind() != Kind::Prod) continue;
            const std::string& idx = base.arg(1).name();
            for (long step : {1L, -1L}) {
                Expr upper = base.arg(3) + Expr(step);
                Expr edge = substitute(base.arg(0), idx, step > 0 ? upper : base.arg(3));
                Expr moved = prod(base.arg(0), idx, base.arg(2), upper);
                // prod(.., u+1) = prod(.., u) * body(u+1); prod(.., u-1) = prod(.., u) / body(u)
                Expr adjust = step > 0 ? pow(edge, Expr(-m)) : pow(edge, Expr(m));
                Expr candidate = g / pow(base, Expr(m)) * pow(moved, Expr(m)) * adjust;
                if (expression_size(candidate) < expression_size(g)) {
                    g = candidate;
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    return g;
}

// Rational factors of a product multiplied into R, shown factored; other factors kept.
Expr times_term(const RationalFunction& rf, const Expr& a) {
    RationalFunction rational = rf;
    std::vector<Expr> rest;
    std::vector<Expr> fs = a.kind() == Kind::Mul ? a.args() : std::vector<Expr>{a};
    for (const auto& f : fs) {
        auto r = to_rational_function(f);
        if (r) {
            rational = rational * *r;
        } else {
            rest.push_back(f);
        }
    }
    rest.push_back(from_rational_factored(rational));
    return absorb_products(mul(std::move(rest)));
}

}  // namespace

GosperForm gpp_decompose(const FactoredRational& ratio, const std::string& var) {
    FactoredRational rr = ratio;
    rr.refine_coprime();
    std::vector<std::pair<Polynomial, int>> qs, rs;
    Polynomial qconst(Rational(rr.coefficient().get_num()));
    Polynomial rconst(Rational(rr.coefficient().get_den()));
    for (const auto& [f, e] : rr.factors()) {
        if (!f.depends_on(var)) {
            if (e > 0) {
                qconst *= pow(f, static_cast<unsigned>(e));
            } else {
                rconst *= pow(f, static_cast<unsigned>(-e));
            }
        } else if (e > 0) {
            qs.emplace_back(f, e);
        } else {
            rs.emplace_back(f, -e);
        }
    }
    Polynomial p(1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < qs.size() && !changed; ++i) {
            for (std::size_t j = 0; j < rs.size() && !changed; ++j) {
                auto ds = dispersion_set(qs[i].first, rs[j].first, var);
                if (ds.empty()) continue;
                long h = ds.front();
                Polynomial g = gcd(qs[i].first, rs[j].first.shift(var, h));
                Polynomial gh = g.shift(var, -h);
                int e = std::min(qs[i].second, rs[j].second);
                auto [qf, qe] = qs[i];
                auto [rf, re] = rs[j];
                qs.erase(qs.begin() + static_cast<long>(i));
                rs.erase(rs.begin() + static_cast<long>(j));
                Polynomial qrest = qf.exact_div(g);
                Polynomial rrest = rf.exact_div(gh);
                if (qrest.depends_on(var)) qs.emplace_back(qrest.normalized(), qe);
                if (qe > e) qs.emplace_back(g, qe - e);
                if (rrest.depends_on(var)) rs.emplace_back(rrest.normalized(), re);
                if (re > e) rs.emplace_back(gh, re - e);
                if (!qrest.depends_on(var)) qconst *= pow(qrest, static_cast<unsigned>(qe));
                if (!rrest.depends_on(var)) rconst *= pow(rrest, static_cast<unsigned>(re));
                for (long t = 0; t < h; ++t) p *= pow(g.shift(var, -t), static_cast<unsigned>(e));
                changed = true;
            }
        }
    }
    GosperForm out;
    out.p = p;
    out.q = qconst;
    for (const auto& [f, e] : qs) out.q *= pow(f, static_cast<unsigned>(e));
    out.r = rconst;
    for (const auto& [f, e] : rs) out.r *= pow(f, static_cast<unsigned>(e));
    return out;
}

GosperForm gpp_decompose(const RationalFunction& ratio, const std::string& var) {
    FactoredRational f = factor_polynomial(ratio.num());
    f *= factor_polynomial(ratio.den()).inverse();
    return gpp_decompose(f, var);
}

std::optional<int> degree_bound(const GosperForm& form, const std::string& var, int p_degree) {
    int dp = p_degree >= 0 ? p_degree : form.p.degree(var);
    Polynomial q1 = form.q.shift(var, 1);
    Polynomial splus = q1 + form.r;
    Polynomial sminus = q1 - form.r;
    int dplus = splus.degree(var);
    int dminus = sminus.degree(var);
    int bound = 0;
    if (dminus >= dplus) {
        bound = dp - dminus;
    } else {
        int m = dplus;
        bound = dp - m + 1;
        Polynomial c = sminus.coefficient(var, m - 1);
        Polynomial lc = splus.coefficient(var, m);
        RationalFunction ell(c * Rational(-2), lc);
        if (ell.is_constant()) {
            Rational v = ell.constant_value();
            if (v.get_den() == 1 && v >= 0 && v.get_num().fits_sint_p())
                bound = std::max(bound, static_cast<int>(v.get_num().get_si()));
        }
    }
    if (bound < 0) return std::nullopt;
    return bound;
}

std::optional<RationalFunction> solve_f(const GosperForm& form, const std::string& var, int bound) {
    if (bound < 0) return std::nullopt;
    auto sol = solve_core({form.p}, form.q, form.r, var, bound);
    if (!sol) return std::nullopt;
    return sol->f / sol->sigma[0];
}

std::optional<ParametrizedSolution> parametrized_gosper(const FactoredRational& ratio, const std::vector<Polynomial>& parts,
                                                        const std::string& var, Trace* trace, const char* sigma_name) {
    GosperForm form = gpp_decompose(ratio, var);
    std::vector<Polynomial> p_parts;
    int p_degree = 0;
    for (const auto& part : parts) {
        p_parts.push_back(part * form.p);
        p_degree = std::max(p_degree, p_parts.back().degree(var));
    }
    if (trace) {
        Polynomial shown = p_parts[0];
        for (std::size_t j = 1; j < p_parts.size(); ++j) {
            std::string name = std::string(sigma_name ? sigma_name : "sigma") + "(" + std::to_string(j) + ")";
            shown += Polynomial::variable(name) * p_parts[j];
        }
        trace->assign("p", show(shown));
        trace->assign("q", show(form.q));
        trace->assign("r", show(form.r));
    }
    auto bound = degree_bound(form, var, p_degree);
    if (trace) trace->line("degreebound := " + (bound ? std::to_string(*bound) : std::string("none")));
    // Without a bound f must vanish, which still allows a nontrivial sigma relation.
    if (!bound && parts.size() == 1) return std::nullopt;
    auto sol = solve_core(p_parts, form.q, form.r, var, bound ? *bound : -1);
    if (!sol) return std::nullopt;
    ParametrizedSolution out;
    out.form = form;
    out.sigma = sol->sigma;
    out.f = sol->f;
    out.degree_bound = bound ? *bound : -1;
    RationalFunction combined;
    for (std::size_t j = 0; j < p_parts.size(); ++j) combined = combined + out.sigma[j] * RationalFunction(p_parts[j]);
    out.combined_p = combined;
    out.form.f = out.f;
    if (trace) {
        trace->assign("f", print(from_rational_function(out.f)));
        if (parts.size() > 1) trace->assign("p", print(from_rational_function(combined)));
    }
    return out;
}

Antidifference gosper(const Expr& a, const std::string& var, Direction direction, Trace* trace) {
    TermRatio ratio;
    try {
        ratio = term_ratio(a, var, Direction::Down);
    } catch (const NotHypergeometric&) {
        throw GosperNotApplicable();
    }
    if (trace) {
        trace->assign("a(" + var + ")/a(" + var + "-1)", print(from_factored(ratio.ratio)));
        trace->line("Gosper algorithm applicable");
    }
    auto sol = parametrized_gosper(ratio.ratio, {Polynomial(1)}, var, trace);
    if (!sol) throw NoClosedForm();
    if (trace) trace->line("Gosper algorithm successful");
    // sigma_0 = 1, so g = q(k+1) f(k) / p'(k) * a(k).
    RationalFunction factor = RationalFunction(sol->form.q.shift(var, 1)) * sol->f / RationalFunction(sol->form.p);
    Antidifference out;
    out.g = times_term(factor, a);
    if (direction == Direction::Up) out.g = substitute(out.g, var, Expr::symbol(var) - Expr(1));
    out.direction = direction;
    out.certificate = sol->form;
    out.ratio = ratio;
    out.degree_bound = sol->degree_bound;
    return out;
}

Expr gosper_definite(const Expr& a, const std::string& var, const Expr& lo, const Expr& hi, Trace* trace) {
    Antidifference ad = gosper(a, var, Direction::Down, trace);
    if (lo.is_integer() && hi.is_integer()) {
        std::set<std::string> others = free_symbols(a);
        others.erase(var);
        if (others.empty()) {
            // Numeric summand: take limits at the end points so that 0 * Gamma(-1) style
            // products in g resolve correctly.
            const Rational from = lo.value(), to = hi.value();
            try {
                for (Rational k = from; k <= to; k += 1) evaluate_limit(a, var, k);
                Limit top = evaluate_limit(ad.g, var, to);
                Limit bottom = evaluate_limit(ad.g, var, from - 1);
                if (top.is_rational() && bottom.is_rational()) return Expr(top.coefficient - bottom.coefficient);
                return top.to_expr() - bottom.to_expr();
            } catch (const PoleAtPoint& e) {
                throw PoleInRange(e.what());
            }
        }
        const GosperForm& c = ad.certificate;
        RationalFunction factor = RationalFunction(c.q.shift(var, 1)) * *c.f / RationalFunction(c.p);
        Rational from = lo.value() - 1;
        for (const auto& z : integer_roots(factor.den(), var)) {
            if (Rational(z) >= from && Rational(z) <= hi.value())
                throw PoleInRange("antidifference has a pole at " + var + " = " + z.get_str());
        }
    }
    Expr value = substitute(ad.g, var, hi) - substitute(ad.g, var, lo - Expr(1));
    if (auto r = to_rational_function(value)) return from_rational_factored(*r);
    try {
        GammaProduct gp = to_gamma_product(value);
        gp.merge_shift_classes();
        if (gp.is_rational()) return from_rational_factored(gp.prefactor.to_rational_function());
    } catch (const Error&) {
    }
    return value;
}

}  // namespace hypersum
