#include "hypersum/zeilberger.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <map>

namespace hypersum {

namespace {

// Exponents of each input over a pairwise coprime basis of all their factors.
std::vector<std::map<Polynomial, int>> over_common_basis(const std::vector<FactoredRational>& xs) {
    std::vector<Polynomial> all;
    for (const auto& x : xs)
        for (const auto& [f, e] : x.factors()) all.push_back(f);
    std::vector<Polynomial> basis = coprime_basis(all);
    std::vector<std::map<Polynomial, int>> out;
    for (const auto& x : xs) {
        std::map<Polynomial, int> m;
        for (const auto& [f, e] : x.factors()) {
            Polynomial rest = f;
            for (const auto& b : basis) {
                if (rest.is_constant()) break;
                if (b.total_degree() > rest.total_degree()) continue;
                while (auto q = rest.divide_exact(b)) {
                    rest = *q;
                    m[b] += e;
                    if (rest.is_constant()) break;
                }
            }
            if (!rest.is_constant()) throw Error("internal: factor not generated by coprime basis");
        }
        for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
        out.push_back(std::move(m));
    }
    return out;
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant()) return b;
    if (b.is_constant()) return a;
    return a * b.exact_div(gcd(a, b));
}

Rational rational_pow(const Rational& a, int e) {
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i) out *= a;
    if (e < 0) out = 1 / out;
    return out;
}

std::string ratio_text(const TermRatio& r) { return print(from_factored(r.ratio)); }

}  // namespace

ZeilbergerResult sumrecursion(const Expr& F, const std::string& k, const std::string& n, const ZeilbergerOptions& options,
                              Trace* trace) {
    ZeilbergerResult out;
    try {
        out.ratio_n = term_ratio(F, n, Direction::Down);
        out.ratio_k = term_ratio(F, k, Direction::Down);
    } catch (const NotHypergeometric&) {
        throw ZeilbergerNotApplicable();
    }
    if (trace) {
        trace->assign("F(" + n + "," + k + ")/F(" + n + "-1," + k + ")", ratio_text(out.ratio_n));
        trace->assign("F(" + n + "," + k + ")/F(" + n + "," + k + "-1)", ratio_text(out.ratio_k));
        trace->line("Zeilberger algorithm applicable");
    }
    int first = options.fixed_order ? *options.fixed_order : 1;
    int last = options.fixed_order ? *options.fixed_order : options.max_order;
    for (int order = first; order <= last; ++order) {
        if (trace) trace->line("applying Zeilberger algorithm for order:= " + std::to_string(order));
        // W_j = F(n-j,k)/F(n,k)
        std::vector<FactoredRational> w(order + 1);
        for (int j = 1; j <= order; ++j) w[j] = w[j - 1] * out.ratio_n.ratio.shift(n, -(j - 1)).inverse();
        auto exps = over_common_basis(w);
        std::map<Polynomial, int> eb, eg;
        for (const auto& m : exps)
            for (const auto& [b, e] : m) eb[b] = std::max(eb[b], -e);
        for (auto& [b, e] : eb) {
            int lowest = e + (exps[0].count(b) ? exps[0].at(b) : 0);
            for (const auto& m : exps) lowest = std::min(lowest, e + (m.count(b) ? m.at(b) : 0));
            eg[b] = lowest;
        }
        std::vector<Polynomial> parts;
        for (int j = 0; j <= order; ++j) {
            Polynomial a(w[j].coefficient());
            for (const auto& [b, e] : eb) {
                int x = e + (exps[j].count(b) ? exps[j].at(b) : 0) - eg[b];
                if (x > 0) a *= pow(b, static_cast<unsigned>(x));
            }
            parts.push_back(a);
        }
        // T = F * H * sum_j sigma_j parts_j with H = G/B.
        FactoredRational h;
        for (const auto& [b, e] : eb)
            if (eg[b] != e) h.multiply_factor(b, eg[b] - e);
        FactoredRational ratio = out.ratio_k.ratio * h * h.shift(k, -1).inverse();
        ratio.refine_coprime();
        auto sol = parametrized_gosper(ratio, parts, k, trace, "zb_sigma");
        if (!sol) continue;
        if (trace) trace->line("Zeilberger algorithm successful");
        Recurrence rec;
        rec.var = n;
        Polynomial common(1);
        for (const auto& s : sol->sigma) common = lcm(common, s.den());
        for (const auto& s : sol->sigma) rec.coefficients.push_back(s.num() * common.exact_div(s.den()));
        rec.normalize();
        if (options.direction == Direction::Up) rec = to_direction(rec, Direction::Up);
        out.recurrence = rec;
        out.certificate.order = order;
        out.certificate.sigma = sol->sigma;
        out.certificate.form = sol->form;
        out.certificate.form.f = sol->f;
        out.certificate.p = sol->combined_p;
        out.certificate.certificate = RationalFunction(sol->form.q.shift(k, 1)) * sol->f *
                                      h.to_rational_function() / RationalFunction(sol->form.p);
        return out;
    }
    throw OrderExceeded();
}

Expr first_order_closed_form(const Recurrence& rec, const Expr& s0) {
    Recurrence d = to_direction(rec, Direction::Down);
    if (d.order() != 1) throw DegenerateRecurrence("closed form needs a first order recurrence");
    const Polynomial& c0 = d.coefficients[0];
    const Polynomial& c1 = d.coefficients[1];
    if (c0.is_zero()) throw DegenerateRecurrence("leading coefficient vanishes");
    const std::string& n = d.var;
    const Expr nn = Expr::symbol(n);
    FactoredRational ratio = factor_polynomial(-c1);
    ratio *= factor_polynomial(c0).inverse();
    if (ratio.is_zero()) return s0 * pow(Expr(0), nn);
    std::string index = n == "j" ? "i" : "j";
    Rational base = ratio.coefficient();
    std::vector<Expr> fs{s0};
    for (const auto& [f, e] : ratio.factors()) {
        const Expr ex(static_cast<long>(e));
        int deg = f.degree(n);
        if (deg == 0) {
            fs.push_back(pow(from_polynomial(f), nn * ex));
            continue;
        }
        Polynomial alpha = f.coefficient(n, 1);
        if (deg == 1 && alpha.is_constant()) {
            // prod_{m=1}^{n} (alpha m + beta) = alpha^n (1 + beta/alpha)_n
            Rational a = alpha.constant_value();
            Polynomial gamma = (f - Polynomial::monomial(n, 1, a)) * Rational(1 / a);
            base *= rational_pow(a, e);
            fs.push_back(pow(pochhammer(from_polynomial(gamma + Polynomial(1)), nn), ex));
            continue;
        }
        Expr body = from_polynomial(f.substitute(n, Polynomial::variable(index)));
        fs.push_back(pow(prod(body, index, Expr(1), nn), ex));
    }
    fs.push_back(pow(Expr(base), nn));
    return mul(std::move(fs));
}

}  // namespace hypersum
