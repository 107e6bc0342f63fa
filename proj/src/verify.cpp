#include "hypersum/verify.hpp"

#include "hypersum/errors.hpp"

#include <map>
#include <optional>
#include <random>

namespace hypersum {

namespace {

// Exact linear combination of Gamma signatures: sum_s c_s * prod Gamma(x)^e.
using Signature = std::map<Rational, int>;
using Combination = std::map<Signature, Rational>;

void add_into(Combination& into, const Limit& l, const Rational& scale = 1) {
    if (l.coefficient == 0 || scale == 0) return;
    Rational& c = into[l.gammas];
    c += l.coefficient * scale;
    if (c == 0) into.erase(l.gammas);
}

void add_into(Combination& into, const Combination& from, const Rational& scale = 1) {
    for (const auto& [s, c] : from) add_into(into, Limit{c, s}, scale);
}

Expr to_expr(const Combination& c) {
    std::vector<Expr> terms;
    for (const auto& [s, v] : c) terms.push_back(Limit{v, s}.to_expr());
    return add(std::move(terms));
}

Combination pairwise(const std::vector<Limit>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
        Combination c;
        add_into(c, terms[lo]);
        return c;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    Combination left = pairwise(terms, lo, mid);
    add_into(left, pairwise(terms, mid, hi));
    return left;
}

std::set<std::string> parameters(const Expr& e, std::initializer_list<std::string> skip) {
    std::set<std::string> out = free_symbols(e);
    for (const auto& s : skip) out.erase(s);
    return out;
}

std::optional<Combination> try_value(const Expr& e, const std::string& var, const Rational& at, const Assignment& values) {
    try {
        Combination c;
        add_into(c, evaluate_limit(e, var, at, values));
        return c;
    } catch (const PoleAtPoint&) {
        return std::nullopt;
    }
}

bool is_rational_one(const Expr& ratio, const std::string& var, std::optional<bool>& decided) {
    try {
        GammaProduct gp = to_gamma_product(ratio, var);
        gp.merge_shift_classes();
        if (!gp.is_rational()) return false;
        decided = gp.prefactor.to_rational_function() == RationalFunction(Polynomial(1));
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::SkippedPole:
            return "skipped-pole";
    }
    return "";
}

Expr finite_sum(const Expr& F, const std::string& var, long lo, long hi, Accumulation order) {
    if (hi < lo) return Expr(0);
    if (parameters(F, {var}).empty()) {
        std::vector<Limit> terms;
        for (long k = lo; k <= hi; ++k) terms.push_back(evaluate_limit(F, var, Rational(k)));
        if (order == Accumulation::Pairwise) return to_expr(pairwise(terms, 0, terms.size()));
        Combination c;
        for (const auto& t : terms) add_into(c, t);
        return to_expr(c);
    }
    std::vector<Expr> terms;
    try {
        for (long k = lo; k <= hi; ++k) terms.push_back(substitute(F, var, Expr(k)));
    } catch (const DivisionError& e) {
        throw PoleAtPoint(e.what());
    }
    Expr sum;
    if (order == Accumulation::Pairwise) {
        while (terms.size() > 1) {
            std::vector<Expr> next;
            for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
            if (terms.size() % 2 == 1) next.push_back(terms.back());
            terms = std::move(next);
        }
        sum = terms.front();
    } else {
        for (const auto& t : terms) sum = sum + t;
    }
    if (auto r = to_rational_function(sum)) return from_rational_factored(*r);
    return sum;
}

CheckReport check_antidifference(const Expr& g, const Expr& a, const std::string& var, Direction direction,
                                 std::uint64_t seed) {
    CheckReport report;
    report.seed = seed;
    const Expr k = Expr::symbol(var);
    const long up = direction == Direction::Down ? 0 : 1;
    Expr hi = up ? substitute(g, var, k + Expr(1)) : g;
    Expr lo = up ? g : substitute(g, var, k - Expr(1));

    std::optional<bool> symbolic;
    if (!a.is_zero()) is_rational_one((hi - lo) / a, var, symbolic);
    report.method = symbolic ? "symbolic" : "numeric";

    // Numeric comparison at random points: the evidence of the symbolic verdict and
    // the verdict itself when the ratio did not reduce.
    std::set<std::string> names = parameters(g, {var});
    for (const auto& s : parameters(a, {var})) names.insert(s);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> kdist(-5, 20), pdist(2, 9);
    std::set<Assignment> seen;
    int checked = 0;
    for (int tries = 0; tries < 400 && checked < 20; ++tries) {
        Assignment values;
        for (const auto& s : names) values[s] = pdist(rng);
        Rational at = kdist(rng);
        Assignment point = values;
        point[var] = at;
        if (!seen.insert(point).second) continue;
        auto h = try_value(g, var, at + up, values);
        auto l = try_value(g, var, at + up - 1, values);
        auto v = try_value(a, var, at, values);
        if (!h || !l || !v) continue;
        ++checked;
        Combination diff = *h;
        add_into(diff, *l, -1);
        bool equal = diff == *v;
        if (!equal || report.evidence.size() < 3) report.evidence.push_back({point, to_expr(diff), to_expr(*v)});
        if (!equal && !symbolic) report.verdict = Verdict::Fail;
    }
    if (symbolic) {
        report.verdict = *symbolic ? Verdict::Pass : Verdict::Fail;
        if (!*symbolic && report.verdict == Verdict::Fail) {
            bool has_counterexample = false;
            for (const auto& e : report.evidence) has_counterexample |= !(e.lhs == e.rhs);
            if (!has_counterexample) {
                Expr ratio = (hi - lo) / a;
                report.evidence.push_back({{}, simplify_combinatorial(ratio), Expr(1)});
            }
        }
    } else if (checked == 0) {
        report.verdict = Verdict::SkippedPole;
    }
    return report;
}

CheckReport check_equal(const Expr& a, const Expr& b, const std::string& var, std::uint64_t seed) {
    CheckReport report;
    report.seed = seed;
    report.method = "numeric";
    std::set<std::string> names = parameters(a, {var});
    for (const auto& s : parameters(b, {var})) names.insert(s);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> kdist(-5, 20), pdist(2, 9);
    std::set<Assignment> seen;
    int checked = 0;
    for (int tries = 0; tries < 400 && checked < 20; ++tries) {
        Assignment values;
        for (const auto& s : names) values[s] = pdist(rng);
        Rational at = kdist(rng);
        Assignment point = values;
        point[var] = at;
        if (!seen.insert(point).second) continue;
        auto l = try_value(a, var, at, values);
        auto r = try_value(b, var, at, values);
        if (!l || !r) continue;
        ++checked;
        bool equal = *l == *r;
        if (!equal || report.evidence.size() < 3) report.evidence.push_back({point, to_expr(*l), to_expr(*r)});
        if (!equal) report.verdict = Verdict::Fail;
    }
    if (checked == 0) report.verdict = Verdict::SkippedPole;
    return report;
}

namespace {

// Sum over the natural support: the scan finds the nonzero terms and needs ten zero
// terms beyond them on each side. Nothing when a term has a pole.
std::optional<Combination> support_sum(const Expr& F, const std::string& k, const Assignment& values, long bound) {
    std::vector<std::optional<Limit>> terms;
    long first = 0, last = -1;
    bool any = false;
    for (long j = -bound; j <= bound; ++j) {
        Limit l;
        try {
            l = evaluate_limit(F, k, Rational(j), values);
        } catch (const PoleAtPoint&) {
            return std::nullopt;
        }
        if (l.coefficient != 0) {
            if (!any) first = j;
            last = j;
            any = true;
        }
        terms.push_back(l);
    }
    if (!any) return Combination{};
    if (first - 10 < -bound || last + 10 > bound)
        throw UnboundedSupport("summand does not vanish within the scanned window [" + std::to_string(-bound) + ", " +
                               std::to_string(bound) + "]");
    Combination c;
    for (long j = first; j <= last; ++j) add_into(c, *terms[j + bound]);
    return c;
}

}  // namespace

CheckReport check_recurrence(const Recurrence& rec, const Expr& F, const std::string& k,
                             const RecurrenceCheckOptions& options) {
    CheckReport report;
    report.seed = options.seed;
    report.method = "numeric";
    const std::string& n = rec.var;
    const int J = rec.order();
    std::set<std::string> names = parameters(F, {k, n});
    for (const auto& c : rec.coefficients)
        for (const auto& v : c.variables())
            if (v != n) names.insert(v);

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> pdist(2, 9);
    int passed_trials = 0;
    bool unbounded = false;
    std::string unbounded_message;
    for (int trial = 0; trial < options.trials; ++trial) {
        bool done = false;
        for (int draw = 0; draw < 40 && !done; ++draw) {
            Assignment values;
            // integers first, then half integers when integer draws keep hitting poles
            for (const auto& s : names) values[s] = Rational(pdist(rng)) + (draw < 20 ? Rational(0) : Rational(1, 2));
            std::vector<Polynomial> cs;
            for (const auto& c : rec.coefficients) cs.push_back(c.evaluate(values));
            if (cs.front().is_zero() || cs.back().is_zero()) continue;

            std::map<Rational, std::optional<Combination>> sums;
            auto s_at = [&](const Rational& m) -> const std::optional<Combination>& {
                auto it = sums.find(m);
                if (it != sums.end()) return it->second;
                Expr Fm = F;
                try {
                    for (const auto& [name, v] : values) Fm = substitute(Fm, name, Expr(v));
                    Fm = substitute(Fm, n, Expr(m));
                } catch (const DivisionError&) {
                    return sums[m] = std::nullopt;
                }
                return sums[m] = support_sum(Fm, k, {}, options.support);
            };
            const long first_shift = rec.direction == Direction::Down ? J : 0;
            try {
                for (const Rational& offset : {Rational(0), Rational(1, 2)}) {
                    for (long start = first_shift; start <= first_shift + 40 && !done; ++start) {
                        bool ok = true;
                        for (long m = start; m < start + options.window && ok; ++m)
                            for (int j = 0; j <= J && ok; ++j) ok = s_at(Rational(m + rec.shift_of(j)) + offset).has_value();
                        if (!ok) continue;
                        for (long m = start; m < start + options.window; ++m) {
                            Rational nm = Rational(m) + offset;
                            Combination lhs;
                            for (int j = 0; j <= J; ++j) {
                                Rational c = cs[j].evaluate_all({{n, nm}});
                                add_into(lhs, *s_at(nm + rec.shift_of(j)), c);
                            }
                            Assignment point = values;
                            point[n] = nm;
                            report.evidence.push_back({point, to_expr(lhs), Expr(0)});
                            if (!lhs.empty()) report.verdict = Verdict::Fail;
                        }
                        done = true;
                    }
                    if (done) break;
                }
            } catch (const UnboundedSupport& e) {
                unbounded = true;
                unbounded_message = e.what();
            }
        }
        if (done) ++passed_trials;
    }
    if (passed_trials == 0) {
        if (unbounded) throw UnboundedSupport(unbounded_message);
        report.verdict = Verdict::SkippedPole;
    }
    return report;
}

CheckReport check_certificate(const ZeilbergerResult& z, const Expr& F, const std::string& k, const std::string& n) {
    CheckReport report;
    report.method = "certificate";
    const auto& c = z.certificate;
    RationalFunction rn = term_ratio(F, n).rational();
    RationalFunction rk = term_ratio(F, k).rational();
    // sum_j sigma_j F(n-j,k)/F(n,k) - R(k) + R(k-1) F(n,k-1)/F(n,k)
    RationalFunction total;
    RationalFunction w(Polynomial(1));
    for (std::size_t j = 0; j < c.sigma.size(); ++j) {
        if (j > 0) w = w / rn.shift(n, -Rational(static_cast<long>(j - 1)));
        total = total + c.sigma[j] * w;
    }
    total = total - c.certificate + c.certificate.shift(k, -1) / rk;
    report.verdict = total.is_zero() ? Verdict::Pass : Verdict::Fail;
    report.evidence.push_back({{}, from_rational_function(total), Expr(0)});
    return report;
}

}  // namespace hypersum
