#include "hypersum/factored.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace hypersum {

namespace {

bool is_linear(const Polynomial& p) { return p.total_degree() == 1; }

}  // namespace

FactoredRational FactoredRational::from_polynomial(const Polynomial& p) {
    FactoredRational r;
    if (p.is_zero()) {
        r.coef_ = 0;
        return r;
    }
    r.multiply_factor(p, 1);
    return r;
}

FactoredRational FactoredRational::from_rational_function(const RationalFunction& f) {
    FactoredRational r = from_polynomial(f.num());
    if (!r.is_zero()) r.multiply_factor(f.den(), -1);
    return r;
}

bool FactoredRational::depends_on(std::string_view var) const {
    return std::any_of(factors_.begin(), factors_.end(), [&](const auto& f) { return f.first.depends_on(var); });
}

void FactoredRational::multiply_factor(const Polynomial& p, int exponent) {
    if (exponent == 0) return;
    if (p.is_zero()) {
        if (exponent < 0) throw DivisionError("division by zero");
        coef_ = 0;
        factors_.clear();
        return;
    }
    if (coef_ == 0) return;
    if (p.is_constant()) {
        Rational c = p.constant_value();
        Rational pw = 1;
        for (int i = 0; i < std::abs(exponent); ++i) pw *= c;
        if (exponent > 0) coef_ *= pw; else coef_ /= pw;
        return;
    }
    Rational c = p.content();
    Polynomial n = p.primitive_part();
    if (n.leading_numeric_coefficient() < 0) {
        c = -c;
        n = -n;
    }
    Rational pw = 1;
    for (int i = 0; i < std::abs(exponent); ++i) pw *= c;
    if (exponent > 0) coef_ *= pw; else coef_ /= pw;
    auto it = factors_.find(n);
    if (it == factors_.end()) {
        factors_.emplace(std::move(n), exponent);
    } else if ((it->second += exponent) == 0) {
        factors_.erase(it);
    }
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& other) {
    if (other.coef_ == 0) {
        coef_ = 0;
        factors_.clear();
        return *this;
    }
    if (coef_ == 0) return *this;
    coef_ *= other.coef_;
    for (const auto& [f, e] : other.factors_) {
        auto it = factors_.find(f);
        if (it == factors_.end()) {
            factors_.emplace(f, e);
        } else if ((it->second += e) == 0) {
            factors_.erase(it);
        }
    }
    return *this;
}

FactoredRational FactoredRational::inverse() const {
    if (coef_ == 0) throw DivisionError("division by zero");
    FactoredRational r;
    r.coef_ = 1 / coef_;
    for (const auto& [f, e] : factors_) r.factors_.emplace(f, -e);
    return r;
}

FactoredRational FactoredRational::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    FactoredRational r;
    for (int i = 0; i < exponent; ++i) r.coef_ *= coef_;
    if (coef_ == 0 && exponent > 0) return r;
    if (exponent == 0) return r;
    for (const auto& [f, e] : factors_) r.factors_.emplace(f, e * exponent);
    return r;
}

FactoredRational FactoredRational::substitute(std::string_view var, const Polynomial& value) const {
    FactoredRational r(coef_);
    for (const auto& [f, e] : factors_) r.multiply_factor(f.substitute(var, value), e);
    return r;
}

FactoredRational FactoredRational::shift(std::string_view var, const Rational& c) const {
    FactoredRational r(coef_);
    for (const auto& [f, e] : factors_) r.multiply_factor(f.shift(var, c), e);
    return r;
}

Rational FactoredRational::evaluate_all(const std::map<std::string, Rational>& point) const {
    Rational v = coef_;
    for (const auto& [f, e] : factors_) {
        Rational x = f.evaluate_all(point);
        if (x == 0) {
            if (e < 0) throw DivisionError("denominator vanishes at evaluation point");
            return 0;
        }
        for (int i = 0; i < std::abs(e); ++i) if (e > 0) v *= x; else v /= x;
    }
    return v;
}

void FactoredRational::refine_coprime() {
    std::vector<std::pair<Polynomial, int>> list(factors_.begin(), factors_.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < list.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < list.size() && !changed; ++j) {
                if (is_linear(list[i].first) && is_linear(list[j].first)) continue;
                Polynomial g = gcd(list[i].first, list[j].first);
                if (g.is_constant()) continue;
                int e = list[i].second + list[j].second;
                list[i].first = list[i].first.exact_div(g);
                list[j].first = list[j].first.exact_div(g);
                list.emplace_back(g, e);
                changed = true;
            }
        }
        if (changed) {
            FactoredRational rebuilt(coef_);
            for (const auto& [f, e] : list) rebuilt.multiply_factor(f, e);
            *this = std::move(rebuilt);
            list.assign(factors_.begin(), factors_.end());
        }
    }
}

std::pair<FactoredRational, FactoredRational> FactoredRational::split(std::string_view var) const {
    FactoredRational dep, indep(coef_);
    for (const auto& [f, e] : factors_) (f.depends_on(var) ? dep : indep).factors_.emplace(f, e);
    return {dep, indep};
}

Polynomial FactoredRational::numerator() const {
    Polynomial p(Rational(coef_.get_num()));
    for (const auto& [f, e] : factors_)
        if (e > 0) p *= hypersum::pow(f, static_cast<unsigned>(e));
    return p;
}

Polynomial FactoredRational::denominator() const {
    Polynomial p(Rational(coef_.get_den()));
    for (const auto& [f, e] : factors_)
        if (e < 0) p *= hypersum::pow(f, static_cast<unsigned>(-e));
    return p;
}

RationalFunction FactoredRational::to_rational_function() const {
    FactoredRational c = *this;
    c.refine_coprime();
    return RationalFunction::from_coprime(c.numerator(), c.denominator());
}

std::vector<Polynomial> coprime_basis(const std::vector<Polynomial>& polys) {
    FactoredRational all;
    for (const auto& p : polys)
        if (!p.is_zero() && !p.is_constant()) all.multiply_factor(p, 1);
    all.refine_coprime();
    std::vector<Polynomial> out;
    for (const auto& [f, e] : all.factors()) out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// Display factorization.

namespace {

using Complex = std::complex<long double>;

// Integer coefficients (low to high) of a univariate polynomial.
std::vector<Integer> integer_coefficients(const Polynomial& u, const std::string& x) {
    Polynomial p = u.primitive_part();
    std::vector<Integer> out;
    for (const auto& c : p.coefficients(x)) out.push_back(c.constant_value().get_num());
    return out;
}

bool is_root(const std::vector<Integer>& c, const Rational& r) {
    // sum c_i a^i b^(n-i) == 0 with r = a/b
    const Integer& a = r.get_num();
    const Integer& b = r.get_den();
    Integer acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * a + c[i] * [&] {
        Integer bp;
        mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), c.size() - 1 - i);
        return bp;
    }();
    return acc == 0;
}

std::vector<Complex> numeric_roots(const std::vector<Integer>& c) {
    std::size_t n = c.size() - 1;
    long max_exp = LONG_MIN;
    std::vector<std::pair<long double, long>> parts;
    for (const auto& x : c) {
        long e = 0;
        double m = mpz_get_d_2exp(&e, x.get_mpz_t());
        parts.emplace_back(m, e);
        if (m != 0) max_exp = std::max(max_exp, e);
    }
    std::vector<long double> a;
    for (auto& [m, e] : parts) a.push_back(m == 0 ? 0.0L : std::ldexp(m, static_cast<int>(std::max(e - max_exp, -16000L))));
    long double lead = a[n];
    for (auto& v : a) v /= lead;
    long double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::pow(std::fabs(a[i]), 1.0L / static_cast<long double>(n - i)));
    bound = 2 * bound + 1;
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = std::polar(bound, 2 * std::numbers::pi_v<long double> * (i + 0.25L) / static_cast<long double>(n));
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < 500; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            Complex p = a[n], dp = 0;
            for (std::size_t j = n; j-- > 0;) {
                dp = dp * z[i] + p;
                p = p * z[i] + a[j];
            }
            if (p == Complex(0) || dp == Complex(0)) {
                done[i] = true;
                continue;
            }
            Complex w = p / dp;
            Complex s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += 1.0L / (z[i] - z[j]);
            Complex step = w / (1.0L - w * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                done[i] = true;
                continue;
            }
            z[i] -= step;
            if (std::abs(step) <= 1e-16L * (1 + std::abs(z[i]))) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) break;
    }
    return z;
}

// Continued-fraction approximations of x with bounded denominators.
std::vector<Rational> rational_candidates(long double x, const Integer& lead) {
    std::vector<Rational> out;
    if (lead.fits_slong_p() && lead.get_si() <= 1000000) {
        long l = lead.get_si();
        std::vector<long> divisors;
        for (long d = 1; d * d <= l; ++d) {
            if (l % d) continue;
            divisors.push_back(d);
            if (d * d != l) divisors.push_back(l / d);
        }
        std::sort(divisors.begin(), divisors.end());
        for (long d : divisors) {
            long double num = std::round(x * static_cast<long double>(d));
            if (std::fabs(num) > 1e18L) continue;
            out.emplace_back(static_cast<long>(num), d);
        }
        for (auto& r : out) r.canonicalize();
        return out;
    }
    long double v = x;
    Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int i = 0; i < 40; ++i) {
        long double fl = std::floor(v);
        if (std::fabs(fl) > 1e18L) break;
        Integer a = static_cast<long>(fl);
        Integer h = a * h0 + h1, k = a * k0 + k1;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        Rational r(h, k);
        r.canonicalize();
        out.push_back(r);
        if (k > 1000000) break;
        long double frac = v - fl;
        if (frac < 1e-15L) break;
        v = 1 / frac;
    }
    return out;
}

std::vector<Rational> rational_roots(const Polynomial& u, const std::string& x) {
    std::vector<Rational> roots;
    if (u.degree(x) < 1) return roots;
    Polynomial g = gcd(u, u.derivative(x));
    Polynomial sf = g.is_constant() ? u : u.exact_div(g);
    std::vector<Integer> c = integer_coefficients(sf, x);
    if (c.size() < 2) return roots;
    std::size_t low = 0;
    while (c[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
    }
    if (c.size() < 2) return roots;
    if (c.size() == 2) {
        Rational r(-c[0], c[1]);
        r.canonicalize();
        roots.push_back(r);
        return roots;
    }
    for (const auto& z : numeric_roots(c)) {
        if (std::fabs(z.imag()) > 1e-6L * (1 + std::fabs(z.real()))) continue;
        for (const auto& r : rational_candidates(z.real(), abs(c.back()))) {
            if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
            if (is_root(c, r)) {
                roots.push_back(r);
                break;
            }
        }
    }
    return roots;
}

std::map<std::string, Rational> pick_specialization(const Polynomial& q, const std::string& x,
                                                    const std::vector<std::string>& others) {
    Polynomial lc = q.leading_coefficient(x);
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::map<std::string, Rational> s;
        for (std::size_t i = 0; i < others.size(); ++i) s[others[i]] = Rational(static_cast<long>(5 + 11 * i + 37 * attempt));
        if (lc.evaluate_all(s) != 0) return s;
    }
    throw Error("no usable specialization for factorization");
}

std::vector<std::pair<Polynomial, int>> extract_linear_factors(Polynomial& q) {
    std::vector<std::pair<Polynomial, int>> out;
    const std::vector<std::string> all_vars = q.variables();
    for (const auto& x : all_vars) {
        bool progress = true;
        while (progress && q.degree(x) >= 1) {
            progress = false;
            std::vector<std::string> others;
            for (const auto& v : q.variables())
                if (v != x) others.push_back(v);
            auto spec = pick_specialization(q, x, others);
            auto roots0 = rational_roots(q.evaluate(spec), x);
            if (roots0.empty()) break;
            std::vector<std::vector<Rational>> roots1(others.size());
            std::vector<bool> have1(others.size(), false);
            for (const auto& rho0 : roots0) {
                std::vector<std::vector<Rational>> deltas(others.size());
                bool ok = true;
                for (std::size_t i = 0; i < others.size() && ok; ++i) {
                    auto s1 = spec;
                    s1[others[i]] += 1;
                    if (!have1[i]) {
                        roots1[i] = rational_roots(q.evaluate(s1), x);
                        have1[i] = true;
                    }
                    auto s2 = spec, s3 = spec;
                    s2[others[i]] += 2;
                    s3[others[i]] -= 1;
                    Polynomial u2 = q.evaluate(s2), u3 = q.evaluate(s3);
                    for (const auto& rho1 : roots1[i]) {
                        Rational d = rho1 - rho0;
                        if (u2.evaluate_all({{x, rho0 + 2 * d}}) != 0) continue;
                        if (u3.evaluate_all({{x, rho0 - d}}) != 0) continue;
                        deltas[i].push_back(d);
                    }
                    if (deltas[i].empty()) ok = false;
                }
                if (!ok) continue;
                std::size_t combos = 1;
                for (const auto& d : deltas) combos *= d.size();
                combos = std::min<std::size_t>(combos, 256);
                for (std::size_t idx = 0; idx < combos && !progress; ++idx) {
                    Polynomial f = Polynomial::variable(x) - Polynomial(rho0);
                    std::size_t rest = idx;
                    for (std::size_t i = 0; i < others.size(); ++i) {
                        const Rational& d = deltas[i][rest % deltas[i].size()];
                        rest /= deltas[i].size();
                        f -= (Polynomial::variable(others[i]) - Polynomial(spec[others[i]])) * d;
                    }
                    f = f.normalized();
                    int m = 0;
                    while (auto quo = q.divide_exact(f)) {
                        q = *quo;
                        ++m;
                    }
                    if (m > 0) {
                        out.emplace_back(f, m);
                        progress = true;
                    }
                }
                if (progress) break;
            }
        }
    }
    return out;
}

Polynomial content_wrt(const Polynomial& p, const std::string& var) {
    Polynomial g;
    for (const auto& c : p.coefficients(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

void square_free(const Polynomial& p, int mult, std::vector<std::pair<Polynomial, int>>& out) {
    if (p.is_constant()) return;
    const std::string x = p.variables().front();
    Polynomial c = content_wrt(p, x);
    if (!c.is_constant()) square_free(c, mult, out);
    Polynomial a = c.is_constant() ? p : p.exact_div(c);
    Polynomial b = a.derivative(x);
    Polynomial g = gcd(a, b);
    Polynomial w = a.exact_div(g);
    Polynomial y = b.exact_div(g);
    Polynomial z = y - w.derivative(x);
    int i = 1;
    while (!w.is_constant()) {
        Polynomial h = gcd(w, z);
        if (!h.is_constant()) out.emplace_back(h, i * mult);
        w = w.exact_div(h);
        y = z.exact_div(h);
        z = y - w.derivative(x);
        ++i;
    }
}

}  // namespace

FactoredRational factor_polynomial(const Polynomial& p) {
    if (p.is_zero() || p.is_constant()) return FactoredRational(p.constant_value());
    Polynomial q = p;
    FactoredRational out;
    auto linear = extract_linear_factors(q);
    for (const auto& [f, m] : linear) out.multiply_factor(f, m);
    std::vector<std::pair<Polynomial, int>> sqf;
    Rational c = q.content();
    if (q.leading_numeric_coefficient() < 0) c = -c;
    out.scale(c);
    q = q.normalized();
    square_free(q, 1, sqf);
    Polynomial rebuilt(1);
    for (const auto& [f, m] : sqf) {
        out.multiply_factor(f, m);
        rebuilt *= pow(f, static_cast<unsigned>(m));
    }
    // Absorb any constant left over so the product is exact.
    Rational ratio = q.leading_numeric_coefficient() / rebuilt.leading_numeric_coefficient();
    out.scale(ratio);
    return out;
}

}  // namespace hypersum
