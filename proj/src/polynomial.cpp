#include "hypersum/polynomial.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace hypersum {

namespace {

using Exponents = Polynomial::Exponents;
using Term = Polynomial::Term;

// Descending graded lexicographic order.
bool term_before(const Term& a, const Term& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.exp > b.exp;
}

std::uint32_t degree_of(const Exponents& e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

struct ExponentsHash {
    std::size_t operator()(const Exponents& e) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct KeyGreater {
    bool operator()(const std::pair<std::uint32_t, Exponents>& a,
                    const std::pair<std::uint32_t, Exponents>& b) const {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    }
};

Integer lcm_int(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer gcd_int(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Polynomial::Polynomial(long value) : Polynomial(Rational(value)) {}

Polynomial::Polynomial(const Rational& value) {
    if (value != 0) {
        Term t;
        t.coef = value;
        terms_.push_back(std::move(t));
    }
}

Polynomial Polynomial::variable(const std::string& name) { return monomial(name, 1); }

Polynomial Polynomial::monomial(const std::string& name, unsigned power, const Rational& coef) {
    if (power == 0) return Polynomial(coef);
    Polynomial p;
    if (coef == 0) return p;
    p.vars_ = {name};
    Term t;
    t.exp[0] = static_cast<std::uint16_t>(power);
    t.degree = power;
    t.coef = coef;
    p.terms_.push_back(std::move(t));
    return p;
}

bool Polynomial::is_one() const { return is_constant() && terms_.size() == 1 && terms_[0].coef == 1; }

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    const Term& last = terms_.back();
    return last.degree == 0 ? last.coef : Rational(0);
}

const Rational& Polynomial::leading_numeric_coefficient() const {
    static const Rational zero(0);
    return terms_.empty() ? zero : terms_.front().coef;
}

int Polynomial::var_index(std::string_view var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == vars_.end() || *it != var) return -1;
    return static_cast<int>(it - vars_.begin());
}

bool Polynomial::depends_on(std::string_view var) const { return var_index(var) >= 0; }

int Polynomial::degree(std::string_view var) const {
    if (is_zero()) return -1;
    int idx = var_index(var);
    if (idx < 0) return 0;
    int d = 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.exp[idx]);
    return d;
}

int Polynomial::total_degree() const { return is_zero() ? -1 : static_cast<int>(terms_.front().degree); }

std::vector<Term> Polynomial::terms_over(const std::vector<std::string>& vars) const {
    if (vars == vars_) return terms_;
    std::vector<int> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
        pos[i] = static_cast<int>(it - vars.begin());
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n;
        for (std::size_t i = 0; i < vars_.size(); ++i) n.exp[pos[i]] = t.exp[i];
        n.degree = t.degree;
        n.coef = t.coef;
        out.push_back(std::move(n));
    }
    return out;
}

Polynomial Polynomial::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    std::vector<std::string> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() > kMaxVars) throw Error("too many variables in one polynomial");
    Polynomial p;
    p.vars_ = sorted;
    if (sorted == vars) {
        p.terms_ = std::move(terms);
    } else {
        std::vector<int> pos(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i)
            pos[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), vars[i]) - sorted.begin());
        p.terms_.reserve(terms.size());
        for (auto& t : terms) {
            Term n;
            for (std::size_t i = 0; i < vars.size(); ++i) n.exp[pos[i]] += t.exp[i];
            n.coef = std::move(t.coef);
            p.terms_.push_back(std::move(n));
        }
    }
    p.canonicalize();
    return p;
}

void Polynomial::canonicalize() {
    for (auto& t : terms_) t.degree = degree_of(t.exp);
    std::sort(terms_.begin(), terms_.end(), term_before);
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exp == t.exp) {
            merged.back().coef += t.coef;
        } else {
            if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
    terms_ = std::move(merged);

    // Drop variables that no longer occur.
    std::vector<bool> used(vars_.size(), false);
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (t.exp[i]) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    std::vector<int> keep;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) {
            nv.push_back(vars_[i]);
            keep.push_back(static_cast<int>(i));
        }
    for (auto& t : terms_) {
        Exponents e{};
        for (std::size_t j = 0; j < keep.size(); ++j) e[j] = t.exp[keep[j]];
        t.exp = e;
    }
    vars_ = std::move(nv);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) return *this = other;
    std::vector<std::string> vars = vars_ == other.vars_ ? vars_ : merge_variables(vars_, other.vars_);
    if (vars.size() > kMaxVars) throw Error("too many variables in one polynomial");
    std::vector<Term> a = terms_over(vars);
    std::vector<Term> b = other.terms_over(vars);
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && term_before(a[i], b[j]))) {
            out.push_back(std::move(a[i++]));
        } else if (i == a.size() || term_before(b[j], a[i])) {
            out.push_back(std::move(b[j++]));
        } else {
            Term t = std::move(a[i++]);
            t.coef += b[j++].coef;
            if (t.coef != 0) out.push_back(std::move(t));
        }
    }
    vars_ = std::move(vars);
    terms_ = std::move(out);
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        vars_.clear();
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    if (b.is_constant()) return a * b.terms_[0].coef;
    if (a.is_constant()) return b * a.terms_[0].coef;
    std::vector<std::string> vars = a.vars_ == b.vars_ ? a.vars_ : merge_variables(a.vars_, b.vars_);
    if (vars.size() > Polynomial::kMaxVars) throw Error("too many variables in one polynomial");
    std::vector<Term> ta = a.terms_over(vars);
    std::vector<Term> tb = b.terms_over(vars);
    std::unordered_map<Exponents, Rational, ExponentsHash> acc;
    acc.reserve(ta.size() * tb.size() / 2 + 1);
    Rational prod;
    for (const auto& x : ta) {
        for (const auto& y : tb) {
            Exponents e;
            for (std::size_t i = 0; i < Polynomial::kMaxVars; ++i) e[i] = x.exp[i] + y.exp[i];
            mpq_mul(prod.get_mpq_t(), x.coef.get_mpq_t(), y.coef.get_mpq_t());
            auto [it, inserted] = acc.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    }
    Polynomial r;
    r.vars_ = std::move(vars);
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (c == 0) continue;
        Term t;
        t.exp = e;
        t.coef = std::move(c);
        r.terms_.push_back(std::move(t));
    }
    r.canonicalize();
    return r;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
    Polynomial result(1);
    Polynomial b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        exponent >>= 1u;
        if (exponent) b = b * b;
    }
    return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
    if (auto c = a.terms_.size() <=> b.terms_.size(); c != 0) return c;
    if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& x = a.terms_[i];
        const auto& y = b.terms_[i];
        if (auto c = x.exp <=> y.exp; c != 0) return c;
        int s = cmp(x.coef, y.coef);
        if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::vector<Polynomial> Polynomial::coefficients(std::string_view var) const {
    int idx = var_index(var);
    if (idx < 0) return {*this};
    int d = degree(var);
    std::vector<std::vector<Term>> buckets(d + 1);
    for (const auto& t : terms_) {
        Term n = t;
        int e = n.exp[idx];
        n.exp[idx] = 0;
        buckets[e].push_back(std::move(n));
    }
    std::vector<Polynomial> out;
    out.reserve(d + 1);
    for (auto& b : buckets) out.push_back(from_terms(vars_, std::move(b)));
    return out;
}

Polynomial Polynomial::from_coefficients(const std::string& var, const std::vector<Polynomial>& coeffs) {
    Polynomial r;
    Polynomial x = variable(var);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        r = r * x;
        r += coeffs[i];
    }
    return r;
}

Polynomial Polynomial::leading_coefficient(std::string_view var) const {
    if (is_zero()) return {};
    return coefficients(var).back();
}

Polynomial Polynomial::coefficient(std::string_view var, int power) const {
    if (power < 0) return {};
    auto cs = coefficients(var);
    if (power >= static_cast<int>(cs.size())) return {};
    return cs[power];
}

Rational Polynomial::content() const {
    if (is_zero()) return 0;
    Integer num = 0, den = 1;
    for (const auto& t : terms_) {
        num = gcd_int(num, t.coef.get_num());
        den = lcm_int(den, t.coef.get_den());
    }
    Rational c(num, den);
    c.canonicalize();
    return c;
}

Polynomial Polynomial::primitive_part() const {
    if (is_zero()) return *this;
    Rational c = content();
    Polynomial r = *this;
    Rational inv = 1 / c;
    for (auto& t : r.terms_) t.coef *= inv;
    return r;
}

Polynomial Polynomial::normalized() const {
    Polynomial r = primitive_part();
    if (!r.is_zero() && r.terms_.front().coef < 0) r = -r;
    return r;
}

Polynomial Polynomial::derivative(std::string_view var) const {
    int idx = var_index(var);
    if (idx < 0) return {};
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exp[idx] == 0) continue;
        Term n = t;
        n.coef *= t.exp[idx];
        n.exp[idx] -= 1;
        out.push_back(std::move(n));
    }
    return from_terms(vars_, std::move(out));
}

Polynomial Polynomial::substitute(std::string_view var, const Polynomial& value) const {
    if (!depends_on(var)) return *this;
    auto cs = coefficients(var);
    Polynomial r;
    for (std::size_t i = cs.size(); i-- > 0;) {
        r = r * value;
        r += cs[i];
    }
    return r;
}

Polynomial Polynomial::shift(std::string_view var, const Rational& c) const {
    if (c == 0 || !depends_on(var)) return *this;
    return substitute(var, variable(std::string(var)) + Polynomial(c));
}

Polynomial Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
    std::vector<int> bound;
    std::vector<const Rational*> values;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it != point.end()) {
            bound.push_back(static_cast<int>(i));
            values.push_back(&it->second);
        }
    }
    if (bound.empty()) return *this;
    std::vector<std::vector<Rational>> powers(bound.size());
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n = t;
        for (std::size_t b = 0; b < bound.size(); ++b) {
            unsigned e = n.exp[bound[b]];
            if (e == 0) continue;
            auto& pw = powers[b];
            if (pw.empty()) pw.push_back(Rational(1));
            while (pw.size() <= e) pw.push_back(pw.back() * *values[b]);
            n.coef *= pw[e];
            n.exp[bound[b]] = 0;
        }
        if (n.coef != 0) out.push_back(std::move(n));
    }
    return from_terms(vars_, std::move(out));
}

Rational Polynomial::evaluate_all(const std::map<std::string, Rational>& point) const {
    Polynomial p = evaluate(point);
    if (!p.is_constant()) throw Error("evaluate_all: unbound variable " + p.vars_.front());
    return p.constant_value();
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DivisionError("division by zero polynomial");
    if (is_zero()) return Polynomial();
    if (divisor.is_constant()) return *this * (1 / divisor.terms_[0].coef);
    for (const auto& v : divisor.vars_)
        if (!depends_on(v)) return std::nullopt;
    if (total_degree() < divisor.total_degree()) return std::nullopt;
    const std::vector<std::string>& vars = vars_;
    std::vector<Term> dterms = divisor.terms_over(vars);
    const Term& lead = dterms.front();
    Rational inv_lead = 1 / lead.coef;

    std::map<std::pair<std::uint32_t, Exponents>, Rational, KeyGreater> rem;
    for (const auto& t : terms_) rem.emplace(std::make_pair(t.degree, t.exp), t.coef);
    std::vector<Term> quotient;
    Rational prod;
    while (!rem.empty()) {
        auto top = rem.begin();
        const Exponents& te = top->first.second;
        Exponents qe;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (te[i] < lead.exp[i]) return std::nullopt;
            qe[i] = te[i] - lead.exp[i];
        }
        Rational qc = top->second * inv_lead;
        for (const auto& d : dterms) {
            Exponents e;
            for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = qe[i] + d.exp[i];
            mpq_mul(prod.get_mpq_t(), qc.get_mpq_t(), d.coef.get_mpq_t());
            auto key = std::make_pair(degree_of(e), e);
            auto it = rem.find(key);
            if (it == rem.end()) {
                rem.emplace(key, -prod);
            } else {
                it->second -= prod;
                if (it->second == 0) rem.erase(it);
            }
        }
        Term qt;
        qt.exp = qe;
        qt.coef = std::move(qc);
        quotient.push_back(std::move(qt));
    }
    return from_terms(vars, std::move(quotient));
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
    auto q = divide_exact(divisor);
    if (!q) throw DivisionError("polynomial division is not exact");
    return *q;
}

namespace {

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coef;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        std::ostringstream mono;
        bool any = false;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!t.exp[i]) continue;
            if (any) mono << "*";
            mono << vars_[i];
            if (t.exp[i] > 1) mono << "^" << t.exp[i];
            any = true;
        }
        if (!any) {
            out << rational_string(c);
        } else {
            Integer num = c.get_num(), den = c.get_den();
            if (num != 1) out << num.get_str() << "*";
            out << mono.str();
            if (den != 1) out << "/" << den.get_str();
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// gcd and resultants via subresultant polynomial remainder sequences.

namespace {

using UPoly = std::vector<Polynomial>;  // coefficients, low to high

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

void utrim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly to_upoly(const Polynomial& p, const std::string& var) {
    if (p.is_zero()) return {};
    return p.coefficients(var);
}

Polynomial from_upoly(const std::string& var, const UPoly& p) { return Polynomial::from_coefficients(var, p); }

// lc(B)^(deg A - deg B + 1) * A = Q * B + R
UPoly prem(UPoly a, const UPoly& b) {
    int db = udeg(b);
    int delta = udeg(a) - db;
    if (delta < 0) return a;
    const Polynomial& lb = b.back();
    int steps = 0;
    while (!a.empty() && udeg(a) >= db) {
        int e = udeg(a) - db;
        Polynomial la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[i + e] -= la * b[i];
        utrim(a);
        ++steps;
    }
    int extra = delta + 1 - steps;
    if (extra > 0 && !a.empty()) {
        Polynomial f = pow(lb, static_cast<unsigned>(extra));
        for (auto& c : a) c *= f;
    }
    return a;
}

UPoly udiv_exact(const UPoly& a, const Polynomial& d) {
    UPoly out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(c.exact_div(d));
    return out;
}

Polynomial content_in(const Polynomial& p, const std::string& var) {
    auto cs = p.coefficients(var);
    Polynomial g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Polynomial subresultant_gcd(const Polynomial& a, const Polynomial& b, const std::string& var) {
    UPoly A = to_upoly(a, var);
    UPoly B = to_upoly(b, var);
    if (udeg(A) < udeg(B)) std::swap(A, B);
    Polynomial g(1), h(1);
    for (;;) {
        int delta = udeg(A) - udeg(B);
        UPoly R = prem(A, B);
        if (R.empty()) break;
        if (udeg(R) == 0) return Polynomial(1);
        A = std::move(B);
        B = udiv_exact(R, g * pow(h, static_cast<unsigned>(delta)));
        g = A.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = pow(g, static_cast<unsigned>(delta)).exact_div(pow(h, static_cast<unsigned>(delta - 1)));
        }
    }
    Polynomial res = from_upoly(var, B);
    return res.exact_div(content_in(res, var)).normalized();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (a == b) return a.normalized();

    const auto& va = a.variables();
    const auto& vb = b.variables();
    for (const auto& v : va)
        if (!b.depends_on(v)) return gcd(content_in(a, v), b);
    for (const auto& v : vb)
        if (!a.depends_on(v)) return gcd(a, content_in(b, v));

    // Cheap divisibility shortcuts.
    if (a.size() <= b.size()) {
        if (b.divide_exact(a)) return a.normalized();
    } else if (a.divide_exact(b)) {
        return b.normalized();
    }

    std::string var = va.front();
    int best = -1;
    for (const auto& v : va) {
        int d = std::max(a.degree(v), b.degree(v));
        if (best < 0 || d < best) {
            best = d;
            var = v;
        }
    }
    Polynomial ca = content_in(a, var);
    Polynomial cb = content_in(b, var);
    Polynomial pa = a.exact_div(ca);
    Polynomial pb = b.exact_div(cb);
    Polynomial c = gcd(ca, cb);
    Polynomial g = subresultant_gcd(pa, pb, var);
    return (c * g).normalized();
}

Polynomial resultant(const Polynomial& a, const Polynomial& b, const std::string& var) {
    if (a.is_zero() || b.is_zero()) return {};
    UPoly A = to_upoly(a, var);
    UPoly B = to_upoly(b, var);
    Polynomial s(1);
    if (udeg(A) < udeg(B)) {
        std::swap(A, B);
        if (udeg(A) % 2 == 1 && udeg(B) % 2 == 1) s = -s;
    }
    if (udeg(B) == 0) return s * pow(B[0], static_cast<unsigned>(udeg(A)));
    Polynomial g(1), h(1);
    for (;;) {
        int delta = udeg(A) - udeg(B);
        if (udeg(A) % 2 == 1 && udeg(B) % 2 == 1) s = -s;
        UPoly R = prem(A, B);
        A = std::move(B);
        if (R.empty()) return {};
        B = udiv_exact(R, g * pow(h, static_cast<unsigned>(delta)));
        g = A.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = pow(g, static_cast<unsigned>(delta)).exact_div(pow(h, static_cast<unsigned>(delta - 1)));
        }
        if (udeg(B) == 0) break;
    }
    int da = udeg(A);
    Polynomial lb = B[0];
    Polynomial hn = pow(lb, static_cast<unsigned>(da)).exact_div(pow(h, static_cast<unsigned>(da - 1)));
    return s * hn;
}

// ---------------------------------------------------------------------------
// Integer roots.

namespace {

using RPoly = std::vector<Rational>;  // univariate, low to high

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rrem(RPoly a, const RPoly& b) {
    while (!a.empty() && a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + off] -= f * b[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

RPoly rgcd(RPoly a, RPoly b) {
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RPoly r = rrem(a, b);
        a = std::move(b);
        b = std::move(r);
        if (!b.empty()) {
            Rational lc = b.back();
            for (auto& c : b) c /= lc;
        }
    }
    return a;
}

double log2_abs(const Integer& z) {
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
}

Integer horner(const std::vector<Integer>& c, const Integer& x) {
    Integer acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<Integer> univariate_integer_roots(RPoly p) {
    rtrim(p);
    std::vector<Integer> roots;
    if (p.size() <= 1) return roots;
    Integer den = 1;
    for (const auto& c : p) den = lcm_int(den, c.get_den());
    std::vector<Integer> c;
    c.reserve(p.size());
    for (const auto& x : p) c.push_back(Integer(x * den));
    std::size_t low = 0;
    while (c[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
    }
    if (c.size() <= 1) return roots;
    std::size_t n = c.size() - 1;
    const Integer& a0 = c.front();
    const Integer& an = c.back();
    double lead = log2_abs(an);
    double best = -1e300;
    for (std::size_t i = 1; i <= n; ++i) {
        if (c[n - i] == 0) continue;
        best = std::max(best, (log2_abs(c[n - i]) - lead) / static_cast<double>(i));
    }
    double bound_log = best + 1.0;  // Fujiwara: 2 * max |a_{n-i}/a_n|^(1/i)
    Integer abs_a0 = abs(a0);
    constexpr double kScanLimitLog = 22.0;  // about 4e6 candidates
    auto test = [&](const Integer& z) {
        if (horner(c, z) == 0) roots.push_back(z);
    };
    if (bound_log < kScanLimitLog || log2_abs(abs_a0) < kScanLimitLog) {
        long limit = static_cast<long>(std::ceil(std::exp2(std::min(bound_log, kScanLimitLog)))) + 1;
        if (abs_a0.fits_slong_p()) limit = std::min(limit, abs_a0.get_si());
        for (long z = 1; z <= limit; ++z) {
            if (mpz_divisible_ui_p(abs_a0.get_mpz_t(), static_cast<unsigned long>(z)) == 0) continue;
            test(Integer(z));
            test(Integer(-z));
        }
    } else if (abs_a0.fits_slong_p() && abs_a0 < Integer("100000000000000")) {
        long v = abs_a0.get_si();
        for (long d = 1; d * d <= v; ++d) {
            if (v % d != 0) continue;
            for (long z : {d, v / d}) {
                test(Integer(z));
                test(Integer(-z));
                if (d == v / d) break;
            }
        }
    } else {
        throw Error("integer root search bound exceeded");
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

std::vector<Integer> integer_roots(const Polynomial& p, const std::string& var) {
    if (p.is_zero()) throw Error("integer_roots of the zero polynomial");
    if (!p.depends_on(var)) return {};
    // Split p = sum_m u_m(var) * m(others); common integer roots of all u_m.
    const auto& vars = p.variables();
    int idx = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), var) - vars.begin());
    std::map<Exponents, RPoly> parts;
    for (const auto& t : p.terms()) {
        Exponents key = t.exp;
        int e = key[idx];
        key[idx] = 0;
        RPoly& u = parts[key];
        if (static_cast<int>(u.size()) <= e) u.resize(e + 1);
        u[e] += t.coef;
    }
    RPoly g;
    for (auto& [key, u] : parts) {
        g = g.empty() ? u : rgcd(g, u);
        rtrim(g);
        if (g.size() <= 1) return {};
    }
    return univariate_integer_roots(g);
}

std::vector<long> dispersion_set(const Polynomial& q, const Polynomial& r, const std::string& var) {
    if (q.is_zero() || r.is_zero()) throw Error("dispersion_set of the zero polynomial");
    if (q.degree(var) < 1 || r.degree(var) < 1) return {};
    std::vector<long> out;
    if (q.degree(var) == 1 && r.degree(var) == 1) {
        auto qc = q.coefficients(var);
        auto rc = r.coefficients(var);
        Polynomial num = rc[1] * qc[0] - qc[1] * rc[0];
        if (num.is_zero()) return {0};
        auto quo = num.divide_exact(qc[1] * rc[1]);
        if (!quo || !quo->is_constant()) return {};
        Rational j = quo->constant_value();
        if (j.get_den() == 1 && j >= 0 && j.get_num().fits_slong_p()) out.push_back(j.get_num().get_si());
        return out;
    }
    const std::string shift_var = "@shift";
    Polynomial shifted = r.substitute(var, Polynomial::variable(var) + Polynomial::variable(shift_var));
    Polynomial res = resultant(q, shifted, var);
    if (res.is_zero()) throw Error("dispersion_set: polynomials share a factor for every shift");
    for (const auto& z : integer_roots(res, shift_var)) {
        if (z < 0 || !z.fits_slong_p()) continue;
        long j = z.get_si();
        if (gcd(q, r.shift(var, Rational(j))).degree(var) > 0) out.push_back(j);
    }
    return out;
}

}  // namespace hypersum
