#include "hypersum/expr.hpp"

#include "hypersum/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace hypersum {

Expr make_node(ExprNode node) { return Expr(std::make_shared<const ExprNode>(std::move(node))); }

namespace {

constexpr long kMaxEvaluatedCount = 10000;

Expr node(Kind kind, std::vector<Expr> args) {
    ExprNode n{kind, Rational(0), {}, 0, std::move(args)};
    return make_node(std::move(n));
}

Rational rational_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw DivisionError("zero raised to a negative power");
        return 1 / rational_pow(base, -e);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool small_integer(const Expr& e, long limit, long& out) {
    if (!e.is_integer() || !e.value().get_num().fits_slong_p()) return false;
    long v = e.value().get_num().get_si();
    if (v > limit || v < -limit) return false;
    out = v;
    return true;
}

// t = c * rest with c numeric.
std::pair<Rational, Expr> split_coefficient(const Expr& t) {
    if (t.is_number()) return {t.value(), Expr(1)};
    if (t.kind() == Kind::Mul && t.arg(0).is_number()) {
        const auto& a = t.args();
        if (a.size() == 2) return {a[0].value(), a[1]};
        return {a[0].value(), node(Kind::Mul, std::vector<Expr>(a.begin() + 1, a.end()))};
    }
    return {Rational(1), t};
}

std::pair<Expr, Expr> split_power(const Expr& f) {
    if (f.kind() == Kind::Pow) return {f.arg(0), f.arg(1)};
    return {f, Expr(1)};
}

std::vector<std::pair<Expr, Expr>> monomial_factors(const Expr& rest) {
    std::vector<std::pair<Expr, Expr>> out;
    if (rest.is_number()) return out;
    if (rest.kind() == Kind::Mul) {
        for (const auto& f : rest.args())
            if (!f.is_number()) out.push_back(split_power(f));
    } else {
        out.push_back(split_power(rest));
    }
    return out;
}

Rational monomial_degree(const std::vector<std::pair<Expr, Expr>>& fs) {
    Rational d = 0;
    for (const auto& [b, e] : fs) d += e.is_number() ? e.value() : Rational(1);
    return d;
}

// Graded lexicographic display order for the terms of a sum; numbers last.
bool add_less(const Expr& a, const Expr& b) {
    auto ra = split_coefficient(a).second;
    auto rb = split_coefficient(b).second;
    auto fa = monomial_factors(ra);
    auto fb = monomial_factors(rb);
    Rational da = monomial_degree(fa), db = monomial_degree(fb);
    if (da != db) return da > db;
    for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i) {
        int c = compare(fa[i].first, fb[i].first);
        if (c != 0) return c < 0;
        const Expr& ea = fa[i].second;
        const Expr& eb = fb[i].second;
        if (ea.is_number() && eb.is_number()) {
            if (ea.value() != eb.value()) return ea.value() > eb.value();
        } else if (int ce = compare(ea, eb); ce != 0) {
            return ce < 0;
        }
    }
    if (fa.size() != fb.size()) return fa.size() < fb.size();
    int c = compare(ra, rb);
    if (c != 0) return c < 0;
    return cmp(split_coefficient(a).first, split_coefficient(b).first) < 0;
}

bool mul_less(const Expr& a, const Expr& b) {
    auto [ba, ea] = split_power(a);
    auto [bb, eb] = split_power(b);
    int c = compare(ba, bb);
    if (c != 0) return c < 0;
    return compare(ea, eb) < 0;
}

Expr scaled(const Expr& rest, const Rational& c) {
    if (c == 1) return rest;
    if (rest.is_one()) return Expr(c);
    std::vector<Expr> args{Expr(c)};
    if (rest.kind() == Kind::Mul) {
        args.insert(args.end(), rest.args().begin(), rest.args().end());
    } else {
        args.push_back(rest);
    }
    return node(Kind::Mul, std::move(args));
}

// Sum = c * primitive sum whose first term has a positive coprime-integer coefficient.
std::pair<Rational, Expr> add_content(const Expr& sum) {
    Integer num = 0, den = 1;
    for (const auto& t : sum.args()) {
        Rational c = split_coefficient(t).first;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(num, den);
    content.canonicalize();
    if (split_coefficient(sum.arg(0)).first < 0) content = -content;
    if (content == 1) return {content, sum};
    std::vector<Expr> terms;
    Rational inv = 1 / content;
    for (const auto& t : sum.args()) {
        auto [c, rest] = split_coefficient(t);
        terms.push_back(scaled(rest, c * inv));
    }
    return {content, node(Kind::Add, std::move(terms))};
}

bool is_polynomial_expr(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::Symbol:
            return true;
        case Kind::Add:
        case Kind::Mul:
            return std::all_of(e.args().begin(), e.args().end(), is_polynomial_expr);
        case Kind::Pow:
            return e.arg(1).is_integer() && e.arg(1).value() > 0 && is_polynomial_expr(e.arg(0));
        default:
            return false;
    }
}

// (-1)^e: drop even integer multiples from the exponent.
Expr minus_one_power(const Expr& exponent) {
    Expr e = exponent;
    std::vector<Expr> terms = e.kind() == Kind::Add ? e.args() : std::vector<Expr>{e};
    std::vector<Expr> kept;
    bool negate = false;
    for (const auto& t : terms) {
        auto [c, rest] = split_coefficient(t);
        if (c.get_den() != 1) {
            kept.push_back(t);
            continue;
        }
        Integer r = c.get_num() % 2;
        if (r != 0) {
            if (rest.is_one()) {
                negate = !negate;
            } else {
                kept.push_back(rest);
            }
        }
    }
    Expr ne = add(kept);
    Expr p = ne.is_zero() ? Expr(1) : node(Kind::Pow, {Expr(-1), ne});
    return negate ? mul({Expr(-1), p}) : p;
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(long value) : Expr(Rational(value)) {}

Expr::Expr(const Rational& value) {
    ExprNode n{Kind::Number, value, {}, 0, {}};
    n.value.canonicalize();
    node_ = std::make_shared<const ExprNode>(std::move(n));
}

Expr Expr::symbol(const std::string& name) {
    ExprNode n{Kind::Symbol, Rational(0), name, 0, {}};
    return make_node(std::move(n));
}

Expr Expr::sum_ref(const std::string& var, long shift) {
    ExprNode n{Kind::SumRef, Rational(0), var, shift, {}};
    return make_node(std::move(n));
}

int compare(const Expr& a, const Expr& b) {
    if (&a == &b) return 0;
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case Kind::Number:
            return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
        case Kind::Symbol:
            return a.name() < b.name() ? -1 : (a.name() == b.name() ? 0 : 1);
        case Kind::SumRef:
            if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
            return a.shift() < b.shift() ? -1 : (a.shift() == b.shift() ? 0 : 1);
        default:
            break;
    }
    const auto& x = a.args();
    const auto& y = b.args();
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool operator==(const Expr& a, const Expr& b) { return a.node_ == b.node_ || compare(a, b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less : (c == 0 ? std::strong_ordering::equal : std::strong_ordering::greater);
}

std::string Expr::to_string() const { return print(*this); }

Expr add(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    for (auto& t : terms) {
        if (t.kind() == Kind::Add) {
            flat.insert(flat.end(), t.args().begin(), t.args().end());
        } else if (t.kind() == Kind::Mul && t.args().size() == 2 && t.arg(0).is_number() && t.arg(1).kind() == Kind::Add) {
            // c*(a + b) inside a sum is distributed so linear combinations stay flat.
            for (const auto& u : t.arg(1).args()) {
                auto [c, rest] = split_coefficient(u);
                flat.push_back(scaled(rest, c * t.arg(0).value()));
            }
        } else {
            flat.push_back(std::move(t));
        }
    }
    Rational constant = 0;
    std::map<Expr, Rational, ExprLess> acc;
    for (const auto& t : flat) {
        if (t.is_number()) {
            constant += t.value();
            continue;
        }
        auto [c, rest] = split_coefficient(t);
        acc[rest] += c;
    }
    std::vector<Expr> out;
    for (const auto& [rest, c] : acc)
        if (c != 0) out.push_back(scaled(rest, c));
    if (constant != 0) out.push_back(Expr(constant));
    if (out.empty()) return Expr(0);
    if (out.size() == 1) return out.front();
    std::sort(out.begin(), out.end(), add_less);
    return node(Kind::Add, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    for (auto& f : factors) {
        if (f.kind() == Kind::Mul) {
            flat.insert(flat.end(), f.args().begin(), f.args().end());
        } else {
            flat.push_back(std::move(f));
        }
    }
    Rational coef = 1;
    std::map<Expr, std::vector<Expr>, ExprLess> groups;
    for (const auto& f : flat) {
        if (f.is_number()) {
            coef *= f.value();
            if (coef == 0) return Expr(0);
            continue;
        }
        auto [b, e] = split_power(f);
        long ei = 0;
        if (b.kind() == Kind::Add && small_integer(e, 1L << 20, ei)) {
            auto [c, prim] = add_content(b);
            if (c != 1) {
                coef *= rational_pow(c, ei);
                b = prim;
            }
        }
        groups[b].push_back(e);
    }
    std::vector<Expr> out;
    bool nested = false;
    for (auto& [b, exps] : groups) {
        Expr e = exps.size() == 1 ? exps.front() : add(exps);
        Expr p = pow(b, e);
        if (p.is_number()) {
            coef *= p.value();
        } else {
            if (p.kind() == Kind::Mul) nested = true;
            out.push_back(p);
        }
    }
    if (coef == 0) return Expr(0);
    if (nested) {
        out.push_back(Expr(coef));
        return mul(std::move(out));
    }
    std::sort(out.begin(), out.end(), mul_less);
    if (out.empty()) return Expr(coef);
    if (coef == 1 && out.size() == 1) return out.front();
    if (out.size() == 1 && out.front().kind() == Kind::Add) {
        std::vector<Expr> terms;
        for (const auto& t : out.front().args()) terms.push_back(mul({Expr(coef), t}));
        return add(std::move(terms));
    }
    if (coef != 1) out.insert(out.begin(), Expr(coef));
    return node(Kind::Mul, std::move(out));
}

Expr pow(const Expr& base, const Expr& exponent_in) {
    Expr exponent = exponent_in;
    if (!exponent.is_number() && is_polynomial_expr(exponent)) exponent = expand(exponent);
    if (exponent.is_zero()) return Expr(1);
    if (exponent.is_one()) return base;
    long ei = 0;
    bool int_exp = small_integer(exponent, 1L << 20, ei);

    if (base.is_number()) {
        const Rational& v = base.value();
        if (exponent.is_number()) {
            if (int_exp) return Expr(rational_pow(v, ei));
            if (v == 1) return Expr(1);
            if (v == 0 && exponent.value() > 0) return Expr(0);
            return node(Kind::Pow, {base, exponent});
        }
        if (v == 1) return Expr(1);
        if (v == 0) return node(Kind::Pow, {base, exponent});
        if (v == -1) return minus_one_power(exponent);
        if (v < 0) return mul({minus_one_power(exponent), pow(Expr(Rational(-v)), exponent)});
        if (v.get_den() != 1) {
            Expr num = pow(Expr(Rational(v.get_num())), exponent);
            Expr den = pow(Expr(Rational(v.get_den())), -exponent);
            return mul({num, den});
        }
        if (exponent.kind() == Kind::Add) {
            Rational c0 = 0;
            std::vector<Expr> rest;
            for (const auto& t : exponent.args()) {
                if (t.is_integer()) {
                    c0 += t.value();
                } else {
                    rest.push_back(t);
                }
            }
            if (c0 != 0 && c0.get_num().fits_slong_p()) {
                return mul({Expr(rational_pow(v, c0.get_num().get_si())), node(Kind::Pow, {base, add(rest)})});
            }
        }
        return node(Kind::Pow, {base, exponent});
    }
    if (base.kind() == Kind::Pow) {
        if (base.arg(1).is_integer() || int_exp) return pow(base.arg(0), mul({base.arg(1), exponent}));
    }
    if (base.kind() == Kind::Mul && int_exp) {
        std::vector<Expr> fs;
        for (const auto& f : base.args()) fs.push_back(pow(f, exponent));
        return mul(std::move(fs));
    }
    if (base.kind() == Kind::Add && int_exp) {
        auto [c, prim] = add_content(base);
        if (c != 1) return mul({Expr(rational_pow(c, ei)), node(Kind::Pow, {prim, exponent})});
    }
    return node(Kind::Pow, {base, exponent});
}

Expr factorial(const Expr& x) {
    long v = 0;
    if (small_integer(x, kMaxEvaluatedCount, v) && v >= 0) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(v));
        return Expr(Rational(f));
    }
    return node(Kind::Factorial, {x});
}

Expr gamma(const Expr& x) {
    long v = 0;
    if (small_integer(x, kMaxEvaluatedCount, v) && v >= 1) return factorial(Expr(v - 1));
    return node(Kind::Gamma, {x});
}

Expr binomial(const Expr& top, const Expr& bottom) {
    long b = 0;
    if (small_integer(bottom, kMaxEvaluatedCount, b)) {
        if (b < 0) return Expr(0);
        if (top.is_number()) {
            Rational r = 1;
            for (long i = 0; i < b; ++i) r = r * (top.value() - i) / (i + 1);
            return Expr(r);
        }
    }
    return node(Kind::Binomial, {top, bottom});
}

Expr pochhammer(const Expr& base, const Expr& count) {
    long c = 0;
    if (small_integer(count, kMaxEvaluatedCount, c)) {
        if (c == 0) return Expr(1);
        if (base.is_number()) {
            Rational r = 1;
            if (c > 0) {
                for (long i = 0; i < c; ++i) r *= base.value() + i;
                return Expr(r);
            }
            for (long i = 1; i <= -c; ++i) {
                Rational d = base.value() - i;
                if (d == 0) return node(Kind::Pochhammer, {base, count});
                r /= d;
            }
            return Expr(r);
        }
    }
    return node(Kind::Pochhammer, {base, count});
}

Expr prod(const Expr& body, const std::string& index, const Expr& lower, const Expr& upper) {
    if (depends_on(lower, index) || depends_on(upper, index))
        throw Error("product index " + index + " occurs in its bounds");
    if (lower.is_integer() && upper.is_integer()) {
        Integer count = upper.value().get_num() - lower.value().get_num() + 1;
        if (count == 0) return Expr(1);
        if (count < 0 && -count <= kMaxEvaluatedCount) {
            // prod_{lo}^{up} = 1 / prod_{up+1}^{lo-1}, so that P(u) = P(u-1) * body(u) for every u
            std::vector<Expr> fs;
            long first = upper.value().get_num().get_si() + 1;
            for (long j = 0; j < Integer(-count).get_si(); ++j) fs.push_back(pow(substitute(body, index, Expr(first + j)), Expr(-1)));
            return mul(std::move(fs));
        }
        if (count <= kMaxEvaluatedCount) {
            std::vector<Expr> fs;
            long lo = lower.value().get_num().get_si();
            for (long j = 0; j < count.get_si(); ++j) fs.push_back(substitute(body, index, Expr(lo + j)));
            return mul(std::move(fs));
        }
    }
    if (!depends_on(body, index) && body.is_one()) return Expr(1);
    return node(Kind::Prod, {body, Expr::symbol(index), lower, upper});
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DivisionError("division by zero");
    return mul({a, pow(b, Expr(-1))});
}

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> args) {
    switch (e.kind()) {
        case Kind::Add:
            return add(std::move(args));
        case Kind::Mul:
            return mul(std::move(args));
        case Kind::Pow:
            return pow(args[0], args[1]);
        case Kind::Factorial:
            return factorial(args[0]);
        case Kind::Gamma:
            return gamma(args[0]);
        case Kind::Binomial:
            return binomial(args[0], args[1]);
        case Kind::Pochhammer:
            return pochhammer(args[0], args[1]);
        case Kind::Prod:
            return prod(args[0], args[1].name(), args[2], args[3]);
        default:
            return e;
    }
}

Expr expand_rec(const Expr& e) {
    if (e.is_number() || e.kind() == Kind::Symbol || e.kind() == Kind::SumRef) return e;
    if (auto p = to_polynomial(e)) return from_polynomial(*p);
    std::vector<Expr> args;
    for (std::size_t i = 0; i < e.args().size(); ++i)
        args.push_back(e.kind() == Kind::Prod && i == 1 ? e.arg(i) : expand_rec(e.arg(i)));
    if (e.kind() == Kind::Mul) {
        std::vector<Expr> acc{Expr(1)};
        for (const auto& f : args) {
            std::vector<Expr> terms = f.kind() == Kind::Add ? f.args() : std::vector<Expr>{f};
            std::vector<Expr> next;
            next.reserve(acc.size() * terms.size());
            for (const auto& a : acc)
                for (const auto& t : terms) next.push_back(mul({a, t}));
            acc = std::move(next);
        }
        return add(std::move(acc));
    }
    if (e.kind() == Kind::Pow) {
        long n = 0;
        if (args[0].kind() == Kind::Add && small_integer(args[1], 64, n) && n > 0) {
            Expr r = args[0];
            for (long i = 1; i < n; ++i) r = expand_rec(mul({r, args[0]}));
            return r;
        }
    }
    return rebuild(e, std::move(args));
}

std::string fresh_index(const std::string& base, const Expr& avoid1, const Expr& avoid2) {
    for (int i = 1;; ++i) {
        std::string c = base + std::to_string(i);
        if (!depends_on(avoid1, c) && !depends_on(avoid2, c)) return c;
    }
}

Expr substitute_rec(const Expr& e, const std::string& target, const Expr& value) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::SumRef:
            return e;
        case Kind::Symbol:
            return e.name() == target ? value : e;
        case Kind::Prod: {
            const std::string& idx = e.arg(1).name();
            Expr lo = substitute_rec(e.arg(2), target, value);
            Expr hi = substitute_rec(e.arg(3), target, value);
            if (idx == target) return prod(e.arg(0), idx, lo, hi);
            Expr body = e.arg(0);
            std::string use = idx;
            if (depends_on(value, idx)) {
                use = fresh_index(idx, value, body);
                body = substitute_rec(body, idx, Expr::symbol(use));
            }
            return prod(substitute_rec(body, target, value), use, lo, hi);
        }
        default: {
            std::vector<Expr> args;
            args.reserve(e.args().size());
            for (const auto& a : e.args()) args.push_back(substitute_rec(a, target, value));
            return rebuild(e, std::move(args));
        }
    }
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case Kind::Symbol:
            out.insert(e.name());
            return;
        case Kind::Prod: {
            std::set<std::string> inner;
            collect_symbols(e.arg(0), inner);
            inner.erase(e.arg(1).name());
            out.insert(inner.begin(), inner.end());
            collect_symbols(e.arg(2), out);
            collect_symbols(e.arg(3), out);
            return;
        }
        default:
            for (const auto& a : e.args()) collect_symbols(a, out);
    }
}

}  // namespace

Expr expand(const Expr& e) { return expand_rec(e); }

Expr substitute(const Expr& e, const Substitution& s) { return substitute(e, s.target, s.value); }

Expr substitute(const Expr& e, const std::string& target, const Expr& value) {
    if (contains_kind(value, Kind::SumRef)) throw Error("substitution value contains a sum reference");
    Expr r = substitute_rec(e, target, value);
    if (is_polynomial_expr(e) && is_polynomial_expr(value)) r = expand(r);
    return r;
}

bool depends_on(const Expr& e, std::string_view var) {
    switch (e.kind()) {
        case Kind::Symbol:
            return e.name() == var;
        case Kind::Number:
        case Kind::SumRef:
            return false;
        case Kind::Prod:
            if (depends_on(e.arg(2), var) || depends_on(e.arg(3), var)) return true;
            return e.arg(1).name() != var && depends_on(e.arg(0), var);
        default:
            return std::any_of(e.args().begin(), e.args().end(), [&](const Expr& a) { return depends_on(a, var); });
    }
}

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    collect_symbols(e, out);
    return out;
}

bool contains_kind(const Expr& e, Kind kind) {
    if (e.kind() == kind) return true;
    return std::any_of(e.args().begin(), e.args().end(), [&](const Expr& a) { return contains_kind(a, kind); });
}

std::optional<Polynomial> to_polynomial(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            return Polynomial(e.value());
        case Kind::Symbol:
            return Polynomial::variable(e.name());
        case Kind::Add: {
            Polynomial r;
            for (const auto& a : e.args()) {
                auto p = to_polynomial(a);
                if (!p) return std::nullopt;
                r += *p;
            }
            return r;
        }
        case Kind::Mul: {
            Polynomial r(1);
            for (const auto& a : e.args()) {
                auto p = to_polynomial(a);
                if (!p) return std::nullopt;
                r *= *p;
            }
            return r;
        }
        case Kind::Pow: {
            long n = 0;
            if (!small_integer(e.arg(1), 1L << 16, n) || n < 0) return std::nullopt;
            auto b = to_polynomial(e.arg(0));
            if (!b) return std::nullopt;
            return pow(*b, static_cast<unsigned>(n));
        }
        default:
            return std::nullopt;
    }
}

std::optional<RationalFunction> to_rational_function(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::Symbol:
            return RationalFunction(*to_polynomial(e));
        case Kind::Add: {
            if (auto p = to_polynomial(e)) return RationalFunction(*p);
            RationalFunction r;
            for (const auto& a : e.args()) {
                auto p = to_rational_function(a);
                if (!p) return std::nullopt;
                r = r + *p;
            }
            return r;
        }
        case Kind::Mul: {
            RationalFunction r(1);
            for (const auto& a : e.args()) {
                auto p = to_rational_function(a);
                if (!p) return std::nullopt;
                r = r * *p;
            }
            return r;
        }
        case Kind::Pow: {
            long n = 0;
            if (!small_integer(e.arg(1), 1L << 16, n)) return std::nullopt;
            auto b = to_rational_function(e.arg(0));
            if (!b) return std::nullopt;
            return pow(*b, static_cast<int>(n));
        }
        default:
            return std::nullopt;
    }
}

Expr from_polynomial(const Polynomial& p) {
    std::vector<Expr> terms;
    const auto& vars = p.variables();
    for (const auto& t : p.terms()) {
        std::vector<Expr> fs{Expr(t.coef)};
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (t.exp[i]) fs.push_back(pow(Expr::symbol(vars[i]), Expr(static_cast<long>(t.exp[i]))));
        terms.push_back(mul(std::move(fs)));
    }
    return add(std::move(terms));
}

Expr from_rational_function(const RationalFunction& f) {
    return mul({from_polynomial(f.num()), pow(from_polynomial(f.den()), Expr(-1))});
}

Expr from_factored(const FactoredRational& f) {
    std::vector<Expr> fs{Expr(f.coefficient())};
    for (const auto& [p, e] : f.factors()) fs.push_back(pow(from_polynomial(p), Expr(static_cast<long>(e))));
    return mul(std::move(fs));
}

Expr from_rational_factored(const RationalFunction& f) {
    if (f.is_zero()) return Expr(0);
    FactoredRational r = factor_polynomial(f.num());
    r *= factor_polynomial(f.den()).inverse();
    return from_factored(r);
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

bool looks_negative(const Expr& e) {
    if (e.is_number()) return e.value() < 0;
    if (e.kind() == Kind::Mul) return e.arg(0).is_number() && e.arg(0).value() < 0;
    if (e.kind() == Kind::Add) return looks_negative(e.arg(0));
    return false;
}

std::string print_atom_base(const Expr& e);
std::string print_product(const Expr& e);

std::string print_exponent(const Expr& e) {
    if (e.kind() == Kind::Symbol || (e.is_integer() && e.value() >= 0)) return print(e);
    return "(" + print(e) + ")";
}

std::string print_power(const Expr& base, const Expr& exponent) {
    if (exponent.is_one()) return print_atom_base(base);
    return print_atom_base(base) + "^" + print_exponent(exponent);
}

// Base of a power or factor of a product.
std::string print_atom_base(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            if (e.value() < 0 || e.value().get_den() != 1) return "(" + print(e) + ")";
            return print(e);
        case Kind::Add:
        case Kind::Mul:
        case Kind::Pow:
            return "(" + print(e) + ")";
        default:
            return print(e);
    }
}

std::string join_factors(const std::vector<std::pair<Expr, Expr>>& fs) {
    std::string s;
    for (const auto& [b, e] : fs) {
        if (!s.empty()) s += "*";
        s += print_power(b, e);
    }
    return s;
}

std::string print_product(const Expr& e) {
    Rational coef = 1;
    std::vector<std::pair<Expr, Expr>> num, den;
    std::vector<Expr> fs = e.kind() == Kind::Mul ? e.args() : std::vector<Expr>{e};
    for (const auto& f : fs) {
        if (f.is_number()) {
            coef *= f.value();
            continue;
        }
        auto [b, x] = split_power(f);
        bool all_negative = x.kind() != Kind::Add ||
                            std::all_of(x.args().begin(), x.args().end(), [](const Expr& t) { return looks_negative(t); });
        if (looks_negative(x) && all_negative) {
            den.emplace_back(b, -x);
        } else {
            num.emplace_back(b, x);
        }
    }
    bool negative = coef < 0;
    if (negative) coef = -coef;
    std::string s = negative ? "-" : "";
    Integer cn = coef.get_num(), cd = coef.get_den();
    std::string ns = join_factors(num);
    if (cn != 1 || ns.empty()) {
        s += cn.get_str();
        if (!ns.empty()) s += "*";
    }
    s += ns;
    if (cd != 1 || !den.empty()) {
        std::string ds;
        std::size_t count = den.size();
        if (cd != 1) {
            ds = cd.get_str();
            ++count;
        }
        std::string df = join_factors(den);
        if (!df.empty()) ds += (ds.empty() ? "" : "*") + df;
        bool simple = count == 1;
        s += simple ? "/" + ds : "/(" + ds + ")";
    }
    return s;
}

std::string print_call(const char* name, const std::vector<Expr>& args) {
    std::string s = std::string(name) + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        // n - k reads as -(k - n) when the leading term is negative
        if (args[i].kind() == Kind::Add && looks_negative(args[i].arg(0))) {
            s += "-(" + print(-args[i]) + ")";
        } else {
            s += print(args[i]);
        }
    }
    return s + ")";
}

}  // namespace

std::string print(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            return e.value().get_str();
        case Kind::Symbol:
            return e.name();
        case Kind::SumRef:
            if (e.shift() == 0) return "sum(" + e.name() + ")";
            return "sum(" + e.name() + (e.shift() < 0 ? " - " : " + ") + std::to_string(std::labs(e.shift())) + ")";
        case Kind::Add: {
            std::string s;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                const Expr& t = e.arg(i);
                if (i == 0) {
                    s += print(t);
                } else if (looks_negative(t)) {
                    s += " - " + print(-t);
                } else {
                    s += " + " + print(t);
                }
            }
            return s;
        }
        case Kind::Mul:
        case Kind::Pow:
            return print_product(e);
        case Kind::Factorial:
            return print_call("factorial", e.args());
        case Kind::Gamma:
            return print_call("gamma", e.args());
        case Kind::Binomial:
            return print_call("binomial", e.args());
        case Kind::Pochhammer:
            return print_call("pochhammer", e.args());
        case Kind::Prod:
            return print_call("prod", e.args());
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_product()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(parse_product());
            } else if (accept('-')) {
                terms.push_back(-parse_product());
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms.front() : add(std::move(terms));
    }

    Expr parse_product() {
        std::vector<Expr> factors{parse_unary()};
        for (;;) {
            if (accept('*')) {
                factors.push_back(parse_unary());
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = parse_unary();
                if (d.is_zero()) throw SyntaxError("division by zero", at);
                factors.push_back(pow(d, Expr(-1)));
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors.front() : mul(std::move(factors));
    }

    Expr parse_unary() {
        if (accept('-')) return -parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) {
            std::size_t at = pos_;
            Expr exponent = parse_unary();
            if (base.is_zero() && exponent.is_number() && exponent.value() < 0)
                throw SyntaxError("zero raised to a negative power", at);
            return pow(base, exponent);
        }
        return base;
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::vector<Expr> call_args() {
        std::vector<Expr> args;
        if (accept(')')) return args;
        do {
            args.push_back(parse_sum());
        } while (accept(','));
        expect(')');
        return args;
    }

    std::string symbol_arg() {
        skip_space();
        std::size_t at = pos_;
        if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            throw SyntaxError("expected a symbol", at);
        return identifier();
    }

    Expr parse_call(const std::string& name, std::size_t at) {
        if (name == "sub") {
            std::string target = symbol_arg();
            expect('=');
            Expr value = parse_sum();
            if (!accept(',')) throw ArityError();
            Expr body = parse_sum();
            if (accept(',')) throw ArityError();
            expect(')');
            return substitute(body, target, value);
        }
        if (name == "prod") {
            Expr body = parse_sum();
            if (!accept(',')) throw ArityError();
            std::string index = symbol_arg();
            std::vector<Expr> bounds;
            while (accept(',')) bounds.push_back(parse_sum());
            expect(')');
            if (bounds.size() != 2) throw ArityError();
            try {
                return prod(body, index, bounds[0], bounds[1]);
            } catch (const SyntaxError&) {
                throw;
            } catch (const Error& e) {
                throw SyntaxError(e.what(), at);
            }
        }
        std::vector<Expr> args = call_args();
        auto need = [&](std::size_t n) {
            if (args.size() != n) throw ArityError();
        };
        if (name == "factorial") {
            need(1);
            return factorial(args[0]);
        }
        if (name == "gamma") {
            need(1);
            return gamma(args[0]);
        }
        if (name == "binomial") {
            need(2);
            return binomial(args[0], args[1]);
        }
        if (name == "pochhammer") {
            need(2);
            return pochhammer(args[0], args[1]);
        }
        if (name == "sum") {
            need(1);
            const Expr& a = args[0];
            if (a.kind() == Kind::Symbol) return Expr::sum_ref(a.name(), 0);
            if (a.kind() == Kind::Add && a.args().size() == 2 && a.arg(0).kind() == Kind::Symbol && a.arg(1).is_integer() &&
                a.arg(1).value().get_num().fits_slong_p())
                return Expr::sum_ref(a.arg(0).name(), a.arg(1).value().get_num().get_si());
            throw SyntaxError("sum reference must be symbol plus integer", at);
        }
        throw SyntaxError("unknown function '" + name + "'", at);
    }

    Expr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '.') fail("floating-point literals are not supported");
            return Expr(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name = identifier();
            if (accept('(')) return parse_call(name, at);
            return Expr::symbol(name);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace hypersum
