#include "hypersum/hyper.hpp"

#include "hypersum/errors.hpp"

namespace hypersum {

namespace {

// Summation index that does not clash with a parameter name.
std::string fresh_index(const HyperSpec& spec, const std::string& n) {
    std::set<std::string> used = free_symbols(spec.x);
    for (const auto* list : {&spec.upper, &spec.lower})
        for (const auto& e : *list)
            for (const auto& s : free_symbols(e)) used.insert(s);
    used.insert(n);
    std::string k = "k";
    while (used.count(k)) k += "_";
    return k;
}

}  // namespace

Expr hyperterm(const HyperSpec& spec, const std::string& k) {
    const Expr K = Expr::symbol(k);
    std::vector<Expr> num, den{factorial(K)};
    for (const auto& a : spec.upper) num.push_back(pochhammer(a, K));
    for (const auto& b : spec.lower) den.push_back(pochhammer(b, K));
    num.push_back(pow(spec.x, K));
    return mul(std::move(num)) / mul(std::move(den));
}

ZeilbergerResult hyperrecursion(const HyperSpec& spec, const std::string& n, const ZeilbergerOptions& options,
                                Trace* trace) {
    if (depends_on(spec.x, n)) throw ZeilbergerNotApplicable();
    for (const auto& b : spec.lower)
        if (b.is_integer() && b.value() <= 0) throw ZeilbergerNotApplicable();
    const std::string k = fresh_index(spec, n);
    return sumrecursion(hyperterm(spec, k), k, n, options, trace);
}

}  // namespace hypersum
