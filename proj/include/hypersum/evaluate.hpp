#pragma once

#include "hypersum/expr.hpp"

#include <map>
#include <string>

namespace hypersum {

using Assignment = std::map<std::string, Rational>;

/// Exact value c * prod Gamma(x)^e with 0 < x < 1 for the symbolic factors.
struct Limit {
    Rational coefficient;
    std::map<Rational, int> gammas;

    bool is_rational() const { return gammas.empty(); }
    Expr to_expr() const;
};

/// Value of e at var = at, read as the limit var -> at of the Gamma function
/// continuation: factorials, binomials and Pochhammer symbols whose arguments move
/// with var become Gamma quotients, so 0 * Gamma(-1) style products resolve to their
/// limits. All other symbols must be assigned. An empty var evaluates without any
/// perturbation. Throws PoleAtPoint when the limit is infinite or not decidable.
Limit evaluate_limit(const Expr& e, const std::string& var, const Rational& at, const Assignment& values = {});

/// evaluate_limit for results without Gamma factors; throws Error otherwise.
Rational evaluate_rational(const Expr& e, const std::string& var, const Rational& at, const Assignment& values = {});

}  // namespace hypersum
