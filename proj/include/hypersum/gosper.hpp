#pragma once

#include "hypersum/hypergeometric.hpp"
#include "hypersum/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypersum {

/// a_k/a_{k-1} = (p(k)/p(k-1)) * (q(k)/r(k)) with gcd(q(k), r(k+j)) = 1 for j >= 0.
struct GosperForm {
    Polynomial p{1};
    Polynomial q{1};
    Polynomial r{1};
    std::optional<RationalFunction> f;  // solution of p(k) = q(k+1) f(k) - r(k) f(k-1)
};

GosperForm gpp_decompose(const FactoredRational& ratio, const std::string& var);
GosperForm gpp_decompose(const RationalFunction& ratio, const std::string& var);

/// Bound on deg f, computed from p, q, r and the degree of p (which may
/// exceed form.p's when p carries unknown parameters). Nothing when negative.
std::optional<int> degree_bound(const GosperForm& form, const std::string& var, int p_degree = -1);

/// Polynomial f of degree <= bound solving the Gosper equation, if any.
std::optional<RationalFunction> solve_f(const GosperForm& form, const std::string& var, int bound);

/// Result of Gosper's equation with p = (sum_j sigma_j * parts[j]) * base_p.
struct ParametrizedSolution {
    GosperForm form;  // p is the sigma-free factor p'
    RationalFunction combined_p;  // (sum_j sigma_j parts[j]) * p'
    std::vector<RationalFunction> sigma;  // sigma_0 = 1 whenever possible
    RationalFunction f;
    int degree_bound = 0;
};

/// Finds sigma (not all zero) and polynomial f with
/// (sum_j sigma_j parts[j](k)) * p'(k) = q(k+1) f(k) - r(k) f(k-1),
/// where (p', q, r) is the decomposition of ratio. Nothing if none exists.
std::optional<ParametrizedSolution> parametrized_gosper(const FactoredRational& ratio, const std::vector<Polynomial>& parts,
                                                        const std::string& var, Trace* trace = nullptr,
                                                        const char* sigma_name = nullptr);

struct Antidifference {
    Expr g;
    Direction direction = Direction::Down;
    GosperForm certificate;  // with respect to the down ratio
    TermRatio ratio;
    int degree_bound = 0;
};

/// Hypergeometric g with g_k - g_{k-1} = a_k (down) or g_{k+1} - g_k = a_k (up).
/// Throws GosperNotApplicable or NoClosedForm.
Antidifference gosper(const Expr& a, const std::string& var, Direction direction = Direction::Down,
                      Trace* trace = nullptr);

/// sum_{var=lo}^{hi} a as g(hi) - g(lo - 1). Throws PoleInRange for numeric bounds
/// when q(k+1) f(k)/p(k) has a pole in [lo - 1, hi].
Expr gosper_definite(const Expr& a, const std::string& var, const Expr& lo, const Expr& hi, Trace* trace = nullptr);

}  // namespace hypersum
