#pragma once

#include "hypersum/gosper.hpp"
#include "hypersum/recurrence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypersum {

/// sum_j sigma_j(n) F(n - j, k) = G(n, k) - G(n, k - 1) with G = certificate * F(n, k).
struct ZeilbergerCertificate {
    int order = 0;
    std::vector<RationalFunction> sigma;  // sigma_0 = 1 whenever possible
    GosperForm form;                      // final Gosper representation, f included; p is sigma free
    RationalFunction p;                   // (sum_j sigma_j parts_j) * form.p, the p of the final equation
    RationalFunction certificate;         // G(n, k) / F(n, k)
};

struct ZeilbergerResult {
    Recurrence recurrence;
    ZeilbergerCertificate certificate;
    TermRatio ratio_n;  // F(n,k)/F(n-1,k)
    TermRatio ratio_k;  // F(n,k)/F(n,k-1)
};

struct ZeilbergerOptions {
    std::optional<int> fixed_order;
    int max_order = 5;
    Direction direction = Direction::Down;
};

/// Recurrence in n for sum over k of F(n, k).
/// Throws ZeilbergerNotApplicable or OrderExceeded.
ZeilbergerResult sumrecursion(const Expr& F, const std::string& k, const std::string& n,
                              const ZeilbergerOptions& options = {}, Trace* trace = nullptr);

/// s0 * prod_{m=1}^{n} (-c1(m)/c0(m)) for a first order recurrence, written with
/// Pochhammer symbols and powers where the coefficients split into linear factors.
Expr first_order_closed_form(const Recurrence& rec, const Expr& s0);

}  // namespace hypersum
