#pragma once

#include "hypersum/zeilberger.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypersum {

/// Parameters of pFq(upper; lower | x). Either list may be empty.
struct HyperSpec {
    std::vector<Expr> upper;
    std::vector<Expr> lower;
    Expr x;
};

/// prod (a_i)_k / (prod (b_j)_k * k!) * x^k
Expr hyperterm(const HyperSpec& spec, const std::string& k);

/// Recurrence in n for sum_k hyperterm(spec, k). Rejects a lower parameter that is
/// a nonpositive integer and an argument x that depends on n (ZeilbergerNotApplicable).
ZeilbergerResult hyperrecursion(const HyperSpec& spec, const std::string& n, const ZeilbergerOptions& options = {},
                                Trace* trace = nullptr);

}  // namespace hypersum
