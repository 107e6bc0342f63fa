#pragma once

#include "hypersum/evaluate.hpp"
#include "hypersum/zeilberger.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypersum {

enum class Verdict { Pass, Fail, SkippedPole };

struct Evidence {
    Assignment instantiation;
    Expr lhs;
    Expr rhs;
};

/// Fail carries at least one counterexample.
struct CheckReport {
    Verdict verdict = Verdict::Pass;
    std::vector<Evidence> evidence;
    std::uint64_t seed = 0;
    std::string method;  // "symbolic", "numeric" or "certificate"
};

std::string verdict_name(Verdict v);

enum class Accumulation { LeftFold, Pairwise };

/// Exact sum of F for var = lo..hi. Terms are limits in var (see evaluate_limit) when F
/// has no other symbols; otherwise var is substituted and the terms are added as
/// expressions. Throws PoleAtPoint when a term is undefined.
Expr finite_sum(const Expr& F, const std::string& var, long lo, long hi, Accumulation order = Accumulation::LeftFold);

/// Checks g_k - g_{k-1} = a_k (down) or g_{k+1} - g_k = a_k (up): symbolically when
/// the ratio of both sides reduces to a rational function, else at 20 random points.
CheckReport check_antidifference(const Expr& g, const Expr& a, const std::string& var,
                                 Direction direction = Direction::Down, std::uint64_t seed = 20240611);

/// Compares a and b at 20 random instantiations of their symbols (integers in [-5, 20]
/// for var, [2, 9] for the rest). Points where either side has a pole are skipped.
CheckReport check_equal(const Expr& a, const Expr& b, const std::string& var, std::uint64_t seed = 20240611);

struct RecurrenceCheckOptions {
    int trials = 3;      // parameter instantiations
    int window = 7;      // consecutive values of the recurrence variable per trial
    long support = 200;  // summation index scanned over [-support, support]
    std::uint64_t seed = 20240611;
};

/// Verifies sum_j c_j(n) s(n -+ j) = 0 with s(n) = sum_k F(n, k) computed by brute
/// force over the natural support, for random integer instantiations of the other
/// parameters. Throws UnboundedSupport when no instantiation has a bracketed support.
CheckReport check_recurrence(const Recurrence& rec, const Expr& F, const std::string& k,
                             const RecurrenceCheckOptions& options = {});

/// Checks the creative telescoping identity sum_j sigma_j F(n-j,k) = G(n,k) - G(n,k-1)
/// as a rational function identity after division by F(n, k).
CheckReport check_certificate(const ZeilbergerResult& z, const Expr& F, const std::string& k, const std::string& n);

}  // namespace hypersum
