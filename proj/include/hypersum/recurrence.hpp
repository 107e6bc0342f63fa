#pragma once

#include "hypersum/expr.hpp"
#include "hypersum/hypergeometric.hpp"

#include <string>
#include <vector>

namespace hypersum {

/// Linear recurrence sum_j c_j(n) * s(n -+ j) = 0 with polynomial coefficients.
///
/// Down: coefficients[j] multiplies sum(n - j). Up: coefficients[j] multiplies sum(n + j).
struct Recurrence {
    std::string var;
    Direction direction = Direction::Down;
    std::vector<Polynomial> coefficients;

    int order() const { return static_cast<int>(coefficients.size()) - 1; }
    /// Shift of the sum term multiplied by coefficients[j].
    long shift_of(std::size_t j) const { return direction == Direction::Down ? -static_cast<long>(j) : static_cast<long>(j); }

    /// Removes content and common polynomial factors; the coefficient of the
    /// term farthest from sum(n) gets a positive leading coefficient.
    void normalize();
    /// Expression with sum(n + j) references; coefficients factored when requested.
    Expr to_expr(bool factor = true) const;
};

/// Shifts the recurrence so that it reads in the given direction.
Recurrence to_direction(const Recurrence& rec, Direction direction);

/// Equal after alignment to the down direction and normalization.
bool recurrences_equal(const Recurrence& a, const Recurrence& b);

/// Reads an expression linear in sum(n + j) references (e.g. "2*sum(n-1) - sum(n)").
Recurrence recurrence_from_expr(const Expr& e, const std::string& var);

}  // namespace hypersum
