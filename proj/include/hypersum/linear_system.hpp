#pragma once

#include "hypersum/rational_function.hpp"

#include <optional>
#include <vector>

namespace hypersum {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Reduced row echelon form computed without fractions.
///
/// Every pivot entry equals `pivot`, the last pivot used, so a row reads
/// pivot * x[pivot_col[i]] + sum over free columns f of rows[i][f] * x[f] = 0.
struct EchelonForm {
    PolyMatrix rows;             // nonzero rows only
    std::vector<int> pivot_col;  // one per row
    Polynomial pivot{1};
    std::size_t columns = 0;

    bool is_pivot(int column) const;
    /// Nullspace vector with x[free_col] = pivot and other free variables 0.
    std::vector<Polynomial> kernel_vector(int free_col) const;
};

EchelonForm row_reduce(PolyMatrix m, std::size_t columns);

/// One solution of A x = b with free variables set to zero, or nullopt when
/// the system is inconsistent.
std::optional<std::vector<RationalFunction>> solve_linear_system(const std::vector<std::vector<RationalFunction>>& a,
                                                                 const std::vector<RationalFunction>& b);

}  // namespace hypersum
