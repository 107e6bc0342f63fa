#include "hypersum/linear_system.hpp"

#include <algorithm>

namespace hypersum {

bool EchelonForm::is_pivot(int column) const {
    return std::find(pivot_col.begin(), pivot_col.end(), column) != pivot_col.end();
}

std::vector<Polynomial> EchelonForm::kernel_vector(int free_col) const {
    std::vector<Polynomial> x(columns);
    x[free_col] = pivot;
    for (std::size_t i = 0; i < rows.size(); ++i) x[pivot_col[i]] = -rows[i][free_col];
    return x;
}

EchelonForm row_reduce(PolyMatrix m, std::size_t columns) {
    EchelonForm out;
    out.columns = columns;
    m.erase(std::remove_if(m.begin(), m.end(),
                           [](const std::vector<Polynomial>& row) {
                               return std::all_of(row.begin(), row.end(), [](const Polynomial& p) { return p.is_zero(); });
                           }),
            m.end());
    std::size_t rank = 0;
    Polynomial prev(1);
    for (std::size_t c = 0; c < columns && rank < m.size(); ++c) {
        // Sparsest available pivot keeps intermediate expressions small.
        std::size_t best = m.size();
        for (std::size_t i = rank; i < m.size(); ++i) {
            if (m[i][c].is_zero()) continue;
            if (best == m.size() || m[i][c].size() < m[best][c].size()) best = i;
        }
        if (best == m.size()) continue;
        std::swap(m[rank], m[best]);
        const std::vector<Polynomial> prow = m[rank];
        const Polynomial& pk = prow[c];
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank) continue;
            auto& row = m[i];
            Polynomial aic = row[c];
            for (std::size_t j = 0; j < columns; ++j) {
                if (j == c) continue;
                if (aic.is_zero()) {
                    if (!row[j].is_zero()) row[j] = (row[j] * pk).exact_div(prev);
                } else {
                    Polynomial v = row[j] * pk - aic * prow[j];
                    row[j] = v.is_zero() ? Polynomial() : v.exact_div(prev);
                }
            }
            row[c] = Polynomial();
        }
        out.pivot_col.push_back(static_cast<int>(c));
        prev = pk;
        ++rank;
    }
    m.resize(rank);
    out.rows = std::move(m);
    out.pivot = prev;
    return out;
}

std::optional<std::vector<RationalFunction>> solve_linear_system(const std::vector<std::vector<RationalFunction>>& a,
                                                                 const std::vector<RationalFunction>& b) {
    std::size_t n = a.empty() ? 0 : a.front().size();
    PolyMatrix m;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Polynomial l(1);
        auto merge = [&l](const RationalFunction& e) {
            if (!e.is_polynomial()) l = l * e.den().exact_div(gcd(l, e.den()));
        };
        for (const auto& e : a[i]) merge(e);
        merge(b[i]);
        std::vector<Polynomial> row;
        row.reserve(n + 1);
        auto scaled = [&l](const RationalFunction& e) { return (e.num() * l).exact_div(e.den()); };
        for (const auto& e : a[i]) row.push_back(scaled(e));
        row.push_back(scaled(b[i]));
        m.push_back(std::move(row));
    }
    EchelonForm ef = row_reduce(std::move(m), n + 1);
    if (ef.is_pivot(static_cast<int>(n))) return std::nullopt;
    std::vector<RationalFunction> x(n);
    for (std::size_t i = 0; i < ef.rows.size(); ++i)
        x[ef.pivot_col[i]] = RationalFunction(ef.rows[i][n], ef.pivot);
    return x;
}

}  // namespace hypersum
