#ifndef NOVCONF_LINSOLVE_HPP
#define NOVCONF_LINSOLVE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "novconf/rational.hpp"

namespace novconf {

// Sparse linear system over the rationals. Rows store no zero entries.
struct LinearSystem {
    int ncols = 0;
    std::vector<std::map<int, Rational>> rows;
    std::vector<Rational> rhs;

    void add_row(std::map<int, Rational> row, Rational b)
    {
        for (auto it = row.begin(); it != row.end();) {
            if (it->second == 0)
                it = row.erase(it);
            else
                ++it;
        }
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
};

// Exact Gaussian elimination. Pivot column is the active column of smallest
// support, ties broken by lowest column index; pivot row is the shortest row
// in that column, ties by lowest row index. Deterministic by construction.
// Returns one solution (free variables pinned to zero), or nullopt when the
// system is inconsistent.
inline std::optional<std::vector<Rational>> solve(const LinearSystem& sys)
{
    const int ncols = sys.ncols;
    std::vector<std::map<int, Rational>> rows = sys.rows;
    std::vector<Rational> rhs = sys.rhs;
    const int nrows = static_cast<int>(rows.size());

    std::vector<char> is_pivot_row(nrows, 0);
    // col -> rows (non-pivot) currently containing it
    std::map<int, std::set<int>> col_rows;
    for (int i = 0; i < nrows; ++i)
        for (const auto& [c, v] : rows[i])
            col_rows[c].insert(i);

    std::vector<std::pair<int, int>> pivots; // (row, col) in elimination order

    while (!col_rows.empty()) {
        // smallest support, then lowest column index (map order gives the tie-break)
        int pcol = -1;
        size_t best = 0;
        for (const auto& [c, rs] : col_rows) {
            if (pcol < 0 || rs.size() < best) {
                pcol = c;
                best = rs.size();
            }
        }
        const std::set<int>& candidates = col_rows[pcol];
        int prow = -1;
        size_t rbest = 0;
        for (int r : candidates) {
            if (prow < 0 || rows[r].size() < rbest) {
                prow = r;
                rbest = rows[r].size();
            }
        }

        const Rational pv = rows[prow].at(pcol);
        std::vector<int> touched(candidates.begin(), candidates.end());
        for (int r : touched) {
            if (r == prow)
                continue;
            Rational factor = rows[r].at(pcol) / pv;
            for (const auto& [c, v] : rows[prow]) {
                auto it = rows[r].find(c);
                Rational nv = (it == rows[r].end() ? Rational(0) : it->second) - factor * v;
                if (nv == 0) {
                    if (it != rows[r].end()) {
                        rows[r].erase(it);
                        col_rows[c].erase(r);
                        if (col_rows[c].empty())
                            col_rows.erase(c);
                    }
                } else {
                    if (it == rows[r].end())
                        col_rows[c].insert(r);
                    rows[r][c] = std::move(nv);
                }
            }
            rhs[r] -= factor * rhs[prow];
        }
        // retire the pivot row from the active pool
        for (const auto& [c, v] : rows[prow]) {
            auto it = col_rows.find(c);
            if (it != col_rows.end()) {
                it->second.erase(prow);
                if (it->second.empty())
                    col_rows.erase(it);
            }
        }
        is_pivot_row[prow] = 1;
        pivots.emplace_back(prow, pcol);
    }

    for (int i = 0; i < nrows; ++i)
        if (!is_pivot_row[i] && rhs[i] != 0)
            return std::nullopt; // 0 = nonzero

    std::vector<Rational> x(ncols, Rational(0));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [r, c] = *it;
        Rational acc = rhs[r];
        for (const auto& [cc, v] : rows[r])
            if (cc != c)
                acc -= v * x[cc];
        x[c] = acc / rows[r].at(c);
    }
    return x;
}

} // namespace novconf

#endif
