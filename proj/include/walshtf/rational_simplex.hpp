#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "walshtf/errors.hpp"

namespace walshtf {

// Minimize c.x subject to A x = b and x >= 0, over exact rationals.
struct LinearProgram {
    std::vector<std::vector<mpq_class>> a;
    std::vector<mpq_class> b;
    std::vector<mpq_class> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    mpq_class objective;
    std::vector<mpq_class> x;
};

namespace lp_detail {

inline void pivot(std::vector<std::vector<mpq_class>>& rows,
                  std::vector<std::size_t>& basis, std::size_t r,
                  std::size_t col) {
    mpq_class lead = rows[r][col];
    for (auto& v : rows[r]) v /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][col] == 0) continue;
        mpq_class f = rows[i][col];
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            rows[i][j] -= f * rows[r][j];
    }
    basis[r] = col;
}

/*
 * One simplex phase on the tableau rows = B^{-1}[A | b] with Bland's
 * anti-cycling rule: enter the lowest-index column with negative reduced
 * cost, leave on the minimum ratio breaking ties by lowest basic index.
 * Exact arithmetic makes the zero tests in both rules unambiguous.
 * Returns false when an improving column has no positive entry, i.e. the
 * program is unbounded below.
 */
inline bool run_phase(std::vector<std::vector<mpq_class>>& rows,
                      std::vector<std::size_t>& basis,
                      const std::vector<mpq_class>& cost) {
    const std::size_t m = rows.size();
    const std::size_t n = cost.size();
    for (;;) {
        std::size_t enter = n;
        for (std::size_t j = 0; j < n && enter == n; ++j) {
            mpq_class reduced = cost[j];
            for (std::size_t i = 0; i < m; ++i)
                if (cost[basis[i]] != 0 && rows[i][j] != 0)
                    reduced -= cost[basis[i]] * rows[i][j];
            if (reduced < 0) enter = j;
        }
        if (enter == n) return true;
        std::size_t leave = m;
        mpq_class best;
        for (std::size_t i = 0; i < m; ++i) {
            if (rows[i][enter] <= 0) continue;
            mpq_class ratio = rows[i].back() / rows[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) return false;
        pivot(rows, basis, leave, enter);
    }
}

}  // namespace lp_detail

inline LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t m = lp.a.size();
    const std::size_t n = lp.c.size();
    for (const auto& row : lp.a)
        if (row.size() != n)
            throw PreconditionViolated("linear program row width mismatch");
    if (lp.b.size() != m)
        throw PreconditionViolated("linear program rhs size mismatch");

    // Phase 1: append one artificial per row, flip rows with negative rhs.
    std::vector<std::vector<mpq_class>> rows(m);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        rows[i].resize(n + m + 1);
        bool neg = lp.b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            rows[i][j] = neg ? mpq_class(-lp.a[i][j]) : lp.a[i][j];
        rows[i][n + i] = 1;
        rows[i].back() = neg ? mpq_class(-lp.b[i]) : lp.b[i];
        basis[i] = n + i;
    }
    std::vector<mpq_class> phase1(n + m);
    for (std::size_t j = 0; j < m; ++j) phase1[n + j] = 1;
    if (!lp_detail::run_phase(rows, basis, phase1))
        throw Error("phase-1 program cannot be unbounded");
    LpResult out;
    mpq_class infeasibility;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) infeasibility += rows[i].back();
    if (infeasibility != 0) {
        out.status = LpStatus::infeasible;
        return out;
    }

    // Remaining basic artificials sit at level zero: pivot them onto any
    // structural column, or drop the row as redundant.
    for (std::size_t i = 0; i < rows.size();) {
        if (basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n && col == n; ++j)
            if (rows[i][j] != 0) col = j;
        if (col == n) {
            rows.erase(rows.begin() + i);
            basis.erase(basis.begin() + i);
        } else {
            lp_detail::pivot(rows, basis, i, col);
            ++i;
        }
    }
    for (auto& row : rows) row.erase(row.begin() + n, row.end() - 1);

    if (!lp_detail::run_phase(rows, basis, lp.c)) {
        out.status = LpStatus::unbounded;
        return out;
    }
    out.status = LpStatus::optimal;
    out.x.assign(n, mpq_class());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.x[basis[i]] = rows[i].back();
    for (std::size_t j = 0; j < n; ++j)
        if (out.x[j] != 0) out.objective += lp.c[j] * out.x[j];
    return out;
}

}  // namespace walshtf
