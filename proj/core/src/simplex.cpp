#include "genus_atsp/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "genus_atsp/errors.hpp"

namespace genus_atsp {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
    int m;                                   // rows
    int n_total;                             // structurals + artificials
    int n_struct;
    std::vector<std::vector<double>> a;      // dense columns [n_total][m]
    std::vector<double> b;
    std::vector<std::vector<double>> binv;   // dense m x m
    std::vector<double> xb;                  // basic values
    std::vector<int> basis;                  // row -> variable
    std::vector<char> in_basis;

    void refactor() {
        // Gauss-Jordan inversion of the basis matrix.
        std::vector<std::vector<double>> mat(m, std::vector<double>(2 * m, 0.0));
        for (int i = 0; i < m; ++i) {
            for (int r = 0; r < m; ++r) mat[r][i] = a[basis[i]][r];
            mat[i][m + i] = 1.0;
        }
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
            require(std::abs(mat[piv][col]) > 1e-12, ErrorCode::Internal,
                    "singular basis during refactorization");
            std::swap(mat[col], mat[piv]);
            const double d = mat[col][col];
            for (int c = col; c < 2 * m; ++c) mat[col][c] /= d;
            for (int r = 0; r < m; ++r) {
                if (r == col) continue;
                const double f = mat[r][col];
                if (f == 0.0) continue;
                for (int c = col; c < 2 * m; ++c) mat[r][c] -= f * mat[col][c];
            }
        }
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) binv[r][c] = mat[r][m + c];
        for (int r = 0; r < m; ++r) {
            double v = 0.0;
            for (int c = 0; c < m; ++c) v += binv[r][c] * b[c];
            xb[r] = std::max(v, 0.0);
        }
    }
};

// Runs Bland-rule pivots for one phase. allow_var(j) filters candidates.
// Returns Optimal / Unbounded / IterationLimit.
template <typename Allow>
LpStatus run_phase(Tableau& t, const std::vector<double>& cost, Allow allow_var,
                   int pivot_limit, int& pivots) {
    const int m = t.m;
    std::vector<double> y(m), w(m);
    int since_refactor = 0;

    while (true) {
        if (pivots >= pivot_limit) return LpStatus::IterationLimit;

        // Duals y = c_B B^-1.
        for (int c = 0; c < m; ++c) {
            double v = 0.0;
            for (int r = 0; r < m; ++r) {
                const double cb = cost[t.basis[r]];
                if (cb != 0.0) v += cb * t.binv[r][c];
            }
            y[c] = v;
        }

        // Bland entering rule: smallest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < t.n_total; ++j) {
            if (t.in_basis[j] || !allow_var(j)) continue;
            double d = cost[j];
            const auto& col = t.a[j];
            for (int r = 0; r < m; ++r)
                if (col[r] != 0.0) d -= y[r] * col[r];
            if (d < -kReducedCostTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return LpStatus::Optimal;

        for (int r = 0; r < m; ++r) {
            double v = 0.0;
            const auto& col = t.a[enter];
            for (int c = 0; c < m; ++c)
                if (col[c] != 0.0) v += t.binv[r][c] * col[c];
            w[r] = v;
        }

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < m; ++r) {
            if (w[r] <= kPivotTol) continue;
            const double ratio = t.xb[r] / w[r];
            if (leave < 0 || ratio < best_ratio - kPivotTol ||
                (std::abs(ratio - best_ratio) <= kPivotTol &&
                 t.basis[r] < t.basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return LpStatus::Unbounded;

        // Pivot: update B^-1 and the basic solution.
        const double piv = w[leave];
        for (int c = 0; c < m; ++c) t.binv[leave][c] /= piv;
        t.xb[leave] /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == leave || w[r] == 0.0) continue;
            const double f = w[r];
            for (int c = 0; c < m; ++c) t.binv[r][c] -= f * t.binv[leave][c];
            t.xb[r] -= f * t.xb[leave];
            if (t.xb[r] < 0.0 && t.xb[r] > -kFeasTol) t.xb[r] = 0.0;
        }
        t.in_basis[t.basis[leave]] = 0;
        t.in_basis[enter] = 1;
        t.basis[leave] = enter;
        ++pivots;
        if (++since_refactor >= 128) {
            t.refactor();
            since_refactor = 0;
        }
    }
}

}  // namespace

LpResult DenseSimplex::solve(int rows, const std::vector<LpColumn>& columns,
                             const std::vector<double>& cost,
                             const std::vector<double>& rhs) {
    const int m = rows;
    const int n = static_cast<int>(columns.size());
    require(static_cast<int>(cost.size()) == n && static_cast<int>(rhs.size()) == m,
            ErrorCode::Internal, "inconsistent LP dimensions");

    Tableau t;
    t.m = m;
    t.n_struct = n;
    t.n_total = n + m;
    t.a.assign(t.n_total, std::vector<double>(m, 0.0));
    t.b = rhs;

    std::vector<int> row_sign(m, 1);
    for (int r = 0; r < m; ++r)
        if (t.b[r] < 0.0) {
            row_sign[r] = -1;
            t.b[r] = -t.b[r];
        }
    for (int j = 0; j < n; ++j)
        for (const auto& [r, v] : columns[j].entries)
            t.a[j][r] += row_sign[r] * v;
    for (int r = 0; r < m; ++r) t.a[n + r][r] = 1.0;  // artificials

    t.basis.resize(m);
    t.in_basis.assign(t.n_total, 0);
    for (int r = 0; r < m; ++r) {
        t.basis[r] = n + r;
        t.in_basis[n + r] = 1;
    }
    t.binv.assign(m, std::vector<double>(m, 0.0));
    for (int r = 0; r < m; ++r) t.binv[r][r] = 1.0;
    t.xb = t.b;

    LpResult result;
    int pivots = 0;

    std::vector<double> phase1_cost(t.n_total, 0.0);
    for (int r = 0; r < m; ++r) phase1_cost[n + r] = 1.0;
    LpStatus st = run_phase(
        t, phase1_cost, [](int) { return true; }, pivot_limit_, pivots);
    if (st != LpStatus::Optimal) {
        result.status = st;
        result.pivots = pivots;
        return result;
    }
    double infeas = 0.0;
    for (int r = 0; r < m; ++r)
        if (t.basis[r] >= n) infeas += t.xb[r];
    if (infeas > kFeasTol) {
        result.status = LpStatus::Infeasible;
        result.pivots = pivots;
        return result;
    }

    std::vector<double> phase2_cost(t.n_total, 0.0);
    for (int j = 0; j < n; ++j) phase2_cost[j] = cost[j];
    st = run_phase(
        t, phase2_cost, [n](int j) { return j < n; }, pivot_limit_, pivots);

    result.status = st;
    result.pivots = pivots;
    if (st == LpStatus::Optimal) {
        result.x.assign(n, 0.0);
        for (int r = 0; r < m; ++r)
            if (t.basis[r] < n) result.x[t.basis[r]] = std::max(t.xb[r], 0.0);
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += cost[j] * result.x[j];
        result.objective = obj;
    }
    return result;
}

std::unique_ptr<LpBackend> make_default_lp_backend() {
    return std::make_unique<DenseSimplex>();
}

}  // namespace genus_atsp
