#include "dimer/lp.hpp"

#include "dimer/errors.hpp"

namespace dimer {

namespace {

struct Tableau {
    // rows[i] has `cols` coefficients followed by the right-hand side.
    std::vector<std::vector<mpq_class>> rows;
    std::vector<int> basis;
    int cols = 0;

    void pivot(int r, int c) {
        mpq_class p = rows[r][c];
        for (auto& v : rows[r]) v /= p;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            mpq_class f = rows[i][c];
            for (int j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Maximizes cost over the columns allowed; returns false when unbounded.
    bool optimize(const std::vector<mpq_class>& cost, const std::vector<char>& allowed) {
        const int m = static_cast<int>(rows.size());
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (!allowed[j]) continue;
                bool basic = false;
                for (int b : basis) basic |= b == j;
                if (basic) continue;
                mpq_class reduced = cost[j];
                for (int i = 0; i < m; ++i) reduced -= cost[basis[i]] * rows[i][j];
                if (reduced > 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            mpq_class best;
            for (int i = 0; i < m; ++i) {
                if (rows[i][enter] <= 0) continue;
                mpq_class ratio = rows[i][cols] / rows[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
    const int m = static_cast<int>(lp.a.size());
    const int n = static_cast<int>(lp.c.size());
    if (static_cast<int>(lp.b.size()) != m) throw UsageError("linear program: row count mismatch");
    for (const auto& row : lp.a)
        if (static_cast<int>(row.size()) != n) throw UsageError("linear program: column count mismatch");

    Tableau t;
    t.cols = n + m;
    t.rows.assign(m, std::vector<mpq_class>(n + m + 1));
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const bool neg = lp.b[i] < 0;
        for (int j = 0; j < n; ++j) t.rows[i][j] = neg ? -lp.a[i][j] : lp.a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][n + m] = neg ? -lp.b[i] : lp.b[i];
        t.basis[i] = n + i;
    }

    std::vector<mpq_class> phase1(n + m);
    for (int i = 0; i < m; ++i) phase1[n + i] = -1;
    std::vector<char> all(n + m, 1);
    t.optimize(phase1, all);
    mpq_class infeas = 0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= n) infeas += t.rows[i][n + m];
    LpResult res;
    if (infeas != 0) {
        res.status = LpStatus::infeasible;
        return res;
    }

    // Drive artificial variables out of the basis, dropping redundant rows.
    for (int i = 0; i < static_cast<int>(t.rows.size());) {
        if (t.basis[i] < n) { ++i; continue; }
        int c = -1;
        for (int j = 0; j < n && c < 0; ++j)
            if (t.rows[i][j] != 0) c = j;
        if (c >= 0) {
            t.pivot(i, c);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
        }
    }

    std::vector<mpq_class> cost(n + m);
    for (int j = 0; j < n; ++j) cost[j] = lp.c[j];
    std::vector<char> original(n + m, 0);
    for (int j = 0; j < n; ++j) original[j] = 1;
    if (!t.optimize(cost, original)) {
        res.status = LpStatus::unbounded;
        return res;
    }
    res.status = LpStatus::optimal;
    res.x.assign(n, 0);
    for (int i = 0; i < static_cast<int>(t.rows.size()); ++i) res.x[t.basis[i]] = t.rows[i][n + m];
    res.value = 0;
    for (int j = 0; j < n; ++j) res.value += lp.c[j] * res.x[j];
    return res;
}

}  // namespace dimer
