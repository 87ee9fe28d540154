#include "horokit/lp.hpp"

namespace horokit {

namespace {

// Dense tableau over y >= 0 for  M y = h.
struct Tableau {
    QMat T;  // rows x (cols + 1), last column is rhs
    std::vector<int> basis;
    size_t cols = 0;

    void pivot(size_t r, size_t c)
    {
        Q inv = 1 / T[r][c];
        for (auto& x : T[r]) x *= inv;
        for (size_t i = 0; i < T.size(); ++i) {
            if (i == r || T[i][c] == 0) continue;
            Q f = T[i][c];
            for (size_t j = 0; j <= cols; ++j)
                if (T[r][j] != 0) T[i][j] -= f * T[r][j];
        }
        basis[r] = int(c);
    }

    // maximize cost.y over allowed columns; false if unbounded
    bool run(const QVec& cost, const std::vector<bool>& allowed)
    {
        while (true) {
            int enter = -1;
            for (size_t j = 0; j < cols && enter < 0; ++j) {
                if (!allowed[j]) continue;
                Q rc = cost[j];
                for (size_t i = 0; i < T.size(); ++i)
                    if (T[i][j] != 0) rc -= cost[basis[i]] * T[i][j];
                if (rc > 0) enter = int(j);
            }
            if (enter < 0) return true;
            int leave = -1;
            Q best;
            for (size_t i = 0; i < T.size(); ++i) {
                if (T[i][enter] <= 0) continue;
                Q ratio = T[i][cols] / T[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = int(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(size_t(leave), size_t(enter));
        }
    }
};

}  // namespace

LPResult lp_maximize(const QVec& c, const QMat& A, const QVec& b, const QMat& E, const QVec& f)
{
    size_t d = c.size();
    size_t mi = A.size(), me = E.size();
    size_t m = mi + me;
    // columns: x+ (d), x- (d), slacks (mi), artificials (m)
    size_t nreal = 2 * d + mi;
    Tableau tb;
    tb.cols = nreal + m;
    tb.T.assign(m, QVec(tb.cols + 1, Q(0)));
    tb.basis.assign(m, 0);
    for (size_t i = 0; i < m; ++i) {
        const QVec& row = i < mi ? A[i] : E[i - mi];
        Q rhs = i < mi ? b[i] : f[i - mi];
        int sgn = rhs < 0 ? -1 : 1;
        for (size_t j = 0; j < d; ++j) {
            tb.T[i][j] = sgn * row[j];
            tb.T[i][d + j] = -sgn * row[j];
        }
        if (i < mi) tb.T[i][2 * d + i] = -sgn;
        tb.T[i][nreal + i] = 1;
        tb.T[i][tb.cols] = sgn * rhs;
        tb.basis[i] = int(nreal + i);
    }

    QVec cost1 = zeros(tb.cols);
    for (size_t i = 0; i < m; ++i) cost1[nreal + i] = -1;
    std::vector<bool> all(tb.cols, true);
    tb.run(cost1, all);

    LPResult res;
    for (size_t i = 0; i < m; ++i)
        if (size_t(tb.basis[i]) >= nreal && tb.T[i][tb.cols] != 0) {
            res.status = LPStatus::Infeasible;
            return res;
        }

    // drive artificials out, drop redundant rows
    for (size_t i = 0; i < tb.T.size();) {
        if (size_t(tb.basis[i]) < nreal) {
            ++i;
            continue;
        }
        int c2 = -1;
        for (size_t j = 0; j < nreal; ++j)
            if (tb.T[i][j] != 0) {
                c2 = int(j);
                break;
            }
        if (c2 >= 0) {
            tb.pivot(i, size_t(c2));
            ++i;
        } else {
            tb.T.erase(tb.T.begin() + long(i));
            tb.basis.erase(tb.basis.begin() + long(i));
        }
    }

    QVec cost2 = zeros(tb.cols);
    for (size_t j = 0; j < d; ++j) {
        cost2[j] = c[j];
        cost2[d + j] = -c[j];
    }
    std::vector<bool> real(tb.cols, false);
    for (size_t j = 0; j < nreal; ++j) real[j] = true;
    if (!tb.run(cost2, real)) {
        res.status = LPStatus::Unbounded;
        return res;
    }
    QVec y = zeros(tb.cols);
    for (size_t i = 0; i < tb.T.size(); ++i) y[tb.basis[i]] = tb.T[i][tb.cols];
    res.x = zeros(d);
    for (size_t j = 0; j < d; ++j) res.x[j] = y[j] - y[d + j];
    res.value = dot(c, res.x);
    res.status = LPStatus::Optimal;
    return res;
}

}  // namespace horokit
