#include "horokit/linalg.hpp"

#include <numeric>

namespace horokit {

std::vector<int> rref(QMat& m)
{
    std::vector<int> piv;
    if (m.empty()) return piv;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(int(c));
        ++r;
    }
    return piv;
}

int rank(QMat m) { return int(rref(m).size()); }

Q det(QMat m)
{
    size_t n = m.size();
    Q d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Q f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

std::optional<QVec> solve(const QMat& m, const QVec& rhs)
{
    size_t cols = m.empty() ? 0 : m[0].size();
    QMat aug = m;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    auto piv = rref(aug);
    if (!piv.empty() && size_t(piv.back()) == cols) return std::nullopt;
    QVec x = zeros(cols);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
    return x;
}

std::optional<QVec> solve_square(const QMat& m, const QVec& rhs)
{
    size_t n = m.size();
    QMat a = m;
    QVec b = rhs;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Q f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    QVec x(n);
    for (size_t i = n; i-- > 0;) {
        Q s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

QMat nullspace(const QMat& m)
{
    QMat r = m;
    size_t cols = m.empty() ? 0 : m[0].size();
    auto piv = rref(r);
    std::vector<bool> is_piv(cols, false);
    for (int p : piv) is_piv[p] = true;
    QMat basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec v = zeros(cols);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
        basis.push_back(v);
    }
    return basis;
}

QMat transpose(const QMat& m)
{
    if (m.empty()) return {};
    QMat t(m[0].size(), QVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

QVec mat_vec(const QMat& m, const QVec& v)
{
    QVec r;
    r.reserve(m.size());
    for (auto& row : m) r.push_back(dot(row, v));
    return r;
}

long gcd_of_maximal_minors(const std::vector<IVec>& rows)
{
    if (rows.empty()) return 1;
    size_t k = rows.size(), n = rows[0].size();
    if (k > n) return 0;
    std::vector<int> sel(k);
    std::iota(sel.begin(), sel.end(), 0);
    long g = 0;
    while (true) {
        QMat sq(k, QVec(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) sq[i][j] = rows[i][sel[j]];
        Q d = det(sq);
        g = std::gcd(g, std::labs(d.get_num().get_si()));
        if (g == 1) return 1;
        int i = int(k) - 1;
        while (i >= 0 && sel[i] == int(n - k + i)) --i;
        if (i < 0) break;
        ++sel[i];
        for (size_t j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
    return g;
}

IVec primitive(const IVec& v)
{
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    if (g <= 1) return v;
    IVec r(v);
    for (auto& x : r) x /= g;
    return r;
}

}  // namespace horokit
