#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace oracle {

namespace {

QVec e(int dim, int i) { QVec v(dim, Q(0)); v[i] = 1; return v; }
QVec minus(QVec a, const QVec& b) { for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i]; return a; }
QVec plus(QVec a, const QVec& b) { for (size_t i = 0; i < a.size(); ++i) a[i] += b[i]; return a; }
QVec times(QVec a, Q s) { for (auto& x : a) x *= s; return a; }

}  // namespace

Q inner(const QVec& a, const QVec& b)
{
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<QVec> euclidean_simple_roots(char family, int r)
{
    std::vector<QVec> s;
    switch (family) {
    case 'A':
        for (int i = 0; i < r; ++i) s.push_back(minus(e(r + 1, i), e(r + 1, i + 1)));
        break;
    case 'B':
    case 'C':
    case 'D':
        for (int i = 0; i + 1 < r; ++i) s.push_back(minus(e(r, i), e(r, i + 1)));
        if (family == 'B') s.push_back(e(r, r - 1));
        if (family == 'C') s.push_back(times(e(r, r - 1), 2));
        if (family == 'D') s.push_back(plus(e(r, r - 2), e(r, r - 1)));
        break;
    case 'E': {
        QVec a1(8, Q(-1, 2));
        a1[0] = Q(1, 2);
        a1[7] = Q(1, 2);
        s.push_back(a1);
        s.push_back(plus(e(8, 0), e(8, 1)));
        for (int i = 0; i < 6; ++i) s.push_back(minus(e(8, i + 1), e(8, i)));
        s.resize(r);
        break;
    }
    case 'F':
        s.push_back(minus(e(4, 1), e(4, 2)));
        s.push_back(minus(e(4, 2), e(4, 3)));
        s.push_back(e(4, 3));
        s.push_back(QVec{Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)});
        break;
    case 'G':
        s.push_back(QVec{1, -1, 0});
        s.push_back(QVec{-2, 1, 1});
        break;
    }
    return s;
}

int pairing(char family, int rank, int i, int j)
{
    auto s = euclidean_simple_roots(family, rank);
    Q v = 2 * inner(s[i - 1], s[j - 1]) / inner(s[i - 1], s[i - 1]);
    return int(v.get_num().get_si());
}

int positive_root_count(char family, int rank)
{
    auto s = euclidean_simple_roots(family, rank);
    std::set<QVec> all(s.begin(), s.end());
    std::vector<QVec> todo(s.begin(), s.end());
    while (!todo.empty()) {
        QVec v = todo.back();
        todo.pop_back();
        for (auto& a : s) {
            QVec w = minus(v, times(a, 2 * inner(v, a) / inner(a, a)));
            if (all.insert(w).second) todo.push_back(w);
        }
    }
    return int(all.size() / 2);
}

bool smooth_pair(char family, int rank, const std::set<int>& r1, const std::set<int>& r2)
{
    auto s = euclidean_simple_roots(family, rank);
    std::set<int> all = r1;
    all.insert(r2.begin(), r2.end());
    auto adj = [&](int i, int j) { return i != j && inner(s[i - 1], s[j - 1]) != 0; };
    std::set<int> seen;
    for (int start : all) {
        if (seen.count(start)) continue;
        std::vector<int> comp{start};
        seen.insert(start);
        for (size_t k = 0; k < comp.size(); ++k)
            for (int v : all)
                if (!seen.count(v) && adj(comp[k], v)) {
                    seen.insert(v);
                    comp.push_back(v);
                }
        std::vector<int> marked;
        for (int v : comp)
            if (r2.count(v)) marked.push_back(v);
        if (marked.size() > 1) return false;
        if (marked.empty()) continue;
        int v = marked[0];
        std::map<int, int> deg;
        int doubles = 0, triples = 0;
        Q minlen = inner(s[comp[0] - 1], s[comp[0] - 1]);
        for (int x : comp) {
            minlen = std::min(minlen, inner(s[x - 1], s[x - 1]));
            for (int y : comp)
                if (x < y && adj(x, y)) {
                    ++deg[x];
                    ++deg[y];
                    Q m = 4 * inner(s[x - 1], s[y - 1]) * inner(s[x - 1], s[y - 1]) /
                          (inner(s[x - 1], s[x - 1]) * inner(s[y - 1], s[y - 1]));
                    if (m == 2) ++doubles;
                    if (m == 3) ++triples;
                }
        }
        bool path = true;
        for (auto& [x, d] : deg)
            if (d > 2) path = false;
        if (!path || triples) return false;
        if (doubles == 1) {
            // type C: double bond at an end whose end vertex is long
            bool ok = comp.size() == 2;
            for (int x : comp)
                for (int y : comp)
                    if (adj(x, y) && deg[x] == 1 && inner(s[x - 1], s[x - 1]) > inner(s[y - 1], s[y - 1]))
                        ok = true;
            if (!ok) return false;
        } else if (doubles > 1) return false;
        if (deg[v] > 1) return false;
        if (inner(s[v - 1], s[v - 1]) != minlen) return false;
    }
    return true;
}

namespace {

// Leibniz expansion
Q leibniz(const QMat& m)
{
    size_t n = m.size();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Q total = 0;
    do {
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Q t = inv % 2 ? -1 : 1;
        for (size_t i = 0; i < n && t != 0; ++i) t *= m[i][p[i]];
        total += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

int affine_rank(const std::vector<QVec>& pts)
{
    if (pts.size() <= 1) return 0;
    QMat m;
    for (size_t i = 1; i < pts.size(); ++i) m.push_back(minus(pts[i], pts[0]));
    int r = 0;
    size_t cols = m[0].size();
    for (size_t c = 0; c < cols && r < int(m.size()); ++c) {
        size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (size_t i = r + 1; i < m.size(); ++i) {
            Q f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

std::vector<QVec> vertices_by_cramer(const QMat& A, const QVec& b)
{
    size_t m = A.size(), d = A.empty() ? 0 : A[0].size();
    std::set<QVec> out;
    std::vector<int> sel(d);
    std::function<void(size_t, size_t)> rec = [&](size_t k, size_t from) {
        if (k == d) {
            QMat M(d);
            for (size_t i = 0; i < d; ++i) M[i] = A[sel[i]];
            Q D = leibniz(M);
            if (D == 0) return;
            QVec x(d);
            for (size_t c = 0; c < d; ++c) {
                QMat Mc = M;
                for (size_t i = 0; i < d; ++i) Mc[i][c] = b[sel[i]];
                x[c] = leibniz(Mc) / D;
            }
            for (size_t i = 0; i < m; ++i)
                if (inner(A[i], x) < b[i]) return;
            out.insert(x);
            return;
        }
        for (size_t i = from; i < m; ++i) {
            sel[k] = int(i);
            rec(k + 1, i + 1);
        }
    };
    rec(0, 0);
    return {out.begin(), out.end()};
}

std::optional<std::set<Face>> faces_by_vertices(const QMat& A, const QVec& b)
{
    auto verts = vertices_by_cramer(A, b);
    if (verts.empty()) return std::nullopt;
    size_t m = A.size();
    std::set<Face> faces;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        std::vector<QVec> in;
        for (auto& v : verts) {
            bool ok = true;
            for (size_t i = 0; i < m && ok; ++i)
                if ((mask >> i & 1) && inner(A[i], v) != b[i]) ok = false;
            if (ok) in.push_back(v);
        }
        if (in.empty()) continue;
        Face f;
        for (size_t i = 0; i < m; ++i) {
            bool tight = true;
            for (auto& v : in)
                if (inner(A[i], v) != b[i]) tight = false;
            if (tight) f.rows.insert(int(i));
        }
        f.dim = affine_rank(in);
        faces.insert(f);
    }
    return faces;
}

std::vector<std::vector<long>> lattice_points(const QMat& A, const QVec& b, long lo, long hi)
{
    size_t d = A.empty() ? 0 : A[0].size();
    std::vector<std::vector<long>> out;
    std::vector<long> x(d, lo);
    while (true) {
        bool ok = true;
        for (size_t i = 0; i < A.size() && ok; ++i) {
            Q s = 0;
            for (size_t j = 0; j < d; ++j) s += A[i][j] * x[j];
            if (s < b[i]) ok = false;
        }
        if (ok) out.push_back(x);
        size_t k = 0;
        while (k < d && x[k] == hi) x[k++] = lo;
        if (k == d) break;
        ++x[k];
    }
    return out;
}

namespace {

QVec fw(const horokit::GroupProduct& g, horokit::RootId r) { return horokit::fundamental_weight(g, r); }

Variety subsets_fan(horokit::HomSpaceData hs, const std::vector<horokit::IVec>& rays,
                    const std::vector<std::optional<horokit::RootId>>& color_of,
                    bool (*ok)(unsigned, const std::vector<int>&), const std::vector<int>& arg)
{
    Variety v{std::move(hs), {}};
    for (unsigned mask = 0; mask < (1u << rays.size()); ++mask) {
        if (!ok(mask, arg)) continue;
        horokit::ColoredCone c;
        for (size_t i = 0; i < rays.size(); ++i)
            if (mask >> i & 1) {
                c.generators.push_back(rays[i]);
                if (color_of[i]) c.colors.insert(*color_of[i]);
            }
        std::sort(c.generators.begin(), c.generators.end());
        v.fan.cones.push_back(c);
    }
    return v;
}

}  // namespace

Variety case1(const std::string& group, horokit::RootId beta, const std::vector<horokit::RootId>& alphas,
              const std::vector<long>& a)
{
    using namespace horokit;
    HomSpaceData hs;
    hs.G = parse_group(group);
    int n = int(alphas.size()) - 1;
    hs.R = {beta};
    for (auto& al : alphas)
        if (!al.trivial()) hs.R.insert(al);
    for (int i = 1; i <= n; ++i)
        hs.M_basis.push_back(add(sub(fw(hs.G, alphas[i]), fw(hs.G, alphas[0])), scale(fw(hs.G, beta), a[i])));
    std::vector<IVec> rays{IVec(n, -1)};
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    std::vector<std::optional<RootId>> col;
    for (auto& al : alphas) col.push_back(al.trivial() ? std::nullopt : std::optional<RootId>(al));
    return subsets_fan(hs, rays, col, [](unsigned m, const std::vector<int>& k) { return m != (1u << k[0]) - 1; },
                       {n + 1});
}

Variety case2(const std::string& group, const std::vector<horokit::RootId>& alphas, const std::vector<long>& a)
{
    using namespace horokit;
    HomSpaceData hs;
    hs.G = parse_group(group);
    int r = int(alphas.size()) - 3, n = r + 1;
    for (auto& al : alphas)
        if (!al.trivial()) hs.R.insert(al);
    for (int i = 1; i <= r; ++i)
        hs.M_basis.push_back(
            add(sub(fw(hs.G, alphas[i]), fw(hs.G, alphas[0])), scale(fw(hs.G, alphas[r + 2]), a[i])));
    hs.M_basis.push_back(sub(fw(hs.G, alphas[r + 1]), fw(hs.G, alphas[r + 2])));
    std::vector<IVec> rays{IVec(n, 0)};
    for (int i = 0; i < r; ++i) rays[0][i] = -1;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    IVec last(n, 0);
    for (int i = 0; i < r; ++i) last[i] = a[i + 1];
    last[r] = -1;
    rays.push_back(last);
    std::vector<std::optional<RootId>> col;
    for (auto& al : alphas) col.push_back(al.trivial() ? std::nullopt : std::optional<RootId>(al));
    return subsets_fan(hs, rays, col,
                       [](unsigned m, const std::vector<int>& k) {
                           unsigned u = (1u << (k[0] + 1)) - 1, v = 3u << (k[0] + 1);
                           return (m & u) != u && (m & v) != v;
                       },
                       {r});
}

}  // namespace oracle
