#include "horokit/polyhedra.hpp"

#include "horokit/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace horokit {

std::string to_string(const RowTag& t)
{
    switch (t.kind) {
    case RowKind::GStableRay: return "ray" + std::to_string(t.index);
    case RowKind::Color: return "color" + to_string(t.root);
    default: return "row" + std::to_string(t.index);
    }
}

void InequalitySystem::add_row(const QVec& a, const Q& rhs, RowTag tag)
{
    if (A.empty() && dimension == 0) dimension = a.size();
    if (a.size() != dimension) throw Error(ErrorCode::PreconditionViolated, "row length mismatch");
    if (tag.kind == RowKind::Plain) tag.index = int(A.size());
    A.push_back(a);
    for (auto& x : A.back()) x.canonicalize();
    b.push_back(rhs);
    b.back().canonicalize();
    tags.push_back(tag);
}

InequalitySystem InequalitySystem::without_rows(const std::set<int>& drop) const
{
    InequalitySystem s;
    s.dimension = dimension;
    for (size_t i = 0; i < A.size(); ++i)
        if (!drop.count(int(i))) {
            s.A.push_back(A[i]);
            s.b.push_back(b[i]);
            s.tags.push_back(tags[i]);
        }
    return s;
}

InequalitySystem make_system(const QMat& A, const QVec& b)
{
    InequalitySystem s;
    s.dimension = A.empty() ? 0 : A[0].size();
    for (size_t i = 0; i < A.size(); ++i) s.add_row(A[i], b[i]);
    return s;
}

LPResult maximize(const InequalitySystem& s, const QVec& c) { return lp_maximize(c, s.A, s.b); }

bool is_feasible(const InequalitySystem& s)
{
    return maximize(s, zeros(s.dim())).status != LPStatus::Infeasible;
}

bool is_bounded(const InequalitySystem& s)
{
    size_t d = s.dim();
    if (d == 0) return true;
    if (rank(s.A) < int(d)) return false;
    // a pointed recession cone is zero iff no y has Ay >= 0 with positive total
    QMat A = s.A;
    QVec b = zeros(A.size());
    QVec total = zeros(d);
    for (auto& row : s.A) total = add(total, row);
    A.push_back(total);
    b.push_back(1);
    return lp_maximize(zeros(d), A, b).status == LPStatus::Infeasible;
}

std::vector<int> implicit_equalities(const InequalitySystem& s)
{
    std::vector<int> eq;
    // a point strictly inside every row that can be strict rules most rows out at once
    QMat A = s.A;
    QVec b = s.b;
    for (auto& row : A) row.push_back(-1);
    QVec c = zeros(s.dim() + 1);
    c.back() = 1;
    QVec cap = zeros(s.dim() + 1);
    cap.back() = -1;
    A.push_back(cap);
    b.push_back(-1);
    auto r = lp_maximize(c, A, b);
    if (r.status == LPStatus::Infeasible) throw Error(ErrorCode::EmptyPolytope, "empty system");
    if (r.value > 0) return eq;
    if (r.value < 0) throw Error(ErrorCode::EmptyPolytope, "empty system");
    for (size_t i = 0; i < s.rows(); ++i) {
        auto m = maximize(s, s.A[i]);
        if (m.status == LPStatus::Optimal && m.value == s.b[i]) eq.push_back(int(i));
    }
    return eq;
}

int polytope_dim(const InequalitySystem& s)
{
    if (!is_feasible(s)) return -1;
    auto eq = implicit_equalities(s);
    QMat m;
    for (int i : eq) m.push_back(s.A[i]);
    return int(s.dim()) - (m.empty() ? 0 : rank(m));
}

bool is_redundant(const InequalitySystem& s, int row)
{
    auto rest = s.without_rows({row});
    auto r = maximize(rest, scale(s.A[row], -1));
    if (r.status == LPStatus::Infeasible) return true;
    if (r.status == LPStatus::Unbounded) return false;
    return -r.value >= s.b[row];
}

std::vector<QVec> vertices_of_bounded(const InequalitySystem& s)
{
    size_t m = s.rows(), d = s.dim();
    std::set<QVec> out;
    if (d == 0) {
        for (size_t i = 0; i < m; ++i)
            if (s.b[i] > 0) return {};
        return {QVec{}};
    }
    if (m < d) return {};
    std::vector<int> sel(d);
    for (size_t i = 0; i < d; ++i) sel[i] = int(i);
    QMat M(d);
    QVec rhs(d);
    while (true) {
        for (size_t i = 0; i < d; ++i) {
            M[i] = s.A[sel[i]];
            rhs[i] = s.b[sel[i]];
        }
        if (auto x = solve_square(M, rhs)) {
            bool ok = true;
            for (size_t i = 0; i < m && ok; ++i)
                if (dot(s.A[i], *x) < s.b[i]) ok = false;
            if (ok) out.insert(*x);
        }
        int i = int(d) - 1;
        while (i >= 0 && sel[i] == int(m - d) + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (size_t j = i + 1; j < d; ++j) sel[j] = sel[j - 1] + 1;
    }
    return {out.begin(), out.end()};
}

std::vector<QVec> vertices(const InequalitySystem& s)
{
    if (!is_bounded(s)) throw Error(ErrorCode::Unbounded, "vertices of an unbounded system");
    return vertices_of_bounded(s);
}

std::vector<int> redundant_rows(const InequalitySystem& s)
{
    if (!is_feasible(s)) throw Error(ErrorCode::EmptyPolytope, "infeasible system");
    std::vector<int> out;
    for (size_t i = 0; i < s.rows(); ++i)
        if (is_redundant(s, int(i))) out.push_back(int(i));
    return out;
}

namespace {

using Bits = std::vector<uint64_t>;

bool any(const Bits& b)
{
    for (auto w : b)
        if (w) return true;
    return false;
}

bool subset(const Bits& a, const Bits& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

}  // namespace

std::vector<Face> face_lattice_bounded(const InequalitySystem& s)
{
    auto verts = vertices_of_bounded(s);
    if (verts.empty()) throw Error(ErrorCode::EmptyPolytope, "no vertices");
    size_t nv = verts.size(), words = (nv + 63) / 64, m = s.rows();
    std::vector<Bits> tight(m, Bits(words, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t v = 0; v < nv; ++v)
            if (dot(s.A[i], verts[v]) == s.b[i]) tight[i][v / 64] |= uint64_t(1) << (v % 64);
    Bits all(words, 0);
    for (size_t v = 0; v < nv; ++v) all[v / 64] |= uint64_t(1) << (v % 64);
    std::set<Bits> seen{all};
    std::vector<Bits> todo{all};
    while (!todo.empty()) {
        Bits f = todo.back();
        todo.pop_back();
        for (size_t i = 0; i < m; ++i) {
            Bits g(words);
            for (size_t w = 0; w < words; ++w) g[w] = f[w] & tight[i][w];
            if (any(g) && seen.insert(g).second) todo.push_back(g);
        }
    }
    std::vector<Face> faces;
    for (auto& f : seen) {
        Face face;
        QMat eq;
        for (size_t i = 0; i < m; ++i)
            if (subset(f, tight[i])) {
                face.rows.push_back(int(i));
                eq.push_back(s.A[i]);
            }
        face.dim = int(s.dim()) - (eq.empty() ? 0 : rank(eq));
        faces.push_back(face);
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

std::vector<Face> face_lattice(const InequalitySystem& s)
{
    if (!is_feasible(s)) throw Error(ErrorCode::EmptyPolytope, "infeasible system");
    if (!is_bounded(s)) throw Error(ErrorCode::Unbounded, "face lattice needs a bounded polytope");
    return face_lattice_bounded(s);
}

std::vector<int> prune_redundant(const InequalitySystem& s, const std::vector<bool>& may_drop)
{
    std::set<int> dropped;
    for (size_t i = 0; i < s.rows(); ++i) {
        if (!may_drop[i]) continue;
        auto cur = s.without_rows(dropped);
        // position of row i inside cur
        int pos = int(i);
        for (int d : dropped)
            if (d < int(i)) --pos;
        if (is_redundant(cur, pos)) dropped.insert(int(i));
    }
    return {dropped.begin(), dropped.end()};
}

}  // namespace horokit
