#include "horokit/quadruple.hpp"

#include "horokit/linalg.hpp"

#include <algorithm>
#include <map>

namespace horokit {

AdmissibleQuadruple quadruple_of(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    auto m = moment_polytopes(hs, fan, d);
    return {hs, m.Qtilde, m.v0};
}

std::string to_string(AdmissibilityClause c)
{
    switch (c) {
    case AdmissibilityClause::Empty: return "empty";
    case AdmissibilityClause::Unbounded: return "unbounded";
    case AdmissibilityClause::NotDominant: return "not-dominant";
    case AdmissibilityClause::NotFullDimensional: return "not-full-dimensional";
    default: return "misses-interior";
    }
}

namespace {

std::vector<RootId> nontrivial_R(const HomSpaceData& hs)
{
    std::vector<RootId> out;
    for (auto& a : hs.R)
        if (!a.trivial()) out.push_back(a);
    return out;
}

QVec wall_row(const AdmissibleQuadruple& q, const RootId& a) { return to_qvec(sigma(q.hs, a)); }

// adds the equations row_i . x = b_i for every i in `rows`
InequalitySystem pin(const InequalitySystem& s, const std::vector<int>& rows)
{
    InequalitySystem out = s;
    for (int i : rows) out.add_row(scale(s.A[i], -1), -s.b[i], {RowKind::Plain, -1 - i, {}});
    return out;
}

bool positively_proportional(const QVec& x, const QVec& y)
{
    if (is_zero(y) || dot(x, y) <= 0) return false;
    return rank(QMat{x, y}) == 1;
}

}  // namespace

Q wall_value(const AdmissibleQuadruple& q, const RootId& a, const QVec& chi)
{
    return coroot_pairing(q.hs.G, a, add(q.v0, to_weight(q.hs, chi)));
}

AdmissibilityReport check_admissible(const AdmissibleQuadruple& q)
{
    AdmissibilityReport rep;
    auto& s = q.Qtilde;
    size_t n = q.hs.rank();
    if (!is_feasible(s)) {
        rep.failures.push_back(AdmissibilityClause::Empty);
        return rep;
    }
    if (!is_bounded(s)) {
        rep.failures.push_back(AdmissibilityClause::Unbounded);
        return rep;
    }
    auto roots = nontrivial_R(q.hs);
    QVec origin = zeros(n);
    for (auto& a : roots) {
        Q c = wall_value(q, a, origin);
        auto row = wall_row(q, a);
        Q lo = c;
        if (n > 0) {
            auto r = maximize(s, scale(row, -1));
            lo = c - r.value;
        }
        if (lo < 0) rep.negative_roots.push_back(a);
    }
    if (!rep.negative_roots.empty()) rep.failures.push_back(AdmissibilityClause::NotDominant);
    if (polytope_dim(s) != int(n)) rep.failures.push_back(AdmissibilityClause::NotFullDimensional);
    if (!roots.empty()) {
        // maximize t with every wall value >= t
        QMat A;
        QVec b;
        for (size_t i = 0; i < s.rows(); ++i) {
            auto row = s.A[i];
            row.push_back(0);
            A.push_back(row);
            b.push_back(s.b[i]);
        }
        for (auto& a : roots) {
            auto row = wall_row(q, a);
            row.push_back(-1);
            A.push_back(row);
            b.push_back(-wall_value(q, a, origin));
        }
        QVec c = zeros(n + 1);
        c.back() = 1;
        auto r = lp_maximize(c, A, b);
        if (r.status == LPStatus::Optimal && r.value <= 0) rep.failures.push_back(AdmissibilityClause::MissesInterior);
    }
    return rep;
}

bool is_admissible(const AdmissibleQuadruple& q) { return check_admissible(q).ok(); }

OrbitData orbit_of_face(const AdmissibleQuadruple& q, const Face& f)
{
    auto face = pin(q.Qtilde, f.rows);
    if (!is_feasible(face)) throw Error(ErrorCode::EmptyFace, "face has no points");
    auto verts = vertices_of_bounded(face);
    OrbitData o;
    for (auto& a : nontrivial_R(q.hs)) {
        bool in = true;
        for (auto& v : verts)
            if (wall_value(q, a, v) != 0) in = false;
        if (in)
            o.walls.insert(a);
        else
            o.R_F.insert(a);
    }
    RootSet levi;
    for (auto& a : all_simple_roots(q.hs.G))
        if (!a.trivial() && !o.R_F.count(a)) levi.insert(a);
    o.mf_rank = polytope_dim(face);
    o.orbit_dim = flag_dimension(q.hs.G, levi) + o.mf_rank;
    return o;
}

std::vector<OrbitNode> orbit_poset(const AdmissibleQuadruple& q)
{
    auto faces = face_lattice(q.Qtilde);
    std::vector<OrbitNode> out;
    for (auto& f : faces) out.push_back({f, orbit_of_face(q, f), {}});
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j) {
            if (i == j) continue;
            auto& big = out[i].face.rows;
            auto& small = out[j].face.rows;
            if (small.size() > big.size() && std::includes(small.begin(), small.end(), big.begin(), big.end()))
                out[i].below.push_back(int(j));
        }
    return out;
}

std::optional<Face> map_face(const AdmissibleQuadruple& source, const AdmissibleQuadruple& target, const Face& f)
{
    if (!(source.hs.G == target.hs.G)) throw Error(ErrorCode::IncompatibleQuadruples, "different groups");
    for (auto* s : {&source.Qtilde, &target.Qtilde}) {
        std::set<RowTag> seen;
        for (auto& t : s->tags)
            if (!seen.insert(t).second) throw Error(ErrorCode::IncompatibleQuadruples, "repeated row tag " + to_string(t));
    }
    // colour and plain rows match by tag; a G-stable row keeps its tag when the
    // target row under that tag points the same way, otherwise it matches the
    // target rows with its direction (indices depend on the fan, not on the ray)
    bool same_m = source.hs.M_basis == target.hs.M_basis;
    std::vector<int> rows;
    for (int i : f.rows) {
        auto& t = source.Qtilde.tags[i];
        bool found = false;
        if (t.kind != RowKind::GStableRay) {
            for (size_t j = 0; j < target.Qtilde.rows(); ++j)
                if (target.Qtilde.tags[j] == t) {
                    rows.push_back(int(j));
                    found = true;
                }
        } else if (same_m) {
            for (size_t j = 0; j < target.Qtilde.rows() && !found; ++j)
                if (target.Qtilde.tags[j] == t && positively_proportional(source.Qtilde.A[i], target.Qtilde.A[j])) {
                    rows.push_back(int(j));
                    found = true;
                }
            for (size_t j = 0; j < target.Qtilde.rows() && !found; ++j)
                if (positively_proportional(source.Qtilde.A[i], target.Qtilde.A[j])) {
                    rows.push_back(int(j));
                    found = true;
                }
        }
        if (!found && !is_zero(source.Qtilde.A[i]))
            throw Error(ErrorCode::IncompatibleQuadruples, "no target row for " + to_string(t));
    }
    auto region = pin(target.Qtilde, rows);
    for (auto& a : orbit_of_face(source, f).walls) {
        if (!target.hs.R.count(a)) continue;  // wall of a root that is no longer a color of P'
        auto row = wall_row(target, a);
        Q c = wall_value(target, a, zeros(target.hs.rank()));
        region.add_row(row, -c);
        region.add_row(scale(row, -1), c);
    }
    if (!is_feasible(region)) return std::nullopt;
    auto eq = implicit_equalities(region);
    Face out;
    for (int i : eq)
        if (i < int(target.Qtilde.rows())) out.rows.push_back(i);
    out.dim = polytope_dim(region);
    return out;
}

}  // namespace horokit
