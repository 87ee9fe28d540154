#include "horokit/horo.hpp"

#include "horokit/linalg.hpp"
#include "horokit/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace horokit {

void check_hom_space(const HomSpaceData& hs)
{
    int wd = weight_dim(hs.G);
    for (auto& a : hs.R) {
        check_root(hs.G, a);
        if (a.trivial()) throw Error(ErrorCode::InputError, "trivial root " + to_string(a) + " cannot be a color");
    }
    for (auto& m : hs.M_basis) {
        if (int(m.size()) != wd) throw Error(ErrorCode::InputError, "basis weight has wrong length");
        if (!is_integral(m)) throw Error(ErrorCode::InputError, "basis weight is not integral");
        for (auto& g : all_simple_roots(hs.G))
            if (!hs.R.count(g) && coroot_pairing(hs.G, g, m) != 0)
                throw Error(ErrorCode::InputError, "basis weight is not a character of P (" + to_string(g) + ")");
    }
    if (rank(hs.M_basis) != hs.rank()) throw Error(ErrorCode::InputError, "M basis is not independent");
}

IVec sigma(const HomSpaceData& hs, const RootId& alpha)
{
    if (!hs.R.count(alpha)) throw Error(ErrorCode::NotAColor, to_string(alpha) + " is not in R");
    IVec out;
    for (auto& m : hs.M_basis) out.push_back(coroot_pairing(hs.G, alpha, m).get_num().get_si());
    return out;
}

ColoredCone normalized(const ColoredCone& c)
{
    ColoredCone out;
    out.colors = c.colors;
    for (auto& g : c.generators) out.generators.push_back(primitive(g));
    std::sort(out.generators.begin(), out.generators.end());
    out.generators.erase(std::unique(out.generators.begin(), out.generators.end()), out.generators.end());
    return out;
}

namespace {

bool feasible(const QMat& A, const QVec& b, const QMat& E, const QVec& f, size_t nvars)
{
    return lp_maximize(zeros(nvars), A, b, E, f).status != LPStatus::Infeasible;
}

// some point of N_Q lies in both relative interiors
bool relints_meet(const std::vector<IVec>& g, const std::vector<IVec>& h, size_t d)
{
    size_t k = g.size() + h.size();
    QMat A;
    QVec b;
    for (size_t i = 0; i < k; ++i) {
        QVec row = zeros(k);
        row[i] = 1;
        A.push_back(row);
        b.push_back(1);
    }
    QMat E(d, zeros(k));
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < g.size(); ++i) E[j][i] = g[i][j];
        for (size_t i = 0; i < h.size(); ++i) E[j][g.size() + i] = -h[i][j];
    }
    if (k == 0) return true;
    return feasible(A, b, E, zeros(d), k);
}

std::vector<IVec> pick(const std::vector<IVec>& gens, const std::vector<int>& idx)
{
    std::vector<IVec> out;
    for (int i : idx) out.push_back(gens[i]);
    return out;
}

bool is_subset(const std::vector<IVec>& a, const std::vector<IVec>& b)
{
    for (auto& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    return true;
}

}  // namespace

std::vector<std::vector<int>> cone_faces(const std::vector<IVec>& gens)
{
    size_t k = gens.size();
    if (k == 0) return {{}};
    if (k > 20) throw Error(ErrorCode::UnsupportedFan, "too many generators");
    size_t d = gens[0].size();
    std::vector<std::vector<int>> out;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        // y.g = 0 on the subset, y.g >= 1 off it
        QMat A, E;
        QVec b, f;
        for (size_t i = 0; i < k; ++i) {
            QVec row = to_qvec(gens[i]);
            if (mask >> i & 1) {
                E.push_back(row);
                f.push_back(0);
            } else {
                A.push_back(row);
                b.push_back(1);
            }
        }
        if (feasible(A, b, E, f, d)) {
            std::vector<int> idx;
            for (size_t i = 0; i < k; ++i)
                if (mask >> i & 1) idx.push_back(int(i));
            out.push_back(idx);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.size() < y.size(); });
    return out;
}

bool cone_contains(const std::vector<IVec>& gens, const IVec& v)
{
    size_t k = gens.size(), d = v.size();
    if (k == 0) return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
    QMat A;
    for (size_t i = 0; i < k; ++i) {
        QVec row = zeros(k);
        row[i] = 1;
        A.push_back(row);
    }
    QMat E(d, zeros(k));
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < k; ++i) E[j][i] = gens[i][j];
    return feasible(A, zeros(k), E, to_qvec(v), k);
}

namespace {

ColoredCone colored_face(const HomSpaceData& hs, const ColoredCone& c, const std::vector<int>& idx)
{
    ColoredCone f;
    f.generators = pick(c.generators, idx);
    for (auto& a : c.colors)
        if (hs.R.count(a) && cone_contains(f.generators, sigma(hs, a))) f.colors.insert(a);
    return f;
}

}  // namespace

ColoredFan fan_from_cones(const HomSpaceData& hs, const std::vector<ColoredCone>& cones)
{
    ColoredFan fan;
    auto add = [&](const ColoredCone& c) {
        if (std::find(fan.cones.begin(), fan.cones.end(), c) == fan.cones.end()) fan.cones.push_back(c);
    };
    for (auto& raw : cones) {
        auto c = normalized(raw);
        for (auto& idx : cone_faces(c.generators)) add(colored_face(hs, c, idx));
    }
    return fan;
}

std::string to_string(FanClause c)
{
    switch (c) {
    case FanClause::ColorNotInR: return "ColorNotInR";
    case FanClause::GeneratorNotPrimitive: return "GeneratorNotPrimitive";
    case FanClause::GeneratorNotExtremal: return "GeneratorNotExtremal";
    case FanClause::ColorOutsideCone: return "ColorOutsideCone";
    case FanClause::ZeroColor: return "ZeroColor";
    case FanClause::LineViolation: return "LineViolation";
    case FanClause::FaceClosureViolation: return "FaceClosureViolation";
    case FanClause::OverlapViolation: return "OverlapViolation";
    case FanClause::DuplicateCone: return "DuplicateCone";
    case FanClause::WrongDimension: return "WrongDimension";
    }
    return "?";
}

std::vector<FanViolation> validate_fan(const HomSpaceData& hs, const ColoredFan& fan)
{
    std::vector<FanViolation> out;
    size_t n = hs.rank();
    std::vector<bool> usable(fan.cones.size(), true);
    for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
        auto& c = fan.cones[ci];
        auto report = [&](FanClause k, std::string d = {}) {
            out.push_back({k, int(ci), -1, d});
            usable[ci] = false;
        };
        bool shape_ok = true;
        for (auto& g : c.generators) {
            if (g.size() != n) {
                report(FanClause::WrongDimension);
                shape_ok = false;
                break;
            }
            if (std::all_of(g.begin(), g.end(), [](long x) { return x == 0; }) || primitive(g) != g)
                report(FanClause::GeneratorNotPrimitive);
        }
        if (!shape_ok) continue;
        auto faces = cone_faces(c.generators);
        if (faces.empty() || !faces[0].empty()) report(FanClause::LineViolation);
        for (size_t i = 0; i < c.generators.size(); ++i)
            if (std::find(faces.begin(), faces.end(), std::vector<int>{int(i)}) == faces.end())
                report(FanClause::GeneratorNotExtremal, std::to_string(i));
        for (auto& a : c.colors) {
            if (!hs.R.count(a)) {
                report(FanClause::ColorNotInR, to_string(a));
                continue;
            }
            auto s = sigma(hs, a);
            if (std::all_of(s.begin(), s.end(), [](long x) { return x == 0; }))
                report(FanClause::ZeroColor, to_string(a));
            else if (!cone_contains(c.generators, s))
                report(FanClause::ColorOutsideCone, to_string(a));
        }
    }
    auto same_set = [](const ColoredCone& x, const ColoredCone& y) {
        return x.generators.size() == y.generators.size() && is_subset(x.generators, y.generators);
    };
    for (size_t ci = 0; ci < fan.cones.size(); ++ci) {
        if (!usable[ci]) continue;
        auto& c = fan.cones[ci];
        for (auto& idx : cone_faces(c.generators)) {
            auto f = colored_face(hs, c, idx);
            bool found = false;
            for (auto& o : fan.cones)
                if (same_set(o, f) && o.colors == f.colors) found = true;
            if (!found) out.push_back({FanClause::FaceClosureViolation, int(ci), -1, "face of size " + std::to_string(idx.size())});
        }
        for (size_t cj = ci + 1; cj < fan.cones.size(); ++cj) {
            if (!usable[cj]) continue;
            auto& o = fan.cones[cj];
            if (same_set(c, o) && c.colors == o.colors)
                out.push_back({FanClause::DuplicateCone, int(ci), int(cj), {}});
            else if (relints_meet(c.generators, o.generators, n))
                out.push_back({FanClause::OverlapViolation, int(ci), int(cj), {}});
        }
    }
    return out;
}

std::vector<int> maximal_cones(const ColoredFan& fan)
{
    std::vector<int> out;
    for (size_t i = 0; i < fan.cones.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < fan.cones.size() && maximal; ++j)
            if (j != i && fan.cones[j].generators.size() > fan.cones[i].generators.size() &&
                is_subset(fan.cones[i].generators, fan.cones[j].generators))
                maximal = false;
        if (maximal) out.push_back(int(i));
    }
    return out;
}

std::vector<Edge> edges(const ColoredFan& fan)
{
    std::vector<Edge> out;
    for (auto& c : fan.cones) {
        if (c.generators.size() != 1) continue;
        auto& g = c.generators[0];
        if (std::any_of(out.begin(), out.end(), [&](const Edge& e) { return e.ray == g; })) continue;
        Edge e{g, std::nullopt};
        if (!c.colors.empty()) e.color = *c.colors.begin();
        out.push_back(e);
    }
    return out;
}

std::vector<IVec> gstable_edges(const ColoredFan& fan)
{
    std::vector<IVec> out;
    for (auto& e : edges(fan))
        if (!e.color) out.push_back(e.ray);
    return out;
}

RootSet fan_colors(const ColoredFan& fan)
{
    RootSet out;
    for (auto& c : fan.cones) out.insert(c.colors.begin(), c.colors.end());
    return out;
}

bool is_complete(const HomSpaceData& hs, const ColoredFan& fan)
{
    size_t n = hs.rank();
    if (fan.cones.empty()) return false;
    for (auto& c : fan.cones) {
        std::vector<IVec> g = c.generators;
        QMat m;
        for (auto& x : g) m.push_back(to_qvec(x));
        if (rank(m) != int(g.size())) throw Error(ErrorCode::UnsupportedFan, "non-simplicial cone");
    }
    if (n == 0) return true;
    std::map<std::vector<IVec>, int> facets;
    auto maxi = maximal_cones(fan);
    for (int i : maxi) {
        auto g = fan.cones[i].generators;
        if (g.size() != n) return false;
        std::sort(g.begin(), g.end());
        for (size_t k = 0; k < n; ++k) {
            auto f = g;
            f.erase(f.begin() + k);
            facets[f]++;
        }
    }
    for (auto& [f, count] : facets)
        if (count != 2) return false;
    return !maxi.empty();
}

bool is_locally_factorial(const HomSpaceData& hs, const ColoredFan& fan)
{
    for (auto& c : fan.cones) {
        QMat m;
        for (auto& x : c.generators) m.push_back(to_qvec(x));
        if (rank(m) != int(c.generators.size())) return false;
        if (gcd_of_maximal_minors(c.generators) != 1) return false;
        std::set<IVec> hit;
        for (auto& a : c.colors) {
            auto s = sigma(hs, a);
            if (std::find(c.generators.begin(), c.generators.end(), s) == c.generators.end()) return false;
            if (!hit.insert(s).second) return false;
        }
    }
    return true;
}

int picard_rank(const HomSpaceData& hs, const ColoredFan& fan)
{
    if (!is_locally_factorial(hs, fan)) throw Error(ErrorCode::NotLocallyFactorial, "picard_rank");
    if (!is_complete(hs, fan)) throw Error(ErrorCode::NotComplete, "picard_rank");
    auto fx = fan_colors(fan);
    int outside = 0;
    for (auto& a : hs.R)
        if (!fx.count(a)) ++outside;
    return int(edges(fan).size()) - hs.rank() + outside;
}

bool is_smooth_variety(const HomSpaceData& hs, const ColoredFan& fan)
{
    if (!is_locally_factorial(hs, fan)) return false;
    RootSet levi;
    for (auto& a : all_simple_roots(hs.G))
        if (!hs.R.count(a)) levi.insert(a);
    for (auto& c : fan.cones)
        if (!is_smooth_pair(hs.G, levi, c.colors)) return false;
    return true;
}

std::string to_string(CaseKind k)
{
    switch (k) {
    case CaseKind::Case0: return "case0";
    case CaseKind::Case1: return "case1";
    case CaseKind::Case2: return "case2";
    default: return "other";
    }
}

namespace {

// key for ordering edges with equal a-coefficients: G-stable edges first
std::pair<int, RootId> edge_key(const Edge& e) { return e.color ? std::pair{1, *e.color} : std::pair{0, RootId{}}; }

// c_k with target = sum c_k rays[k], c[first] = 0, shifted so min c = 0;
// returns the indices sorted by (c, key) and the sorted c
std::optional<std::pair<std::vector<int>, IVec>> coefficients(const std::vector<Edge>& es,
                                                              const std::vector<int>& part, const IVec& target)
{
    QMat cols;
    for (size_t k = 1; k < part.size(); ++k) cols.push_back(to_qvec(es[part[k]].ray));
    QVec coef;
    if (cols.empty()) {
        if (std::any_of(target.begin(), target.end(), [](long x) { return x != 0; })) return std::nullopt;
    } else {
        auto sol = solve(transpose(cols), to_qvec(target));
        if (!sol || !is_integral(*sol)) return std::nullopt;
        coef = *sol;
    }
    IVec c{0};
    for (auto& q : coef) c.push_back(q.get_num().get_si());
    long lo = *std::min_element(c.begin(), c.end());
    for (auto& x : c) x -= lo;
    std::vector<int> order(part.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (c[x] != c[y]) return c[x] < c[y];
        return edge_key(es[part[x]]) < edge_key(es[part[y]]);
    });
    std::vector<int> idx;
    IVec a;
    for (int o : order) {
        idx.push_back(part[o]);
        a.push_back(c[o]);
    }
    return std::pair{idx, a};
}

IVec sum_rays(const std::vector<Edge>& es, const std::vector<int>& part, size_t n)
{
    IVec s(n, 0);
    for (int k : part)
        for (size_t j = 0; j < n; ++j) s[j] += es[k].ray[j];
    return s;
}

bool all_zero(const IVec& v)
{
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

}  // namespace

CaseData case_detect(const HomSpaceData& hs, const ColoredFan& fan)
{
    CaseData out;
    size_t n = hs.rank();
    if (picard_rank(hs, fan) != 2) return out;
    if (n == 0) {
        if (hs.R.size() == 2) out.kind = CaseKind::Case0;
        return out;
    }
    auto es = edges(fan);
    auto fx = fan_colors(fan);
    std::vector<RootId> outside;
    for (auto& a : hs.R)
        if (!fx.count(a)) outside.push_back(a);

    if (es.size() == n + 1 && outside.size() == 1) {
        std::vector<int> all(es.size());
        std::iota(all.begin(), all.end(), 0);
        if (!all_zero(sum_rays(es, all, n))) return out;
        auto c = coefficients(es, all, sigma(hs, outside[0]));
        if (!c) return out;
        out.kind = CaseKind::Case1;
        out.u = c->first;
        out.a = c->second;
        out.beta = outside[0];
        return out;
    }
    if (es.size() == n + 2 && outside.empty()) {
        // maximal cones omit one edge from each part
        size_t m = es.size();
        std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
        auto maxi = maximal_cones(fan);
        for (int ci : maxi) {
            std::vector<int> missing;
            for (size_t k = 0; k < m; ++k)
                if (std::find(fan.cones[ci].generators.begin(), fan.cones[ci].generators.end(), es[k].ray) ==
                    fan.cones[ci].generators.end())
                    missing.push_back(int(k));
            if (missing.size() != 2) return out;
            adj[missing[0]][missing[1]] = adj[missing[1]][missing[0]] = true;
        }
        std::vector<int> side(m, -1);
        side[0] = 0;
        for (size_t k = 1; k < m; ++k) side[k] = adj[0][k] ? 1 : 0;
        std::vector<int> p0, p1;
        for (size_t k = 0; k < m; ++k) (side[k] == 0 ? p0 : p1).push_back(int(k));
        for (size_t x = 0; x < m; ++x)
            for (size_t y = 0; y < m; ++y)
                if (x != y && adj[x][y] != (side[x] != side[y])) return out;
        if (p0.size() < 2 || p1.size() < 2) return out;
        std::vector<int> U = p0, V = p1;
        if (!all_zero(sum_rays(es, p0, n))) std::swap(U, V);
        if (!all_zero(sum_rays(es, U, n))) return out;
        auto c = coefficients(es, U, sum_rays(es, V, n));
        if (!c) return out;
        std::sort(V.begin(), V.end(), [&](int x, int y) { return edge_key(es[x]) < edge_key(es[y]); });
        out.kind = CaseKind::Case2;
        out.u = c->first;
        out.a = c->second;
        out.v = V;
        out.r = int(U.size()) - 1;
        out.s = int(V.size()) - 1;
        return out;
    }
    return out;
}

}  // namespace horokit
