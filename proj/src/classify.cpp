#include "horokit/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <type_traits>

namespace horokit {

namespace {

RootSet nontrivial(const std::vector<RootId>& v)
{
    RootSet s;
    for (auto& x : v)
        if (!x.trivial()) s.insert(x);
    return s;
}

// dim G / (intersection of the P(w_alpha), alpha in R)
int gp(const GroupProduct& G, const RootSet& R)
{
    RootSet levi;
    for (auto& x : all_simple_roots(G))
        if (!R.count(x)) levi.insert(x);
    return flag_dimension(G, levi);
}

int gp(const GroupProduct& G, std::initializer_list<RootId> roots) { return gp(G, nontrivial(roots)); }

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

std::string roots_string(const std::vector<RootId>& v)
{
    std::vector<std::string> p;
    for (auto& x : v) p.push_back(to_string(x));
    return "[" + join(p) + "]";
}

std::string ints_string(const IVec& v)
{
    std::vector<std::string> p;
    for (long x : v) p.push_back(std::to_string(x));
    return "[" + join(p) + "]";
}

bool valid_root(const GroupProduct& G, const RootId& r)
{
    try {
        check_root(G, r);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void check_a(const IVec& a, size_t len, std::vector<std::string>& out)
{
    if (a.size() != len) {
        out.push_back("a has " + std::to_string(a.size()) + " entries, expected " + std::to_string(len));
        return;
    }
    if (a.empty() || a[0] != 0) out.push_back("a_0 must be 0");
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] < a[i - 1]) out.push_back("a is not nondecreasing");
}

void check_alphas(const GroupProduct& G, const std::vector<RootId>& al, std::vector<std::string>& out)
{
    for (auto& x : al)
        if (!valid_root(G, x)) out.push_back("invalid root " + to_string(x));
    for (size_t i = 0; i < al.size(); ++i)
        for (size_t j = i + 1; j < al.size(); ++j)
            if (al[i] == al[j]) out.push_back("alpha_" + std::to_string(i) + " = alpha_" + std::to_string(j));
}

std::vector<std::string> structural(const X1Spec& s)
{
    std::vector<std::string> out;
    if (s.G.factors.empty() || !s.G.factors[0].is_simple()) {
        out.push_back("G_0 must be simple");
        return out;
    }
    if (s.beta.factor != 0 || s.beta.trivial() || !valid_root(s.G, s.beta)) out.push_back("beta must be a simple root of G_0");
    if (s.n() < 1) out.push_back("n must be at least 1");
    check_a(s.a, s.alphas.size(), out);
    check_alphas(s.G, s.alphas, out);
    for (auto& x : s.alphas)
        if (x == s.beta) out.push_back("alpha equals beta");
    return out;
}

std::vector<std::string> structural(const X2Spec& s)
{
    std::vector<std::string> out;
    if (s.G.factors.size() < 2) out.push_back("t must be at least 1");
    if (s.n() < 2) {
        out.push_back("n must be at least 2");
        return out;
    }
    check_a(s.a, size_t(s.n()), out);
    check_alphas(s.G, s.alphas, out);
    return out;
}

// short extremal root of a type A or C factor
bool extremal_ac(const SimpleFactor& f, int idx)
{
    if (f.family == Family::A) return idx == 1 || idx == f.rank;
    if (f.family == Family::C) return idx == 1;
    return false;
}

// dimension of the defining module in the gathering lemmas
int module_dim(const SimpleFactor& f)
{
    switch (f.family) {
    case Family::Torus:
    case Family::Trivial: return 1;
    case Family::A: return f.rank + 1;
    case Family::C: return 2 * f.rank;
    default: throw Error(ErrorCode::UnsupportedCase, "no gathering for " + to_string(f));
    }
}

// same simple subgroup of P(w_beta): same non-G_0 simple factor, or same
// component of the Levi of beta in G_0
std::optional<TripleResult> levi_pair(const GroupProduct& G, const RootId& beta, const RootId& x, const RootId& y)
{
    if (x.factor != y.factor || x.trivial() || y.trivial()) return std::nullopt;
    auto& f = G.factors[x.factor];
    if (x.factor != beta.factor) return smooth_triple(f, x.index, y.index);
    std::set<int> levi;
    for (int i = 1; i <= f.rank; ++i)
        if (i != beta.index) levi.insert(i);
    for (auto& c : components(f, levi))
        if (c.internal(x.index) && c.internal(y.index)) return smooth_triple(c, x.index, y.index);
    return std::nullopt;
}

// homogeneous G'/P(w_beta') equal to the orbit closure of a non two-orbit triple
std::pair<SimpleFactor, int> gather_triple(const SimpleFactor& f, int x, int y)
{
    auto t = smooth_triple(f, x, y);
    int lo = std::min(x, y);
    switch (t.table_case) {
    case 1: {
        auto c = make_factor(Family::D, f.rank + 1);
        return {c.factor, c.relabel[1]};
    }
    case 2: return {SimpleFactor{Family::A, f.rank + 1}, lo + 1};
    case 6: return {SimpleFactor{Family::B, f.rank}, f.rank};
    default: break;
    }
    throw Error(ErrorCode::UnsupportedCase, "triple is not of homogeneous type");
}

int min_label(const SimpleFactor& f, int idx)
{
    int best = idx;
    if (!f.is_simple()) return idx;
    for (auto& p : diagram_symmetries(f)) best = std::min(best, p[idx]);
    return best;
}

// ---- rewrite state ----

struct Work {
    bool two = false;
    std::vector<SimpleFactor> F;
    RootId beta;
    std::vector<RootId> al;
    IVec a;
    std::optional<NormalForm> done;

    GroupProduct group() const { return GroupProduct{F}; }
    int n() const { return int(al.size()) - (two ? 2 : 1); }
    int r() const { return n() - 1; }
};

Work from(const X1Spec& s) { return Work{false, s.G.factors, s.beta, s.alphas, s.a, std::nullopt}; }
Work from(const X2Spec& s) { return Work{true, s.G.factors, {}, s.alphas, s.a, std::nullopt}; }
X1Spec as_x1(const Work& w) { return X1Spec{w.group(), w.beta, w.al, w.a}; }
X2Spec as_x2(const Work& w) { return X2Spec{w.group(), w.al, w.a}; }

void erase_factor(Work& w, int f)
{
    w.F.erase(w.F.begin() + f);
    auto fix = [&](RootId& x) {
        if (x.factor > f) --x.factor;
    };
    fix(w.beta);
    for (auto& x : w.al) fix(x);
}

bool used(const Work& w, int f)
{
    if (!w.two && w.beta.factor == f) return true;
    return std::any_of(w.al.begin(), w.al.end(), [&](const RootId& x) { return x.factor == f; });
}

void drop_unused(Work& w)
{
    for (int f = int(w.F.size()) - 1; f >= 0; --f)
        if (!used(w, f)) erase_factor(w, f);
}

// factors in the order given; roots follow
void reorder_factors(Work& w, const std::vector<int>& order)
{
    std::vector<int> pos(w.F.size());
    std::vector<SimpleFactor> F;
    for (size_t k = 0; k < order.size(); ++k) {
        pos[order[k]] = int(k);
        F.push_back(w.F[order[k]]);
    }
    w.F = F;
    if (!w.two) w.beta.factor = pos[w.beta.factor];
    for (auto& x : w.al) x.factor = pos[x.factor];
}

PicardOne single(const SimpleFactor& f, int idx) { return PicardOne{GroupProduct{{f}}, {RootId{0, idx}}}; }

PicardOne canonical_part(PicardOne p)
{
    if (p.roots.size() == 2 && p.G.factors.size() == 1) {
        auto& f = p.G.factors[0];
        int x = p.roots[0].index, y = p.roots[1].index;
        if (smooth_triple(f, x, y).kind == TripleKind::Homogeneous) {
            auto [g, b] = gather_triple(f, x, y);
            p = single(g, b);
        }
    }
    if (p.roots.size() == 1) {
        auto& f = p.G.factors[0];
        int idx = p.roots[0].index;
        if (f.is_simple()) {
            auto c = universal_cover(f, idx);
            if (c.changed) f = c.factor, idx = c.beta;
            idx = min_label(f, idx);
        }
        p.roots[0].index = idx;
        return p;
    }
    auto& f = p.G.factors[0];
    std::pair<int, int> best{1 << 20, 0};
    auto kind = smooth_triple(f, p.roots[0].index, p.roots[1].index).kind;
    for (auto& q : diagram_symmetries(f)) {
        int x = q[p.roots[0].index], y = q[p.roots[1].index];
        // the triple table is literal, not up to triality
        if (smooth_triple(f, x, y).kind != kind) continue;
        best = std::min(best, std::pair{std::min(x, y), std::max(x, y)});
    }
    p.roots = {RootId{0, best.first}, RootId{0, best.second}};
    return p;
}

NormalForm product_form(std::vector<PicardOne> parts)
{
    for (auto& p : parts) p = canonical_part(p);
    std::sort(parts.begin(), parts.end(),
              [](const PicardOne& x, const PicardOne& y) { return to_string(x) < to_string(y); });
    NormalForm f;
    bool homogeneous = std::all_of(parts.begin(), parts.end(), [](const PicardOne& p) { return p.roots.size() == 1; });
    if (homogeneous && parts.size() == 2) {
        f.kind = NFKind::Case0;
        for (auto& p : parts) {
            f.roots.push_back({int(f.G.factors.size()), p.roots[0].index});
            f.G.factors.push_back(p.G.factors[0]);
        }
        return f;
    }
    f.kind = NFKind::Product;
    f.factors = parts;
    return f;
}

// the Picard rank one variety spanned by the v side of a Case 2 state
PicardOne end_pair(const Work& w)
{
    int n = w.n();
    auto x = w.al[n], y = w.al[n + 1];
    if (x.factor == y.factor) return PicardOne{GroupProduct{{w.F[x.factor]}}, {{0, x.index}, {0, y.index}}};
    int d = module_dim(w.F[x.factor]) + module_dim(w.F[y.factor]);
    return single({Family::A, d - 1}, 1);
}

int work_dim(const Work& w)
{
    if (w.done) return dimension(*w.done);
    return w.two ? open_orbit_dimension(as_x2(w)) : open_orbit_dimension(as_x1(w));
}

std::string describe(const Work& w)
{
    if (w.done) return to_string(*w.done);
    return w.two ? to_string(as_x2(w)) : to_string(as_x1(w));
}

// ---- rules ----

bool rule_merge(Work& w)
{
    int last = w.two ? w.r() : w.n();
    for (int i = 0; i <= last; ++i)
        for (int j = i + 1; j <= last; ++j) {
            auto &x = w.al[i], &y = w.al[j];
            if (w.a[i] != w.a[j] || x.factor == y.factor) continue;
            if (!w.two && (x.factor == 0 || y.factor == 0)) continue;
            int d = module_dim(w.F[x.factor]) + module_dim(w.F[y.factor]);
            int fy = y.factor;
            w.F[x.factor] = {Family::A, d - 1};
            x.index = 1;
            w.al.erase(w.al.begin() + j);
            w.a.erase(w.a.begin() + j);
            erase_factor(w, fy);
            if (!w.two && w.n() == 0) {
                w.done = product_form({single(w.F[w.beta.factor], w.beta.index), single(w.F[w.al[0].factor], 1)});
            } else if (w.two && w.r() == 0) {
                w.done = product_form({single(w.F[w.al[0].factor], 1), end_pair(w)});
            }
            return true;
        }
    return false;
}

bool rule_type_c(Work& w)
{
    int last = w.two ? w.r() : w.n();
    for (int i = 0; i <= last; ++i) {
        auto& x = w.al[i];
        if (!w.two && x.factor == 0) continue;
        auto& f = w.F[x.factor];
        if (f.family != Family::C || x.index != 1) continue;
        int carried = 0;
        for (auto& y : w.al)
            if (y.factor == x.factor) ++carried;
        if (carried != 1) continue;
        f = {Family::A, 2 * f.rank - 1};
        return true;
    }
    return false;
}

bool rule_cover(Work& w)
{
    if (w.two) return false;
    for (auto& x : w.al)
        if (x.factor == 0) return false;
    auto c = universal_cover(w.F[0], w.beta.index);
    if (!c.changed) return false;
    w.F[0] = c.factor;
    w.beta.index = c.beta;
    return true;
}

bool rule_convert(Work& w)
{
    if (!w.two) return false;
    int n = w.n();
    auto x = w.al[n], y = w.al[n + 1];
    SimpleFactor g;
    int b = 1;
    if (x.factor != y.factor) {
        g = {Family::A, module_dim(w.F[x.factor]) + module_dim(w.F[y.factor]) - 1};
    } else {
        if (smooth_triple(w.F[x.factor], x.index, y.index).kind != TripleKind::Homogeneous) return false;
        std::tie(g, b) = gather_triple(w.F[x.factor], x.index, y.index);
    }
    Work out;
    out.F.push_back(g);
    out.beta = {0, b};
    std::vector<int> keep;
    for (int f = 0; f < int(w.F.size()); ++f)
        if (f != x.factor && f != y.factor) keep.push_back(f);
    for (int f : keep) out.F.push_back(w.F[f]);
    for (int i = 0; i < n; ++i) {
        auto z = w.al[i];
        z.factor = 1 + int(std::find(keep.begin(), keep.end(), z.factor) - keep.begin());
        out.al.push_back(z);
    }
    out.a = w.a;
    w = out;
    return true;
}

bool rule_product(Work& w)
{
    if (w.a.size() < 2 || w.a[1] != 0) return false;
    auto x = w.al[0], y = w.al[1];
    if (x.factor != y.factor || x.trivial() || y.trivial()) return false;
    if (!w.two) {
        if (w.n() != 1 || x.factor == 0) return false;
        w.done = product_form({single(w.F[0], w.beta.index),
                               PicardOne{GroupProduct{{w.F[x.factor]}}, {{0, x.index}, {0, y.index}}}});
        return true;
    }
    if (w.r() != 1) return false;
    w.done = product_form({PicardOne{GroupProduct{{w.F[x.factor]}}, {{0, x.index}, {0, y.index}}}, end_pair(w)});
    return true;
}

bool apply(Rule r, Work& w)
{
    switch (r) {
    case Rule::Merge: return rule_merge(w);
    case Rule::TypeC: return rule_type_c(w);
    case Rule::Cover: return rule_cover(w);
    case Rule::Convert: return rule_convert(w);
    case Rule::Product: return rule_product(w);
    }
    return false;
}

// ---- canonical representatives ----

// within runs of equal a: roots outside G_0 first, then G_0 roots by label
void sort_ties(std::vector<RootId>& al, const IVec& a)
{
    size_t i = 0;
    while (i < al.size()) {
        size_t j = i;
        while (j < al.size() && a[j] == a[i]) ++j;
        std::stable_sort(al.begin() + long(i), al.begin() + long(j), [](const RootId& x, const RootId& y) {
            bool gx = x.factor == 0, gy = y.factor == 0;
            if (gx != gy) return !gx;
            return gx && x.index < y.index;
        });
        i = j;
    }
}

// best diagram symmetry of each non-distinguished simple factor
void canonical_labels(Work& w, int skip)
{
    for (int f = 0; f < int(w.F.size()); ++f) {
        if (f == skip || !w.F[f].is_simple()) continue;
        std::vector<int> idx;
        for (auto& x : w.al)
            if (x.factor == f) idx.push_back(x.index);
        std::vector<int> best;
        std::vector<int> best_p;
        auto kind = [&](const std::vector<int>& v) {
            return v.size() == 2 ? smooth_triple(w.F[f], v[0], v[1]).kind : TripleKind::NotSmooth;
        };
        for (auto& p : diagram_symmetries(w.F[f])) {
            std::vector<int> m;
            for (int i : idx) m.push_back(p[i]);
            if (kind(m) != kind(idx)) continue;
            if (best_p.empty() || m < best) best = m, best_p = p;
        }
        for (auto& x : w.al)
            if (x.factor == f) x.index = best_p[x.index];
    }
}

void order_by_alphas(Work& w, bool g0_first)
{
    std::vector<int> order;
    if (g0_first) order.push_back(0);
    for (auto& x : w.al)
        if (std::find(order.begin(), order.end(), x.factor) == order.end()) order.push_back(x.factor);
    reorder_factors(w, order);
}

Work canonical_work(Work w)
{
    drop_unused(w);
    if (!w.two) {
        // G_0 first
        std::vector<int> order{w.beta.factor};
        for (int f = 0; f < int(w.F.size()); ++f)
            if (f != w.beta.factor) order.push_back(f);
        reorder_factors(w, order);
        canonical_labels(w, 0);
        Work best = w;
        bool first = true;
        std::pair<int, std::vector<RootId>> best_key;
        auto quad = [](const Work& c) {
            std::set<int> R0;
            for (auto& x : c.al)
                if (x.factor == 0) R0.insert(x.index);
            return is_smooth_quadruple(c.F[0], c.beta.index, R0, c.n());
        };
        bool smooth = quad(w);
        for (auto& p : diagram_symmetries(w.F[0])) {
            Work c = w;
            c.beta.index = p[c.beta.index];
            for (auto& x : c.al)
                if (x.factor == 0) x.index = p[x.index];
            if (quad(c) != smooth) continue;
            sort_ties(c.al, c.a);
            std::pair<int, std::vector<RootId>> key{c.beta.index, c.al};
            if (first || key < best_key) best = c, best_key = key, first = false;
        }
        w = best;
        order_by_alphas(w, true);
        // a torus whose trivial root became alpha_0 acts through the others
        if (w.F.size() > 1 && w.al[0].factor == 1 && w.F[1].family == Family::Torus) w.F[1].family = Family::Trivial, w.F[1].rank = 0;
        return w;
    }
    int n = w.n();
    canonical_labels(w, -1);
    auto &x = w.al[n], &y = w.al[n + 1];
    if (x.factor == y.factor && y.index < x.index) std::swap(x, y);
    order_by_alphas(w, false);
    return w;
}

}  // namespace

// ---- strings ----

std::string to_string(const X1Spec& s)
{
    return "X1(" + to_string(s.G) + "; " + to_string(s.beta) + "; " + roots_string(s.alphas) + "; " + ints_string(s.a) + ")";
}

std::string to_string(const X2Spec& s)
{
    return "X2(" + to_string(s.G) + "; " + roots_string(s.alphas) + "; " + ints_string(s.a) + ")";
}

std::string to_string(RCTag t)
{
    switch (t) {
    case RCTag::A: return "a";
    case RCTag::B: return "b";
    case RCTag::C: return "c";
    }
    return "?";
}

std::string to_string(NFKind k)
{
    switch (k) {
    case NFKind::Case0: return "case0";
    case NFKind::X1: return "x1";
    case NFKind::X2: return "x2";
    case NFKind::Product: return "product";
    }
    return "?";
}

std::string to_string(Rule r)
{
    switch (r) {
    case Rule::Merge: return "merge";
    case Rule::TypeC: return "type-c";
    case Rule::Cover: return "cover";
    case Rule::Convert: return "convert";
    case Rule::Product: return "product";
    }
    return "?";
}

std::string to_string(FiberClass c)
{
    switch (c) {
    case FiberClass::ProjectiveSpace: return "projective-space";
    case FiberClass::HomogeneousNonPS: return "homogeneous";
    case FiberClass::TwoOrbit: return "two-orbit";
    }
    return "?";
}

std::string to_string(const PicardOne& p) { return to_string(p.G) + roots_string(p.roots); }

std::string to_string(const NormalForm& f)
{
    switch (f.kind) {
    case NFKind::Case0: return "Case0(" + to_string(f.G) + "; " + roots_string(f.roots) + ")";
    case NFKind::X1: return to_string(*f.x1) + " rc=" + to_string(f.rc);
    case NFKind::X2: return to_string(*f.x2) + " rc=" + to_string(f.rc);
    case NFKind::Product: {
        std::vector<std::string> p;
        for (auto& x : f.factors) p.push_back(to_string(x));
        return "Product(" + join(p) + ")";
    }
    }
    return "?";
}

int PicardOne::dimension() const
{
    RootSet R(roots.begin(), roots.end());
    return gp(G, R) + (roots.size() == 2 ? 1 : 0);
}

int dimension(const NormalForm& f)
{
    switch (f.kind) {
    case NFKind::Case0: return gp(f.G, RootSet(f.roots.begin(), f.roots.end()));
    case NFKind::X1: return open_orbit_dimension(*f.x1);
    case NFKind::X2: return open_orbit_dimension(*f.x2);
    case NFKind::Product: {
        int d = 0;
        for (auto& p : f.factors) d += p.dimension();
        return d;
    }
    }
    return 0;
}

// ---- definition constraints ----

std::vector<std::string> spec_violations(const X1Spec& s)
{
    auto out = structural(s);
    if (!out.empty()) return out;
    int t = int(s.G.factors.size()) - 1;
    // n + 1 alphas fill at most n + 1 extra factors
    if (t > s.n() + 1) out.push_back("more factors than alphas");
    for (int k = 1; k <= t; ++k) {
        bool trivial = s.G.factors[k].family == Family::Trivial;
        bool expected = k == 1 && s.alphas[0] == RootId{1, 0};
        if (trivial != expected) out.push_back("G_" + std::to_string(k) + " = {1} must carry exactly the trivial alpha_0");
    }
    return out;
}

std::vector<std::string> spec_violations(const X2Spec& s)
{
    auto out = structural(s);
    if (!out.empty()) return out;
    int t = int(s.G.factors.size()) - 1, n = s.n();
    for (int k = 0; k <= t; ++k) {
        bool trivial = s.G.factors[k].family == Family::Trivial;
        bool expected = (k == 0 && s.alphas[0] == RootId{0, 0}) || (k == t && s.alphas[n + 1] == RootId{t, 0});
        if (trivial != expected) out.push_back("G_" + std::to_string(k) + " = {1} only at the ends with a trivial alpha");
    }
    return out;
}

std::vector<std::string> smoothness_violations(const X1Spec& s)
{
    std::vector<std::string> out;
    std::set<int> R0;
    for (auto& x : s.alphas)
        if (x.factor == 0) R0.insert(x.index);
    if (!is_smooth_quadruple(s.G.factors[0], s.beta.index, R0, s.n())) out.push_back("quadruple (G_0,beta,R_0,n) is not smooth");
    std::map<int, std::vector<int>> by_factor;
    for (int i = 0; i <= s.n(); ++i)
        if (s.alphas[i].factor != 0 && !s.alphas[i].trivial()) by_factor[s.alphas[i].factor].push_back(i);
    for (auto& [f, idx] : by_factor) {
        auto& g = s.G.factors[f];
        if (idx.size() > 1) {
            if (s.n() != 1) out.push_back("two alphas in one factor G_" + std::to_string(f) + " with n > 1");
            else if (smooth_triple(g, s.alphas[0].index, s.alphas[1].index).kind == TripleKind::NotSmooth)
                out.push_back("triple (G_" + std::to_string(f) + ",alpha_0,alpha_1) is not smooth");
        } else if (!extremal_ac(g, s.alphas[idx[0]].index)) {
            out.push_back("alpha_" + std::to_string(idx[0]) + " is not a short extremal root of a type A or C factor");
        }
    }
    return out;
}

std::vector<std::string> smoothness_violations(const X2Spec& s)
{
    std::vector<std::string> out;
    int n = s.n(), r = s.r();
    std::map<int, std::vector<int>> by_factor;
    for (int i = 0; i <= n + 1; ++i)
        if (!s.alphas[i].trivial()) by_factor[s.alphas[i].factor].push_back(i);
    for (auto& [f, idx] : by_factor) {
        auto& g = s.G.factors[f];
        if (idx.size() > 2) {
            out.push_back("more than two alphas in G_" + std::to_string(f));
        } else if (idx.size() == 2) {
            bool front = r == 1 && idx[0] == 0 && idx[1] == 1;
            bool back = idx[0] == n && idx[1] == n + 1;
            if (!front && !back) out.push_back("alphas " + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + " share G_" + std::to_string(f));
            else if (smooth_triple(g, s.alphas[idx[0]].index, s.alphas[idx[1]].index).kind == TripleKind::NotSmooth)
                out.push_back("triple in G_" + std::to_string(f) + " is not smooth");
        } else if (!extremal_ac(g, s.alphas[idx[0]].index)) {
            out.push_back("alpha_" + std::to_string(idx[0]) + " is not a short extremal root of a type A or C factor");
        }
    }
    return out;
}

// ---- builders ----

namespace {

[[noreturn]] void invalid(const std::vector<std::string>& v)
{
    throw Error(ErrorCode::SpecInvariantViolated, join(v));
}

ColoredCone cone_of(const std::vector<IVec>& rays, const std::vector<std::optional<RootId>>& col, const std::vector<int>& omit)
{
    ColoredCone c;
    for (int i = 0; i < int(rays.size()); ++i) {
        if (std::find(omit.begin(), omit.end(), i) != omit.end()) continue;
        c.generators.push_back(rays[i]);
        if (col[i]) c.colors.insert(*col[i]);
    }
    return c;
}

std::vector<std::optional<RootId>> colors_of(const std::vector<RootId>& al)
{
    std::vector<std::optional<RootId>> out;
    for (auto& x : al) out.push_back(x.trivial() ? std::nullopt : std::optional<RootId>(x));
    return out;
}

}  // namespace

BuiltVariety build_x1(const X1Spec& s)
{
    auto v = structural(s);
    if (!v.empty()) invalid(v);
    int n = s.n();
    BuiltVariety b;
    b.hs.G = s.G;
    b.hs.R = nontrivial(s.alphas);
    b.hs.R.insert(s.beta);
    auto w0 = fundamental_weight(s.G, s.alphas[0]), wb = fundamental_weight(s.G, s.beta);
    for (int i = 1; i <= n; ++i)
        b.hs.M_basis.push_back(add(sub(fundamental_weight(s.G, s.alphas[i]), w0), scale(wb, s.a[i])));
    check_hom_space(b.hs);
    std::vector<IVec> rays{IVec(n, -1)};
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    auto col = colors_of(s.alphas);
    std::vector<ColoredCone> cones;
    for (int m = 0; m <= n; ++m) cones.push_back(cone_of(rays, col, {m}));
    b.fan = fan_from_cones(b.hs, cones);
    return b;
}

BuiltVariety build_x2(const X2Spec& s)
{
    auto v = structural(s);
    if (!v.empty()) invalid(v);
    int n = s.n(), r = s.r();
    BuiltVariety b;
    b.hs.G = s.G;
    b.hs.R = nontrivial(s.alphas);
    auto w0 = fundamental_weight(s.G, s.alphas[0]);
    auto wn = fundamental_weight(s.G, s.alphas[n]), wl = fundamental_weight(s.G, s.alphas[n + 1]);
    for (int i = 1; i <= r; ++i)
        b.hs.M_basis.push_back(add(sub(fundamental_weight(s.G, s.alphas[i]), w0), scale(wl, s.a[i])));
    b.hs.M_basis.push_back(sub(wn, wl));
    check_hom_space(b.hs);
    std::vector<IVec> rays{IVec(n, 0)};
    for (int i = 0; i < r; ++i) rays[0][i] = -1;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    IVec last(n, 0);
    for (int i = 0; i < r; ++i) last[i] = s.a[i + 1];
    last[r] = -1;
    rays.push_back(last);
    auto col = colors_of(s.alphas);
    std::vector<ColoredCone> cones;
    for (int i = 0; i <= r; ++i)
        for (int j = n; j <= n + 1; ++j) cones.push_back(cone_of(rays, col, {i, j}));
    b.fan = fan_from_cones(b.hs, cones);
    return b;
}

int open_orbit_dimension(const X1Spec& s)
{
    auto R = nontrivial(s.alphas);
    R.insert(s.beta);
    return gp(s.G, R) + s.n();
}

int open_orbit_dimension(const X2Spec& s) { return gp(s.G, nontrivial(s.alphas)) + s.n(); }

// ---- restricted conditions ----

RCResult check_rc1(const X1Spec& s)
{
    auto fail = [](std::string why) { return RCResult{std::nullopt, std::move(why)}; };
    auto v = spec_violations(s);
    if (!v.empty()) return fail("not a valid spec: " + v[0]);
    int n = s.n(), t = int(s.G.factors.size()) - 1;
    auto& G0 = s.G.factors[0];
    std::set<int> R0;
    for (auto& x : s.alphas)
        if (x.factor == 0) R0.insert(x.index);
    if (!is_smooth_quadruple(G0, s.beta.index, R0, n)) return fail("the quadruple (G_0,beta,R_0,n) is not smooth");
    if (R0.empty() && universal_cover(G0, s.beta.index).changed)
        return fail("R_0 is empty and G_0 is not the universal cover of Aut(G_0/P(w_beta))");
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (s.a[i] != s.a[j]) continue;
            auto I = std::to_string(i), J = std::to_string(j);
            if (s.alphas[j].factor != 0) return fail("a_" + I + "=a_" + J + " but alpha_" + J + " not a simple root of G_0");
            if (s.alphas[i].factor == 0 && s.alphas[i].index > s.alphas[j].index)
                return fail("alpha_" + I + ", alpha_" + J + " not in Bourbaki order");
        }
    auto& x = s.alphas[0];
    if (n == 1 && t == 1 && x.factor == 1 && s.alphas[1].factor == 1 && !x.trivial() &&
        smooth_triple(s.G.factors[1], x.index, s.alphas[1].index).kind != TripleKind::NotSmooth)
        return RCResult{RCTag::A, {}};
    int next = 1;
    for (int i = 0; i <= n; ++i) {
        auto& y = s.alphas[i];
        if (y.factor == 0) continue;
        if (y.factor != next) return fail("alphas outside G_0 do not fill G_1..G_t in order");
        ++next;
        auto& f = s.G.factors[y.factor];
        bool ok = f.family == Family::A ? y.index == 1 : !f.is_simple();
        if (!ok) return fail("G_" + std::to_string(y.factor) + " is not SL_d with alpha its first root, C* or {1}");
    }
    if (next != t + 1) return fail("alphas outside G_0 do not fill G_1..G_t in order");
    return RCResult{s.alphas[n].trivial() ? RCTag::C : RCTag::B, {}};
}

RCResult check_rc2(const X2Spec& s)
{
    auto fail = [](std::string why) { return RCResult{std::nullopt, std::move(why)}; };
    auto v = spec_violations(s);
    if (!v.empty()) return fail("not a valid spec: " + v[0]);
    int n = s.n(), t = int(s.G.factors.size()) - 1;
    for (int i = 1; i < n; ++i)
        if (s.a[i] <= s.a[i - 1]) return fail("a is not strictly increasing");
    auto &x = s.alphas[n], &y = s.alphas[n + 1];
    if (x.factor != t || y.factor != t || x.trivial() || y.trivial() ||
        smooth_triple(s.G.factors[t], x.index, y.index).kind != TripleKind::TwoOrbit)
        return fail("(G_t,alpha_n,alpha_{n+1}) is not smooth of two-orbit type");
    for (int i = 0; i < n; ++i)
        if (s.alphas[i].factor == t) return fail("alpha_" + std::to_string(i) + " lies in G_t");
    auto &p = s.alphas[0], &q = s.alphas[1];
    if (n == 2 && t == 1 && p.factor == 0 && q.factor == 0 && !p.trivial() && !q.trivial() &&
        smooth_triple(s.G.factors[0], p.index, q.index).kind != TripleKind::NotSmooth)
        return RCResult{RCTag::A, {}};
    if (t != n) return fail("t differs from n");
    for (int i = 0; i < n; ++i) {
        auto& z = s.alphas[i];
        if (z.factor != i) return fail("alpha_" + std::to_string(i) + " is not in G_" + std::to_string(i));
        auto& f = s.G.factors[i];
        bool ok = f.family == Family::A ? z.index == 1 : !f.is_simple();
        if (!ok) return fail("G_" + std::to_string(i) + " is not SL_d with alpha its first root, C* or {1}");
    }
    return RCResult{s.alphas[n - 1].trivial() ? RCTag::C : RCTag::B, {}};
}

// ---- normalization ----

const std::vector<Rule>& default_rule_order()
{
    static const std::vector<Rule> order{Rule::Merge, Rule::TypeC, Rule::Cover, Rule::Convert, Rule::Product};
    return order;
}

X1Spec canonical(const X1Spec& s) { return as_x1(canonical_work(from(s))); }
X2Spec canonical(const X2Spec& s) { return as_x2(canonical_work(from(s))); }

namespace {

Normalization run(Work w, const std::vector<Rule>& order)
{
    Normalization out;
    for (int guard = 0; !w.done; ++guard) {
        if (guard > 1000) throw Error(ErrorCode::NormalizationDivergence, "rewrite did not terminate");
        bool fired = false;
        for (Rule r : order) {
            Work next = w;
            if (!apply(r, next)) continue;
            RewriteStep st{r, describe(w), describe(next), work_dim(w), work_dim(next)};
            if (st.dim_before != st.dim_after)
                throw Error(ErrorCode::NormalizationDivergence, to_string(r) + " changed the dimension: " + st.before);
            out.steps.push_back(st);
            w = next;
            fired = true;
            break;
        }
        if (!fired) break;
    }
    if (w.done) {
        out.result = *w.done;
        return out;
    }
    w = canonical_work(w);
    NormalForm f;
    RCResult rc;
    if (w.two) {
        f.kind = NFKind::X2;
        f.x2 = as_x2(w);
        rc = check_rc2(*f.x2);
    } else {
        f.kind = NFKind::X1;
        f.x1 = as_x1(w);
        rc = check_rc1(*f.x1);
    }
    if (!rc.ok()) throw Error(ErrorCode::NormalizationDivergence, "fixpoint " + describe(w) + " fails: " + rc.reason);
    f.rc = *rc.tag;
    out.result = f;
    return out;
}

template <class Spec>
Normalization normalize_spec(const Spec& raw, const std::vector<Rule>& order)
{
    auto v = spec_violations(raw);
    if (!v.empty()) invalid(v);
    auto sm = smoothness_violations(raw);
    if (!sm.empty()) throw Error(ErrorCode::NotSmoothInput, sm[0]);
    return run(from(raw), order);
}

}  // namespace

Normalization normalize_traced(const X1Spec& raw, const std::vector<Rule>& order) { return normalize_spec(raw, order); }
Normalization normalize_traced(const X2Spec& raw, const std::vector<Rule>& order) { return normalize_spec(raw, order); }
NormalForm normalize(const X1Spec& raw) { return normalize_traced(raw).result; }
NormalForm normalize(const X2Spec& raw) { return normalize_traced(raw).result; }

// ---- exceptional loci and fibers ----

namespace {

template <class Spec>
void require_restricted(const Spec& s)
{
    RCResult rc;
    if constexpr (std::is_same_v<Spec, X1Spec>) rc = check_rc1(s);
    else rc = check_rc2(s);
    if (!rc.ok()) throw Error(ErrorCode::NotRestricted, rc.reason);
}

}  // namespace

std::vector<int> block_starts(const IVec& a)
{
    std::vector<int> out{0};
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != a[i - 1]) out.push_back(int(i));
    return out;
}

std::vector<LocusRecord> exceptional_loci(const X1Spec& s)
{
    require_restricted(s);
    int n = s.n();
    auto starts = block_starts(s.a);
    int k = int(starts.size()) - 1;
    auto wb = fundamental_weight(s.G, s.beta);
    std::vector<LocusRecord> out;
    for (int l = 0; l <= k; ++l) {
        int hi = l < k ? starts[l + 1] : n + 1;
        LocusRecord rec;
        rec.l = l;
        for (int i = hi; i <= n; ++i) rec.I.push_back(i);
        std::vector<RootId> sub(s.alphas.begin(), s.alphas.begin() + hi);
        for (int i = 0; i < hi; ++i) rec.weights.push_back(add(fundamental_weight(s.G, s.alphas[i]), scale(wb, 1 + s.a[i])));
        rec.rank = hi - 1;
        auto R = nontrivial(sub);
        R.insert(s.beta);
        rec.dim = gp(s.G, R) + rec.rank;
        if (rec.rank >= 1) rec.x1 = X1Spec{s.G, s.beta, sub, IVec(s.a.begin(), s.a.begin() + hi)};
        out.push_back(rec);
    }
    return out;
}

std::vector<LocusRecord> exceptional_loci(const X2Spec& s)
{
    require_restricted(s);
    int n = s.n(), r = s.r();
    auto wn = fundamental_weight(s.G, s.alphas[n]), wl = fundamental_weight(s.G, s.alphas[n + 1]);
    std::vector<LocusRecord> out;
    for (int i = 0; i <= r; ++i) {
        LocusRecord rec;
        rec.l = i;
        for (int j = i + 1; j <= r; ++j) rec.I.push_back(j);
        std::vector<RootId> sub(s.alphas.begin(), s.alphas.begin() + i + 1);
        for (int j = 0; j <= i; ++j)
            for (long b = 0; b <= 1 + s.a[j]; ++b)
                rec.weights.push_back(add(fundamental_weight(s.G, s.alphas[j]), add(scale(wn, b), scale(wl, 1 + s.a[j] - b))));
        sub.push_back(s.alphas[n]);
        sub.push_back(s.alphas[n + 1]);
        rec.rank = i + 1;
        rec.dim = gp(s.G, nontrivial(sub)) + rec.rank;
        if (i >= 1) rec.x2 = X2Spec{s.G, sub, IVec(s.a.begin(), s.a.begin() + i + 1)};
        out.push_back(rec);
    }
    return out;
}

namespace {

bool degenerate(const X1Spec& s)
{
    return s.n() == 1 && levi_pair(s.G, s.beta, s.alphas[0], s.alphas[1]).has_value();
}

bool degenerate(const X2Spec& s)
{
    auto &x = s.alphas[0], &y = s.alphas[1];
    return s.r() == 1 && x.factor == y.factor && !x.trivial() && !y.trivial();
}

std::string flag_name(const RootSet& R)
{
    if (R.empty()) return "pt";
    std::string s = "G/P";
    for (auto& x : R) s += "(" + to_string(x) + ")";
    return s;
}

}  // namespace

std::vector<FiberRow> fiber_dimension_table(const X1Spec& s)
{
    require_restricted(s);
    if (degenerate(s)) throw Error(ErrorCode::DegenerateBranch, "n = 1 with alpha_0, alpha_1 in one simple subgroup of P(w_beta)");
    int n = s.n();
    auto& G = s.G;
    auto starts = block_starts(s.a);
    int k = int(starts.size()) - 1;
    auto loci = exceptional_loci(s);
    std::vector<FiberRow> out;
    for (int l = 0; l <= k; ++l) {
        int il = starts[l], inext = l < k ? starts[l + 1] : n + 1;
        auto& ail = s.alphas[il];
        bool in_r0 = ail.factor == 0;
        FiberRow row;
        row.l = l;
        row.kind = inext - il == 1 ? (in_r0 ? 2 : 1) : (in_r0 ? 4 : 3);
        row.dim_E = loci[l].dim;
        row.dim_E_prev = l == 0 ? gp(G, {s.beta}) - 1 : loci[l - 1].dim;
        row.dim_E_prime = gp(G, {ail});
        RootSet B = nontrivial(std::vector<RootId>(s.alphas.begin(), s.alphas.begin() + il));
        B.insert(s.beta);
        auto dj = [&](int j) {
            auto Bj = B;
            if (!s.alphas[j].trivial()) Bj.insert(s.alphas[j]);
            return il + gp(G, Bj) - gp(G, {s.alphas[j]});
        };
        auto entry = [&](int j, int d, std::string base, int base_dim) {
            auto& aj = s.alphas[j];
            int both = gp(G, {s.beta, aj});
            row.entries.push_back({j, d, std::move(base), base_dim, {both - gp(G, {aj}), both - gp(G, {s.beta})}});
        };
        auto orbit = [&](const RootId& x) { return flag_name(nontrivial({x})); };
        switch (row.kind) {
        case 1: entry(il, 1 + row.dim_E_prev, orbit(ail), row.dim_E_prime); break;
        case 2: entry(il, dj(il), orbit(ail), row.dim_E_prime); break;
        case 3:
            entry(il, 1 + row.dim_E_prev, orbit(ail), row.dim_E_prime);
            for (int j = il + 1; j < inext; ++j)
                entry(j, dj(j), "cone over " + orbit(ail) + " and " + orbit(s.alphas[j]),
                      row.dim_E_prime + gp(G, {s.alphas[j]}) + 1);
            break;
        case 4:
            for (int j = il; j < inext; ++j) entry(j, dj(j), orbit(s.alphas[j]), gp(G, {s.alphas[j]}));
            break;
        }
        out.push_back(row);
    }
    return out;
}

std::vector<FiberRow> fiber_dimension_table(const X2Spec& s)
{
    require_restricted(s);
    if (degenerate(s)) throw Error(ErrorCode::DegenerateBranch, "r = 1 with alpha_0, alpha_1 in one simple factor");
    int n = s.n(), r = s.r();
    auto& G = s.G;
    auto loci = exceptional_loci(s);
    RootSet B = nontrivial({s.alphas[n], s.alphas[n + 1]});
    std::vector<FiberRow> out;
    for (int i = 0; i <= r; ++i) {
        auto& ai = s.alphas[i];
        if (!ai.trivial()) B.insert(ai);
        FiberRow row;
        row.l = i;
        row.dim_E = loci[i].dim;
        row.dim_E_prev = i == 0 ? gp(G, nontrivial({s.alphas[n], s.alphas[n + 1]})) : loci[i - 1].dim;
        row.dim_E_prime = gp(G, {ai});
        int d = i + 1 + gp(G, B) - row.dim_E_prime;
        row.entries.push_back({i, d, flag_name(nontrivial({ai})), row.dim_E_prime, {0, 0}});
        out.push_back(row);
    }
    return out;
}

PsiFibration psi_fibration(const X1Spec& s)
{
    auto v = structural(s);
    if (!v.empty()) invalid(v);
    PsiFibration p;
    p.target = flag_name({s.beta});
    p.target_dim = gp(s.G, {s.beta});
    p.fiber_dim = open_orbit_dimension(s) - p.target_dim;
    if (s.n() == 1) {
        auto t = levi_pair(s.G, s.beta, s.alphas[0], s.alphas[1]);
        if (t) p.fiber = t->kind == TripleKind::TwoOrbit ? FiberClass::TwoOrbit : FiberClass::HomogeneousNonPS;
    }
    return p;
}

PsiFibration psi_fibration(const X2Spec& s)
{
    auto v = structural(s);
    if (!v.empty()) invalid(v);
    int n = s.n();
    PsiFibration p;
    auto& x = s.alphas[n];
    auto& y = s.alphas[n + 1];
    p.target = "two-orbit " + flag_name(nontrivial({x, y}));
    p.target_dim = gp(s.G, {x, y}) + 1;
    p.fiber_dim = open_orbit_dimension(s) - p.target_dim;
    if (degenerate(s)) {
        auto t = smooth_triple(s.G.factors[s.alphas[0].factor], s.alphas[0].index, s.alphas[1].index);
        p.fiber = t.kind == TripleKind::TwoOrbit ? FiberClass::TwoOrbit : FiberClass::HomogeneousNonPS;
    }
    return p;
}

}  // namespace horokit
