#include "horokit/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

namespace horokit {

CanonicalFactor make_factor(Family f, int rank)
{
    CanonicalFactor c;
    auto bad = [&](const char* what) {
        throw Error(ErrorCode::InvalidRank, std::string(what) + " with rank " + std::to_string(rank));
    };
    if (f == Family::Torus || f == Family::Trivial) {
        c.factor = {f, 0};
        c.relabel = {0};
        return c;
    }
    if (rank < 1) bad("simple factor");
    c.relabel.resize(rank + 1);
    for (int i = 0; i <= rank; ++i) c.relabel[i] = i;
    switch (f) {
    case Family::A: c.factor = {f, rank}; break;
    case Family::B:
        if (rank == 1) c.factor = {Family::A, 1};
        else if (rank == 2) {
            c.factor = {Family::C, 2};
            c.relabel = {0, 2, 1};
        } else c.factor = {f, rank};
        break;
    case Family::C:
        c.factor = rank == 1 ? SimpleFactor{Family::A, 1} : SimpleFactor{f, rank};
        break;
    case Family::D:
        if (rank < 3) bad("type D");
        if (rank == 3) {
            c.factor = {Family::A, 3};
            c.relabel = {0, 2, 1, 3};
        } else c.factor = {f, rank};
        break;
    case Family::E:
        if (rank < 6 || rank > 8) bad("type E");
        c.factor = {f, rank};
        break;
    case Family::F:
        if (rank != 4) bad("type F");
        c.factor = {f, rank};
        break;
    case Family::G:
        if (rank != 2) bad("type G");
        c.factor = {f, rank};
        break;
    default: break;
    }
    return c;
}

std::string to_string(const SimpleFactor& f)
{
    switch (f.family) {
    case Family::Torus: return "C*";
    case Family::Trivial: return "1";
    default: break;
    }
    const char letters[] = "ABCDEFG";
    return std::string(1, letters[int(f.family)]) + std::to_string(f.rank);
}

std::string to_string(const GroupProduct& g)
{
    std::string s;
    for (size_t i = 0; i < g.factors.size(); ++i) {
        if (i) s += " x ";
        s += to_string(g.factors[i]);
    }
    return s;
}

std::string to_string(const RootId& r)
{
    return "(" + std::to_string(r.factor) + "," + (r.index == 0 ? std::string("triv") : "a" + std::to_string(r.index)) + ")";
}

std::string to_string(const RootSet& r)
{
    std::string s = "{";
    bool first = true;
    for (auto& x : r) {
        if (!first) s += ",";
        first = false;
        s += to_string(x);
    }
    return s + "}";
}

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& s, const std::string& ctx)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit((unsigned char)c); }))
        throw Error(ErrorCode::ParseError, "expected integer in '" + ctx + "'");
    return std::stoi(s);
}

CanonicalFactor parse_factor(const std::string& tok)
{
    if (tok == "C*" || tok == "Gm") return make_factor(Family::Torus, 0);
    if (tok == "1" || tok == "{1}" || tok == "{0}") return make_factor(Family::Trivial, 0);
    auto starts = [&](const char* p) { return tok.rfind(p, 0) == 0; };
    if (starts("SL")) {
        int d = parse_int(tok.substr(2), tok);
        if (d < 2) throw Error(ErrorCode::InvalidRank, tok);
        return make_factor(Family::A, d - 1);
    }
    if (starts("Spin") || starts("SO")) {
        int d = parse_int(tok.substr(starts("Spin") ? 4 : 2), tok);
        if (d < 3) throw Error(ErrorCode::InvalidRank, tok);
        return d % 2 ? make_factor(Family::B, d / 2) : make_factor(Family::D, d / 2);
    }
    if (starts("Sp")) {
        int d = parse_int(tok.substr(2), tok);
        if (d < 2 || d % 2) throw Error(ErrorCode::InvalidRank, tok);
        return make_factor(Family::C, d / 2);
    }
    if (tok.size() >= 2) {
        const std::string letters = "ABCDEFG";
        auto p = letters.find(tok[0]);
        if (p != std::string::npos) return make_factor(Family(p), parse_int(tok.substr(1), tok));
    }
    throw Error(ErrorCode::UnknownFamily, "unknown group factor '" + tok + "'");
}

}  // namespace

GroupProduct parse_group(const std::string& s, std::vector<std::vector<int>>* relabels)
{
    std::string t = s;
    // accept the multiplication sign
    for (size_t p; (p = t.find("\xC3\x97")) != std::string::npos;) t.replace(p, 2, " x ");
    std::istringstream in(t);
    std::vector<std::string> toks;
    std::string w;
    while (in >> w) toks.push_back(w);
    GroupProduct g;
    if (relabels) relabels->clear();
    bool expect_factor = true;
    for (auto& tok : toks) {
        if (tok == "x") {
            if (expect_factor) throw Error(ErrorCode::ParseError, "misplaced 'x' in '" + s + "'");
            expect_factor = true;
            continue;
        }
        if (!expect_factor) throw Error(ErrorCode::ParseError, "missing 'x' in '" + s + "'");
        auto c = parse_factor(tok);
        g.factors.push_back(c.factor);
        if (relabels) relabels->push_back(c.relabel);
        expect_factor = false;
    }
    if (g.factors.empty() || expect_factor) throw Error(ErrorCode::ParseError, "bad group '" + s + "'");
    return g;
}

RootId parse_root(const std::string& s, const GroupProduct* g, const std::vector<std::vector<int>>* relabels)
{
    std::string t = trim(s);
    if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw Error(ErrorCode::ParseError, "bad root '" + s + "'");
    t = t.substr(1, t.size() - 2);
    auto comma = t.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "bad root '" + s + "'");
    RootId r;
    r.factor = parse_int(trim(t.substr(0, comma)), s);
    std::string idx = trim(t.substr(comma + 1));
    if (idx == "triv") r.index = 0;
    else if (idx.size() > 1 && (idx[0] == 'a' || idx[0] == 'A')) r.index = parse_int(idx.substr(1), s);
    else r.index = parse_int(idx, s);
    if (relabels && r.factor < int(relabels->size()) && r.index < int((*relabels)[r.factor].size()))
        r.index = (*relabels)[r.factor][r.index];
    if (g) check_root(*g, r);
    return r;
}

std::vector<int> root_lengths(const SimpleFactor& f)
{
    int r = f.rank;
    std::vector<int> l(r + 1, 2);
    l[0] = 0;
    switch (f.family) {
    case Family::B: l[r] = 1; break;
    case Family::C:
        for (int i = 1; i < r; ++i) l[i] = 1;
        break;
    case Family::F: l[3] = l[4] = 1; break;
    case Family::G:
        l[1] = 1;
        l[2] = 3;
        break;
    default: break;
    }
    return l;
}

bool adjacent(const SimpleFactor& f, int i, int j)
{
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    int r = f.rank;
    switch (f.family) {
    case Family::D:
        if (j == r) return i == r - 2;
        return j == i + 1;
    case Family::E:
        if (i == 2 || j == 2) return (i == 2 ? j : i) == 4;
        if (i == 1) return j == 3;
        return j == i + 1;
    default: return j == i + 1;
    }
}

int cartan_entry(const SimpleFactor& f, int i, int j)
{
    if (i == j) return 2;
    if (!adjacent(f, i, j)) return 0;
    auto l = root_lengths(f);
    // 2 (a_i, a_j) / (a_j, a_j) with (a_i, a_j) = -max(l_i, l_j) / 2
    return -std::max(l[i], l[j]) / l[j];
}

int coroot_pairing_simple(const SimpleFactor& f, int i, int j) { return cartan_entry(f, j, i); }

const std::vector<IVec>& positive_roots(const SimpleFactor& f)
{
    static std::mutex mu;
    static std::map<SimpleFactor, std::vector<IVec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    int r = f.rank;
    std::vector<IVec> roots;
    std::set<IVec> seen;
    for (int i = 0; i < r; ++i) {
        IVec v(r, 0);
        v[i] = 1;
        roots.push_back(v);
        seen.insert(v);
    }
    for (size_t k = 0; k < roots.size(); ++k) {
        IVec b = roots[k];
        for (int i = 0; i < r; ++i) {
            long pair = 0;  // <b, alpha_i^vee>
            for (int j = 0; j < r; ++j) pair += b[j] * coroot_pairing_simple(f, i + 1, j + 1);
            int p = 0;
            IVec down = b;
            while (true) {
                down[i] -= 1;
                if (!seen.count(down)) break;
                ++p;
            }
            if (p - pair > 0) {
                IVec up = b;
                up[i] += 1;
                if (seen.insert(up).second) roots.push_back(up);
            }
        }
    }
    return cache.emplace(f, roots).first->second;
}

int num_positive_roots(const SimpleFactor& f) { return f.is_simple() ? int(positive_roots(f).size()) : 0; }

std::vector<std::vector<int>> diagram_symmetries(const SimpleFactor& f)
{
    int r = f.rank;
    std::vector<int> id(r + 1);
    for (int i = 0; i <= r; ++i) id[i] = i;
    std::vector<std::vector<int>> out{id};
    if (f.family == Family::A && r >= 2) {
        auto p = id;
        for (int i = 1; i <= r; ++i) p[i] = r + 1 - i;
        out.push_back(p);
    } else if (f.family == Family::D && r >= 5) {
        auto p = id;
        std::swap(p[r - 1], p[r]);
        out.push_back(p);
    } else if (f.family == Family::D && r == 4) {
        std::vector<int> outer{1, 3, 4};
        auto perm = outer;
        while (std::next_permutation(perm.begin(), perm.end())) {
            auto p = id;
            for (int k = 0; k < 3; ++k) p[outer[k]] = perm[k];
            out.push_back(p);
        }
    } else if (f.family == Family::E && r == 6) {
        auto p = id;
        std::swap(p[1], p[6]);
        std::swap(p[3], p[5]);
        out.push_back(p);
    }
    return out;
}

int weight_dim(const GroupProduct& g) { return weight_offset(g, int(g.factors.size())); }

int weight_offset(const GroupProduct& g, int factor)
{
    int off = 0;
    for (int k = 0; k < factor; ++k) {
        auto& f = g.factors[k];
        off += f.is_simple() ? f.rank : (f.family == Family::Torus ? 1 : 0);
    }
    return off;
}

void check_root(const GroupProduct& g, const RootId& r)
{
    if (r.factor < 0 || r.factor >= int(g.factors.size()))
        throw Error(ErrorCode::InputError, "root " + to_string(r) + " refers to a missing factor");
    auto& f = g.factors[r.factor];
    if (f.is_simple() ? (r.index < 1 || r.index > f.rank) : r.index != 0)
        throw Error(ErrorCode::InputError, "root " + to_string(r) + " invalid for factor " + to_string(f));
}

QVec fundamental_weight(const GroupProduct& g, const RootId& r)
{
    check_root(g, r);
    QVec w = zeros(weight_dim(g));
    auto& f = g.factors[r.factor];
    int off = weight_offset(g, r.factor);
    if (f.is_simple()) w[off + r.index - 1] = 1;
    else if (f.family == Family::Torus) w[off] = 1;
    return w;
}

QVec simple_root_weight(const GroupProduct& g, const RootId& r)
{
    check_root(g, r);
    auto& f = g.factors[r.factor];
    if (!f.is_simple()) throw Error(ErrorCode::TrivialRootHasNoCoroot, to_string(r) + " is not a simple root");
    QVec w = zeros(weight_dim(g));
    int off = weight_offset(g, r.factor);
    for (int i = 1; i <= f.rank; ++i) w[off + i - 1] = coroot_pairing_simple(f, i, r.index);
    return w;
}

Q coroot_pairing(const GroupProduct& g, const RootId& alpha, const QVec& weight)
{
    check_root(g, alpha);
    if (alpha.trivial()) throw Error(ErrorCode::TrivialRootHasNoCoroot, to_string(alpha));
    return weight[weight_offset(g, alpha.factor) + alpha.index - 1];
}

RootSet all_simple_roots(const GroupProduct& g)
{
    RootSet s;
    for (int k = 0; k < int(g.factors.size()); ++k)
        for (int i = 1; i <= g.factors[k].rank; ++i) s.insert({k, i});
    return s;
}

namespace {

bool support_in(const IVec& root, const RootSet& levi, int factor)
{
    for (size_t j = 0; j < root.size(); ++j)
        if (root[j] != 0 && !levi.count({factor, int(j) + 1})) return false;
    return true;
}

}  // namespace

int flag_dimension(const GroupProduct& g, const RootSet& levi)
{
    int d = 0;
    for (int k = 0; k < int(g.factors.size()); ++k) {
        auto& f = g.factors[k];
        if (!f.is_simple()) continue;
        for (auto& root : positive_roots(f))
            if (!support_in(root, levi, k)) ++d;
    }
    return d;
}

QVec two_rho_unipotent(const GroupProduct& g, const RootSet& levi)
{
    QVec w = zeros(weight_dim(g));
    for (int k = 0; k < int(g.factors.size()); ++k) {
        auto& f = g.factors[k];
        if (!f.is_simple()) continue;
        int off = weight_offset(g, k);
        for (auto& root : positive_roots(f)) {
            if (support_in(root, levi, k)) continue;
            for (int i = 1; i <= f.rank; ++i) {
                long c = 0;
                for (int j = 1; j <= f.rank; ++j) c += root[j - 1] * coroot_pairing_simple(f, i, j);
                w[off + i - 1] += c;
            }
        }
    }
    return w;
}

int Subdiagram::internal(int ambient) const
{
    for (size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == ambient) return int(k) + 1;
    return 0;
}

namespace {

Subdiagram classify_component(const SimpleFactor& f, std::vector<int> nodes)
{
    std::sort(nodes.begin(), nodes.end());
    auto lengths = root_lengths(f);
    std::map<int, std::vector<int>> nb;
    for (int u : nodes) {
        nb[u];
        for (int v : nodes)
            if (adjacent(f, u, v)) nb[u].push_back(v);
    }
    int r = int(nodes.size());
    Subdiagram s;
    auto walk = [&](int from, int start) {
        std::vector<int> path{start};
        int prev = from, cur = start;
        while (true) {
            int next = -1;
            for (int v : nb[cur])
                if (v != prev) next = v;
            if (next < 0) break;
            path.push_back(next);
            prev = cur;
            cur = next;
        }
        return path;
    };
    if (r == 1) {
        s.type = {Family::A, 1};
        s.labels = nodes;
        return s;
    }
    int branch = -1;
    for (int u : nodes)
        if (nb[u].size() == 3) branch = u;
    if (branch >= 0) {
        std::vector<std::vector<int>> arms;
        for (int v : nb[branch]) arms.push_back(walk(branch, v));
        std::sort(arms.begin(), arms.end(), [](auto& a, auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
        });
        if (arms[1].size() == 1) {
            // D_r: long arm read from its far end, then branch, then the two short arms
            s.type = {Family::D, r};
            if (r == 4) {
                std::sort(arms.begin(), arms.end(), [](auto& a, auto& b) { return a[0] < b[0]; });
                s.labels = {arms[0][0], branch, arms[1][0], arms[2][0]};
            } else {
                std::vector<int> lng(arms[2].rbegin(), arms[2].rend());
                s.labels = lng;
                s.labels.push_back(branch);
                s.labels.push_back(std::min(arms[0][0], arms[1][0]));
                s.labels.push_back(std::max(arms[0][0], arms[1][0]));
            }
        } else {
            s.type = {Family::E, r};
            s.labels = {arms[1][1], arms[0][0], arms[1][0], branch};
            for (int v : arms[2]) s.labels.push_back(v);
        }
        return s;
    }
    std::vector<int> ends;
    for (int u : nodes)
        if (nb[u].size() == 1) ends.push_back(u);
    int maxmult = 1, bu = -1, bv = -1;
    for (int u : nodes)
        for (int v : nb[u]) {
            int m = cartan_entry(f, u, v) * cartan_entry(f, v, u);
            if (m > maxmult) {
                maxmult = m;
                bu = u;
                bv = v;
            }
        }
    if (maxmult == 1) {
        s.type = {Family::A, r};
        s.labels = walk(-1, ends[0]);
        return s;
    }
    if (maxmult == 3) {
        s.type = {Family::G, 2};
        s.labels = lengths[bu] < lengths[bv] ? std::vector<int>{bu, bv} : std::vector<int>{bv, bu};
        return s;
    }
    int shorter = lengths[bu] < lengths[bv] ? bu : bv;
    int longer = shorter == bu ? bv : bu;
    if (r == 2) {
        s.type = {Family::C, 2};
        s.labels = {shorter, longer};
        return s;
    }
    bool at_end = nb[bu].size() == 1 || nb[bv].size() == 1;
    if (!at_end) {
        s.type = {Family::F, 4};
        // start from the end on the long side
        int e = -1;
        for (int x : ends) {
            auto p = walk(-1, x);
            if (std::find(p.begin(), p.end(), longer) < std::find(p.begin(), p.end(), shorter)) e = x;
        }
        s.labels = walk(-1, e);
        return s;
    }
    int endnode = nb[bu].size() == 1 ? bu : bv;
    int other = ends[0] == endnode ? ends[1] : ends[0];
    s.type = {endnode == shorter ? Family::B : Family::C, r};
    s.labels = walk(-1, other);
    return s;
}

}  // namespace

std::vector<Subdiagram> components(const SimpleFactor& f, const std::set<int>& nodes)
{
    std::vector<Subdiagram> out;
    std::set<int> left = nodes;
    while (!left.empty()) {
        std::vector<int> comp;
        std::queue<int> q;
        q.push(*left.begin());
        left.erase(left.begin());
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (auto it = left.begin(); it != left.end();) {
                if (adjacent(f, u, *it)) {
                    q.push(*it);
                    it = left.erase(it);
                } else ++it;
            }
        }
        out.push_back(classify_component(f, comp));
    }
    return out;
}

bool is_short_extremal(const Subdiagram& s, int ambient)
{
    int k = s.internal(ambient);
    if (k == 0) return false;
    if (s.type.family == Family::A) return k == 1 || k == s.type.rank;
    if (s.type.family == Family::C) return k == 1;
    return false;
}

bool is_smooth_pair(const GroupProduct& g, const RootSet& r1, const RootSet& r2)
{
    for (int k = 0; k < int(g.factors.size()); ++k) {
        auto& f = g.factors[k];
        if (!f.is_simple()) continue;
        std::set<int> nodes, marked;
        for (auto& x : r1)
            if (x.factor == k && !x.trivial()) nodes.insert(x.index);
        for (auto& x : r2)
            if (x.factor == k && !x.trivial()) {
                nodes.insert(x.index);
                marked.insert(x.index);
            }
        for (auto& c : components(f, nodes)) {
            int count = 0, which = 0;
            for (int v : c.labels)
                if (marked.count(v)) {
                    ++count;
                    which = v;
                }
            if (count > 1) return false;
            if (count == 1 && !is_short_extremal(c, which)) return false;
        }
    }
    return true;
}

TripleResult smooth_triple(const SimpleFactor& k, int gamma, int delta)
{
    if (gamma > delta) std::swap(gamma, delta);
    int m = k.rank;
    TripleResult h{TripleKind::Homogeneous, 0}, t{TripleKind::TwoOrbit, 0};
    switch (k.family) {
    case Family::A:
        if (m >= 2 && gamma == 1 && delta == m) return h.table_case = 1, h;
        if (m >= 3 && delta == gamma + 1) return h.table_case = 2, h;
        break;
    case Family::B:
        if (m >= 3 && gamma == m - 1 && delta == m) return t.table_case = 3, t;
        if (m == 3 && gamma == 1 && delta == 3) return t.table_case = 4, t;
        break;
    case Family::C:
        if (m >= 2 && delta == gamma + 1) return t.table_case = 5, t;
        break;
    case Family::D:
        if (m >= 4 && gamma == m - 1 && delta == m) return h.table_case = 6, h;
        break;
    case Family::F:
        if (gamma == 2 && delta == 3) return t.table_case = 7, t;
        break;
    case Family::G:
        if (gamma == 1 && delta == 2) return t.table_case = 8, t;
        break;
    default: break;
    }
    return {};
}

TripleResult smooth_triple(const Subdiagram& s, int gamma, int delta)
{
    int a = s.internal(gamma), b = s.internal(delta);
    if (!a || !b || a == b) return {};
    return smooth_triple(s.type, a, b);
}

QuadrupleCondition smooth_quadruple(const SimpleFactor& k, int beta, const std::set<int>& r, int n)
{
    std::set<int> levi;
    for (int i = 1; i <= k.rank; ++i)
        if (i != beta) levi.insert(i);
    for (int x : r)
        if (!levi.count(x)) return QuadrupleCondition::None;
    auto comps = components(k, levi);
    if (n == 1 && r.size() == 2) {
        int g = *r.begin(), d = *r.rbegin();
        for (auto& c : comps)
            if (c.internal(g) && c.internal(d) && smooth_triple(c, g, d).kind != TripleKind::NotSmooth)
                return QuadrupleCondition::Pair;
    }
    for (auto& c : comps) {
        int count = 0;
        for (int x : r)
            if (c.internal(x)) {
                ++count;
                if (!is_short_extremal(c, x)) return QuadrupleCondition::None;
            }
        if (count > 1) return QuadrupleCondition::None;
    }
    return QuadrupleCondition::Spread;
}

bool is_smooth_quadruple(const SimpleFactor& k, int beta, const std::set<int>& r, int n)
{
    return smooth_quadruple(k, beta, r, n) != QuadrupleCondition::None;
}

QuadrupleEntry canonical_entry(const SimpleFactor& k, const QuadrupleEntry& e)
{
    QuadrupleEntry best = e;
    for (auto& p : diagram_symmetries(k)) {
        QuadrupleEntry c{p[e.beta], {}};
        for (int x : e.r) c.r.insert(p[x]);
        if (c < best) best = c;
    }
    return best;
}

std::vector<QuadrupleEntry> enumerate_smooth_quadruples(const SimpleFactor& k, NFlag n)
{
    std::set<QuadrupleEntry> out;
    int m = k.rank;
    for (int beta = 1; beta <= m; ++beta) {
        std::vector<int> others;
        for (int i = 1; i <= m; ++i)
            if (i != beta) others.push_back(i);
        if (n == NFlag::One) {
            for (size_t a = 0; a < others.size(); ++a)
                for (size_t b = a + 1; b < others.size(); ++b) {
                    std::set<int> r{others[a], others[b]};
                    if (smooth_quadruple(k, beta, r, 1) == QuadrupleCondition::Pair)
                        out.insert(canonical_entry(k, {beta, r}));
                }
        } else {
            for (unsigned mask = 0; mask < (1u << others.size()); ++mask) {
                std::set<int> r;
                for (size_t a = 0; a < others.size(); ++a)
                    if (mask >> a & 1) r.insert(others[a]);
                if (smooth_quadruple(k, beta, r, 2) == QuadrupleCondition::Spread)
                    out.insert(canonical_entry(k, {beta, r}));
            }
        }
    }
    return {out.begin(), out.end()};
}

CoverResult universal_cover(const SimpleFactor& k, int beta)
{
    CoverResult c{false, k, beta};
    if (k.family == Family::C && beta == 1) c = {true, {Family::A, 2 * k.rank - 1}, 1};
    else if (k.family == Family::G && beta == 1) c = {true, {Family::B, 3}, 1};
    else if (k.family == Family::B && k.rank >= 3 && beta == k.rank) c = {true, {Family::D, k.rank + 1}, k.rank};
    if (c.changed) {
        for (auto& p : diagram_symmetries(c.factor)) c.beta = std::min(c.beta, p[c.beta]);
    }
    return c;
}

}  // namespace horokit
