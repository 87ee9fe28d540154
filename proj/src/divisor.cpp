#include "horokit/divisor.hpp"

#include "horokit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace horokit {

Q BStableDivisor::color(const RootId& a) const
{
    auto it = colors.find(a);
    return it == colors.end() ? Q(0) : it->second;
}

BStableDivisor zero_divisor(const HomSpaceData& hs, const ColoredFan& fan)
{
    BStableDivisor d;
    d.gstable = zeros(gstable_edges(fan).size());
    for (auto& a : hs.R) d.colors[a] = 0;
    return d;
}

BStableDivisor operator+(const BStableDivisor& x, const BStableDivisor& y)
{
    if (x.gstable.size() != y.gstable.size()) throw Error(ErrorCode::PreconditionViolated, "divisor size mismatch");
    BStableDivisor d{add(x.gstable, y.gstable), x.colors};
    for (auto& [a, c] : y.colors) d.colors[a] += c;
    return d;
}

BStableDivisor operator*(const Q& c, const BStableDivisor& x)
{
    BStableDivisor d{scale(x.gstable, c), x.colors};
    for (auto& [a, v] : d.colors) v *= c;
    return d;
}

bool is_integral(const BStableDivisor& d)
{
    if (!is_integral(d.gstable)) return false;
    for (auto& [a, c] : d.colors)
        if (!is_integral(c)) return false;
    return true;
}

std::string to_string(const BStableDivisor& d)
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < d.gstable.size(); ++i) os << (i ? " " : "") << to_string(d.gstable[i]);
    os << " |";
    for (auto& [a, c] : d.colors) os << " " << to_string(a) << ":" << to_string(c);
    os << "]";
    return os.str();
}

BStableDivisor edge_divisor(const HomSpaceData& hs, const ColoredFan& fan, int k)
{
    auto es = edges(fan);
    auto d = zero_divisor(hs, fan);
    if (es[k].color) {
        d.colors[*es[k].color] = 1;
        return d;
    }
    int g = 0;
    for (int i = 0; i < k; ++i)
        if (!es[i].color) ++g;
    d.gstable[g] = 1;
    return d;
}

BStableDivisor color_divisor(const HomSpaceData& hs, const ColoredFan& fan, const RootId& a)
{
    if (!hs.R.count(a)) throw Error(ErrorCode::NotAColor, to_string(a));
    auto d = zero_divisor(hs, fan);
    d.colors[a] = 1;
    return d;
}

namespace {

// (vector, value) pairs that h has to match, one per edge
struct EdgeRow {
    QVec row;
    Q value;
    IVec ray;
};

std::vector<EdgeRow> edge_rows(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    auto es = edges(fan);
    std::vector<EdgeRow> out;
    size_t g = 0;
    for (auto& e : es) {
        if (e.color) {
            out.push_back({to_qvec(sigma(hs, *e.color)), d.color(*e.color), e.ray});
        } else {
            if (g >= d.gstable.size()) throw Error(ErrorCode::PreconditionViolated, "divisor has too few G-stable coefficients");
            out.push_back({to_qvec(e.ray), d.gstable[g++], e.ray});
        }
    }
    if (g != d.gstable.size()) throw Error(ErrorCode::PreconditionViolated, "divisor has too many G-stable coefficients");
    return out;
}

}  // namespace

Q PLFunction::eval(const ColoredFan& fan, const IVec& v) const
{
    for (size_t k = 0; k < cones.size(); ++k)
        if (cone_contains(fan.cones[cones[k]].generators, v)) return dot(forms[k], to_qvec(v));
    throw Error(ErrorCode::NotComplete, "point outside the support");
}

PLFunction pl_function(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    auto rows = edge_rows(hs, fan, d);
    PLFunction h;
    h.cartier = is_integral(d);
    size_t n = hs.rank();
    for (int ci : maximal_cones(fan)) {
        auto& c = fan.cones[ci];
        QMat m;
        QVec vals;
        for (auto& g : c.generators)
            for (auto& r : rows)
                if (r.ray == g) {
                    m.push_back(r.row);
                    vals.push_back(r.value);
                }
        for (auto& a : c.colors) {
            m.push_back(to_qvec(sigma(hs, a)));
            vals.push_back(d.color(a));
        }
        QVec form = zeros(n);
        if (!m.empty()) {
            auto sol = solve(m, vals);
            if (!sol) throw Error(ErrorCode::NotQCartier, "no linear form on cone " + std::to_string(ci));
            form = *sol;
        }
        if (!is_integral(form)) h.cartier = false;
        h.cones.push_back(ci);
        h.forms.push_back(form);
    }
    return h;
}

std::string to_string(AmpleStatus s)
{
    switch (s) {
    case AmpleStatus::Ample: return "ample";
    case AmpleStatus::GloballyGeneratedNotAmple: return "globally-generated";
    default: return "neither";
    }
}

AmpleStatus ample_status(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    auto h = pl_function(hs, fan, d);
    auto rows = edge_rows(hs, fan, d);
    bool strict = true;
    for (size_t k = 0; k < h.cones.size(); ++k) {
        auto& gens = fan.cones[h.cones[k]].generators;
        for (auto& r : rows) {
            Q l = dot(h.forms[k], r.row);
            if (l > r.value) return AmpleStatus::Neither;
            if (l == r.value && std::find(gens.begin(), gens.end(), r.ray) == gens.end()) strict = false;
        }
    }
    auto fx = fan_colors(fan);
    for (auto& a : hs.R) {
        if (fx.count(a)) continue;
        auto s = sigma(hs, a);
        Q v = hs.rank() == 0 ? Q(0) : h.eval(fan, s);
        if (v > d.color(a)) return AmpleStatus::Neither;
        if (v == d.color(a)) strict = false;
    }
    return strict ? AmpleStatus::Ample : AmpleStatus::GloballyGeneratedNotAmple;
}

MomentData moment_polytopes(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    pl_function(hs, fan, d);  // Q-Cartier check
    MomentData out;
    out.Qtilde.dimension = hs.rank();
    auto es = edges(fan);
    auto rows = edge_rows(hs, fan, d);
    int g = 0;
    for (size_t k = 0; k < es.size(); ++k) {
        RowTag t;
        if (es[k].color) {
            t.kind = RowKind::Color;
            t.root = *es[k].color;
        } else {
            t.kind = RowKind::GStableRay;
            t.index = g++;
        }
        out.Qtilde.add_row(rows[k].row, -rows[k].value, t);
    }
    auto fx = fan_colors(fan);
    for (auto& a : hs.R) {
        if (fx.count(a)) continue;
        RowTag t{RowKind::Color, 0, a};
        out.Qtilde.add_row(to_qvec(sigma(hs, a)), -d.color(a), t);
    }
    out.v0 = zeros(weight_dim(hs.G));
    for (auto& a : hs.R) out.v0 = add(out.v0, scale(fundamental_weight(hs.G, a), d.color(a)));
    return out;
}

QVec to_weight(const HomSpaceData& hs, const QVec& chi)
{
    QVec w = zeros(weight_dim(hs.G));
    for (size_t i = 0; i < chi.size(); ++i) w = add(w, scale(hs.M_basis[i], chi[i]));
    return w;
}

namespace {

void scan(const InequalitySystem& s, std::vector<std::pair<long, long>>& box, size_t k, IVec& cur,
          std::vector<IVec>& out)
{
    if (k == box.size()) {
        QVec x = to_qvec(cur);
        for (size_t i = 0; i < s.rows(); ++i)
            if (dot(s.A[i], x) < s.b[i]) return;
        out.push_back(cur);
        return;
    }
    for (long v = box[k].first; v <= box[k].second; ++v) {
        cur[k] = v;
        scan(s, box, k + 1, cur, out);
    }
}

long floor_q(const Q& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

long ceil_q(const Q& q)
{
    mpz_class f;
    mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

}  // namespace

std::vector<QVec> lattice_weights(const HomSpaceData& hs, const InequalitySystem& Qtilde, const QVec& v0)
{
    size_t n = Qtilde.dim();
    std::vector<IVec> pts;
    if (n == 0) {
        for (size_t i = 0; i < Qtilde.rows(); ++i)
            if (Qtilde.b[i] > 0) return {};
        pts.push_back({});
    } else {
        if (!is_feasible(Qtilde)) return {};
        std::vector<std::pair<long, long>> box;
        for (size_t i = 0; i < n; ++i) {
            QVec c = zeros(n);
            c[i] = 1;
            auto hi = maximize(Qtilde, c);
            c[i] = -1;
            auto lo = maximize(Qtilde, c);
            if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal)
                throw Error(ErrorCode::Unbounded, "lattice points of an unbounded polyhedron");
            box.push_back({ceil_q(-lo.value), floor_q(hi.value)});
        }
        IVec cur(n, 0);
        scan(Qtilde, box, 0, cur, pts);
    }
    std::vector<QVec> out;
    for (auto& p : pts) out.push_back(add(v0, to_weight(hs, to_qvec(p))));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QVec> section_weights(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d)
{
    if (!pl_function(hs, fan, d).cartier) throw Error(ErrorCode::NotCartier, to_string(d));
    auto m = moment_polytopes(hs, fan, d);
    return lattice_weights(hs, m.Qtilde, m.v0);
}

BStableDivisor anticanonical(const HomSpaceData& hs, const ColoredFan& fan)
{
    auto d = zero_divisor(hs, fan);
    for (auto& x : d.gstable) x = 1;
    RootSet levi;
    for (auto& a : all_simple_roots(hs.G))
        if (!hs.R.count(a)) levi.insert(a);
    auto rho = two_rho_unipotent(hs.G, levi);
    for (auto& a : hs.R) {
        Q b = coroot_pairing(hs.G, a, rho);
        if (b < 2) throw Error(ErrorCode::AssertionBZeta, "color coefficient below 2 for " + to_string(a));
        d.colors[a] = b;
    }
    return d;
}

bool is_fano(const HomSpaceData& hs, const ColoredFan& fan)
{
    return ample_status(hs, fan, anticanonical(hs, fan)) == AmpleStatus::Ample;
}

BStableDivisor principal_divisor(const HomSpaceData& hs, const ColoredFan& fan, const QVec& chi)
{
    auto d = zero_divisor(hs, fan);
    auto g = gstable_edges(fan);
    for (size_t i = 0; i < g.size(); ++i) d.gstable[i] = dot(chi, to_qvec(g[i]));
    for (auto& a : hs.R) d.colors[a] = dot(chi, to_qvec(sigma(hs, a)));
    return d;
}

namespace {

QVec flat(const HomSpaceData& hs, const BStableDivisor& d)
{
    QVec v = d.gstable;
    for (auto& a : hs.R) v.push_back(d.color(a));
    return v;
}

}  // namespace

bool linearly_equivalent(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& x,
                         const BStableDivisor& y)
{
    size_t n = hs.rank();
    QVec diff = flat(hs, x + Q(-1) * y);
    // columns: div of each basis vector of M
    QMat cols;
    for (size_t j = 0; j < n; ++j) {
        QVec e = zeros(n);
        e[j] = 1;
        cols.push_back(flat(hs, principal_divisor(hs, fan, e)));
    }
    if (n == 0) return is_zero(diff);
    auto sol = solve(transpose(cols), diff);
    if (!sol) return false;
    return !(is_integral(x) && is_integral(y)) || is_integral(*sol);
}

bool verify_nef_generators(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& da,
                           const BStableDivisor& db)
{
    auto sum = da + db;
    if (ample_status(hs, fan, da) != AmpleStatus::GloballyGeneratedNotAmple) return false;
    if (ample_status(hs, fan, db) != AmpleStatus::GloballyGeneratedNotAmple) return false;
    if (ample_status(hs, fan, sum) != AmpleStatus::Ample) return false;
    for (const BStableDivisor* d : {&da, &db, static_cast<const BStableDivisor*>(&sum)})
        if (!pl_function(hs, fan, *d).cartier) return false;
    if (pl_function(hs, fan, Q(1, 2) * sum).cartier) return false;
    // the classes of da, db form a basis of Pic: together with div(M) they
    // give a unimodular matrix on the prime divisors
    size_t n = hs.rank();
    QMat m;
    for (size_t j = 0; j < n; ++j) {
        QVec e = zeros(n);
        e[j] = 1;
        m.push_back(flat(hs, principal_divisor(hs, fan, e)));
    }
    m.push_back(flat(hs, da));
    m.push_back(flat(hs, db));
    if (m.size() != m[0].size()) return false;
    Q dt = det(m);
    return dt == 1 || dt == -1;
}

std::vector<BStableDivisor> case_prime_divisors(const HomSpaceData& hs, const ColoredFan& fan, const CaseData& c)
{
    std::vector<BStableDivisor> out;
    if (c.kind == CaseKind::Case1) {
        for (int k : c.u) out.push_back(edge_divisor(hs, fan, k));
        out.push_back(color_divisor(hs, fan, c.beta));
    } else if (c.kind == CaseKind::Case2) {
        for (int k : c.u) out.push_back(edge_divisor(hs, fan, k));
        for (int k : c.v) out.push_back(edge_divisor(hs, fan, k));
    } else {
        throw Error(ErrorCode::UnsupportedCase, "prime divisors need Case 1 or Case 2");
    }
    return out;
}

}  // namespace horokit
