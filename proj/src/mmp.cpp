#include "horokit/mmp.hpp"

#include "horokit/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>

namespace horokit {

InequalitySystem MMPFamily::at(const Q& eps) const
{
    InequalitySystem s = rows;
    for (size_t i = 0; i < s.rows(); ++i) s.b[i] = B[i] + eps * C[i];
    return s;
}

QVec MMPFamily::v(const Q& eps) const { return add(v0, scale(v1, eps)); }

AdmissibleQuadruple MMPFamily::quadruple(const Q& eps) const { return {hs, at(eps), v(eps)}; }

MMPFamily build_family(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& D,
                       const BStableDivisor& delta)
{
    if (ample_status(hs, fan, D) != AmpleStatus::Ample) throw Error(ErrorCode::NotAmple, to_string(D));
    auto kd = Q(-1) * anticanonical(hs, fan) + delta;
    auto md = moment_polytopes(hs, fan, D);
    auto mk = moment_polytopes(hs, fan, kd);
    MMPFamily f;
    f.hs = hs;
    f.rows = md.Qtilde;
    f.B = md.Qtilde.b;
    // the rhs of moment_polytopes is minus the coefficient, which is C
    f.C = mk.Qtilde.b;
    f.v0 = md.v0;
    f.v1 = mk.v0;
    return f;
}

MMPFamily canonical_family(const HomSpaceData& hs, const ColoredFan& fan, CanonicalChoice which)
{
    auto c = case_detect(hs, fan);
    auto P = case_prime_divisors(hs, fan, c);
    auto D = P.front() + P.back();
    auto minusK = anticanonical(hs, fan);
    auto delta = Q(-1) * (which == CanonicalChoice::Second ? P.back() : P.front()) + minusK;
    return build_family(hs, fan, D, delta);
}

int worker_count()
{
    if (const char* s = std::getenv("HOROKIT_THREADS")) {
        int n = std::atoi(s);
        if (n >= 1) return n;
    }
    return 1;
}

namespace {

// results land in index order whatever the schedule; the lowest failing
// index wins so errors are reproducible too
template <class T>
std::vector<T> parallel_map(size_t n, const std::function<T(size_t)>& f)
{
    std::vector<std::optional<T>> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < n;) {
            try {
                out[i] = f(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    int k = std::min<int>(worker_count(), int(n));
    std::vector<std::thread> pool;
    for (int t = 1; t < k; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::vector<T> res;
    for (auto& o : out) res.push_back(std::move(*o));
    return res;
}

std::vector<RootId> walls_of(const HomSpaceData& hs)
{
    std::vector<RootId> out;
    for (auto& a : hs.R)
        if (!a.trivial()) out.push_back(a);
    return out;
}

}  // namespace

Signature signature_at(const MMPFamily& fam, const Q& eps)
{
    auto s = fam.at(eps);
    std::vector<bool> may(s.rows());
    for (size_t i = 0; i < s.rows(); ++i) may[i] = s.tags[i].kind == RowKind::GStableRay;
    Signature sig;
    sig.pruned = prune_redundant(s, may);
    std::set<int> drop(sig.pruned.begin(), sig.pruned.end());
    std::vector<int> kept;
    for (size_t i = 0; i < s.rows(); ++i)
        if (!drop.count(int(i))) kept.push_back(int(i));
    for (auto& f : face_lattice(s.without_rows(drop))) {
        std::vector<int> r;
        for (int i : f.rows) r.push_back(kept[i]);
        sig.faces.insert(r);
    }
    return sig;
}

Q epsilon_max(const MMPFamily& fam)
{
    size_t n = fam.hs.rank();
    QMat A;
    QVec b;
    for (size_t i = 0; i < fam.rows.rows(); ++i) {
        auto row = fam.rows.A[i];
        row.push_back(-fam.C[i]);
        A.push_back(row);
        b.push_back(fam.B[i]);
    }
    for (auto& a : walls_of(fam.hs)) {
        auto row = to_qvec(sigma(fam.hs, a));
        row.push_back(coroot_pairing(fam.hs.G, a, fam.v1));
        A.push_back(row);
        b.push_back(-coroot_pairing(fam.hs.G, a, fam.v0));
    }
    QVec e = zeros(n + 1);
    e.back() = 1;
    A.push_back(e);
    b.push_back(0);
    auto r = lp_maximize(e, A, b);
    if (r.status == LPStatus::Unbounded) throw Error(ErrorCode::NoBreakpoints, "the family never stops being admissible");
    if (r.status == LPStatus::Infeasible) throw Error(ErrorCode::NotAdmissibleAtZero, "empty at eps = 0");
    return r.value;
}

std::string to_string(EventKind k)
{
    switch (k) {
    case EventKind::Flip: return "flip";
    case EventKind::DivisorialContraction: return "divisorial";
    default: return "fibration";
    }
}

bool Interval::contains(const Q& e) const
{
    if (e < lo || e > hi) return false;
    if (e == lo && !lo_closed) return false;
    if (e == hi && !hi_closed) return false;
    return true;
}

Q Interval::sample() const { return (lo + hi) / 2; }

std::string to_string(const Interval& i)
{
    if (i.lo == i.hi) return "{" + to_string(i.lo) + "}";
    return std::string(i.lo_closed ? "[" : "(") + to_string(i.lo) + ", " + to_string(i.hi) + (i.hi_closed ? "]" : ")");
}

std::vector<Q> candidate_epsilons(const MMPFamily& fam, const Q& eps_max)
{
    size_t d = fam.hs.rank(), m = fam.rows.rows();
    std::set<Q> out;
    auto keep = [&](const Q& e) {
        if (e > 0 && e < eps_max) out.insert(e);
    };
    auto walls = walls_of(fam.hs);
    if (d == 0 || m < d) return {};
    std::vector<int> sel(d);
    for (size_t i = 0; i < d; ++i) sel[i] = int(i);
    QMat M(d);
    QVec rb(d), rc(d);
    while (true) {
        for (size_t i = 0; i < d; ++i) {
            M[i] = fam.rows.A[sel[i]];
            rb[i] = fam.B[sel[i]];
            rc[i] = fam.C[sel[i]];
        }
        auto x0 = solve_square(M, rb);
        if (x0) {
            auto x1 = *solve_square(M, rc);
            // x(eps) = x0 + eps x1 crossing another row or a wall
            for (size_t j = 0; j < m; ++j) {
                Q c0 = dot(fam.rows.A[j], *x0) - fam.B[j];
                Q c1 = dot(fam.rows.A[j], x1) - fam.C[j];
                if (c1 != 0) keep(-c0 / c1);
            }
            for (auto& a : walls) {
                auto s = to_qvec(sigma(fam.hs, a));
                Q c0 = dot(s, *x0) + coroot_pairing(fam.hs.G, a, fam.v0);
                Q c1 = dot(s, x1) + coroot_pairing(fam.hs.G, a, fam.v1);
                if (c1 != 0) keep(-c0 / c1);
            }
        }
        int i = int(d) - 1;
        while (i >= 0 && sel[i] == int(m - d) + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (size_t j = i + 1; j < d; ++j) sel[j] = sel[j - 1] + 1;
    }
    return {out.begin(), out.end()};
}

namespace {

struct Sweep {
    Q eps_max;
    std::vector<Interval> intervals;
    std::vector<Signature> sigs;
    struct Point {
        Q eps;
        int left;         // interval just below
        Signature at;     // signature at the point
        Signature right;  // signature just above
    };
    std::vector<Point> points;
};

Sweep sweep(const MMPFamily& fam)
{
    size_t n = fam.hs.rank();
    if (polytope_dim(fam.at(0)) != int(n)) throw Error(ErrorCode::DegenerateFamily, "Qtilde^0 is not full-dimensional");
    if (!is_admissible(fam.quadruple(0))) throw Error(ErrorCode::NotAdmissibleAtZero, "quadruple at eps = 0");
    Sweep sw;
    sw.eps_max = epsilon_max(fam);
    auto cands = candidate_epsilons(fam, sw.eps_max);

    std::vector<Interval> pieces{{0, 0, true, true}};
    Q prev = 0;
    for (auto& c : cands) {
        pieces.push_back({prev, c, false, false});
        pieces.push_back({c, c, true, true});
        prev = c;
    }
    pieces.push_back({prev, sw.eps_max, false, false});
    auto sigs = parallel_map<Signature>(pieces.size(), [&](size_t i) { return signature_at(fam, pieces[i].sample()); });

    for (size_t i = 0; i < pieces.size(); ++i) {
        if (!sw.intervals.empty() && sw.sigs.back() == sigs[i]) {
            sw.intervals.back().hi = pieces[i].hi;
            sw.intervals.back().hi_closed = pieces[i].hi_closed;
            continue;
        }
        sw.intervals.push_back(pieces[i]);
        sw.sigs.push_back(sigs[i]);
    }
    // breakpoints: every place where the signature changes
    for (size_t k = 1; k < sw.intervals.size(); ++k) {
        auto& cur = sw.intervals[k];
        auto& before = sw.intervals[k - 1];
        if (cur.lo == cur.hi) {
            sw.points.push_back({cur.lo, int(k - 1), sw.sigs[k], k + 1 < sw.sigs.size() ? sw.sigs[k + 1] : sw.sigs[k]});
        } else if (cur.lo_closed) {
            sw.points.push_back({cur.lo, int(k - 1), sw.sigs[k], sw.sigs[k]});
        } else if (before.lo != before.hi) {
            sw.points.push_back({cur.lo, int(k - 1), sw.sigs[k - 1], sw.sigs[k]});
        }
    }
    return sw;
}

EventKind kind_at(const Signature& left, const Signature& at, const Signature& right)
{
    for (int r : at.pruned)
        if (std::find(left.pruned.begin(), left.pruned.end(), r) == left.pruned.end() &&
            std::find(right.pruned.begin(), right.pruned.end(), r) != right.pruned.end())
            return EventKind::DivisorialContraction;
    return EventKind::Flip;
}

std::vector<FaceImage> face_images(const AdmissibleQuadruple& from, const AdmissibleQuadruple& to)
{
    std::vector<FaceImage> out;
    for (auto& f : face_lattice(from.Qtilde)) out.push_back({f, map_face(from, to, f)});
    return out;
}

}  // namespace

std::vector<Breakpoint> critical_epsilons(const MMPFamily& fam)
{
    auto sw = sweep(fam);
    std::vector<Breakpoint> out;
    for (auto& p : sw.points) out.push_back({p.eps, kind_at(sw.sigs[p.left], p.at, p.right)});
    out.push_back({sw.eps_max, EventKind::Fibration});
    return out;
}

MMPTrace run_log_mmp(const MMPFamily& fam, TraceDetail detail)
{
    bool full = detail == TraceDetail::Full;
    auto sw = sweep(fam);
    MMPTrace t;
    t.eps_max = sw.eps_max;
    t.intervals = sw.intervals;
    t.signatures = sw.sigs;
    for (auto& iv : t.intervals)
        if (!is_admissible(fam.quadruple(iv.sample())))
            throw Error(ErrorCode::NotAdmissible, "family leaves the admissible range at " + to_string(iv.sample()));
    for (auto& p : sw.points) {
        ContractionEvent ev;
        ev.epsilon = p.eps;
        auto& left = sw.sigs[p.left];
        ev.kind = kind_at(left, p.at, p.right);
        for (int r : p.at.pruned)
            if (std::find(left.pruned.begin(), left.pruned.end(), r) == left.pruned.end()) ev.pruned_rows.push_back(r);
        if (full) ev.face_map = face_images(fam.quadruple(sw.intervals[p.left].sample()), fam.quadruple(p.eps));
        t.events.push_back(ev);
    }
    ContractionEvent fib;
    fib.epsilon = t.eps_max;
    fib.kind = EventKind::Fibration;
    if (full) {
        fib.face_map = face_images(fam.quadruple(t.intervals.back().sample()), fam.quadruple(t.eps_max));
        fib.fiber = general_fiber(fam, t, fib);
    }
    t.events.push_back(fib);
    return t;
}

MMPTrace run_log_mmp(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& D,
                     const BStableDivisor& delta)
{
    return run_log_mmp(build_family(hs, fan, D, delta));
}

FiberRecord general_fiber(const MMPFamily& fam, const MMPTrace& trace, const ContractionEvent& fibration)
{
    if (fibration.kind != EventKind::Fibration) throw Error(ErrorCode::PreconditionViolated, "not a fibration");
    auto src = fam.quadruple(trace.intervals.back().sample());
    auto tgt = fam.quadruple(fibration.epsilon);
    auto images = fibration.face_map.empty() ? face_images(src, tgt) : fibration.face_map;
    auto tfaces = face_lattice(tgt.Qtilde);
    FiberRecord rec;
    auto top_of = [](const std::vector<Face>& fs) {
        return *std::max_element(fs.begin(), fs.end(), [](const Face& x, const Face& y) { return x.dim < y.dim; });
    };
    for (auto& tf : tfaces) {
        std::vector<Face> pre;
        for (auto& im : images)
            if (im.target && im.target->rows == tf.rows) pre.push_back(im.source);
        if (pre.empty()) throw Error(ErrorCode::NoMaximalPreimage, "orbit with no preimage");
        // the biggest orbit is the face lying in no other row than the common ones
        std::optional<Face> big;
        for (auto& p : pre) {
            bool contains_all = true;
            for (auto& q : pre)
                if (!std::includes(q.rows.begin(), q.rows.end(), p.rows.begin(), p.rows.end())) contains_all = false;
            if (contains_all) big = p;
        }
        if (!big) throw Error(ErrorCode::NoMaximalPreimage, "several biggest orbits");
        int d = orbit_of_face(src, *big).orbit_dim - orbit_of_face(tgt, tf).orbit_dim;
        rec.entries.push_back({tf, *big, d});
    }
    auto ttop = top_of(tfaces);
    auto stop = top_of(face_lattice(src.Qtilde));
    auto so = orbit_of_face(src, stop), to = orbit_of_face(tgt, ttop);
    rec.general_dim = so.orbit_dim - to.orbit_dim;
    rec.rank_drop = stop.dim - ttop.dim;
    rec.source_R = so.R_F;
    rec.target_R = to.R_F;
    return rec;
}

namespace {

void check_sorted(const std::vector<long>& a, bool strict)
{
    if (a.empty() || a[0] != 0) throw Error(ErrorCode::NotRestricted, "a_0 must be 0");
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] < a[i - 1] || (strict && a[i] == a[i - 1])) throw Error(ErrorCode::NotRestricted, "a is not increasing");
}

// proper subsets I of {0..k}, with min/max of 1+a_i off I
template <class F>
void for_proper_subsets(const std::vector<long>& a, F f)
{
    size_t k = a.size();
    for (unsigned mask = 0; mask + 1 < (1u << k); ++mask) {
        std::vector<int> I;
        long lo = 0, hi = 0;
        bool first = true;
        for (size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                I.push_back(int(i));
                continue;
            }
            long v = 1 + a[i];
            lo = first ? v : std::min(lo, v);
            hi = first ? v : std::max(hi, v);
            first = false;
        }
        f(I, Q(lo), Q(hi));
    }
}

std::vector<int> with(std::vector<int> I, std::initializer_list<int> extra)
{
    for (int x : extra) I.push_back(x);
    return I;
}

}  // namespace

std::set<PredictedFace> faces_case1(int n, const std::vector<long>& a, const Q& eps)
{
    if (int(a.size()) != n + 1) throw Error(ErrorCode::PreconditionViolated, "need a_0..a_n");
    check_sorted(a, false);
    if (a[n] == 0) throw Error(ErrorCode::PreconditionViolated, "a_n must be non-zero");
    if (eps < 0 || eps >= 1 + a[n]) throw Error(ErrorCode::PreconditionViolated, "eps outside [0, 1+a_n)");
    std::set<PredictedFace> out;
    int beta = n + 1;
    for_proper_subsets(a, [&](const std::vector<int>& I, const Q& lo, const Q& hi) {
        int c = int(I.size());
        if (eps < hi) out.insert({I, n - c});
        if (lo < eps && eps < hi) out.insert({with(I, {beta}), n - c - 1});
        if (eps == lo && eps == hi) out.insert({with(I, {beta}), n - c});
    });
    return out;
}

std::set<PredictedFace> faces_case2(int r, const std::vector<long>& a, const Q& eps)
{
    if (int(a.size()) != r + 1) throw Error(ErrorCode::PreconditionViolated, "need a_0..a_r");
    check_sorted(a, true);
    if (r < 1) throw Error(ErrorCode::PreconditionViolated, "r must be positive");
    if (eps < 0 || eps >= 1 + a[r]) throw Error(ErrorCode::PreconditionViolated, "eps outside [0, 1+a_r)");
    std::set<PredictedFace> out;
    int n = r + 1, v1 = r + 1, v2 = r + 2;
    for_proper_subsets(a, [&](const std::vector<int>& I, const Q& lo, const Q& hi) {
        int c = int(I.size());
        if (eps < hi) {
            out.insert({I, n - c});
            out.insert({with(I, {v1}), n - c - 1});
            out.insert({with(I, {v2}), n - c - 1});
        }
        if (lo < eps && eps < hi) out.insert({with(I, {v1, v2}), n - c - 2});
        if (eps == lo && eps == hi) out.insert({with(I, {v1, v2}), n - c - 1});
    });
    return out;
}

namespace {

// levels t_0 < ... < t_k; the last step is a divisorial contraction when `divisorial`
MMPTrace predicted(const std::vector<Q>& t, bool divisorial)
{
    MMPTrace tr;
    size_t k = t.size() - 1;
    tr.eps_max = t[k];
    if (k == 0) {
        tr.intervals.push_back({0, t[0], true, false});
        tr.events.push_back({t[0], EventKind::Fibration, {}, {}, {}});
        return tr;
    }
    tr.intervals.push_back({0, t[0], true, false});
    for (size_t l = 0; l < k; ++l) {
        bool div = divisorial && l + 1 == k;
        if (div) {
            tr.intervals.push_back({t[l], t[l + 1], true, false});
        } else {
            tr.intervals.push_back({t[l], t[l], true, true});
            tr.intervals.push_back({t[l], t[l + 1], false, false});
        }
        tr.events.push_back({t[l], div ? EventKind::DivisorialContraction : EventKind::Flip, {}, {}, {}});
    }
    tr.events.push_back({t[k], EventKind::Fibration, {}, {}, {}});
    return tr;
}

}  // namespace

MMPTrace predict_trace_case1(const std::vector<long>& a, bool last_trivial)
{
    check_sorted(a, false);
    size_t n = a.size() - 1;
    std::vector<Q> t;
    for (size_t i = 0; i <= n; ++i)
        if (i == 0 || a[i] != a[i - 1]) t.push_back(Q(1 + a[i]));
    // the top level is reached by a_n alone
    bool alone = n >= 1 && a[n - 1] < a[n];
    return predicted(t, t.size() > 1 && alone && last_trivial);
}

MMPTrace predict_trace_case2(const std::vector<long>& a, bool last_trivial)
{
    check_sorted(a, true);
    if (a.size() < 2) throw Error(ErrorCode::NotRestricted, "r must be positive");
    std::vector<Q> t;
    for (long x : a) t.push_back(Q(1 + x));
    return predicted(t, last_trivial);
}

}  // namespace horokit
