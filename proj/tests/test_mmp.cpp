#include <doctest.h>

#include "horokit/linalg.hpp"
#include "horokit/mmp.hpp"
#include "oracles.hpp"

#include <cstdlib>

using namespace horokit;

namespace {

// A2 x A1 x C*, beta = a1(A2); alpha_0 = a1(A1); the other two are a2(A2) and
// the trivial root, in the order that makes alpha_n trivial or not
oracle::Variety c1(const std::vector<long>& a, bool last_trivial)
{
    std::vector<RootId> al{{1, 1}, {2, 0}, {0, 2}};
    if (last_trivial) std::swap(al[1], al[2]);
    return oracle::case1("A2 x A1 x C*", {0, 1}, al, a);
}

// alphas ({1}, x, a1(B3), a3(B3)) with x trivial (C*) or a1(A1)
oracle::Variety c2(const std::vector<long>& a, bool alpha_r_trivial)
{
    if (alpha_r_trivial) return oracle::case2("1 x C* x B3", {{0, 0}, {1, 0}, {2, 1}, {2, 3}}, a);
    return oracle::case2("1 x A1 x B3", {{0, 0}, {1, 1}, {2, 1}, {2, 3}}, a);
}

using Events = std::vector<std::pair<Q, EventKind>>;

Events events_of(const MMPTrace& t)
{
    Events e;
    for (auto& ev : t.events) e.push_back({ev.epsilon, ev.kind});
    return e;
}

constexpr auto Flip = EventKind::Flip;
constexpr auto Div = EventKind::DivisorialContraction;
constexpr auto Fib = EventKind::Fibration;

// row order of the closed forms: case edges, then the beta row
std::vector<int> canonical_rows(const oracle::Variety& v)
{
    auto c = case_detect(v.hs, v.fan);
    std::vector<int> rows(c.u.begin(), c.u.end());
    for (int k : c.v) rows.push_back(k);
    if (c.kind == CaseKind::Case1) rows.push_back(int(edges(v.fan).size()));
    return rows;
}

std::set<PredictedFace> relabel(const std::set<std::vector<int>>& faces, const std::vector<int>& rows,
                                const InequalitySystem& s)
{
    std::vector<int> inv(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) inv[rows[i]] = int(i);
    std::set<PredictedFace> out;
    for (auto& f : faces) {
        PredictedFace p;
        QMat eq;
        for (int r : f) {
            p.rows.push_back(inv[r]);
            eq.push_back(s.A[r]);
        }
        std::sort(p.rows.begin(), p.rows.end());
        p.dim = int(s.dim()) - (eq.empty() ? 0 : rank(eq));
        out.insert(p);
    }
    return out;
}

std::set<std::vector<int>> lattice_rows(const InequalitySystem& s)
{
    std::set<std::vector<int>> out;
    for (auto& f : face_lattice(s)) out.insert(f.rows);
    return out;
}

}  // namespace

TEST_CASE("family matrices")
{
    auto v = c1({0, 1, 2}, false);
    auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::Second);
    auto rows = canonical_rows(v);
    REQUIRE(rows.size() == 4);
    QMat A{{-1, -1}, {1, 0}, {0, 1}, {1, 2}};
    QVec B{-1, 0, 0, -1}, C{0, 0, 0, 1};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(fam.rows.A[rows[i]] == A[i]);
        CHECK(fam.B[rows[i]] == B[i]);
        CHECK(fam.C[rows[i]] == C[i]);
    }
    // v^eps = varpi_{alpha_0} + (1 - eps) varpi_beta
    auto fw = [&](RootId r) { return fundamental_weight(v.hs.G, r); };
    CHECK(fam.v0 == add(fw({1, 1}), fw({0, 1})));
    CHECK(fam.v1 == scale(fw({0, 1}), -1));

    auto w = c2({0, 2}, true);
    auto f2 = canonical_family(w.hs, w.fan, CanonicalChoice::Second);
    auto r2 = canonical_rows(w);
    QMat A2{{-1, 0}, {1, 0}, {0, 1}, {2, -1}};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(f2.rows.A[r2[i]] == A2[i]);
        CHECK(f2.B[r2[i]] == B[i]);
        CHECK(f2.C[r2[i]] == C[i]);
    }

    // K + Delta = 0 freezes the family
    auto P = case_prime_divisors(v.hs, v.fan, case_detect(v.hs, v.fan));
    auto still = build_family(v.hs, v.fan, P[0] + P[3], anticanonical(v.hs, v.fan));
    CHECK(still.C == zeros(4));
    CHECK(is_zero(still.v1));
    CHECK_THROWS_AS(epsilon_max(still), Error);

    CHECK_THROWS_AS(build_family(v.hs, v.fan, P[0], anticanonical(v.hs, v.fan)), Error);
}

TEST_CASE("traces of the rank two pictures")
{
    struct Row {
        std::vector<long> a;
        bool trivial;
        Events expect;
    };
    std::vector<Row> case1{
        {{0, 1, 2}, false, {{1, Flip}, {2, Flip}, {3, Fib}}},
        {{0, 1, 2}, true, {{1, Flip}, {2, Div}, {3, Fib}}},
        {{0, 0, 1}, false, {{1, Flip}, {2, Fib}}},
        {{0, 0, 1}, true, {{1, Div}, {2, Fib}}},
        {{0, 1, 1}, false, {{1, Flip}, {2, Fib}}},
        {{0, 1, 1}, true, {{1, Flip}, {2, Fib}}},
    };
    for (auto& r : case1) {
        CAPTURE(r.a);
        CAPTURE(r.trivial);
        auto v = c1(r.a, r.trivial);
        auto t = run_log_mmp(canonical_family(v.hs, v.fan, CanonicalChoice::Second));
        CHECK(events_of(t) == r.expect);
        auto p = predict_trace_case1(r.a, r.trivial);
        CHECK(events_of(p) == r.expect);
        CHECK(t.intervals == p.intervals);
    }
    for (bool triv : {false, true}) {
        auto w = c2({0, 2}, triv);
        auto t = run_log_mmp(canonical_family(w.hs, w.fan, CanonicalChoice::Second));
        Events expect{{1, triv ? Div : Flip}, {3, Fib}};
        CHECK(events_of(t) == expect);
        CHECK(events_of(predict_trace_case2({0, 2}, triv)) == expect);
        CHECK(t.intervals == predict_trace_case2({0, 2}, triv).intervals);
    }

    // a_n = 0: one fibration, the polytope frozen on [0,1)
    auto flat = c1({0, 0, 0}, false);
    auto fam = canonical_family(flat.hs, flat.fan, CanonicalChoice::Second);
    auto t = run_log_mmp(fam);
    CHECK(events_of(t) == Events{{1, Fib}});
    CHECK(vertices(fam.at(Q(1, 2))) == vertices(fam.at(0)));
    CHECK(critical_epsilons(fam).size() == 1);
}

TEST_CASE("closed-form faces")
{
    auto f = faces_case1(2, {0, 1, 2}, Q(3, 2));
    std::set<std::vector<int>> facets;
    for (auto& x : f)
        if (x.dim == 1) facets.insert(x.rows);
    CHECK(facets == std::set<std::vector<int>>{{0}, {1}, {2}, {3}});
    CHECK(f.size() == 9);

    auto g = faces_case1(2, {0, 0, 1}, 1);
    CHECK(g.count({{2, 3}, 1}));

    auto h = faces_case2(1, {0, 2}, 0);
    facets.clear();
    for (auto& x : h)
        if (x.dim == 1) facets.insert(x.rows);
    CHECK(facets == std::set<std::vector<int>>{{0}, {1}, {2}, {3}});
    CHECK(h.size() == 9);

    CHECK_THROWS_AS(faces_case1(2, {0, 0, 0}, 0), Error);
    CHECK_THROWS_AS(faces_case1(2, {0, 1, 2}, 3), Error);
    CHECK_THROWS_AS(faces_case2(1, {0, 0}, 0), Error);
}

TEST_CASE("closed forms against the engine")
{
    std::vector<std::vector<long>> grid1{{0, 1, 2}, {0, 0, 1}, {0, 1, 1}, {0, 2, 3}, {0, 0, 3}};
    for (auto& a : grid1)
        for (bool triv : {false, true}) {
            CAPTURE(a);
            CAPTURE(triv);
            auto v = c1(a, triv);
            auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::Second);
            auto rows = canonical_rows(v);
            auto t = run_log_mmp(fam);
            auto p = predict_trace_case1(a, triv);
            CHECK(events_of(t) == events_of(p));
            for (auto& iv : t.intervals)
                for (int k = 1; k <= 5; ++k) {
                    Q e = iv.lo == iv.hi ? iv.lo : iv.lo + (iv.hi - iv.lo) * k / 6;
                    auto s = fam.at(e);
                    CHECK(relabel(lattice_rows(s), rows, s) == faces_case1(2, a, e));
                }
        }
    for (auto a : std::vector<std::vector<long>>{{0, 1}, {0, 2}, {0, 3}})
        for (bool triv : {false, true}) {
            auto w = c2(a, triv);
            auto fam = canonical_family(w.hs, w.fan, CanonicalChoice::Second);
            auto rows = canonical_rows(w);
            auto t = run_log_mmp(fam);
            CHECK(events_of(t) == events_of(predict_trace_case2(a, triv)));
            for (auto& iv : t.intervals) {
                auto s = fam.at(iv.sample());
                CHECK(relabel(lattice_rows(s), rows, s) == faces_case2(1, a, iv.sample()));
            }
            // the family ends at the point u_r^*
            CHECK(vertices(fam.at(1 + a[1])) == std::vector<QVec>{{1, 0}});
        }
}

TEST_CASE("intervals and monotonicity")
{
    auto v = c1({0, 1, 2}, true);
    auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::Second);
    auto t = run_log_mmp(fam);
    CHECK(t.intervals.front().lo == 0);
    CHECK(t.intervals.front().lo_closed);
    CHECK(t.intervals.back().hi == t.eps_max);
    CHECK(!t.intervals.back().hi_closed);
    for (size_t i = 1; i < t.intervals.size(); ++i) {
        CHECK(t.intervals[i].lo == t.intervals[i - 1].hi);
        CHECK(t.intervals[i].lo_closed != t.intervals[i - 1].hi_closed);
        CHECK(!(t.signatures[i] == t.signatures[i - 1]));
    }
    for (size_t i = 0; i < t.intervals.size(); ++i) {
        auto& iv = t.intervals[i];
        if (iv.lo == iv.hi) continue;
        for (int k : {1, 2, 3}) CHECK(signature_at(fam, iv.lo + (iv.hi - iv.lo) * k / 4) == t.signatures[i]);
    }
    // the divisorial step drops the row of the trivial alpha_2
    auto& div = t.events[1];
    REQUIRE(div.kind == Div);
    REQUIRE(div.pruned_rows.size() == 1);
    CHECK(fam.rows.tags[div.pruned_rows[0]].kind == RowKind::GStableRay);
    CHECK(fam.rows.A[div.pruned_rows[0]] == QVec{0, 1});

    for (Q e1 : {Q(0), Q(1, 2), Q(1), Q(2)})
        for (Q e2 : {Q(1, 2), Q(1), Q(5, 2)}) {
            if (e2 < e1) continue;
            auto later = fam.at(e2), earlier = fam.at(e1);
            for (auto& x : vertices(later))
                for (size_t i = 0; i < earlier.rows(); ++i) CHECK(dot(earlier.A[i], x) >= earlier.b[i]);
        }
}

TEST_CASE("fibers")
{
    // a_n = 0: the polytope stays put and only the beta wall is hit
    auto flat = c1({0, 0, 0}, false);
    auto ft = run_log_mmp(canonical_family(flat.hs, flat.fan, CanonicalChoice::Second));
    auto& fr = *ft.events.back().fiber;
    CHECK(fr.rank_drop == 0);
    RootSet alphas{{1, 1}, {0, 2}};
    CHECK(fr.target_R == alphas);
    auto with_beta = alphas;
    with_beta.insert({0, 1});
    CHECK(fr.source_R == with_beta);
    // P(alphas)/P(alphas, beta): difference of the two flag dimensions
    auto levi = [&](const RootSet& keep) {
        RootSet l;
        for (auto& a : all_simple_roots(flat.hs.G))
            if (!a.trivial() && !keep.count(a)) l.insert(a);
        return l;
    };
    CHECK(fr.general_dim == flag_dimension(flat.hs.G, levi(with_beta)) - flag_dimension(flat.hs.G, levi(alphas)));
    // each target orbit has one preimage here
    CHECK(fr.entries.size() == 7);

    // first fibration: Q^1 is a multiple of varpi_beta, fiber dim X - dim G/P(beta)
    for (auto a : std::vector<std::vector<long>>{{0, 1, 2}, {0, 0, 1}}) {
        auto v = c1(a, false);
        auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::First);
        auto t = run_log_mmp(fam);
        REQUIRE(t.events.size() == 1);
        CHECK(t.events[0].kind == Fib);
        CHECK(t.eps_max == 1);
        CHECK(vertices(fam.at(1)) == std::vector<QVec>{{0, 0}});
        auto q1 = fam.v(1);
        auto beta = fundamental_weight(v.hs.G, {0, 1});
        CHECK(rank(QMat{q1, beta}) == 1);
        int dimX = flag_dimension(v.hs.G, levi(v.hs.R)) + 2;
        int dimGP = flag_dimension(v.hs.G, levi({{0, 1}}));
        CHECK(t.events[0].fiber->general_dim == dimX - dimGP);
    }

    // alpha_n trivial with a_1 < a_2: the last fibration goes to a point
    auto v = c1({0, 1, 2}, true);
    auto t = run_log_mmp(canonical_family(v.hs, v.fan, CanonicalChoice::Second));
    int dimX = flag_dimension(v.hs.G, levi(v.hs.R)) + 2;
    CHECK(t.events.back().fiber->general_dim == dimX);
    CHECK(t.events.back().fiber->target_R.empty());
}

TEST_CASE("face images along the sweep")
{
    auto v = c1({0, 1, 2}, false);
    auto t = run_log_mmp(canonical_family(v.hs, v.fan, CanonicalChoice::Second));
    for (auto& ev : t.events) {
        CHECK(!ev.face_map.empty());
        for (auto& im : ev.face_map) CHECK(im.target);
    }
    // at 1 nothing moves yet; at 2 the edge on x2 = 0 shrinks to the vertex e_1^*
    for (auto& im : t.events[0].face_map) CHECK(im.target->dim == im.source.dim);
    int shrunk = 0;
    for (auto& im : t.events[1].face_map)
        if (im.target->dim < im.source.dim) ++shrunk;
    CHECK(shrunk == 1);
}

TEST_CASE("same trace with several workers")
{
    auto v = c1({0, 1, 2}, true);
    auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::Second);
    auto one = run_log_mmp(fam);
    setenv("HOROKIT_THREADS", "4", 1);
    CHECK(worker_count() == 4);
    auto four = run_log_mmp(fam);
    unsetenv("HOROKIT_THREADS");
    CHECK(events_of(one) == events_of(four));
    CHECK(one.intervals == four.intervals);
    CHECK(one.signatures == four.signatures);
}

TEST_CASE("events only")
{
    for (bool triv : {false, true}) {
        auto v = c1({0, 1, 2}, triv);
        auto fam = canonical_family(v.hs, v.fan, CanonicalChoice::Second);
        auto full = run_log_mmp(fam);
        auto light = run_log_mmp(fam, TraceDetail::EventsOnly);
        CHECK(events_of(full) == events_of(light));
        CHECK(full.intervals == light.intervals);
        CHECK(full.signatures == light.signatures);
        CHECK(!light.events.back().fiber);
        for (auto& ev : light.events) CHECK(ev.face_map.empty());
    }
}
