#include <doctest.h>

#include "horokit/quadruple.hpp"
#include "oracles.hpp"

using namespace horokit;

namespace {

const RootId a1{0, 1}, a2{0, 2};

HomSpaceData segment_space()
{
    HomSpaceData hs{parse_group("A2"), {a1, a2}, {}};
    hs.M_basis = {fundamental_weight(hs.G, a2)};
    return hs;
}

// X: both rays uncolored, -1 listed first
ColoredFan fan_x() { return {{{{}, {}}, {{{-1}}, {}}, {{{1}}, {}}}}; }
// X': the ray +1 carries the color a2
ColoredFan fan_xprime() { return {{{{}, {}}, {{{-1}}, {}}, {{{1}}, {a2}}}}; }

BStableDivisor divisor(const QVec& gstable, long c1, long c2)
{
    BStableDivisor d{gstable, {}};
    d.colors[a1] = c1;
    d.colors[a2] = c2;
    return d;
}

// Q = [2w1+2w2, 2w1+4w2]
AdmissibleQuadruple quad_x() { return quadruple_of(segment_space(), fan_x(), divisor({2, 0}, 2, 2)); }
// Q' = [2w1, 2w1+2w2]
AdmissibleQuadruple quad_xprime() { return quadruple_of(segment_space(), fan_xprime(), divisor({2}, 2, 0)); }

QVec wt(long c1, long c2)
{
    auto G = parse_group("A2");
    return add(scale(fundamental_weight(G, a1), c1), scale(fundamental_weight(G, a2), c2));
}

// the face whose points are exactly {x}
Face vertex_face(const AdmissibleQuadruple& q, const Q& x)
{
    for (auto& f : face_lattice(q.Qtilde)) {
        if (f.dim != 0) continue;
        bool all = true;
        for (int i : f.rows) all &= q.Qtilde.A[i][0] * x == q.Qtilde.b[i];
        if (all) return f;
    }
    FAIL("no vertex at " << to_string(x));
    return {};
}

Face whole(const AdmissibleQuadruple& q)
{
    auto faces = face_lattice(q.Qtilde);
    return *std::max_element(faces.begin(), faces.end(),
                             [](const Face& x, const Face& y) { return x.dim < y.dim; });
}

std::set<oracle::Face> oracle_faces(const InequalitySystem& s)
{
    return *oracle::faces_by_vertices(s.A, s.b);
}

}  // namespace

TEST_CASE("admissibility of the segment quadruples")
{
    auto x = quad_x(), xp = quad_xprime();
    CHECK(ample_status(x.hs, fan_x(), divisor({2, 0}, 2, 2)) == AmpleStatus::Ample);
    CHECK(ample_status(xp.hs, fan_xprime(), divisor({2}, 2, 0)) == AmpleStatus::Ample);
    CHECK(x.v0 == wt(2, 2));
    CHECK(xp.v0 == wt(2, 0));
    CHECK(vertices(x.Qtilde) == std::vector<QVec>{{0}, {2}});
    CHECK(vertices(xp.Qtilde) == std::vector<QVec>{{0}, {2}});
    CHECK(is_admissible(x));
    CHECK(is_admissible(xp));

    // whole segment on the wall of a1
    auto on_wall = x;
    on_wall.v0 = wt(0, 2);
    auto rep = check_admissible(on_wall);
    CHECK(rep.failures == std::vector{AdmissibilityClause::MissesInterior});

    // pushed below the wall of a2
    auto neg = x;
    neg.v0 = wt(2, -1);
    rep = check_admissible(neg);
    CHECK(rep.failures == std::vector{AdmissibilityClause::NotDominant});
    CHECK(rep.negative_roots == std::vector{a2});

    // a point in a rank one lattice
    auto point = x;
    point.Qtilde = InequalitySystem{};
    point.Qtilde.add_row({1}, 0);
    point.Qtilde.add_row({-1}, 0);
    CHECK(check_admissible(point).failures == std::vector{AdmissibilityClause::NotFullDimensional});

    auto empty = x;
    empty.Qtilde.add_row({1}, 5);
    CHECK(check_admissible(empty).failures == std::vector{AdmissibilityClause::Empty});
}

TEST_CASE("orbits of the segment quadruples")
{
    auto x = quad_x(), xp = quad_xprime();
    auto px = orbit_poset(x), pxp = orbit_poset(xp);
    CHECK(px.size() == 3);
    CHECK(pxp.size() == 3);

    // closed orbits of X: both full flags
    for (long v : {0, 2}) {
        auto o = orbit_of_face(x, vertex_face(x, v));
        CHECK(o.R_F == RootSet{a1, a2});
        CHECK(o.mf_rank == 0);
        CHECK(o.orbit_dim == 3);
    }
    // X': the vertex 2w1 sits on the wall of a2
    auto low = orbit_of_face(xp, vertex_face(xp, 0));
    CHECK(low.R_F == RootSet{a1});
    CHECK(low.walls == RootSet{a2});
    CHECK(low.orbit_dim == 2);
    auto high = orbit_of_face(xp, vertex_face(xp, 2));
    CHECK(high.R_F == RootSet{a1, a2});
    CHECK(high.orbit_dim == 3);

    auto open = orbit_of_face(x, whole(x));
    CHECK(open.orbit_dim == 3 + 1);
    CHECK(open.walls.empty());

    Face none{{0, 1}, -1};
    CHECK_THROWS_AS(orbit_of_face(x, none), Error);
}

TEST_CASE("face images between the segment quadruples")
{
    auto x = quad_x(), xp = quad_xprime();
    for (long v : {0, 2}) {
        auto img = map_face(x, xp, vertex_face(x, v));
        REQUIRE(img);
        CHECK(*img == vertex_face(xp, v));
    }
    CHECK(map_face(x, xp, whole(x)) == whole(xp));

    // backwards: 2w1 has nowhere to go, 2w1+2w2 goes to the top of Q
    CHECK(!map_face(xp, x, vertex_face(xp, 0)));
    auto top = map_face(xp, x, vertex_face(xp, 2));
    REQUIRE(top);
    CHECK(*top == vertex_face(x, 2));

    for (auto& f : face_lattice(x.Qtilde)) CHECK(map_face(x, x, f) == f);

    auto twice = xp;
    twice.Qtilde.add_row({1}, -7, xp.Qtilde.tags[0]);
    CHECK_THROWS_AS(map_face(x, twice, whole(x)), Error);
}

TEST_CASE("orbit posets from ample divisors")
{
    auto v = oracle::case1("A2 x A1 x C*", {0, 1}, {{1, 1}, {2, 0}, {0, 2}}, {0, 1, 2});
    auto D = case_prime_divisors(v.hs, v.fan, case_detect(v.hs, v.fan));
    auto q = quadruple_of(v.hs, v.fan, D[0] + D[3]);
    REQUIRE(is_admissible(q));
    auto poset = orbit_poset(q);
    CHECK(poset.size() == oracle_faces(q.Qtilde).size());
    CHECK(poset.size() == 7);

    RootSet levi;
    for (auto& a : all_simple_roots(v.hs.G))
        if (!a.trivial() && !v.hs.R.count(a)) levi.insert(a);
    int open_dim = flag_dimension(v.hs.G, levi) + 2;
    int seen_open = 0;
    for (auto& node : poset) {
        if (node.face.dim == 2) {
            CHECK(node.orbit.orbit_dim == open_dim);
            ++seen_open;
        }
        for (int j : node.below) CHECK(poset[j].orbit.orbit_dim < node.orbit.orbit_dim);
    }
    CHECK(seen_open == 1);

    // each sum of ample primes on the grid stays admissible
    for (int c0 = 1; c0 <= 2; ++c0)
        for (int c3 = 1; c3 <= 2; ++c3) {
            auto d = Q(c0) * D[0] + Q(c3) * D[3];
            if (ample_status(v.hs, v.fan, d) == AmpleStatus::Ample) CHECK(is_admissible(quadruple_of(v.hs, v.fan, d)));
        }

    // the same rows moved to eps = 3/2: a quadrilateral
    auto cut = q;
    cut.Qtilde.b.back() += Q(3, 2);
    auto faces = oracle_faces(cut.Qtilde);
    CHECK(faces.size() == 9);
    CHECK(orbit_poset(cut).size() == 9);
}
