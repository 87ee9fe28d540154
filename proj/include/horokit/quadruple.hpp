#pragma once

#include "horokit/divisor.hpp"

#include <optional>

namespace horokit {

// Q = v0 + Qtilde; Qtilde lives in M_Q with coordinates in hs.M_basis
struct AdmissibleQuadruple {
    HomSpaceData hs;
    InequalitySystem Qtilde;
    QVec v0;
};

AdmissibleQuadruple quadruple_of(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d);

enum class AdmissibilityClause { Empty, Unbounded, NotDominant, NotFullDimensional, MissesInterior };
std::string to_string(AdmissibilityClause c);

struct AdmissibilityReport {
    std::vector<AdmissibilityClause> failures;
    std::vector<RootId> negative_roots;  // roots going negative somewhere on Q
    bool ok() const { return failures.empty(); }
};

AdmissibilityReport check_admissible(const AdmissibleQuadruple& q);
bool is_admissible(const AdmissibleQuadruple& q);

// pairing of a root coroot with the point v0 + chi
Q wall_value(const AdmissibleQuadruple& q, const RootId& a, const QVec& chi);

struct OrbitData {
    RootSet walls;   // roots of R whose wall contains the face
    RootSet R_F;     // R minus walls: P_F drops exactly these
    int mf_rank = 0;
    int orbit_dim = 0;
};

OrbitData orbit_of_face(const AdmissibleQuadruple& q, const Face& f);

struct OrbitNode {
    Face face;
    OrbitData orbit;
    std::vector<int> below;  // faces strictly contained in this one
};
std::vector<OrbitNode> orbit_poset(const AdmissibleQuadruple& q);

// std::nullopt when the image is empty (no morphism sends that orbit anywhere)
std::optional<Face> map_face(const AdmissibleQuadruple& source, const AdmissibleQuadruple& target, const Face& f);

}  // namespace horokit
