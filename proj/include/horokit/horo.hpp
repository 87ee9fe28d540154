#pragma once

#include "horokit/rootdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace horokit {

// (P, M): R = simple roots not in P, M given by a basis of weights
struct HomSpaceData {
    GroupProduct G;
    RootSet R;
    std::vector<QVec> M_basis;
    int rank() const { return int(M_basis.size()); }
};

// throws InputError on a malformed pair
void check_hom_space(const HomSpaceData& hs);

// alpha^vee restricted to M, in coordinates dual to M_basis
IVec sigma(const HomSpaceData& hs, const RootId& alpha);

struct ColoredCone {
    std::vector<IVec> generators;
    RootSet colors;
    bool operator==(const ColoredCone&) const = default;
};

struct ColoredFan {
    std::vector<ColoredCone> cones;
};

// generators made primitive and sorted; colors kept
ColoredCone normalized(const ColoredCone& c);

// the generator subsets spanning faces of the cone (indices into generators)
std::vector<std::vector<int>> cone_faces(const std::vector<IVec>& gens);
bool cone_contains(const std::vector<IVec>& gens, const IVec& v);

// closes a list of cones under colored faces, keeping first-appearance order
ColoredFan fan_from_cones(const HomSpaceData& hs, const std::vector<ColoredCone>& cones);

enum class FanClause { ColorNotInR, GeneratorNotPrimitive, GeneratorNotExtremal, ColorOutsideCone,
                       ZeroColor, LineViolation, FaceClosureViolation, OverlapViolation,
                       DuplicateCone, WrongDimension };
std::string to_string(FanClause c);

struct FanViolation {
    FanClause clause;
    int cone;
    int other = -1;
    std::string detail;
};

std::vector<FanViolation> validate_fan(const HomSpaceData& hs, const ColoredFan& fan);

// cones that are not proper faces of other cones
std::vector<int> maximal_cones(const ColoredFan& fan);

// one-dimensional cones, in the order they first appear among the cones
struct Edge {
    IVec ray;
    std::optional<RootId> color;  // empty for a G-stable edge
};
std::vector<Edge> edges(const ColoredFan& fan);
// the G-stable edges x_1..x_m
std::vector<IVec> gstable_edges(const ColoredFan& fan);
RootSet fan_colors(const ColoredFan& fan);

// simplicial fans only; throws UnsupportedFan otherwise
bool is_complete(const HomSpaceData& hs, const ColoredFan& fan);
bool is_locally_factorial(const HomSpaceData& hs, const ColoredFan& fan);
int picard_rank(const HomSpaceData& hs, const ColoredFan& fan);
bool is_smooth_variety(const HomSpaceData& hs, const ColoredFan& fan);

enum class CaseKind { Case0, Case1, Case2, Other };
std::string to_string(CaseKind k);

struct CaseData {
    CaseKind kind = CaseKind::Other;
    // Case 1: edge indices of e_0..e_n; Case 2: u_0..u_r
    std::vector<int> u;
    // Case 2: v_1..v_{s+1}
    std::vector<int> v;
    IVec a;  // a_0 = 0 <= a_1 <= ...
    RootId beta;
    int r = 0;
    int s = 0;
};

CaseData case_detect(const HomSpaceData& hs, const ColoredFan& fan);

}  // namespace horokit
