#pragma once

#include "horokit/horo.hpp"
#include "horokit/polyhedra.hpp"

#include <map>
#include <optional>

namespace horokit {

// sum a_i X_i + sum a_alpha D_alpha; gstable follows gstable_edges(fan)
struct BStableDivisor {
    QVec gstable;
    std::map<RootId, Q> colors;  // missing roots count as 0
    Q color(const RootId& a) const;
};

BStableDivisor zero_divisor(const HomSpaceData& hs, const ColoredFan& fan);
BStableDivisor operator+(const BStableDivisor& x, const BStableDivisor& y);
BStableDivisor operator*(const Q& c, const BStableDivisor& x);
bool is_integral(const BStableDivisor& d);
std::string to_string(const BStableDivisor& d);

// prime divisor attached to edge number k of edges(fan)
BStableDivisor edge_divisor(const HomSpaceData& hs, const ColoredFan& fan, int k);
BStableDivisor color_divisor(const HomSpaceData& hs, const ColoredFan& fan, const RootId& a);

// one linear form per maximal cone (coordinates in the M basis)
struct PLFunction {
    std::vector<int> cones;  // indices into fan.cones
    std::vector<QVec> forms;
    bool cartier = false;
    Q eval(const ColoredFan& fan, const IVec& v) const;
};

PLFunction pl_function(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d);

enum class AmpleStatus { Ample, GloballyGeneratedNotAmple, Neither };
std::string to_string(AmpleStatus s);
AmpleStatus ample_status(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d);

// rows follow edges(fan), then the colors outside F_X in root order
struct MomentData {
    InequalitySystem Qtilde;
    QVec v0;  // weight coordinates
};
MomentData moment_polytopes(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d);

// chi in M coordinates to a weight
QVec to_weight(const HomSpaceData& hs, const QVec& chi);
// v0 + (lattice points of Qtilde), sorted
std::vector<QVec> lattice_weights(const HomSpaceData& hs, const InequalitySystem& Qtilde, const QVec& v0);
std::vector<QVec> section_weights(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& d);

BStableDivisor anticanonical(const HomSpaceData& hs, const ColoredFan& fan);
bool is_fano(const HomSpaceData& hs, const ColoredFan& fan);

// D - div(chi) has value 0 on a fixed basis of N among the edges
BStableDivisor principal_divisor(const HomSpaceData& hs, const ColoredFan& fan, const QVec& chi);
bool linearly_equivalent(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& x,
                         const BStableDivisor& y);

bool verify_nef_generators(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& da,
                           const BStableDivisor& db);

// D_0 .. D_{n+1} of a Case 1 or Case 2 variety
std::vector<BStableDivisor> case_prime_divisors(const HomSpaceData& hs, const ColoredFan& fan, const CaseData& c);

}  // namespace horokit
