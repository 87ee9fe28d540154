#pragma once

#include "horokit/horo.hpp"
#include "horokit/rootdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace horokit {

// G_0 carries beta; alphas alpha_0..alpha_n; a_0 = 0 <= ... <= a_n
struct X1Spec {
    GroupProduct G;
    RootId beta;
    std::vector<RootId> alphas;
    IVec a;
    bool operator==(const X1Spec&) const = default;
    int n() const { return int(alphas.size()) - 1; }
};

// alphas alpha_0..alpha_{n+1}, a_0..a_{n-1}; the last two alphas span the v side
struct X2Spec {
    GroupProduct G;
    std::vector<RootId> alphas;
    IVec a;
    bool operator==(const X2Spec&) const = default;
    int n() const { return int(alphas.size()) - 2; }
    int r() const { return n() - 1; }
};

std::string to_string(const X1Spec& s);
std::string to_string(const X2Spec& s);

// definition constraints; empty when the spec is well formed
std::vector<std::string> spec_violations(const X1Spec& s);
std::vector<std::string> spec_violations(const X2Spec& s);

struct BuiltVariety {
    HomSpaceData hs;
    ColoredFan fan;
};
BuiltVariety build_x1(const X1Spec& s);
BuiltVariety build_x2(const X2Spec& s);

int open_orbit_dimension(const X1Spec& s);
int open_orbit_dimension(const X2Spec& s);

enum class RCTag { A, B, C };
std::string to_string(RCTag t);

struct RCResult {
    std::optional<RCTag> tag;
    std::string reason;  // first violated clause
    bool ok() const { return tag.has_value(); }
};
RCResult check_rc1(const X1Spec& s);
RCResult check_rc2(const X2Spec& s);

// the smoothness constraints a raw spec must meet; empty when smooth
std::vector<std::string> smoothness_violations(const X1Spec& s);
std::vector<std::string> smoothness_violations(const X2Spec& s);

// Picard rank one factor of a product: G/P for one root, otherwise the
// orbit closure in P(V(w_gamma) + V(w_delta))
struct PicardOne {
    GroupProduct G;
    std::vector<RootId> roots;
    bool operator==(const PicardOne&) const = default;
    int dimension() const;
};
std::string to_string(const PicardOne& p);

enum class NFKind { Case0, X1, X2, Product };
std::string to_string(NFKind k);

struct NormalForm {
    NFKind kind = NFKind::Product;
    // Case0
    GroupProduct G;
    std::vector<RootId> roots;
    std::optional<X1Spec> x1;
    std::optional<X2Spec> x2;
    RCTag rc = RCTag::A;
    std::vector<PicardOne> factors;
    bool operator==(const NormalForm&) const = default;
};
std::string to_string(const NormalForm& f);
int dimension(const NormalForm& f);

enum class Rule { Merge, TypeC, Cover, Convert, Product };
std::string to_string(Rule r);
const std::vector<Rule>& default_rule_order();

struct RewriteStep {
    Rule rule;
    std::string before;
    std::string after;
    int dim_before = 0;
    int dim_after = 0;
};

struct Normalization {
    NormalForm result;
    std::vector<RewriteStep> steps;
};

// the first applicable rule in `order` fires, then the scan restarts
Normalization normalize_traced(const X1Spec& raw, const std::vector<Rule>& order = default_rule_order());
Normalization normalize_traced(const X2Spec& raw, const std::vector<Rule>& order = default_rule_order());
NormalForm normalize(const X1Spec& raw);
NormalForm normalize(const X2Spec& raw);

// canonical representative under diagram symmetries and factor order
X1Spec canonical(const X1Spec& s);
X2Spec canonical(const X2Spec& s);

// k, and the block starts i_0 = 0 < i_1 < ... < i_k, i_{k+1} = n + 1
std::vector<int> block_starts(const IVec& a);

struct LocusRecord {
    int l = 0;
    std::vector<int> I;  // indices of the face
    std::vector<QVec> weights;
    int rank = 0;
    int dim = 0;
    std::optional<X1Spec> x1;  // Case 1, rank >= 1
    std::optional<X2Spec> x2;  // Case 2, rank >= 2
};
std::vector<LocusRecord> exceptional_loci(const X1Spec& s);
std::vector<LocusRecord> exceptional_loci(const X2Spec& s);

struct FiberEntry2 {
    int j = 0;
    int d = 0;
    std::string base;
    int base_dim = 0;
    // (dim P(w_j)/(P(w_beta) n P(w_j)), dim P(w_beta)/(P(w_beta) n P(w_j)))
    std::pair<int, int> invariant{0, 0};
};

struct FiberRow {
    int l = 0;
    int kind = 0;  // 1..4 in Case 1, 0 in Case 2
    int dim_E = 0;
    int dim_E_prev = 0;
    int dim_E_prime = 0;
    std::vector<FiberEntry2> entries;
};
std::vector<FiberRow> fiber_dimension_table(const X1Spec& s);
std::vector<FiberRow> fiber_dimension_table(const X2Spec& s);

enum class FiberClass { ProjectiveSpace, HomogeneousNonPS, TwoOrbit };
std::string to_string(FiberClass c);

struct PsiFibration {
    std::string target;
    int target_dim = 0;
    FiberClass fiber = FiberClass::ProjectiveSpace;
    int fiber_dim = 0;
};
PsiFibration psi_fibration(const X1Spec& s);
PsiFibration psi_fibration(const X2Spec& s);

}  // namespace horokit
