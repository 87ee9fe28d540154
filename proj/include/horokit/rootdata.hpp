#pragma once

#include "horokit/rational.hpp"

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace horokit {

enum class Family { A, B, C, D, E, F, G, Torus, Trivial };

struct SimpleFactor {
    Family family = Family::Trivial;
    int rank = 0;  // 0 for Torus and Trivial
    bool operator==(const SimpleFactor&) const = default;
    auto operator<=>(const SimpleFactor&) const = default;
    bool is_simple() const { return family != Family::Torus && family != Family::Trivial; }
};

struct GroupProduct {
    std::vector<SimpleFactor> factors;
    bool operator==(const GroupProduct&) const = default;
};

// index 0 is the trivial root of a C* or {1} factor, otherwise Bourbaki label
struct RootId {
    int factor = 0;
    int index = 0;
    bool operator==(const RootId&) const = default;
    auto operator<=>(const RootId&) const = default;
    bool trivial() const { return index == 0; }
};

using RootSet = std::set<RootId>;

// Builds a factor, folding the low-rank coincidences (B2=C2, D3=A3, B1=C1=A1).
// relabel[i] is the canonical label of input label i (relabel[0] = 0).
struct CanonicalFactor {
    SimpleFactor factor;
    std::vector<int> relabel;
};
CanonicalFactor make_factor(Family f, int rank);

std::string to_string(const SimpleFactor& f);
std::string to_string(const GroupProduct& g);
std::string to_string(const RootId& r);
std::string to_string(const RootSet& r);

// "A5 x C* x 1", also SL<d>, Sp<d>, Spin<d>, {1}, {0}
GroupProduct parse_group(const std::string& s, std::vector<std::vector<int>>* relabels = nullptr);
// "(0,a3)" or "(1,triv)"
RootId parse_root(const std::string& s, const GroupProduct* g = nullptr,
                  const std::vector<std::vector<int>>* relabels = nullptr);

// squared root lengths, 1-based (entry 0 unused)
std::vector<int> root_lengths(const SimpleFactor& f);
bool adjacent(const SimpleFactor& f, int i, int j);
// Bourbaki table entry n_ij = <alpha_i, alpha_j^vee>
int cartan_entry(const SimpleFactor& f, int i, int j);
// <alpha_i^vee, alpha_j>
int coroot_pairing_simple(const SimpleFactor& f, int i, int j);

// positive roots in simple-root coordinates (length rank)
const std::vector<IVec>& positive_roots(const SimpleFactor& f);
int num_positive_roots(const SimpleFactor& f);

// diagram automorphisms, each a permutation p with p[0] = 0
std::vector<std::vector<int>> diagram_symmetries(const SimpleFactor& f);

// weight coordinates: rank coords per simple factor, one per C*, none for {1}
int weight_dim(const GroupProduct& g);
int weight_offset(const GroupProduct& g, int factor);
void check_root(const GroupProduct& g, const RootId& r);
QVec fundamental_weight(const GroupProduct& g, const RootId& r);
QVec simple_root_weight(const GroupProduct& g, const RootId& r);
Q coroot_pairing(const GroupProduct& g, const RootId& alpha, const QVec& weight);
RootSet all_simple_roots(const GroupProduct& g);

// dim G/P where P has Levi roots `levi`
int flag_dimension(const GroupProduct& g, const RootSet& levi);
// sum of roots of the unipotent radical of P, in weight coordinates
QVec two_rho_unipotent(const GroupProduct& g, const RootSet& levi);

// connected subdiagram of a simple factor, with inherited Bourbaki labelling:
// labels[k-1] is the ambient index of internal alpha_k
struct Subdiagram {
    SimpleFactor type;
    std::vector<int> labels;
    int internal(int ambient) const;
};
std::vector<Subdiagram> components(const SimpleFactor& f, const std::set<int>& nodes);

bool is_short_extremal(const Subdiagram& s, int ambient);

// R1 and R2 are disjoint sets of non-trivial simple roots
bool is_smooth_pair(const GroupProduct& g, const RootSet& r1, const RootSet& r2);

enum class TripleKind { NotSmooth, Homogeneous, TwoOrbit };
struct TripleResult {
    TripleKind kind = TripleKind::NotSmooth;
    int table_case = 0;  // 1..8
};
// labels are Bourbaki labels of K
TripleResult smooth_triple(const SimpleFactor& k, int gamma, int delta);
// same for roots of a subdiagram given by ambient labels
TripleResult smooth_triple(const Subdiagram& s, int gamma, int delta);

enum class QuadrupleCondition { None, Pair, Spread };
QuadrupleCondition smooth_quadruple(const SimpleFactor& k, int beta, const std::set<int>& r, int n);
bool is_smooth_quadruple(const SimpleFactor& k, int beta, const std::set<int>& r, int n);

enum class NFlag { One, AtLeastTwo };
struct QuadrupleEntry {
    int beta;
    std::set<int> r;
    auto operator<=>(const QuadrupleEntry&) const = default;
};
// canonical representatives under diagram symmetries; One lists the
// two-root entries, AtLeastTwo the spread entries (R empty included)
std::vector<QuadrupleEntry> enumerate_smooth_quadruples(const SimpleFactor& k, NFlag n);
QuadrupleEntry canonical_entry(const SimpleFactor& k, const QuadrupleEntry& e);

// universal cover of Aut(K/P(varpi_beta)); same factor if already universal
struct CoverResult {
    bool changed = false;
    SimpleFactor factor;
    int beta = 0;
};
CoverResult universal_cover(const SimpleFactor& k, int beta);

}  // namespace horokit
