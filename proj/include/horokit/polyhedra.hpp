#pragma once

#include "horokit/lp.hpp"
#include "horokit/rootdata.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace horokit {

enum class RowKind { Plain, GStableRay, Color };

struct RowTag {
    RowKind kind = RowKind::Plain;
    int index = 0;  // ray index for GStableRay, row number for Plain
    RootId root;    // for Color
    bool operator==(const RowTag&) const = default;
    auto operator<=>(const RowTag&) const = default;
};
std::string to_string(const RowTag& t);

// { x : A x >= b }
struct InequalitySystem {
    QMat A;
    QVec b;
    std::vector<RowTag> tags;

    size_t rows() const { return A.size(); }
    size_t dim() const { return dimension; }
    size_t dimension = 0;

    void add_row(const QVec& a, const Q& rhs, RowTag tag = {});
    InequalitySystem without_rows(const std::set<int>& drop) const;
};
InequalitySystem make_system(const QMat& A, const QVec& b);

struct Face {
    std::vector<int> rows;  // every row tight on the face, sorted
    int dim = 0;
    bool operator==(const Face&) const = default;
    auto operator<=>(const Face&) const = default;
};

LPResult maximize(const InequalitySystem& s, const QVec& c);
bool is_feasible(const InequalitySystem& s);
bool is_bounded(const InequalitySystem& s);
// rows tight on the whole polyhedron
std::vector<int> implicit_equalities(const InequalitySystem& s);
// -1 when empty
int polytope_dim(const InequalitySystem& s);
bool is_redundant(const InequalitySystem& s, int row);

// throws Unbounded
std::vector<QVec> vertices(const InequalitySystem& s);
std::vector<QVec> vertices_of_bounded(const InequalitySystem& s);
// rows whose removal alone leaves the feasible set unchanged
std::vector<int> redundant_rows(const InequalitySystem& s);
// non-empty faces of a bounded polytope, keyed by their tight-row sets;
// throws EmptyPolytope / Unbounded
std::vector<Face> face_lattice(const InequalitySystem& s);
// same, skipping the boundedness certificate (caller guarantees it)
std::vector<Face> face_lattice_bounded(const InequalitySystem& s);

// drops, one at a time and in row order, rows accepted by `may_drop`
// that are redundant for the current system; returns the dropped rows
std::vector<int> prune_redundant(const InequalitySystem& s, const std::vector<bool>& may_drop);

}  // namespace horokit
