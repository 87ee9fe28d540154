#pragma once

#include "horokit/rational.hpp"

#include <optional>

namespace horokit {

// reduced row echelon form in place, returns pivot columns
std::vector<int> rref(QMat& m);
int rank(QMat m);
Q det(QMat m);
// some solution of m x = rhs, nullopt if inconsistent
std::optional<QVec> solve(const QMat& m, const QVec& rhs);
// unique solution for square nonsingular m
std::optional<QVec> solve_square(const QMat& m, const QVec& rhs);
QMat nullspace(const QMat& m);
QMat transpose(const QMat& m);
QVec mat_vec(const QMat& m, const QVec& v);

long gcd_of_maximal_minors(const std::vector<IVec>& rows);
IVec primitive(const IVec& v);

}  // namespace horokit
