#pragma once

#include "horokit/rational.hpp"

namespace horokit {

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Q value;
    QVec x;
};

// maximize c.x subject to A x >= b, and rows of E x = f; x free.
// Exact simplex with Bland's rule.
LPResult lp_maximize(const QVec& c, const QMat& A, const QVec& b,
                     const QMat& E = {}, const QVec& f = {});

}  // namespace horokit
