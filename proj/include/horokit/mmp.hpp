#pragma once

#include "horokit/quadruple.hpp"

#include <optional>

namespace horokit {

// Qtilde^eps = { x : A x >= B + eps C },  v^eps = v0 + eps v1
struct MMPFamily {
    HomSpaceData hs;
    InequalitySystem rows;  // A with b = B, tagged like moment_polytopes
    QVec B, C;
    QVec v0, v1;
    InequalitySystem at(const Q& eps) const;
    QVec v(const Q& eps) const;
    AdmissibleQuadruple quadruple(const Q& eps) const;
};

// D ample; K_X + Delta is read off as -anticanonical + Delta
MMPFamily build_family(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& D,
                       const BStableDivisor& delta);

// D0 + D_{n+1} with Delta = -D_{n+1} - K (second) or -D0 - K (first)
enum class CanonicalChoice { Second, First };
MMPFamily canonical_family(const HomSpaceData& hs, const ColoredFan& fan, CanonicalChoice which);

// faces after dropping the redundant G-stable rows, in original row numbers
struct Signature {
    std::set<std::vector<int>> faces;
    std::vector<int> pruned;
    bool operator==(const Signature& o) const { return faces == o.faces; }
};
Signature signature_at(const MMPFamily& fam, const Q& eps);

// first eps where admissibility fails; NoBreakpoints when there is none
Q epsilon_max(const MMPFamily& fam);

enum class EventKind { Flip, DivisorialContraction, Fibration };
std::string to_string(EventKind k);

struct Interval {
    Q lo, hi;
    bool lo_closed = true, hi_closed = false;
    bool operator==(const Interval&) const = default;
    bool contains(const Q& e) const;
    Q sample() const;  // midpoint, or the point itself
};
std::string to_string(const Interval& i);

struct FiberEntry {
    Face target;
    Face preimage;  // the biggest orbit over the target orbit
    int fiber_dim = 0;
};

struct FiberRecord {
    int general_dim = 0;
    int rank_drop = 0;
    // general fiber P(target_R)/P(source_R) when rank_drop == 0
    RootSet source_R, target_R;
    std::vector<FiberEntry> entries;
};

struct FaceImage {
    Face source;
    std::optional<Face> target;
};

struct ContractionEvent {
    Q epsilon;
    EventKind kind = EventKind::Flip;
    std::vector<int> pruned_rows;  // rows that became redundant here
    std::optional<FiberRecord> fiber;
    std::vector<FaceImage> face_map;  // X^{eps-} -> X^{eps}
};

struct MMPTrace {
    std::vector<Interval> intervals;
    std::vector<Signature> signatures;  // empty for predicted traces
    std::vector<ContractionEvent> events;
    Q eps_max;
};

struct Breakpoint {
    Q epsilon;
    EventKind kind;
};
// every raw candidate in ]0, eps_max[ from parametric vertices and wall crossings
std::vector<Q> candidate_epsilons(const MMPFamily& fam, const Q& eps_max);
// surviving breakpoints, the last one being eps_max
std::vector<Breakpoint> critical_epsilons(const MMPFamily& fam);

// EventsOnly skips face maps and the general fiber
enum class TraceDetail { Full, EventsOnly };
MMPTrace run_log_mmp(const MMPFamily& fam, TraceDetail detail = TraceDetail::Full);
MMPTrace run_log_mmp(const HomSpaceData& hs, const ColoredFan& fan, const BStableDivisor& D,
                     const BStableDivisor& delta);

FiberRecord general_fiber(const MMPFamily& fam, const MMPTrace& trace, const ContractionEvent& fibration);

// closed forms; rows numbered e_0..e_n, beta (Case 1) and u_0..u_r, v_1, v_2 (Case 2)
struct PredictedFace {
    std::vector<int> rows;
    int dim = 0;
    auto operator<=>(const PredictedFace&) const = default;
};
std::set<PredictedFace> faces_case1(int n, const std::vector<long>& a, const Q& eps);
std::set<PredictedFace> faces_case2(int r, const std::vector<long>& a, const Q& eps);

// last_trivial: alpha_n (Case 1) resp. alpha_r (Case 2) is the trivial root
MMPTrace predict_trace_case1(const std::vector<long>& a, bool last_trivial);
MMPTrace predict_trace_case2(const std::vector<long>& a, bool last_trivial);

// worker count for the sweeps: HOROKIT_THREADS, default 1
int worker_count();

}  // namespace horokit
