#pragma once

#include "turnwave/kinematics.hpp"

#include <optional>

namespace turnwave {

/// Earliest and latest arrival times of one vehicle at a point.
struct PointTiming {
    double t_earliest = 0.0;
    double t_latest = 0.0;
};

/// Time window in which a collision is possible; `t_latest` may be +inf.
struct CollisionInterval {
    double t_earliest = 0.0;
    double t_latest = 0.0;
    bool empty = true;

    bool unbounded() const { return !empty && std::isinf(t_latest); }

    static CollisionInterval none() { return CollisionInterval{}; }
    static CollisionInterval of(double te, double tl) { return CollisionInterval{te, tl, false}; }
};

/// Hull of two intervals (smallest interval containing both).
CollisionInterval interval_union(const CollisionInterval& a, const CollisionInterval& b);

namespace detail {

/// Which piece of the piecewise min/max path-length expressions applied.
/// 1 = limiting-radius tangent, 2 = limiting-bearing tangent, 3 = pure arc,
/// 0 = start point / straight-ahead degenerate.
struct DistEval {
    double d_min = 0.0;
    double d_max = 0.0;
    int min_piece = 0;
    int max_piece = 0;
};

/// Evaluate min/max path length in the vehicle's local frame, handling the
/// Left/Right/Either mode split. Returns nullopt when `local` is unreachable.
/// `tol` loosens every guard comparison (envelope-boundary slack).
std::optional<DistEval> eval_distances_local(const TurnSpec& spec, Point2 local, double tol);

/// Left-turn-only evaluation with explicit parameter ranges; `radius_max`
/// may be +inf (either-mode sub-case).
std::optional<DistEval> eval_left(Point2 p, double radius_min, double radius_max,
                                  double bearing_min, double bearing_max, double tol);

} // namespace detail

/// Length of the shortest admissible path from the spec's start pose to the
/// world-frame point `p`. Throws infeasible_error when `p` is unreachable.
double d_min(const TurnSpec& spec, Point2 world_p);

/// Length of the longest admissible path to `p`.
double d_max(const TurnSpec& spec, Point2 world_p);

/// Earliest/latest arrival times: d_min/s_max and d_max/s_min.
PointTiming point_timing(const TurnSpec& spec, Point2 world_p);

/// Collision window at a shared point: empty iff the two occupancy windows
/// do not overlap, otherwise [max of entries, min of exits].
CollisionInterval pointwise_conflict(const PointTiming& own, const PointTiming& intr);

} // namespace turnwave
