#pragma once

#include "turnwave/geometry.hpp"

namespace turnwave {

enum class TurnMode { Left, Right, Either };

/// One vehicle's non-deterministic maneuver envelope: a fixed-radius turn
/// through an uncertain bearing change, then a straight run, at an uncertain
/// but bounded speed. Sign conventions: positive radius/bearing = left turn.
struct TurnSpec {
    Pose pose{};
    double radius_min = 0.0;  // r_alpha
    double radius_max = 0.0;  // r_beta
    double bearing_min = 0.0; // theta_alpha
    double bearing_max = 0.0; // theta_beta
    double speed_min = 0.0;   // s_alpha
    double speed_max = 0.0;   // s_beta
    TurnMode mode = TurnMode::Left;

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// One concrete path: arc of `radius` through `bearing_change`, then the
/// tangent line. Invariant: 0 < radius*bearing_change and |bearing_change| < 2pi.
struct PathParams {
    double radius = 0.0;
    double bearing_change = 0.0;

    void validate() const;
};

/// Position after traveling distance `d` along the path, in the path's local
/// frame (start at origin, heading 0). Arc for d <= |r*theta_c|, tangent after.
Point2 position_at_distance(const PathParams& params, double d);

/// Turn radius that reaches `p` (local frame) with approach angle `theta`.
/// Throws infeasible_error when `theta` is not an admissible approach angle
/// for `p`, std::domain_error when theta is a multiple of 2pi.
double radius_for_angle(Point2 p, double theta);

/// Approach angle at `p` for a turn of radius `r`, in (0,2pi) for r>0 and
/// (-2pi,0) for r<0. Throws infeasible_error when `p` is inside the turn
/// circle (no tangent exists).
double angle_for_radius(Point2 p, double r);

/// Noexcept variants returning nullopt instead of throwing.
std::optional<double> try_radius_for_angle(Point2 p, double theta);
std::optional<double> try_angle_for_radius(Point2 p, double r);

/// Squared length of the straight segment of the (r, Theta(p,r)) path.
double straight_dist_sq(Point2 p, double r);

/// Total length of the turn-then-tangent path through `p` with approach angle
/// `theta` and radius `r`. The triple must be consistent (theta = Theta(p,r))
/// within 1e-6; otherwise throws std::invalid_argument.
double path_length(Point2 p, double theta, double r);

/// True iff some admissible (radius, bearing) choice reaches the world-frame
/// point `p`. Points within 1e-9 (relative) of the envelope boundary count
/// as inside.
bool in_envelope(const TurnSpec& spec, Point2 world_p);

} // namespace turnwave
