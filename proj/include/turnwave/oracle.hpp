#pragma once

#include "turnwave/partition.hpp"

#include <cstdint>
#include <vector>

namespace turnwave {
namespace oracle {

/// Piecewise-constant speed schedule; first breakpoint at t = 0.
struct SpeedProfile {
    std::vector<std::pair<double, double>> breakpoints; // (t, speed)

    double distance_at(double t) const;
    double speed_at(double t) const;
};

struct TrajectorySample {
    PathParams params;
    SpeedProfile profile;
};

/// World-frame position at time `t`. Throws std::invalid_argument when the
/// sample violates the maneuver's parameter ranges.
Point2 simulate(const TurnSpec& spec, const TrajectorySample& sample, double t);

struct GridDistResult {
    double lo = 0.0;
    double hi = 0.0;
    bool reachable = false;
};

/// Brute-force min/max path length to `world_p` over a dense (radius, exit
/// bearing) grid with local refinement until extremes move less than `tol`.
/// Tangent exits are solved geometrically, independent of the closed-form
/// bearing expressions in the main computation.
GridDistResult grid_min_max_dist(const TurnSpec& spec, Point2 world_p, int n_r, int n_theta,
                                 double tol);

struct CollisionEvent {
    double t = 0.0;
    Point2 where{};
};

/// Sample `n` independent trajectory pairs (uniform radius/bearing, random
/// three-segment speed profiles), step at `dt`, and record every instant the
/// vehicles pass within `eps` of each other.
std::vector<CollisionEvent> monte_carlo_collisions(const TurnSpec& own, const TurnSpec& intr,
                                                   int n, double eps, double dt, double horizon,
                                                   std::uint64_t seed);

struct RasterResult {
    double first_touch = 0.0;
    double last_touch = 0.0;
    bool any = false;
    bool clipped = false;       // polygon was unbounded and clipped
    Point2 clip_lo{}, clip_hi{}; // reported clip box when clipped
};

/// Time-stepped rasterization of the conflict wave inside the region polygon:
/// marks cells whose centers satisfy all four edge constraints, returns the
/// first and last marked step. Unbounded polygons are clipped to a box
/// scaled from the region geometry (reported in the result).
RasterResult rasterize_conflict_wave(const RegionTiming& rt, double dt, double cell,
                                     double horizon);

/// Tabular text export of oracle results (one row per event).
std::string events_as_table(const std::vector<CollisionEvent>& events);

/// Deterministic RNG stream used by all oracle sampling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform(double lo, double hi);
    std::uint64_t next();

  private:
    std::uint64_t state_;
};

} // namespace oracle
} // namespace turnwave
