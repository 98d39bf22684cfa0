#pragma once

#include "turnwave/partition.hpp"

#include <array>
#include <functional>
#include <vector>

namespace turnwave {

/// One constraint of the per-region feasibility system over (x, y, t).
struct Constraint3 {
    enum class Kind { LinearLE, CircLE, CircGE };
    Kind kind = Kind::LinearLE;
    // LinearLE: cx*x + cy*y + ct*t <= c0.
    // CircLE/GE: |p - center| <= / >= speed*t + offset.
    double cx = 0.0, cy = 0.0, ct = 0.0, c0 = 0.0;
    Point2 center{};
    double speed = 0.0, offset = 0.0;

    bool satisfied(Point2 p, double t, double tol) const;
};

std::vector<Constraint3> region_constraints(const RegionTiming& rt);

enum class CriticalKind { WaveBirth, PolygonVertex, LocusEdgeCrossing, TangencyPoint, RayLimit };

struct CriticalPoint {
    Point2 location{};
    CriticalKind kind = CriticalKind::PolygonVertex;
    double ray_angle = 0.0; // RayLimit only
};

/// Dense bivariate polynomial up to total degree 4 (coefficient [i][j] on
/// x^i y^j).
struct Poly2 {
    std::array<std::array<double, 5>, 5> c{};
    double eval(Point2 p) const;
};

/// Curve of points where two wave edges (one per vehicle) coincide at a
/// common time. `implicit` vanishes on the curve (possibly with spurious
/// squaring branches; verify with `residual`).
struct LociCurve {
    Poly2 implicit;
    WaveEdge e1, e2;
    bool empty = false;
    int degree = 0;

    /// Common time at a curve point (back-substitution through e1).
    double time_at(Point2 p) const { return e1.time_at(p); }
    /// |t1(p) - t2(p)|: zero on the true locus.
    double residual(Point2 p) const;
};

LociCurve loci_curve(const WaveEdge& e1, const WaveEdge& e2);

/// Real roots of `poly` (degree <= 8) in [lo, hi], tolerance 1e-10, including
/// touching (even-multiplicity) roots.
std::vector<double> poly_roots(const std::vector<double>& poly, double lo, double hi);

/// Candidate locations sufficient for extremizing collision time over the
/// region's polygon.
std::vector<CriticalPoint> critical_points(const RegionTiming& rt);

/// Earliest/latest collision time within one region polygon; empty when the
/// four waves never co-occupy a polygon point; t_latest = +inf when overlap
/// persists along a recession ray.
CollisionInterval solve_region(const RegionTiming& rt);

/// Same, restricted to the all-linear case: min/max of t over the (x,y,t)
/// polyhedron by vertex enumeration.
CollisionInterval solve_linear_region(const RegionTiming& rt);

struct RegionResult {
    RegionTiming region;
    CollisionInterval interval;
};

struct EncounterResult {
    CollisionInterval interval; // union hull over regions
    std::vector<RegionResult> table;
    bool collision_possible() const { return !interval.empty; }
};

/// Full encounter analysis: cover the conflict area, solve every region,
/// take the union hull.
EncounterResult encounter_interval(const TurnSpec& own, const TurnSpec& intr,
                                   const TilingParams& tiling);

} // namespace turnwave
