#pragma once

#include "turnwave/kinematics.hpp"

#include <utility>

namespace turnwave {

enum class WaveKind { Linear, Circular };
enum class WaveRole { Front, Back };

/// A moving boundary of position possibilities.
///   Linear:   n1*x + n2*y = speed*t + offset
///   Circular: |p - center| = speed*t + offset
/// A Front edge bounds the shortest-path distance from below (the occupied
/// set at time t satisfies value(p) <= speed*t + offset); a Back edge bounds
/// the longest-path distance from above (value(p) >= speed*t + offset).
struct WaveEdge {
    WaveKind kind = WaveKind::Circular;
    WaveRole role = WaveRole::Front;
    double n1 = 0.0, n2 = 0.0;
    Point2 center{};
    double speed = 1.0;
    double offset = 0.0;

    double value(Point2 p) const {
        return kind == WaveKind::Linear ? n1 * p.x + n2 * p.y : (p - center).norm();
    }
    /// Time at which the edge passes through p.
    double time_at(Point2 p) const { return (value(p) - offset) / speed; }
    /// Distance bound implied at p (speed * time_at).
    double implied_distance(Point2 p) const { return value(p) - offset; }

    WaveEdge transformed(const Pose& frame) const;
    WaveEdge mirrored_y() const;
};

double sinc(double x);

/// Plane wave of the fixed-bearing path-length field: exact level sets of
/// L(x,y,theta,R(x,y,theta)). Front edges pair theta_min with speed_max;
/// back edges theta_max with speed_min (callers choose).
WaveEdge linear_wave(double theta, double speed, WaveRole role);

/// Circular bounds for pure-arc motion within the bearing band [th1, th2]:
/// front travels at speed_max*sinc(th1/2), back at speed_min*sinc(th2/2),
/// both centered at the turn start.
std::pair<WaveEdge, WaveEdge> circular_tile_waves(double th1, double th2, double speed_min,
                                                  double speed_max);

/// Circular bounds for fixed-radius turn-then-tangent motion within a wedge
/// spanning bearing change phi2 from `anchor` (the wedge vertex pose, tangent
/// to the turn circle). Front: distance from the vertex; back: arc to the
/// phi2 exit point plus the straight run from there.
std::pair<WaveEdge, WaveEdge> involute_waves(double radius, double phi2, double speed_min,
                                             double speed_max, const Pose& anchor);

struct EdgePair {
    WaveEdge front, back;
};

/// Representative front/back pair for one vehicle in a region of the given
/// label (canonical band parameters). Kind dispatch follows the region table:
/// A/C/F circular-circular, B linear-circular, D linear-linear,
/// E linear-circular, G circular-linear.
EdgePair edges_for_label(RegionLabel label, const TurnSpec& spec, double band_lo, double band_hi);

/// The four world-frame edges for an (own, intruder) region-label pair.
struct EdgeQuad {
    WaveEdge own_front, own_back, intr_front, intr_back;
};

EdgeQuad edges_for_region(RegionLabel own_label, RegionLabel intr_label, const TurnSpec& own,
                          const TurnSpec& intr, double band_lo, double band_hi);

} // namespace turnwave
