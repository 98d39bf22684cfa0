#pragma once

#include "turnwave/path_bounds.hpp"
#include "turnwave/waves.hpp"

#include <vector>

namespace turnwave {

/// Cover resolution. n_theta = 0 picks band widths automatically (arc bands
/// capped at pi/8 and tightened where the sinc bound degrades); n_theta > 0
/// divides the bearing span [theta_min, theta_max] into that many bands and
/// reuses the width elsewhere. n_r subdivides the radius range.
struct TilingParams {
    int n_theta = 0;
    int n_r = 1;
};

/// One labeled convex polygon of a single vehicle's envelope cover, with the
/// front/back wave edges valid on it (world frame).
struct CoverPiece {
    RegionLabel label = RegionLabel::A;
    ConvexRegion polygon;
    WaveEdge front, back;
    /// True for overlap-duplicate polygons emitted to keep the cover sound
    /// where purity clips would otherwise leave gaps.
    bool overlap_patch = false;
};

/// Region label of the reachable point `world_p`: which minimum/maximum
/// path-length strategies apply there. Throws infeasible_error when
/// unreachable.
RegionLabel classify_region(const TurnSpec& spec, Point2 world_p);

/// Five-half-plane overapproximation of the annular sector swept by arcs
/// with radius in [r1, r2] and arc angle in [th1, th2] (local frame).
ConvexRegion turn_tile(double r1, double r2, double th1, double th2);

/// Wedge with vertex on the turn circle of radius `r` at arc angle `phi1`,
/// edges along headings phi1 (tangent to the circle there) and phi2.
ConvexRegion wedge_domain(double r, double phi1, double phi2);

/// Labeled polygon cover of the vehicle's reachable envelope (world frame).
std::vector<CoverPiece> build_cover(const TurnSpec& spec, const TilingParams& tiling);

/// A conflict polygon with the four wave edges valid inside it.
struct RegionTiming {
    ConvexRegion polygon;
    WaveEdge own_front, own_back, intr_front, intr_back;
    RegionLabel own_label = RegionLabel::A;
    RegionLabel intr_label = RegionLabel::A;
    bool overlap_patch = false;
};

/// Pairwise intersections of the two vehicles' covers: a sound polygon cover
/// of the conflict area (empty when the envelopes provably do not meet).
std::vector<RegionTiming> conflict_cover(const TurnSpec& own, const TurnSpec& intr,
                                         const TilingParams& tiling);

namespace detail {

/// Band boundaries used by the cover construction (exposed for tests).
std::vector<double> arc_band_boundaries(double bearing_min, double bearing_max,
                                        const TilingParams& tiling);
Point2 arc_point(double r, double a);

} // namespace detail

} // namespace turnwave
