#include "turnwave/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace turnwave {

namespace detail {

Point2 arc_point(double r, double a) { return {r * std::sin(a), r * (1.0 - std::cos(a))}; }

namespace {

// Local decay rate of the sinc bound: d/dtheta ln(1/sinc(theta/2)).
double sinc_gap_rate(double theta) {
    if (theta < 1e-6) return theta / 12.0;
    const double h = theta / 2.0;
    if (std::abs(std::sin(h)) < 1e-9) return 1e9;
    return 0.5 * std::abs(std::cos(h) / std::sin(h) - 2.0 / theta);
}

} // namespace

std::vector<double> arc_band_boundaries(double tha, double thb, const TilingParams& tiling) {
    std::vector<double> bounds{0.0};
    if (tiling.n_theta > 0) {
        const double width = std::max((thb - tha) / tiling.n_theta, 1e-6);
        const int head = std::max(1, int(std::ceil(tha / width - 1e-12)));
        for (int i = 1; i <= head; ++i) bounds.push_back(tha * i / head);
        for (int i = 1; i <= tiling.n_theta; ++i)
            bounds.push_back(tha + (thb - tha) * i / tiling.n_theta);
        return bounds;
    }
    // Automatic: cap at pi/8 and keep the sinc band gap near or under 2%.
    const double cap = kPi / 8.0;
    double t = 0.0;
    while (t < thb - 1e-12) {
        double step = cap;
        for (int i = 0; i < 40; ++i) {
            if (sinc_gap_rate(t + step) * step <= 0.016) break;
            step *= 0.7;
        }
        double next = t + step;
        if (t < tha - 1e-12 && next > tha) next = tha; // band edges land on theta_min
        if (next > thb) next = thb;
        bounds.push_back(next);
        t = next;
    }
    if (bounds.back() < thb) bounds.push_back(thb);
    return bounds;
}

} // namespace detail

using detail::arc_point;

ConvexRegion turn_tile(double r1, double r2, double th1, double th2) {
    if (!(0.0 < r1 && r1 <= r2)) throw std::domain_error("turn_tile: need 0 < r1 <= r2");
    if (!(0.0 <= th1 && th1 < th2 && th2 - th1 <= kPi / 2.0 + 1e-12))
        throw std::domain_error("turn_tile: need 0 <= th1 < th2, th2-th1 <= pi/2");
    const Point2 nu = arc_point(r1, th1);
    const Point2 iota = arc_point(r1, th2);
    const Point2 upsilon = arc_point(r2, th1);
    const Point2 omega = arc_point(r2, th2);
    std::vector<HalfPlane> hs;
    // Radial chord lines through the start point at the band's half-angles.
    hs.push_back(halfplane_left_of(nu, dir_vec(th1 / 2.0)));
    hs.push_back(halfplane_right_of(iota, dir_vec(th2 / 2.0)));
    // Inner-arc chord, region on the side away from the turn center.
    if ((iota - nu).norm() > 1e-12) hs.push_back(halfplane_right_of(nu, iota - nu));
    // Supporting tangents of the outer arc at its two ends.
    hs.push_back(halfplane_left_of(upsilon, dir_vec(th1)));
    hs.push_back(halfplane_left_of(omega, dir_vec(th2)));
    return make_region(prune_halfplanes(hs));
}

ConvexRegion wedge_domain(double r, double phi1, double phi2) {
    if (!(0.0 <= phi1 && phi1 < phi2 && phi2 - phi1 < kPi))
        throw std::domain_error("wedge_domain: need 0 <= phi1 < phi2, phi2-phi1 < pi");
    if (!(r > 0.0)) throw std::domain_error("wedge_domain: radius must be positive");
    const Point2 v = arc_point(r, phi1);
    return make_region({halfplane_left_of(v, dir_vec(phi1)), halfplane_right_of(v, dir_vec(phi2))});
}

namespace {

struct LeftParams {
    double ra, rb, tha, thb, smin, smax;
    bool unbounded_radius = false;
};

std::optional<CoverPiece> try_piece(RegionLabel label, std::vector<HalfPlane> hs, WaveEdge front,
                                    WaveEdge back, bool patch = false) {
    if (!region_feasible(hs)) return std::nullopt;
    CoverPiece piece;
    piece.label = label;
    piece.polygon = make_region(prune_halfplanes(std::move(hs)));
    piece.polygon.label = label;
    piece.front = front;
    piece.back = back;
    piece.overlap_patch = patch;
    return piece;
}

// Turn-then-tangent circular bounds for exits in [exit_lo, exit_hi] of the
// radius-r circle, re-anchored to the path start (arc length folded into the
// offsets).
EdgePair involute_pair_global(double r, double exit_lo, double exit_hi, double smin, double smax) {
    exit_hi = std::min(std::max(exit_hi, exit_lo + 1e-9), kTau - 1e-9);
    const Pose anchor{arc_point(r, exit_lo), exit_lo};
    auto [front, back] = involute_waves(r, exit_hi - exit_lo, smin, smax, anchor);
    front.offset -= r * exit_lo;
    back.offset -= r * exit_lo;
    return {front, back};
}

// Fan of tangent exits at fixed bearing `theta` from radii in [r1, r2]
// (r2 may be +inf).
std::vector<HalfPlane> bearing_slab(double r1, double r2, double theta) {
    const Point2 u = dir_vec(theta);
    std::vector<HalfPlane> hs;
    hs.push_back(halfplane_right_of(arc_point(r1, theta), u));
    if (std::isfinite(r2)) hs.push_back(halfplane_left_of(arc_point(r2, theta), u));
    hs.push_back(halfplane_left_of(Point2{0, 0}, dir_vec(theta / 2.0)));
    return hs;
}

std::vector<HalfPlane> cat(std::vector<HalfPlane> a, const std::vector<HalfPlane>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<double> wedge_bands(double lo, double hi, const TilingParams& tiling, double span_ref) {
    if (hi - lo < 1e-9) return {}; // degenerate span, no wedges needed
    double width = kPi / 8.0;
    if (tiling.n_theta > 0) width = std::max(span_ref / tiling.n_theta, 1e-6);
    const int n = std::max(1, int(std::ceil((hi - lo) / width - 1e-9)));
    std::vector<double> bounds;
    for (int i = 0; i <= n; ++i) bounds.push_back(lo + (hi - lo) * i / n);
    return bounds;
}

// Cover of a left-turn envelope in the vehicle's local frame.
std::vector<CoverPiece> build_cover_left_local(const LeftParams& prm, const TilingParams& tiling) {
    std::vector<CoverPiece> pieces;
    const double ra = prm.ra, rb = prm.rb, tha = prm.tha, thb = prm.thb;
    const double smin = prm.smin, smax = prm.smax;

    const auto bands = detail::arc_band_boundaries(tha, thb, tiling);
    const HalfPlane bc_left = halfplane_left_of(arc_point(ra, tha), dir_vec(tha));  // C side
    const HalfPlane bc_right = halfplane_right_of(arc_point(ra, tha), dir_vec(tha)); // B side
    const HalfPlane dir_le_tha = halfplane_right_of(Point2{0, 0}, dir_vec(tha));
    const HalfPlane dir_ge_tha = halfplane_left_of(Point2{0, 0}, dir_vec(tha));

    // Turn region: tiles (bounded radius band) or cones (unbounded).
    std::vector<double> rbands{ra, rb};
    if (!prm.unbounded_radius && tiling.n_r > 1) {
        rbands.clear();
        for (int i = 0; i <= tiling.n_r; ++i) rbands.push_back(ra + (rb - ra) * i / tiling.n_r);
    }
    for (size_t bi = 0; bi + 1 < bands.size(); ++bi) {
        const double b1 = bands[bi], b2 = bands[bi + 1];
        if (b2 <= 1e-12) continue;
        auto [tile_front, tile_back] = circular_tile_waves(b1, b2, smin, smax);

        std::vector<std::vector<HalfPlane>> polys;
        if (prm.unbounded_radius) {
            std::vector<HalfPlane> cone{halfplane_left_of({0, 0}, dir_vec(b1 / 2.0)),
                                        halfplane_right_of({0, 0}, dir_vec(b2 / 2.0))};
            const Point2 nu = arc_point(ra, b1), iota = arc_point(ra, b2);
            if ((iota - nu).norm() > 1e-12) cone.push_back(halfplane_right_of(nu, iota - nu));
            polys.push_back(std::move(cone));
        } else {
            for (size_t ri = 0; ri + 1 < rbands.size(); ++ri)
                polys.push_back(turn_tile(rbands[ri], rbands[ri + 1], b1, b2).halfplanes);
        }

        for (auto& poly : polys) {
            if (b2 <= tha + 1e-12) {
                if (auto p = try_piece(RegionLabel::A, poly, tile_front, tile_back))
                    pieces.push_back(std::move(*p));
                continue;
            }
            if (tha <= 1e-12) {
                // Either-mode left half: everything on arcs is C.
                auto fr = involute_pair_global(ra, b1 / 2.0, b2, smin, smax).front;
                if (auto p = try_piece(RegionLabel::C, poly, fr, tile_back))
                    pieces.push_back(std::move(*p));
                continue;
            }
            const WaveEdge lin_front = linear_wave(tha, smax, WaveRole::Front);
            const WaveEdge c_front = involute_pair_global(ra, tha, b2, smin, smax).front;
            if (auto p = try_piece(RegionLabel::B, cat(poly, {bc_right, dir_le_tha}), lin_front,
                                   tile_back))
                pieces.push_back(std::move(*p));
            if (auto p = try_piece(RegionLabel::C, cat(poly, {bc_left}), c_front, tile_back))
                pieces.push_back(std::move(*p));
            // Beyond-the-cut sliver of the tangent-line split (wide spans only).
            if (auto p = try_piece(RegionLabel::C, cat(poly, {bc_right, dir_ge_tha}), c_front,
                                   tile_back))
                pieces.push_back(std::move(*p));
        }
    }

    // Tangent region. Wedge grids on both limiting circles.
    const double span = thb - tha;
    const auto ra_bands =
        (tha > 1e-12) ? wedge_bands(tha, thb, tiling, span) : wedge_bands(1e-9, thb, tiling, thb);
    const auto rb_bands = wedge_bands(1e-9, thb, tiling, tiling.n_theta > 0 ? span : thb);

    const bool has_min_slab = tha > 1e-12;
    const auto slab_a = has_min_slab ? bearing_slab(ra, rb, tha) : std::vector<HalfPlane>{};
    const auto slab_b = bearing_slab(ra, rb, thb);
    const WaveEdge front_lin = has_min_slab ? linear_wave(tha, smax, WaveRole::Front) : WaveEdge{};
    const WaveEdge back_lin = linear_wave(thb, smin, WaveRole::Back);

    // D: both limiting-bearing fields apply.
    if (has_min_slab) {
        if (auto p = try_piece(RegionLabel::D, cat(slab_a, slab_b), front_lin, back_lin))
            pieces.push_back(std::move(*p));
    }

    // G: tightest-circle tangent field + limiting-bearing back.
    for (size_t j = 0; j + 1 < ra_bands.size(); ++j) {
        const auto wj = wedge_domain(ra, ra_bands[j], ra_bands[j + 1]);
        const WaveEdge fr = involute_pair_global(ra, ra_bands[j],
                                                 std::min(2.0 * ra_bands[j + 1], kTau - 1e-9),
                                                 smin, smax)
                                .front;
        if (auto p = try_piece(RegionLabel::G, cat(wj.halfplanes, slab_b), fr, back_lin))
            pieces.push_back(std::move(*p));
    }

    if (!prm.unbounded_radius) {
        const HalfPlane below_thb_exit = halfplane_right_of(arc_point(rb, thb), dir_vec(thb));
        for (size_t k = 0; k + 1 < rb_bands.size(); ++k) {
            const double w1 = rb_bands[k], w2 = rb_bands[k + 1];
            const auto wk = wedge_domain(rb, w1, w2);
            const WaveEdge bk =
                involute_pair_global(rb, w1, std::min(2.0 * w2, kTau - 1e-9), smin, smax).back;
            // E: limiting-bearing front, widest-circle tangent back.
            if (has_min_slab) {
                if (auto p = try_piece(RegionLabel::E,
                                       cat(cat(slab_a, wk.halfplanes), {below_thb_exit}),
                                       front_lin, bk))
                    pieces.push_back(std::move(*p));
                if (auto p = try_piece(RegionLabel::E, cat(slab_a, wk.halfplanes), front_lin, bk,
                                       /*patch=*/true))
                    pieces.push_back(std::move(*p));
            }
            // F: both limiting-circle tangent fields.
            for (size_t j = 0; j + 1 < ra_bands.size(); ++j) {
                const auto wj = wedge_domain(ra, ra_bands[j], ra_bands[j + 1]);
                const WaveEdge fj = involute_pair_global(
                                        ra, ra_bands[j],
                                        std::min(2.0 * ra_bands[j + 1], kTau - 1e-9), smin, smax)
                                        .front;
                auto hs = cat(wj.halfplanes, wk.halfplanes);
                if (auto p = try_piece(RegionLabel::F, cat(hs, {below_thb_exit}), fj, bk))
                    pieces.push_back(std::move(*p));
                if (auto p = try_piece(RegionLabel::F, hs, fj, bk, /*patch=*/true))
                    pieces.push_back(std::move(*p));
            }
        }
    }
    return pieces;
}

void mirror_piece_y(CoverPiece& piece) {
    piece.polygon = region_mirror_y(piece.polygon);
    piece.polygon.label = piece.label;
    piece.front = piece.front.mirrored_y();
    piece.back = piece.back.mirrored_y();
}

void piece_to_world(CoverPiece& piece, const Pose& pose) {
    piece.polygon = region_to_world(piece.polygon, pose);
    piece.polygon.label = piece.label;
    piece.front = piece.front.transformed(pose);
    piece.back = piece.back.transformed(pose);
}

} // namespace

std::vector<CoverPiece> build_cover(const TurnSpec& spec, const TilingParams& tiling) {
    spec.validate();
    std::vector<CoverPiece> pieces;
    switch (spec.mode) {
    case TurnMode::Left:
        pieces = build_cover_left_local({spec.radius_min, spec.radius_max, spec.bearing_min,
                                         spec.bearing_max, spec.speed_min, spec.speed_max},
                                        tiling);
        break;
    case TurnMode::Right:
        pieces = build_cover_left_local({-spec.radius_max, -spec.radius_min, -spec.bearing_max,
                                         -spec.bearing_min, spec.speed_min, spec.speed_max},
                                        tiling);
        for (auto& p : pieces) mirror_piece_y(p);
        break;
    case TurnMode::Either: {
        const double inf = std::numeric_limits<double>::infinity();
        if (spec.bearing_max > 1e-12) {
            auto left = build_cover_left_local(
                {spec.radius_min, inf, 0.0, spec.bearing_max, spec.speed_min, spec.speed_max, true},
                tiling);
            pieces.insert(pieces.end(), left.begin(), left.end());
        }
        if (spec.bearing_min < -1e-12) {
            auto right = build_cover_left_local({-spec.radius_max, inf, 0.0, -spec.bearing_min,
                                                 spec.speed_min, spec.speed_max, true},
                                                tiling);
            for (auto& p : right) mirror_piece_y(p);
            pieces.insert(pieces.end(), right.begin(), right.end());
        }
        break;
    }
    }
    for (auto& p : pieces) piece_to_world(p, spec.pose);
    return pieces;
}

RegionLabel classify_region(const TurnSpec& spec, Point2 world_p) {
    spec.validate();
    const Point2 local = to_local(world_p, spec.pose);
    auto ev = detail::eval_distances_local(spec, local, 0.0);
    if (!ev) ev = detail::eval_distances_local(spec, local, 1e-9 * std::max(1.0, local.norm()));
    if (!ev) throw infeasible_error("point is outside the reachable envelope");
    const int mn = ev->min_piece, mx = ev->max_piece;
    if (mn == 3 && mx == 3) return RegionLabel::A;
    if (mn == 2 && mx == 3) return RegionLabel::B;
    if (mn == 1 && mx == 3) return RegionLabel::C;
    if (mn == 2 && mx == 2) return RegionLabel::D;
    if (mn == 2 && mx == 1) return RegionLabel::E;
    if (mn == 1 && mx == 1) return RegionLabel::F;
    if (mn == 1 && mx == 2) return RegionLabel::G;
    return RegionLabel::A; // start point / straight-ahead degenerate
}

std::vector<RegionTiming> conflict_cover(const TurnSpec& own, const TurnSpec& intr,
                                         const TilingParams& tiling) {
    const auto own_pieces = build_cover(own, tiling);
    const auto intr_pieces = build_cover(intr, tiling);
    std::vector<RegionTiming> out;
    for (const auto& po : own_pieces) {
        for (const auto& pi : intr_pieces) {
            auto inter = polygon_intersect(po.polygon, pi.polygon);
            if (!inter) continue;
            RegionTiming rt;
            rt.polygon = std::move(*inter);
            rt.polygon.label = po.label;
            rt.own_front = po.front;
            rt.own_back = po.back;
            rt.intr_front = pi.front;
            rt.intr_back = pi.back;
            rt.own_label = po.label;
            rt.intr_label = pi.label;
            rt.overlap_patch = po.overlap_patch || pi.overlap_patch;
            out.push_back(std::move(rt));
        }
    }
    return out;
}

} // namespace turnwave
