#include "turnwave/path_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace turnwave {

CollisionInterval interval_union(const CollisionInterval& a, const CollisionInterval& b) {
    if (a.empty) return b;
    if (b.empty) return a;
    return CollisionInterval::of(std::min(a.t_earliest, b.t_earliest),
                                 std::max(a.t_latest, b.t_latest));
}

namespace detail {

namespace {

double tangent_path_length(Point2 p, double theta, double r) {
    const Point2 exit{r * std::sin(theta), r * (1.0 - std::cos(theta))};
    return r * theta + (p - exit).norm();
}

} // namespace

std::optional<DistEval> eval_left(Point2 p, double ra, double rb, double tha, double thb,
                                  double tol) {
    const double x = p.x, y = p.y;
    if (x == 0.0 && y == 0.0) return DistEval{0.0, 0.0, 0, 0};

    const double rr = p.norm_sq();
    const double theta_m = 2.0 * std::atan2(y, x);
    const bool has_rm = (y != 0.0);
    const double r_m = has_rm ? rr / (2.0 * y) : std::numeric_limits<double>::infinity();

    const auto theta_a = try_angle_for_radius(p, ra);

    DistEval out;
    bool have_min = false;

    // Minimum: cases of the bearing-constrained minimum, tried in order.
    if (theta_a && tha - tol <= *theta_a && *theta_a <= thb + tol) {
        out.d_min = tangent_path_length(p, *theta_a, ra);
        out.min_piece = 1;
        have_min = true;
    }
    if (!have_min && theta_a && *theta_a < tha + tol) {
        const bool guard =
            (rr > 2.0 * ra * y - tol) &&
            ((y >= 0.0 && (y == 0.0 || ra <= r_m + tol) && tha < theta_m + tol) ||
             (y < 0.0 && theta_m < 0.0));
        if (guard) {
            // The printed guard presumes reachability; the implied radius for
            // the limiting bearing must itself lie in range.
            const auto r_need = try_radius_for_angle(p, tha);
            if (r_need && ra - tol <= *r_need && *r_need <= rb + tol) {
                out.d_min = tangent_path_length(p, tha, *r_need);
                out.min_piece = 2;
                have_min = true;
            }
        }
    }
    if (!have_min && has_rm && y > 0.0 && ra <= r_m + tol && r_m <= rb + tol) {
        const double cap = std::max(tha, theta_a ? *theta_a : tha);
        if (theta_m <= cap + tol) {
            out.d_min = r_m * theta_m;
            out.min_piece = 3;
            have_min = true;
        }
    }
    if (!have_min) return std::nullopt;

    // Maximum: limiting-radius tangent, then limiting-bearing, then pure arc.
    bool have_max = false;
    const bool rb_finite = std::isfinite(rb);
    std::optional<double> theta_b;
    if (rb_finite) theta_b = try_angle_for_radius(p, rb);

    if (rb_finite && rr > 2.0 * rb * y - tol && theta_b && *theta_b <= thb + tol) {
        out.d_max = tangent_path_length(p, *theta_b, rb);
        out.max_piece = 1;
        have_max = true;
    }
    if (!have_max) {
        const bool outside_rb = rb_finite && rr > 2.0 * rb * y - tol;
        const bool g1 = outside_rb && theta_b && thb < *theta_b + tol;
        const bool g2 = has_rm && y > 0.0 && ra <= r_m + tol && r_m <= rb + tol &&
                        thb < theta_m + tol;
        if (g1 || g2) {
            const auto r_need = try_radius_for_angle(p, thb);
            if (r_need) {
                out.d_max = tangent_path_length(p, thb, *r_need);
                out.max_piece = 2;
                have_max = true;
            }
        }
    }
    if (!have_max && has_rm && y > 0.0 && ra <= r_m + tol && r_m <= rb + tol &&
        theta_m <= thb + tol) {
        out.d_max = r_m * theta_m;
        out.max_piece = 3;
        have_max = true;
    }
    if (!have_max) return std::nullopt;
    if (out.d_max < out.d_min) {
        if (out.d_max < out.d_min - 1e-6 * std::max(1.0, out.d_min)) return std::nullopt;
        out.d_max = out.d_min; // rounding at a piece boundary
    }
    return out;
}

std::optional<DistEval> eval_distances_local(const TurnSpec& spec, Point2 p, double tol) {
    switch (spec.mode) {
    case TurnMode::Left:
        return eval_left(p, spec.radius_min, spec.radius_max, spec.bearing_min, spec.bearing_max,
                         tol);
    case TurnMode::Right:
        // Mirror identity: d_right(x,y,...) = d_left(x,-y,-th_max,-th_min,-r_max,-r_min).
        return eval_left({p.x, -p.y}, -spec.radius_max, -spec.radius_min, -spec.bearing_max,
                         -spec.bearing_min, tol);
    case TurnMode::Either:
        if (p.y > 0.0) {
            return eval_left(p, spec.radius_min, std::numeric_limits<double>::infinity(), 0.0,
                             spec.bearing_max, tol);
        }
        if (p.y < 0.0) {
            return eval_left({p.x, -p.y}, -spec.radius_max,
                             std::numeric_limits<double>::infinity(), 0.0, -spec.bearing_min, tol);
        }
        if (p.x >= 0.0) return DistEval{p.x, p.x, 0, 0};
        return eval_left(p, spec.radius_min, std::numeric_limits<double>::infinity(), 0.0,
                         spec.bearing_max, tol);
    }
    return std::nullopt;
}

} // namespace detail

namespace {

detail::DistEval eval_or_throw(const TurnSpec& spec, Point2 world_p) {
    spec.validate();
    const Point2 local = to_local(world_p, spec.pose);
    auto r = detail::eval_distances_local(spec, local, 0.0);
    if (!r) r = detail::eval_distances_local(spec, local, 1e-9 * std::max(1.0, local.norm()));
    if (!r) throw infeasible_error("point is outside the reachable envelope");
    return *r;
}

} // namespace

double d_min(const TurnSpec& spec, Point2 world_p) { return eval_or_throw(spec, world_p).d_min; }

double d_max(const TurnSpec& spec, Point2 world_p) { return eval_or_throw(spec, world_p).d_max; }

PointTiming point_timing(const TurnSpec& spec, Point2 world_p) {
    const auto d = eval_or_throw(spec, world_p);
    return PointTiming{d.d_min / spec.speed_max, d.d_max / spec.speed_min};
}

CollisionInterval pointwise_conflict(const PointTiming& own, const PointTiming& intr) {
    const double te = std::max(own.t_earliest, intr.t_earliest);
    const double tl = std::min(own.t_latest, intr.t_latest);
    if (te > tl) return CollisionInterval::none();
    return CollisionInterval::of(te, tl);
}

} // namespace turnwave
