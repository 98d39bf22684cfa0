#include "turnwave/kinematics.hpp"

#include "turnwave/path_bounds.hpp"

#include <cmath>
#include <sstream>

namespace turnwave {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

} // namespace

void TurnSpec::validate() const {
    if (!(speed_min > 0.0 && speed_min <= speed_max))
        fail("speed bounds must satisfy 0 < s_min <= s_max");
    switch (mode) {
    case TurnMode::Left:
        if (!(0.0 < radius_min && radius_min <= radius_max))
            fail("left turn requires 0 < r_min <= r_max");
        if (!(0.0 < bearing_min && bearing_min <= bearing_max && bearing_max < kTau))
            fail("left turn requires 0 < theta_min <= theta_max < 2pi");
        break;
    case TurnMode::Right:
        if (!(radius_min <= radius_max && radius_max < 0.0))
            fail("right turn requires r_min <= r_max < 0");
        if (!(-kTau < bearing_min && bearing_min <= bearing_max && bearing_max < 0.0))
            fail("right turn requires -2pi < theta_min <= theta_max < 0");
        break;
    case TurnMode::Either:
        if (!(radius_max < 0.0 && 0.0 < radius_min))
            fail("either mode requires r_max < 0 < r_min");
        if (!(bearing_min <= 0.0 && 0.0 <= bearing_max && bearing_max < kTau &&
              bearing_min > -kTau))
            fail("either mode requires theta_min <= 0 <= theta_max");
        break;
    }
}

void PathParams::validate() const {
    if (!(radius * bearing_change > 0.0))
        fail("path params require 0 < r*theta_c (matching turn signs)");
    if (!(std::abs(bearing_change) < kTau)) fail("path params require |theta_c| < 2pi");
}

Point2 position_at_distance(const PathParams& params, double d) {
    if (d < 0.0) throw std::domain_error("position_at_distance: negative distance");
    params.validate();
    const double r = params.radius, thc = params.bearing_change;
    const double arc = r * thc; // > 0 by the invariant
    if (d <= arc) {
        const double a = d / r;
        return {r * std::sin(a), r * (1.0 - std::cos(a))};
    }
    const Point2 exit{r * std::sin(thc), r * (1.0 - std::cos(thc))};
    return exit + (d - arc) * dir_vec(thc);
}

double radius_for_angle(Point2 p, double theta) {
    if (p.x == 0.0 && p.y == 0.0) throw std::domain_error("radius_for_angle: origin input");
    const double c = std::cos(theta);
    if (std::abs(1.0 - c) < 1e-15)
        throw std::domain_error("radius_for_angle: theta at a multiple of 2pi");
    const double theta_m = 2.0 * std::atan2(p.y, p.x);
    const bool admissible =
        (theta_m > 0.0 &&
         ((theta_m / 2 < theta && theta <= theta_m) ||
          (-kTau < theta && theta < theta_m / 2 - kTau))) ||
        (theta_m < 0.0 &&
         ((theta_m <= theta && theta < theta_m / 2) || (theta_m / 2 + kTau < theta && theta < kTau)));
    if (!admissible) {
        std::ostringstream os;
        os << "approach angle " << theta << " inadmissible for point with max angle " << theta_m;
        throw infeasible_error(os.str());
    }
    return (p.x * std::sin(theta) - p.y * c) / (1.0 - c);
}

std::optional<double> try_radius_for_angle(Point2 p, double theta) {
    try {
        return radius_for_angle(p, theta);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double angle_for_radius(Point2 p, double r) {
    const double x = p.x, y = p.y;
    if (x == 0.0 && y == 0.0) throw std::domain_error("angle_for_radius: origin input");
    if (y > 0.0) {
        if (!(r <= p.norm_sq() / (2.0 * y) + 1e-12))
            throw infeasible_error("0 < y requires r <= (x^2+y^2)/(2y)");
    } else if (y == 0.0) {
        if (!(x < 0.0)) throw infeasible_error("y = 0 requires x < 0");
    } else {
        if (!(p.norm_sq() / (2.0 * y) <= r + 1e-12))
            throw infeasible_error("y < 0 requires (x^2+y^2)/(2y) <= r");
    }

    const double denom = 2.0 * r - y;
    // The first-case formula loses precision as 2r - y vanishes; Thm 2's own
    // case split covers the boundary, so switch early.
    if (std::abs(denom) < 1e-9 * std::max(1.0, std::abs(y))) {
        if (x > 0.0) return 2.0 * std::atan(y / (2.0 * x));
        return kPi * (r > 0 ? 1.0 : -1.0);
    }
    double disc = x * x - denom * y;
    if (disc < 0.0) disc = 0.0; // feasibility guarantees >= 0 up to rounding
    const double base = 2.0 * std::atan((x - std::sqrt(disc)) / denom);

    double phase = 0.0;
    if (r > 0.0) {
        if ((x > 0.0 && y > 0.0) || (x <= 0.0 && 2.0 * r < y))
            phase = 0.0;
        else if ((x >= 0.0 && y < 0.0) || (x < 0.0 && y < 2.0 * r))
            phase = kTau;
    } else {
        if ((x < 0.0 && y < 0.0) || y < 2.0 * r)
            phase = 0.0;
        else if ((x >= 0.0 && y > 0.0) || (x < 0.0 && 2.0 * r < y))
            phase = -kTau;
    }
    return base + phase;
}

std::optional<double> try_angle_for_radius(Point2 p, double r) {
    try {
        return angle_for_radius(p, r);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double straight_dist_sq(Point2 p, double r) {
    const double y = p.y;
    if (y > 0.0) {
        if (!(r <= p.norm_sq() / (2.0 * y) + 1e-12))
            throw infeasible_error("0 < y requires r <= (x^2+y^2)/(2y)");
    } else if (y == 0.0) {
        if (!(p.x < 0.0)) throw infeasible_error("y = 0 requires x < 0");
    } else {
        if (!(p.norm_sq() / (2.0 * y) <= r + 1e-12))
            throw infeasible_error("y < 0 requires (x^2+y^2)/(2y) <= r");
    }
    double v = p.x * p.x - (2.0 * r - y) * y;
    return v < 0.0 ? 0.0 : v;
}

double path_length(Point2 p, double theta, double r) {
    const Point2 exit{r * std::sin(theta), r * (1.0 - std::cos(theta))};
    const Point2 tail = p - exit;
    const double ell = tail.norm();
    // Consistency: the tangent segment must run along the exit bearing.
    const double mis = (tail - ell * dir_vec(theta)).norm();
    if (mis > 1e-6 * std::max(1.0, p.norm()))
        throw std::invalid_argument("path_length: (p, theta, r) triple is inconsistent");
    return r * theta + ell;
}

bool in_envelope(const TurnSpec& spec, Point2 world_p) {
    spec.validate();
    const Point2 local = to_local(world_p, spec.pose);
    return detail::eval_distances_local(spec, local, 1e-9).has_value();
}

} // namespace turnwave
