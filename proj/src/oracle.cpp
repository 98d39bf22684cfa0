#include "turnwave/oracle.hpp"

#include "turnwave/path_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace turnwave {
namespace oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double u = double(next() >> 11) * (1.0 / 9007199254740992.0);
    return lo + (hi - lo) * u;
}

double SpeedProfile::speed_at(double t) const {
    double s = breakpoints.empty() ? 0.0 : breakpoints.front().second;
    for (const auto& [bt, bs] : breakpoints) {
        if (bt <= t) s = bs;
    }
    return s;
}

double SpeedProfile::distance_at(double t) const {
    double d = 0.0;
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        const double t0 = breakpoints[i].first;
        if (t0 >= t) break;
        const double t1 = (i + 1 < breakpoints.size()) ? std::min(breakpoints[i + 1].first, t) : t;
        if (t1 > t0) d += breakpoints[i].second * (t1 - t0);
    }
    return d;
}

Point2 simulate(const TurnSpec& spec, const TrajectorySample& sample, double t) {
    spec.validate();
    sample.params.validate();
    const double r = sample.params.radius, thc = sample.params.bearing_change;
    const bool radius_ok =
        spec.mode == TurnMode::Either
            ? (r >= spec.radius_min || r <= spec.radius_max)
            : (r >= spec.radius_min && r <= spec.radius_max);
    if (!radius_ok || thc < spec.bearing_min - 1e-12 || thc > spec.bearing_max + 1e-12)
        throw std::invalid_argument("simulate: sample outside the spec's parameter ranges");
    for (const auto& bp : sample.profile.breakpoints) {
        const double bs = bp.second;
        if (bs < spec.speed_min - 1e-12 || bs > spec.speed_max + 1e-12)
            throw std::invalid_argument("simulate: speed profile outside [s_min, s_max]");
    }
    const double d = sample.profile.distance_at(t);
    return to_global(position_at_distance(sample.params, d), spec.pose);
}

namespace {

// Forward-tangent exit angles (left turn, local frame) solved from the
// tangency geometry: q on the circle with (p - q) parallel to the heading.
// Independent route from the closed-form bearing expression.
std::vector<std::pair<double, double>> tangent_exits(Point2 p, double r) {
    std::vector<std::pair<double, double>> out; // (exit angle, tangent length)
    const Point2 w{p.x, p.y - r};               // p - center
    const double wn = w.norm();
    if (wn < r * (1.0 - 1e-12)) return out;
    // sin(a)*wx - cos(a)*wy = r  ->  R*cos(a - alpha) = r
    const double A = w.x, B = -w.y;
    const double R = std::hypot(A, B);
    if (R < r) return out;
    const double alpha = std::atan2(A, B);
    const double delta = std::acos(std::clamp(r / R, -1.0, 1.0));
    for (double sgn : {1.0, -1.0}) {
        double a = alpha + sgn * delta;
        a = std::fmod(a, kTau);
        if (a < 0) a += kTau;
        if (a == 0.0) a = kTau;
        const Point2 q{r * std::sin(a), r * (1.0 - std::cos(a))};
        const Point2 v = p - q;
        const Point2 u = dir_vec(a);
        const double proj = v.dot(u);
        const double perp = std::abs(v.cross(u));
        if (perp <= 1e-7 * std::max(1.0, std::abs(proj)) && proj >= -1e-9)
            out.emplace_back(a, std::max(proj, 0.0));
    }
    return out;
}

struct LeftRange {
    double ra, rb, tha, thb;
};

// Candidate path lengths to local point p for a left-turn parameter range.
void collect_lengths(Point2 p, const LeftRange& rr, int n_r, double& lo, double& hi,
                     double r_from, double r_to) {
    for (int i = 0; i <= n_r; ++i) {
        const double r = r_from + (r_to - r_from) * i / std::max(1, n_r);
        if (r <= 0) continue;
        for (const auto& [psi, ell] : tangent_exits(p, r)) {
            if (psi < rr.tha - 1e-9 || psi > rr.thb + 1e-9) continue;
            const double L = r * psi + ell;
            lo = std::min(lo, L);
            hi = std::max(hi, L);
        }
    }
}

GridDistResult grid_left(Point2 p, const LeftRange& rr, int n_r, int n_theta, double tol) {
    GridDistResult res;
    double lo = kInf, hi = -kInf;
    // Pure-arc candidate.
    if (p.y > 0.0) {
        const double rm = p.norm_sq() / (2.0 * p.y);
        const double thm = 2.0 * std::atan2(p.y, p.x);
        if (rm >= rr.ra - 1e-9 && rm <= rr.rb + 1e-9 && thm > 0 && thm <= rr.thb + 1e-9) {
            lo = std::min(lo, rm * thm);
            hi = std::max(hi, rm * thm);
        }
    }
    double r_cap = rr.rb;
    if (p.y > 0.0) r_cap = std::min(r_cap, p.norm_sq() / (2.0 * p.y));
    if (r_cap >= rr.ra) {
        collect_lengths(p, rr, n_r, lo, hi, rr.ra, r_cap);
        // Bearing sweep: radius implied by each bearing via the same tangency
        // construction, inverted by bisection on the exit angle.
        auto exit_at = [&](double r) -> double {
            const auto sols = tangent_exits(p, r);
            if (sols.empty()) return kInf;
            return sols.front().first;
        };
        // The solve degenerates when p sits exactly on the radius-r circle;
        // pull the upper bracket inward until it resolves.
        double b_hi = r_cap;
        for (int k = 0; k < 60 && !std::isfinite(exit_at(b_hi)); ++k)
            b_hi = rr.ra + (b_hi - rr.ra) * (1.0 - 1e-12) - 1e-15 * std::max(1.0, b_hi);
        for (int i = 0; i <= n_theta; ++i) {
            const double th = rr.tha + (rr.thb - rr.tha) * i / std::max(1, n_theta);
            // find r in [ra, b_hi] whose exit angle is th (exit increases with r)
            double a = rr.ra, b = b_hi;
            const double ea = exit_at(a), eb = exit_at(b);
            if (!std::isfinite(ea) || !std::isfinite(eb)) continue;
            if (th < ea - 1e-9 || th > eb + 1e-9) continue;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                if (exit_at(m) < th)
                    a = m;
                else
                    b = m;
            }
            const auto sols = tangent_exits(p, 0.5 * (a + b));
            if (!sols.empty()) {
                const double L = 0.5 * (a + b) * sols.front().first + sols.front().second;
                lo = std::min(lo, L);
                hi = std::max(hi, L);
            }
        }
        // Local refinement around the grid extremes until movement < tol.
        const double step0 = (r_cap - rr.ra) / std::max(1, n_r);
        double step = step0;
        for (int round = 0; round < 30 && step > 1e-14; ++round) {
            const double prev_lo = lo, prev_hi = hi;
            for (double base : {rr.ra, r_cap}) {
                collect_lengths(p, rr, 64, lo, hi, std::max(rr.ra, base - step),
                                std::min(r_cap, base + step));
            }
            step *= 0.5;
            if (std::abs(prev_lo - lo) < tol && std::abs(prev_hi - hi) < tol && round > 2) break;
        }
    }
    if (!std::isfinite(lo)) return res;
    res.lo = lo;
    res.hi = hi;
    res.reachable = true;
    return res;
}

} // namespace

GridDistResult grid_min_max_dist(const TurnSpec& spec, Point2 world_p, int n_r, int n_theta,
                                 double tol) {
    spec.validate();
    const Point2 p = to_local(world_p, spec.pose);
    if (p.norm() < 1e-12) return GridDistResult{0.0, 0.0, true};
    switch (spec.mode) {
    case TurnMode::Left:
        return grid_left(p, {spec.radius_min, spec.radius_max, spec.bearing_min, spec.bearing_max},
                         n_r, n_theta, tol);
    case TurnMode::Right:
        return grid_left({p.x, -p.y},
                         {-spec.radius_max, -spec.radius_min, -spec.bearing_max, -spec.bearing_min},
                         n_r, n_theta, tol);
    case TurnMode::Either: {
        if (p.y == 0.0 && p.x >= 0.0) return GridDistResult{p.x, p.x, true};
        const double huge = 1e6 * std::max(1.0, p.norm());
        if (p.y > 0.0)
            return grid_left(p, {spec.radius_min, huge, 0.0, spec.bearing_max}, n_r, n_theta, tol);
        return grid_left({p.x, -p.y}, {-spec.radius_max, huge, 0.0, -spec.bearing_min}, n_r,
                         n_theta, tol);
    }
    }
    return {};
}

namespace {

TrajectorySample random_sample(const TurnSpec& spec, double horizon, Rng& rng) {
    TrajectorySample s;
    double r;
    if (spec.mode == TurnMode::Either) {
        // radius in [r_min, inf) U (-inf, r_max]: sample curvature instead
        const double kmax_l = 1.0 / spec.radius_min;
        const double kmax_r = 1.0 / (-spec.radius_max);
        const double k = rng.uniform(-kmax_r, kmax_l);
        r = std::abs(k) < 1e-9 ? 1e9 : 1.0 / k;
    } else {
        r = rng.uniform(spec.radius_min, spec.radius_max);
    }
    double thc = rng.uniform(spec.bearing_min, spec.bearing_max);
    if (spec.mode == TurnMode::Either) {
        if (r > 0 && thc <= 0) thc = rng.uniform(1e-6, std::max(spec.bearing_max, 2e-6));
        if (r < 0 && thc >= 0) thc = rng.uniform(std::min(spec.bearing_min, -2e-6), -1e-6);
    }
    s.params = PathParams{r, thc};
    const double t1 = rng.uniform(0.1, 0.5) * horizon;
    const double t2 = rng.uniform(0.5, 0.9) * horizon;
    s.profile.breakpoints = {{0.0, rng.uniform(spec.speed_min, spec.speed_max)},
                             {t1, rng.uniform(spec.speed_min, spec.speed_max)},
                             {t2, rng.uniform(spec.speed_min, spec.speed_max)}};
    return s;
}

} // namespace

std::vector<CollisionEvent> monte_carlo_collisions(const TurnSpec& own, const TurnSpec& intr,
                                                   int n, double eps, double dt, double horizon,
                                                   std::uint64_t seed) {
    own.validate();
    intr.validate();
    if (n < 1) throw std::invalid_argument("monte_carlo_collisions: n must be >= 1");
    std::vector<CollisionEvent> events;
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        const TrajectorySample so = random_sample(own, horizon, rng);
        const TrajectorySample si = random_sample(intr, horizon, rng);
        double d_own = 0.0, d_intr = 0.0;
        for (double t = 0.0; t <= horizon; t += dt) {
            const Point2 po = to_global(position_at_distance(so.params, d_own), own.pose);
            const Point2 pi = to_global(position_at_distance(si.params, d_intr), intr.pose);
            if ((po - pi).norm() <= eps)
                events.push_back({t, Point2{0.5 * (po.x + pi.x), 0.5 * (po.y + pi.y)}});
            d_own += so.profile.speed_at(t) * dt;
            d_intr += si.profile.speed_at(t) * dt;
        }
    }
    return events;
}

RasterResult rasterize_conflict_wave(const RegionTiming& rt, double dt, double cell,
                                     double horizon) {
    RasterResult res;
    // Clip box: polygon bbox when bounded, scaled box otherwise.
    double lox = kInf, loy = kInf, hix = -kInf, hiy = -kInf;
    RegionShape shape = polygon_vertices(rt.polygon);
    for (const auto& v : shape.vertices) {
        lox = std::min(lox, v.x);
        loy = std::min(loy, v.y);
        hix = std::max(hix, v.x);
        hiy = std::max(hiy, v.y);
    }
    if (!shape.rays.empty() || shape.vertices.empty()) {
        res.clipped = true;
        double scale = 10.0;
        for (const auto& v : shape.vertices) scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
        for (const auto& r : shape.rays)
            scale = std::max({scale, std::abs(r.origin.x), std::abs(r.origin.y)});
        lox = std::isfinite(lox) ? lox - 3 * scale : -3 * scale;
        loy = std::isfinite(loy) ? loy - 3 * scale : -3 * scale;
        hix = std::isfinite(hix) ? hix + 3 * scale : 3 * scale;
        hiy = std::isfinite(hiy) ? hiy + 3 * scale : 3 * scale;
    }
    res.clip_lo = {lox, loy};
    res.clip_hi = {hix, hiy};

    double first = kInf, last = -kInf;
    const int nx = std::max(1, int(std::ceil((hix - lox) / cell)));
    const int ny = std::max(1, int(std::ceil((hiy - loy) / cell)));
    for (int iy = 0; iy <= ny; ++iy) {
        for (int ix = 0; ix <= nx; ++ix) {
            const Point2 p{lox + ix * cell, loy + iy * cell};
            if (!rt.polygon.contains(p, 1e-9)) continue;
            // Cell interval, then snapped to the dt grid.
            const double te =
                std::max({0.0, rt.own_front.time_at(p), rt.intr_front.time_at(p)});
            const double tl = std::min(rt.own_back.time_at(p), rt.intr_back.time_at(p));
            if (te > tl || te > horizon) continue;
            const double k0 = std::ceil(te / dt - 1e-9) * dt;
            const double k1 = std::floor(std::min(tl, horizon) / dt + 1e-9) * dt;
            if (k0 > k1 + 1e-12) continue;
            first = std::min(first, k0);
            last = std::max(last, k1);
        }
    }
    if (std::isfinite(first)) {
        res.any = true;
        res.first_touch = first;
        res.last_touch = last;
    }
    return res;
}

std::string events_as_table(const std::vector<CollisionEvent>& events) {
    std::ostringstream os;
    os << "t\tx\ty\n";
    os.precision(12);
    for (const auto& e : events) os << e.t << "\t" << e.where.x << "\t" << e.where.y << "\n";
    return os.str();
}

} // namespace oracle
} // namespace turnwave
