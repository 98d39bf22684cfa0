#include "turnwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace turnwave {

namespace {

constexpr double kCutSnap = 1e-12;

bool nearly_parallel(const HalfPlane& a, const HalfPlane& b, double tol) {
    const double det = a.a1 * b.a2 - a.a2 * b.a1;
    const double na = std::hypot(a.a1, a.a2), nb = std::hypot(b.a1, b.a2);
    return std::abs(det) <= tol * na * nb;
}

std::optional<Point2> line_intersection(const HalfPlane& a, const HalfPlane& b) {
    const double det = a.a1 * b.a2 - a.a2 * b.a1;
    const double na = std::hypot(a.a1, a.a2), nb = std::hypot(b.a1, b.a2);
    if (std::abs(det) <= 1e-14 * na * nb) return std::nullopt;
    return Point2{(a.b * b.a2 - a.a2 * b.b) / det, (a.a1 * b.b - a.b * b.a1) / det};
}

double point_scale(const std::vector<Point2>& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
    return s;
}

// Recession cone of {a_i . d <= 0} as a closed angular interval [lo, hi]
// (hi - lo <= pi), a full circle, or empty. A slab's line-shaped cone shows
// up as two antipodal point intervals; we return the pair.
struct RecessionCone {
    bool empty = true;
    bool full = false;
    std::vector<std::pair<double, double>> arcs; // each [lo, hi], hi >= lo
};

RecessionCone recession_cone(const std::vector<HalfPlane>& hs) {
    RecessionCone cone;
    if (hs.empty()) {
        cone.empty = false;
        cone.full = true;
        return cone;
    }
    // Sample feasibility of directions on a fine closed-arc intersection.
    // Each half-plane allows directions in [ang(a)+pi/2, ang(a)+3pi/2].
    // Intersect incrementally in interval form on the circle.
    struct Arc {
        double lo, hi;
    };
    std::vector<Arc> cur{{0.0, kTau}}; // union representation, half-open-ish
    auto intersect_with = [&](double lo, double hi) {
        // target arc [lo, hi] (length pi), wraps modulo tau
        std::vector<Arc> next;
        for (const auto& arc : cur) {
            for (int k = -1; k <= 1; ++k) {
                const double alo = std::max(arc.lo, lo + k * kTau);
                const double ahi = std::min(arc.hi, hi + k * kTau);
                if (ahi >= alo - 1e-15) next.push_back({alo, ahi});
            }
        }
        cur = std::move(next);
    };
    for (const auto& h : hs) {
        const double ang = std::atan2(h.a2, h.a1);
        intersect_with(ang + kPi / 2, ang + 3 * kPi / 2);
        if (cur.empty()) return cone;
    }
    // Merge arcs that represent the same angles modulo tau.
    std::vector<Arc> merged;
    for (auto a : cur) {
        double lo = a.lo, hi = a.hi;
        while (lo >= kTau - 1e-12) {
            lo -= kTau;
            hi -= kTau;
        }
        while (lo < -1e-12) {
            lo += kTau;
            hi += kTau;
        }
        bool absorbed = false;
        for (auto& m : merged) {
            if (lo <= m.hi + 1e-9 && hi >= m.lo - 1e-9) {
                m.lo = std::min(m.lo, lo);
                m.hi = std::max(m.hi, hi);
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back({lo, hi});
    }
    cone.empty = merged.empty();
    for (const auto& m : merged) cone.arcs.emplace_back(m.lo, m.hi);
    return cone;
}

} // namespace

double normalize_angle(double a) {
    double r = std::remainder(a, kTau); // (-pi, pi], with -pi possible
    if (r <= -kPi) r = kPi;
    return r;
}

double atan2_branch(double y, double x, AngleBranch branch) {
    if (x == 0.0 && y == 0.0) throw std::domain_error("atan2_branch: origin input");
    double a = std::atan2(y, x); // [-pi, pi]
    switch (branch) {
    case AngleBranch::SignedPi:
        if (a <= -kPi + kCutSnap) a = kPi; // closed side is +pi
        return a;
    case AngleBranch::ZeroTau:
        if (a < 0.0) a += kTau;
        if (a >= kTau - kCutSnap) a = 0.0; // closed side is 0
        return a;
    case AngleBranch::HalfShifted:
        if (a < -kPi / 2) a += kTau;
        if (a >= 3 * kPi / 2 - kCutSnap) a = -kPi / 2;
        return a;
    }
    return a;
}

Point2 to_local(Point2 p, const Pose& frame) {
    return rotated(p - frame.position, -frame.heading);
}

Point2 to_global(Point2 p, const Pose& frame) {
    return rotated(p, frame.heading) + frame.position;
}

Pose compose(const Pose& outer, const Pose& inner) {
    return Pose{to_global(inner.position, outer), normalize_angle(outer.heading + inner.heading)};
}

ChordParams chord_params(Point2 p) {
    if (p.x == 0.0 && p.y == 0.0) throw std::domain_error("chord_params: origin input");
    ChordParams c;
    c.bearing = 2.0 * std::atan2(p.y, p.x);
    if (p.y == 0.0) {
        c.straight = true;
        c.radius = std::numeric_limits<double>::infinity();
    } else {
        c.radius = p.norm_sq() / (2.0 * p.y);
    }
    return c;
}

HalfPlane halfplane_left_of(Point2 point, Point2 direction) {
    // left of direction: cross(direction, p - point) >= 0
    // -> (-dy) x + (dx) y >= -dy*px + dx*py  ->  dy*x - dx*y <= dy*px - dx*py
    return HalfPlane{direction.y, -direction.x, direction.y * point.x - direction.x * point.y};
}

HalfPlane halfplane_right_of(Point2 point, Point2 direction) {
    return HalfPlane{-direction.y, direction.x, -direction.y * point.x + direction.x * point.y};
}

bool ConvexRegion::contains(Point2 p, double tol) const {
    const double scale = std::max({1.0, std::abs(p.x), std::abs(p.y)});
    for (const auto& h : halfplanes)
        if (h.eval(p) > tol * scale) return false;
    return true;
}

bool region_feasible(const std::vector<HalfPlane>& hs, double tol) {
    if (hs.empty()) return true;
    if (hs.size() == 1) return true;
    bool any_nonparallel = false;
    std::vector<Point2> candidates;
    for (size_t i = 0; i < hs.size(); ++i) {
        for (size_t j = i + 1; j < hs.size(); ++j) {
            if (nearly_parallel(hs[i], hs[j], 1e-12)) continue;
            any_nonparallel = true;
            if (auto p = line_intersection(hs[i], hs[j])) candidates.push_back(*p);
        }
    }
    if (!any_nonparallel) {
        // 1-D problem along the common normal.
        const Point2 n{hs[0].a1, hs[0].a2};
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& h : hs) {
            const double sgn = (h.a1 * n.x + h.a2 * n.y) > 0 ? 1.0 : -1.0;
            const double off = h.b / std::hypot(h.a1, h.a2);
            if (sgn > 0)
                hi = std::min(hi, off);
            else
                lo = std::max(lo, -off);
        }
        return lo <= hi + tol;
    }
    for (const auto& p : candidates) {
        const double scale = std::max({1.0, std::abs(p.x), std::abs(p.y)});
        bool ok = true;
        for (const auto& h : hs) {
            if (h.eval(p) > tol * scale * std::hypot(h.a1, h.a2)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

RegionShape polygon_vertices(const ConvexRegion& r) {
    const auto& hs = r.halfplanes;
    if (!region_feasible(hs)) throw std::domain_error("polygon_vertices: empty region");
    RegionShape shape;

    std::vector<Point2> cand;
    for (size_t i = 0; i < hs.size(); ++i) {
        for (size_t j = i + 1; j < hs.size(); ++j) {
            auto p = line_intersection(hs[i], hs[j]);
            if (!p) continue;
            cand.push_back(*p);
        }
    }
    const double scale = point_scale(cand);
    std::vector<Point2> verts;
    for (const auto& p : cand) {
        bool ok = true;
        for (const auto& h : hs) {
            if (h.eval(p) > 1e-7 * scale * std::hypot(h.a1, h.a2)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        bool dup = false;
        for (const auto& q : verts) {
            if ((p - q).norm() <= 1e-7 * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) verts.push_back(p);
    }

    const auto cone = recession_cone(hs);
    const bool unbounded = !cone.empty;

    if (!unbounded) {
        // CCW order around centroid.
        Point2 c{};
        for (const auto& v : verts) c = c + v;
        if (!verts.empty()) c = c * (1.0 / double(verts.size()));
        std::sort(verts.begin(), verts.end(), [&](Point2 a, Point2 b) {
            return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
        });
        shape.vertices = std::move(verts);
        return shape;
    }

    // Unbounded: order the vertex chain along the direction perpendicular to
    // the recession bisector, then attach boundary rays.
    double lo = 0.0, hi = 0.0;
    if (cone.full) {
        shape.vertices = verts;
        return shape; // whole plane: no boundary
    }
    if (cone.arcs.size() == 1) {
        lo = cone.arcs[0].first;
        hi = cone.arcs[0].second;
    } else {
        // slab-like: pick the two antipodal directions as separate rays
        lo = cone.arcs[0].first;
        hi = cone.arcs[1].first;
    }
    const double mid = 0.5 * (lo + hi);
    const Point2 sweep = dir_vec(mid - kPi / 2);
    std::sort(verts.begin(), verts.end(),
              [&](Point2 a, Point2 b) { return a.dot(sweep) < b.dot(sweep); });
    shape.vertices = std::move(verts);

    Point2 anchor_in, anchor_out;
    if (!shape.vertices.empty()) {
        anchor_in = shape.vertices.front();
        anchor_out = shape.vertices.back();
    } else {
        // No vertices (half-plane or slab): anchor on the tightest boundary line.
        size_t best = 0;
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < hs.size(); ++i) {
            const double nh = std::hypot(hs[i].a1, hs[i].a2);
            const double d = std::abs(hs[i].b) / nh;
            if (d < bestd) {
                bestd = d;
                best = i;
            }
        }
        const auto& h = hs[best];
        const double nh2 = h.a1 * h.a1 + h.a2 * h.a2;
        anchor_in = anchor_out = Point2{h.a1 * h.b / nh2, h.a2 * h.b / nh2};
    }
    // Boundary, walked CCW, comes in from infinity along `hi` and leaves
    // along `lo`; report the incoming ray at the chain head.
    shape.rays.push_back(Ray{anchor_in, normalize_angle(hi)});
    shape.rays.push_back(Ray{anchor_out, normalize_angle(lo)});
    return shape;
}

std::vector<HalfPlane> prune_halfplanes(const std::vector<HalfPlane>& input) {
    // Normalize, dedupe, then drop constraints that the rest already imply.
    std::vector<HalfPlane> hs;
    for (const auto& h : input) {
        const double n = std::hypot(h.a1, h.a2);
        if (n == 0.0) continue;
        HalfPlane u{h.a1 / n, h.a2 / n, h.b / n};
        bool dup = false;
        for (auto& e : hs) {
            if (std::abs(e.a1 - u.a1) < 1e-9 && std::abs(e.a2 - u.a2) < 1e-9 &&
                std::abs(e.b - u.b) < 1e-9) {
                dup = true;
                break;
            }
            // Same normal, keep the tighter offset.
            if (std::abs(e.a1 - u.a1) < 1e-9 && std::abs(e.a2 - u.a2) < 1e-9) {
                e.b = std::min(e.b, u.b);
                dup = true;
                break;
            }
        }
        if (!dup) hs.push_back(u);
    }
    if (hs.size() <= 2) return hs;

    std::vector<HalfPlane> kept;
    for (size_t i = 0; i < hs.size(); ++i) {
        std::vector<HalfPlane> rest;
        for (size_t j = 0; j < hs.size(); ++j)
            if (j != i) rest.push_back(hs[j]);
        if (!region_feasible(rest)) {
            kept.push_back(hs[i]);
            continue;
        }
        // i is redundant iff max of a_i.x over `rest` stays <= b_i.
        bool redundant = true;
        ConvexRegion rr;
        rr.halfplanes = rest;
        RegionShape shape;
        try {
            shape = polygon_vertices(rr);
        } catch (const std::domain_error&) {
            kept.push_back(hs[i]);
            continue;
        }
        for (const auto& v : shape.vertices) {
            const double scale = std::max({1.0, std::abs(v.x), std::abs(v.y)});
            if (hs[i].eval(v) > 1e-9 * scale) {
                redundant = false;
                break;
            }
        }
        if (redundant) {
            for (const auto& ray : shape.rays) {
                const Point2 d = dir_vec(ray.angle);
                if (hs[i].a1 * d.x + hs[i].a2 * d.y > 1e-12) {
                    redundant = false;
                    break;
                }
            }
        }
        if (redundant && shape.vertices.empty() && shape.rays.empty()) redundant = false;
        if (!redundant) kept.push_back(hs[i]);
    }
    return kept.empty() ? hs : kept;
}

ConvexRegion make_region(std::vector<HalfPlane> hs, std::optional<RegionLabel> label) {
    ConvexRegion r;
    r.halfplanes = std::move(hs);
    r.label = label;
    r.bounded = recession_cone(r.halfplanes).empty;
    return r;
}

std::optional<ConvexRegion> polygon_intersect(const ConvexRegion& a, const ConvexRegion& b) {
    std::vector<HalfPlane> hs = a.halfplanes;
    hs.insert(hs.end(), b.halfplanes.begin(), b.halfplanes.end());
    if (!region_feasible(hs)) return std::nullopt;
    ConvexRegion r;
    r.halfplanes = prune_halfplanes(hs);
    r.label = a.label ? a.label : b.label;
    r.bounded = recession_cone(r.halfplanes).empty;
    return r;
}

ConvexRegion region_to_world(const ConvexRegion& r, const Pose& frame) {
    ConvexRegion w = r;
    for (auto& h : w.halfplanes) {
        const Point2 n = rotated({h.a1, h.a2}, frame.heading);
        h = HalfPlane{n.x, n.y, h.b + n.dot(frame.position)};
    }
    return w;
}

ConvexRegion region_mirror_y(const ConvexRegion& r) {
    ConvexRegion m = r;
    for (auto& h : m.halfplanes) h.a2 = -h.a2;
    return m;
}

std::vector<HalfPlane> box_halfplanes(Point2 lo, Point2 hi) {
    return {HalfPlane{1, 0, hi.x}, HalfPlane{-1, 0, -lo.x}, HalfPlane{0, 1, hi.y},
            HalfPlane{0, -1, -lo.y}};
}

} // namespace turnwave
