#include "turnwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace turnwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- Poly1

using Poly1 = std::vector<double>; // ascending coefficients

Poly1 p1_add(const Poly1& a, const Poly1& b) {
    Poly1 r(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly1 p1_scale(const Poly1& a, double s) {
    Poly1 r = a;
    for (auto& c : r) c *= s;
    return r;
}

Poly1 p1_mul(const Poly1& a, const Poly1& b) {
    Poly1 r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

double p1_eval(const Poly1& a, double u) {
    double v = 0.0;
    for (size_t i = a.size(); i-- > 0;) v = v * u + a[i];
    return v;
}

Poly1 p1_derivative(const Poly1& a) {
    if (a.size() <= 1) return {0.0};
    Poly1 r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * double(i);
    return r;
}

} // namespace

std::vector<double> poly_roots(const std::vector<double>& poly, double lo, double hi) {
    // Normalize and trim.
    double scale = 0.0;
    for (double c : poly) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    Poly1 p = p1_scale(poly, 1.0 / scale);
    while (p.size() > 1 && std::abs(p.back()) < 1e-14) p.pop_back();
    const int deg = int(p.size()) - 1;
    if (deg <= 0) return {};
    if (deg == 1) {
        const double r = -p[0] / p[1];
        if (r >= lo - 1e-12 && r <= hi + 1e-12) return {std::clamp(r, lo, hi)};
        return {};
    }
    // Breakpoints from the derivative's roots partition [lo, hi] into
    // monotone spans; bisect sign changes, and keep touching roots where the
    // polynomial grazes zero at a stationary point.
    auto crit = poly_roots(p1_derivative(p), lo, hi);
    std::vector<double> brk{lo};
    for (double c : crit) brk.push_back(c);
    brk.push_back(hi);
    std::sort(brk.begin(), brk.end());

    std::vector<double> roots;
    auto push = [&](double r) {
        for (double e : roots)
            if (std::abs(e - r) <= 1e-7 * std::max(1.0, std::abs(r))) return;
        roots.push_back(r);
    };
    double vtol = 0.0;
    for (double b : brk) vtol = std::max(vtol, std::abs(p1_eval(p, b)));
    vtol = 1e-11 * (1.0 + vtol);

    // Grazing (even-multiplicity) roots first: stationary points where the
    // polynomial touches zero without a sign change.
    for (double b : brk)
        if (std::abs(p1_eval(p, b)) <= vtol) push(b);

    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        double a = brk[i], b = brk[i + 1];
        if (b - a < 1e-14) continue;
        double fa = p1_eval(p, a), fb = p1_eval(p, b);
        if (fa * fb < 0.0) {
            for (int it = 0; it < 100 && b - a > 1e-10 * std::max(1.0, std::abs(b)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = p1_eval(p, m);
                if (fa * fm <= 0.0) {
                    b = m;
                    fb = fm;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            push(0.5 * (a + b));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------- Poly2

double Poly2::eval(Point2 p) const {
    double v = 0.0;
    double xi = 1.0;
    for (int i = 0; i <= 4; ++i) {
        double yj = 1.0;
        for (int j = 0; j <= 4; ++j) {
            if (c[i][j] != 0.0) v += c[i][j] * xi * yj;
            yj *= p.y;
        }
        xi *= p.x;
    }
    return v;
}

namespace {

Poly2 p2_const(double v) {
    Poly2 p{};
    p.c[0][0] = v;
    return p;
}

Poly2 p2_linear(double cx, double cy, double c0) {
    Poly2 p{};
    p.c[1][0] = cx;
    p.c[0][1] = cy;
    p.c[0][0] = c0;
    return p;
}

Poly2 p2_add(const Poly2& a, const Poly2& b) {
    Poly2 r{};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) r.c[i][j] = a.c[i][j] + b.c[i][j];
    return r;
}

Poly2 p2_scale(const Poly2& a, double s) {
    Poly2 r{};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) r.c[i][j] = a.c[i][j] * s;
    return r;
}

Poly2 p2_mul(const Poly2& a, const Poly2& b) {
    Poly2 r{};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4 - i; ++j) {
            if (a.c[i][j] == 0.0) continue;
            for (int k = 0; k + i <= 4; ++k)
                for (int l = 0; l + j <= 4 - (k + i); ++l) {
                    if (b.c[k][l] == 0.0) continue;
                    r.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
                }
        }
    return r;
}

// |p - a|^2
Poly2 p2_dist_sq(Point2 a) {
    Poly2 p{};
    p.c[2][0] = 1.0;
    p.c[0][2] = 1.0;
    p.c[1][0] = -2.0 * a.x;
    p.c[0][1] = -2.0 * a.y;
    p.c[0][0] = a.norm_sq();
    return p;
}

Poly1 p2_on_segment(const Poly2& f, Point2 p0, Point2 d) {
    // substitute x = p0.x + u d.x, y = p0.y + u d.y
    const Poly1 xu{p0.x, d.x}, yu{p0.y, d.y};
    std::array<Poly1, 5> xp, yp;
    xp[0] = {1.0};
    yp[0] = {1.0};
    for (int i = 1; i <= 4; ++i) {
        xp[i] = p1_mul(xp[i - 1], xu);
        yp[i] = p1_mul(yp[i - 1], yu);
    }
    Poly1 out{0.0};
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4 - i; ++j)
            if (f.c[i][j] != 0.0) out = p1_add(out, p1_scale(p1_mul(xp[i], yp[j]), f.c[i][j]));
    return out;
}

} // namespace

double LociCurve::residual(Point2 p) const { return std::abs(e1.time_at(p) - e2.time_at(p)); }

LociCurve loci_curve(const WaveEdge& e1, const WaveEdge& e2) {
    LociCurve lc;
    lc.e1 = e1;
    lc.e2 = e2;
    const bool c1 = e1.kind == WaveKind::Circular;
    const bool c2 = e2.kind == WaveKind::Circular;
    if (c1 && c2) {
        const double sa = e1.speed, sb = e2.speed;
        const double K = sb * e1.offset - sa * e2.offset;
        const Poly2 Qa = p2_dist_sq(e1.center), Qb = p2_dist_sq(e2.center);
        if (std::abs(sa - sb) < 1e-12 && std::abs(K) < 1e-12) {
            lc.implicit = p2_add(Qa, p2_scale(Qb, -1.0)); // perpendicular bisector
            lc.degree = 1;
            return lc;
        }
        // sb|p-a| - sa|p-b| = K, squared twice.
        const Poly2 inner =
            p2_add(p2_add(p2_scale(Qa, sb * sb), p2_scale(Qb, sa * sa)), p2_const(-K * K));
        lc.implicit =
            p2_add(p2_mul(inner, inner), p2_scale(p2_mul(Qa, Qb), -4.0 * sa * sa * sb * sb));
        lc.degree = 4;
        return lc;
    }
    if (c1 != c2) {
        const WaveEdge& ec = c1 ? e1 : e2;
        const WaveEdge& el = c1 ? e2 : e1;
        // sl |p-a| = sc (n.p - cl) + sl ca
        const double sl = el.speed, sc = ec.speed;
        const Poly2 lin = p2_linear(sc * el.n1, sc * el.n2, -sc * el.offset + sl * ec.offset);
        lc.implicit =
            p2_add(p2_scale(p2_dist_sq(ec.center), sl * sl), p2_scale(p2_mul(lin, lin), -1.0));
        lc.degree = 2;
        return lc;
    }
    // line/line
    const double cx = e1.n1 * e2.speed - e2.n1 * e1.speed;
    const double cy = e1.n2 * e2.speed - e2.n2 * e1.speed;
    const double c0 = -e1.offset * e2.speed + e2.offset * e1.speed;
    if (std::abs(cx) < 1e-14 && std::abs(cy) < 1e-14) {
        lc.empty = std::abs(c0) > 1e-12;
        lc.implicit = p2_const(c0);
        lc.degree = 0;
        return lc;
    }
    lc.implicit = p2_linear(cx, cy, c0);
    lc.degree = 1;
    return lc;
}

// ---------------------------------------------------------------- constraints

bool Constraint3::satisfied(Point2 p, double t, double tol) const {
    switch (kind) {
    case Kind::LinearLE:
        return cx * p.x + cy * p.y + ct * t <= c0 + tol;
    case Kind::CircLE:
        return (p - center).norm() <= speed * t + offset + tol;
    case Kind::CircGE:
        return (p - center).norm() >= speed * t + offset - tol;
    }
    return false;
}

namespace {

Constraint3 wave_constraint(const WaveEdge& e, bool front) {
    Constraint3 c;
    if (e.kind == WaveKind::Linear) {
        c.kind = Constraint3::Kind::LinearLE;
        if (front) { // n.p - s t <= offset
            c.cx = e.n1;
            c.cy = e.n2;
            c.ct = -e.speed;
            c.c0 = e.offset;
        } else { // n.p - s t >= offset
            c.cx = -e.n1;
            c.cy = -e.n2;
            c.ct = e.speed;
            c.c0 = -e.offset;
        }
    } else {
        c.kind = front ? Constraint3::Kind::CircLE : Constraint3::Kind::CircGE;
        c.center = e.center;
        c.speed = e.speed;
        c.offset = e.offset;
    }
    return c;
}

} // namespace

std::vector<Constraint3> region_constraints(const RegionTiming& rt) {
    std::vector<Constraint3> cs;
    cs.push_back(wave_constraint(rt.own_front, true));
    cs.push_back(wave_constraint(rt.own_back, false));
    cs.push_back(wave_constraint(rt.intr_front, true));
    cs.push_back(wave_constraint(rt.intr_back, false));
    for (const auto& h : rt.polygon.halfplanes) {
        Constraint3 c;
        c.kind = Constraint3::Kind::LinearLE;
        c.cx = h.a1;
        c.cy = h.a2;
        c.ct = 0.0;
        c.c0 = h.b;
        cs.push_back(c);
    }
    Constraint3 tpos; // t >= 0
    tpos.kind = Constraint3::Kind::LinearLE;
    tpos.ct = -1.0;
    cs.push_back(tpos);
    return cs;
}

// ---------------------------------------------------------------- linear LP

CollisionInterval solve_linear_region(const RegionTiming& rt) {
    if (rt.own_front.kind != WaveKind::Linear || rt.own_back.kind != WaveKind::Linear ||
        rt.intr_front.kind != WaveKind::Linear || rt.intr_back.kind != WaveKind::Linear)
        throw std::invalid_argument("solve_linear_region: all four edges must be linear");
    const auto cs = region_constraints(rt);
    const size_t m = cs.size();

    double scale = 1.0;
    for (const auto& c : cs) scale = std::max({scale, std::abs(c.c0)});
    const double tol = 1e-7 * scale;

    double lo = kInf, hi = -kInf;
    bool feasible = false;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t k = j + 1; k < m; ++k) {
                const double a[3][3] = {{cs[i].cx, cs[i].cy, cs[i].ct},
                                        {cs[j].cx, cs[j].cy, cs[j].ct},
                                        {cs[k].cx, cs[k].cy, cs[k].ct}};
                const double b[3] = {cs[i].c0, cs[j].c0, cs[k].c0};
                const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
                if (std::abs(det) < 1e-11) continue;
                const double x = (b[0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                  a[0][1] * (b[1] * a[2][2] - a[1][2] * b[2]) +
                                  a[0][2] * (b[1] * a[2][1] - a[1][1] * b[2])) /
                                 det;
                const double y = (a[0][0] * (b[1] * a[2][2] - a[1][2] * b[2]) -
                                  b[0] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                  a[0][2] * (a[1][0] * b[2] - b[1] * a[2][0])) /
                                 det;
                const double t = (a[0][0] * (a[1][1] * b[2] - b[1] * a[2][1]) -
                                  a[0][1] * (a[1][0] * b[2] - b[1] * a[2][0]) +
                                  b[0] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])) /
                                 det;
                bool ok = true;
                for (const auto& c : cs) {
                    if (c.cx * x + c.cy * y + c.ct * t > c.c0 + tol) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                feasible = true;
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
    if (!feasible) return CollisionInterval::none();

    // Unbounded in t: a recession direction (dx, dy, 1) feasible for all rows.
    std::vector<HalfPlane> rec;
    for (const auto& c : cs) rec.push_back(HalfPlane{c.cx, c.cy, -c.ct});
    if (region_feasible(rec, 1e-12)) hi = kInf;
    return CollisionInterval::of(std::max(0.0, lo), hi);
}

// ---------------------------------------------------------------- critical points

namespace {

struct BoundaryEdge {
    Point2 p0{};
    Point2 dir{}; // unit
    double len = 0.0;
    bool is_ray = false;
};

struct PolyBoundary {
    std::vector<Point2> vertices;
    std::vector<BoundaryEdge> edges;
    std::vector<Ray> rays;
    double scale = 1.0;
};

PolyBoundary boundary_of(const ConvexRegion& poly) {
    PolyBoundary b;
    const RegionShape shape = polygon_vertices(poly);
    b.vertices = shape.vertices;
    b.rays = shape.rays;
    for (const auto& v : b.vertices) b.scale = std::max({b.scale, std::abs(v.x), std::abs(v.y)});
    const size_t n = shape.vertices.size();
    if (n >= 2) {
        const size_t last = shape.rays.empty() ? n : n - 1;
        for (size_t i = 0; i < last; ++i) {
            const Point2 a = shape.vertices[i];
            const Point2 c = shape.vertices[(i + 1) % n];
            const double len = (c - a).norm();
            if (len < 1e-12) continue;
            b.edges.push_back({a, (c - a) * (1.0 / len), len, false});
        }
    }
    for (const auto& ray : shape.rays)
        b.edges.push_back({ray.origin, dir_vec(ray.angle), 1e6 * b.scale, true});
    return b;
}

struct TimeModel {
    const WaveEdge* edge;
    bool front;
    double time(Point2 p) const { return edge->time_at(p); }
};

// Tangency/contact events between two moving circular edges: times where the
// circles touch, and the touch point on the center line.
void circle_pair_events(const WaveEdge& a, const WaveEdge& b, std::vector<Point2>& out) {
    const Point2 d = b.center - a.center;
    const double dist = d.norm();
    if (dist < 1e-12) return;
    const Point2 u = d * (1.0 / dist);
    // |ra(t) +- rb(t)| = dist, four sign combinations.
    const double combos[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& cmb : combos) {
        const double denom = cmb[0] * a.speed + cmb[1] * b.speed;
        if (std::abs(denom) < 1e-12) continue;
        const double t = (dist - cmb[0] * a.offset - cmb[1] * b.offset) / denom;
        if (!(t >= -1e-9) || !std::isfinite(t)) continue;
        const double ra = a.speed * t + a.offset;
        out.push_back(a.center + u * (cmb[0] * ra));
    }
}

// Triple events: a point swept by three edges at one common time. These are
// the birth/extinction corners of the conflict wave where the lens between
// two edges emerges from behind a third. Each edge contributes one equation
// in (x, y, t); eliminating (x, y) leaves a polynomial in t.
void triple_events(const WaveEdge* e[3], std::vector<Point2>& out) {
    // Linear equations a.p = rhs(t) with rhs quadratic in t (coeffs c0+c1 t+c2 t^2).
    struct LinEq {
        Point2 a;
        double r0, r1, r2;
    };
    std::vector<LinEq> eqs;
    std::vector<int> circles;
    for (int i = 0; i < 3; ++i)
        if (e[i]->kind == WaveKind::Circular) circles.push_back(i);

    auto lin_of = [&](const WaveEdge& w) {
        return LinEq{{w.n1, w.n2}, w.offset, w.speed, 0.0};
    };
    // Radical line of two moving circles.
    auto radical = [&](const WaveEdge& p, const WaveEdge& q) {
        const double k0 = q.center.norm_sq() - p.center.norm_sq() +
                          (p.offset * p.offset - q.offset * q.offset);
        const double k1 = 2.0 * (p.speed * p.offset - q.speed * q.offset);
        const double k2 = p.speed * p.speed - q.speed * q.speed;
        return LinEq{(q.center - p.center) * 2.0, k0, k1, k2};
    };

    if (circles.size() == 0) return; // pure linear systems are handled by the LP
    if (circles.size() == 1) {
        for (int i = 0; i < 3; ++i)
            if (e[i]->kind == WaveKind::Linear) eqs.push_back(lin_of(*e[i]));
    } else if (circles.size() == 2) {
        for (int i = 0; i < 3; ++i)
            if (e[i]->kind == WaveKind::Linear) eqs.push_back(lin_of(*e[i]));
        eqs.push_back(radical(*e[circles[0]], *e[circles[1]]));
    } else {
        eqs.push_back(radical(*e[circles[0]], *e[circles[1]]));
        eqs.push_back(radical(*e[circles[0]], *e[circles[2]]));
    }
    if (eqs.size() != 2) return;
    const double det = eqs[0].a.x * eqs[1].a.y - eqs[0].a.y * eqs[1].a.x;
    const double scale = std::max(
        {1.0, std::abs(eqs[0].a.x), std::abs(eqs[0].a.y), std::abs(eqs[1].a.x), std::abs(eqs[1].a.y)});
    if (std::abs(det) < 1e-10 * scale * scale) return;
    // p(t) = (X(t), Y(t)) / det with X, Y quadratic in t.
    const Poly1 r0{eqs[0].r0, eqs[0].r1, eqs[0].r2};
    const Poly1 r1{eqs[1].r0, eqs[1].r1, eqs[1].r2};
    const Poly1 X = p1_add(p1_scale(r0, eqs[1].a.y), p1_scale(r1, -eqs[0].a.y));
    const Poly1 Y = p1_add(p1_scale(r1, eqs[0].a.x), p1_scale(r0, -eqs[1].a.x));
    // Residual through one circular member: |p(t) - c|^2 = rho(t)^2.
    const WaveEdge& ref = *e[circles[0]];
    const Poly1 dx = p1_add(X, {-det * ref.center.x});
    const Poly1 dy = p1_add(Y, {-det * ref.center.y});
    const Poly1 rho{ref.offset, ref.speed};
    Poly1 res = p1_add(p1_add(p1_mul(dx, dx), p1_mul(dy, dy)),
                       p1_scale(p1_mul(rho, rho), -det * det));
    for (double t : poly_roots(res, 0.0, 1e5)) {
        // every circular member must have a nonnegative radius at the event
        bool ok = true;
        for (int ci : circles)
            if (e[ci]->speed * t + e[ci]->offset < -1e-9) ok = false;
        if (!ok) continue;
        out.push_back({p1_eval(X, t) / det, p1_eval(Y, t) / det});
    }
}

void circle_line_events(const WaveEdge& c, const WaveEdge& l, std::vector<Point2>& out) {
    const double nn = std::hypot(l.n1, l.n2);
    if (nn < 1e-12) return;
    const Point2 nhat{l.n1 / nn, l.n2 / nn};
    const double na = l.n1 * c.center.x + l.n2 * c.center.y;
    // distance from center to the moving line: (na - s t - c0)/nn = +-(sc t + cc)
    for (double sgn : {1.0, -1.0}) {
        const double denom = l.speed / nn + sgn * c.speed;
        if (std::abs(denom) < 1e-12) continue;
        const double t = (na / nn - l.offset / nn - sgn * c.offset) / denom;
        if (!(t >= -1e-9) || !std::isfinite(t)) continue;
        const double h = (na - l.speed * t - l.offset) / nn;
        out.push_back(c.center - nhat * h);
    }
}

} // namespace

std::vector<CriticalPoint> critical_points(const RegionTiming& rt) {
    std::vector<CriticalPoint> cps;
    const PolyBoundary b = boundary_of(rt.polygon);
    const double tol = 1e-7 * b.scale;
    auto add_if_inside = [&](Point2 p, CriticalKind kind) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
        if (rt.polygon.contains(p, 1e-7)) cps.push_back({p, kind, 0.0});
    };

    for (const auto& v : b.vertices) cps.push_back({v, CriticalKind::PolygonVertex, 0.0});
    for (const auto& ray : b.rays) {
        cps.push_back({ray.origin, CriticalKind::PolygonVertex, 0.0});
        cps.push_back({ray.origin, CriticalKind::RayLimit, ray.angle});
    }

    const WaveEdge* edges[4] = {&rt.own_front, &rt.own_back, &rt.intr_front, &rt.intr_back};

    // Wave birth of the conflict: first contact of the two front edges, plus
    // contact events of every circular pair (conflict lens openings/closings).
    std::vector<Point2> events;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const WaveEdge &a = *edges[i], &c = *edges[j];
            if (a.kind == WaveKind::Circular && c.kind == WaveKind::Circular)
                circle_pair_events(a, c, events);
            else if (a.kind == WaveKind::Circular && c.kind == WaveKind::Linear)
                circle_line_events(a, c, events);
            else if (a.kind == WaveKind::Linear && c.kind == WaveKind::Circular)
                circle_line_events(c, a, events);
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                const WaveEdge* triple[3] = {edges[i], edges[j], edges[k]};
                triple_events(triple, events);
            }
    for (const auto& p : events) add_if_inside(p, CriticalKind::WaveBirth);
    for (const auto* e : edges)
        if (e->kind == WaveKind::Circular) add_if_inside(e->center, CriticalKind::WaveBirth);

    // Locus-edge crossings for every edge pair.
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const LociCurve lc = loci_curve(*edges[i], *edges[j]);
            if (lc.empty) continue;
            for (const auto& be : b.edges) {
                Poly1 restricted = p2_on_segment(lc.implicit, be.p0, be.dir);
                for (double u : poly_roots(restricted, 0.0, be.len)) {
                    const Point2 p = be.p0 + be.dir * u;
                    if (lc.residual(p) > 1e-6 * (1.0 + std::abs(lc.time_at(p)))) continue;
                    add_if_inside(p, CriticalKind::LocusEdgeCrossing);
                }
            }
        }
    }

    // Perpendicular feet from circular centers onto boundary edges.
    for (const auto* e : edges) {
        if (e->kind != WaveKind::Circular) continue;
        for (const auto& be : b.edges) {
            const double u = (e->center - be.p0).dot(be.dir);
            if (u <= tol || u >= be.len - tol) continue;
            add_if_inside(be.p0 + be.dir * u, CriticalKind::TangencyPoint);
        }
    }
    return cps;
}

// ---------------------------------------------------------------- region solve

namespace {

struct RaySlope {
    double rate;
    double intercept;
};

RaySlope edge_ray_asymptote(const WaveEdge& e, const Ray& ray) {
    const Point2 d = dir_vec(ray.angle);
    if (e.kind == WaveKind::Linear) {
        const double nd = e.n1 * d.x + e.n2 * d.y;
        const double at0 = e.time_at(ray.origin);
        return {nd / e.speed, at0};
    }
    const double along = (ray.origin - e.center).dot(d);
    return {1.0 / e.speed, (along - e.offset) / e.speed};
}

} // namespace

CollisionInterval solve_region(const RegionTiming& rt) {
    const bool all_linear =
        rt.own_front.kind == WaveKind::Linear && rt.own_back.kind == WaveKind::Linear &&
        rt.intr_front.kind == WaveKind::Linear && rt.intr_back.kind == WaveKind::Linear;
    if (all_linear) return solve_linear_region(rt);

    std::vector<CriticalPoint> cps;
    try {
        cps = critical_points(rt);
    } catch (const std::domain_error&) {
        // below the feasibility tolerance: a boundary sliver of its neighbors
        return CollisionInterval::none();
    }
    double lo = kInf, hi = -kInf;
    bool feasible = false;
    const double ttol = 1e-9;
    auto consider = [&](Point2 p) {
        const double te = std::max({0.0, rt.own_front.time_at(p), rt.intr_front.time_at(p)});
        const double tl = std::min(rt.own_back.time_at(p), rt.intr_back.time_at(p));
        if (te > tl + ttol * std::max(1.0, std::abs(tl))) return;
        feasible = true;
        lo = std::min(lo, te);
        hi = std::max(hi, std::max(tl, 0.0));
    };
    for (const auto& cp : cps)
        if (cp.kind != CriticalKind::RayLimit) consider(cp.location);

    // Recession rays: persistent overlap forces an unbounded interval.
    bool unbounded = false;
    for (const auto& cp : cps) {
        if (cp.kind != CriticalKind::RayLimit) continue;
        const Ray ray{cp.location, cp.ray_angle};
        const RaySlope of = edge_ray_asymptote(rt.own_front, ray);
        const RaySlope fi = edge_ray_asymptote(rt.intr_front, ray);
        const RaySlope ob = edge_ray_asymptote(rt.own_back, ray);
        const RaySlope bi = edge_ray_asymptote(rt.intr_back, ray);
        const double lo_rate = std::max({of.rate, fi.rate, 0.0});
        const double hi_rate = std::min(ob.rate, bi.rate);
        bool persist = lo_rate < hi_rate - 1e-12;
        if (!persist && std::abs(lo_rate - hi_rate) <= 1e-12) {
            const double lo_int = std::max(of.intercept, fi.intercept);
            const double hi_int = std::min(ob.intercept, bi.intercept);
            persist = lo_int <= hi_int + 1e-9;
        }
        // Far-sample probe (fixed large radius), sound toward declaring
        // overlap.
        const double far = 1e6 * std::max(1.0, ray.origin.norm());
        const Point2 pfar = ray.origin + dir_vec(ray.angle) * far;
        const double te = std::max({0.0, rt.own_front.time_at(pfar), rt.intr_front.time_at(pfar)});
        const double tl = std::min(rt.own_back.time_at(pfar), rt.intr_back.time_at(pfar));
        if (persist || te <= tl + 1e-9) {
            unbounded = true;
            feasible = true;
        }
    }
    if (!feasible) return CollisionInterval::none();
    if (unbounded) hi = kInf;
    if (!std::isfinite(lo)) lo = 0.0; // only ray overlap: conservative start
    return CollisionInterval::of(std::max(0.0, lo), hi);
}

EncounterResult encounter_interval(const TurnSpec& own, const TurnSpec& intr,
                                   const TilingParams& tiling) {
    EncounterResult result;
    auto cover = conflict_cover(own, intr, tiling);
    for (auto& rt : cover) {
        RegionResult row;
        row.interval = solve_region(rt);
        row.region = std::move(rt);
        result.interval = interval_union(result.interval, row.interval);
        result.table.push_back(std::move(row));
    }
    return result;
}

} // namespace turnwave
