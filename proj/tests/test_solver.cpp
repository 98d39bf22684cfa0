#include "turnwave/oracle.hpp"
#include "turnwave/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace turnwave;

namespace {

WaveEdge lin(double n1, double n2, double s, double c, WaveRole role) {
    WaveEdge w;
    w.kind = WaveKind::Linear;
    w.role = role;
    w.n1 = n1;
    w.n2 = n2;
    w.speed = s;
    w.offset = c;
    return w;
}

WaveEdge circ(Point2 center, double s, double c, WaveRole role) {
    WaveEdge w;
    w.kind = WaveKind::Circular;
    w.role = role;
    w.center = center;
    w.speed = s;
    w.offset = c;
    return w;
}

RegionTiming linear_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RegionTiming rt;
    auto dirn = [&](double base) {
        const double a = base + 0.8 * (u(rng) - 0.5);
        return Point2{std::cos(a), std::sin(a)};
    };
    const Point2 f1 = dirn(0.3), b1 = dirn(0.25), f2 = dirn(kPi + 0.2), b2 = dirn(kPi + 0.3);
    rt.own_front = lin(f1.x, f1.y, 1.0 + u(rng), -u(rng), WaveRole::Front);
    rt.own_back = lin(b1.x, b1.y, 0.3 + 0.5 * u(rng), u(rng), WaveRole::Back);
    rt.intr_front = lin(f2.x, f2.y, 1.0 + u(rng), -u(rng) - 2.0, WaveRole::Front);
    rt.intr_back = lin(b2.x, b2.y, 0.3 + 0.5 * u(rng), u(rng) - 2.0, WaveRole::Back);
    const Point2 lo{u(rng) * 2 - 1.5, u(rng) * 2 - 1.5};
    rt.polygon = make_region(box_halfplanes(lo, lo + Point2{0.8 + u(rng), 0.8 + u(rng)}));
    return rt;
}

// Dense (x,y,t)-grid reference for a RegionTiming (t resolved per cell).
CollisionInterval grid_reference(const RegionTiming& rt, Point2 lo, Point2 hi, double step,
                                 double tmax) {
    double first = std::numeric_limits<double>::infinity();
    double last = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (double y = lo.y; y <= hi.y + 1e-12; y += step) {
        for (double x = lo.x; x <= hi.x + 1e-12; x += step) {
            const Point2 p{x, y};
            if (!rt.polygon.contains(p, 1e-9)) continue;
            const double te = std::max({0.0, rt.own_front.time_at(p), rt.intr_front.time_at(p)});
            const double tl = std::min({rt.own_back.time_at(p), rt.intr_back.time_at(p), tmax});
            const double k0 = std::ceil(te / step - 1e-9) * step;
            const double k1 = std::floor(tl / step + 1e-9) * step;
            if (k0 > k1) continue;
            any = true;
            first = std::min(first, k0);
            last = std::max(last, k1);
        }
    }
    if (!any) return CollisionInterval::none();
    return CollisionInterval::of(first, last);
}

} // namespace

TEST_CASE("loci: equal-speed circles give the perpendicular bisector") {
    const auto e1 = circ({0, 0}, 1.0, 0.0, WaveRole::Front);
    const auto e2 = circ({4, 0}, 1.0, 0.0, WaveRole::Front);
    const auto lc = loci_curve(e1, e2);
    CHECK(lc.degree == 1);
    CHECK(std::abs(lc.implicit.eval({2, -3})) < 1e-9);
    CHECK(std::abs(lc.implicit.eval({2, 5})) < 1e-9);
    CHECK(std::abs(lc.implicit.eval({1, 0})) > 1e-6);
}

TEST_CASE("loci: constant-difference pair lies on a hyperbola branch") {
    const auto e1 = circ({0, 0}, 1.0, 0.0, WaveRole::Front);
    const auto e2 = circ({4, 0}, 1.0, -2.0, WaveRole::Front);
    const auto lc = loci_curve(e1, e2);
    // points with |p| - |p-(4,0)| = 2
    for (double y : {0.5, 1.0, 2.0, 3.5}) {
        // solve on x for the branch: |p| = |p-q| + 2
        double a = 2.0, b = 8.0;
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (a + b);
            const Point2 p{m, y};
            if (p.norm() - (p - Point2{4, 0}).norm() < 2.0)
                a = m;
            else
                b = m;
        }
        const Point2 p{0.5 * (a + b), y};
        CHECK(std::abs(lc.implicit.eval(p)) < 1e-6 * (1 + std::abs(lc.implicit.eval({0, 0}))));
        CHECK(lc.residual(p) < 1e-7);
    }
}

TEST_CASE("loci: circle vs line residual check") {
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int sampled = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto e1 = circ({u(rng), u(rng)}, 1.0 + 0.5 * u(rng), 0.3 * u(rng), WaveRole::Front);
        const auto e2 = lin(1.0 + 0.3 * u(rng), 0.4 * u(rng), 1.0 + 0.5 * u(rng), u(rng),
                            WaveRole::Back);
        const auto lc = loci_curve(e1, e2);
        // construct curve points directly: along rays from the circle center,
        // bisect t1(p) - t2(p); the implicit must vanish there and the
        // back-substituted time must satisfy both edge equations
        for (int i = 0; i < 64; ++i) {
            const Point2 d = dir_vec(i * kTau / 64);
            auto gap = [&](double s) {
                const Point2 p = e1.center + d * s;
                return e1.time_at(p) - e2.time_at(p);
            };
            double a = 1e-6, b = 30.0;
            if (gap(a) * gap(b) > 0) continue;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                (gap(a) * gap(m) <= 0 ? b : a) = m;
            }
            const Point2 p = e1.center + d * (0.5 * (a + b));
            CHECK(lc.residual(p) < 1e-8 * (1 + std::abs(lc.time_at(p))));
            double scale = 1.0;
            for (int k = 0; k <= 4; ++k)
                for (int l = 0; l + k <= 4; ++l) scale = std::max(scale, std::abs(lc.implicit.c[k][l]));
            CHECK(std::abs(lc.implicit.eval(p)) < 1e-6 * scale * std::pow(1 + p.norm(), 4));
            ++sampled;
        }
    }
    CHECK(sampled >= 200);
}

TEST_CASE("poly_roots finds touching and crossing roots") {
    // (u-1)^2 (u-3) = u^3 -5u^2 +7u -3
    auto roots = poly_roots({-3, 7, -5, 1}, 0.0, 5.0);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(1.0));
    CHECK(roots[1] == doctest::Approx(3.0));
    roots = poly_roots({1, 0, 1}, -2, 2); // u^2 + 1
    CHECK(roots.empty());
}

TEST_CASE("solve_linear_region: coincident starts collide at t = 0") {
    RegionTiming rt;
    rt.own_front = lin(1, 0, 2.0, 0.0, WaveRole::Front);
    rt.own_back = lin(1, 0, 1.0, 0.0, WaveRole::Back);
    rt.intr_front = lin(1, 0, 2.0, 0.0, WaveRole::Front);
    rt.intr_back = lin(1, 0, 1.0, 0.0, WaveRole::Back);
    rt.polygon = make_region(box_halfplanes({-1, -1}, {1, 1}));
    const auto iv = solve_linear_region(rt);
    REQUIRE_FALSE(iv.empty);
    CHECK(iv.t_earliest == doctest::Approx(0.0));
}

TEST_CASE("solve_linear_region: constructed infeasible instance") {
    RegionTiming rt;
    // own front requires n.p <= t with p.x <= 1 => t can be small, but the
    // intruder back requires n.p >= 5 + t inside a box where n.p <= 1.
    rt.own_front = lin(1, 0, 1.0, 0.0, WaveRole::Front);
    rt.own_back = lin(1, 0, 1.0, 2.0, WaveRole::Back);   // x >= t + 2 in box -> t <= -1
    rt.intr_front = lin(0, 1, 1.0, 0.0, WaveRole::Front);
    rt.intr_back = lin(0, 1, 1.0, 0.0, WaveRole::Back);
    rt.polygon = make_region(box_halfplanes({-1, -1}, {1, 1}));
    const auto iv = solve_linear_region(rt);
    CHECK(iv.empty);
    const auto ref = grid_reference(rt, {-1, -1}, {1, 1}, 0.01, 20.0);
    CHECK(ref.empty);
}

TEST_CASE("solve_linear_region agrees with a dense grid") {
    std::mt19937_64 rng(223);
    int nonempty = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto rt = linear_instance(rng);
        const auto iv = solve_linear_region(rt);
        const auto shape = polygon_vertices(rt.polygon);
        Point2 lo = shape.vertices[0], hi = shape.vertices[0];
        for (const auto& v : shape.vertices) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
        const auto ref = grid_reference(rt, lo, hi, 0.01, 50.0);
        CHECK(iv.empty == ref.empty);
        if (!iv.empty && !ref.empty) {
            ++nonempty;
            CHECK(iv.t_earliest == doctest::Approx(ref.t_earliest).epsilon(0.02));
            if (std::isfinite(iv.t_latest)) {
                CHECK(iv.t_latest == doctest::Approx(ref.t_latest).epsilon(0.02));
            } else {
                CHECK(ref.t_latest > 49.0); // grid capped; unbounded upstream
            }
        }
    }
    CHECK(nonempty > 5);
}

TEST_CASE("solve_region matches solve_linear_region on all-linear input") {
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rt = linear_instance(rng);
        const auto a = solve_linear_region(rt);
        const auto b = solve_region(rt);
        CHECK(a.empty == b.empty);
        if (!a.empty) {
            CHECK(a.t_earliest == doctest::Approx(b.t_earliest).epsilon(1e-9));
            if (std::isfinite(a.t_latest))
                CHECK(a.t_latest == doctest::Approx(b.t_latest).epsilon(1e-9));
            else
                CHECK(std::isinf(b.t_latest));
        }
    }
}

TEST_CASE("critical points of a triangle with linear waves") {
    RegionTiming rt;
    rt.own_front = lin(1, 0, 1.0, 0.0, WaveRole::Front);
    rt.own_back = lin(1, 0, 0.5, 1.0, WaveRole::Back);
    rt.intr_front = lin(0, 1, 1.0, -1.0, WaveRole::Front);
    rt.intr_back = lin(0, 1, 0.5, 0.5, WaveRole::Back);
    rt.polygon = make_region({HalfPlane{0, -1, 0}, HalfPlane{-1, 0, 0}, HalfPlane{1, 1, 2}});
    const auto cps = critical_points(rt);
    int vertices = 0, tangency = 0;
    for (const auto& cp : cps) {
        if (cp.kind == CriticalKind::PolygonVertex) ++vertices;
        if (cp.kind == CriticalKind::TangencyPoint) ++tangency;
    }
    CHECK(vertices == 3);
    CHECK(tangency == 0); // linear waves have no perpendicular feet
}

TEST_CASE("wave birth between symmetric circular fronts") {
    RegionTiming rt;
    rt.own_front = circ({0, 0}, 1.0, 0.0, WaveRole::Front);
    rt.own_back = circ({0, 0}, 0.5, 1.0, WaveRole::Back);
    rt.intr_front = circ({4, 0}, 1.0, 0.0, WaveRole::Front);
    rt.intr_back = circ({4, 0}, 0.5, 1.0, WaveRole::Back);
    rt.polygon = make_region(box_halfplanes({1, -1}, {3, 1}));
    const auto cps = critical_points(rt);
    bool midpoint = false;
    for (const auto& cp : cps)
        if (cp.kind == CriticalKind::WaveBirth && (cp.location - Point2{2, 0}).norm() < 1e-9)
            midpoint = true;
    CHECK(midpoint);
    const auto iv = solve_region(rt);
    REQUIRE_FALSE(iv.empty);
    CHECK(iv.t_earliest == doctest::Approx(2.0)); // fronts meet at |a-b|/(sa+sb)
}

TEST_CASE("solve_region vs rasterization oracle on mixed instances") {
    std::mt19937_64 rng(229);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int nonempty = 0;
    for (int trial = 0; trial < 12; ++trial) {
        RegionTiming rt;
        rt.own_front = circ({2.0 * u(rng) - 1.0, u(rng) - 0.5}, 1.0 + u(rng), -0.3 * u(rng),
                            WaveRole::Front);
        rt.own_back = circ({2.0 * u(rng) - 1.0, u(rng) - 0.5}, 0.4 + 0.3 * u(rng), 0.5 * u(rng),
                           WaveRole::Back);
        if (trial % 2) {
            rt.intr_front = lin(std::cos(3 + u(rng)), std::sin(3 + u(rng)), 1.0 + u(rng),
                                -3.0 * u(rng) - 1.0, WaveRole::Front);
            rt.intr_back = lin(std::cos(3 + u(rng)), std::sin(3 + u(rng)), 0.4 + 0.3 * u(rng),
                               -1.0 * u(rng) - 3.0, WaveRole::Back);
        } else {
            rt.intr_front = circ({3.0 + u(rng), 2.0 * u(rng)}, 1.0 + u(rng), -0.3 * u(rng),
                                 WaveRole::Front);
            rt.intr_back = circ({3.0 + u(rng), 2.0 * u(rng)}, 0.4 + 0.3 * u(rng), 0.5 * u(rng),
                                WaveRole::Back);
        }
        const Point2 lo{1.2 * u(rng), 1.2 * u(rng)};
        rt.polygon = make_region(box_halfplanes(lo, lo + Point2{1.0 + u(rng), 1.0 + u(rng)}));
        const auto iv = solve_region(rt);
        const auto ras = oracle::rasterize_conflict_wave(rt, 1e-3, 5e-4, 60.0);
        CHECK(iv.empty == !ras.any);
        if (!iv.empty && ras.any) {
            ++nonempty;
            CHECK(std::abs(iv.t_earliest - ras.first_touch) < 2e-3);
            if (std::isfinite(iv.t_latest))
                CHECK(std::abs(iv.t_latest - ras.last_touch) < 2e-3);
            else
                CHECK(ras.last_touch > 59.0);
        }
    }
    CHECK(nonempty >= 6);
}

TEST_CASE("encounter_interval symmetry under vehicle swap") {
    TurnSpec own;
    own.radius_min = 3.22;
    own.radius_max = 6.89;
    own.bearing_min = 2.41;
    own.bearing_max = 3.62;
    own.speed_min = 1.0;
    own.speed_max = 2.0;
    own.mode = TurnMode::Left;
    TurnSpec intr = own;
    intr.pose = Pose{{-30.0, -6.0}, 0.8};
    const auto a = encounter_interval(own, intr, TilingParams{});
    const auto b = encounter_interval(intr, own, TilingParams{});
    CHECK(a.interval.empty == b.interval.empty);
    if (!a.interval.empty) {
        CHECK(a.interval.t_earliest == b.interval.t_earliest);
        CHECK((std::isinf(a.interval.t_latest) && std::isinf(b.interval.t_latest)
                   ? true
                   : a.interval.t_latest == b.interval.t_latest));
    }
}

TEST_CASE("encounter_interval empty for separated specs") {
    TurnSpec own;
    own.radius_min = 3.22;
    own.radius_max = 6.89;
    own.bearing_min = 2.41;
    own.bearing_max = 3.62;
    own.speed_min = 1.0;
    own.speed_max = 2.0;
    own.mode = TurnMode::Left;
    TurnSpec intr = own;
    intr.pose = Pose{{1e6, 0.0}, kPi};
    const auto r = encounter_interval(own, intr, TilingParams{});
    CHECK(r.interval.empty);
    CHECK(r.table.empty());
}

TEST_CASE("monotonicity: enlarging uncertainty never shrinks the interval") {
    TurnSpec own;
    own.radius_min = 3.22;
    own.radius_max = 6.89;
    own.bearing_min = 2.41;
    own.bearing_max = 3.62;
    own.speed_min = 1.0;
    own.speed_max = 2.0;
    own.mode = TurnMode::Left;
    TurnSpec intr = own;
    intr.pose = Pose{{-20.0, 8.0}, -1.8};

    const auto base = encounter_interval(own, intr, TilingParams{});
    REQUIRE_FALSE(base.interval.empty);

    // Wider speed range.
    TurnSpec own_s = own;
    own_s.speed_min = 0.8;
    own_s.speed_max = 2.3;
    const auto wider_s = encounter_interval(own_s, intr, TilingParams{});
    REQUIRE_FALSE(wider_s.interval.empty);
    CHECK(wider_s.interval.t_earliest <= base.interval.t_earliest + 1e-9);
    CHECK(wider_s.interval.t_latest >= base.interval.t_latest - 1e-9);

    // Wider bearing range, aligned to the automatic band grid so shared
    // bands keep identical wave parameters.
    const auto bands = detail::arc_band_boundaries(own.bearing_min, own.bearing_max,
                                                   TilingParams{});
    REQUIRE(bands.size() >= 3);
    double lower_band = 0.0;
    for (double b : bands)
        if (b < own.bearing_min - 1e-9) lower_band = b;
    REQUIRE(lower_band > 0.0);
    TurnSpec own_b = own;
    own_b.bearing_min = lower_band;
    const auto wider_b = encounter_interval(own_b, intr, TilingParams{});
    REQUIRE_FALSE(wider_b.interval.empty);
    CHECK(wider_b.interval.t_earliest <= base.interval.t_earliest + 1e-9);
    CHECK(wider_b.interval.t_latest >= base.interval.t_latest - 1e-9);
}

TEST_CASE("loci: parallel same-speed linear pair is empty") {
    const auto e1 = lin(1.0, 0.0, 1.0, 0.0, WaveRole::Front);
    const auto e2 = lin(1.0, 0.0, 1.0, -2.0, WaveRole::Front);
    const auto lc = loci_curve(e1, e2);
    CHECK(lc.empty);
    // identical pair: the whole plane, not empty
    const auto same = loci_curve(e1, e1);
    CHECK_FALSE(same.empty);
}

TEST_CASE("encounter soundness across turn-mode combinations") {
    TurnSpec fig;
    fig.radius_min = 3.22;
    fig.radius_max = 6.89;
    fig.bearing_min = 2.41;
    fig.bearing_max = 3.62;
    fig.speed_min = 1;
    fig.speed_max = 2;
    fig.mode = TurnMode::Left;

    TurnSpec either;
    either.radius_min = 4.0;
    either.radius_max = -4.0;
    either.bearing_min = -1.2;
    either.bearing_max = 1.5;
    either.speed_min = 1.0;
    either.speed_max = 1.8;
    either.mode = TurnMode::Either;
    either.pose = Pose{{-24, 2}, 0.2};

    TurnSpec either2;
    either2.radius_min = 3.0;
    either2.radius_max = -3.0;
    either2.bearing_min = -2.0;
    either2.bearing_max = 2.0;
    either2.speed_min = 1.0;
    either2.speed_max = 2.0;
    either2.mode = TurnMode::Either;
    TurnSpec either3 = either2;
    either3.pose = Pose{{14, 3}, 2.9};

    TurnSpec rightm = fig;
    rightm.mode = TurnMode::Right;
    rightm.radius_min = -6.89;
    rightm.radius_max = -3.22;
    rightm.bearing_min = -3.62;
    rightm.bearing_max = -2.41;
    TurnSpec rightm2 = rightm;
    rightm2.pose = Pose{{-20, -8}, 1.8};

    const std::pair<TurnSpec, TurnSpec> cases[] = {
        {fig, either}, {either2, either3}, {rightm, rightm2}};
    for (const auto& [own, intr] : cases) {
        const auto res = encounter_interval(own, intr, TilingParams{});
        const auto ev = oracle::monte_carlo_collisions(own, intr, 1500, 0.05, 0.02, 40.0, 777);
        CHECK(!ev.empty());
        const double slack = 0.05 / std::min(own.speed_min, intr.speed_min) + 0.02;
        for (const auto& e : ev) {
            REQUIRE_FALSE(res.interval.empty);
            CHECK(e.t >= res.interval.t_earliest - slack);
            CHECK(e.t <= res.interval.t_latest + slack);
        }
    }
}
