#include "turnwave/waves.hpp"

#include <cmath>
#include <stdexcept>

namespace turnwave {

WaveEdge WaveEdge::transformed(const Pose& frame) const {
    WaveEdge w = *this;
    if (kind == WaveKind::Linear) {
        const Point2 n = rotated({n1, n2}, frame.heading);
        w.n1 = n.x;
        w.n2 = n.y;
        w.offset = offset + n.dot(frame.position);
    } else {
        w.center = to_global(center, frame);
    }
    return w;
}

WaveEdge WaveEdge::mirrored_y() const {
    WaveEdge w = *this;
    if (kind == WaveKind::Linear)
        w.n2 = -n2;
    else
        w.center.y = -center.y;
    return w;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

WaveEdge linear_wave(double theta, double speed, WaveRole role) {
    const double s2 = std::sin(theta / 2.0);
    if (std::abs(s2) < 1e-9) throw std::domain_error("linear_wave: cot singularity at theta = 0 or 2pi");
    if (!(speed > 0.0)) throw std::domain_error("linear_wave: speed must be positive");
    const double cot = std::cos(theta / 2.0) / s2;
    const double c = std::cos(theta);
    WaveEdge w;
    w.kind = WaveKind::Linear;
    w.role = role;
    w.n1 = cot * theta - 1.0;
    w.n2 = cot - c / (1.0 - c) * theta;
    w.speed = speed;
    w.offset = 0.0;
    return w;
}

std::pair<WaveEdge, WaveEdge> circular_tile_waves(double th1, double th2, double speed_min,
                                                  double speed_max) {
    if (!(0.0 <= th1 && th1 <= th2 && th2 < kTau))
        throw std::domain_error("circular_tile_waves: need 0 <= th1 <= th2 < 2pi");
    WaveEdge front;
    front.kind = WaveKind::Circular;
    front.role = WaveRole::Front;
    front.center = {0.0, 0.0};
    front.speed = speed_max * sinc(th1 / 2.0);
    front.offset = 0.0;
    WaveEdge back = front;
    back.role = WaveRole::Back;
    back.speed = speed_min * sinc(th2 / 2.0);
    return {front, back};
}

std::pair<WaveEdge, WaveEdge> involute_waves(double radius, double phi2, double speed_min,
                                             double speed_max, const Pose& anchor) {
    if (!(0.0 < phi2 && phi2 < kTau))
        throw std::domain_error("involute_waves: need 0 < phi2 < 2pi");
    if (!(radius > 0.0)) throw std::domain_error("involute_waves: radius must be positive");
    WaveEdge front;
    front.kind = WaveKind::Circular;
    front.role = WaveRole::Front;
    front.center = {0.0, 0.0};
    front.speed = speed_max;
    front.offset = 0.0;

    WaveEdge back;
    back.kind = WaveKind::Circular;
    back.role = WaveRole::Back;
    back.center = {radius * std::sin(phi2), radius * (1.0 - std::cos(phi2))};
    back.speed = speed_min;
    back.offset = -radius * phi2;

    return {front.transformed(anchor), back.transformed(anchor)};
}

EdgePair edges_for_label(RegionLabel label, const TurnSpec& spec, double band_lo, double band_hi) {
    spec.validate();
    const bool right = spec.mode == TurnMode::Right;
    const double ra = right ? -spec.radius_max : spec.radius_min;
    const double rb = right ? -spec.radius_min : spec.radius_max;
    const double tha = right ? -spec.bearing_max : spec.bearing_min;
    const double thb = right ? -spec.bearing_min : spec.bearing_max;

    auto mirror_for_mode = [&](EdgePair pair) {
        if (right) {
            pair.front = pair.front.mirrored_y();
            pair.back = pair.back.mirrored_y();
        }
        pair.front = pair.front.transformed(spec.pose);
        pair.back = pair.back.transformed(spec.pose);
        return pair;
    };

    const double lo = std::max(band_lo, 1e-6);
    const double hi = std::min(std::max(band_hi, lo + 1e-6), kTau - 1e-6);
    const Pose start{{0.0, 0.0}, 0.0};
    auto arc_front = [&] {
        return circular_tile_waves(lo, hi, spec.speed_min, spec.speed_max).first;
    };
    auto arc_back = [&] {
        return circular_tile_waves(lo, hi, spec.speed_min, spec.speed_max).second;
    };
    auto turn_front = [&](double r) {
        return involute_waves(r, std::max(tha, 1e-6), spec.speed_min, spec.speed_max, start).first;
    };
    auto turn_back = [&](double r) {
        return involute_waves(r, hi, spec.speed_min, spec.speed_max, start).second;
    };
    auto lin_front = [&] { return linear_wave(tha, spec.speed_max, WaveRole::Front); };
    auto lin_back = [&] { return linear_wave(thb, spec.speed_min, WaveRole::Back); };

    EdgePair pair;
    switch (label) {
    case RegionLabel::A: pair = {arc_front(), arc_back()}; break;
    case RegionLabel::B: pair = {lin_front(), arc_back()}; break;
    case RegionLabel::C: pair = {turn_front(ra), arc_back()}; break;
    case RegionLabel::D: pair = {lin_front(), lin_back()}; break;
    case RegionLabel::E: pair = {lin_front(), turn_back(rb)}; break;
    case RegionLabel::F: pair = {turn_front(ra), turn_back(rb)}; break;
    case RegionLabel::G: pair = {turn_front(ra), lin_back()}; break;
    }
    pair.front.role = WaveRole::Front;
    pair.back.role = WaveRole::Back;
    return mirror_for_mode(pair);
}

EdgeQuad edges_for_region(RegionLabel own_label, RegionLabel intr_label, const TurnSpec& own,
                          const TurnSpec& intr, double band_lo, double band_hi) {
    const EdgePair o = edges_for_label(own_label, own, band_lo, band_hi);
    const EdgePair i = edges_for_label(intr_label, intr, band_lo, band_hi);
    return EdgeQuad{o.front, o.back, i.front, i.back};
}

} // namespace turnwave
