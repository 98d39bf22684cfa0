#include "turnwave/report.hpp"

#include "turnwave/oracle.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace turnwave {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

TurnMode mode_from_string(const std::string& s) {
    if (s == "left") return TurnMode::Left;
    if (s == "right") return TurnMode::Right;
    if (s == "either") return TurnMode::Either;
    throw parse_error("vehicle mode must be one of left/right/either, got '" + s + "'");
}

std::string mode_to_string(TurnMode m) {
    switch (m) {
    case TurnMode::Left: return "left";
    case TurnMode::Right: return "right";
    case TurnMode::Either: return "either";
    }
    return "left";
}

double need_number(const json& block, const char* key, const char* who) {
    if (!block.contains(key) || !block[key].is_number())
        throw parse_error(std::string(who) + ": missing or non-numeric field '" + key + "'");
    return block[key].get<double>();
}

TurnSpec parse_vehicle(const json& block, const char* who) {
    TurnSpec s;
    s.pose.position.x = need_number(block, "x0", who);
    s.pose.position.y = need_number(block, "y0", who);
    s.pose.heading = need_number(block, "theta0", who);
    s.radius_min = need_number(block, "r_min", who);
    s.radius_max = need_number(block, "r_max", who);
    s.bearing_min = need_number(block, "theta_min", who);
    s.bearing_max = need_number(block, "theta_max", who);
    s.speed_min = need_number(block, "s_min", who);
    s.speed_max = need_number(block, "s_max", who);
    s.mode = mode_from_string(block.value("mode", "left"));
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string(who) + ": " + e.what());
    }
    return s;
}

ordered_json vehicle_json(const TurnSpec& s) {
    ordered_json v;
    v["x0"] = s.pose.position.x;
    v["y0"] = s.pose.position.y;
    v["theta0"] = s.pose.heading;
    v["r_min"] = s.radius_min;
    v["r_max"] = s.radius_max;
    v["theta_min"] = s.bearing_min;
    v["theta_max"] = s.bearing_max;
    v["s_min"] = s.speed_min;
    v["s_max"] = s.speed_max;
    v["mode"] = mode_to_string(s.mode);
    return v;
}

ordered_json interval_json(const CollisionInterval& iv) {
    ordered_json j;
    j["empty"] = iv.empty;
    if (!iv.empty) {
        j["t_earliest"] = iv.t_earliest;
        if (std::isinf(iv.t_latest))
            j["t_latest"] = "inf";
        else
            j["t_latest"] = iv.t_latest;
    }
    return j;
}

ordered_json polygon_json(const ConvexRegion& region) {
    ordered_json j;
    ordered_json verts = ordered_json::array();
    ordered_json rays = ordered_json::array();
    try {
        const RegionShape shape = polygon_vertices(region);
        for (const auto& v : shape.vertices) verts.push_back({v.x, v.y});
        for (const auto& r : shape.rays)
            rays.push_back({{"x", r.origin.x}, {"y", r.origin.y}, {"angle", r.angle}});
    } catch (const std::domain_error&) {
    }
    j["vertices"] = std::move(verts);
    j["rays"] = std::move(rays);
    return j;
}

ordered_json wave_json(const WaveEdge& e) {
    ordered_json j;
    j["kind"] = e.kind == WaveKind::Linear ? "linear" : "circular";
    if (e.kind == WaveKind::Linear) {
        j["n1"] = e.n1;
        j["n2"] = e.n2;
    } else {
        j["cx"] = e.center.x;
        j["cy"] = e.center.y;
    }
    j["speed"] = e.speed;
    j["offset"] = e.offset;
    return j;
}

} // namespace

EncounterFile parse_encounter(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!root.contains("own") || !root.contains("intruder"))
        throw parse_error("encounter file needs 'own' and 'intruder' vehicle blocks");
    EncounterFile enc;
    enc.own = parse_vehicle(root["own"], "own");
    enc.intr = parse_vehicle(root["intruder"], "intruder");
    if (root.contains("tiling")) {
        const auto& t = root["tiling"];
        enc.tiling.n_theta = t.value("n_theta", 0);
        enc.tiling.n_r = t.value("n_r", 1);
        if (enc.tiling.n_r < 1 || enc.tiling.n_theta < 0)
            throw parse_error("tiling: n_r must be >= 1 and n_theta >= 0");
    }
    if (root.contains("oracle")) {
        const auto& o = root["oracle"];
        enc.verify_samples = o.value("n", enc.verify_samples);
        enc.verify_eps = o.value("eps", enc.verify_eps);
        enc.verify_dt = o.value("dt", enc.verify_dt);
        enc.verify_horizon = o.value("horizon", enc.verify_horizon);
        enc.verify_seed = o.value("seed", enc.verify_seed);
    }
    return enc;
}

EncounterFile load_encounter(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open encounter file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_encounter(ss.str());
}

std::string serialize_encounter(const EncounterFile& enc) {
    ordered_json root;
    root["units"] = {{"angles", "radians"}, {"lengths", "unitless"}, {"speeds", "length/time"}};
    root["own"] = vehicle_json(enc.own);
    root["intruder"] = vehicle_json(enc.intr);
    root["tiling"] = {{"n_theta", enc.tiling.n_theta}, {"n_r", enc.tiling.n_r}};
    root["oracle"] = {{"n", enc.verify_samples},
                      {"eps", enc.verify_eps},
                      {"dt", enc.verify_dt},
                      {"horizon", enc.verify_horizon},
                      {"seed", enc.verify_seed}};
    return root.dump(2) + "\n";
}

EnvelopeGrid envelope_grid(const TurnSpec& spec, int n) {
    spec.validate();
    EnvelopeGrid grid;
    grid.n = n;
    // Bounding box from the limiting geometry: turn circles plus tangent runs.
    const double rmax = std::max(std::abs(spec.radius_min), std::abs(spec.radius_max));
    const double reach = 3.0 * rmax;
    Point2 lo{-2 * rmax - reach, -2 * rmax - reach};
    Point2 hi{2 * rmax + reach, 2 * rmax + reach};
    grid.lo = to_global(lo, Pose{spec.pose.position, 0}) ;
    grid.hi = to_global(hi, Pose{spec.pose.position, 0});
    grid.t_earliest.assign(size_t(n + 1) * (n + 1), kNan);
    grid.t_latest.assign(size_t(n + 1) * (n + 1), kNan);
    for (int iy = 0; iy <= n; ++iy) {
        for (int ix = 0; ix <= n; ++ix) {
            const Point2 p{grid.lo.x + (grid.hi.x - grid.lo.x) * ix / n,
                           grid.lo.y + (grid.hi.y - grid.lo.y) * iy / n};
            try {
                const auto t = point_timing(spec, p);
                grid.t_earliest[size_t(iy) * (n + 1) + ix] = t.t_earliest;
                grid.t_latest[size_t(iy) * (n + 1) + ix] = t.t_latest;
            } catch (const infeasible_error&) {
            }
        }
    }
    // Boundary polylines: the limiting arcs and tangent rays.
    auto emit_side = [&](double ra, double rb, double tha, double thb, bool mirror) {
        auto arc_line = [&](double r, double th_hi) {
            std::vector<Point2> line;
            for (int k = 0; k <= 64; ++k) {
                const double a = th_hi * k / 64;
                Point2 q{r * std::sin(a), r * (1 - std::cos(a))};
                if (mirror) q.y = -q.y;
                line.push_back(to_global(q, spec.pose));
            }
            return line;
        };
        auto ray_line = [&](double r, double th) {
            std::vector<Point2> line;
            const double span = reach * 2;
            for (int k = 0; k <= 16; ++k) {
                Point2 q = Point2{r * std::sin(th), r * (1 - std::cos(th))} +
                           (span * k / 16) * dir_vec(th);
                if (mirror) q.y = -q.y;
                line.push_back(to_global(q, spec.pose));
            }
            return line;
        };
        grid.boundary.push_back(arc_line(ra, tha));
        grid.boundary.push_back(arc_line(rb, thb));
        grid.boundary.push_back(ray_line(ra, tha));
        grid.boundary.push_back(ray_line(rb, thb));
    };
    switch (spec.mode) {
    case TurnMode::Left:
        emit_side(spec.radius_min, spec.radius_max, spec.bearing_min, spec.bearing_max, false);
        break;
    case TurnMode::Right:
        emit_side(-spec.radius_max, -spec.radius_min, -spec.bearing_max, -spec.bearing_min, true);
        break;
    case TurnMode::Either:
        if (spec.bearing_max > 0)
            emit_side(spec.radius_min, spec.radius_min, spec.bearing_max, spec.bearing_max, false);
        if (spec.bearing_min < 0)
            emit_side(-spec.radius_max, -spec.radius_max, -spec.bearing_min, -spec.bearing_min,
                      true);
        break;
    }
    return grid;
}

std::string report_json(const EncounterResult& result, const EncounterFile& enc) {
    ordered_json root;
    root["units"] = {{"angles", "radians"}, {"lengths", "unitless"}, {"speeds", "length/time"}};
    root["collision_free"] = !result.collision_possible();
    root["interval"] = interval_json(result.interval);
    ordered_json regions = ordered_json::array();
    int id = 0;
    for (const auto& row : result.table) {
        ordered_json r;
        r["id"] = id++;
        r["own_label"] = std::string(1, char(row.region.own_label));
        r["intr_label"] = std::string(1, char(row.region.intr_label));
        r["overlap_patch"] = row.region.overlap_patch;
        r["interval"] = interval_json(row.interval);
        r["polygon"] = polygon_json(row.region.polygon);
        r["waves"] = {{"own_front", wave_json(row.region.own_front)},
                      {"own_back", wave_json(row.region.own_back)},
                      {"intr_front", wave_json(row.region.intr_front)},
                      {"intr_back", wave_json(row.region.intr_back)}};
        regions.push_back(std::move(r));
    }
    root["regions"] = std::move(regions);
    root["input"] = {{"own", vehicle_json(enc.own)}, {"intruder", vehicle_json(enc.intr)}};
    return root.dump(2) + "\n";
}

std::string envelope_json(const EnvelopeGrid& grid, const TurnSpec& spec) {
    ordered_json root;
    root["units"] = {{"angles", "radians"}, {"lengths", "unitless"}, {"speeds", "length/time"}};
    root["vehicle"] = vehicle_json(spec);
    root["bbox"] = {{"lo", {grid.lo.x, grid.lo.y}}, {"hi", {grid.hi.x, grid.hi.y}}};
    root["n"] = grid.n;
    auto field = [&](const std::vector<double>& f) {
        ordered_json rows = ordered_json::array();
        for (int iy = 0; iy <= grid.n; ++iy) {
            ordered_json row = ordered_json::array();
            for (int ix = 0; ix <= grid.n; ++ix) {
                const double v = f[size_t(iy) * (grid.n + 1) + ix];
                if (std::isnan(v))
                    row.push_back(nullptr);
                else
                    row.push_back(v);
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    root["t_earliest"] = field(grid.t_earliest);
    root["t_latest"] = field(grid.t_latest);
    ordered_json boundary = ordered_json::array();
    for (const auto& line : grid.boundary) {
        ordered_json pl = ordered_json::array();
        for (const auto& p : line) pl.push_back({p.x, p.y});
        boundary.push_back(std::move(pl));
    }
    root["boundary"] = std::move(boundary);
    return root.dump(2) + "\n";
}

namespace {

struct SvgCanvas {
    std::ostringstream body;
    double lox, loy, hix, hiy;

    SvgCanvas(double lx, double ly, double hx, double hy) : lox(lx), loy(ly), hix(hx), hiy(hy) {}

    double X(double x) const { return (x - lox) / (hix - lox) * 800.0; }
    double Y(double y) const { return 800.0 - (y - loy) / (hiy - loy) * 800.0; }

    void polyline(const std::vector<Point2>& pts, const char* color, bool close) {
        if (pts.size() < 2) return;
        body << "<path d=\"M";
        for (size_t i = 0; i < pts.size(); ++i)
            body << (i ? " L" : "") << X(pts[i].x) << " " << Y(pts[i].y);
        if (close) body << " Z";
        body << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
    }

    std::string finish() {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
               "viewBox=\"0 0 800 800\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

} // namespace

std::string render_svg(const EncounterResult& result, const EncounterFile& enc) {
    double lox = -10, loy = -10, hix = 10, hiy = 10;
    bool any = false;
    for (const auto& row : result.table) {
        try {
            const auto shape = polygon_vertices(row.region.polygon);
            for (const auto& v : shape.vertices) {
                if (!any) {
                    lox = hix = v.x;
                    loy = hiy = v.y;
                    any = true;
                } else {
                    lox = std::min(lox, v.x);
                    hix = std::max(hix, v.x);
                    loy = std::min(loy, v.y);
                    hiy = std::max(hiy, v.y);
                }
            }
        } catch (const std::domain_error&) {
        }
    }
    const double pad = 0.1 * std::max({1.0, hix - lox, hiy - loy});
    SvgCanvas canvas(lox - pad, loy - pad, hix + pad, hiy + pad);
    for (const auto& side : {&enc.own, &enc.intr}) {
        const auto grid = envelope_grid(*side, 2);
        for (const auto& line : grid.boundary) canvas.polyline(line, "#888888", false);
    }
    for (const auto& row : result.table) {
        try {
            const auto shape = polygon_vertices(row.region.polygon);
            canvas.polyline(shape.vertices, row.interval.empty ? "#77aaff" : "#dd3333",
                            shape.rays.empty());
        } catch (const std::domain_error&) {
        }
    }
    return canvas.finish();
}

std::string render_envelope_svg(const EnvelopeGrid& grid) {
    SvgCanvas canvas(grid.lo.x, grid.lo.y, grid.hi.x, grid.hi.y);
    for (const auto& line : grid.boundary) canvas.polyline(line, "#333333", false);
    // Coarse contour dots of the earliest-arrival field.
    for (int iy = 0; iy <= grid.n; iy += 4)
        for (int ix = 0; ix <= grid.n; ix += 4) {
            const double v = grid.t_earliest[size_t(iy) * (grid.n + 1) + ix];
            if (std::isnan(v)) continue;
            const double x = grid.lo.x + (grid.hi.x - grid.lo.x) * ix / grid.n;
            const double y = grid.lo.y + (grid.hi.y - grid.lo.y) * iy / grid.n;
            canvas.body << "<circle cx=\"" << canvas.X(x) << "\" cy=\"" << canvas.Y(y)
                        << "\" r=\"1.2\" fill=\"hsl(" << std::fmod(v * 24.0, 330.0)
                        << ",70%,50%)\"/>\n";
        }
    return canvas.finish();
}

VerifyOutcome verify_encounter(const EncounterFile& enc, int n, std::uint64_t seed, double eps,
                               double dt, double shrink_latest) {
    VerifyOutcome out;
    out.samples = n;
    const auto result = encounter_interval(enc.own, enc.intr, enc.tiling);
    CollisionInterval iv = result.interval;
    if (!iv.empty && shrink_latest > 0.0 && std::isfinite(iv.t_latest))
        iv.t_latest = std::max(iv.t_earliest, iv.t_latest - shrink_latest);

    const auto events = oracle::monte_carlo_collisions(enc.own, enc.intr, n, eps, dt,
                                                       enc.verify_horizon, seed);
    out.collisions = int(events.size());
    const double slack = eps / std::min(enc.own.speed_min, enc.intr.speed_min);
    for (const auto& e : events) {
        if (iv.empty || e.t < iv.t_earliest - slack || e.t > iv.t_latest + slack) ++out.escapes;
    }

    // Rasterization cross-check on a few bounded regions.
    int checked = 0;
    for (const auto& row : result.table) {
        if (checked >= 5) break;
        if (!row.region.polygon.bounded) continue;
        ++checked;
        const auto ras = oracle::rasterize_conflict_wave(row.region, 5e-3, 0.05, enc.verify_horizon);
        if (ras.any != !row.interval.empty) {
            if (ras.any) ++out.raster_mismatch; // oracle found overlap we missed
            continue;
        }
        if (!ras.any) continue;
        if (ras.first_touch < row.interval.t_earliest - 0.1 ||
            (std::isfinite(row.interval.t_latest) && ras.last_touch > row.interval.t_latest + 0.1))
            ++out.raster_mismatch;
    }

    std::ostringstream os;
    os << "samples=" << out.samples << " collisions=" << out.collisions
       << " escapes=" << out.escapes << " raster_mismatch=" << out.raster_mismatch;
    out.detail = os.str();
    out.pass = out.escapes == 0 && out.raster_mismatch == 0;
    return out;
}

} // namespace turnwave
