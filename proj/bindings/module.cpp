#include "turnwave/oracle.hpp"
#include "turnwave/report.hpp"
#include "turnwave/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

namespace py = pybind11;
using namespace turnwave;

namespace {

TurnSpec make_spec(double x0, double y0, double theta0, double r_min, double r_max,
                   double theta_min, double theta_max, double s_min, double s_max,
                   const std::string& mode) {
    TurnSpec s;
    s.pose = Pose{{x0, y0}, theta0};
    s.radius_min = r_min;
    s.radius_max = r_max;
    s.bearing_min = theta_min;
    s.bearing_max = theta_max;
    s.speed_min = s_min;
    s.speed_max = s_max;
    if (mode == "left")
        s.mode = TurnMode::Left;
    else if (mode == "right")
        s.mode = TurnMode::Right;
    else if (mode == "either")
        s.mode = TurnMode::Either;
    else
        throw py::value_error("mode must be 'left', 'right' or 'either'");
    s.validate();
    return s;
}

py::dict interval_dict(const CollisionInterval& iv) {
    py::dict d;
    d["empty"] = iv.empty;
    if (!iv.empty) {
        d["t_earliest"] = iv.t_earliest;
        d["t_latest"] = iv.t_latest; // +inf maps to float('inf')
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_turnwave, m) {
    m.doc() = "collision timing for non-deterministic turn-to-bearing maneuvers";

    py::class_<TurnSpec>(m, "TurnSpec")
        .def(py::init(&make_spec), py::arg("x0"), py::arg("y0"), py::arg("theta0"),
             py::arg("r_min"), py::arg("r_max"), py::arg("theta_min"), py::arg("theta_max"),
             py::arg("s_min"), py::arg("s_max"), py::arg("mode") = "left")
        .def_readonly("radius_min", &TurnSpec::radius_min)
        .def_readonly("radius_max", &TurnSpec::radius_max)
        .def_readonly("bearing_min", &TurnSpec::bearing_min)
        .def_readonly("bearing_max", &TurnSpec::bearing_max)
        .def_readonly("speed_min", &TurnSpec::speed_min)
        .def_readonly("speed_max", &TurnSpec::speed_max);

    m.def(
        "in_envelope",
        [](const TurnSpec& s, double x, double y) { return in_envelope(s, {x, y}); },
        py::arg("spec"), py::arg("x"), py::arg("y"));

    m.def(
        "d_min", [](const TurnSpec& s, double x, double y) { return d_min(s, {x, y}); },
        py::arg("spec"), py::arg("x"), py::arg("y"));

    m.def(
        "d_max", [](const TurnSpec& s, double x, double y) { return d_max(s, {x, y}); },
        py::arg("spec"), py::arg("x"), py::arg("y"));

    m.def(
        "point_timing",
        [](const TurnSpec& s, double x, double y) {
            const auto t = point_timing(s, {x, y});
            return py::make_tuple(t.t_earliest, t.t_latest);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"));

    m.def(
        "classify_region",
        [](const TurnSpec& s, double x, double y) {
            return std::string(1, char(classify_region(s, {x, y})));
        },
        py::arg("spec"), py::arg("x"), py::arg("y"));

    m.def(
        "encounter_interval",
        [](const TurnSpec& own, const TurnSpec& intr, int n_theta, int n_r) {
            const auto r = encounter_interval(own, intr, TilingParams{n_theta, n_r});
            py::dict d;
            d["collision_possible"] = r.collision_possible();
            d["interval"] = interval_dict(r.interval);
            d["regions"] = int(r.table.size());
            return d;
        },
        py::arg("own"), py::arg("intruder"), py::arg("n_theta") = 0, py::arg("n_r") = 1);

    m.def(
        "monte_carlo_check",
        [](const TurnSpec& own, const TurnSpec& intr, int n, double eps, double dt, double horizon,
           std::uint64_t seed) {
            const auto events = oracle::monte_carlo_collisions(own, intr, n, eps, dt, horizon, seed);
            std::vector<py::tuple> out;
            out.reserve(events.size());
            for (const auto& e : events) out.push_back(py::make_tuple(e.t, e.where.x, e.where.y));
            return out;
        },
        py::arg("own"), py::arg("intruder"), py::arg("n") = 1000, py::arg("eps") = 0.05,
        py::arg("dt") = 0.02, py::arg("horizon") = 40.0, py::arg("seed") = 20220217);

    m.def(
        "analyze_file",
        [](const std::string& path) {
            const auto enc = load_encounter(path);
            const auto result = encounter_interval(enc.own, enc.intr, enc.tiling);
            return report_json(result, enc);
        },
        py::arg("path"), "Run the full analysis on an encounter file, returns the JSON report.");

    py::register_exception<infeasible_error>(m, "InfeasibleError");
    py::register_exception<parse_error>(m, "ParseError");
}
