#include "turnwave/oracle.hpp"
#include "turnwave/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitVerify = 4;

int write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitInvariant;
    }
    out << text;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"turnwave: collision timing for non-deterministic turn-to-bearing maneuvers"};
    app.require_subcommand(1);

    std::string path, out_path, svg_path, vehicle = "own";
    int tiling_n = -1, grid_n = 100, verify_n = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double eps = -1, dt = -1;
    double corrupt = 0.0;

    auto* analyze = app.add_subcommand("analyze", "analyze an encounter file");
    analyze->add_option("file", path)->required();
    analyze->add_option("--tiling", tiling_n, "angular subdivisions of the bearing span");
    analyze->add_option("--out", out_path, "write the JSON report here instead of stdout");
    analyze->add_option("--svg", svg_path, "also write an SVG rendering");

    auto* envelope = app.add_subcommand("envelope", "sample one vehicle's arrival-time fields");
    envelope->add_option("file", path)->required();
    envelope->add_option("--vehicle", vehicle)->check(CLI::IsMember({"own", "intruder"}));
    envelope->add_option("--grid", grid_n, "grid resolution (n+1 nodes per side)");
    envelope->add_option("--out", out_path);
    envelope->add_option("--svg", svg_path);

    std::string events_path;
    auto* verify = app.add_subcommand("verify", "cross-check the analysis against oracles");
    verify->add_option("file", path)->required();
    verify->add_option("--n", verify_n, "Monte-Carlo sample count");
    verify->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    verify->add_option("--eps", eps, "collision distance threshold");
    verify->add_option("--dt", dt, "simulation time step");
    verify->add_option("--events", events_path, "write observed collision events as a table");
    verify->add_option("--corrupt-interval", corrupt)->group(""); // test hook, hidden

    CLI11_PARSE(app, argc, argv);

    turnwave::EncounterFile enc;
    try {
        enc = turnwave::load_encounter(path);
        if (tiling_n >= 0) enc.tiling.n_theta = tiling_n;
    } catch (const turnwave::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (analyze->parsed()) {
            const auto result = turnwave::encounter_interval(enc.own, enc.intr, enc.tiling);
            const auto text = turnwave::report_json(result, enc);
            if (!svg_path.empty()) {
                const int rc = write_file(svg_path, turnwave::render_svg(result, enc));
                if (rc != kExitOk) return rc;
            }
            if (!out_path.empty()) return write_file(out_path, text);
            std::cout << text;
            return kExitOk;
        }
        if (envelope->parsed()) {
            const auto& spec = vehicle == "own" ? enc.own : enc.intr;
            const auto grid = turnwave::envelope_grid(spec, grid_n);
            const auto text = turnwave::envelope_json(grid, spec);
            if (!svg_path.empty()) {
                const int rc = write_file(svg_path, turnwave::render_envelope_svg(grid));
                if (rc != kExitOk) return rc;
            }
            if (!out_path.empty()) return write_file(out_path, text);
            std::cout << text;
            return kExitOk;
        }
        if (verify->parsed()) {
            const int n = verify_n > 0 ? verify_n : enc.verify_samples;
            const auto use_seed = seed_set ? seed : enc.verify_seed;
            const auto use_eps = eps > 0 ? eps : enc.verify_eps;
            const auto use_dt = dt > 0 ? dt : enc.verify_dt;
            const auto outcome =
                turnwave::verify_encounter(enc, n, use_seed, use_eps, use_dt, corrupt);
            if (!events_path.empty()) {
                const auto events = turnwave::oracle::monte_carlo_collisions(
                    enc.own, enc.intr, n, use_eps, use_dt, enc.verify_horizon, use_seed);
                const int rc = write_file(events_path, turnwave::oracle::events_as_table(events));
                if (rc != kExitOk) return rc;
            }
            std::cout << (outcome.pass ? "PASS " : "FAIL ") << outcome.detail << "\n";
            return outcome.pass ? kExitOk : kExitVerify;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
