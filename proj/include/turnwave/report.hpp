#pragma once

#include "turnwave/solver.hpp"

#include <iosfwd>
#include <string>

namespace turnwave {

/// Parsed encounter description: two vehicles plus optional tiling and
/// verification settings.
struct EncounterFile {
    TurnSpec own;
    TurnSpec intr;
    TilingParams tiling;
    int verify_samples = 10000;
    double verify_eps = 0.05;
    double verify_dt = 0.01;
    double verify_horizon = 40.0;
    std::uint64_t verify_seed = 20220217;
};

/// Thrown on malformed encounter files; the message names the bad field.
class parse_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

EncounterFile parse_encounter(const std::string& json_text);
EncounterFile load_encounter(const std::string& path);
std::string serialize_encounter(const EncounterFile& enc);

/// Sampled earliest/latest arrival-time fields for one vehicle.
struct EnvelopeGrid {
    Point2 lo{}, hi{};
    int n = 0;                        // grid is (n+1) x (n+1)
    std::vector<double> t_earliest;   // row-major, NaN outside the envelope
    std::vector<double> t_latest;
    std::vector<std::vector<Point2>> boundary; // polylines
};

EnvelopeGrid envelope_grid(const TurnSpec& spec, int n);

/// JSON report of a full encounter analysis (deterministic layout).
std::string report_json(const EncounterResult& result, const EncounterFile& enc);
/// JSON payload for the envelope subcommand.
std::string envelope_json(const EnvelopeGrid& grid, const TurnSpec& spec);

/// Simple vector rendering of the conflict polygons and envelope boundaries.
std::string render_svg(const EncounterResult& result, const EncounterFile& enc);
std::string render_envelope_svg(const EnvelopeGrid& grid);

struct VerifyOutcome {
    bool pass = false;
    int samples = 0;
    int collisions = 0;
    int escapes = 0;       // Monte-Carlo collision times outside the interval
    int raster_mismatch = 0;
    std::string detail;
};

/// Monte-Carlo and rasterization cross-checks of the analysis result.
/// `shrink_latest` is a fault-injection hook used by tests: it shrinks the
/// reported interval end before checking, which must make verification fail.
VerifyOutcome verify_encounter(const EncounterFile& enc, int n, std::uint64_t seed, double eps,
                               double dt, double shrink_latest = 0.0);

} // namespace turnwave
