#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace turnwave {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTau = 2.0 * kPi;

/// Planar point / vector with the handful of operations the library needs.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Point2 o) const { return x * o.x + y * o.y; }
    double cross(Point2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Point2 operator*(double s, Point2 p) { return p * s; }

/// Unit vector at angle `a`.
inline Point2 dir_vec(double a) { return {std::cos(a), std::sin(a)}; }

/// Rotate `p` by angle `a` about the origin.
inline Point2 rotated(Point2 p, double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Position plus heading; heading normalized to (-pi, pi].
struct Pose {
    Point2 position{};
    double heading = 0.0;
};

/// Thrown when a kinematic query has no solution under its feasibility
/// conditions; `clause` names the violated condition.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& clause)
        : std::runtime_error("infeasible: " + clause), clause_(clause) {}
    const std::string& clause() const { return clause_; }

  private:
    std::string clause_;
};

/// Principal interval for two-argument arctangents.
enum class AngleBranch {
    SignedPi,   // (-pi, pi]
    ZeroTau,    // [0, 2pi)
    HalfShifted // [-pi/2, 3pi/2)
};

/// atan2 with a chosen branch cut. Values within 1e-12 of the cut are snapped
/// to its closed side. Throws std::domain_error at the origin.
double atan2_branch(double y, double x, AngleBranch branch);

/// Normalize an angle into (-pi, pi].
double normalize_angle(double a);

Point2 to_local(Point2 p, const Pose& frame);
Point2 to_global(Point2 p, const Pose& frame);
Pose compose(const Pose& outer, const Pose& inner);

/// Chord solution for reaching `p` from the origin (heading 0) on a single
/// circular arc: `bearing` is the tangent angle at arrival, `radius` the arc
/// radius. `straight` marks the y = 0 degenerate case (no finite radius).
struct ChordParams {
    double bearing = 0.0;
    double radius = 0.0;
    bool straight = false;
};

ChordParams chord_params(Point2 p);

/// Closed half-plane a1*x + a2*y <= b.
struct HalfPlane {
    double a1 = 0.0;
    double a2 = 0.0;
    double b = 0.0;

    double eval(Point2 p) const { return a1 * p.x + a2 * p.y - b; }
};

/// Half-plane through `point` whose boundary runs along `direction`, keeping
/// the left side (counterclockwise side of the direction).
HalfPlane halfplane_left_of(Point2 point, Point2 direction);
/// Same boundary, keeping the right side.
HalfPlane halfplane_right_of(Point2 point, Point2 direction);

enum class RegionLabel : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Boundary ray of an unbounded region.
struct Ray {
    Point2 origin{};
    double angle = 0.0;
};

/// Explicit boundary of a convex region: vertices in counterclockwise order,
/// plus boundary rays when the region is unbounded.
struct RegionShape {
    std::vector<Point2> vertices;
    std::vector<Ray> rays;
    bool bounded() const { return rays.empty(); }
};

/// Intersection of finitely many half-planes, possibly unbounded.
struct ConvexRegion {
    std::vector<HalfPlane> halfplanes;
    std::optional<RegionLabel> label;
    bool bounded = false;

    bool contains(Point2 p, double tol = 1e-9) const;
};

ConvexRegion make_region(std::vector<HalfPlane> hs, std::optional<RegionLabel> label = {});

/// Nonempty-region test (interior allowed to be thin up to tolerance).
bool region_feasible(const std::vector<HalfPlane>& hs, double tol = 1e-9);

/// Intersection with redundant constraints pruned; nullopt when empty.
std::optional<ConvexRegion> polygon_intersect(const ConvexRegion& a, const ConvexRegion& b);

/// Vertex/ray enumeration. Throws std::domain_error on an empty region.
RegionShape polygon_vertices(const ConvexRegion& r);

/// Remove duplicate and redundant half-planes (region unchanged).
std::vector<HalfPlane> prune_halfplanes(const std::vector<HalfPlane>& hs);

/// Map a region through a rigid frame transform (local -> world).
ConvexRegion region_to_world(const ConvexRegion& r, const Pose& frame);
/// Mirror a region across the x-axis.
ConvexRegion region_mirror_y(const ConvexRegion& r);

/// Axis-aligned box as four half-planes.
std::vector<HalfPlane> box_halfplanes(Point2 lo, Point2 hi);

} // namespace turnwave
