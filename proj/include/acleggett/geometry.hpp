#pragma once

// AC phases from the planar geometry of the experiment.
//
// Sign convention: the line charge's field is radial and outward in the plane
// and every magnetic moment points along +z, so (E x mu) . dr = -k dtheta with
// theta the azimuth about the charge. A counterclockwise loop around a charge
// of strength k therefore accumulates -2 pi k.

#include <array>
#include <stdexcept>
#include <vector>

#include "acleggett/evolution.hpp"

namespace acleggett {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }

class ExclusionZoneViolation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class EndpointMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class WindingClassMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Polyline in the plane. A closed path has an implicit segment from the last
/// vertex back to the first (omitted when they already coincide).
struct Path {
    std::vector<Point2> vertices;
    bool closed = false;

    Point2 front() const { return vertices.front(); }
    Point2 back() const { return vertices.back(); }
    /// Same vertices, traversed backwards.
    Path reversed() const;
    /// Consecutive segments, including the closing one.
    std::vector<std::array<Point2, 2>> segments() const;
};

/// Open path visiting a's vertices then b's; b must start where a ends.
Path concatenate(const Path& a, const Path& b);

/// Regular polygon approximating a circle, counterclockwise, as a closed path.
Path circle_path(Point2 center, double radius, int sides);

/// Counterclockwise arc from angle `from` to angle `to` (radians, `to` may be
/// smaller for a clockwise arc) with `sides` segments.
Path arc_path(Point2 center, double radius, double from, double to, int sides);

/// Infinite line charge along z; k collects all physical constants so that a
/// closed loop picks up an AC phase of magnitude 2 pi k.
struct LineCharge {
    Point2 position;
    double k = 1.0;
};

struct GeometryOptions {
    double exclusion_radius = 1e-3;
    /// Relative tolerance handed to the adaptive quadrature per sub-segment.
    double quadrature_tolerance = 1e-10;
};

/// Distance from the charge to the closest point of the path.
double min_distance(const Path& path, Point2 charge);

/// Adaptive Gauss-Kronrod quadrature of -k dtheta along the path.
double ac_phase_numeric(const Path& path, const LineCharge& charge, const GeometryOptions& opts = {});

/// -k times the total signed azimuth swept, accumulated segment by segment.
double ac_phase_analytic(const Path& path, const LineCharge& charge,
                         const GeometryOptions& opts = {});

/// Signed azimuth swept around `center`, radians.
double swept_angle(const Path& path, Point2 center);

/// Signed winding number of a closed path; std::invalid_argument for open paths.
int winding(const Path& path, const LineCharge& charge);

/// Whole turns contained in an open or closed path's sweep, rounded toward zero.
int turns(const Path& path, Point2 center);

/// |numeric phase(p1) - numeric phase(p2)| for two paths with common endpoints
/// in the same winding class.
double deformation_check(const Path& p1, const Path& p2, const LineCharge& charge,
                         const GeometryOptions& opts = {});

struct Layout {
    LineCharge charge;
    Point2 o12;
    Point2 o34;
    Point2 a;
    Point2 b;
    /// l1: O12->A, l2: O12->B, l3: O34->B, l4: O34->A
    std::array<Path, 4> paths;
    GeometryOptions options;
};

/// Throws EndpointMismatch when a path does not join its declared points within 1e-9.
void validate_layout(const Layout& layout);

/// l1 . l4^-1 . l3 . l2^-1 : O12 -> A -> O34 -> B -> O12
Path combined_loop(const Layout& layout);

struct PathPhase {
    double numeric = 0.0;
    double analytic = 0.0;
    int turns = 0;
};

struct LayoutPhases {
    PhaseSet phases;
    std::array<PathPhase, 4> per_path;
    int loop_winding = 0;
};

LayoutPhases layout_phases(const Layout& layout);

}  // namespace acleggett
