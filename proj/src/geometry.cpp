#include "acleggett/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace acleggett {

using std::numbers::pi;

namespace {

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot2(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double length(Point2 a) { return std::hypot(a.x, a.y); }

double segment_distance(Point2 p0, Point2 p1, Point2 c) {
    const Point2 d = p1 - p0;
    const double dd = dot2(d, d);
    double t = 0.0;
    if (dd > 0.0) t = std::clamp(-dot2(p0 - c, d) / dd, 0.0, 1.0);
    return length(Point2{p0.x + t * d.x, p0.y + t * d.y} - c);
}

void require_clearance(const Path& path, Point2 charge, double radius) {
    if (path.vertices.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    const auto segs = path.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double dist = segment_distance(segs[i][0], segs[i][1], charge);
        if (dist <= radius) {
            std::ostringstream msg;
            msg << "segment " << i << " passes within " << dist << " of the line charge (exclusion radius "
                << radius << ")";
            throw ExclusionZoneViolation(msg.str());
        }
    }
}

/// Azimuth swept by the straight segment p0 -> p1 seen from c. The segment
/// never crosses c, so the sweep lies in (-pi, pi) and atan2 has no branch issue.
double segment_sweep(Point2 p0, Point2 p1, Point2 c) {
    const Point2 r0 = p0 - c;
    const Point2 r1 = p1 - c;
    return std::atan2(cross(r0, r1), dot2(r0, r1));
}

bool near(Point2 a, Point2 b, double tol) { return length(a - b) <= tol; }

}  // namespace

Path Path::reversed() const {
    Path out{std::vector<Point2>(vertices.rbegin(), vertices.rend()), closed};
    return out;
}

std::vector<std::array<Point2, 2>> Path::segments() const {
    std::vector<std::array<Point2, 2>> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) out.push_back({vertices[i], vertices[i + 1]});
    if (closed && vertices.size() >= 2) {
        const Point2 last = vertices.back();
        const Point2 first = vertices.front();
        if (last.x != first.x || last.y != first.y) out.push_back({last, first});
    }
    return out;
}

Path concatenate(const Path& a, const Path& b) {
    if (a.vertices.empty() || b.vertices.empty()) throw std::invalid_argument("concatenate: empty path");
    if (!near(a.back(), b.front(), 1e-9)) throw EndpointMismatch("concatenate: paths do not join");
    Path out{a.vertices, false};
    out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    return out;
}

Path circle_path(Point2 center, double radius, int sides) {
    if (sides < 3) throw std::invalid_argument("circle needs at least 3 sides");
    Path out;
    out.closed = true;
    for (int i = 0; i < sides; ++i) {
        const double t = 2.0 * pi * i / sides;
        out.vertices.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return out;
}

Path arc_path(Point2 center, double radius, double from, double to, int sides) {
    if (sides < 1) throw std::invalid_argument("arc needs at least 1 side");
    Path out;
    for (int i = 0; i <= sides; ++i) {
        const double t = from + (to - from) * i / sides;
        out.vertices.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return out;
}

double min_distance(const Path& path, Point2 charge) {
    double best = std::numeric_limits<double>::infinity();
    if (path.vertices.size() == 1) return length(path.front() - charge);
    for (const auto& seg : path.segments()) best = std::min(best, segment_distance(seg[0], seg[1], charge));
    return best;
}

double ac_phase_numeric(const Path& path, const LineCharge& charge, const GeometryOptions& opts) {
    require_clearance(path, charge.position, opts.exclusion_radius);
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    constexpr unsigned max_depth = 15;

    double total = 0.0;
    for (const auto& seg : path.segments()) {
        const Point2 r0 = seg[0] - charge.position;
        const Point2 d = seg[1] - seg[0];
        const double dd = dot2(d, d);
        if (dd == 0.0) continue;
        // r(t) x d is constant along a straight segment, so dtheta/dt = (r0 x d) / |r(t)|^2.
        const double numerator = cross(r0, d);
        const auto integrand = [&](double t) {
            const Point2 r{r0.x + t * d.x, r0.y + t * d.y};
            return numerator / dot2(r, r);
        };
        // Split at the point of closest approach, where the integrand peaks.
        const double t_star = std::clamp(-dot2(r0, d) / dd, 0.0, 1.0);
        double sweep = 0.0;
        if (t_star > 0.0) sweep += Quadrature::integrate(integrand, 0.0, t_star, max_depth, opts.quadrature_tolerance);
        if (t_star < 1.0) sweep += Quadrature::integrate(integrand, t_star, 1.0, max_depth, opts.quadrature_tolerance);
        total += sweep;
    }
    return -charge.k * total;
}

double swept_angle(const Path& path, Point2 center) {
    double total = 0.0;
    for (const auto& seg : path.segments()) total += segment_sweep(seg[0], seg[1], center);
    return total;
}

double ac_phase_analytic(const Path& path, const LineCharge& charge, const GeometryOptions& opts) {
    require_clearance(path, charge.position, opts.exclusion_radius);
    return -charge.k * swept_angle(path, charge.position);
}

int winding(const Path& path, const LineCharge& charge) {
    if (!path.closed) throw std::invalid_argument("winding number needs a closed path");
    return static_cast<int>(std::lround(swept_angle(path, charge.position) / (2.0 * pi)));
}

int turns(const Path& path, Point2 center) {
    const double t = swept_angle(path, center) / (2.0 * pi);
    const double r = std::round(t);
    if (std::abs(t - r) < 1e-9) return static_cast<int>(r);
    return static_cast<int>(std::trunc(t));
}

double deformation_check(const Path& p1, const Path& p2, const LineCharge& charge,
                         const GeometryOptions& opts) {
    if (p1.vertices.size() < 2 || p2.vertices.size() < 2) {
        throw std::invalid_argument("deformation_check needs two open paths");
    }
    if (!near(p1.front(), p2.front(), 1e-9) || !near(p1.back(), p2.back(), 1e-9)) {
        throw EndpointMismatch("deformation_check: paths do not share endpoints");
    }
    Path loop = concatenate(p1, p2.reversed());
    loop.closed = true;
    if (winding(loop, charge) != 0) {
        throw WindingClassMismatch("deformation_check: paths lie in different winding classes");
    }
    return std::abs(ac_phase_numeric(p1, charge, opts) - ac_phase_numeric(p2, charge, opts));
}

void validate_layout(const Layout& layout) {
    const std::array<std::pair<Point2, Point2>, 4> ends{
        std::pair{layout.o12, layout.a}, std::pair{layout.o12, layout.b},
        std::pair{layout.o34, layout.b}, std::pair{layout.o34, layout.a}};
    for (std::size_t j = 0; j < 4; ++j) {
        const Path& p = layout.paths[j];
        if (p.vertices.size() < 2) {
            throw std::invalid_argument("path l" + std::to_string(j + 1) + " needs at least two vertices");
        }
        if (!near(p.front(), ends[j].first, 1e-9) || !near(p.back(), ends[j].second, 1e-9)) {
            throw EndpointMismatch("path l" + std::to_string(j + 1) +
                                   " does not join its source and meeting point");
        }
    }
}

Path combined_loop(const Layout& layout) {
    const auto& l = layout.paths;
    Path loop = concatenate(concatenate(concatenate(l[0], l[3].reversed()), l[2]), l[1].reversed());
    loop.closed = true;
    return loop;
}

LayoutPhases layout_phases(const Layout& layout) {
    validate_layout(layout);
    LayoutPhases out;
    std::array<double, 4> phi{};
    for (std::size_t j = 0; j < 4; ++j) {
        auto& pp = out.per_path[j];
        pp.numeric = ac_phase_numeric(layout.paths[j], layout.charge, layout.options);
        pp.analytic = ac_phase_analytic(layout.paths[j], layout.charge, layout.options);
        pp.turns = turns(layout.paths[j], layout.charge.position);
        phi[j] = pp.numeric;
    }
    out.phases = PhaseSet(phi[0], phi[1], phi[2], phi[3]);
    out.loop_winding = winding(combined_loop(layout), layout.charge);
    return out;
}

}  // namespace acleggett
