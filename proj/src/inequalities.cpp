#include "acleggett/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace acleggett {

using std::numbers::pi;

std::array<Vec3, 3> LeggettSettings::basis() {
    return {Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}, Vec3{1.0, 0.0, 0.0}};
}

LeggettSettings leggett_settings(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("leggett_settings: phi is not finite");
    const double h = phi / 2.0;
    LeggettSettings s;
    s.phi = phi;
    s.a = {Setting(pi / 2, 0.0), Setting(pi / 2, pi / 2), Setting(0.0, 0.0)};
    s.b = {Setting(pi / 2, h), Setting(pi / 2 - h, pi / 2), Setting(h, 0.0)};
    s.b_prime = {Setting(pi / 2, -h), Setting(pi / 2 + h, pi / 2), Setting(h, pi)};
    return s;
}

double leggett_lhs(const Correlation& c, const LeggettSettings& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) acc += std::abs(c(s.a[i], s.b[i]) + c(s.a[i], s.b_prime[i]));
    return acc / 3.0;
}

double leggett_bound(double phi) { return 2.0 - (2.0 / 3.0) * std::abs(std::sin(phi / 2.0)); }

double leggett_violation(double phi) {
    return 2.0 * std::abs(std::cos(phi / 2.0)) + (2.0 / 3.0) * std::abs(std::sin(phi / 2.0)) - 2.0;
}

ChshSettings chsh_settings() {
    return {Setting(pi / 2, 0.0), Setting(pi / 2, pi / 2), Setting(pi / 2, pi / 4),
            Setting(pi / 2, -pi / 4)};
}

double chsh_value(const Correlation& c, const ChshSettings& s) {
    return std::abs(c(s.a, s.b) + c(s.a_prime, s.b) + c(s.a, s.b_prime) - c(s.a_prime, s.b_prime));
}

namespace {

bool violated(double phi) { return leggett_violation(phi) > 0.0; }

/// Boundary between `outside` (not violated) and `inside` (violated).
double bisect_boundary(double outside, double inside, double tolerance) {
    while (std::abs(inside - outside) > tolerance) {
        const double mid = 0.5 * (inside + outside);
        if (violated(mid)) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

double grid_point(const ScanRange& range, int k) {
    if (k == range.steps) return range.hi;
    return range.lo + (range.hi - range.lo) * static_cast<double>(k) / static_cast<double>(range.steps);
}

}  // namespace

std::vector<Interval> violation_intervals(const ScanRange& range, double tolerance) {
    if (range.steps < 100) throw std::invalid_argument("violation scan needs at least 100 steps");
    if (!(range.lo < range.hi)) throw std::invalid_argument("violation scan needs lo < hi");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    std::vector<Interval> out;
    int run_start = -1;
    for (int k = 0; k <= range.steps; ++k) {
        const bool inside = violated(grid_point(range, k));
        if (inside && run_start < 0) run_start = k;
        const bool run_ends = run_start >= 0 && (!inside || k == range.steps);
        if (!run_ends) continue;

        const int last_inside = inside ? k : k - 1;
        Interval iv;
        iv.lo = run_start == 0 ? range.lo
                               : bisect_boundary(grid_point(range, run_start - 1),
                                                 grid_point(range, run_start), tolerance);
        iv.hi = inside ? range.hi
                       : bisect_boundary(grid_point(range, k), grid_point(range, last_inside),
                                         tolerance);
        out.push_back(iv);
        run_start = -1;
    }
    return out;
}

Interval violation_region(const ScanRange& range, double tolerance) {
    Interval best;
    for (Interval iv : violation_intervals(range, tolerance)) {
        if (iv.hi <= 0.0) iv = {-iv.hi, -iv.lo};
        // a run straddling zero cannot occur: leggett_violation(0) == 0
        if (iv.length() > best.length()) best = iv;
    }
    return best;
}

Maximum max_violation(double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = pi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = leggett_violation(c);
    double fd = leggett_violation(d);
    while (b - a > tolerance) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = leggett_violation(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = leggett_violation(d);
        }
    }
    const double phi_star = 0.5 * (a + b);
    return {phi_star, leggett_violation(phi_star)};
}

std::vector<ScanRow> leggett_scan(const ScanRange& range, const Correlation& c) {
    if (range.steps < 1) throw std::invalid_argument("scan needs at least 1 step");
    if (!(range.lo <= range.hi)) throw std::invalid_argument("scan needs phi_min <= phi_max");
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(range.steps) + 1);
    for (int k = 0; k <= range.steps; ++k) {
        ScanRow row;
        row.phi = grid_point(range, k);
        row.bound = leggett_bound(row.phi);
        try {
            row.lhs = leggett_lhs(c, leggett_settings(row.phi));
            row.violation = row.lhs - row.bound;
            row.violated = row.violation > 0.0;
        } catch (const DegenerateNormalization&) {
            row.lhs = std::numeric_limits<double>::quiet_NaN();
            row.violation = row.lhs;
            row.violated = false;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace acleggett
