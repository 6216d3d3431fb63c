#pragma once

// Leggett and Bell-CHSH inequalities evaluated with a pluggable correlation function.

#include <array>
#include <functional>
#include <vector>

#include "acleggett/measurement.hpp"
#include "acleggett/vec3.hpp"

namespace acleggett {

using Correlation = std::function<double(const Setting&, const Setting&)>;

/// Nine settings for the Leggett test; b[i] - b_prime[i] = 2 sin(phi/2) e_i.
struct LeggettSettings {
    std::array<Setting, 3> a;
    std::array<Setting, 3> b;
    std::array<Setting, 3> b_prime;
    double phi = 0.0;

    /// The orthogonal basis {e1, e2, e3} = {y, z, x} the settings are built on.
    static std::array<Vec3, 3> basis();
};

LeggettSettings leggett_settings(double phi);

/// (1/3) sum_i |C(a_i, b_i) + C(a_i, b'_i)|
double leggett_lhs(const Correlation& c, const LeggettSettings& s);

/// 2 - (2/3)|sin(phi/2)|
double leggett_bound(double phi);

/// 2|cos(phi/2)| + (2/3)|sin(phi/2)| - 2; positive iff the inequality is violated.
double leggett_violation(double phi);

struct ChshSettings {
    Setting a;
    Setting a_prime;
    Setting b;
    Setting b_prime;
};

/// Coplanar settings with a = x, a' = y, b = (x+y)/sqrt2, b' = (x-y)/sqrt2.
ChshSettings chsh_settings();

/// |C(a,b) + C(a',b) + C(a,b') - C(a',b')|
double chsh_value(const Correlation& c, const ChshSettings& s);

inline constexpr double kChshLocalBound = 2.0;

struct ScanRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;  ///< number of grid intervals; the grid has steps + 1 points
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(hi > lo); }
    double length() const { return empty() ? 0.0 : hi - lo; }
};

/// Every maximal run where leggett_violation > 0 on the grid, endpoints refined
/// by bisection to `tolerance`. Requires steps >= 100 and lo < hi.
std::vector<Interval> violation_intervals(const ScanRange& range, double tolerance);

/// Longest violation interval in |phi|: runs on the negative axis are mirrored
/// before comparison. Returns an empty Interval when nothing is violated.
Interval violation_region(const ScanRange& range, double tolerance);

struct Maximum {
    double phi = 0.0;
    double value = 0.0;
};

/// Golden-section maximization of leggett_violation over (0, pi).
Maximum max_violation(double tolerance);

struct ScanRow {
    double phi = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    double violation = 0.0;
    bool violated = false;
};

/// Evaluates the inequality on an evenly spaced grid. A correlation that throws
/// DegenerateNormalization yields NaN lhs/violation and violated = false.
std::vector<ScanRow> leggett_scan(const ScanRange& range, const Correlation& c);

}  // namespace acleggett
