#pragma once

// Joint probabilities and correlation functions for the two pair measurements.
//
// Two independent routes are provided and kept apart:
//  * the projector pipeline: Born probabilities for |ibar_nA> (x) |jbar_nB> on
//    pairs (1,4) and (2,3), then the normalized parity correlation;
//  * the operator route: <a.Sigma (x) b.Sigma> on the pseudo-singlet.
// convention_report tabulates both side by side without assuming they agree.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "acleggett/evolution.hpp"
#include "acleggett/spinstates.hpp"
#include "acleggett/statevec.hpp"
#include "acleggett/vec3.hpp"

namespace acleggett {

inline constexpr double kDefaultNormThreshold = 1e-10;

class DegenerateNormalization : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Effective measurement setting a = (sin theta cos phi, sin theta sin phi, cos theta),
/// combining a projector angle theta with an AC phase phi.
class Setting {
  public:
    Setting() : Setting(0.0, 0.0) {}
    Setting(double theta, double phi) : theta_(theta), phi_(phi), vec_(spherical_unit(theta, phi)) {}

    /// Recovers (theta, phi) from a unit vector; throws std::invalid_argument if not unit.
    static Setting from_vector(const Vec3& v, double tol = 1e-9);

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    const Vec3& vector() const { return vec_; }

  private:
    double theta_;
    double phi_;
    Vec3 vec_;
};

struct JointProbabilities {
    std::array<std::array<double, 2>, 2> p{};

    double operator()(int i, int j) const {
        return p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    double total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

/// P(i,j) = |<ibar_dA, jbar_dB | psi>|^2 with psi given in 1234 order; the
/// projectors act on pair (1,4) with dA and on pair (2,3) with dB.
JointProbabilities joint_probabilities(const StateVector& psi_f, const Direction& d_a,
                                       const Direction& d_b);

/// sum (-1)^{i+j} P(i,j) / sum P(i,j). Throws DegenerateNormalization when the
/// denominator is <= eps_norm.
double normalized_correlation(const JointProbabilities& p, double eps_norm = kDefaultNormThreshold);

/// <psi| A (x) B |psi> / <psi|P_sub|psi> with A = a.Sigma on pair (1,4) and
/// B = b.Sigma on pair (2,3); psi in 1234 order. Vectors need not be unit.
double operator_expectation(const StateVector& psi, const Vec3& a, const Vec3& b);

/// operator_expectation on the initial state.
double operator_correlation(const Setting& a, const Setting& b);
double operator_correlation_raw(const Vec3& a, const Vec3& b);

/// -a.b
double analytic_correlation(const Setting& a, const Setting& b);

/// Largest one-sided pseudo-qubit marginal |<a.Sigma (x) P_sub>| (and the B-side
/// mirror) over the given settings, normalized by the subspace weight.
double no_signaling_deviation(const StateVector& psi_f, std::span<const Setting> settings_a,
                              std::span<const Setting> settings_b);

/// Bloch vector v with R(phi)^dagger (u.Sigma) R(phi) = v.Sigma on the pseudo-qubit,
/// u = (sin theta, 0, cos theta) and R the pseudo rotation. Computed from the
/// operator traces, not a closed form.
Vec3 heisenberg_setting_vector(double theta, double phi);

/// How a report angle theta is turned into a projector direction.
enum class ProjectorConvention {
    equatorial,  ///< xi = pi/2, azimuth = theta
    polar,       ///< xi = theta, azimuth = 0
};

Direction projector_direction(double theta, ProjectorConvention convention);

/// Projector-pipeline correlation as a function of two settings: phases
/// (phi1, phi2, phi3, phi4) = (a.phi, b.phi, 0, 0) applied to the initial state,
/// projector directions from the setting thetas. Throws DegenerateNormalization.
double pipeline_correlation(const Setting& a, const Setting& b,
                            ProjectorConvention convention = ProjectorConvention::equatorial,
                            double eps_norm = kDefaultNormThreshold);

struct ConventionRow {
    PhaseSet phases;
    double theta_a = 0.0;
    double theta_b = 0.0;
    JointProbabilities probabilities;
    std::optional<double> c_pipeline;  ///< empty when degenerate
    double c_analytic = 0.0;           ///< -a.b with a = (sin thA cos phiA, sin thA sin phiA, cos thA)
    double c_heisenberg = 0.0;         ///< operator route on the evolved state
    bool degenerate = false;

    /// |c_pipeline - c_analytic|, NaN for degenerate rows.
    double abs_diff() const;
    double abs_diff_heisenberg() const;
};

struct ConventionSummary {
    std::size_t rows = 0;
    std::size_t degenerate_rows = 0;
    double max_abs_diff = 0.0;
    double mean_abs_diff = 0.0;
    std::size_t rows_over_threshold = 0;
    double max_abs_diff_heisenberg = 0.0;
    double mean_abs_diff_heisenberg = 0.0;
    std::size_t rows_over_threshold_heisenberg = 0;
    double threshold = 1e-9;
};

struct ConventionReport {
    ProjectorConvention convention = ProjectorConvention::equatorial;
    std::vector<ConventionRow> rows;
    ConventionSummary summary;
};

struct ConventionOptions {
    ProjectorConvention convention = ProjectorConvention::equatorial;
    double eps_norm = kDefaultNormThreshold;
    double diff_threshold = 1e-9;
};

/// One row per (phase set, theta pair) combination, phase sets outermost.
ConventionReport convention_report(std::span<const PhaseSet> phase_sets,
                                   std::span<const std::pair<double, double>> thetas,
                                   const ConventionOptions& options = {});

/// Seeded random inputs for convention_report: phases uniform in [-pi, pi),
/// thetas uniform in [0, pi].
std::pair<std::vector<PhaseSet>, std::vector<std::pair<double, double>>> sample_convention_inputs(
    std::size_t n_phase_sets, std::size_t n_theta_pairs, std::uint64_t seed = kDefaultSeed);

void write_convention_csv(std::ostream& out, const ConventionReport& report);

}  // namespace acleggett
