#include "acleggett/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "acleggett/format.hpp"

namespace acleggett {

Setting Setting::from_vector(const Vec3& v, double tol) {
    const double len = norm(v);
    if (std::abs(len - 1.0) > tol) {
        throw std::invalid_argument("setting vector must be unit length, |v| = " +
                                    std::to_string(len));
    }
    const double theta = std::acos(std::clamp(v[2] / len, -1.0, 1.0));
    const double phi = std::atan2(v[1], v[0]);
    Setting s(theta, phi);
    s.vec_ = v;
    return s;
}

JointProbabilities joint_probabilities(const StateVector& psi_f, const Direction& d_a,
                                       const Direction& d_b) {
    if (psi_f.particles() != 4) throw DimensionMismatch("joint_probabilities expects 4 particles");
    const StateVector psi = reorder(psi_f, kOrder1423);
    JointProbabilities out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const StateVector bra = tensor(pseudo_pair_state(i, d_a), pseudo_pair_state(j, d_b));
            out.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::norm(inner(bra, psi));
        }
    }
    return out;
}

double normalized_correlation(const JointProbabilities& p, double eps_norm) {
    const double total = p.total();
    if (!(total > eps_norm)) {
        throw DegenerateNormalization("joint probabilities sum to " + format_number(total) +
                                      ", correlation undefined");
    }
    return (p(0, 0) - p(0, 1) - p(1, 0) + p(1, 1)) / total;
}

namespace {

double expectation(const StateVector& psi1423, const Operator& op) {
    return inner(psi1423, op.apply(psi1423)).real();
}

double subspace_weight(const StateVector& psi1423) {
    const double w = expectation(psi1423, pair_subspace_projector());
    if (!(w > kDefaultNormThreshold)) {
        throw DegenerateNormalization("state has no weight in the pseudo-qubit subspace");
    }
    return w;
}

}  // namespace

double operator_expectation(const StateVector& psi, const Vec3& a, const Vec3& b) {
    if (psi.particles() != 4) throw DimensionMismatch("operator_expectation expects 4 particles");
    const StateVector psi1423 = reorder(psi, kOrder1423);
    const double w = subspace_weight(psi1423);
    return expectation(psi1423, kron(pseudo_linear(a), pseudo_linear(b))) / w;
}

double operator_correlation(const Setting& a, const Setting& b) {
    return operator_expectation(initial_state(), a.vector(), b.vector());
}

double operator_correlation_raw(const Vec3& a, const Vec3& b) {
    return operator_expectation(initial_state(), a, b);
}

double analytic_correlation(const Setting& a, const Setting& b) { return -dot(a.vector(), b.vector()); }

double no_signaling_deviation(const StateVector& psi_f, std::span<const Setting> settings_a,
                              std::span<const Setting> settings_b) {
    if (settings_a.empty() || settings_b.empty()) {
        throw std::invalid_argument("no_signaling_deviation needs settings on both sides");
    }
    if (psi_f.particles() != 4) throw DimensionMismatch("no_signaling_deviation expects 4 particles");
    const StateVector psi1423 = reorder(psi_f, kOrder1423);
    const double w = subspace_weight(psi1423);
    const Operator sub = pseudo_identity();
    double worst = 0.0;
    for (const auto& a : settings_a) {
        worst = std::max(worst, std::abs(expectation(psi1423, kron(pseudo_linear(a.vector()), sub)) / w));
    }
    for (const auto& b : settings_b) {
        worst = std::max(worst, std::abs(expectation(psi1423, kron(sub, pseudo_linear(b.vector()))) / w));
    }
    return worst;
}

Vec3 heisenberg_setting_vector(double theta, double phi) {
    const Operator rotation = pseudo_rotation(phi);
    const Operator measured = pseudo_linear({std::sin(theta), 0.0, std::cos(theta)});
    const Operator evolved = rotation.adjoint() * measured * rotation;
    Vec3 out{};
    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    for (std::size_t k = 0; k < 3; ++k) {
        const Operator product = evolved * pseudo_pauli(axes[k]);
        Complex trace = 0.0;
        for (std::size_t i = 0; i < product.dim(); ++i) trace += product(i, i);
        out[k] = trace.real() / 2.0;
    }
    return out;
}

Direction projector_direction(double theta, ProjectorConvention convention) {
    switch (convention) {
        case ProjectorConvention::equatorial:
            return Direction::equatorial(theta);
        case ProjectorConvention::polar:
            return Direction{theta, 0.0};
    }
    throw std::invalid_argument("unknown projector convention");
}

double pipeline_correlation(const Setting& a, const Setting& b, ProjectorConvention convention,
                            double eps_norm) {
    const PhaseSet phases(a.phi(), b.phi(), 0.0, 0.0);
    const StateVector psi_f = evolve(initial_state(), phases);
    const JointProbabilities p = joint_probabilities(psi_f, projector_direction(a.theta(), convention),
                                                     projector_direction(b.theta(), convention));
    return normalized_correlation(p, eps_norm);
}

double ConventionRow::abs_diff() const {
    return c_pipeline ? std::abs(*c_pipeline - c_analytic) : std::numeric_limits<double>::quiet_NaN();
}

double ConventionRow::abs_diff_heisenberg() const {
    return c_pipeline ? std::abs(*c_pipeline - c_heisenberg)
                      : std::numeric_limits<double>::quiet_NaN();
}

ConventionReport convention_report(std::span<const PhaseSet> phase_sets,
                                   std::span<const std::pair<double, double>> thetas,
                                   const ConventionOptions& options) {
    ConventionReport report;
    report.convention = options.convention;
    report.summary.threshold = options.diff_threshold;
    const StateVector initial = initial_state();

    double sum_diff = 0.0;
    double sum_diff_h = 0.0;
    std::size_t compared = 0;
    for (const auto& phases : phase_sets) {
        const StateVector psi_f = evolve(initial, phases);
        for (const auto& [theta_a, theta_b] : thetas) {
            ConventionRow row;
            row.phases = phases;
            row.theta_a = theta_a;
            row.theta_b = theta_b;
            row.probabilities =
                joint_probabilities(psi_f, projector_direction(theta_a, options.convention),
                                    projector_direction(theta_b, options.convention));
            try {
                row.c_pipeline = normalized_correlation(row.probabilities, options.eps_norm);
            } catch (const DegenerateNormalization&) {
                row.degenerate = true;
            }
            row.c_analytic =
                analytic_correlation(Setting(theta_a, phases.phi_a()), Setting(theta_b, phases.phi_b()));
            row.c_heisenberg = operator_expectation(psi_f, {std::sin(theta_a), 0.0, std::cos(theta_a)},
                                                    {std::sin(theta_b), 0.0, std::cos(theta_b)});

            auto& s = report.summary;
            ++s.rows;
            if (row.degenerate) {
                ++s.degenerate_rows;
            } else {
                const double d = row.abs_diff();
                const double dh = row.abs_diff_heisenberg();
                ++compared;
                sum_diff += d;
                sum_diff_h += dh;
                s.max_abs_diff = std::max(s.max_abs_diff, d);
                s.max_abs_diff_heisenberg = std::max(s.max_abs_diff_heisenberg, dh);
                if (d > options.diff_threshold) ++s.rows_over_threshold;
                if (dh > options.diff_threshold) ++s.rows_over_threshold_heisenberg;
            }
            report.rows.push_back(std::move(row));
        }
    }
    if (compared > 0) {
        report.summary.mean_abs_diff = sum_diff / static_cast<double>(compared);
        report.summary.mean_abs_diff_heisenberg = sum_diff_h / static_cast<double>(compared);
    }
    return report;
}

std::pair<std::vector<PhaseSet>, std::vector<std::pair<double, double>>> sample_convention_inputs(
    std::size_t n_phase_sets, std::size_t n_theta_pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> polar(0.0, std::numbers::pi);
    std::vector<PhaseSet> phase_sets;
    phase_sets.reserve(n_phase_sets);
    for (std::size_t i = 0; i < n_phase_sets; ++i) {
        const double p1 = phase(rng);
        const double p2 = phase(rng);
        const double p3 = phase(rng);
        const double p4 = phase(rng);
        phase_sets.emplace_back(p1, p2, p3, p4);
    }
    std::vector<std::pair<double, double>> thetas;
    thetas.reserve(n_theta_pairs);
    for (std::size_t i = 0; i < n_theta_pairs; ++i) {
        const double ta = polar(rng);
        const double tb = polar(rng);
        thetas.emplace_back(ta, tb);
    }
    return {std::move(phase_sets), std::move(thetas)};
}

void write_convention_csv(std::ostream& out, const ConventionReport& report) {
    out << "phi1,phi2,phi3,phi4,thetaA,thetaB,p00,p01,p10,p11,c_pipeline,c_analytic,abs_diff,"
           "degenerate_flag,c_heisenberg,abs_diff_heisenberg\n";
    for (const auto& row : report.rows) {
        for (double phi : row.phases.phases()) out << format_number(phi) << ',';
        out << format_number(row.theta_a) << ',' << format_number(row.theta_b) << ',';
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) out << format_number(row.probabilities(i, j)) << ',';
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out << format_number(row.c_pipeline.value_or(nan)) << ',' << format_number(row.c_analytic)
            << ',' << format_number(row.abs_diff()) << ',' << (row.degenerate ? "true" : "false")
            << ',' << format_number(row.c_heisenberg) << ','
            << format_number(row.abs_diff_heisenberg()) << '\n';
    }
}

}  // namespace acleggett
