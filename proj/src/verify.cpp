#include "acleggett/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "acleggett/geometry.hpp"
#include "acleggett/inequalities.hpp"
#include "acleggett/measurement.hpp"
#include "acleggett/spinstates.hpp"
#include "acleggett/statevec.hpp"

namespace acleggett {

using std::numbers::pi;

namespace {

class Recorder {
  public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

    void check(std::string name, double value, double threshold) {
        results_.push_back({suite_, std::move(name), value, threshold, value < threshold, false});
    }
    void info(std::string name, double value) {
        results_.push_back({suite_, std::move(name), value, 0.0, true, true});
    }
    std::vector<CheckResult> take() { return std::move(results_); }

  private:
    std::string suite_;
    std::vector<CheckResult> results_;
};

StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) a = {g(rng), g(rng)};
    const StateVector s(n, std::move(amps));
    return s.scaled(1.0 / s.norm());
}

SingleSpinGate random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
    const double a = u(rng), b = u(rng), c = u(rng), t = u(rng);
    const Complex ph = std::polar(1.0, a);
    return {{ph * std::polar(std::cos(t), b), ph * std::polar(std::sin(t), c),
             -ph * std::polar(std::sin(t), -c), ph * std::polar(std::cos(t), -b)}};
}

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v{g(rng), g(rng), g(rng)};
    return (1.0 / norm(v)) * v;
}

Direction random_direction(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> polar(0.0, pi);
    std::uniform_real_distribution<double> az(0.0, 2.0 * pi);
    return {polar(rng), az(rng)};
}

PhaseSet random_phases(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-pi, pi);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    return {a, b, c, d};
}

Path random_polyline(std::mt19937_64& rng, Point2 charge, double clearance, int max_vertices) {
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_int_distribution<int> count(2, max_vertices);
    for (;;) {
        Path p;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) p.vertices.push_back({coord(rng), coord(rng)});
        if (min_distance(p, charge) > clearance) return p;
    }
}

std::vector<CheckResult> statevec_suite(std::uint64_t seed) {
    Recorder r("statevec");
    std::mt19937_64 rng(seed);
    double norm_err = 0.0, tensor_err = 0.0, reorder_err = 0.0;
    const std::array<int, 4> perm{3, 1, 4, 2};
    const std::vector<int> inv = inverse_permutation(perm);
    for (int t = 0; t < 200; ++t) {
        const StateVector s = random_state(4, rng);
        const SingleSpinGate g = random_unitary(rng);
        for (int j = 1; j <= 4; ++j) norm_err = std::max(norm_err, std::abs(apply_single(g, j, s).norm() - 1.0));

        const StateVector a = random_state(2, rng), b = random_state(2, rng);
        const StateVector c = random_state(2, rng), d = random_state(2, rng);
        tensor_err = std::max(tensor_err, std::abs(inner(tensor(a, b), tensor(c, d)) - inner(a, c) * inner(b, d)));

        const StateVector u = random_state(4, rng);
        reorder_err = std::max(reorder_err, std::abs(inner(reorder(s, perm), reorder(u, perm)) - inner(s, u)));
        reorder_err = std::max(reorder_err, distance(reorder(reorder(s, perm), inv), s));
    }
    r.check("norm preserved by unitary single-spin gates", norm_err, 1e-12);
    r.check("inner(a(x)b, c(x)d) = inner(a,c) inner(b,d)", tensor_err, 1e-12);
    r.check("reorder preserves inner products and inverts", reorder_err, 1e-12);
    return r.take();
}

std::vector<CheckResult> spinstates_suite(std::uint64_t seed) {
    Recorder r("spinstates");
    std::mt19937_64 rng(seed);
    double ortho = 0.0, invariance = 0.0, triplet_orth = 0.0;
    const std::array<StateVector, 3> triplets{StateVector::basis(2, 0), triplet0(), StateVector::basis(2, 3)};
    for (int t = 0; t < 200; ++t) {
        const Direction d = random_direction(rng);
        const StateVector zero = pseudo_pair_state(0, d);
        const StateVector one = pseudo_pair_state(1, d);
        ortho = std::max({ortho, std::abs(zero.norm() - 1.0), std::abs(one.norm() - 1.0), std::abs(inner(zero, one))});
        invariance = std::max(invariance, std::abs(overlap_magnitude(singlet(), zero) - 1.0));
        for (const auto& tr : triplets) invariance = std::max(invariance, std::abs(inner(tr, zero)));
        triplet_orth = std::max(triplet_orth, std::abs(inner(one, singlet())));
    }
    r.check("{|0bar_n>, |1bar_n>} orthonormal", ortho, 1e-12);
    r.check("|0bar_n> is the singlet for every n", invariance, 1e-12);
    r.check("<1bar_n|singlet> = 0", triplet_orth, 1e-12);

    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    const Operator proj = pseudo_identity();
    double algebra = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            const Operator sj = pseudo_pauli(axes[j]), sk = pseudo_pauli(axes[k]);
            const Operator expected = j == k ? Complex{2.0} * proj : Operator(4);
            algebra = std::max(algebra, (sj * sk + sk * sj).max_abs_diff(expected));
        }
    }
    r.check("{Sigma^j, Sigma^k} = 2 delta_jk P", algebra, 1e-12);
    return r.take();
}

std::vector<CheckResult> evolution_suite(std::uint64_t seed) {
    Recorder r("evolution");
    std::mt19937_64 rng(seed);
    double unitarity = 0.0, sector = 0.0, reduction = 0.0;
    const Operator proj = pair_subspace_projector();
    std::uniform_real_distribution<double> shift(-pi, pi);
    for (int t = 0; t < 500; ++t) {
        const PhaseSet p = random_phases(rng);
        unitarity = std::max(unitarity, std::abs(evolve(random_state(4, rng), p).norm() - 1.0));
        const SectorResidual res = final_state_residual(p);
        sector = std::max({sector, res.subspace, res.complement});

        // same (phi_A, phi_B), different gamma
        const double s1 = shift(rng), s2 = shift(rng);
        const PhaseSet q(p.phi(1) + s1, p.phi(2) + s2, p.phi(3) + s2, p.phi(4) + s1);
        const StateVector sub_p = proj.apply(reorder(evolve(initial_state(), p), kOrder1423));
        const StateVector sub_q = proj.apply(reorder(evolve(initial_state(), q), kOrder1423));
        reduction = std::max(reduction, distance(sub_p, sub_q));
    }
    r.check("evolve preserves norm", unitarity, 1e-12);
    r.check("final state matches rotated pseudo-singlet plus e^{+-i gamma} sector", sector, 1e-12);
    r.check("subspace sector depends only on (phi_A, phi_B)", reduction, 1e-12);
    r.check("pair gates equal pseudo rotation (1000 trials)", pair_equivalence_residual_random(1000, seed), 1e-12);
    return r.take();
}

std::vector<CheckResult> measurement_suite(std::uint64_t seed) {
    Recorder r("measurement");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    double identity = 0.0, bilinear = 0.0, phase_inv = 0.0, scaling = 0.0, transpose = 0.0, born = 0.0;
    const std::array<int, 4> swap_pairs{2, 1, 4, 3};
    for (int t = 0; t < 1000; ++t) {
        const Vec3 a = random_unit(rng), b = random_unit(rng);
        identity = std::max(identity, std::abs(operator_correlation(Setting::from_vector(a), Setting::from_vector(b)) + dot(a, b)));
    }
    for (int t = 0; t < 100; ++t) {
        const Vec3 a1 = random_unit(rng), a2 = random_unit(rng), b = random_unit(rng);
        const double al = coef(rng), be = coef(rng);
        const double lhs = operator_correlation_raw(al * a1 + be * a2, b);
        const double rhs = al * operator_correlation_raw(a1, b) + be * operator_correlation_raw(a2, b);
        bilinear = std::max(bilinear, std::abs(lhs - rhs));

        const StateVector psi = evolve(initial_state(), random_phases(rng));
        const Direction da = random_direction(rng), db = random_direction(rng);
        const JointProbabilities p = joint_probabilities(psi, da, db);
        const JointProbabilities q = joint_probabilities(std::polar(1.0, angle(rng)) * psi, da, db);
        const JointProbabilities pt = joint_probabilities(reorder(psi, swap_pairs), db, da);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                phase_inv = std::max(phase_inv, std::abs(p(i, j) - q(i, j)));
                transpose = std::max(transpose, std::abs(p(i, j) - pt(j, i)));
                born = std::max({born, -p(i, j), p(i, j) - 1.0});
            }
        }
        born = std::max(born, p.total() - 1.0);
        if (p.total() > 1e-6) {
            JointProbabilities scaled = p;
            const double f = scale(rng);
            for (auto& row : scaled.p) for (auto& x : row) x *= f;
            scaling = std::max(scaling, std::abs(normalized_correlation(p) - normalized_correlation(scaled)));
        }
    }
    r.check("operator correlation = -a.b (1000 pairs)", identity, 1e-12);
    r.check("operator correlation bilinear", bilinear, 1e-12);
    r.check("probabilities invariant under global phase", phase_inv, 1e-12);
    r.check("probabilities within [0, 1]", std::max(born, 0.0), 1e-12);
    r.check("correlation invariant under probability scaling", scaling, 1e-12);
    r.check("swapping pairs and directions transposes the table", transpose, 1e-12);

    std::vector<Setting> sa, sb;
    for (int t = 0; t < 100; ++t) {
        sa.push_back(Setting::from_vector(random_unit(rng)));
        sb.push_back(Setting::from_vector(random_unit(rng)));
    }
    double signaling = no_signaling_deviation(initial_state(), sa, sb);
    for (int t = 0; t < 20; ++t) {
        signaling = std::max(signaling, no_signaling_deviation(evolve(initial_state(), random_phases(rng)), sa, sb));
    }
    r.check("no-signaling marginal deviation", signaling, 1e-12);

    const auto [phase_sets, thetas] = sample_convention_inputs(20, 20, seed);
    const ConventionReport report = convention_report(phase_sets, thetas);
    r.info("convention report (equatorial): rows", static_cast<double>(report.summary.rows));
    r.info("convention report (equatorial): degenerate rows", static_cast<double>(report.summary.degenerate_rows));
    r.info("convention report (equatorial): max |pipeline - analytic|", report.summary.max_abs_diff);
    r.info("convention report (equatorial): mean |pipeline - analytic|", report.summary.mean_abs_diff);
    r.info("convention report (equatorial): rows with |diff| > 1e-9", static_cast<double>(report.summary.rows_over_threshold));
    return r.take();
}

std::vector<CheckResult> inequalities_suite(std::uint64_t) {
    Recorder r("inequalities");
    const Correlation analytic = analytic_correlation;
    const Correlation op = [](const Setting& a, const Setting& b) { return operator_correlation(a, b); };
    double end_to_end = 0.0, reduction = 0.0, orthogonality = 0.0, difference = 0.0;
    const auto basis = LeggettSettings::basis();
    for (int k = 0; k < 1000; ++k) {
        const double phi = -pi + 2.0 * pi * k / 999.0;
        const LeggettSettings s = leggett_settings(phi);
        const double lhs = leggett_lhs(analytic, s);
        end_to_end = std::max(end_to_end, std::abs(leggett_lhs(op, s) - lhs));
        reduction = std::max(reduction, std::abs(lhs - leggett_bound(phi) - leggett_violation(phi)));
        for (std::size_t i = 0; i < 3; ++i) {
            const Vec3 diff = s.b[i].vector() - s.b_prime[i].vector();
            difference = std::max(difference, norm(diff - (2.0 * std::sin(phi / 2.0)) * basis[i]));
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) orthogonality = std::max(orthogonality, std::abs(dot(basis[i], basis[j])));
    }
    r.check("Leggett lhs: operator route = analytic route", end_to_end, 1e-12);
    r.check("lhs - bound = closed-form violation", reduction, 1e-12);
    r.check("b_i - b'_i = 2 sin(phi/2) e_i", difference, 1e-12);
    r.check("e_i pairwise orthogonal", orthogonality, 1e-12);
    r.check("CHSH value = 2 sqrt2", std::abs(chsh_value(analytic, chsh_settings()) - 2.0 * std::numbers::sqrt2), 1e-12);

    const Interval region = violation_region({-pi, pi, 2000}, 1e-10);
    r.check("violation region lower endpoint = 0", std::abs(region.lo), 1e-7);
    r.check("violation region upper endpoint = 4 atan(1/3)", std::abs(region.hi - 4.0 * std::atan(1.0 / 3.0)), 1e-7);
    const Maximum m = max_violation(1e-10);
    r.check("argmax = 2 atan(1/3)", std::abs(m.phi - 2.0 * std::atan(1.0 / 3.0)), 1e-7);
    r.check("max violation = 20/(3 sqrt10) - 2", std::abs(m.value - (20.0 / (3.0 * std::sqrt(10.0)) - 2.0)), 1e-9);
    return r.take();
}

std::vector<CheckResult> geometry_suite(std::uint64_t seed) {
    Recorder r("geometry");
    std::mt19937_64 rng(seed);
    const LineCharge charge{{0.0, 0.0}, 1.0};
    double num_vs_an = 0.0, additivity = 0.0, reversal = 0.0, quantization = 0.0;
    for (int t = 0; t < 500; ++t) {
        const Path p = random_polyline(rng, charge.position, 0.01, 8);
        const double numeric = ac_phase_numeric(p, charge);
        const double analytic = ac_phase_analytic(p, charge);
        num_vs_an = std::max(num_vs_an, std::abs(numeric - analytic));
        reversal = std::max(reversal, std::abs(ac_phase_analytic(p.reversed(), charge) + analytic));

        Path tail = random_polyline(rng, charge.position, 0.01, 5);
        tail.vertices.front() = p.back();
        if (min_distance(tail, charge.position) <= 0.01) continue;
        const double joined = ac_phase_numeric(concatenate(p, tail), charge);
        additivity = std::max(additivity, std::abs(joined - numeric - ac_phase_numeric(tail, charge)));

        Path loop = p;
        loop.closed = true;
        if (min_distance(loop, charge.position) <= 0.01) continue;
        const double turns_value = ac_phase_analytic(loop, charge) / (-2.0 * pi * charge.k);
        quantization = std::max(quantization, std::abs(turns_value - std::round(turns_value)));
    }
    r.check("numeric phase = analytic phase (500 polylines)", num_vs_an, 1e-8);
    r.check("phase additive under concatenation", additivity, 1e-10);
    r.check("reversed path negates the phase", reversal, 1e-12);
    r.check("closed-path phase quantized in 2 pi k", quantization, 1e-12);
    r.check("CCW unit loop phase magnitude 2 pi k",
            std::abs(std::abs(ac_phase_numeric(circle_path({0.0, 0.0}, 1.0, 720), charge)) - 2.0 * pi), 1e-8);

    double deformation = 0.0;
    int pairs = 0;
    while (pairs < 100) {
        Path p1 = random_polyline(rng, charge.position, 0.01, 6);
        Path p2 = random_polyline(rng, charge.position, 0.01, 6);
        p2.vertices.front() = p1.front();
        p2.vertices.back() = p1.back();
        if (p2.vertices.size() < 2 || min_distance(p2, charge.position) <= 0.01) continue;
        try {
            deformation = std::max(deformation, deformation_check(p1, p2, charge));
            ++pairs;
        } catch (const WindingClassMismatch&) {
        }
    }
    r.check("same-class deformations leave the phase unchanged", deformation, 2e-8);
    return r.take();
}

using SuiteFn = std::function<std::vector<CheckResult>(std::uint64_t)>;

const std::map<std::string, SuiteFn>& suites() {
    static const std::map<std::string, SuiteFn> table{
        {"statevec", statevec_suite},         {"spinstates", spinstates_suite},
        {"evolution", evolution_suite},       {"measurement", measurement_suite},
        {"inequalities", inequalities_suite}, {"geometry", geometry_suite},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"statevec",     "spinstates",   "evolution",
                                                "measurement", "inequalities", "geometry"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
    const auto it = suites().find(suite);
    if (it == suites().end()) throw std::invalid_argument("unknown suite '" + suite + "'");
    return it->second(seed);
}

std::vector<CheckResult> run_all_suites(std::uint64_t seed) {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
        auto part = run_suite(name, seed);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

}  // namespace acleggett
