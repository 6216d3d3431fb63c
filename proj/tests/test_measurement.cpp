#include "acleggett/measurement.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "acleggett/evolution.hpp"
#include "acleggett/spinstates.hpp"
#include "test_helpers.hpp"

using namespace acleggett;
using std::numbers::pi;

namespace {

using C = std::complex<double>;

// Brute-force Born probabilities over explicit spin configurations
// (s = 0 up, 1 down), independent of the library's reorder / projector code.
struct BruteForce {
    static C singlet(int x, int y) {
        if (x == 0 && y == 1) return 1.0 / std::sqrt(2.0);
        if (x == 1 && y == 0) return -1.0 / std::sqrt(2.0);
        return 0.0;
    }
    static C triplet(int x, int y) { return x != y ? C{1.0 / std::sqrt(2.0)} : C{0.0}; }
    static C plus(int s, double xi, double th) {
        return s == 0 ? C{std::cos(xi / 2)} : std::sin(xi / 2) * std::polar(1.0, th);
    }
    static C minus(int s, double xi, double th) {
        return s == 0 ? C{std::sin(xi / 2)} : -std::cos(xi / 2) * std::polar(1.0, th);
    }
    static C pair(int index, int x, int y, double xi, double th) {
        const C a = plus(x, xi, th) * minus(y, xi, th);
        const C b = minus(x, xi, th) * plus(y, xi, th);
        return (index == 0 ? a - b : a + b) / std::sqrt(2.0);
    }
    // psi(s1, s2, s3, s4) after per-particle phases.
    static C psi(const int s[4], const double phi[4]) {
        C amp = singlet(s[0], s[1]) * triplet(s[2], s[3]);
        for (int j = 0; j < 4; ++j) amp *= std::polar(1.0, (s[j] == 0 ? 0.5 : -0.5) * phi[j]);
        return amp;
    }
    static double prob(int i, int j, const double phi[4], double xiA, double thA, double xiB, double thB) {
        C sum = 0.0;
        for (int bits = 0; bits < 16; ++bits) {
            const int s[4] = {(bits >> 3) & 1, (bits >> 2) & 1, (bits >> 1) & 1, bits & 1};
            sum += std::conj(pair(i, s[0], s[3], xiA, thA)) * std::conj(pair(j, s[1], s[2], xiB, thB)) *
                   psi(s, phi);
        }
        return std::norm(sum);
    }
};

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

TEST(JointProbabilities, ZAxisAtZeroPhase) {
    const auto p = joint_probabilities(initial_state(), Direction::z_axis(), Direction::z_axis());
    EXPECT_NEAR(p(0, 0), 0.0, 1e-12);
    EXPECT_NEAR(p(0, 1), 0.25, 1e-12);
    EXPECT_NEAR(p(1, 0), 0.25, 1e-12);
    EXPECT_NEAR(p(1, 1), 0.0, 1e-12);
}

TEST(JointProbabilities, EquatorialExample) {
    const double phi[4] = {0, 0, 0, 0};
    const double oracle = BruteForce::prob(1, 1, phi, pi / 2, 0.0, pi / 2, pi / 4);
    EXPECT_NEAR(oracle, 0.125, 1e-12);
    const auto p = joint_probabilities(initial_state(), Direction::equatorial(0.0), Direction::equatorial(pi / 4));
    EXPECT_NEAR(p(1, 1), oracle, 1e-12);
}

TEST(JointProbabilities, MatchesBruteForceOnRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-pi, pi), pol(0.0, pi);
    for (int t = 0; t < 200; ++t) {
        const double phi[4] = {ang(rng), ang(rng), ang(rng), ang(rng)};
        const Direction da{pol(rng), ang(rng)}, db{pol(rng), ang(rng)};
        const StateVector f = evolve(initial_state(), PhaseSet(phi[0], phi[1], phi[2], phi[3]));
        const auto p = joint_probabilities(f, da, db);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                EXPECT_NEAR(p(i, j), BruteForce::prob(i, j, phi, da.xi, da.theta, db.xi, db.theta), 1e-12);
        EXPECT_LE(p.total(), 0.5 + 1e-12);
    }
}

TEST(NormalizedCorrelation, Cases) {
    EXPECT_NEAR(normalized_correlation(JointProbabilities{{{{0.0, 0.25}, {0.25, 0.0}}}}), -1.0, 1e-15);
    EXPECT_NEAR(normalized_correlation(JointProbabilities{{{{0.5, 0.0}, {0.0, 0.5}}}}), 1.0, 1e-15);
    EXPECT_NEAR(normalized_correlation(JointProbabilities{{{{0.1, 0.1}, {0.1, 0.1}}}}), 0.0, 1e-15);
    EXPECT_THROW(normalized_correlation(JointProbabilities{}), DegenerateNormalization);
    EXPECT_THROW(normalized_correlation(JointProbabilities{{{{1e-11, 0.0}, {0.0, 0.0}}}}), DegenerateNormalization);
}

TEST(OperatorCorrelation, SingletCases) {
    EXPECT_NEAR(operator_correlation(Setting(0.3, 1.2), Setting(0.3, 1.2)), -1.0, 1e-12);
    EXPECT_NEAR(operator_correlation(Setting(pi / 2, 0.0), Setting(pi / 2, pi / 2)), 0.0, 1e-12);
    EXPECT_NEAR(operator_correlation(Setting(0.0, 0.0), Setting(pi, 0.0)), 1.0, 1e-12);
}

TEST(OperatorCorrelation, MatchesMinusDotOnRandomPairs) {
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Vec3 a = acltest::random_unit(rng), b = acltest::random_unit(rng);
        const double c = operator_correlation(Setting::from_vector(a), Setting::from_vector(b));
        worst = std::max(worst, std::abs(c + dot3(a, b)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(AnalyticCorrelation, Examples) {
    EXPECT_NEAR(analytic_correlation(Setting(pi / 2, 0.0), Setting(pi / 2, pi / 4)), -1.0 / std::sqrt(2.0), 1e-15);
    const double phi = 0.8;
    EXPECT_NEAR(analytic_correlation(Setting(pi / 2, 0.0), Setting(pi / 2, phi / 2)), -std::cos(phi / 2), 1e-15);
}

TEST(OperatorCorrelation, AlgebraicProperties) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const Vec3 a = acltest::random_unit(rng), a2 = acltest::random_unit(rng), b = acltest::random_unit(rng);
        const double al = g(rng), be = g(rng);
        const Vec3 mix{al * a[0] + be * a2[0], al * a[1] + be * a2[1], al * a[2] + be * a2[2]};
        EXPECT_NEAR(operator_correlation_raw(mix, b),
                    al * operator_correlation_raw(a, b) + be * operator_correlation_raw(a2, b), 1e-11);
        EXPECT_NEAR(operator_correlation_raw(a, b), operator_correlation_raw(b, a), 1e-12);

        const StateVector psi = evolve(initial_state(), PhaseSet(g(rng), g(rng), g(rng), g(rng)));
        const double base = operator_expectation(psi, a, b);
        EXPECT_NEAR(operator_expectation(std::polar(1.0, g(rng)) * psi, a, b), base, 1e-12);
        EXPECT_NEAR(operator_expectation(psi.scaled(3.0), a, b), base, 1e-12);
    }
}

TEST(OperatorExpectation, DegenerateOutsideSubspace) {
    EXPECT_THROW(operator_expectation(StateVector::basis(4, 0), {0, 0, 1}, {0, 0, 1}), DegenerateNormalization);
}

TEST(NoSignaling, MarginalsVanish) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> ang(-pi, pi), pol(0.0, pi);
    std::vector<Setting> sa, sb;
    for (int i = 0; i < 8; ++i) {
        sa.emplace_back(pol(rng), ang(rng));
        sb.emplace_back(pol(rng), ang(rng));
    }
    const PhaseSet base(0.4, -1.0, 0.2, 0.9);
    EXPECT_LT(no_signaling_deviation(evolve(initial_state(), base), sa, sb), 1e-12);
    // Varying gamma alone (same phi_A, phi_B) keeps the marginals flat.
    for (double s : {0.3, 1.7, -2.5}) {
        const PhaseSet shifted(base.phi(1) + s, base.phi(2) - s, base.phi(3) - s, base.phi(4) + s);
        EXPECT_LT(no_signaling_deviation(evolve(initial_state(), shifted), sa, sb), 1e-12);
    }
}

TEST(Heisenberg, MatchesTwoByTwoConjugation) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> ang(-pi, pi), pol(0.0, pi);
    for (int t = 0; t < 100; ++t) {
        const double th = pol(rng), ph = ang(rng);
        const C c = std::cos(ph / 2), s = C{0.0, std::sin(ph / 2)};
        // R = [[c, s], [s, c]], M = [[cos th, sin th], [sin th, -cos th]]; v from R^dagger M R.
        const C r[2][2] = {{c, s}, {s, c}};
        const C m[2][2] = {{std::cos(th), std::sin(th)}, {std::sin(th), -std::cos(th)}};
        C out[2][2] = {};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) out[i][j] += std::conj(r[k][i]) * m[k][l] * r[l][j];
        const Vec3 v = heisenberg_setting_vector(th, ph);
        EXPECT_NEAR(v[0], out[0][1].real(), 1e-12);
        EXPECT_NEAR(v[1], -out[0][1].imag(), 1e-12);
        EXPECT_NEAR(v[2], out[0][0].real(), 1e-12);
    }
}

TEST(ConventionReport, PolarZeroAngleRow) {
    const std::vector<PhaseSet> phases{PhaseSet{}};
    const std::vector<std::pair<double, double>> thetas{{0.0, 0.0}};
    const auto rep = convention_report(phases, thetas, {ProjectorConvention::polar});
    ASSERT_EQ(rep.rows.size(), 1u);
    ASSERT_TRUE(rep.rows[0].c_pipeline.has_value());
    EXPECT_NEAR(*rep.rows[0].c_pipeline, -1.0, 1e-12);
    EXPECT_NEAR(rep.rows[0].c_analytic, -1.0, 1e-12);
    EXPECT_NEAR(rep.rows[0].abs_diff(), 0.0, 1e-12);
}

TEST(ConventionReport, EquatorialRowsAndCsv) {
    const auto [phases, thetas] = sample_convention_inputs(5, 4, 42);
    ASSERT_EQ(phases.size(), 5u);
    ASSERT_EQ(thetas.size(), 4u);
    const auto rep = convention_report(phases, thetas);
    ASSERT_EQ(rep.rows.size(), 20u);
    EXPECT_EQ(rep.summary.rows, 20u);
    for (const auto& row : rep.rows) {
        const double phi[4] = {row.phases.phi(1), row.phases.phi(2), row.phases.phi(3), row.phases.phi(4)};
        EXPECT_NEAR(row.probabilities(1, 1),
                    BruteForce::prob(1, 1, phi, pi / 2, row.theta_a, pi / 2, row.theta_b), 1e-12);
        EXPECT_EQ(row.degenerate, !row.c_pipeline.has_value());
        EXPECT_TRUE(std::isfinite(row.c_heisenberg));
    }
    std::ostringstream csv;
    write_convention_csv(csv, rep);
    const std::string text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "phi1,phi2,phi3,phi4,thetaA,thetaB,p00,p01,p10,p11,c_pipeline,c_analytic,abs_diff,degenerate_flag,"
              "c_heisenberg,abs_diff_heisenberg");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 21);
}

TEST(ConventionReport, Deterministic) {
    const auto a = sample_convention_inputs(3, 3, 7);
    const auto b = sample_convention_inputs(3, 3, 7);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.first[i].phases(), b.first[i].phases());
    EXPECT_EQ(a.second, b.second);
}

TEST(NoSignaling, DetectsPolarizedMarginal) {
    // |0bar>_14 |0bar>_23 has <Sigma^z (x) P> = 1 on pair (1,4).
    const StateVector in1423 = tensor(singlet(), singlet());
    const StateVector psi = reorder(in1423, inverse_permutation(kOrder1423));
    const std::vector<Setting> z{Setting(0.0, 0.0)};
    EXPECT_NEAR(no_signaling_deviation(psi, z, z), 1.0, 1e-12);
}
