#include "acleggett/evolution.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "acleggett/spinstates.hpp"
#include "test_helpers.hpp"

using namespace acleggett;
using acltest::expect_amplitudes;
using std::numbers::pi;

namespace {

PhaseSet random_phases(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-pi, pi);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    return {a, b, c, d};
}

}  // namespace

TEST(PhaseSet, DerivedFields) {
    const PhaseSet p(0.7, -0.2, 1.1, 0.3);
    EXPECT_DOUBLE_EQ(p.phi_a(), 0.7 - 0.3);
    EXPECT_DOUBLE_EQ(p.phi_b(), -0.2 - 1.1);
    EXPECT_NEAR(p.gamma(), (0.7 + 0.3 + 0.2 - 1.1) / 2.0, 1e-15);
}

TEST(AcGate, Values) {
    const auto id = ac_gate(0.0);
    EXPECT_NEAR(std::abs(id(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(id(1, 1) - 1.0), 0.0, 1e-15);
    const auto full = ac_gate(2.0 * pi);
    EXPECT_NEAR(std::abs(full(0, 0) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(full(1, 1) + 1.0), 0.0, 1e-15);
    expect_amplitudes(apply_single(ac_gate(pi), 1, ket_up()), {Complex{0.0, 1.0}, 0.0});
    EXPECT_TRUE(ac_gate(1.234).is_unitary());
    EXPECT_THROW(ac_gate(NAN), std::invalid_argument);
}

TEST(Evolve, ZeroPhasesIsIdentity) {
    const StateVector s = initial_state();
    EXPECT_LT(distance(evolve(s, PhaseSet{}), s), 1e-15);
}

TEST(Evolve, Errors) {
    EXPECT_THROW(evolve(singlet(), PhaseSet{}), DimensionMismatch);
    EXPECT_THROW(evolve(initial_state().scaled(2.0), PhaseSet{}), std::invalid_argument);
}

TEST(Evolve, PreservesNorm) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        EXPECT_NEAR(evolve(acltest::random_state(4, rng), random_phases(rng)).norm(), 1.0, 1e-12);
    }
}

TEST(Evolve, ComplementSectorCarriesGammaPhases) {
    // Amplitudes of |uudd> and |dduu> (1423 order) after evolution, from the
    // per-spin phase rule: up gets e^{i phi/2}, down e^{-i phi/2}.
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const PhaseSet p = random_phases(rng);
        const StateVector f = reorder(evolve(initial_state(), p), kOrder1423);
        const double g = (p.phi(1) + p.phi(4) - p.phi(2) - p.phi(3)) / 2.0;
        EXPECT_NEAR(std::abs(f[0b0011] - 0.5 * std::polar(1.0, g)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(f[0b1100] + 0.5 * std::polar(1.0, -g)), 0.0, 1e-12);
    }
}

TEST(Evolve, SectorDecompositionMatchesRotatedPseudoSinglet) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const SectorResidual r = final_state_residual(random_phases(rng));
        EXPECT_LT(r.subspace, 1e-12);
        EXPECT_LT(r.complement, 1e-12);
    }
}

TEST(Evolve, SubspaceDependsOnlyOnRelativePhases) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> shift(-pi, pi);
    const Operator proj = pair_subspace_projector();
    for (int t = 0; t < 100; ++t) {
        const PhaseSet p = random_phases(rng);
        const double s1 = shift(rng), s2 = shift(rng);
        const PhaseSet q(p.phi(1) + s1, p.phi(2) + s2, p.phi(3) + s2, p.phi(4) + s1);
        ASSERT_NEAR(p.phi_a(), q.phi_a(), 1e-12);
        ASSERT_NEAR(p.phi_b(), q.phi_b(), 1e-12);
        const StateVector a = proj.apply(reorder(evolve(initial_state(), p), kOrder1423));
        const StateVector b = proj.apply(reorder(evolve(initial_state(), q), kOrder1423));
        EXPECT_LT(distance(a, b), 1e-12);
    }
}

TEST(PseudoRotation, ZeroIsProjector) {
    EXPECT_LT(pseudo_rotation(0.0).max_abs_diff(pseudo_identity()), 1e-15);
}

TEST(PseudoRotation, ActionOnBasis) {
    const double d = 0.9;
    const StateVector expected = std::cos(d / 2) * singlet() + Complex{0.0, std::sin(d / 2)} * triplet0();
    EXPECT_LT(distance(pseudo_rotation(d).apply(singlet()), expected), 1e-12);
    const StateVector expected1 = Complex{0.0, std::sin(d / 2)} * singlet() + std::cos(d / 2) * triplet0();
    EXPECT_LT(distance(pseudo_rotation(d).apply(triplet0()), expected1), 1e-12);
}

TEST(PseudoRotation, ComposesAdditively) {
    // 2x2 product oracle on the (0bar, 1bar) block:
    // [[c1, i s1],[i s1, c1]] [[c2, i s2],[i s2, c2]] = [[c1c2 - s1s2, i(s1c2 + c1s2)], ...]
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2 * pi, 2 * pi);
    for (int t = 0; t < 50; ++t) {
        const double d1 = u(rng), d2 = u(rng);
        const double c1 = std::cos(d1 / 2), s1 = std::sin(d1 / 2), c2 = std::cos(d2 / 2), s2 = std::sin(d2 / 2);
        const Complex diag = c1 * c2 - s1 * s2;
        const Complex off = Complex{0.0, s1 * c2 + c1 * s2};
        const Operator expected = diag * pseudo_identity() + off * pseudo_pauli(Axis::x);
        EXPECT_LT((pseudo_rotation(d1) * pseudo_rotation(d2)).max_abs_diff(expected), 1e-12);
        EXPECT_LT((pseudo_rotation(d1) * pseudo_rotation(d2)).max_abs_diff(pseudo_rotation(d1 + d2)), 1e-12);
    }
}

TEST(PseudoRotation, ZeroOnComplement) {
    EXPECT_LT(pseudo_rotation(1.3).apply(StateVector::basis(2, 0)).norm(), 1e-15);
}

TEST(PairEquivalence, EqualPhases) { EXPECT_LT(pair_equivalence_residual(0.0, 100), 1e-12); }

TEST(PairEquivalence, SingletUnderTwoGates) {
    const double phi_m = 1.1, phi_n = -0.4, d = phi_m - phi_n;
    const StateVector out = apply_single(ac_gate(phi_n), 2, apply_single(ac_gate(phi_m), 1, singlet()));
    const StateVector expected = std::cos(d / 2) * singlet() + Complex{0.0, std::sin(d / 2)} * triplet0();
    EXPECT_LT(distance(out, expected), 1e-12);
}

TEST(PairEquivalence, RandomTrials) {
    EXPECT_LT(pair_equivalence_residual(0.77, 1000), 1e-12);
    EXPECT_LT(pair_equivalence_residual_random(1000), 1e-12);
    EXPECT_THROW(pair_equivalence_residual(0.1, 0), std::invalid_argument);
}
