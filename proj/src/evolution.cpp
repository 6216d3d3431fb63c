#include "acleggett/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "acleggett/spinstates.hpp"

namespace acleggett {

SingleSpinGate ac_gate(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("ac_gate: phase is not finite");
    return SingleSpinGate::diagonal(std::polar(1.0, phi / 2.0), std::polar(1.0, -phi / 2.0));
}

StateVector evolve(const StateVector& s, const PhaseSet& phases) {
    if (s.particles() != 4) {
        throw DimensionMismatch("evolve expects a 4-particle state");
    }
    if (std::abs(s.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("evolve expects a unit-norm state");
    }
    StateVector out = s;
    for (int j = 1; j <= 4; ++j) out = apply_single(ac_gate(phases.phi(j)), j, out);
    return out;
}

Operator pseudo_rotation(double delta) {
    if (!std::isfinite(delta)) throw std::invalid_argument("pseudo_rotation: angle is not finite");
    return Complex{std::cos(delta / 2.0)} * pseudo_identity() +
           Complex{0.0, std::sin(delta / 2.0)} * pseudo_pauli(Axis::x);
}

Operator pair_subspace_projector() { return kron(pseudo_identity(), pseudo_identity()); }

StateVector predicted_final_state(const PhaseSet& phases) {
    const StateVector pseudo_singlet =
        tensor(singlet(), triplet0()) - tensor(triplet0(), singlet());
    const Operator rotation = kron(pseudo_rotation(phases.phi_a()), pseudo_rotation(phases.phi_b()));
    const StateVector subspace = rotation.apply(pseudo_singlet).scaled(0.5);

    const StateVector uudd = StateVector::basis(4, 0b0011);
    const StateVector dduu = StateVector::basis(4, 0b1100);
    const double g = phases.gamma();
    const StateVector complement =
        (std::polar(1.0, g) * uudd - std::polar(1.0, -g) * dduu).scaled(0.5);
    return subspace + complement;
}

SectorResidual final_state_residual(const PhaseSet& phases) {
    const StateVector actual = reorder(evolve(initial_state(), phases), kOrder1423);
    const StateVector expected = predicted_final_state(phases);
    const Operator projector = pair_subspace_projector();

    const StateVector actual_sub = projector.apply(actual);
    const StateVector expected_sub = projector.apply(expected);
    return {distance(actual_sub, expected_sub),
            distance(actual - actual_sub, expected - expected_sub)};
}

namespace {

StateVector random_pseudo_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Complex alpha{gauss(rng), gauss(rng)};
    const Complex beta{gauss(rng), gauss(rng)};
    const StateVector s = alpha * singlet() + beta * triplet0();
    return s.scaled(1.0 / s.norm());
}

double pair_trial(double delta, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const double phi_n = angle(rng);
    const double phi_m = phi_n + delta;
    const StateVector s = random_pseudo_qubit(rng);
    const StateVector gates = apply_single(ac_gate(phi_n), 2, apply_single(ac_gate(phi_m), 1, s));
    return distance(gates, pseudo_rotation(delta).apply(s));
}

}  // namespace

double pair_equivalence_residual(double delta, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("pair_equivalence_residual: trials must be >= 1");
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) worst = std::max(worst, pair_trial(delta, rng));
    return worst;
}

double pair_equivalence_residual_random(int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("pair_equivalence_residual: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double delta = angle(rng);
        worst = std::max(worst, pair_trial(delta, rng));
    }
    return worst;
}

}  // namespace acleggett
