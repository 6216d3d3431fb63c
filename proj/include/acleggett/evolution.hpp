#pragma once

// Aharonov-Casher phase dynamics for the four-particle scheme.

#include <array>
#include <cstdint>

#include "acleggett/statevec.hpp"

namespace acleggett {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Per-particle AC phases. Relative phases are derived, never stored.
class PhaseSet {
  public:
    PhaseSet() = default;
    PhaseSet(double phi1, double phi2, double phi3, double phi4) : phi_{phi1, phi2, phi3, phi4} {}

    /// Phase of particle j, 1-based.
    double phi(int j) const { return phi_.at(static_cast<std::size_t>(j - 1)); }
    const std::array<double, 4>& phases() const { return phi_; }

    /// phi1 - phi4, the relative phase at meeting point A.
    double phi_a() const { return phi_[0] - phi_[3]; }
    /// phi2 - phi3, the relative phase at meeting point B.
    double phi_b() const { return phi_[1] - phi_[2]; }
    /// (phi1 + phi4 - phi2 - phi3) / 2, the phase of the complement sector.
    double gamma() const { return (phi_[0] + phi_[3] - phi_[1] - phi_[2]) / 2.0; }

  private:
    std::array<double, 4> phi_{};
};

/// diag(e^{i phi/2}, e^{-i phi/2})
SingleSpinGate ac_gate(double phi);

/// Applies ac_gate(phi_j) to particle j, j = 1..4, on a unit-norm 4-particle state.
StateVector evolve(const StateVector& s, const PhaseSet& phases);

/// cos(delta/2) P + i sin(delta/2) Sigma^x, with P the pseudo-qubit projector.
/// Zero on the complement of span{|0bar>, |1bar>}.
Operator pseudo_rotation(double delta);

/// Projector onto span{|0bar>,|1bar>}_14 (x) span{|0bar>,|1bar>}_23, in 1423 order.
Operator pair_subspace_projector();

/// Right-hand side of the final-state decomposition in 1423 order:
/// 1/2 R(phi_A) (x) R(phi_B) (|0bar 1bar> - |1bar 0bar>) + 1/2 (e^{i gamma}|uudd> - e^{-i gamma}|dduu>).
StateVector predicted_final_state(const PhaseSet& phases);

struct SectorResidual {
    double subspace = 0.0;
    double complement = 0.0;
};

/// Sector-by-sector distance between evolve(initial_state(), phases) and
/// predicted_final_state(phases).
SectorResidual final_state_residual(const PhaseSet& phases);

/// Max norm difference between ac_gate(phi_m) (x) ac_gate(phi_n) and
/// pseudo_rotation(phi_m - phi_n) on random pair states in the pseudo-qubit span,
/// with phi_m - phi_n = delta.
double pair_equivalence_residual(double delta, int trials, std::uint64_t seed = kDefaultSeed);

/// Same check with delta also drawn at random per trial.
double pair_equivalence_residual_random(int trials, std::uint64_t seed = kDefaultSeed);

}  // namespace acleggett
