#pragma once

// Named spin states and the pseudo-qubit operator algebra.
//
// A spin pair is treated as one "pseudo-qubit" on span{|0bar>, |1bar>} with
// |0bar> = singlet and |1bar> = triplet (M = 0). Pseudo-Pauli operators act on
// the pair's 4-dim space and vanish on the orthogonal complement.

#include <array>

#include "acleggett/statevec.hpp"
#include "acleggett/vec3.hpp"

namespace acleggett {

/// Measurement direction n = (sin xi cos theta, sin xi sin theta, cos xi).
struct Direction {
    double xi = 0.0;     ///< polar angle
    double theta = 0.0;  ///< azimuth

    Vec3 unit_vector() const { return spherical_unit(xi, theta); }
    static Direction z_axis() { return {0.0, 0.0}; }
    static Direction equatorial(double azimuth);
};

/// Particle order used for the pair measurement: pair (1,4) then pair (2,3).
inline constexpr std::array<int, 4> kOrder1423{1, 4, 2, 3};

StateVector ket_up();
StateVector ket_down();

/// |+n> = cos(xi/2)|up> + sin(xi/2) e^{i theta}|down>
StateVector bloch_plus(const Direction& d);
/// |-n> = sin(xi/2)|up> - cos(xi/2) e^{i theta}|down>
StateVector bloch_minus(const Direction& d);

/// (|up,down> - |down,up>)/sqrt2
StateVector singlet();
/// (|up,down> + |down,up>)/sqrt2
StateVector triplet0();

/// index 0: (|+n,-n> - |-n,+n>)/sqrt2, index 1: (|+n,-n> + |-n,+n>)/sqrt2.
StateVector pseudo_pair_state(int index, const Direction& d);

enum class Axis { x, y, z };

/// Sigma^x = |0><1| + |1><0|, Sigma^y = -i(|0><1| - |1><0|), Sigma^z = |0><0| - |1><1|.
Operator pseudo_pauli(Axis axis);

/// Projector onto span{|0bar>, |1bar>} of a pair.
Operator pseudo_identity();

/// a.Sigma for a unit vector; throws std::invalid_argument if |a| deviates from 1 by more than tol.
Operator pseudo_dot(const Vec3& a, double tol = 1e-9);

/// a.Sigma without the unit-length check (linear in a).
Operator pseudo_linear(const Vec3& a);

/// |0,0>_12 (x) |1,0>_34 in 1234 particle order.
StateVector initial_state();

}  // namespace acleggett
