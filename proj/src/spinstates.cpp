#include "acleggett/spinstates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace acleggett {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

Direction Direction::equatorial(double azimuth) { return {std::numbers::pi / 2.0, azimuth}; }

StateVector ket_up() { return StateVector::basis(1, 0); }
StateVector ket_down() { return StateVector::basis(1, 1); }

StateVector bloch_plus(const Direction& d) {
    const Complex phase = std::polar(1.0, d.theta);
    return StateVector(1, {std::cos(d.xi / 2.0), std::sin(d.xi / 2.0) * phase});
}

StateVector bloch_minus(const Direction& d) {
    const Complex phase = std::polar(1.0, d.theta);
    return StateVector(1, {std::sin(d.xi / 2.0), -std::cos(d.xi / 2.0) * phase});
}

StateVector singlet() { return StateVector(2, {0.0, kInvSqrt2, -kInvSqrt2, 0.0}); }

StateVector triplet0() { return StateVector(2, {0.0, kInvSqrt2, kInvSqrt2, 0.0}); }

StateVector pseudo_pair_state(int index, const Direction& d) {
    if (index != 0 && index != 1) {
        throw std::invalid_argument("pseudo-qubit index must be 0 or 1, got " +
                                    std::to_string(index));
    }
    const StateVector plus = bloch_plus(d);
    const StateVector minus = bloch_minus(d);
    const StateVector pm = tensor(plus, minus);
    const StateVector mp = tensor(minus, plus);
    return (index == 0 ? pm - mp : pm + mp).scaled(kInvSqrt2);
}

Operator pseudo_pauli(Axis axis) {
    const StateVector zero = singlet();
    const StateVector one = triplet0();
    const Operator zero_one = Operator::outer(zero, one);
    const Operator one_zero = Operator::outer(one, zero);
    switch (axis) {
        case Axis::x:
            return zero_one + one_zero;
        case Axis::y:
            return Complex{0.0, -1.0} * (zero_one - one_zero);
        case Axis::z:
            return Operator::outer(zero, zero) - Operator::outer(one, one);
    }
    throw std::invalid_argument("unknown axis");
}

Operator pseudo_identity() {
    return Operator::outer(singlet(), singlet()) + Operator::outer(triplet0(), triplet0());
}

Operator pseudo_linear(const Vec3& a) {
    return Complex{a[0]} * pseudo_pauli(Axis::x) + Complex{a[1]} * pseudo_pauli(Axis::y) +
           Complex{a[2]} * pseudo_pauli(Axis::z);
}

Operator pseudo_dot(const Vec3& a, double tol) {
    if (std::abs(norm(a) - 1.0) > tol) {
        throw std::invalid_argument("pseudo_dot needs a unit vector, |a| = " +
                                    std::to_string(norm(a)));
    }
    return pseudo_linear(a);
}

StateVector initial_state() { return tensor(singlet(), triplet0()); }

}  // namespace acleggett
