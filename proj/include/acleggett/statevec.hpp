#pragma once

// Dense state vectors for up to four spin-1/2 particles.
//
// Basis convention: amplitude index bit j encodes particle j+1, with particle 1
// in the most significant bit. Bit value 0 is |up>, 1 is |down>. For four
// particles the index of |s1 s2 s3 s4> is s1*8 + s2*4 + s3*2 + s4.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace acleggett {

using Complex = std::complex<double>;

inline constexpr int kMaxParticles = 4;
inline constexpr double kAlgebraTolerance = 1e-12;

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NonFiniteAmplitude : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class StateVector {
  public:
    /// Zero vector on `n_particles` spins.
    explicit StateVector(int n_particles);
    StateVector(int n_particles, std::vector<Complex> amps);
    StateVector(int n_particles, std::initializer_list<Complex> amps)
        : StateVector(n_particles, std::vector<Complex>(amps)) {}

    static StateVector basis(int n_particles, std::size_t index);

    int particles() const { return n_particles_; }
    std::size_t dim() const { return amps_.size(); }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm_squared() const;
    double norm() const;

    StateVector operator+(const StateVector& other) const;
    StateVector operator-(const StateVector& other) const;
    StateVector scaled(Complex factor) const;

  private:
    int n_particles_;
    std::vector<Complex> amps_;
};

inline StateVector operator*(Complex factor, const StateVector& s) { return s.scaled(factor); }

/// 2x2 matrix acting on one spin, row-major, rows/columns ordered (up, down).
struct SingleSpinGate {
    std::array<Complex, 4> m{};

    static SingleSpinGate identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
    static SingleSpinGate diagonal(Complex up, Complex down) { return {{up, 0.0, 0.0, down}}; }

    Complex operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }
    bool is_unitary(double tol = kAlgebraTolerance) const;
};

/// Dense square operator on a state space of dimension 2^n.
class Operator {
  public:
    explicit Operator(std::size_t dim);
    static Operator identity(std::size_t dim);
    /// |ket><bra|
    static Operator outer(const StateVector& ket, const StateVector& bra);

    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    Complex& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }

    Operator operator+(const Operator& other) const;
    Operator operator-(const Operator& other) const;
    Operator operator*(const Operator& other) const;
    Operator scaled(Complex factor) const;
    Operator adjoint() const;

    StateVector apply(const StateVector& s) const;
    /// Largest absolute entry difference.
    double max_abs_diff(const Operator& other) const;
    bool is_hermitian(double tol = kAlgebraTolerance) const;

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

inline Operator operator*(Complex factor, const Operator& op) { return op.scaled(factor); }

/// Kronecker product; `a` acts on the leading (more significant) factor.
Operator kron(const Operator& a, const Operator& b);

StateVector tensor(std::span<const StateVector> factors);
StateVector tensor(const StateVector& a, const StateVector& b);

/// <u|v>, conjugate-linear in u.
Complex inner(const StateVector& u, const StateVector& v);

/// Norm of u - v.
double distance(const StateVector& u, const StateVector& v);

/// |<u|v>|, used for comparisons up to a global phase.
double overlap_magnitude(const StateVector& u, const StateVector& v);

/// Applies `gate` to particle `particle` (1-based).
StateVector apply_single(const SingleSpinGate& gate, int particle, const StateVector& s);

/// Rearranges particles so that slot k (1-based) of the result holds particle
/// perm[k-1] of `s`. Reordering 1234 into 1423 uses perm = {1, 4, 2, 3}.
StateVector reorder(const StateVector& s, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

}  // namespace acleggett
