#include "acleggett/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace acleggett {

namespace {

std::size_t dimension_for(int n_particles) {
    if (n_particles < 1 || n_particles > kMaxParticles) {
        throw DimensionMismatch("particle count must be in [1, 4], got " +
                                std::to_string(n_particles));
    }
    return std::size_t{1} << n_particles;
}

void require_same_dim(const StateVector& u, const StateVector& v, const char* what) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(u.dim()) +
                                " and " + std::to_string(v.dim()) + " differ");
    }
}

}  // namespace

StateVector::StateVector(int n_particles)
    : n_particles_(n_particles), amps_(dimension_for(n_particles), Complex{0.0, 0.0}) {}

StateVector::StateVector(int n_particles, std::vector<Complex> amps)
    : n_particles_(n_particles), amps_(std::move(amps)) {
    if (amps_.size() != dimension_for(n_particles)) {
        throw DimensionMismatch("state of " + std::to_string(n_particles) + " particles needs " +
                                std::to_string(dimension_for(n_particles)) + " amplitudes, got " +
                                std::to_string(amps_.size()));
    }
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NonFiniteAmplitude("state vector amplitude is not finite");
        }
    }
}

StateVector StateVector::basis(int n_particles, std::size_t index) {
    std::vector<Complex> amps(dimension_for(n_particles), Complex{0.0, 0.0});
    if (index >= amps.size()) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
    }
    amps[index] = 1.0;
    return StateVector(n_particles, std::move(amps));
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::operator+(const StateVector& other) const {
    require_same_dim(*this, other, "add");
    std::vector<Complex> out(amps_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.amps_[i];
    return StateVector(n_particles_, std::move(out));
}

StateVector StateVector::operator-(const StateVector& other) const {
    require_same_dim(*this, other, "subtract");
    std::vector<Complex> out(amps_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.amps_[i];
    return StateVector(n_particles_, std::move(out));
}

StateVector StateVector::scaled(Complex factor) const {
    std::vector<Complex> out(amps_);
    for (auto& a : out) a *= factor;
    return StateVector(n_particles_, std::move(out));
}

bool SingleSpinGate::is_unitary(double tol) const {
    // (G^dagger G)_{rc} = sum_k conj(G_kr) G_kc
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 2; ++k) acc += std::conj((*this)(k, r)) * (*this)(k, c);
            const Complex expected = (r == c) ? 1.0 : 0.0;
            if (std::abs(acc - expected) > tol) return false;
        }
    }
    return true;
}

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = 1.0;
    return op;
}

Operator Operator::outer(const StateVector& ket, const StateVector& bra) {
    require_same_dim(ket, bra, "outer");
    Operator op(ket.dim());
    for (std::size_t r = 0; r < ket.dim(); ++r) {
        for (std::size_t c = 0; c < bra.dim(); ++c) op.at(r, c) = ket[r] * std::conj(bra[c]);
    }
    return op;
}

Operator Operator::operator+(const Operator& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("operator add: dimension mismatch");
    Operator out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Operator Operator::operator-(const Operator& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("operator subtract: dimension mismatch");
    Operator out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

Operator Operator::operator*(const Operator& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("operator product: dimension mismatch");
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex lhs = (*this)(r, k);
            if (lhs == Complex{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) += lhs * other(k, c);
        }
    }
    return out;
}

Operator Operator::scaled(Complex factor) const {
    Operator out(*this);
    for (auto& x : out.data_) x *= factor;
    return out;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) out.at(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

StateVector Operator::apply(const StateVector& s) const {
    if (s.dim() != dim_) {
        throw DimensionMismatch("operator of dimension " + std::to_string(dim_) +
                                " applied to state of dimension " + std::to_string(s.dim()));
    }
    std::vector<Complex> out(dim_, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * s[c];
    }
    return StateVector(s.particles(), std::move(out));
}

double Operator::max_abs_diff(const Operator& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("operator compare: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

bool Operator::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

Operator kron(const Operator& a, const Operator& b) {
    const std::size_t n = a.dim() * b.dim();
    Operator out(n);
    for (std::size_t ar = 0; ar < a.dim(); ++ar) {
        for (std::size_t ac = 0; ac < a.dim(); ++ac) {
            const Complex x = a(ar, ac);
            if (x == Complex{0.0, 0.0}) continue;
            for (std::size_t br = 0; br < b.dim(); ++br) {
                for (std::size_t bc = 0; bc < b.dim(); ++bc) {
                    out.at(ar * b.dim() + br, ac * b.dim() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

StateVector tensor(std::span<const StateVector> factors) {
    if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
    int total = 0;
    for (const auto& f : factors) total += f.particles();
    if (total > kMaxParticles) {
        throw DimensionMismatch("tensor: combined particle count " + std::to_string(total) +
                                " exceeds " + std::to_string(kMaxParticles));
    }
    std::vector<Complex> acc(factors.front().amplitudes().begin(),
                             factors.front().amplitudes().end());
    for (std::size_t f = 1; f < factors.size(); ++f) {
        const auto rhs = factors[f].amplitudes();
        std::vector<Complex> next(acc.size() * rhs.size());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; j < rhs.size(); ++j) next[i * rhs.size() + j] = acc[i] * rhs[j];
        }
        acc = std::move(next);
    }
    return StateVector(total, std::move(acc));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const std::array<StateVector, 2> factors{a, b};
    return tensor(std::span<const StateVector>(factors));
}

Complex inner(const StateVector& u, const StateVector& v) {
    require_same_dim(u, v, "inner");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double distance(const StateVector& u, const StateVector& v) { return (u - v).norm(); }

double overlap_magnitude(const StateVector& u, const StateVector& v) { return std::abs(inner(u, v)); }

StateVector apply_single(const SingleSpinGate& gate, int particle, const StateVector& s) {
    const int n = s.particles();
    if (particle < 1 || particle > n) {
        throw std::out_of_range("particle index " + std::to_string(particle) + " outside [1, " +
                                std::to_string(n) + "]");
    }
    const std::size_t mask = std::size_t{1} << (n - particle);
    std::vector<Complex> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (i & mask) continue;
        const Complex up = s[i];
        const Complex down = s[i | mask];
        out[i] = gate(0, 0) * up + gate(0, 1) * down;
        out[i | mask] = gate(1, 0) * up + gate(1, 1) * down;
    }
    return StateVector(n, std::move(out));
}

namespace {

void validate_permutation(std::span<const int> perm, int n) {
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permutation has " + std::to_string(perm.size()) +
                                    " entries for " + std::to_string(n) + " particles");
    }
    if (n > kMaxParticles) throw std::invalid_argument("permutation longer than 4 particles");
    std::array<bool, kMaxParticles + 1> seen{};
    for (int p : perm) {
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p)]) {
            throw std::invalid_argument("invalid permutation of particles");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
}

}  // namespace

StateVector reorder(const StateVector& s, std::span<const int> perm) {
    const int n = s.particles();
    validate_permutation(perm, n);
    std::vector<Complex> out(s.dim());
    for (std::size_t src = 0; src < s.dim(); ++src) {
        std::size_t dst = 0;
        for (int slot = 1; slot <= n; ++slot) {
            const int particle = perm[static_cast<std::size_t>(slot - 1)];
            const std::size_t bit = (src >> (n - particle)) & 1U;
            dst |= bit << (n - slot);
        }
        out[dst] = s[src];
    }
    return StateVector(n, std::move(out));
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    validate_permutation(perm, n);
    std::vector<int> inv(perm.size());
    for (int slot = 1; slot <= n; ++slot) inv[static_cast<std::size_t>(perm[slot - 1] - 1)] = slot;
    return inv;
}

}  // namespace acleggett
