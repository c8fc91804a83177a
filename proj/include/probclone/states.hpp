#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "probclone/errors.hpp"

namespace probclone {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Norm below which an amplitude vector counts as zero.
inline constexpr double kZeroNormTol = 1e-14;
// Unit-norm invariant tolerance for constructed states.
inline constexpr double kNormTol = 1e-12;
// Default threshold on the minimum Gram eigenvalue for independence.
inline constexpr double kIndependenceTol = 1e-10;
// Gram matrices may dip this far below zero before they are rejected.
inline constexpr double kPsdFloor = -1e-10;

/// A normalized pure state on an N-dimensional Hilbert space.
///
/// Construction rescales the amplitudes to unit Euclidean norm; a vector
/// with norm below kZeroNormTol is rejected with ZeroVectorError.
class StateVector {
public:
    explicit StateVector(Vector amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    /// Adopt amplitudes already at unit norm (within kNormTol) bit-exactly,
    /// skipping the rescale; out-of-tolerance input is rejected.
    static StateVector from_normalized(Vector amplitudes);

    int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

private:
    struct NormalizedTag {};
    StateVector(Vector amplitudes, NormalizedTag) : amplitudes_(std::move(amplitudes)) {}

    Vector amplitudes_;
};

/// Normalize a raw amplitude list into a StateVector.
StateVector make_state(const Vector& amplitudes);
StateVector make_state(const std::vector<Complex>& amplitudes);

/// Standard basis state |index> in the given dimension.
StateVector basis_state(int dim, int index);

/// <a|b>, antilinear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// Squared overlap |<a|b>|^2; insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// Tensor product a (x) b; the second factor's index varies fastest.
StateVector tensor(const StateVector& a, const StateVector& b);
Vector tensor(const Vector& a, const Vector& b);

/// m-fold tensor power |a>^(x)m (m >= 1).
StateVector tensor_power(const StateVector& a, int m);

/// An ordered collection of states sharing one Hilbert-space dimension.
///
/// More states than dimensions is legal input; such sets are necessarily
/// dependent and are rejected downstream by feasibility, not here.
class StateSet {
public:
    explicit StateSet(std::vector<StateVector> states);

    int dim() const noexcept { return dim_; }
    int size() const noexcept { return static_cast<int>(states_.size()); }
    const StateVector& operator[](int i) const { return states_.at(static_cast<std::size_t>(i)); }

    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }
    const std::vector<StateVector>& states() const noexcept { return states_; }

private:
    int dim_;
    std::vector<StateVector> states_;
};

/// Hermitian matrix of pairwise inner products raised to an integer power.
///
/// Entries are mirrored from the upper triangle so Hermiticity is exact,
/// the diagonal is exactly one, and the minimum eigenvalue must clear
/// kPsdFloor (Gram matrices of tensor powers are positive semidefinite).
class GramMatrix {
public:
    GramMatrix(int power, Matrix entries);

    int order() const noexcept { return static_cast<int>(entries_.rows()); }
    int power() const noexcept { return power_; }
    const Matrix& entries() const noexcept { return entries_; }

private:
    int power_;
    Matrix entries_;
};

/// Gram matrix with entries <psi_i|psi_j>^power.
GramMatrix gram(const StateSet& set, int power);

struct IndependenceVerdict {
    bool independent;
    double min_eigenvalue;  // of the power-1 Gram matrix
};

/// Linear independence test via the minimum Gram eigenvalue.
IndependenceVerdict is_linearly_independent(const StateSet& set, double tol = kIndependenceTol);

namespace detail {
// Smallest eigenvalue of a Hermitian matrix (values only).
double min_hermitian_eigenvalue(const Matrix& m);
// Largest eigenvalue of a Hermitian matrix (values only).
double max_hermitian_eigenvalue(const Matrix& m);
}  // namespace detail

}  // namespace probclone
