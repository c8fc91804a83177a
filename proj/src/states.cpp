#include "probclone/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <utility>

namespace probclone {

namespace detail {

double min_hermitian_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double max_hermitian_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

}  // namespace detail

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ZeroVectorError("state vector needs at least one amplitude");
    }
    const double norm = amplitudes_.norm();
    if (norm < kZeroNormTol) {
        std::ostringstream msg;
        msg << "cannot normalize a zero vector (norm " << norm << ")";
        throw ZeroVectorError(msg.str());
    }
    amplitudes_ /= norm;
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Eigen::Map<const Vector>(amplitudes.begin(),
                                           static_cast<Eigen::Index>(amplitudes.size()))) {}

StateVector StateVector::from_normalized(Vector amplitudes) {
    if (amplitudes.size() == 0) {
        throw ZeroVectorError("state vector needs at least one amplitude");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "amplitudes are not normalized (norm " << norm << ")";
        throw ZeroVectorError(msg.str());
    }
    return StateVector(std::move(amplitudes), NormalizedTag{});
}

StateVector make_state(const Vector& amplitudes) { return StateVector(amplitudes); }

StateVector make_state(const std::vector<Complex>& amplitudes) {
    return StateVector(
        Eigen::Map<const Vector>(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size())));
}

StateVector basis_state(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim) {
        std::ostringstream msg;
        msg << "basis index " << index << " out of range for dimension " << dim;
        throw IndexOutOfRangeError(msg.str());
    }
    Vector v = Vector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return StateVector(std::move(v));
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("inner product of states with different dimensions");
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the first factor
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

Vector tensor(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    return StateVector(tensor(a.amplitudes(), b.amplitudes()));
}

StateVector tensor_power(const StateVector& a, int m) {
    if (m < 1) {
        throw IndexOutOfRangeError("tensor power requires m >= 1");
    }
    Vector acc = a.amplitudes();
    for (int k = 1; k < m; ++k) {
        acc = tensor(acc, a.amplitudes());
    }
    return StateVector(std::move(acc));
}

StateSet::StateSet(std::vector<StateVector> states) : states_(std::move(states)) {
    if (states_.empty()) {
        throw DimensionMismatchError("a state set needs at least one state");
    }
    dim_ = states_.front().dim();
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (states_[i].dim() != dim_) {
            std::ostringstream msg;
            msg << "state " << i << " has dimension " << states_[i].dim() << ", expected " << dim_;
            throw DimensionMismatchError(msg.str());
        }
    }
}

GramMatrix::GramMatrix(int power, Matrix entries) : power_(power) {
    if (power < 1) {
        throw IndexOutOfRangeError("Gram power must be >= 1");
    }
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw DimensionMismatchError("Gram matrix must be square and nonempty");
    }
    const Eigen::Index n = entries.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(entries(i, i) - Complex(1.0, 0.0)) > kNormTol) {
            throw DimensionMismatchError("Gram diagonal must be one (normalized states)");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(entries(i, j) - std::conj(entries(j, i))) > kNormTol) {
                throw DimensionMismatchError("Gram matrix must be Hermitian");
            }
        }
    }
    // Mirror the upper triangle so Hermiticity holds exactly.
    entries_ = entries;
    for (Eigen::Index i = 0; i < n; ++i) {
        entries_(i, i) = Complex(1.0, 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            entries_(j, i) = std::conj(entries_(i, j));
        }
    }
    const double min_eig = detail::min_hermitian_eigenvalue(entries_);
    if (min_eig < kPsdFloor) {
        std::ostringstream msg;
        msg << "Gram matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
        throw DimensionMismatchError(msg.str());
    }
}

GramMatrix gram(const StateSet& set, int power) {
    if (power < 1) {
        throw IndexOutOfRangeError("Gram power must be >= 1");
    }
    const int n = set.size();
    Matrix entries(n, n);
    for (int i = 0; i < n; ++i) {
        entries(i, i) = Complex(1.0, 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex overlap = inner(set[i], set[j]);
            Complex powered(1.0, 0.0);
            for (int k = 0; k < power; ++k) {
                powered *= overlap;
            }
            entries(i, j) = powered;
            entries(j, i) = std::conj(powered);
        }
    }
    return GramMatrix(power, std::move(entries));
}

IndependenceVerdict is_linearly_independent(const StateSet& set, double tol) {
    const double min_eig = detail::min_hermitian_eigenvalue(gram(set, 1).entries());
    return IndependenceVerdict{min_eig > tol, min_eig};
}

}  // namespace probclone
