#include "probclone/feasibility.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace probclone {

namespace {

void require_compatible(const GramMatrix& x1, const GramMatrix& xm) {
    if (x1.order() != xm.order()) {
        std::ostringstream msg;
        msg << "Gram matrices have different orders: " << x1.order() << " vs " << xm.order();
        throw DimensionMismatchError(msg.str());
    }
}

void require_probability(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "efficiency must lie in [0, 1], got " << eta;
        throw InfeasibleError(msg.str(), 0.0);
    }
}

double min_eig_at(const GramMatrix& x1, const GramMatrix& xm, double eta) {
    return detail::min_hermitian_eigenvalue(x1.entries() - eta * xm.entries());
}

FeasibilityReport report_at(const GramMatrix& x1, const GramMatrix& xm, double eta_star,
                            EfficiencyMethod method, bool independent) {
    const double probe_eta = std::max(0.0, eta_star - 1e-9);
    return FeasibilityReport{eta_star, xm.power(), min_eig_at(x1, xm, probe_eta), method,
                             independent};
}

}  // namespace

FeasibilityCheck is_feasible(const GramMatrix& x1, const GramMatrix& xm, double eta, double tol) {
    require_compatible(x1, xm);
    require_probability(eta);
    const double min_eig = min_eig_at(x1, xm, eta);
    return FeasibilityCheck{min_eig >= -tol, min_eig};
}

FeasibilityReport max_efficiency_eigen(const GramMatrix& x1, const GramMatrix& xm, double tol) {
    require_compatible(x1, xm);
    const double x1_min = detail::min_hermitian_eigenvalue(x1.entries());
    if (x1_min <= tol) {
        // Dependent set: reported, not thrown, so the CLI verdict path stays exception-free.
        return report_at(x1, xm, 0.0, EfficiencyMethod::eigen, false);
    }
    if (x1.order() == 1) {
        // A single known state is clonable with certainty.
        return report_at(x1, xm, 1.0, EfficiencyMethod::eigen, true);
    }
    // Whiten: with W = X1^(-1/2) Xm X1^(-1/2), feasibility of eta is
    // I - eta*W >= 0, so the supremum is 1/lambda_max(W), clamped to 1
    // because eta is a probability.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(x1.entries());
    const Eigen::VectorXd eigs = solver.eigenvalues();
    Matrix inv_sqrt =
        solver.eigenvectors() *
        eigs.cwiseSqrt().cwiseInverse().asDiagonal() *
        solver.eigenvectors().adjoint();
    Matrix whitened = inv_sqrt * xm.entries() * inv_sqrt;
    whitened = ((whitened + whitened.adjoint()) / 2.0).eval();
    const double lambda_max = detail::max_hermitian_eigenvalue(whitened);
    const double eta_star = std::min(1.0, 1.0 / lambda_max);
    return report_at(x1, xm, eta_star, EfficiencyMethod::eigen, true);
}

FeasibilityReport max_efficiency_bisect(const GramMatrix& x1, const GramMatrix& xm, double tol) {
    require_compatible(x1, xm);
    const double x1_min = detail::min_hermitian_eigenvalue(x1.entries());
    if (x1_min <= kIndependenceTol) {
        return report_at(x1, xm, 0.0, EfficiencyMethod::bisection, false);
    }
    if (is_feasible(x1, xm, 1.0).feasible) {
        return report_at(x1, xm, 1.0, EfficiencyMethod::bisection, true);
    }
    double lo = 0.0;  // feasible: X1 itself is positive-definite here
    double hi = 1.0;  // infeasible
    while (hi - lo > tol) {
        const double mid = (lo + hi) / 2.0;
        if (is_feasible(x1, xm, mid).feasible) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return report_at(x1, xm, lo, EfficiencyMethod::bisection, true);
}

ConstantsMatrix constants_matrix(const GramMatrix& x1, const GramMatrix& xm, double eta) {
    require_compatible(x1, xm);
    require_probability(eta);
    const Matrix m = x1.entries() - eta * xm.entries();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const Eigen::VectorXd eigs = solver.eigenvalues();
    const double min_eig = eigs.minCoeff();
    if (min_eig < -kFeasibilityTol) {
        std::ostringstream msg;
        msg << "no factor exists at efficiency " << eta << " (min eigenvalue " << min_eig << ")";
        throw InfeasibleError(msg.str(), min_eig);
    }
    // Hermitian PSD square root; eigenvalues inside the tolerance band are
    // clamped to zero so the square root stays real.
    Eigen::VectorXd clamped = eigs.cwiseMax(0.0);
    Matrix c = solver.eigenvectors() * clamped.cwiseSqrt().asDiagonal() *
               solver.eigenvectors().adjoint();
    c = ((c + c.adjoint()) / 2.0).eval();
    const double residual = (c * c.adjoint() - m).norm();
    if (residual > kFactorTol) {
        std::ostringstream msg;
        msg << "factor residual " << residual << " exceeds tolerance";
        throw InfeasibleError(msg.str(), min_eig);
    }
    return ConstantsMatrix{std::move(c), eta};
}

}  // namespace probclone
