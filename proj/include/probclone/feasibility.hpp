#pragma once

#include "probclone/states.hpp"

namespace probclone {

// Eigenvalue tolerance for positive-semidefiniteness checks.
inline constexpr double kFeasibilityTol = 1e-10;
// Convergence tolerance for the bisection solver.
inline constexpr double kBisectionTol = 1e-10;
// Frobenius bound on ||CC+ - (X1 - eta*Xm)|| for a constructed factor.
inline constexpr double kFactorTol = 1e-10;

struct FeasibilityCheck {
    bool feasible;
    double min_eigenvalue;  // of X1 - eta*Xm
};

/// True iff X1 - eta*Xm is positive semidefinite within tol, in which case
/// a factor C with CC+ = X1 - eta*Xm exists.
FeasibilityCheck is_feasible(const GramMatrix& x1, const GramMatrix& xm, double eta,
                             double tol = kFeasibilityTol);

enum class EfficiencyMethod { eigen, bisection };

struct FeasibilityReport {
    double eta_star = 0.0;
    int copies = 2;
    double min_eigenvalue_at_eta = 0.0;  // of X1 - eta*Xm at eta_star - 1e-9 (clamped to >= 0)
    EfficiencyMethod method = EfficiencyMethod::eigen;
    bool independent = false;
};

/// Maximum cloning efficiency from the whitened eigenproblem:
/// eta* = min(1, 1 / lambda_max(X1^(-1/2) Xm X1^(-1/2))).
///
/// Dependent inputs (minimum eigenvalue of X1 at or below tol) report
/// eta_star = 0 with independent = false instead of throwing.
FeasibilityReport max_efficiency_eigen(const GramMatrix& x1, const GramMatrix& xm,
                                       double tol = kIndependenceTol);

/// Same supremum by bisecting is_feasible over eta in [0, 1]; the
/// independent oracle for max_efficiency_eigen.
FeasibilityReport max_efficiency_bisect(const GramMatrix& x1, const GramMatrix& xm,
                                        double tol = kBisectionTol);

/// Factor of the feasibility condition at a given efficiency.
///
/// Built as the Hermitian positive-semidefinite square root of
/// M = X1 - eta*Xm, so CC+ = M holds to kFactorTol.
struct ConstantsMatrix {
    Matrix entries;
    double eta = 0.0;

    int order() const noexcept { return static_cast<int>(entries.rows()); }
};

ConstantsMatrix constants_matrix(const GramMatrix& x1, const GramMatrix& xm, double eta);

}  // namespace probclone
