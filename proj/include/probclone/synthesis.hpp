#pragma once

#include <optional>
#include <vector>

#include "probclone/feasibility.hpp"
#include "probclone/states.hpp"

namespace probclone {

// Residual-norm threshold below which Gram-Schmidt rejects a vector.
inline constexpr double kGramSchmidtTol = 1e-10;
// Allowed deviation when matching a target family's inner products.
inline constexpr double kGramMatchTol = 1e-9;
// Orthonormality requirement on families handed to complete_unitary.
inline constexpr double kOrthonormalTol = 1e-10;
// build_machine refuses composite dimensions above this.
inline constexpr int kMaxCompositeDim = 4096;

/// Orthonormal family plus the upper-triangular coefficients that
/// reconstruct the original vectors: original_j = sum_{k<=j} coeffs(k,j) * ortho_k,
/// with the residual norms gamma_j on the diagonal.
struct OrthonormalizationResult {
    std::vector<Vector> ortho;
    Matrix coeffs;
};

/// Classical Gram-Schmidt: subtract projections onto the previously
/// produced vectors, normalize by the residual norm gamma_j.
/// Throws NearDependentError(j) when gamma_j <= tol at step j (1-based).
OrthonormalizationResult gram_schmidt(const std::vector<Vector>& vectors,
                                      double tol = kGramSchmidtTol);

/// Re-runs the recorded recursion on a target family whose pairwise inner
/// products match the original family's (checked against coeffs+ * coeffs
/// within kGramMatchTol, else GramMismatchError). The outputs are
/// orthonormal by the matching hypothesis; this is asserted, not assumed.
std::vector<Vector> apply_coeffs(const std::vector<Vector>& targets, const Matrix& coeffs);

/// Unitary with U * domain_i = range_i for two orthonormal k-families in
/// dimension D. Each family is extended to a full orthonormal basis by
/// orthogonalizing standard basis vectors in index order (skipping
/// residuals <= kGramSchmidtTol) and pairing the extensions in order, so
/// identical inputs always produce the same matrix.
Matrix complete_unitary(const std::vector<Vector>& domain_ortho,
                        const std::vector<Vector>& range_ortho);

/// The synthesized cloning machine: a unitary on system (x) copies (x) probe
/// plus everything needed to run and audit it.
///
/// Composite index convention: index = system_index * probe_dim + probe,
/// where system_index runs row-major over the m copy slots (first copy
/// slowest, probe fastest).
struct CloningMachine {
    int system_dim;        // N
    int copies;            // m >= 2
    int n_states;          // n
    int probe_dim;         // n + 1
    double eta;
    StateVector blank;     // dimension N^(m-1)
    ConstantsMatrix constants;
    Matrix unitary;        // D x D, D = N^m * (n + 1)
    int fill_state_index;  // basis index f; failure branches land on |e_f>^(x)m
    StateSet states;       // the designated set the machine was built for

    int composite_dim() const noexcept { return static_cast<int>(unitary.rows()); }

    /// |input> (x) |blank> (x) |P_0> on the composite space.
    Vector composite_input(const StateVector& input) const;

    /// The image of member i under the machine's defining map:
    /// sqrt(eta) |psi_i>^(x)m |P_0> + sum_j conj(C_ij) |e_f>^(x)m |P_j>.
    Vector expected_output(int member_index) const;
};

struct BuildOptions {
    std::optional<StateVector> blank;  // default |e_0>^(x)(m-1)
    int fill_state_index = 0;          // in [0, N)
};

/// Construct the full machine for an independent set at a feasible eta.
CloningMachine build_machine(const StateSet& set, double eta, int copies,
                             const BuildOptions& options = {});

}  // namespace probclone
