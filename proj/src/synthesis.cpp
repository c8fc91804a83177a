#include "probclone/synthesis.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace probclone {

namespace {

void require_same_dims(const std::vector<Vector>& vectors, const char* what) {
    if (vectors.empty()) {
        throw DimensionMismatchError(std::string(what) + ": empty family");
    }
    const Eigen::Index dim = vectors.front().size();
    for (const Vector& v : vectors) {
        if (v.size() != dim) {
            throw DimensionMismatchError(std::string(what) + ": mixed vector dimensions");
        }
    }
}

Matrix family_gram(const std::vector<Vector>& vectors) {
    const int n = static_cast<int>(vectors.size());
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = vectors[static_cast<std::size_t>(i)].dot(vectors[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

double max_orthonormality_deviation(const std::vector<Vector>& vectors) {
    const Matrix g = family_gram(vectors);
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// Extend an orthonormal family to a full orthonormal basis by sweeping the
// standard basis in index order. Residuals are orthogonalized twice to keep
// the completed basis orthonormal well below the unitarity budget.
std::vector<Vector> extend_to_basis(const std::vector<Vector>& family, Eigen::Index dim) {
    std::vector<Vector> basis = family;
    basis.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index b = 0; b < dim && basis.size() < static_cast<std::size_t>(dim); ++b) {
        Vector v = Vector::Zero(dim);
        v(b) = Complex(1.0, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& q : basis) {
                v -= q.dot(v) * q;
            }
        }
        const double residual = v.norm();
        if (residual > kGramSchmidtTol) {
            basis.push_back(v / residual);
        }
    }
    if (basis.size() != static_cast<std::size_t>(dim)) {
        throw Error("basis extension failed to span the space");
    }
    return basis;
}

int64_t checked_composite_dim(int system_dim, int copies, int n_states) {
    int64_t d = n_states + 1;
    for (int k = 0; k < copies; ++k) {
        d *= system_dim;
        if (d > kMaxCompositeDim) {
            std::ostringstream msg;
            msg << "composite dimension " << system_dim << "^" << copies << " * " << (n_states + 1)
                << " exceeds the limit " << kMaxCompositeDim
                << "; reduce the dimension, copy count, or set size";
            throw Error(msg.str());
        }
    }
    return d;
}

}  // namespace

OrthonormalizationResult gram_schmidt(const std::vector<Vector>& vectors, double tol) {
    require_same_dims(vectors, "gram_schmidt");
    const int n = static_cast<int>(vectors.size());
    OrthonormalizationResult result;
    result.ortho.reserve(static_cast<std::size_t>(n));
    result.coeffs = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const Vector& v = vectors[static_cast<std::size_t>(j)];
        Vector residual = v;
        for (int k = 0; k < j; ++k) {
            const Complex coeff = result.ortho[static_cast<std::size_t>(k)].dot(v);
            result.coeffs(k, j) = coeff;
            residual -= coeff * result.ortho[static_cast<std::size_t>(k)];
        }
        const double gamma = residual.norm();
        if (gamma <= tol) {
            std::ostringstream msg;
            msg << "vector " << (j + 1) << " is numerically dependent on its predecessors"
                << " (residual norm " << gamma << ")";
            throw NearDependentError(msg.str(), j + 1);
        }
        result.coeffs(j, j) = gamma;
        result.ortho.push_back(residual / gamma);
    }
    return result;
}

std::vector<Vector> apply_coeffs(const std::vector<Vector>& targets, const Matrix& coeffs) {
    require_same_dims(targets, "apply_coeffs");
    const int n = static_cast<int>(targets.size());
    if (coeffs.rows() != n || coeffs.cols() != n) {
        throw DimensionMismatchError("coefficient matrix order does not match the target family");
    }
    // The recorded coefficients encode the original family's Gram matrix as
    // coeffs+ * coeffs; the recursion transfers orthonormality only when the
    // targets reproduce those inner products.
    const Matrix expected = coeffs.adjoint() * coeffs;
    const double gram_dev = (family_gram(targets) - expected).cwiseAbs().maxCoeff();
    if (gram_dev > kGramMatchTol) {
        std::ostringstream msg;
        msg << "target inner products deviate from the recorded ones by " << gram_dev;
        throw GramMismatchError(msg.str());
    }
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Vector v = targets[static_cast<std::size_t>(j)];
        for (int k = 0; k < j; ++k) {
            v -= coeffs(k, j) * out[static_cast<std::size_t>(k)];
        }
        const Complex gamma = coeffs(j, j);
        if (std::abs(gamma) <= 0.0) {
            throw GramMismatchError("coefficient diagonal contains a zero");
        }
        out.push_back(v / gamma);
    }
    const double ortho_dev = max_orthonormality_deviation(out);
    if (ortho_dev > kGramMatchTol) {
        std::ostringstream msg;
        msg << "recursion produced a non-orthonormal family (deviation " << ortho_dev << ")";
        throw NotOrthonormalError(msg.str());
    }
    return out;
}

Matrix complete_unitary(const std::vector<Vector>& domain_ortho,
                        const std::vector<Vector>& range_ortho) {
    require_same_dims(domain_ortho, "complete_unitary domain");
    require_same_dims(range_ortho, "complete_unitary range");
    if (domain_ortho.size() != range_ortho.size()) {
        throw DimensionMismatchError("domain and range families have different sizes");
    }
    const Eigen::Index dim = domain_ortho.front().size();
    if (range_ortho.front().size() != dim) {
        throw DimensionMismatchError("domain and range live in different spaces");
    }
    if (static_cast<Eigen::Index>(domain_ortho.size()) > dim) {
        throw NotOrthonormalError("family size exceeds the space dimension");
    }
    const double domain_dev = max_orthonormality_deviation(domain_ortho);
    if (domain_dev > kOrthonormalTol) {
        std::ostringstream msg;
        msg << "domain family is not orthonormal (deviation " << domain_dev << ")";
        throw NotOrthonormalError(msg.str());
    }
    const double range_dev = max_orthonormality_deviation(range_ortho);
    if (range_dev > kOrthonormalTol) {
        std::ostringstream msg;
        msg << "range family is not orthonormal (deviation " << range_dev << ")";
        throw NotOrthonormalError(msg.str());
    }

    const std::vector<Vector> domain_full = extend_to_basis(domain_ortho, dim);
    const std::vector<Vector> range_full = extend_to_basis(range_ortho, dim);

    Matrix domain_mat(dim, dim);
    Matrix range_mat(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        domain_mat.col(j) = domain_full[static_cast<std::size_t>(j)];
        range_mat.col(j) = range_full[static_cast<std::size_t>(j)];
    }
    Matrix u = range_mat * domain_mat.adjoint();

    const Matrix identity = Matrix::Identity(dim, dim);
    const double residual =
        std::max((u.adjoint() * u - identity).norm(), (u * u.adjoint() - identity).norm());
    if (residual > kFeasibilityTol) {
        std::ostringstream msg;
        msg << "completed operator is not unitary (residual " << residual << ")";
        throw NotOrthonormalError(msg.str());
    }
    return u;
}

Vector CloningMachine::composite_input(const StateVector& input) const {
    if (input.dim() != system_dim) {
        std::ostringstream msg;
        msg << "input dimension " << input.dim() << " does not match the machine's " << system_dim;
        throw DimensionMismatchError(msg.str());
    }
    Vector probe_ready = Vector::Zero(probe_dim);
    probe_ready(0) = Complex(1.0, 0.0);
    return tensor(tensor(input.amplitudes(), blank.amplitudes()), probe_ready);
}

Vector CloningMachine::expected_output(int member_index) const {
    if (member_index < 0 || member_index >= n_states) {
        std::ostringstream msg;
        msg << "member index " << member_index << " out of range [0, " << n_states << ")";
        throw IndexOutOfRangeError(msg.str());
    }
    const Vector clone = tensor_power(states[member_index], copies).amplitudes();
    Vector out = Vector::Zero(clone.size() * probe_dim);
    const double amp = std::sqrt(eta);
    for (Eigen::Index s = 0; s < clone.size(); ++s) {
        out(s * probe_dim) = amp * clone(s);
    }
    // Failure branches all land on |e_f>^(x)m. The coefficient attached to
    // probe outcome j is conj(C_ij): the inter-inner-product identity needs
    // sum_j conj(c_ij) c_kj = (X1 - eta*Xm)_ik, which the Hermitian factor
    // satisfies in this orientation for complex Gram matrices too.
    Eigen::Index fill_system_index = 0;
    for (int k = 0; k < copies; ++k) {
        fill_system_index = fill_system_index * system_dim + fill_state_index;
    }
    for (int j = 1; j <= n_states; ++j) {
        out(fill_system_index * probe_dim + j) = std::conj(constants.entries(member_index, j - 1));
    }
    return out;
}

CloningMachine build_machine(const StateSet& set, double eta, int copies,
                             const BuildOptions& options) {
    if (copies < 2) {
        throw Error("a cloning machine needs at least 2 copies");
    }
    const int n = set.size();
    const int system_dim = set.dim();
    checked_composite_dim(system_dim, copies, n);

    const IndependenceVerdict verdict = is_linearly_independent(set);
    if (!verdict.independent) {
        std::ostringstream msg;
        msg << "the state set is linearly dependent (min Gram eigenvalue "
            << verdict.min_eigenvalue << "); no machine exists at positive efficiency";
        throw DependentSetError(msg.str());
    }

    const GramMatrix x1 = gram(set, 1);
    const GramMatrix xm = gram(set, copies);
    const FeasibilityCheck check = is_feasible(x1, xm, eta);
    if (!check.feasible) {
        std::ostringstream msg;
        msg << "efficiency " << eta << " is infeasible (min eigenvalue " << check.min_eigenvalue
            << ")";
        throw InfeasibleError(msg.str(), check.min_eigenvalue);
    }

    int64_t blank_dim = 1;
    for (int k = 1; k < copies; ++k) {
        blank_dim *= system_dim;
    }
    StateVector blank =
        options.blank ? *options.blank : basis_state(static_cast<int>(blank_dim), 0);
    if (blank.dim() != blank_dim) {
        std::ostringstream msg;
        msg << "blank state dimension " << blank.dim() << " must be " << blank_dim;
        throw DimensionMismatchError(msg.str());
    }
    if (options.fill_state_index < 0 || options.fill_state_index >= system_dim) {
        std::ostringstream msg;
        msg << "fill state index " << options.fill_state_index << " out of range [0, "
            << system_dim << ")";
        throw IndexOutOfRangeError(msg.str());
    }

    CloningMachine machine{system_dim,
                           copies,
                           n,
                           n + 1,
                           eta,
                           std::move(blank),
                           constants_matrix(x1, xm, eta),
                           Matrix(),
                           options.fill_state_index,
                           set};

    std::vector<Vector> inputs;
    std::vector<Vector> outputs;
    inputs.reserve(static_cast<std::size_t>(n));
    outputs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        inputs.push_back(machine.composite_input(set[i]));
        outputs.push_back(machine.expected_output(i));
    }

    // The two families must share all pairwise inner products before the
    // orthonormalization transfer; this equality is the feasibility
    // condition restated on the composite space.
    const double gram_dev = (family_gram(inputs) - family_gram(outputs)).cwiseAbs().maxCoeff();
    if (gram_dev > kGramMatchTol) {
        std::ostringstream msg;
        msg << "input/output inner products disagree by " << gram_dev;
        throw GramMismatchError(msg.str());
    }

    const OrthonormalizationResult gs = gram_schmidt(inputs);
    const std::vector<Vector> range = apply_coeffs(outputs, gs.coeffs);
    machine.unitary = complete_unitary(gs.ortho, range);
    return machine;
}

}  // namespace probclone
