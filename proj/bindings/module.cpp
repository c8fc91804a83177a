#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "probclone/feasibility.hpp"
#include "probclone/io.hpp"
#include "probclone/simulator.hpp"
#include "probclone/states.hpp"
#include "probclone/synthesis.hpp"

namespace py = pybind11;
using namespace probclone;

PYBIND11_MODULE(_core, m) {
    m.doc() = "probabilistic cloning of finite sets of pure quantum states";

    // Specific errors are registered after the base so their translators run
    // first; index and parse problems map onto the native Python kinds.
    const py::exception<Error> base_exc(m, "CloningError", PyExc_RuntimeError);
    py::register_exception<ZeroVectorError>(m, "ZeroVectorError", base_exc.ptr());
    py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", base_exc.ptr());
    py::register_exception<DependentSetError>(m, "DependentSetError", base_exc.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base_exc.ptr());
    py::register_exception<NearDependentError>(m, "NearDependentError", base_exc.ptr());
    py::register_exception<GramMismatchError>(m, "GramMismatchError", base_exc.ptr());
    py::register_exception<NotOrthonormalError>(m, "NotOrthonormalError", base_exc.ptr());
    py::register_exception<IndexOutOfRangeError>(m, "IndexOutOfRangeError", PyExc_IndexError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<Vector>(), py::arg("amplitudes"))
        .def_property_readonly("dim", &StateVector::dim)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes(); })
        .def("__getitem__",
             [](const StateVector& s, Eigen::Index i) {
                 if (i < 0 || i >= s.amplitudes().size()) {
                     throw IndexOutOfRangeError("amplitude index out of range");
                 }
                 return s[i];
             })
        .def("__len__", &StateVector::dim)
        .def("__repr__", [](const StateVector& s) {
            std::ostringstream repr;
            repr << "StateVector(dim=" << s.dim() << ")";
            return repr.str();
        });

    py::class_<StateSet>(m, "StateSet")
        .def(py::init<std::vector<StateVector>>(), py::arg("states"))
        .def_property_readonly("dim", &StateSet::dim)
        .def("__len__", &StateSet::size)
        .def("__getitem__",
             [](const StateSet& set, int i) {
                 if (i < 0 || i >= set.size()) {
                     throw IndexOutOfRangeError("state index out of range");
                 }
                 return set[i];
             })
        .def("__repr__", [](const StateSet& set) {
            std::ostringstream repr;
            repr << "StateSet(n=" << set.size() << ", dim=" << set.dim() << ")";
            return repr.str();
        });

    py::class_<GramMatrix>(m, "GramMatrix")
        .def_property_readonly("power", &GramMatrix::power)
        .def_property_readonly("order", &GramMatrix::order)
        .def_property_readonly("entries",
                               [](const GramMatrix& g) { return g.entries(); });

    py::class_<IndependenceVerdict>(m, "IndependenceVerdict")
        .def_readonly("independent", &IndependenceVerdict::independent)
        .def_readonly("min_eigenvalue", &IndependenceVerdict::min_eigenvalue);

    py::class_<FeasibilityCheck>(m, "FeasibilityCheck")
        .def_readonly("feasible", &FeasibilityCheck::feasible)
        .def_readonly("min_eigenvalue", &FeasibilityCheck::min_eigenvalue);

    py::enum_<EfficiencyMethod>(m, "EfficiencyMethod")
        .value("eigen", EfficiencyMethod::eigen)
        .value("bisection", EfficiencyMethod::bisection);

    py::class_<FeasibilityReport>(m, "FeasibilityReport")
        .def_readonly("eta_star", &FeasibilityReport::eta_star)
        .def_readonly("copies", &FeasibilityReport::copies)
        .def_readonly("min_eigenvalue_at_eta", &FeasibilityReport::min_eigenvalue_at_eta)
        .def_readonly("method", &FeasibilityReport::method)
        .def_readonly("independent", &FeasibilityReport::independent);

    py::class_<ConstantsMatrix>(m, "ConstantsMatrix")
        .def_readonly("entries", &ConstantsMatrix::entries)
        .def_readonly("eta", &ConstantsMatrix::eta)
        .def_property_readonly("order", &ConstantsMatrix::order);

    py::class_<OrthonormalizationResult>(m, "OrthonormalizationResult")
        .def_readonly("ortho", &OrthonormalizationResult::ortho)
        .def_readonly("coeffs", &OrthonormalizationResult::coeffs);

    py::class_<CloningMachine>(m, "CloningMachine")
        .def_readonly("system_dim", &CloningMachine::system_dim)
        .def_readonly("copies", &CloningMachine::copies)
        .def_readonly("n_states", &CloningMachine::n_states)
        .def_readonly("probe_dim", &CloningMachine::probe_dim)
        .def_readonly("eta", &CloningMachine::eta)
        .def_readonly("blank", &CloningMachine::blank)
        .def_readonly("constants", &CloningMachine::constants)
        .def_readonly("unitary", &CloningMachine::unitary)
        .def_readonly("fill_state_index", &CloningMachine::fill_state_index)
        .def_readonly("states", &CloningMachine::states)
        .def_property_readonly("composite_dim", &CloningMachine::composite_dim)
        .def("composite_input", &CloningMachine::composite_input, py::arg("input"))
        .def("expected_output", &CloningMachine::expected_output, py::arg("member_index"));

    py::class_<CloneOutcome>(m, "CloneOutcome")
        .def_readonly("probe_index", &CloneOutcome::probe_index)
        .def_readonly("probability", &CloneOutcome::probability)
        .def_readonly("success", &CloneOutcome::success)
        .def_readonly("post_state", &CloneOutcome::post_state)
        .def_readonly("fidelity", &CloneOutcome::fidelity);

    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("shots", &MonteCarloReport::shots)
        .def_readonly("successes", &MonteCarloReport::successes)
        .def_readonly("empirical_rate", &MonteCarloReport::empirical_rate)
        .def_readonly("expected_rate", &MonteCarloReport::expected_rate)
        .def_readonly("seed", &MonteCarloReport::seed);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("passed", &VerificationReport::passed)
        .def_readonly("unitarity_residual", &VerificationReport::unitarity_residual)
        .def_readonly("factor_residual", &VerificationReport::factor_residual)
        .def_readonly("map_residual", &VerificationReport::map_residual)
        .def_readonly("max_probability_error", &VerificationReport::max_probability_error)
        .def_readonly("max_fidelity_error", &VerificationReport::max_fidelity_error)
        .def_readonly("success_probabilities", &VerificationReport::success_probabilities)
        .def_readonly("fidelities", &VerificationReport::fidelities);

    m.def("make_state", [](const Vector& amplitudes) { return make_state(amplitudes); },
          py::arg("amplitudes"));
    m.def("basis_state", &basis_state, py::arg("dim"), py::arg("index"));
    m.def("inner", &inner, py::arg("a"), py::arg("b"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("tensor",
          [](const StateVector& a, const StateVector& b) { return tensor(a, b); },
          py::arg("a"), py::arg("b"));
    m.def("tensor_power", &tensor_power, py::arg("state"), py::arg("m"));
    m.def("gram", &gram, py::arg("set"), py::arg("power"));
    m.def("is_linearly_independent", &is_linearly_independent, py::arg("set"),
          py::arg("tol") = kIndependenceTol);
    m.def("is_feasible", &is_feasible, py::arg("x1"), py::arg("xm"), py::arg("eta"),
          py::arg("tol") = kFeasibilityTol);
    m.def("max_efficiency_eigen", &max_efficiency_eigen, py::arg("x1"), py::arg("xm"),
          py::arg("tol") = kIndependenceTol);
    m.def("max_efficiency_bisect", &max_efficiency_bisect, py::arg("x1"), py::arg("xm"),
          py::arg("tol") = kBisectionTol);
    m.def("constants_matrix", &constants_matrix, py::arg("x1"), py::arg("xm"), py::arg("eta"));
    m.def("gram_schmidt", &gram_schmidt, py::arg("vectors"), py::arg("tol") = kGramSchmidtTol);
    m.def("apply_coeffs", &apply_coeffs, py::arg("targets"), py::arg("coeffs"));
    m.def("complete_unitary", &complete_unitary, py::arg("domain_ortho"), py::arg("range_ortho"));
    m.def(
        "build_machine",
        [](const StateSet& set, double eta, int copies, std::optional<StateVector> blank,
           int fill_state_index) {
            BuildOptions options;
            options.blank = std::move(blank);
            options.fill_state_index = fill_state_index;
            return build_machine(set, eta, copies, options);
        },
        py::arg("set"), py::arg("eta"), py::arg("copies") = 2, py::arg("blank") = py::none(),
        py::arg("fill_state_index") = 0);
    m.def("run_exact", &run_exact, py::arg("machine"), py::arg("input"));
    m.def("run_sampled", &run_sampled, py::arg("machine"), py::arg("input_index"),
          py::arg("shots"), py::arg("seed") = 1);
    m.def("verify_machine", &verify_machine, py::arg("machine"), py::arg("set"));
    m.def("load_state_set", &load_state_set, py::arg("path"));
    m.def("save_state_set", &save_state_set, py::arg("set"), py::arg("path"));
    m.def("load_machine", &load_machine, py::arg("path"));
    m.def("save_machine", &save_machine, py::arg("machine"), py::arg("path"));

    m.attr("MACHINE_FORMAT_TAG") = kMachineFormatTag;
    m.attr("INDEX_CONVENTION_TAG") = kIndexConventionTag;
}
