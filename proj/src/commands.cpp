#include "probclone/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "probclone/feasibility.hpp"
#include "probclone/io.hpp"
#include "probclone/simulator.hpp"
#include "probclone/states.hpp"
#include "probclone/synthesis.hpp"

namespace probclone {

namespace {

// Largest off-diagonal overlap magnitude; zero means orthonormal states.
double max_offdiagonal(const GramMatrix& x1) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < x1.entries().rows(); ++i) {
        for (Eigen::Index j = i + 1; j < x1.entries().cols(); ++j) {
            best = std::max(best, std::abs(x1.entries()(i, j)));
        }
    }
    return best;
}

bool parse_double(const std::string& text, double& value) {
    std::istringstream in(text);
    in >> value;
    return static_cast<bool>(in) && in.eof();
}

}  // namespace

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const StateSet set = load_state_set(args.states_path);
        const IndependenceVerdict verdict = is_linearly_independent(set);
        out << std::setprecision(7);
        out << "states: " << set.size() << " in dimension " << set.dim() << "\n";
        out << "min Gram eigenvalue: " << verdict.min_eigenvalue << "\n";
        if (verdict.independent) {
            out << "verdict: linearly independent; clonable with positive efficiency\n";
            return kExitOk;
        }
        out << "verdict: linearly dependent; no probabilistic cloner exists for this set\n";
        return kExitDependentVerdict;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_efficiency(const EfficiencyArgs& args, std::ostream& out, std::ostream& err) {
    if (args.copies < 2) {
        err << "error: --copies must be at least 2\n";
        return kExitInputError;
    }
    try {
        const StateSet set = load_state_set(args.states_path);
        const GramMatrix x1 = gram(set, 1);
        const GramMatrix xm = gram(set, args.copies);
        const FeasibilityReport eigen = max_efficiency_eigen(x1, xm);
        const FeasibilityReport bisect = max_efficiency_bisect(x1, xm);
        out << std::setprecision(7);
        out << "states: " << set.size() << " in dimension " << set.dim() << ", copies: "
            << args.copies << "\n";
        if (!eigen.independent) {
            out << "the set is linearly dependent; maximum efficiency is 0\n";
            return kExitDependentVerdict;
        }
        out << "eta* (eigenvalue solver): " << eigen.eta_star << "\n";
        out << "eta* (bisection solver):  " << bisect.eta_star << "\n";
        out << "solver difference: " << std::abs(eigen.eta_star - bisect.eta_star) << "\n";
        if (max_offdiagonal(x1) <= 1e-10) {
            out << "orthonormal set: deterministic cloning at unit efficiency\n";
        } else {
            out << "non-orthogonal set: maximum efficiency lies strictly below 1\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
    if (args.copies < 2) {
        err << "error: --copies must be at least 2\n";
        return kExitInputError;
    }
    std::optional<StateSet> set;
    try {
        set = load_state_set(args.states_path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    double eta = 0.0;
    if (args.eta == "max") {
        const FeasibilityReport report =
            max_efficiency_eigen(gram(*set, 1), gram(*set, args.copies));
        // Back off an epsilon so the boundary case stays inside feasibility.
        eta = report.eta_star * (1.0 - 1e-9);
    } else if (!parse_double(args.eta, eta) || eta < 0.0 || eta > 1.0) {
        err << "error: --eta must be \"max\" or a value in [0, 1]\n";
        return kExitInputError;
    }

    try {
        const CloningMachine machine = build_machine(*set, eta, args.copies);
        const VerificationReport report = verify_machine(machine, machine.states);
        save_machine(machine, args.output_path);
        out << std::setprecision(7);
        out << "built machine: dimension " << machine.system_dim << ", " << machine.copies
            << " copies, " << machine.n_states << " states, composite dimension "
            << machine.composite_dim() << "\n";
        out << "eta: " << machine.eta << "\n";
        out << "unitarity residual: " << report.unitarity_residual << "\n";
        out << "map residual: " << report.map_residual << "\n";
        out << "verification: " << (report.passed ? "passed" : "failed") << "\n";
        out << "wrote " << args.output_path << "\n";
        return report.passed ? kExitOk : kExitInputError;
    } catch (const DependentSetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBuildInfeasible;
    } catch (const InfeasibleError& e) {
        err << std::setprecision(7);
        err << "error: " << e.what() << "\n";
        err << "min eigenvalue of X1 - eta*Xm: " << e.min_eigenvalue() << "\n";
        return kExitBuildInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    if (args.input_index.has_value() == args.state_file.has_value()) {
        err << "error: give exactly one of --input and --state-file\n";
        return kExitInputError;
    }
    try {
        const CloningMachine machine = load_machine(args.machine_path);
        std::string input_label;
        std::optional<StateVector> input;
        if (args.input_index) {
            if (*args.input_index < 0 || *args.input_index >= machine.n_states) {
                err << "error: input index " << *args.input_index << " out of range [0, "
                    << machine.n_states << ")\n";
                return kExitInputError;
            }
            input = machine.states[*args.input_index];
            std::ostringstream label;
            label << "designated state " << *args.input_index;
            input_label = label.str();
        } else {
            const StateSet file_states = load_state_set(*args.state_file);
            if (file_states.size() != 1) {
                err << "error: " << *args.state_file << " must contain exactly one state\n";
                return kExitInputError;
            }
            input = file_states[0];
            input_label = *args.state_file;
        }

        const std::vector<CloneOutcome> outcomes = run_exact(machine, *input);
        out << std::setprecision(7);
        out << "machine: dimension " << machine.system_dim << ", " << machine.copies
            << " copies, " << machine.n_states << " states, eta " << machine.eta << "\n";
        out << "input: " << input_label << "\n";
        out << "probe  probability    success  fidelity\n";
        double total = 0.0;
        for (const CloneOutcome& o : outcomes) {
            total += o.probability;
            out << "P" << o.probe_index << "     " << std::left << std::setw(14)
                << o.probability << std::right << " " << (o.success ? "yes    " : "no     ")
                << "  ";
            if (o.fidelity) {
                out << *o.fidelity;
            } else {
                out << "n/a";
            }
            out << "\n";
        }
        out << "total probability: " << total << "\n";

        if (args.shots > 0) {
            if (!args.input_index) {
                err << "error: --shots needs --input (sampling is defined for designated"
                       " states)\n";
                return kExitInputError;
            }
            const MonteCarloReport mc =
                run_sampled(machine, *args.input_index, args.shots, args.seed);
            out << "shots: " << mc.shots << " (seed " << mc.seed << ")\n";
            out << "successes: " << mc.successes << "\n";
            out << "empirical success rate: " << mc.empirical_rate << "\n";
            out << "expected success rate:  " << mc.expected_rate << "\n";
            out << "difference: " << std::abs(mc.empirical_rate - mc.expected_rate) << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    if (args.copies < 2) {
        err << "error: --copies must be at least 2\n";
        return kExitInputError;
    }
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    {
        std::istringstream in(args.overlap_range);
        char c1 = 0;
        char c2 = 0;
        in >> from >> c1 >> to >> c2 >> step;
        if (!in || !in.eof() || c1 != ':' || c2 != ':') {
            err << "error: --overlap must look like FROM:TO:STEP\n";
            return kExitInputError;
        }
    }
    if (!(from >= 0.0 && from <= to && to < 1.0 && step > 0.0)) {
        err << "error: need 0 <= FROM <= TO < 1 and STEP > 0\n";
        return kExitInputError;
    }

    std::ofstream csv(args.output_path);
    if (!csv) {
        err << "error: cannot open " << args.output_path << " for writing\n";
        return kExitInputError;
    }
    csv << "s,eta_eigen,eta_bisect,delta\n" << std::setprecision(17);
    int rows = 0;
    for (int k = 0;; ++k) {
        double s = from + static_cast<double>(k) * step;
        if (s > to + 1e-12) {
            break;
        }
        s = std::min(s, to);
        const StateSet pair(
            {basis_state(2, 0), StateVector{Complex(s, 0.0), Complex(std::sqrt(1.0 - s * s), 0.0)}});
        const GramMatrix x1 = gram(pair, 1);
        const GramMatrix xm = gram(pair, args.copies);
        const FeasibilityReport eigen = max_efficiency_eigen(x1, xm);
        const FeasibilityReport bisect = max_efficiency_bisect(x1, xm);
        csv << s << ',' << eigen.eta_star << ',' << bisect.eta_star << ','
            << std::abs(eigen.eta_star - bisect.eta_star) << '\n';
        ++rows;
    }
    out << "wrote " << rows << " rows to " << args.output_path << "\n";
    return kExitOk;
}

}  // namespace probclone
