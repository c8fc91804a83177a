#include "probclone/simulator.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace probclone {

namespace {

Vector probe_component(const Vector& composite, int probe_dim, int probe_index) {
    const Eigen::Index system_size = composite.size() / probe_dim;
    Vector component(system_size);
    for (Eigen::Index s = 0; s < system_size; ++s) {
        component(s) = composite(s * probe_dim + probe_index);
    }
    return component;
}

}  // namespace

std::vector<CloneOutcome> run_exact(const CloningMachine& machine, const StateVector& input) {
    const Vector evolved = machine.unitary * machine.composite_input(input);

    // Fidelity is reported against |Psi_i>^(x)m only when the input is one of
    // the designated states; for anything else there is no ideal clone.
    int member = -1;
    for (int i = 0; i < machine.n_states; ++i) {
        if (fidelity(input, machine.states[i]) >= 1.0 - kMemberRecognitionTol) {
            member = i;
            break;
        }
    }
    Vector ideal;
    if (member >= 0) {
        ideal = tensor_power(machine.states[member], machine.copies).amplitudes();
    }

    std::vector<CloneOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(machine.probe_dim));
    for (int j = 0; j < machine.probe_dim; ++j) {
        const Vector component = probe_component(evolved, machine.probe_dim, j);
        CloneOutcome outcome;
        outcome.probe_index = j;
        outcome.probability = component.squaredNorm();
        outcome.success = (j == 0);
        if (outcome.probability >= kPostStateProbFloor) {
            outcome.post_state = StateVector(component);
            if (member >= 0) {
                const Complex overlap = ideal.dot(outcome.post_state->amplitudes());
                outcome.fidelity = std::norm(overlap);
            }
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

MonteCarloReport run_sampled(const CloningMachine& machine, int input_index, long long shots,
                             std::uint64_t seed) {
    if (input_index < 0 || input_index >= machine.n_states) {
        std::ostringstream msg;
        msg << "input index " << input_index << " out of range [0, " << machine.n_states << ")";
        throw IndexOutOfRangeError(msg.str());
    }
    if (shots < 1) {
        throw Error("shot count must be at least 1");
    }

    const std::vector<CloneOutcome> outcomes = run_exact(machine, machine.states[input_index]);
    std::vector<double> cumulative;
    cumulative.reserve(outcomes.size());
    double acc = 0.0;
    for (const CloneOutcome& outcome : outcomes) {
        acc += outcome.probability;
        cumulative.push_back(acc);
    }

    // Sampling identity: mt19937_64 seeded directly, uniforms via the top 53
    // bits, inverse CDF over the exact outcome distribution. Fixed so that a
    // (seed, shots) pair reproduces bit-identical counts everywhere.
    std::mt19937_64 rng(seed);
    long long successes = 0;
    for (long long shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t drawn = cumulative.size() - 1;
        for (std::size_t j = 0; j < cumulative.size(); ++j) {
            if (u < cumulative[j]) {
                drawn = j;
                break;
            }
        }
        if (outcomes[drawn].success) {
            ++successes;
        }
    }

    MonteCarloReport report;
    report.shots = shots;
    report.successes = successes;
    report.empirical_rate = static_cast<double>(successes) / static_cast<double>(shots);
    report.expected_rate = machine.eta;
    report.seed = seed;
    return report;
}

VerificationReport verify_machine(const CloningMachine& machine, const StateSet& set) {
    VerificationReport report;
    const Eigen::Index dim = machine.unitary.rows();
    const Matrix identity = Matrix::Identity(dim, dim);
    report.unitarity_residual =
        std::max((machine.unitary.adjoint() * machine.unitary - identity).norm(),
                 (machine.unitary * machine.unitary.adjoint() - identity).norm());

    const GramMatrix x1 = gram(set, 1);
    const GramMatrix xm = gram(set, machine.copies);
    const Matrix target = x1.entries() - machine.eta * xm.entries();
    report.factor_residual =
        (machine.constants.entries * machine.constants.entries.adjoint() - target).norm();

    report.map_residual = 0.0;
    report.max_probability_error = 0.0;
    report.max_fidelity_error = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        const Vector mapped = machine.unitary * machine.composite_input(set[i]);
        report.map_residual =
            std::max(report.map_residual, (mapped - machine.expected_output(i)).norm());

        const std::vector<CloneOutcome> outcomes = run_exact(machine, set[i]);
        const double p0 = outcomes.front().probability;
        report.success_probabilities.push_back(p0);
        report.max_probability_error =
            std::max(report.max_probability_error, std::abs(p0 - machine.eta));

        if (outcomes.front().post_state) {
            const Vector ideal = tensor_power(set[i], machine.copies).amplitudes();
            const double fid = std::norm(ideal.dot(outcomes.front().post_state->amplitudes()));
            report.fidelities.push_back(fid);
            report.max_fidelity_error = std::max(report.max_fidelity_error, std::abs(fid - 1.0));
        }
    }

    report.passed = report.unitarity_residual <= 1e-10 && report.factor_residual <= 1e-10 &&
                    report.max_probability_error <= 1e-10 && report.max_fidelity_error <= 1e-10 &&
                    report.map_residual <= 1e-9;
    return report;
}

}  // namespace probclone
