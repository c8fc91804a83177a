#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "probclone/synthesis.hpp"

namespace probclone {

// Outcomes below this probability carry no post-measurement state.
inline constexpr double kPostStateProbFloor = 1e-14;
// Squared-overlap threshold for recognizing a designated member.
inline constexpr double kMemberRecognitionTol = 1e-9;

/// One probe outcome of a simulated run.
struct CloneOutcome {
    int probe_index;
    double probability;
    bool success;  // probe_index == 0
    std::optional<StateVector> post_state;  // on system (x) copies, renormalized
    std::optional<double> fidelity;         // vs the member's m-fold clone; absent for non-members
};

/// Apply the machine's unitary to |input>|blank>|P_0> and project the probe
/// onto each |P_j>. Probabilities always sum to one; fidelities are filled
/// in only when the input is recognized as a designated member.
std::vector<CloneOutcome> run_exact(const CloningMachine& machine, const StateVector& input);

/// Seeded Monte Carlo sampling report. Draws come from std::mt19937_64;
/// each uniform is (rng() >> 11) * 2^-53 and the outcome is picked by
/// inverse CDF over the exact probe distribution, so a fixed seed gives
/// bit-identical reports.
struct MonteCarloReport {
    long long shots;
    long long successes;
    double empirical_rate;
    double expected_rate;  // the machine's eta
    std::uint64_t seed;
};

MonteCarloReport run_sampled(const CloningMachine& machine, int input_index, long long shots,
                             std::uint64_t seed);

/// End-to-end audit of a machine against its designated set.
struct VerificationReport {
    bool passed;
    double unitarity_residual;           // max of ||U+U - I||_F and ||UU+ - I||_F
    double factor_residual;              // ||CC+ - (X1 - eta*Xm)||_F
    double map_residual;                 // max_i ||U in_i - out_i||
    double max_probability_error;        // max_i |P(P_0 | member i) - eta|
    double max_fidelity_error;           // max_i |fidelity_i - 1|
    std::vector<double> success_probabilities;
    std::vector<double> fidelities;
};

/// Checks, for every member: success probability equals eta (1e-10), the
/// post-selected clone matches |psi_i>^(x)m (1e-10), plus the unitarity
/// (1e-10), factor (1e-10) and map (1e-9) residuals.
VerificationReport verify_machine(const CloningMachine& machine, const StateSet& set);

}  // namespace probclone
