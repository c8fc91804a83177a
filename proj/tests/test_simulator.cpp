#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "probclone/simulator.hpp"
#include "support.hpp"

using namespace probclone;

namespace {

StateSet overlap_pair(double s) {
    return StateSet(
        {basis_state(2, 0), StateVector{Complex(s, 0.0), Complex(std::sqrt(1 - s * s), 0.0)}});
}

}  // namespace

TEST_CASE("exact run reproduces the designed statistics") {
    const StateSet pair = overlap_pair(0.5);
    const double eta = 0.5;
    const CloningMachine machine = build_machine(pair, eta, 2);

    for (int i = 0; i < 2; ++i) {
        const std::vector<CloneOutcome> outcomes = run_exact(machine, pair[i]);
        REQUIRE(outcomes.size() == 3);
        CHECK(outcomes[0].probe_index == 0);
        CHECK(outcomes[0].success);
        CHECK_FALSE(outcomes[1].success);
        CHECK(outcomes[0].probability == doctest::Approx(eta).epsilon(1e-12));

        double total = 0.0;
        for (const CloneOutcome& o : outcomes) {
            total += o.probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        REQUIRE(outcomes[0].fidelity.has_value());
        CHECK(*outcomes[0].fidelity == doctest::Approx(1.0).epsilon(1e-12));

        REQUIRE(outcomes[0].post_state.has_value());
        const Vector clone = tensor_power(pair[i], 2).amplitudes();
        CHECK(std::norm(clone.dot(outcomes[0].post_state->amplitudes())) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("failure branches collapse onto the fill state") {
    const StateSet pair = overlap_pair(0.5);
    const CloningMachine machine = build_machine(pair, 0.5, 2);
    const std::vector<CloneOutcome> outcomes = run_exact(machine, pair[0]);
    const Vector fill = tensor_power(basis_state(2, machine.fill_state_index), 2).amplitudes();
    for (int j = 1; j < 3; ++j) {
        if (!outcomes[static_cast<std::size_t>(j)].post_state) {
            continue;
        }
        const double overlap = std::norm(
            fill.dot(outcomes[static_cast<std::size_t>(j)].post_state->amplitudes()));
        CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("non-member inputs get probabilities but no fidelity") {
    const StateSet pair = overlap_pair(0.5);
    const CloningMachine machine = build_machine(pair, 0.5, 2);
    const StateVector outsider{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const std::vector<CloneOutcome> outcomes = run_exact(machine, outsider);
    double total = 0.0;
    for (const CloneOutcome& o : outcomes) {
        total += o.probability;
        CHECK_FALSE(o.fidelity.has_value());
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(run_exact(machine, basis_state(3, 0)), DimensionMismatchError);
}

TEST_CASE("sampling is reproducible and unbiased") {
    const StateSet pair = overlap_pair(0.5);
    const CloningMachine machine = build_machine(pair, 2.0 / 3.0, 2);

    const MonteCarloReport a = run_sampled(machine, 0, 100000, 42);
    const MonteCarloReport b = run_sampled(machine, 0, 100000, 42);
    CHECK(a.successes == b.successes);
    CHECK(a.empirical_rate == b.empirical_rate);
    CHECK(a.seed == 42);
    CHECK(a.shots == 100000);
    CHECK(a.expected_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const double sigma = std::sqrt(a.expected_rate * (1 - a.expected_rate) / 100000.0);
    CHECK(std::abs(a.empirical_rate - a.expected_rate) <= 5 * sigma);

    const MonteCarloReport c = run_sampled(machine, 0, 100000, 43);
    CHECK(c.successes != a.successes);
}

TEST_CASE("sampling validates its arguments") {
    const StateSet pair = overlap_pair(0.5);
    const CloningMachine machine = build_machine(pair, 0.5, 2);
    CHECK_THROWS_AS(run_sampled(machine, 2, 10, 1), IndexOutOfRangeError);
    CHECK_THROWS_AS(run_sampled(machine, -1, 10, 1), IndexOutOfRangeError);
    CHECK_THROWS_AS(run_sampled(machine, 0, 0, 1), Error);
}

TEST_CASE("verification passes for honest machines") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const StateSet set = testsupport::random_independent_set(rng, 3, 3);
        const double eta_star =
            max_efficiency_eigen(gram(set, 1), gram(set, 2)).eta_star;
        const CloningMachine machine = build_machine(set, eta_star / 2, 2);
        const VerificationReport report = verify_machine(machine, set);
        CHECK(report.passed);
        CHECK(report.unitarity_residual <= 1e-10);
        CHECK(report.factor_residual <= 1e-10);
        CHECK(report.map_residual <= 1e-9);
        CHECK(report.max_probability_error <= 1e-10);
        CHECK(report.max_fidelity_error <= 1e-10);
        CHECK(report.success_probabilities.size() == 3);
        CHECK(report.fidelities.size() == 3);
    }
}

TEST_CASE("verification flags tampered machines") {
    const StateSet pair = overlap_pair(0.5);
    CloningMachine machine = build_machine(pair, 0.5, 2);

    CloningMachine bent = machine;
    bent.unitary(0, 0) += Complex(1e-3, 0.0);
    const VerificationReport broken_unitary = verify_machine(bent, pair);
    CHECK_FALSE(broken_unitary.passed);
    CHECK(broken_unitary.unitarity_residual > 1e-10);

    CloningMachine skewed = machine;
    skewed.constants.entries(0, 0) += Complex(1e-3, 0.0);
    const VerificationReport broken_factor = verify_machine(skewed, pair);
    CHECK_FALSE(broken_factor.passed);
    CHECK(broken_factor.factor_residual > 1e-10);
}
