#include <iostream>

#include "CLI11.hpp"
#include "probclone/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"probabilistic cloning machines for finite sets of pure quantum states"};
    app.require_subcommand(1);

    probclone::CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "decide whether a state set is clonable");
    check->add_option("states", check_args.states_path, "state-set JSON file")->required();

    probclone::EfficiencyArgs eff_args;
    CLI::App* efficiency =
        app.add_subcommand("efficiency", "maximum cloning efficiency by two solvers");
    efficiency->add_option("states", eff_args.states_path, "state-set JSON file")->required();
    efficiency->add_option("--copies", eff_args.copies, "copies to produce (m >= 2)");

    probclone::BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "synthesize a cloning machine");
    build->add_option("states", build_args.states_path, "state-set JSON file")->required();
    build->add_option("--eta", build_args.eta, "efficiency, or \"max\" for the supremum");
    build->add_option("--copies", build_args.copies, "copies to produce (m >= 2)");
    build->add_option("-o,--output", build_args.output_path, "machine JSON file to write")
        ->required();

    probclone::SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run a machine on an input state");
    simulate->add_option("machine", sim_args.machine_path, "machine JSON file")->required();
    CLI::Option* opt_index =
        simulate->add_option("--input", sim_args.input_index, "designated state index");
    CLI::Option* opt_state =
        simulate->add_option("--state-file", sim_args.state_file, "single-state JSON file");
    opt_index->excludes(opt_state);
    opt_state->excludes(opt_index);
    simulate->add_option("--shots", sim_args.shots, "Monte Carlo shots (0 = exact only)");
    simulate->add_option("--seed", sim_args.seed, "RNG seed for --shots");

    probclone::SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "efficiency of the pair {|0>, s|0>+sqrt(1-s^2)|1>} over s");
    sweep->add_option("--overlap", sweep_args.overlap_range, "overlap grid FROM:TO:STEP")
        ->required();
    sweep->add_option("--copies", sweep_args.copies, "copies to produce (m >= 2)");
    sweep->add_option("-o,--output", sweep_args.output_path, "CSV file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : probclone::kExitInputError;
    }

    if (check->parsed()) {
        return probclone::cmd_check(check_args, std::cout, std::cerr);
    }
    if (efficiency->parsed()) {
        return probclone::cmd_efficiency(eff_args, std::cout, std::cerr);
    }
    if (build->parsed()) {
        return probclone::cmd_build(build_args, std::cout, std::cerr);
    }
    if (simulate->parsed()) {
        return probclone::cmd_simulate(sim_args, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return probclone::cmd_sweep(sweep_args, std::cout, std::cerr);
    }
    return probclone::kExitInputError;
}
