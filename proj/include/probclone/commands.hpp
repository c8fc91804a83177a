#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace probclone {

// Exit-code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitDependentVerdict = 2;
inline constexpr int kExitBuildInfeasible = 3;

struct CheckArgs {
    std::string states_path;
};

struct EfficiencyArgs {
    std::string states_path;
    int copies = 2;
};

struct BuildArgs {
    std::string states_path;
    std::string eta = "max";  // "max" or a decimal value
    int copies = 2;
    std::string output_path;
};

struct SimulateArgs {
    std::string machine_path;
    std::optional<int> input_index;
    std::optional<std::string> state_file;
    long long shots = 0;
    std::uint64_t seed = 1;
};

struct SweepArgs {
    std::string overlap_range;  // FROM:TO:STEP
    int copies = 2;
    std::string output_path;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_efficiency(const EfficiencyArgs& args, std::ostream& out, std::ostream& err);
int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

}  // namespace probclone
