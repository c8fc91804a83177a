#pragma once

#include <filesystem>

#include "probclone/synthesis.hpp"

namespace probclone {

// Machine files carry this tag so readers can verify the layout.
inline constexpr const char* kMachineFormatTag = "probclone-machine-v1";
inline constexpr const char* kIndexConventionTag = "copies-row-major-probe-fastest";

/// Read a state-set file: {"dimension": N, "states": [[[re,im], ...], ...]}.
/// Malformed input raises ParseError naming the offending field path.
StateSet load_state_set(const std::filesystem::path& path);

void save_state_set(const StateSet& set, const std::filesystem::path& path);

/// Machine files store the header, blank amplitudes, designated states,
/// constants matrix and the unitary (row-major [re,im] pairs) at full
/// precision; save-then-load reproduces the machine bit-exactly.
CloningMachine load_machine(const std::filesystem::path& path);

void save_machine(const CloningMachine& machine, const std::filesystem::path& path);

}  // namespace probclone
