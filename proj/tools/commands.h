#ifndef PROBCLONE_TOOLS_COMMANDS_H
#define PROBCLONE_TOOLS_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "probclone.h"

namespace probclone::cli {

inline constexpr int kReportSchemaVersion = 1;

// Every command produces a report, including failed ones; exit_code follows
// pclone_status (0 ok, 1 usage/parse, 2 domain, 3 verification,
// 4 dimension mismatch, 5 internal).
struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
};

CommandResult cmd_filter_demo();

struct BuildOptions {
  std::string psi0_path;
  std::string psi1_path;
  std::optional<std::string> sigma_path;
  std::optional<std::string> phi_ab_path;
  std::string machine_path;  // machine file to write
};
CommandResult cmd_build(const BuildOptions& options);

struct CloneOptions {
  std::string machine_path;
  int input = 0;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};
CommandResult cmd_clone(const CloneOptions& options);

struct BoundOptions {
  double overlap = 0.0;
  std::optional<double> flag_overlap;
};
CommandResult cmd_bound(const BoundOptions& options);

struct VerifyOptions {
  std::string machine_path;
  pclone_verify_tolerances tolerances{};
};
VerifyOptions default_verify_options();
CommandResult cmd_verify(const VerifyOptions& options);

// Returns an empty string for a well-formed report, otherwise the first
// problem found (missing envelope field, wrong schema version, non-finite
// number).
std::string validate_report(const nlohmann::json& report);

// Parses and validates; throws std::runtime_error on failure.
nlohmann::json read_report(std::string_view text);

// Full command line entry point.
int run(int argc, char** argv);

}  // namespace probclone::cli

#endif  // PROBCLONE_TOOLS_COMMANDS_H
