#ifndef PROBCLONE_SERIALIZATION_H
#define PROBCLONE_SERIALIZATION_H

// JSON state and machine files.
//
// State file:
//   { "dim": 2, "amplitudes": [[1, 0], [0, 0]] }
//
// Machine file (schema_version 1):
//   { "schema_version": 1, "kind": "probclone.machine",
//     "system_dim": n, "probe_dim": 2,
//     "psi0": [[re, im], ...], "psi1": [...], "sigma": [...], "phi_ab": [...],
//     "probe_success": [...], "probe_fail": [...],
//     "overlap_s": s, "rephase_angle": phi,
//     "amplitudes": { "a00": ..., "a01": ..., "a10": ..., "a11": ... },
//     "eta": ..., "unitary": { "rows": R, "cols": C, "entries": [[re, im], ...] } }
//
// Complex numbers are two-element arrays; matrices are row-major.

#include <filesystem>
#include <string>
#include <string_view>

#include "probclone/cloning_machine.h"
#include "probclone/quantum_state.h"

namespace probclone::io {

inline constexpr int kMachineSchemaVersion = 1;
inline constexpr std::string_view kMachineKind = "probclone.machine";

// Amplitudes within 1e-6 of unit norm are accepted; deviations above 1e-12
// are renormalized and described in *warning (when non-null).  Anything
// else throws ParseError.
qstate::PureState parse_state(std::string_view text, std::string* warning = nullptr);
qstate::PureState read_state_file(const std::filesystem::path& path,
                                  std::string* warning = nullptr);
std::string state_to_json(const qstate::PureState& state);

std::string machine_to_json(const cloning::CloningMachine& machine);
// Throws ParseError for malformed or inconsistent documents.  The stored
// unitary is taken verbatim.
cloning::CloningMachine machine_from_json(std::string_view text);
cloning::CloningMachine read_machine_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace probclone::io

#endif  // PROBCLONE_SERIALIZATION_H
