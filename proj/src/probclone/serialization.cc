#include "probclone/serialization.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "probclone/error.h"

namespace probclone::io {
namespace {

using json = nlohmann::json;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using qstate::PureState;
using qstate::SpaceShape;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (const auto& z : v) {
    out.push_back(complex_to_json(z));
  }
  return out;
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex entries must be [re, im] number pairs");
  }
  const Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParseError(where + ": non-finite complex entry");
  }
  return z;
}

std::vector<Complex> entries_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(where + ": expected a non-empty array of [re, im] pairs");
  }
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    out.push_back(complex_from_json(e, where));
  }
  return out;
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

double number_field(const json& doc, const char* key) {
  const json& j = field(doc, key);
  if (!j.is_number()) {
    throw ParseError(std::string("field \"") + key + "\" must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(std::string("field \"") + key + "\" is not finite");
  }
  return v;
}

std::size_t size_field(const json& doc, const char* key) {
  const json& j = field(doc, key);
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
  }
  return j.get<std::size_t>();
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// Machine files store states exactly as written; only round-off is tolerated.
PureState stored_state(const json& doc, const char* key, SpaceShape shape) {
  ComplexVector amps(entries_from_json(field(doc, key), key));
  if (amps.size() != shape.total_dim()) {
    throw ParseError(std::string(key) + ": expected " + std::to_string(shape.total_dim()) +
                     " amplitudes, got " + std::to_string(amps.size()));
  }
  if (std::abs(amps.norm() - 1.0) > 1e-12) {
    throw ParseError(std::string(key) + ": state is not normalized");
  }
  return PureState::normalized(std::move(amps), std::move(shape));
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PureState parse_state(std::string_view text, std::string* warning) {
  const json doc = parse_document(text);
  const std::size_t dim = size_field(doc, "dim");
  ComplexVector amps(entries_from_json(field(doc, "amplitudes"), "amplitudes"));
  if (amps.size() != dim) {
    throw ParseError("state file declares dim " + std::to_string(dim) + " but lists " +
                     std::to_string(amps.size()) + " amplitudes");
  }
  const double deviation = std::abs(amps.norm() - 1.0);
  if (deviation > 1e-6) {
    throw ParseError("state file amplitudes are not normalized (|norm - 1| = " +
                     std::to_string(deviation) + ")");
  }
  if (deviation > 1e-12 && warning != nullptr) {
    *warning = "state renormalized (|norm - 1| = " + std::to_string(deviation) + ")";
  }
  return PureState::normalized(std::move(amps));
}

PureState read_state_file(const std::filesystem::path& path, std::string* warning) {
  const std::string text = read_text_file(path);
  try {
    return parse_state(text, warning);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string state_to_json(const PureState& state) {
  json doc;
  doc["dim"] = state.dim();
  doc["amplitudes"] = vector_to_json(state.amplitudes());
  return doc.dump(2);
}

std::string machine_to_json(const cloning::CloningMachine& machine) {
  const auto& cfg = machine.config();
  const auto& amps = machine.amplitudes();
  const ComplexMatrix& u = machine.unitary();

  json unitary;
  unitary["rows"] = u.rows();
  unitary["cols"] = u.cols();
  unitary["entries"] = json::array();
  for (const auto& z : u.entries()) {
    unitary["entries"].push_back(complex_to_json(z));
  }

  json doc;
  doc["schema_version"] = kMachineSchemaVersion;
  doc["kind"] = kMachineKind;
  doc["system_dim"] = machine.system_dim();
  doc["probe_dim"] = cloning::kProbeDim;
  doc["psi0"] = vector_to_json(machine.psi0().amplitudes());
  doc["psi1"] = vector_to_json(machine.psi1().amplitudes());
  doc["sigma"] = vector_to_json(cfg.sigma.amplitudes());
  doc["phi_ab"] = vector_to_json(cfg.phi_ab.amplitudes());
  doc["probe_success"] = vector_to_json(cfg.probe_success.amplitudes());
  doc["probe_fail"] = vector_to_json(cfg.probe_fail.amplitudes());
  doc["overlap_s"] = machine.overlap_s();
  doc["rephase_angle"] = machine.rephase_angle();
  doc["amplitudes"] = {{"a00", amps.a00}, {"a01", amps.a01}, {"a10", amps.a10}, {"a11", amps.a11}};
  doc["eta"] = machine.eta();
  doc["unitary"] = std::move(unitary);
  return doc.dump(2);
}

cloning::CloningMachine machine_from_json(std::string_view text) {
  const json doc = parse_document(text);
  try {
    const json& version = field(doc, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kMachineSchemaVersion) {
      throw ParseError("unsupported schema_version");
    }
    const json& kind = field(doc, "kind");
    if (!kind.is_string() || kind.get<std::string>() != kMachineKind) {
      throw ParseError("document is not a machine file");
    }
    const std::size_t n = size_field(doc, "system_dim");
    if (size_field(doc, "probe_dim") != cloning::kProbeDim) {
      throw ParseError("probe_dim must be 2");
    }

    PureState psi0 = stored_state(doc, "psi0", SpaceShape::single(n));
    PureState psi1 = stored_state(doc, "psi1", SpaceShape::single(n));
    cloning::MachineConfig cfg{
        stored_state(doc, "sigma", SpaceShape::single(n)),
        stored_state(doc, "phi_ab", SpaceShape({n, n})),
        stored_state(doc, "probe_success", SpaceShape::single(cloning::kProbeDim)),
        stored_state(doc, "probe_fail", SpaceShape::single(cloning::kProbeDim))};

    const json& amps_doc = field(doc, "amplitudes");
    const cloning::CloningAmplitudes amps{
        number_field(amps_doc, "a00"), number_field(amps_doc, "a01"),
        number_field(amps_doc, "a10"), number_field(amps_doc, "a11")};

    const json& u_doc = field(doc, "unitary");
    ComplexMatrix u(size_field(u_doc, "rows"), size_field(u_doc, "cols"),
                    entries_from_json(field(u_doc, "entries"), "unitary.entries"));

    return cloning::CloningMachine::from_parts(
        std::move(psi0), std::move(psi1), number_field(doc, "overlap_s"),
        number_field(doc, "rephase_angle"), std::move(cfg), amps, std::move(u),
        number_field(doc, "eta"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("inconsistent machine file: ") + e.what());
  }
}

cloning::CloningMachine read_machine_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return machine_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace probclone::io
