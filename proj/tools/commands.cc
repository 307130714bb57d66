#include "commands.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>

#include "CLI11.hpp"

namespace probclone::cli {
namespace {

using json = nlohmann::json;

struct StateDeleter {
  void operator()(pclone_state* s) const { pclone_state_free(s); }
};
struct MachineDeleter {
  void operator()(pclone_machine* m) const { pclone_machine_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { pclone_string_free(s); }
};
using StatePtr = std::unique_ptr<pclone_state, StateDeleter>;
using MachinePtr = std::unique_ptr<pclone_machine, MachineDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a C API failure out of a command body.
struct Failure {
  pclone_status status;
  std::string message;
};

void check(pclone_status status, const std::string& context) {
  if (status != PCLONE_OK) {
    throw Failure{status, context + ": " + pclone_last_error()};
  }
}

json envelope(const std::string& command, json inputs) {
  json r;
  r["schema_version"] = kReportSchemaVersion;
  r["command"] = command;
  r["tool_version"] = pclone_version();
  r["generator_id"] = pclone_generator_id();
  r["inputs"] = std::move(inputs);
  r["results"] = json::object();
  r["warnings"] = json::array();
  return r;
}

template <typename Body>
CommandResult execute(const std::string& command, json inputs, Body&& body) {
  CommandResult result{0, envelope(command, std::move(inputs))};
  try {
    result.exit_code = body(result.report);
  } catch (const Failure& f) {
    result.exit_code = f.status;
    result.report["error"] = f.message;
  }
  result.report["status"] = pclone_status_name(static_cast<pclone_status>(result.exit_code));
  result.report["exit_code"] = result.exit_code;
  return result;
}

StatePtr load_state(const std::string& path, json& report) {
  pclone_state* raw = nullptr;
  char* warning = nullptr;
  check(pclone_state_read_file(path.c_str(), &raw, &warning), "reading " + path);
  StatePtr state(raw);
  if (warning != nullptr) {
    StringPtr owned(warning);
    report["warnings"].push_back(path + ": " + warning);
  }
  return state;
}

MachinePtr load_machine(const std::string& path) {
  pclone_machine* raw = nullptr;
  check(pclone_machine_read_file(path.c_str(), &raw), "reading " + path);
  return MachinePtr(raw);
}

json info_to_json(const pclone_machine_info& info) {
  return {{"system_dim", info.system_dim},
          {"total_dim", info.total_dim},
          {"overlap_s", info.overlap_s},
          {"rephase_angle", info.rephase_angle},
          {"eta", info.eta},
          {"amplitudes", {{"a00", info.a00}, {"a01", info.a01}, {"a10", info.a10}, {"a11", info.a11}}},
          {"unitarity_residual", info.unitarity_residual}};
}

json complex_json(double re, double im) { return json::array({re, im}); }

json bounds_to_json(const pclone_bound_analysis& b) {
  return {{"eta0", b.eta0},
          {"eta1", b.eta1},
          {"flag_overlap", complex_json(b.flag_overlap_re, b.flag_overlap_im)},
          {"overlap", complex_json(b.overlap_re, b.overlap_im)},
          {"residual0", b.residual0},
          {"residual1", b.residual1},
          {"orthogonality_violation", b.orthogonality_violation},
          {"residual_overlap", complex_json(b.residual_overlap_re, b.residual_overlap_im)},
          {"inner_product_lhs", b.inner_product_lhs},
          {"inner_product_lhs_imag", b.inner_product_lhs_imag},
          {"inner_product_rhs", b.inner_product_rhs},
          {"mean_eta", b.mean_eta},
          {"mean_bound", b.mean_bound},
          {"universal_limit", b.universal_limit},
          {"saturated", b.saturated != 0}};
}

std::string first_non_finite(const json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    return path;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      auto bad = first_non_finite(value, path + "." + key);
      if (!bad.empty()) {
        return bad;
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto bad = first_non_finite(j[i], path + "[" + std::to_string(i) + "]");
      if (!bad.empty()) {
        return bad;
      }
    }
  }
  return {};
}

}  // namespace

CommandResult cmd_filter_demo() {
  return execute("filter-demo", json::object(), [](json& report) {
    pclone_filter_report r{};
    check(pclone_filter_demo(&r), "filter demo");
    report["results"] = {{"fidelity_before", r.fidelity_before},
                         {"fidelity_after", r.fidelity_after},
                         {"keep_probability_psi0", r.keep_probability_psi0},
                         {"keep_probability_psi1", r.keep_probability_psi1},
                         {"monotonicity_violated", r.monotonicity_violated != 0}};
    return 0;
  });
}

CommandResult cmd_build(const BuildOptions& o) {
  json inputs{{"psi0", o.psi0_path}, {"psi1", o.psi1_path}, {"machine", o.machine_path}};
  if (o.sigma_path) {
    inputs["sigma"] = *o.sigma_path;
  }
  if (o.phi_ab_path) {
    inputs["phi_ab"] = *o.phi_ab_path;
  }
  return execute("build", std::move(inputs), [&](json& report) {
    StatePtr psi0 = load_state(o.psi0_path, report);
    StatePtr psi1 = load_state(o.psi1_path, report);
    StatePtr sigma = o.sigma_path ? load_state(*o.sigma_path, report) : nullptr;
    StatePtr phi_ab = o.phi_ab_path ? load_state(*o.phi_ab_path, report) : nullptr;

    pclone_machine* raw = nullptr;
    check(pclone_machine_build(psi0.get(), psi1.get(), sigma.get(), phi_ab.get(), &raw),
          "building machine");
    MachinePtr machine(raw);

    char* text = nullptr;
    check(pclone_machine_to_json(machine.get(), &text), "serializing machine");
    StringPtr owned(text);
    std::ofstream out(o.machine_path);
    out << text << '\n';
    if (!out) {
      throw Failure{PCLONE_ERR_USAGE, "cannot write machine file " + o.machine_path};
    }

    pclone_machine_info info{};
    check(pclone_machine_get_info(machine.get(), &info), "machine info");
    report["results"] = info_to_json(info);
    return 0;
  });
}

CommandResult cmd_clone(const CloneOptions& o) {
  json inputs{{"machine", o.machine_path},
              {"input", o.input},
              {"shots", o.shots},
              {"seed", o.seed},
              {"threads", o.threads}};
  return execute("clone", std::move(inputs), [&](json& report) {
    MachinePtr machine = load_machine(o.machine_path);
    pclone_sim_report r{};
    check(pclone_simulate(machine.get(), o.input, o.shots, o.seed, o.threads, &r), "simulating");
    report["results"] = {{"seed", r.seed},
                         {"shots", r.shots},
                         {"input_label", r.input_label},
                         {"successes", r.successes},
                         {"empirical_eta", r.empirical_eta},
                         {"analytic_eta", r.analytic_eta},
                         {"z_score", r.z_score},
                         {"mean_clone_fidelity", r.mean_clone_fidelity}};
    return 0;
  });
}

CommandResult cmd_bound(const BoundOptions& o) {
  json inputs{{"overlap", o.overlap}};
  if (o.flag_overlap) {
    inputs["flag_overlap"] = *o.flag_overlap;
  }
  return execute("bound", std::move(inputs), [&](json& report) {
    double universal = 0.0;
    check(pclone_universal_bound(o.overlap, &universal), "universal bound");
    report["results"]["universal_bound"] = universal;
    if (o.flag_overlap) {
      double mean = 0.0;
      check(pclone_mean_efficiency_bound(o.overlap, *o.flag_overlap, &mean), "mean bound");
      report["results"]["mean_efficiency_bound"] = mean;
    }
    return 0;
  });
}

VerifyOptions default_verify_options() {
  VerifyOptions o;
  pclone_verify_default_tolerances(&o.tolerances);
  return o;
}

CommandResult cmd_verify(const VerifyOptions& o) {
  const auto& t = o.tolerances;
  json inputs{{"machine", o.machine_path},
              {"tolerances",
               {{"unitarity", t.unitarity},
                {"gram", t.gram},
                {"mapping", t.mapping},
                {"eta", t.eta},
                {"orthogonality", t.orthogonality},
                {"saturation", t.saturation},
                {"golden", t.golden}}}};
  return execute("verify", std::move(inputs), [&](json& report) {
    MachinePtr machine = load_machine(o.machine_path);
    pclone_verify_report r{};
    const pclone_status status = pclone_verify(machine.get(), &o.tolerances, &r);
    if (status != PCLONE_OK && status != PCLONE_ERR_VERIFY) {
      check(status, "verifying");
    }
    json results{{"unitarity_residual", r.unitarity_residual},
                 {"gram",
                  {{"norm0_delta", r.gram_norm0_delta},
                   {"norm1_delta", r.gram_norm1_delta},
                   {"cross_delta", r.gram_cross_delta}}},
                 {"mapping_residual", r.mapping_residual},
                 {"eta_deviation", r.eta_deviation},
                 {"bounds", bounds_to_json(r.bounds)},
                 {"golden_checked", r.golden_checked != 0},
                 {"passed", r.passed != 0},
                 {"failed_checks", r.failed_checks}};
    if (r.golden_checked) {
      results["golden_residual"] = r.golden_residual;
    }
    report["results"] = std::move(results);
    if (status == PCLONE_ERR_VERIFY) {
      report["error"] = std::string("verification failed: ") + r.failed_checks;
    }
    return static_cast<int>(status);
  });
}

std::string validate_report(const json& r) {
  if (!r.is_object()) {
    return "report is not an object";
  }
  for (const char* key : {"schema_version", "command", "tool_version", "generator_id", "inputs",
                          "results", "status", "exit_code", "warnings"}) {
    if (!r.contains(key)) {
      return std::string("missing field ") + key;
    }
  }
  if (!r["schema_version"].is_number_integer() ||
      r["schema_version"].get<int>() != kReportSchemaVersion) {
    return "unsupported schema_version";
  }
  if (!r["command"].is_string() || !r["tool_version"].is_string() ||
      !r["generator_id"].is_string()) {
    return "envelope fields have wrong types";
  }
  if (auto bad = first_non_finite(r, "$"); !bad.empty()) {
    return "non-finite number at " + bad;
  }
  return {};
}

json read_report(std::string_view text) {
  json r;
  try {
    r = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("report is not valid JSON: ") + e.what());
  }
  if (auto problem = validate_report(r); !problem.empty()) {
    throw std::runtime_error("invalid report: " + problem);
  }
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"Probabilistic cloning of two non-orthogonal pure states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pclone_version());

  std::string output;
  auto add_output = [&output](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write the report here instead of stdout");
  };

  auto* filter = app.add_subcommand("filter-demo", "Fidelity under measurement with rejection");
  add_output(filter);

  BuildOptions build;
  std::string sigma_path;
  std::string phi_ab_path;
  auto* build_cmd = app.add_subcommand("build", "Construct a cloning machine from two states");
  build_cmd->add_option("--psi0", build.psi0_path, "State file for psi0")->required();
  build_cmd->add_option("--psi1", build.psi1_path, "State file for psi1")->required();
  build_cmd->add_option("--sigma", sigma_path, "State file for the blank state of B");
  build_cmd->add_option("--phi-ab", phi_ab_path, "State file for the failure-branch state of AB");
  build_cmd->add_option("-m,--machine", build.machine_path, "Machine file to write")->required();
  add_output(build_cmd);

  CloneOptions clone;
  auto* clone_cmd = app.add_subcommand("clone", "Monte Carlo run of the probe measurement");
  clone_cmd->add_option("machine", clone.machine_path, "Machine file")->required();
  clone_cmd->add_option("--input", clone.input, "Designated input (0 or 1)")
      ->check(CLI::IsMember({0, 1}));
  clone_cmd->add_option("--shots", clone.shots, "Number of shots")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  clone_cmd->add_option("--seed", clone.seed, "Generator seed");
  clone_cmd->add_option("--threads", clone.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  add_output(clone_cmd);

  BoundOptions bound;
  double flag_overlap = 1.0;
  auto* bound_cmd = app.add_subcommand("bound", "Efficiency bounds for a given overlap");
  bound_cmd->add_option("--overlap", bound.overlap, "<psi0|psi1>, in [0, 1)")->required();
  auto* flag_opt =
      bound_cmd->add_option("--flag-overlap", flag_overlap, "<m0|m1> for the mean bound");
  add_output(bound_cmd);

  VerifyOptions verify = default_verify_options();
  auto& tol = verify.tolerances;
  auto* verify_cmd = app.add_subcommand("verify", "Check a machine file");
  verify_cmd->add_option("machine", verify.machine_path, "Machine file")->required();
  verify_cmd->add_option("--tol-unitarity", tol.unitarity)->capture_default_str();
  verify_cmd->add_option("--tol-gram", tol.gram)->capture_default_str();
  verify_cmd->add_option("--tol-mapping", tol.mapping)->capture_default_str();
  verify_cmd->add_option("--tol-eta", tol.eta)->capture_default_str();
  verify_cmd->add_option("--tol-orthogonality", tol.orthogonality)->capture_default_str();
  verify_cmd->add_option("--tol-saturation", tol.saturation)->capture_default_str();
  verify_cmd->add_option("--tol-golden", tol.golden)->capture_default_str();
  add_output(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PCLONE_ERR_USAGE;
  }

  CommandResult result;
  if (*filter) {
    result = cmd_filter_demo();
  } else if (*build_cmd) {
    if (!sigma_path.empty()) {
      build.sigma_path = sigma_path;
    }
    if (!phi_ab_path.empty()) {
      build.phi_ab_path = phi_ab_path;
    }
    result = cmd_build(build);
  } else if (*clone_cmd) {
    result = cmd_clone(clone);
  } else if (*bound_cmd) {
    if (*flag_opt) {
      bound.flag_overlap = flag_overlap;
    }
    result = cmd_bound(bound);
  } else {
    result = cmd_verify(verify);
  }

  for (const auto& w : result.report["warnings"]) {
    std::cerr << "warning: " << w.get<std::string>() << '\n';
  }
  if (result.report.contains("error")) {
    std::cerr << "error: " << result.report["error"].get<std::string>() << '\n';
  }

  const std::string text = result.report.dump(2);
  if (output.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(output);
    out << text << '\n';
    if (!out) {
      std::cerr << "error: cannot write report to " << output << '\n';
      return PCLONE_ERR_USAGE;
    }
  }
  return result.exit_code;
}

}  // namespace probclone::cli
