#include "probclone.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probclone/cloning_machine.h"
#include "probclone/efficiency_bounds.h"
#include "probclone/error.h"
#include "probclone/serialization.h"
#include "probclone/simulation.h"
#include "probclone/verification.h"

struct pclone_state {
  probclone::qstate::PureState state;
};

struct pclone_machine {
  probclone::cloning::CloningMachine machine;
};

namespace {

using probclone::linalg::Complex;
using probclone::linalg::ComplexVector;

thread_local std::string last_error;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
void require_non_null(const T* p, const char* name) {
  if (p == nullptr) {
    throw UsageError(std::string(name) + " must not be NULL");
  }
}

template <typename Fn>
pclone_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const probclone::ParseError& e) {
    last_error = e.what();
    return PCLONE_ERR_USAGE;
  } catch (const probclone::DimensionError& e) {
    last_error = e.what();
    return PCLONE_ERR_DIMENSION;
  } catch (const probclone::DomainError& e) {
    last_error = e.what();
    return PCLONE_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return PCLONE_ERR_USAGE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PCLONE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PCLONE_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PCLONE_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_interleaved(std::span<const Complex> values, double* re_im, size_t capacity) {
  if (capacity < values.size()) {
    throw UsageError("output buffer holds " + std::to_string(capacity) + " complex values, " +
                     std::to_string(values.size()) + " required");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    re_im[2 * i] = values[i].real();
    re_im[2 * i + 1] = values[i].imag();
  }
}

void fill_bounds(const probclone::bounds::BoundAnalysis& a, pclone_bound_analysis* out) {
  *out = pclone_bound_analysis{};
  out->eta0 = a.eta0;
  out->eta1 = a.eta1;
  out->flag_overlap_re = a.flag_overlap.real();
  out->flag_overlap_im = a.flag_overlap.imag();
  out->overlap_re = a.overlap.real();
  out->overlap_im = a.overlap.imag();
  out->residual0 = a.residual0;
  out->residual1 = a.residual1;
  out->orthogonality_violation = a.orthogonality_violation;
  out->residual_overlap_re = a.residual_overlap.real();
  out->residual_overlap_im = a.residual_overlap.imag();
  out->inner_product_lhs = a.inner_product_lhs;
  out->inner_product_lhs_imag = a.inner_product_lhs_imag;
  out->inner_product_rhs = a.inner_product_rhs;
  out->mean_eta = a.mean_eta;
  out->mean_bound = a.mean_bound;
  out->universal_limit = a.universal_limit;
  out->saturated = a.saturated ? 1 : 0;
}

}  // namespace

extern "C" {

const char* pclone_version(void) { return PROBCLONE_VERSION_STRING; }

const char* pclone_generator_id(void) { return probclone::sim::kGeneratorId.data(); }

const char* pclone_last_error(void) { return last_error.c_str(); }

const char* pclone_status_name(pclone_status status) {
  switch (status) {
    case PCLONE_OK:
      return "ok";
    case PCLONE_ERR_USAGE:
      return "usage";
    case PCLONE_ERR_DOMAIN:
      return "domain";
    case PCLONE_ERR_VERIFY:
      return "verification";
    case PCLONE_ERR_DIMENSION:
      return "dimension";
    case PCLONE_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void pclone_string_free(char* text) { std::free(text); }

pclone_status pclone_state_create(const double* re_im, size_t dim, int renormalize,
                                  pclone_state** out) {
  return guarded([&] {
    require_non_null(re_im, "re_im");
    require_non_null(out, "out");
    std::vector<Complex> amps(dim);
    for (size_t i = 0; i < dim; ++i) {
      amps[i] = {re_im[2 * i], re_im[2 * i + 1]};
    }
    ComplexVector v(std::move(amps));
    auto state = renormalize != 0 ? probclone::qstate::PureState::normalized(std::move(v))
                                  : probclone::qstate::PureState(std::move(v));
    *out = new pclone_state{std::move(state)};
    return PCLONE_OK;
  });
}

pclone_status pclone_state_parse_json(const char* text, pclone_state** out, char** warning) {
  return guarded([&] {
    require_non_null(text, "text");
    require_non_null(out, "out");
    std::string message;
    auto state = probclone::io::parse_state(text, &message);
    if (warning != nullptr) {
      *warning = message.empty() ? nullptr : copy_string(message);
    }
    *out = new pclone_state{std::move(state)};
    return PCLONE_OK;
  });
}

pclone_status pclone_state_read_file(const char* path, pclone_state** out, char** warning) {
  return guarded([&] {
    require_non_null(path, "path");
    require_non_null(out, "out");
    std::string message;
    auto state = probclone::io::read_state_file(path, &message);
    if (warning != nullptr) {
      *warning = message.empty() ? nullptr : copy_string(message);
    }
    *out = new pclone_state{std::move(state)};
    return PCLONE_OK;
  });
}

size_t pclone_state_dim(const pclone_state* state) { return state ? state->state.dim() : 0; }

pclone_status pclone_state_amplitudes(const pclone_state* state, double* re_im, size_t capacity) {
  return guarded([&] {
    require_non_null(state, "state");
    require_non_null(re_im, "re_im");
    write_interleaved(state->state.amplitudes().entries(), re_im, capacity);
    return PCLONE_OK;
  });
}

void pclone_state_free(pclone_state* state) { delete state; }

pclone_status pclone_machine_build(const pclone_state* psi0, const pclone_state* psi1,
                                   const pclone_state* sigma, const pclone_state* phi_ab,
                                   pclone_machine** out) {
  return guarded([&] {
    require_non_null(psi0, "psi0");
    require_non_null(psi1, "psi1");
    require_non_null(out, "out");
    auto config = probclone::cloning::MachineConfig::defaults(psi0->state.dim());
    if (sigma != nullptr) {
      config.sigma = sigma->state;
    }
    if (phi_ab != nullptr) {
      config.phi_ab = phi_ab->state;
    }
    auto machine = probclone::cloning::build_machine(psi0->state, psi1->state, config);
    *out = new pclone_machine{std::move(machine)};
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_parse_json(const char* text, pclone_machine** out) {
  return guarded([&] {
    require_non_null(text, "text");
    require_non_null(out, "out");
    *out = new pclone_machine{probclone::io::machine_from_json(text)};
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_read_file(const char* path, pclone_machine** out) {
  return guarded([&] {
    require_non_null(path, "path");
    require_non_null(out, "out");
    *out = new pclone_machine{probclone::io::read_machine_file(path)};
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_to_json(const pclone_machine* machine, char** out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(out, "out");
    *out = copy_string(probclone::io::machine_to_json(machine->machine));
    return PCLONE_OK;
  });
}

void pclone_machine_free(pclone_machine* machine) { delete machine; }

pclone_status pclone_machine_get_info(const pclone_machine* machine, pclone_machine_info* out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(out, "out");
    const auto& m = machine->machine;
    const auto& a = m.amplitudes();
    *out = pclone_machine_info{};
    out->system_dim = m.system_dim();
    out->total_dim = m.unitary().rows();
    out->overlap_s = m.overlap_s();
    out->rephase_angle = m.rephase_angle();
    out->eta = m.eta();
    out->a00 = a.a00;
    out->a01 = a.a01;
    out->a10 = a.a10;
    out->a11 = a.a11;
    out->unitarity_residual = probclone::linalg::is_unitary(m.unitary()).residual;
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_unitary(const pclone_machine* machine, double* re_im,
                                     size_t capacity) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(re_im, "re_im");
    write_interleaved(machine->machine.unitary().entries(), re_im, capacity);
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_designated(const pclone_machine* machine, int label,
                                        pclone_state** out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(out, "out");
    *out = new pclone_state{machine->machine.designated(label)};
    return PCLONE_OK;
  });
}

pclone_status pclone_machine_postselect(const pclone_machine* machine, const pclone_state* input,
                                        pclone_clone_outcome* out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(input, "input");
    require_non_null(out, "out");
    const auto outcome = probclone::cloning::postselect(machine->machine, input->state);
    out->probability = outcome.probability;
    out->clone_fidelity = outcome.clone_fidelity;
    return PCLONE_OK;
  });
}

pclone_status pclone_simulate(const pclone_machine* machine, int input_label, uint64_t shots,
                              uint64_t seed, unsigned threads, pclone_sim_report* out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(out, "out");
    if (input_label != 0 && input_label != 1) {
      throw UsageError("input label must be 0 or 1");
    }
    if (shots == 0) {
      throw UsageError("shots must be at least 1");
    }
    const auto r =
        probclone::sim::run_monte_carlo(machine->machine, input_label, shots, seed, threads);
    *out = pclone_sim_report{r.seed,          r.shots,        r.input_label, r.successes,
                             r.empirical_eta, r.analytic_eta, r.z_score,     r.mean_clone_fidelity};
    return PCLONE_OK;
  });
}

pclone_status pclone_filter_demo(pclone_filter_report* out) {
  return guarded([&] {
    require_non_null(out, "out");
    const auto r = probclone::sim::filter_demo();
    *out = pclone_filter_report{r.fidelity_before, r.fidelity_after, r.keep_probability_psi0,
                                r.keep_probability_psi1, r.monotonicity_violated ? 1 : 0};
    return PCLONE_OK;
  });
}

pclone_status pclone_universal_bound(double overlap_s, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = probclone::bounds::universal_bound(overlap_s);
    return PCLONE_OK;
  });
}

pclone_status pclone_mean_efficiency_bound(double overlap_s, double flag_overlap, double* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = probclone::bounds::mean_efficiency_bound(overlap_s, flag_overlap);
    return PCLONE_OK;
  });
}

pclone_status pclone_check_no_perfect_cloning(double overlap_s, double eta0, double eta1,
                                              double flag_overlap, int* out) {
  return guarded([&] {
    require_non_null(out, "out");
    *out = probclone::bounds::check_no_perfect_cloning(overlap_s, eta0, eta1, flag_overlap) ? 1 : 0;
    return PCLONE_OK;
  });
}

void pclone_verify_default_tolerances(pclone_verify_tolerances* out) {
  if (out == nullptr) {
    return;
  }
  const probclone::verify::Tolerances t;
  *out = pclone_verify_tolerances{t.unitarity,     t.gram,       t.mapping, t.eta,
                                  t.orthogonality, t.saturation, t.golden};
}

pclone_status pclone_verify(const pclone_machine* machine,
                            const pclone_verify_tolerances* tolerances,
                            pclone_verify_report* out) {
  return guarded([&] {
    require_non_null(machine, "machine");
    require_non_null(out, "out");
    probclone::verify::Tolerances tol;
    if (tolerances != nullptr) {
      tol = {tolerances->unitarity,     tolerances->gram,       tolerances->mapping,
             tolerances->eta,           tolerances->orthogonality, tolerances->saturation,
             tolerances->golden};
    }
    const auto r = probclone::verify::verify_machine(machine->machine, tol);

    *out = pclone_verify_report{};
    out->unitarity_residual = r.unitarity_residual;
    out->gram_norm0_delta = r.gram.norm0_delta;
    out->gram_norm1_delta = r.gram.norm1_delta;
    out->gram_cross_delta = r.gram.cross_delta;
    out->mapping_residual = r.mapping_residual;
    out->eta_deviation = r.eta_deviation;
    fill_bounds(r.bounds, &out->bounds);
    out->golden_checked = r.golden_checked ? 1 : 0;
    out->golden_residual = r.golden_residual;
    out->passed = r.passed ? 1 : 0;

    std::string failed;
    for (const auto& c : r.checks) {
      if (!c.passed) {
        failed += failed.empty() ? c.name : "," + c.name;
      }
    }
    const std::size_t n = std::min(failed.size(), sizeof(out->failed_checks) - 1);
    std::memcpy(out->failed_checks, failed.data(), n);
    out->failed_checks[n] = '\0';

    if (!r.passed) {
      last_error = "verification failed: " + failed;
      return PCLONE_ERR_VERIFY;
    }
    return PCLONE_OK;
  });
}

}  // extern "C"
