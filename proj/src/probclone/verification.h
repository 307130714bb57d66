#ifndef PROBCLONE_VERIFICATION_H
#define PROBCLONE_VERIFICATION_H

#include <string>
#include <vector>

#include "probclone/cloning_machine.h"
#include "probclone/efficiency_bounds.h"
#include "probclone/unitary_synthesis.h"

namespace probclone::verify {

struct Tolerances {
  double unitarity = 1e-10;
  double gram = synthesis::kGramTolerance;
  double mapping = 1e-9;
  double eta = 1e-10;
  double orthogonality = 1e-9;
  double saturation = bounds::kSaturationTolerance;
  double golden = 1e-10;
};

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Report {
  double unitarity_residual = 0.0;
  synthesis::GramCheckReport gram;
  // max entry of |U source_s - target_s| over both designated inputs
  double mapping_residual = 0.0;
  // max of |eta - a00^2| and |eta - 1/(1+s)|
  double eta_deviation = 0.0;
  bounds::BoundAnalysis bounds;
  // Set when the machine is the default-configured two-level machine with
  // psi0 = |0> and psi1 real and nonnegative, where closed-form images of
  // |000> and |100> are available.
  bool golden_checked = false;
  double golden_residual = 0.0;
  std::vector<Check> checks;
  bool passed = false;
};

Report verify_machine(const cloning::CloningMachine& machine, const Tolerances& tol = {});

}  // namespace probclone::verify

#endif  // PROBCLONE_VERIFICATION_H
