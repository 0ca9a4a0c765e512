#pragma once

#include "amc/config.hpp"

namespace amc {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst deviation observed
  double tolerance = 0.0;
  std::string detail;
};

/// Runs the cross-module invariant suite: grid operator identities, ladder
/// algebra, sparse-vs-dense Hamiltonian and RDM agreement, conversion block
/// structure, particle-number conservation, projector tangency, two-mode
/// equivalence, and gauge invariance.  Uses the configured system when it is
/// small enough for the dense oracle, plus fixed small instances.
std::vector<ValidationCheck> run_validation(const RunConfig& config);

}  // namespace amc
