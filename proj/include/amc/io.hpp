#pragma once

#include "amc/propagation.hpp"

#include <json.hpp>
#include <string>

namespace amc {

/// Final-state dump: grid and basis dimensions, orbitals, coefficients, and
/// the scalar labels (time / eigenenergy).
nlohmann::json state_to_json(const System& system, const PropagationState& state,
                             double epsilon);

/// Loads a final-state JSON as an initial state; validates that the stored
/// dimensions match the system.
PropagationState load_state_json(const std::string& path, const System& system);

/// RDM tensors as nested arrays of {"re":..,"im":..} pairs under the keys
/// rho_a, rho_m, rho_a2, rho_m2, rho_am, rho_conv.
nlohmann::json rdms_to_json(const RdmBundle& rdms);

/// Deterministic number formatting shared by all CSV writers.
std::string format_double(double x);

}  // namespace amc
