#pragma once

#include "amc/propagation.hpp"

#include <string>

namespace amc {

/// Thrown on any malformed configuration; the message names the offending
/// key and line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed, validated run configuration (plain-text "key = value" file with
/// [section] headers; unknown keys are hard errors).
struct RunConfig {
  // [system]
  int N = 2;
  int M = 1;
  int M_prime = 1;
  int n_points = 128;
  double length = 16.0;
  double mass_a = 1.0;
  double mass_m = -1.0;  // resolved to 2 * mass_a when unset
  std::string trap_a = "harmonic(1.0)";
  std::string trap_m = "harmonic(1.0)";
  double offset_a = 0.0;
  double offset_m = 0.0;
  std::string interaction = "contact";  // contact | general
  double lambda_a = 0.0;
  double lambda_m = 0.0;
  double lambda_am = 0.0;
  double lambda_con = 0.0;
  std::string kernel_a = "delta(0.0)";  // general only: delta(lambda) | file path
  std::string kernel_m = "delta(0.0)";
  std::string kernel_am = "delta(0.0)";
  std::string kernel_con = "delta(0.0)";
  double reg_eps = 1e-8;

  // [integrator]
  IntegratorConfig integrator;

  // [initial]
  std::string initial_orbitals = "trap_eigenstates";
  std::string initial_coefficients = "all_atoms_ground";
  std::string restart_file;  // final-state JSON; overrides the two above

  // [output]
  std::string output_directory = ".";
  int density_every = 0;  // write density snapshots at every k-th record; 0 disables

  std::string source_path;
};

RunConfig parse_config(const std::string& path);

/// "harmonic(omega)" -> 0.5 m omega^2 x^2, "none" -> 0, anything else is a
/// file of n_points real values (one per line).
RealVector parse_potential(const std::string& value, const SpatialGrid& grid, double mass);

/// "delta(lambda)" -> discrete delta, anything else a file of n^2 reals.
RealMatrix parse_kernel(const std::string& value, const SpatialGrid& grid);

System build_system(const RunConfig& config);

PropagationState build_initial_state(const RunConfig& config, const System& system);

/// Deterministic echo of every resolved key, one "# key = value" line each;
/// prefixed to all output files for reproducibility.
std::string echo_config(const RunConfig& config);

}  // namespace amc
