#pragma once

#include "amc/eom.hpp"

#include <functional>

namespace amc {

enum class TimeMode { real_time, imaginary_time };

/// Joint variational state: orbitals, coefficients, and the clock.
struct PropagationState {
  double time = 0.0;
  OrbitalSet orbitals;
  CoefficientVector coefficients;
  TimeMode mode = TimeMode::real_time;
};

struct IntegratorConfig {
  enum class Scheme { rk4, rk45 };
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;
  double abs_tol = 1e-10;  // adaptive only
  double rel_tol = 1e-8;   // adaptive only
  double t_final = 10.0;
  int record_every = 10;
  bool renorm_each_step = true;  // imaginary time: renormalize C, re-orthonormalize orbitals
  bool freeze_orbitals = false;  // hold orbitals fixed, propagate coefficients only
  // relaxation stopping criteria
  double tol_energy = 1e-10;
  double tol_orbital = 1e-8;
  double tol_coeff = 1e-8;
  long long max_steps = 200000;
  int threads = 1;  // >1 evaluates orbital and coefficient RHS blocks concurrently
};

struct ObservableRecord {
  double time = 0.0;
  double energy = 0.0;
  double Na = 0.0;
  double Nm = 0.0;
  double norm_C = 0.0;
  RealVector occ_a;      // natural occupations, descending
  RealVector occ_m;
  RealVector density_a;  // rho(x|x) on the grid
  RealVector density_m;
  double conversion_coherence = 0.0;  // sum |rho_conv| entries
};

/// Raised when the integrator hits NaN/Inf or the adaptive step underflows;
/// carries the last healthy time for the diagnostic file.
struct PropagationError : std::runtime_error {
  PropagationError(const std::string& what, double last_good)
      : std::runtime_error(what), last_good_time(last_good) {}
  double last_good_time;
};

ObservableRecord observe(const System& system, const OrbitalSet& orbitals,
                         const CoefficientVector& C, double time);

/// One accepted integrator step (adaptive schemes may retry internally and
/// update `dt_hint`).  Imaginary time renormalizes and re-orthonormalizes
/// after the step when configured.
void step(PropagationState& state, const IntegratorConfig& config, const System& system,
          double& dt_hint);

struct RelaxLogRow {
  long long iteration;
  double tau;
  double energy;
  double energy_change;
  double orbital_residual;
  double eigen_residual;
};

struct RelaxResult {
  PropagationState state;
  double epsilon = 0.0;  // <H> of the converged state
  long long iterations = 0;
  double max_energy_increase = 0.0;  // monotonicity diagnostic
  std::vector<RelaxLogRow> log;
};

/// Imaginary-time relaxation until the energy is stationary and both the
/// orbital and coefficient residuals are below tolerance.
RelaxResult relax(const PropagationState& initial, const IntegratorConfig& config,
                  const System& system);

/// Real-time propagation with periodic observable records (first record at
/// the initial time, last exactly at t_final).
std::vector<ObservableRecord> propagate(
    const PropagationState& initial, const IntegratorConfig& config, const System& system,
    int record_every,
    const std::function<void(const PropagationState&, const ObservableRecord&)>& on_record = {});

}  // namespace amc
