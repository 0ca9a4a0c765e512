#include "amc/propagation.hpp"

#include <cmath>
#include <cstdio>
#include <future>

namespace amc {

namespace {

struct Deriv {
  std::vector<GridFunction> atomic, molecular;
  CoefficientVector dC;
};

bool finite_state(const OrbitalSet& orbitals, const CoefficientVector& C) {
  for (const auto& f : orbitals.atomic)
    if (!f.allFinite()) return false;
  for (const auto& f : orbitals.molecular)
    if (!f.allFinite()) return false;
  return C.allFinite();
}

// Joint right-hand side.  The reduced density matrices are evaluated on a
// normalized copy of C (the orbital equations are scale invariant in C, and
// imaginary time shrinks the raw norm within a step).  In imaginary time the
// coefficient flow is shifted by the instantaneous energy; the shift is a
// scalar and is removed exactly by the per-step renormalization.
Deriv eval_rhs(const System& system, const OrbitalSet& orbitals, const CoefficientVector& C,
               TimeMode mode, bool freeze_orbitals, int threads) {
  const double nrm = C.norm();
  if (!(nrm > 0.0)) throw PropagationError("coefficient vector collapsed to zero norm", 0.0);
  CoefficientVector Cn = C / nrm;

  auto coefficient_block = [&]() {
    IntegralTables tables =
        compute_integrals(orbitals, system.interaction, system.grid, system.h_atom, system.h_mol);
    SparseHamiltonian H = assemble_hamiltonian(system.basis, tables);
    CoefficientVector dC = coefficient_rhs(H, C);
    if (mode == TimeMode::imaginary_time) {
      const double energy = expectation(H, Cn);
      dC = -kImag * dC + energy * C;  // d/dtau C = -(H - E) C
    }
    return dC;
  };
  auto orbital_block = [&]() {
    OrbitalDerivatives d;
    if (freeze_orbitals) {
      d.atomic.assign(orbitals.M(), GridFunction::Zero(system.grid.n_points));
      d.molecular.assign(orbitals.M_prime(), GridFunction::Zero(system.grid.n_points));
      return d;
    }
    RdmBundle rdms = compute_rdms(system.basis, Cn);
    EomWorkspace workspace = build_local_potentials(orbitals, system.interaction, system.grid);
    d = orbital_rhs(orbitals, rdms, workspace, system);
    if (mode == TimeMode::imaginary_time) {
      for (auto& f : d.atomic) f *= -kImag;
      for (auto& f : d.molecular) f *= -kImag;
    }
    return d;
  };

  Deriv deriv;
  if (threads > 1) {
    auto coeff_future = std::async(std::launch::async, coefficient_block);
    OrbitalDerivatives d = orbital_block();
    deriv.atomic = std::move(d.atomic);
    deriv.molecular = std::move(d.molecular);
    deriv.dC = coeff_future.get();
  } else {
    deriv.dC = coefficient_block();
    OrbitalDerivatives d = orbital_block();
    deriv.atomic = std::move(d.atomic);
    deriv.molecular = std::move(d.molecular);
  }
  return deriv;
}

void axpy(OrbitalSet& orbitals, CoefficientVector& C, double a, const Deriv& d) {
  for (size_t k = 0; k < orbitals.atomic.size(); ++k) orbitals.atomic[k] += a * d.atomic[k];
  for (size_t k = 0; k < orbitals.molecular.size(); ++k)
    orbitals.molecular[k] += a * d.molecular[k];
  C += a * d.dC;
}

struct Trial {
  OrbitalSet orbitals;
  CoefficientVector C;
};

Trial offset_state(const PropagationState& s, double a, const Deriv& d) {
  Trial t{s.orbitals, s.coefficients};
  axpy(t.orbitals, t.C, a, d);
  return t;
}

void rk4_step(PropagationState& state, const IntegratorConfig& cfg, const System& system,
              double dt) {
  auto f = [&](const OrbitalSet& orb, const CoefficientVector& C) {
    return eval_rhs(system, orb, C, state.mode, cfg.freeze_orbitals, cfg.threads);
  };
  Deriv k1 = f(state.orbitals, state.coefficients);
  Trial s2 = offset_state(state, 0.5 * dt, k1);
  Deriv k2 = f(s2.orbitals, s2.C);
  Trial s3 = offset_state(state, 0.5 * dt, k2);
  Deriv k3 = f(s3.orbitals, s3.C);
  Trial s4 = offset_state(state, dt, k3);
  Deriv k4 = f(s4.orbitals, s4.C);
  axpy(state.orbitals, state.coefficients, dt / 6.0, k1);
  axpy(state.orbitals, state.coefficients, dt / 3.0, k2);
  axpy(state.orbitals, state.coefficients, dt / 3.0, k3);
  axpy(state.orbitals, state.coefficients, dt / 6.0, k4);
  state.time += dt;
}

// Dormand-Prince 5(4) tableau
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,       500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

double error_norm(const Trial& high, const Trial& low, double abs_tol, double rel_tol) {
  double acc = 0.0;
  long long count = 0;
  auto add = [&](const GridFunction& a, const GridFunction& b) {
    for (int i = 0; i < a.size(); ++i) {
      const double sc = abs_tol + rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      const double e = std::abs(a[i] - b[i]) / sc;
      acc += e * e;
      ++count;
    }
  };
  for (size_t k = 0; k < high.orbitals.atomic.size(); ++k)
    add(high.orbitals.atomic[k], low.orbitals.atomic[k]);
  for (size_t k = 0; k < high.orbitals.molecular.size(); ++k)
    add(high.orbitals.molecular[k], low.orbitals.molecular[k]);
  add(high.C, low.C);
  return std::sqrt(acc / std::max<long long>(count, 1));
}

// One accepted Dormand-Prince step; dt_hint carries the controller state and
// dt_cap bounds the attempted step (used to land exactly on t_final).
void rk45_step(PropagationState& state, const IntegratorConfig& cfg, const System& system,
               double& dt_hint, double dt_cap) {
  auto f = [&](const OrbitalSet& orb, const CoefficientVector& C) {
    return eval_rhs(system, orb, C, state.mode, cfg.freeze_orbitals, cfg.threads);
  };
  double dt = std::min(dt_hint, dt_cap);
  for (;;) {
    if (dt < 1e-12)
      throw PropagationError(
          "adaptive step underflow (dt < 1e-12) at t = " + std::to_string(state.time),
          state.time);
    std::vector<Deriv> k(7);
    k[0] = f(state.orbitals, state.coefficients);
    for (int stage = 1; stage < 7; ++stage) {
      Trial trial{state.orbitals, state.coefficients};
      for (int j = 0; j < stage; ++j)
        if (kA[stage][j] != 0.0) axpy(trial.orbitals, trial.C, dt * kA[stage][j], k[j]);
      k[stage] = f(trial.orbitals, trial.C);
    }
    Trial high{state.orbitals, state.coefficients};
    Trial low{state.orbitals, state.coefficients};
    for (int j = 0; j < 7; ++j) {
      if (kB5[j] != 0.0) axpy(high.orbitals, high.C, dt * kB5[j], k[j]);
      if (kB4[j] != 0.0) axpy(low.orbitals, low.C, dt * kB4[j], k[j]);
    }
    const double err = error_norm(high, low, cfg.abs_tol, cfg.rel_tol);
    if (!std::isfinite(err))
      throw PropagationError("non-finite adaptive error estimate at t = " +
                                 std::to_string(state.time),
                             state.time);
    if (err <= 1.0) {
      state.orbitals = std::move(high.orbitals);
      state.coefficients = std::move(high.C);
      state.time += dt;
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      dt_hint = dt * std::clamp(grow, 0.2, 5.0);
      return;
    }
    dt *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
  }
}

void post_step_cleanup(PropagationState& state, const IntegratorConfig& cfg,
                       const System& system) {
  if (state.mode == TimeMode::imaginary_time && cfg.renorm_each_step) {
    state.coefficients /= state.coefficients.norm();
    lowdin_orthonormalize(system.grid, state.orbitals.atomic);
    lowdin_orthonormalize(system.grid, state.orbitals.molecular);
  }
}

}  // namespace

ObservableRecord observe(const System& system, const OrbitalSet& orbitals,
                         const CoefficientVector& C, double time) {
  ObservableRecord rec;
  rec.time = time;
  rec.norm_C = C.norm();
  CoefficientVector Cn = C / rec.norm_C;
  IntegralTables tables =
      compute_integrals(orbitals, system.interaction, system.grid, system.h_atom, system.h_mol);
  SparseHamiltonian H = assemble_hamiltonian(system.basis, tables);
  rec.energy = expectation(H, Cn);
  RdmBundle rdms = compute_rdms(system.basis, Cn);
  rec.Na = rdms.atom_number();
  rec.Nm = rdms.molecule_number();
  rec.occ_a = natural_occupations(rdms.rho_a);
  rec.occ_m = natural_occupations(rdms.rho_m);

  const int n = system.grid.n_points;
  rec.density_a = RealVector::Zero(n);
  rec.density_m = RealVector::Zero(n);
  for (int k = 0; k < system.M(); ++k)
    for (int q = 0; q < system.M(); ++q)
      rec.density_a +=
          (rdms.rho_a(k, q) * orbitals.atomic[k].conjugate().cwiseProduct(orbitals.atomic[q]))
              .real();
  for (int k = 0; k < system.M_prime(); ++k)
    for (int q = 0; q < system.M_prime(); ++q)
      rec.density_m += (rdms.rho_m(k, q) *
                        orbitals.molecular[k].conjugate().cwiseProduct(orbitals.molecular[q]))
                           .real();
  for (const Complex& v : rdms.rho_conv.data()) rec.conversion_coherence += std::abs(v);
  return rec;
}

void step(PropagationState& state, const IntegratorConfig& config, const System& system,
          double& dt_hint) {
  const double before = state.time;
  if (config.scheme == IntegratorConfig::Scheme::rk4) {
    rk4_step(state, config, system, std::min(dt_hint, config.dt));
  } else {
    rk45_step(state, config, system, dt_hint, config.dt * 1e6);
  }
  if (!finite_state(state.orbitals, state.coefficients))
    throw PropagationError("non-finite state after step from t = " + std::to_string(before),
                           before);
  post_step_cleanup(state, config, system);
}

RelaxResult relax(const PropagationState& initial, const IntegratorConfig& config,
                  const System& system) {
  PropagationState state = initial;
  state.mode = TimeMode::imaginary_time;
  if (std::abs(state.coefficients.norm() - 1.0) > 1e-8)
    throw PreconditionError("relax: initial coefficients not normalized");

  RelaxResult result;
  double dt_hint = config.dt;
  double previous_energy = observe(system, state.orbitals, state.coefficients, state.time).energy;
  for (long long it = 1; it <= config.max_steps; ++it) {
    step(state, config, system, dt_hint);

    // residuals of the stationary equations on the cleaned state
    CoefficientVector Cn = state.coefficients / state.coefficients.norm();
    IntegralTables tables = compute_integrals(state.orbitals, system.interaction, system.grid,
                                              system.h_atom, system.h_mol);
    SparseHamiltonian H = assemble_hamiltonian(system.basis, tables);
    const double energy = expectation(H, Cn);
    const double eigen_res = (matvec(H, Cn) - energy * Cn).norm();
    RdmBundle rdms = compute_rdms(system.basis, Cn);
    EomWorkspace workspace =
        build_local_potentials(state.orbitals, system.interaction, system.grid);
    OrbitalDerivatives d = orbital_rhs(state.orbitals, rdms, workspace, system);
    double orb_res = 0.0;
    for (const auto& f : d.atomic) orb_res = std::max(orb_res, norm(system.grid, f));
    for (const auto& f : d.molecular) orb_res = std::max(orb_res, norm(system.grid, f));

    const double dE = energy - previous_energy;
    result.max_energy_increase = std::max(result.max_energy_increase, dE);
    result.log.push_back({it, state.time, energy, dE, orb_res, eigen_res});
    result.iterations = it;
    if (std::abs(dE) < config.tol_energy && orb_res < config.tol_orbital &&
        eigen_res < config.tol_coeff) {
      result.state = state;
      result.epsilon = energy;
      return result;
    }
    previous_energy = energy;
  }
  const auto& last = result.log.back();
  char report[160];
  std::snprintf(report, sizeof report,
                "relax: no convergence after %lld steps (|dE| = %.3e, orbital residual = %.3e, "
                "eigen residual = %.3e)",
                config.max_steps, std::abs(last.energy_change), last.orbital_residual,
                last.eigen_residual);
  throw PropagationError(report, initial.time);
}

std::vector<ObservableRecord> propagate(
    const PropagationState& initial, const IntegratorConfig& config, const System& system,
    int record_every,
    const std::function<void(const PropagationState&, const ObservableRecord&)>& on_record) {
  PropagationState state = initial;
  state.mode = TimeMode::real_time;
  if (record_every < 1) throw PreconditionError("propagate: record_every must be >= 1");

  std::vector<ObservableRecord> records;
  auto record = [&]() {
    ObservableRecord rec = observe(system, state.orbitals, state.coefficients, state.time);
    if (on_record) on_record(state, rec);
    records.push_back(std::move(rec));
  };
  record();

  double dt_hint = config.dt;
  long long steps = 0;
  const double t_end = config.t_final;
  while (state.time < t_end - 1e-12) {
    if (config.scheme == IntegratorConfig::Scheme::rk4) {
      rk4_step(state, config, system, std::min(config.dt, t_end - state.time));
    } else {
      rk45_step(state, config, system, dt_hint, t_end - state.time);
    }
    if (!finite_state(state.orbitals, state.coefficients))
      throw PropagationError("non-finite state at t = " + std::to_string(state.time), state.time);
    ++steps;
    if (steps > config.max_steps)
      throw PropagationError("propagate: exceeded max_steps before t_final", state.time);
    if (state.time >= t_end - 1e-12 || steps % record_every == 0) record();
  }
  return records;
}

}  // namespace amc
