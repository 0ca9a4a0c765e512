#include "amc/run.hpp"

#include "amc/io.hpp"
#include "amc/validation.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace amc {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name, const RunConfig& cfg) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write output file " + (dir / name).string());
  out << echo_config(cfg);
  return out;
}

void write_density_snapshot(const fs::path& dir, const RunConfig& cfg, const std::string& stem,
                            long long step, const SpatialGrid& grid, const RealVector& density) {
  char name[64];
  std::snprintf(name, sizeof name, "%s_%06lld.csv", stem.c_str(), step);
  std::ofstream out = open_output(dir, name, cfg);
  out << "x,value\n";
  for (int i = 0; i < grid.n_points; ++i)
    out << format_double(grid.points[i]) << ',' << format_double(density[i]) << '\n';
}

void write_final_state(const fs::path& dir, const RunConfig& cfg, const System& system,
                       const PropagationState& state, double epsilon) {
  fs::create_directories(dir);
  // JSON cannot start with comment lines; the config echo rides along as a field
  nlohmann::json state_json = state_to_json(system, state, epsilon);
  state_json["config"] = echo_config(cfg);
  std::ofstream out(dir / "final_state.json");
  out << state_json.dump(1) << '\n';
  CoefficientVector Cn = state.coefficients / state.coefficients.norm();
  nlohmann::json rdm_json = rdms_to_json(compute_rdms(system.basis, Cn));
  rdm_json["config"] = echo_config(cfg);
  std::ofstream rdm_out(dir / "rdms.json");
  rdm_out << rdm_json.dump(1) << '\n';
}

int run_relax(const RunConfig& cfg, const System& system) {
  PropagationState initial = build_initial_state(cfg, system);
  const fs::path dir(cfg.output_directory);
  RelaxResult result;
  try {
    result = relax(initial, cfg.integrator, system);
  } catch (const PropagationError& err) {
    std::ofstream diag = open_output(dir, "diagnostic.txt", cfg);
    diag << "relaxation aborted: " << err.what() << '\n';
    std::cerr << "relax: aborted (" << err.what() << ")\n";
    return 2;
  }
  std::ofstream log = open_output(dir, "convergence.csv", cfg);
  log << "iteration,tau,energy,energy_change,orbital_residual,eigen_residual\n";
  for (const auto& row : result.log)
    log << row.iteration << ',' << format_double(row.tau) << ',' << format_double(row.energy)
        << ',' << format_double(row.energy_change) << ','
        << format_double(row.orbital_residual) << ',' << format_double(row.eigen_residual)
        << '\n';
  write_final_state(dir, cfg, system, result.state, result.epsilon);
  std::cout << "relax: converged after " << result.iterations
            << " steps, eigenenergy = " << format_double(result.epsilon) << '\n';
  return 0;
}

int run_propagate(const RunConfig& cfg, const System& system) {
  PropagationState initial = build_initial_state(cfg, system);
  const fs::path dir(cfg.output_directory);
  std::ofstream csv = open_output(dir, "observables.csv", cfg);
  csv << "t,energy,Na,Nm,norm_C";
  for (int k = 1; k <= system.M(); ++k) csv << ",occ_a_" << k;
  for (int k = 1; k <= system.M_prime(); ++k) csv << ",occ_m_" << k;
  csv << '\n';

  long long record_index = 0;
  PropagationState last_state = initial;
  auto on_record = [&](const PropagationState& state, const ObservableRecord& rec) {
    csv << format_double(rec.time) << ',' << format_double(rec.energy) << ','
        << format_double(rec.Na) << ',' << format_double(rec.Nm) << ','
        << format_double(rec.norm_C);
    for (int k = 0; k < rec.occ_a.size(); ++k) csv << ',' << format_double(rec.occ_a[k]);
    for (int k = 0; k < rec.occ_m.size(); ++k) csv << ',' << format_double(rec.occ_m[k]);
    csv << '\n';
    if (cfg.density_every > 0 && record_index % cfg.density_every == 0) {
      write_density_snapshot(dir, cfg, "density_a", record_index, system.grid, rec.density_a);
      write_density_snapshot(dir, cfg, "density_m", record_index, system.grid, rec.density_m);
    }
    ++record_index;
    last_state = state;
  };

  try {
    propagate(initial, cfg.integrator, system, cfg.integrator.record_every, on_record);
  } catch (const PropagationError& err) {
    std::ofstream diag = open_output(dir, "diagnostic.txt", cfg);
    diag << "propagation aborted: " << err.what() << "\nlast good time: " << err.last_good_time
         << '\n';
    std::cerr << "propagate: aborted (" << err.what() << ")\n";
    return 2;
  }
  write_final_state(dir, cfg, system, last_state, 0.0);
  std::cout << "propagate: reached t = " << format_double(cfg.integrator.t_final) << " with "
            << record_index << " records\n";
  return 0;
}

int run_validate(const RunConfig& cfg, const System& system) {
  std::vector<ValidationCheck> checks = run_validation(cfg);
  size_t passed = 0;
  for (const auto& c : checks) {
    std::printf("%-4s %-62s measured %.3e  tol %.3e\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.measured, c.tolerance);
    if (c.passed) ++passed;
  }
  std::printf("%zu/%zu invariant checks passed\n", passed, checks.size());

  if (cfg.output_directory != ".") {
    const fs::path dir(cfg.output_directory);
    fs::create_directories(dir);
    if (system.basis.size() <= 10000) {
      std::ofstream basis_out(dir / "basis.txt");
      system.basis.dump(basis_out);
      OrbitalSet orbitals = trap_eigen_orbitals(system);
      IntegralTables tables = compute_integrals(orbitals, system.interaction, system.grid,
                                                system.h_atom, system.h_mol);
      std::ofstream ham_out(dir / "hamiltonian.txt");
      dump_coordinates(ham_out, assemble_hamiltonian(system.basis, tables));
    }
  }
  return passed == checks.size() ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, RunMode mode) {
  System system = build_system(config);
  switch (mode) {
    case RunMode::relax:
      return run_relax(config, system);
    case RunMode::propagate:
      return run_propagate(config, system);
    case RunMode::validate:
      return run_validate(config, system);
  }
  return 1;
}

}  // namespace amc
