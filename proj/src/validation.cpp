#include "amc/validation.hpp"

#include "amc/oracle.hpp"
#include "amc/twomode.hpp"

#include <random>

namespace amc {

namespace {

std::vector<GridFunction> random_orthonormal(const SpatialGrid& grid, int count,
                                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<GridFunction> set(count);
  for (auto& f : set) {
    f.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      // random smooth-ish envelope so kinetic energies stay moderate
      const double x = grid.points[i];
      const double env = std::exp(-0.5 * x * x / std::max(1.0, 0.02 * grid.length * grid.length));
      f[i] = Complex(gauss(rng), gauss(rng)) * env;
    }
  }
  lowdin_orthonormalize(grid, set);
  return set;
}

CoefficientVector random_coefficients(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoefficientVector C(dim);
  for (int i = 0; i < dim; ++i) C[i] = Complex(gauss(rng), gauss(rng));
  C /= C.norm();
  return C;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<ValidationCheck> run_validation(const RunConfig& config) {
  std::vector<ValidationCheck> checks;
  auto push = [&](const std::string& name, double measured, double tol,
                  const std::string& detail = "") {
    checks.push_back({name, measured <= tol, measured, tol, detail});
  };
  std::mt19937_64 rng(0x5eed5eedULL);

  // ---- grid operator identities ------------------------------------------
  {
    SpatialGrid grid = SpatialGrid::uniform(128, 16.0);
    OneBodyOperatorSpec spec{1.0, RealVector::Zero(128), 0.0};
    OneBodyOperator h(grid, spec);
    const double k = 2.0 * M_PI * 3 / grid.length;
    GridFunction plane(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
      plane[i] = std::exp(Complex(0.0, k * grid.points[i]));
    GridFunction applied = h.apply(plane);
    double err = (applied - 0.5 * k * k * plane).cwiseAbs().maxCoeff();
    push("grid: plane wave is kinetic eigenfunction", err, 1e-9);

    std::normal_distribution<double> gauss(0.0, 1.0);
    GridFunction f(grid.n_points), g(grid.n_points);
    RealVector V(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      f[i] = Complex(gauss(rng), gauss(rng));
      g[i] = Complex(gauss(rng), gauss(rng));
      V[i] = gauss(rng);
    }
    OneBodyOperator hv(grid, {1.3, V, 0.4});
    Complex lhs = inner(grid, f, hv.apply(g));
    Complex rhs = std::conj(inner(grid, g, hv.apply(f)));
    push("grid: one-body operator Hermiticity", std::abs(lhs - rhs), 1e-10);

    GridFunction combo = hv.apply(GridFunction(0.7 * f + Complex(0.0, 2.0) * g)) -
                         0.7 * hv.apply(f) - Complex(0.0, 2.0) * hv.apply(g);
    push("grid: one-body operator linearity", combo.cwiseAbs().maxCoeff(), 1e-9);
    push("grid: inner(f,f) real and nonnegative",
         std::abs(inner(grid, f, f).imag()) + std::max(0.0, -inner(grid, f, f).real()), 1e-12);
  }

  // ---- ladder algebra ------------------------------------------------------
  {
    ConfigurationBasis basis = ConfigurationBasis::enumerate(5, 2, 2);
    double worst = 0.0;
    for (int i = 0; i < basis.size(); ++i) {
      auto idx = basis.index_of(basis.config(i));
      worst = std::max(worst, idx && *idx == i ? 0.0 : 1.0);
      for (int k = 0; k < basis.M(); ++k) {
        LadderResult down = apply_annihilator(basis.config(i), Species::atom, k);
        double n_back = 0.0;
        if (!down.vanished) {
          LadderResult up = apply_creator(down.target, Species::atom, k);
          n_back = down.amplitude * up.amplitude;
          worst = std::max(worst, up.target == basis.config(i) ? 0.0 : 1.0);
        }
        worst = std::max(worst, std::abs(n_back - basis.config(i).atom_occ[k]));
      }
    }
    push("fock: index round-trip and <b+ b> occupation identity", worst, 1e-12);

    // conversion operators keep the basis closed
    double closure = 0.0;
    for (int i = 0; i < basis.size(); ++i)
      for (int kp = 0; kp < basis.M_prime(); ++kp)
        for (int k = 0; k < basis.M(); ++k)
          for (int q = 0; q < basis.M(); ++q) {
            LadderResult a1 = apply_annihilator(basis.config(i), Species::atom, q);
            if (a1.vanished) continue;
            LadderResult a2 = apply_annihilator(a1.target, Species::atom, k);
            if (a2.vanished) continue;
            LadderResult m1 = apply_creator(a2.target, Species::molecule, kp);
            if (!basis.index_of(m1.target)) closure = 1.0;
          }
    push("fock: conversion operator closure within the basis", closure, 0.0);
  }

  // ---- configured system: oracle agreement ---------------------------------
  System configured = build_system(config);
  const bool oracle_ok = configured.basis.size() <= 600;
  {
    auto fallback_system = [] {
      SpatialGrid grid = SpatialGrid::uniform(64, 12.0);
      RealVector V(grid.n_points);
      for (int i = 0; i < grid.n_points; ++i) V[i] = 0.5 * grid.points[i] * grid.points[i];
      return System::build(grid, {1.0, V, 0.0}, {2.0, 2.0 * V, 0.0},
                           InteractionSpec::contact(0.1, 0.05, 0.02, 0.2), 4, 2, 1, 1e-8);
    };
    // the dense oracle is the reference; fall back to a small stand-in when
    // the configured basis is too large for it to run quickly
    System sys = oracle_ok ? configured : fallback_system();
    OrbitalSet orbitals;
    orbitals.atomic = random_orthonormal(sys.grid, sys.M(), rng);
    orbitals.molecular = random_orthonormal(sys.grid, sys.M_prime(), rng);
    IntegralTables tables =
        compute_integrals(orbitals, sys.interaction, sys.grid, sys.h_atom, sys.h_mol);
    SparseHamiltonian H = assemble_hamiltonian(sys.basis, tables);
    ComplexMatrix dense = H.dense();
    push("hamiltonian: sparse equals dense ladder-composed oracle",
         max_abs(dense - build_dense_hamiltonian(sys.basis, tables)), 1e-12);
    push("hamiltonian: Hermiticity", max_abs(dense - dense.adjoint()), 1e-14);

    double cross_sector = 0.0;
    for (const auto& e : H.entries)
      if (std::abs(sys.basis.sector(e.row) - sys.basis.sector(e.col)) >= 2)
        cross_sector = std::max(cross_sector, std::abs(e.value));
    push("hamiltonian: couplings only within |dp| <= 1", cross_sector, 0.0);

    CoefficientVector C = random_coefficients(sys.basis.size(), rng);
    RdmBundle rdms = compute_rdms(sys.basis, C);
    RdmBundle exact = exact_rdms(sys.basis, C);
    double rdm_err = max_abs(rdms.rho_a - exact.rho_a);
    rdm_err = std::max(rdm_err, max_abs(rdms.rho_m - exact.rho_m));
    for (size_t i = 0; i < rdms.rho_a2.data().size(); ++i)
      rdm_err = std::max(rdm_err, std::abs(rdms.rho_a2.data()[i] - exact.rho_a2.data()[i]));
    for (size_t i = 0; i < rdms.rho_m2.data().size(); ++i)
      rdm_err = std::max(rdm_err, std::abs(rdms.rho_m2.data()[i] - exact.rho_m2.data()[i]));
    for (size_t i = 0; i < rdms.rho_am.data().size(); ++i)
      rdm_err = std::max(rdm_err, std::abs(rdms.rho_am.data()[i] - exact.rho_am.data()[i]));
    for (size_t i = 0; i < rdms.rho_conv.data().size(); ++i)
      rdm_err = std::max(rdm_err, std::abs(rdms.rho_conv.data()[i] - exact.rho_conv.data()[i]));
    push("rdms: ladder evaluation equals dense expectation values", rdm_err, 1e-12);
    push("rdms: trace(rho_a) + 2 trace(rho_m) = N",
         std::abs(rdms.atom_number() + 2.0 * rdms.molecule_number() - sys.N()), 1e-10);

    EomWorkspace workspace = build_local_potentials(orbitals, sys.interaction, sys.grid);
    OrbitalDerivatives d = orbital_rhs(orbitals, rdms, workspace, sys);
    double tangency = 0.0;
    for (int k = 0; k < sys.M(); ++k)
      for (int q = 0; q < sys.M(); ++q)
        tangency = std::max(tangency, std::abs(inner(sys.grid, orbitals.atomic[k], d.atomic[q])));
    for (int k = 0; k < sys.M_prime(); ++k)
      for (int q = 0; q < sys.M_prime(); ++q)
        tangency = std::max(
            tangency, std::abs(inner(sys.grid, orbitals.molecular[k], d.molecular[q])));
    push("eom: projector tangency <f_k|f_dot_q> = 0", tangency, 1e-10);

    // gauge transformation: phases on each species, coefficients compensated
    const double beta = 0.37, gamma = -1.21;
    OrbitalSet rotated = orbitals;
    for (auto& f : rotated.atomic) f *= std::exp(Complex(0.0, beta));
    for (auto& f : rotated.molecular) f *= std::exp(Complex(0.0, gamma));
    CoefficientVector Cr = C;
    for (int i = 0; i < sys.basis.size(); ++i) {
      const int p = sys.basis.sector(i);
      const int atoms = sys.N() - 2 * p;
      Cr[i] *= std::exp(Complex(0.0, -(atoms * beta + p * gamma)));
    }
    ObservableRecord before = observe(sys, orbitals, C, 0.0);
    ObservableRecord after = observe(sys, rotated, Cr, 0.0);
    double gauge = std::abs(before.energy - after.energy);
    gauge = std::max(gauge, (before.density_a - after.density_a).cwiseAbs().maxCoeff());
    gauge = std::max(gauge, (before.density_m - after.density_m).cwiseAbs().maxCoeff());
    gauge = std::max(gauge, (before.occ_a - after.occ_a).cwiseAbs().maxCoeff());
    gauge = std::max(gauge, (before.occ_m - after.occ_m).cwiseAbs().maxCoeff());
    push("gauge: phase transformation leaves energy, densities, occupations", gauge, 1e-12);
  }

  // ---- two-mode equivalence -------------------------------------------------
  {
    SpatialGrid grid = SpatialGrid::uniform(64, 12.0);
    RealVector V(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) V[i] = 0.5 * grid.points[i] * grid.points[i];
    System sys = System::build(grid, {1.0, V, 0.0}, {2.0, 2.0 * V, 0.3},
                               InteractionSpec::contact(0.1, 0.07, -0.04, 0.25), 4, 1, 1, 1e-8);
    TwoModeState tm;
    tm.phi_a = random_orthonormal(grid, 1, rng)[0];
    tm.psi_m = random_orthonormal(grid, 1, rng)[0];
    tm.C = random_coefficients(sys.basis.size(), rng);

    OrbitalSet orbitals{{tm.phi_a}, {tm.psi_m}};
    IntegralTables tables =
        compute_integrals(orbitals, sys.interaction, sys.grid, sys.h_atom, sys.h_mol);
    SparseHamiltonian H = assemble_hamiltonian(sys.basis, tables);
    ComplexMatrix Htm = two_mode_coefficient_matrix(tm, sys);
    push("two-mode: coefficient matrix equals general assembly",
         max_abs(H.dense() - Htm), 1e-12);
    push("two-mode: energy equals general expectation",
         std::abs(two_mode_energy(tm, sys) - expectation(H, tm.C)), 1e-10);

    RdmBundle rdms = compute_rdms(sys.basis, tm.C);
    EomWorkspace ws = build_local_potentials(orbitals, sys.interaction, sys.grid);
    OrbitalDerivatives d = orbital_rhs(orbitals, rdms, ws, sys);
    auto [phi_dot, psi_dot] = two_mode_orbital_rhs(tm, sys);
    double rhs_err = (d.atomic[0] - phi_dot).cwiseAbs().maxCoeff();
    rhs_err = std::max(rhs_err, (d.molecular[0] - psi_dot).cwiseAbs().maxCoeff());
    push("two-mode: orbital RHS equals general machinery", rhs_err, 1e-10);
  }

  // ---- general kernel consistency -------------------------------------------
  {
    SpatialGrid grid = SpatialGrid::uniform(64, 12.0);
    RealVector V(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) V[i] = 0.5 * grid.points[i] * grid.points[i];
    InteractionSpec contact = InteractionSpec::contact(0.1, 0.05, 0.02, 0.2);
    InteractionSpec general = InteractionSpec::general(
        InteractionSpec::delta_kernel(grid.n_points, grid.spacing, 0.1),
        InteractionSpec::delta_kernel(grid.n_points, grid.spacing, 0.05),
        InteractionSpec::delta_kernel(grid.n_points, grid.spacing, 0.02),
        InteractionSpec::delta_kernel(grid.n_points, grid.spacing, 0.2));
    OneBodyOperator ha(grid, {1.0, V, 0.0});
    OneBodyOperator hm(grid, {2.0, 2.0 * V, 0.0});
    OrbitalSet orbitals;
    orbitals.atomic = random_orthonormal(grid, 2, rng);
    orbitals.molecular = random_orthonormal(grid, 1, rng);
    IntegralTables tc = compute_integrals(orbitals, contact, grid, ha, hm);
    IntegralTables tg = compute_integrals(orbitals, general, grid, ha, hm);
    double err = 0.0;
    for (size_t i = 0; i < tc.W_a.data().size(); ++i)
      err = std::max(err, std::abs(tc.W_a.data()[i] - tg.W_a.data()[i]));
    for (size_t i = 0; i < tc.W_con.data().size(); ++i)
      err = std::max(err, std::abs(tc.W_con.data()[i] - tg.W_con.data()[i]));
    EomWorkspace wc = build_local_potentials(orbitals, contact, grid);
    EomWorkspace wg = build_local_potentials(orbitals, general, grid);
    for (size_t i = 0; i < wc.W_con_fwd.size(); ++i)
      err = std::max(err, (wc.W_con_fwd[i] - wg.W_con_fwd[i]).cwiseAbs().maxCoeff());
    for (size_t i = 0; i < wc.W_con_bwd.size(); ++i)
      err = std::max(err, (wc.W_con_bwd[i] - wg.W_con_bwd[i]).cwiseAbs().maxCoeff());
    push("kernels: discrete delta reproduces contact integrals and potentials", err, 1e-10);
  }

  return checks;
}

}  // namespace amc
