#include "amc/twomode.hpp"

#include "amc/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace amc;
using namespace amc::testing;

TEST_CASE("ladder expectation identities") {
  std::mt19937_64 rng(51);
  for (int N : {2, 4, 5, 8}) {
    CoefficientVector C = random_coefficients(N / 2 + 1, rng);
    TwoModeExpectations e = two_mode_expectations(N, C);
    CHECK(e.Na + 2.0 * e.Nm == doctest::Approx(N).epsilon(1e-13));

    // <c+ b b> from the closed form equals the dense ladder oracle
    ConfigurationBasis basis = ConfigurationBasis::enumerate(N, 1, 1);
    ComplexMatrix op =
        build_operator(basis, {mol_creator(0), atom_annihilator(0), atom_annihilator(0)});
    CHECK(std::abs(e.cbb - Complex(C.dot(op * C))) < 1e-13);
  }
}

TEST_CASE("pure-atom reduction: projected GP with Lambda_a = lambda_a (N-1)") {
  const int N = 6;
  const double la = 0.31;
  System system = harmonic_system(N, 1, 1, InteractionSpec::contact(la, 0, 0, 0));
  std::mt19937_64 rng(53);
  TwoModeState tm;
  tm.phi_a = random_orthonormal(system.grid, 1, rng)[0];
  tm.psi_m = random_orthonormal(system.grid, 1, rng)[0];
  tm.C = CoefficientVector::Zero(N / 2 + 1);
  tm.C[0] = 1.0;
  auto [phi_dot, psi_dot] = two_mode_orbital_rhs(tm, system);
  GridFunction gp = gp_rhs_projected(system.grid, system.h_atom, la * (N - 1), tm.phi_a);
  CHECK((phi_dot - gp).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("trap eigenstates with zero couplings have vanishing RHS") {
  System system = harmonic_system(4, 1, 1, InteractionSpec::contact(0, 0, 0, 0));
  OrbitalSet eigen = trap_eigen_orbitals(system);
  TwoModeState tm;
  tm.phi_a = eigen.atomic[0];
  tm.psi_m = eigen.molecular[0];
  tm.C = CoefficientVector::Zero(3);
  tm.C[0] = 1.0;
  auto [phi_dot, psi_dot] = two_mode_orbital_rhs(tm, system);
  CHECK(norm(system.grid, phi_dot) < 1e-9);
  CHECK(norm(system.grid, psi_dot) < 1e-9);
}

TEST_CASE("coefficient matrix: structure and the N=2 off-diagonal") {
  std::mt19937_64 rng(57);
  System system = harmonic_system(2, 1, 1, InteractionSpec::contact(0.2, 0.15, 0.1, 0.44));
  TwoModeState tm;
  tm.phi_a = random_orthonormal(system.grid, 1, rng)[0];
  tm.psi_m = random_orthonormal(system.grid, 1, rng)[0];
  tm.C = random_coefficients(2, rng);
  ComplexMatrix H = two_mode_coefficient_matrix(tm, system);
  const Complex expected =
      0.44 * inner(system.grid, tm.psi_m, GridFunction(tm.phi_a.cwiseProduct(tm.phi_a)));
  CHECK(std::abs(H(1, 0) - expected) < 1e-13);

  System decoupled = harmonic_system(6, 1, 1, InteractionSpec::contact(0.2, 0.15, 0.1, 0.0));
  TwoModeState tm6{tm.phi_a, tm.psi_m, random_coefficients(4, rng)};
  ComplexMatrix H6 = two_mode_coefficient_matrix(tm6, decoupled);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(H6(i, j)) == 0.0);
}

TEST_CASE("two-path agreement with the general machinery") {
  std::mt19937_64 rng(59);
  System system = harmonic_system(5, 1, 1, InteractionSpec::contact(0.17, 0.09, -0.06, 0.28));
  for (int trial = 0; trial < 5; ++trial) {
    TwoModeState tm;
    tm.phi_a = random_orthonormal(system.grid, 1, rng)[0];
    tm.psi_m = random_orthonormal(system.grid, 1, rng)[0];
    tm.C = random_coefficients(system.basis.size(), rng);

    OrbitalSet orbitals{{tm.phi_a}, {tm.psi_m}};
    IntegralTables tables = compute_integrals(orbitals, system.interaction, system.grid,
                                              system.h_atom, system.h_mol);
    SparseHamiltonian H = assemble_hamiltonian(system.basis, tables);
    CHECK((H.dense() - two_mode_coefficient_matrix(tm, system)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(two_mode_energy(tm, system) - expectation(H, tm.C)) < 1e-10);

    RdmBundle rdms = compute_rdms(system.basis, tm.C);
    EomWorkspace w = build_local_potentials(orbitals, system.interaction, system.grid);
    OrbitalDerivatives d = orbital_rhs(orbitals, rdms, w, system);
    auto [phi_dot, psi_dot] = two_mode_orbital_rhs(tm, system);
    CHECK((d.atomic[0] - phi_dot).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((d.molecular[0] - psi_dot).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("stationary residuals") {
  System system = harmonic_system(4, 1, 1, InteractionSpec::contact(0, 0, 0, 0));
  OrbitalSet eigen = trap_eigen_orbitals(system);
  TwoModeState tm;
  tm.phi_a = eigen.atomic[0];
  tm.psi_m = eigen.molecular[0];
  tm.C = CoefficientVector::Zero(3);
  tm.C[0] = 1.0;

  SUBCASE("trap eigenfunctions with a pure-atom ladder are stationary") {
    TwoModeResidual r = two_mode_stationary_residual(tm, system);
    CHECK(r.orbital_a < 1e-10);
    CHECK(r.orbital_m < 1e-10);
    CHECK(r.eigen < 1e-10);
    CHECK(r.epsilon == doctest::Approx(2.0).epsilon(1e-9));  // N omega / 2
  }
  SUBCASE("a random state is not stationary") {
    std::mt19937_64 rng(61);
    System coupled = harmonic_system(4, 1, 1, InteractionSpec::contact(0.2, 0.1, 0.1, 0.4));
    TwoModeState random{random_orthonormal(coupled.grid, 1, rng)[0],
                        random_orthonormal(coupled.grid, 1, rng)[0],
                        random_coefficients(3, rng)};
    TwoModeResidual r = two_mode_stationary_residual(random, coupled);
    CHECK(r.orbital_a > 1e-3);
    CHECK(r.eigen > 1e-3);
  }
}
