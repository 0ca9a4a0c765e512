#pragma once

#include "amc/grid.hpp"
#include "amc/hamiltonian.hpp"
#include "amc/interaction.hpp"
#include "amc/orbitals.hpp"

namespace amc {

/// Immutable description of one physical problem: grid, one-body operators
/// for both species, interaction, and the enumerated configuration basis.
struct System {
  SpatialGrid grid;
  OneBodyOperator h_atom;
  OneBodyOperator h_mol;
  InteractionSpec interaction;
  ConfigurationBasis basis;
  double reg_eps = 1e-8;

  int N() const { return basis.N(); }
  int M() const { return basis.M(); }
  int M_prime() const { return basis.M_prime(); }

  static System build(const SpatialGrid& grid, const OneBodyOperatorSpec& atom_spec,
                      const OneBodyOperatorSpec& mol_spec, const InteractionSpec& interaction,
                      int N, int M, int M_prime, double reg_eps = 1e-8);
};

/// Lowest M eigenfunctions of the atomic one-body operator and lowest M' of
/// the molecular one, quadrature-normalized.  Default initial orbitals.
OrbitalSet trap_eigen_orbitals(const System& system);

/// Unit coefficient vector concentrated on the all-atoms configuration with
/// every atom in the lowest orbital.
CoefficientVector all_atoms_ground_coefficients(const ConfigurationBasis& basis);

/// <H> for the current orbitals and coefficients (reassembles the matrix).
double total_energy(const System& system, const OrbitalSet& orbitals,
                    const CoefficientVector& C);

}  // namespace amc
