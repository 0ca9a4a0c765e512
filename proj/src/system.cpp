#include "amc/system.hpp"

#include <Eigen/Eigenvalues>

namespace amc {

System System::build(const SpatialGrid& grid, const OneBodyOperatorSpec& atom_spec,
                     const OneBodyOperatorSpec& mol_spec, const InteractionSpec& interaction,
                     int N, int M, int M_prime, double reg_eps) {
  return System{grid,
                OneBodyOperator(grid, atom_spec),
                OneBodyOperator(grid, mol_spec),
                interaction,
                ConfigurationBasis::enumerate(N, M, M_prime),
                reg_eps};
}

namespace {

std::vector<GridFunction> lowest_eigenfunctions(const SpatialGrid& grid,
                                                const OneBodyOperator& h, int count) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.dense());
  std::vector<GridFunction> out;
  out.reserve(count);
  const double scale = 1.0 / std::sqrt(grid.spacing);  // unit 2-norm -> unit quadrature norm
  for (int k = 0; k < count; ++k)
    out.push_back(es.eigenvectors().col(k).cast<Complex>() * scale);
  return out;
}

}  // namespace

OrbitalSet trap_eigen_orbitals(const System& system) {
  OrbitalSet orbitals;
  orbitals.atomic = lowest_eigenfunctions(system.grid, system.h_atom, system.M());
  orbitals.molecular = lowest_eigenfunctions(system.grid, system.h_mol, system.M_prime());
  return orbitals;
}

CoefficientVector all_atoms_ground_coefficients(const ConfigurationBasis& basis) {
  Configuration c;
  c.atom_occ = Eigen::VectorXi::Zero(basis.M());
  c.atom_occ[0] = basis.N();
  c.mol_occ = Eigen::VectorXi::Zero(basis.M_prime());
  auto idx = basis.index_of(c);
  if (!idx) throw PreconditionError("initial coefficients: all-atom configuration missing");
  CoefficientVector C = CoefficientVector::Zero(basis.size());
  C[*idx] = 1.0;
  return C;
}

double total_energy(const System& system, const OrbitalSet& orbitals,
                    const CoefficientVector& C) {
  IntegralTables tables =
      compute_integrals(orbitals, system.interaction, system.grid, system.h_atom, system.h_mol);
  SparseHamiltonian H = assemble_hamiltonian(system.basis, tables);
  return expectation(H, C);
}

}  // namespace amc
