#pragma once

#include "amc/density.hpp"
#include "amc/hamiltonian.hpp"

namespace amc {

/// One factor of a ladder-operator product expression.
struct LadderSymbol {
  bool creator;
  Species species;
  int orbital;
};

inline LadderSymbol atom_creator(int k) { return {true, Species::atom, k}; }
inline LadderSymbol atom_annihilator(int k) { return {false, Species::atom, k}; }
inline LadderSymbol mol_creator(int k) { return {true, Species::molecule, k}; }
inline LadderSymbol mol_annihilator(int k) { return {false, Species::molecule, k}; }

/// Brute-force reference machinery: explicit dense matrices on the enumerated
/// basis, exact eigen-decomposition evolution, exact ground states.  Guarded
/// to dimension <= 4000; validation tool, not production path.
constexpr int kOracleSizeGuard = 4000;

/// Dense matrix of a product of ladder symbols (leftmost factor applied
/// last).  Intermediate configurations may leave the N-conserving space;
/// only the final target is looked up in the basis.
ComplexMatrix build_operator(const ConfigurationBasis& basis,
                             const std::vector<LadderSymbol>& expression);

/// Dense Hamiltonian composed term by term from build_operator, independent
/// of the sparse assembly path.
ComplexMatrix build_dense_hamiltonian(const ConfigurationBasis& basis,
                                      const IntegralTables& tables);

/// C(t) = U exp(-i lambda t) U+ C0 via full eigendecomposition of Hermitian H.
CoefficientVector exact_evolve(const ComplexMatrix& H, const CoefficientVector& C0, double t);

/// Lowest eigenpair of Hermitian H.
std::pair<double, CoefficientVector> exact_ground_state(const ComplexMatrix& H);

/// All six RDM tensors as dense expectation values <C|op|C>.
RdmBundle exact_rdms(const ConfigurationBasis& basis, const CoefficientVector& C);

}  // namespace amc
