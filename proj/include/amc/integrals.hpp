#pragma once

#include "amc/grid.hpp"
#include "amc/interaction.hpp"
#include "amc/orbitals.hpp"

namespace amc {

/// Orbital-space matrix elements of the Hamiltonian.  Two-body and conversion
/// tables absorb the interaction couplings (for general kernels, the kernel
/// itself); the 1/2 prefactors of the intra-species terms are applied at
/// Hamiltonian assembly, not here.
///
/// Index conventions (first index pairs with the unprimed coordinate):
///   W_a(k,s,q,l)      = int phi*_k(r) phi*_s(r') W_a(r,r') phi_q(r) phi_l(r')
///   W_m(k',s',q',l')  = molecular analogue
///   W_am(k,k',q,q')   = int phi*_k(r) psi*_k'(r') W_am(r,r') phi_q(r) psi_q'(r')
///   W_con(k',k,q)     = int psi*_k'((r+r')/2) W_con(r,r') phi_k(r) phi_q(r')
struct IntegralTables {
  ComplexMatrix h_a;  // M x M, Hermitian
  ComplexMatrix h_m;  // M' x M', Hermitian
  Tensor4 W_a;        // (k,s,q,l)
  Tensor4 W_m;        // (k',s',q',l')
  Tensor4 W_am;       // (k,k',q,q')
  Tensor3 W_con;      // (k',k,q), symmetric in k<->q

  int M() const { return static_cast<int>(h_a.rows()); }
  int M_prime() const { return static_cast<int>(h_m.rows()); }
};

IntegralTables compute_integrals(const OrbitalSet& orbitals, const InteractionSpec& interaction,
                                 const SpatialGrid& grid, const OneBodyOperator& h_atom,
                                 const OneBodyOperator& h_mol);

}  // namespace amc
