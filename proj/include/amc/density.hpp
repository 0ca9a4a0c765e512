#pragma once

#include "amc/fock.hpp"

namespace amc {

/// Reduced density matrices of the expansion coefficients.
///
///   rho_a(k,q)        = <b+_k b_q>                (Hermitian, PSD)
///   rho_m(k',q')      = <c+_k' c_q'>
///   rho_a2(k,s,l,q)   = <b+_k b+_s b_l b_q>
///   rho_m2(k',s',l',q') = <c+_k' c+_s' c_l' c_q'>
///   rho_am(k,k',q,q') = <b+_k b_q c+_k' c_q'>
///   rho_conv(k',k,q)  = <c+_k' b_k b_q>           (symmetric in k<->q)
///
/// The reversed-conversion tensor is the elementwise conjugate of rho_conv
/// and is not stored.  Particle-conserving tensors couple equal-p sectors
/// only; rho_conv couples p <-> p-1.
struct RdmBundle {
  ComplexMatrix rho_a;
  ComplexMatrix rho_m;
  Tensor4 rho_a2;
  Tensor4 rho_m2;
  Tensor4 rho_am;
  Tensor3 rho_conv;

  double atom_number() const { return rho_a.trace().real(); }
  double molecule_number() const { return rho_m.trace().real(); }
};

/// All six tensors by on-the-fly ladder application per basis state.
/// Pre: ||C|| = 1 within 1e-8.
RdmBundle compute_rdms(const ConfigurationBasis& basis, const CoefficientVector& C);

/// Eigenvalue-floored inverse: eigenvalues are replaced by
/// lambda + eps * exp(-lambda / eps), which keeps unoccupied orbitals finite.
ComplexMatrix regularized_inverse(const ComplexMatrix& rho, double eps);

/// Eigenvalues of a one-body RDM, descending.
RealVector natural_occupations(const ComplexMatrix& rho);

}  // namespace amc
