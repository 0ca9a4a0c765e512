#pragma once

#include "amc/density.hpp"
#include "amc/system.hpp"

namespace amc {

/// Time-dependent local potentials entering the orbital equations of motion.
/// For contact interactions these are products of orbitals; for general
/// kernels they are single quadratures over r', with the conversion pair
/// sampled at centre-of-mass points on the half-point grid.
struct EomWorkspace {
  int M = 0, M_prime = 0;
  std::vector<GridFunction> W_a;        // (s,l): flat s*M + l
  std::vector<GridFunction> W_m;        // (s',l')
  std::vector<GridFunction> W_am;       // (k',q'): molecular pair, atomic equation
  std::vector<GridFunction> W_ma;       // (k,q):   atomic pair, molecular equation
  std::vector<GridFunction> W_con_fwd;  // (k,q):   drives the molecular equation
  std::vector<GridFunction> W_con_bwd;  // (q,k'):  drives the atomic equation

  const GridFunction& wa(int s, int l) const { return W_a[s * M + l]; }
  const GridFunction& wm(int s, int l) const { return W_m[s * M_prime + l]; }
  const GridFunction& wam(int kp, int qp) const { return W_am[kp * M_prime + qp]; }
  const GridFunction& wma(int k, int q) const { return W_ma[k * M + q]; }
  const GridFunction& wcon_fwd(int k, int q) const { return W_con_fwd[k * M + q]; }
  const GridFunction& wcon_bwd(int q, int kp) const { return W_con_bwd[q * M_prime + kp]; }
};

EomWorkspace build_local_potentials(const OrbitalSet& orbitals,
                                    const InteractionSpec& interaction, const SpatialGrid& grid);

/// Time derivatives of all M + M' orbitals under the gauge-fixed equations of
/// motion.  The projectors onto the complement of each occupied set act on
/// the full bracket, so <f_k|f_dot_q> = 0 holds by construction.
struct OrbitalDerivatives {
  std::vector<GridFunction> atomic;
  std::vector<GridFunction> molecular;
};

OrbitalDerivatives orbital_rhs(const OrbitalSet& orbitals, const RdmBundle& rdms,
                               const EomWorkspace& workspace, const System& system);

/// dC/dt = -i H C.
CoefficientVector coefficient_rhs(const SparseHamiltonian& H, const CoefficientVector& C);

/// The six time-dependent mean-field couplings of the two-mode limit,
/// Lambda = lambda * <pair correlator> / <occupation>, with the denominators
/// floored at eps (flagged through `regularized`).
struct MeanfieldCouplings {
  double a = 0.0;        // lambda_a <Na(Na-1)> / <Na>
  double am = 0.0;       // lambda_am <Na Nm> / <Na>
  Complex con{0.0, 0.0}; // lambda_con <b+b+c> / <Na>
  double m = 0.0;        // lambda_m <Nm(Nm-1)> / <Nm>
  double ma = 0.0;       // lambda_am <Na Nm> / <Nm>
  Complex con_prime{0.0, 0.0};  // lambda_con <c+bb> / <Nm>
  bool regularized = false;
};

/// Requires M = M' = 1 reduced density matrices.
MeanfieldCouplings meanfield_couplings(const RdmBundle& rdms, const InteractionSpec& interaction,
                                       double eps);

}  // namespace amc
