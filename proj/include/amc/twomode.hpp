#pragma once

#include "amc/eom.hpp"

namespace amc {

/// Fully variational two-mode theory (one atomic and one molecular orbital).
/// Deliberately re-derived from the closed-form expressions rather than the
/// general tensor machinery, so agreement between the two is a genuine
/// two-path validation.  C is indexed by the molecule number p.
struct TwoModeState {
  GridFunction phi_a;
  GridFunction psi_m;
  CoefficientVector C;  // length floor(N/2) + 1
};

/// Expectation values over the p-ladder:
///   <Na> = sum_p (N-2p) |C_p|^2, <c+bb> = sum_p sqrt(p(N-2p+1)(N-2p+2)) C*_p C_{p-1}, ...
struct TwoModeExpectations {
  double Na = 0.0;
  double Nm = 0.0;
  double NaNam1 = 0.0;  // <Na(Na-1)>
  double NmNmm1 = 0.0;  // <Nm(Nm-1)>
  double NaNm = 0.0;
  Complex cbb{0.0, 0.0};  // <c+ b b>; <b+ b+ c> is its conjugate
};

TwoModeExpectations two_mode_expectations(int N, const CoefficientVector& C);

MeanfieldCouplings two_mode_couplings(int N, const CoefficientVector& C,
                                      const InteractionSpec& interaction, double eps);

/// Orbital equations of motion of the conversion mean field; returns time
/// derivatives (phi_dot, psi_dot) with <phi|phi_dot> = <psi|psi_dot> = 0.
std::pair<GridFunction, GridFunction> two_mode_orbital_rhs(const TwoModeState& state,
                                                           const System& system);

/// Hermitian matrix over the p-ladder, tridiagonal in p: particle-conserving
/// diagonal plus conversion coupling between p and p-1.
ComplexMatrix two_mode_coefficient_matrix(const TwoModeState& state, const System& system);

/// Orbital-explicit energy expression.
double two_mode_energy(const TwoModeState& state, const System& system);

/// Residuals of the stationary equations: orbital equations with Lagrange
/// multipliers recovered by projection, and the eigen-residual ||HC - eC||.
struct TwoModeResidual {
  double orbital_a = 0.0;
  double orbital_m = 0.0;
  double eigen = 0.0;
  double epsilon = 0.0;  // C+ H C
};

TwoModeResidual two_mode_stationary_residual(const TwoModeState& state, const System& system);

}  // namespace amc
