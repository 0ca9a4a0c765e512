#include "amc/twomode.hpp"

#include <cmath>

namespace amc {

namespace {

void require_two_mode(const System& system) {
  if (system.M() != 1 || system.M_prime() != 1)
    throw PreconditionError("two-mode theory requires M = M' = 1");
  if (system.interaction.kind != InteractionSpec::Kind::contact)
    throw PreconditionError("two-mode theory is formulated for contact interactions");
}

double conversion_root(int N, int p) {
  return std::sqrt(static_cast<double>(p) * (N - 2 * p + 1) * (N - 2 * p + 2));
}

}  // namespace

TwoModeExpectations two_mode_expectations(int N, const CoefficientVector& C) {
  if (C.size() != N / 2 + 1) throw DimensionError("two-mode expectations: C has wrong length");
  TwoModeExpectations e;
  for (int p = 0; p <= N / 2; ++p) {
    const double w = std::norm(C[p]);
    const double atoms = N - 2 * p;
    e.Na += atoms * w;
    e.Nm += p * w;
    e.NaNam1 += atoms * (atoms - 1) * w;
    e.NmNmm1 += static_cast<double>(p) * (p - 1) * w;
    e.NaNm += p * atoms * w;
    if (p >= 1) e.cbb += conversion_root(N, p) * std::conj(C[p]) * C[p - 1];
  }
  return e;
}

MeanfieldCouplings two_mode_couplings(int N, const CoefficientVector& C,
                                      const InteractionSpec& interaction, double eps) {
  TwoModeExpectations e = two_mode_expectations(N, C);
  MeanfieldCouplings L;
  L.regularized = (e.Na < eps) || (e.Nm < eps);
  const double na = std::max(e.Na, eps);
  const double nm = std::max(e.Nm, eps);
  L.a = interaction.lambda_a * e.NaNam1 / na;
  L.am = interaction.lambda_am * e.NaNm / na;
  L.con = interaction.lambda_con * std::conj(e.cbb) / na;
  L.m = interaction.lambda_m * e.NmNmm1 / nm;
  L.ma = interaction.lambda_am * e.NaNm / nm;
  L.con_prime = interaction.lambda_con * e.cbb / nm;
  return L;
}

std::pair<GridFunction, GridFunction> two_mode_orbital_rhs(const TwoModeState& state,
                                                           const System& system) {
  require_two_mode(system);
  const SpatialGrid& grid = system.grid;
  const double sqrt2 = std::sqrt(2.0);
  MeanfieldCouplings L =
      two_mode_couplings(system.N(), state.C, system.interaction, system.reg_eps);

  const GridFunction& phi = state.phi_a;
  const GridFunction& psi = state.psi_m;
  GridFunction abs_phi2 = phi.cwiseAbs2().cast<Complex>();
  GridFunction abs_psi2 = psi.cwiseAbs2().cast<Complex>();

  GridFunction bracket_a = system.h_atom.apply(phi) +
                           L.a * abs_phi2.cwiseProduct(phi) + L.am * abs_psi2.cwiseProduct(phi) +
                           sqrt2 * L.con * phi.conjugate().cwiseProduct(psi);
  GridFunction bracket_m = system.h_mol.apply(psi) +
                           L.m * abs_psi2.cwiseProduct(psi) + L.ma * abs_phi2.cwiseProduct(psi) +
                           (L.con_prime / sqrt2) * phi.cwiseProduct(phi);

  GridFunction phi_dot = -kImag * (bracket_a - inner(grid, phi, bracket_a) * phi);
  GridFunction psi_dot = -kImag * (bracket_m - inner(grid, psi, bracket_m) * psi);
  return {phi_dot, psi_dot};
}

ComplexMatrix two_mode_coefficient_matrix(const TwoModeState& state, const System& system) {
  require_two_mode(system);
  const SpatialGrid& grid = system.grid;
  const int N = system.N();
  const auto& lam = system.interaction;
  const GridFunction& phi = state.phi_a;
  const GridFunction& psi = state.psi_m;

  const double ha = inner(grid, phi, system.h_atom.apply(phi)).real();
  const double hm = inner(grid, psi, system.h_mol.apply(psi)).real();
  const double Waa = inner(grid, GridFunction(phi.cwiseProduct(phi)),
                           GridFunction(phi.cwiseProduct(phi))).real();
  const double Wmm = inner(grid, GridFunction(psi.cwiseProduct(psi)),
                           GridFunction(psi.cwiseProduct(psi))).real();
  const double Wam = inner(grid, GridFunction(phi.cwiseProduct(psi)),
                           GridFunction(phi.cwiseProduct(psi))).real();
  const Complex conv = inner(grid, psi, GridFunction(phi.cwiseProduct(phi)));  // <psi|phi^2>

  const int dim = N / 2 + 1;
  ComplexMatrix H = ComplexMatrix::Zero(dim, dim);
  for (int p = 0; p < dim; ++p) {
    const double atoms = N - 2 * p;
    H(p, p) = atoms * ha + 0.5 * lam.lambda_a * atoms * (atoms - 1) * Waa + p * hm +
              0.5 * lam.lambda_m * p * (p - 1) * Wmm + lam.lambda_am * p * atoms * Wam;
    if (p >= 1) {
      const Complex off = (lam.lambda_con / std::sqrt(2.0)) * conversion_root(N, p) * conv;
      H(p, p - 1) = off;
      H(p - 1, p) = std::conj(off);
    }
  }
  return H;
}

double two_mode_energy(const TwoModeState& state, const System& system) {
  require_two_mode(system);
  const SpatialGrid& grid = system.grid;
  const auto& lam = system.interaction;
  TwoModeExpectations e = two_mode_expectations(system.N(), state.C);
  const GridFunction& phi = state.phi_a;
  const GridFunction& psi = state.psi_m;

  const double ha = inner(grid, phi, system.h_atom.apply(phi)).real();
  const double hm = inner(grid, psi, system.h_mol.apply(psi)).real();
  const double Waa = inner(grid, GridFunction(phi.cwiseProduct(phi)),
                           GridFunction(phi.cwiseProduct(phi))).real();
  const double Wmm = inner(grid, GridFunction(psi.cwiseProduct(psi)),
                           GridFunction(psi.cwiseProduct(psi))).real();
  const double Wam = inner(grid, GridFunction(phi.cwiseProduct(psi)),
                           GridFunction(phi.cwiseProduct(psi))).real();
  const Complex conv = inner(grid, psi, GridFunction(phi.cwiseProduct(phi)));

  double E = e.Na * ha + 0.5 * lam.lambda_a * e.NaNam1 * Waa + e.Nm * hm +
             0.5 * lam.lambda_m * e.NmNmm1 * Wmm + lam.lambda_am * e.NaNm * Wam;
  E += (lam.lambda_con / std::sqrt(2.0)) * 2.0 * (e.cbb * conv).real();
  return E;
}

TwoModeResidual two_mode_stationary_residual(const TwoModeState& state, const System& system) {
  require_two_mode(system);
  const SpatialGrid& grid = system.grid;
  const auto& lam = system.interaction;
  const double sqrt2 = std::sqrt(2.0);
  TwoModeExpectations e = two_mode_expectations(system.N(), state.C);
  const GridFunction& phi = state.phi_a;
  const GridFunction& psi = state.psi_m;
  GridFunction abs_phi2 = phi.cwiseAbs2().cast<Complex>();
  GridFunction abs_psi2 = psi.cwiseAbs2().cast<Complex>();

  GridFunction lhs_a = e.Na * system.h_atom.apply(phi) +
                       lam.lambda_a * e.NaNam1 * abs_phi2.cwiseProduct(phi) +
                       lam.lambda_am * e.NaNm * abs_psi2.cwiseProduct(phi) +
                       sqrt2 * lam.lambda_con * std::conj(e.cbb) *
                           phi.conjugate().cwiseProduct(psi);
  GridFunction lhs_m = e.Nm * system.h_mol.apply(psi) +
                       lam.lambda_m * e.NmNmm1 * abs_psi2.cwiseProduct(psi) +
                       lam.lambda_am * e.NaNm * abs_phi2.cwiseProduct(psi) +
                       (lam.lambda_con / sqrt2) * e.cbb * phi.cwiseProduct(phi);

  // Lagrange multipliers recovered by projection onto the orbitals
  const Complex mu_a = inner(grid, phi, lhs_a);
  const Complex mu_m = inner(grid, psi, lhs_m);

  TwoModeResidual res;
  res.orbital_a = norm(grid, GridFunction(lhs_a - mu_a * phi));
  res.orbital_m = norm(grid, GridFunction(lhs_m - mu_m * psi));
  ComplexMatrix H = two_mode_coefficient_matrix(state, system);
  res.epsilon = (state.C.dot(H * state.C)).real();
  res.eigen = (H * state.C - res.epsilon * state.C).norm();
  return res;
}

}  // namespace amc
