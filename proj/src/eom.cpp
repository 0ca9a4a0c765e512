#include "amc/eom.hpp"

#include <cmath>

namespace amc {

namespace {

GridFunction kernel_quadrature(const SpatialGrid& grid, const RealMatrix& W,
                               const GridFunction& pair_density) {
  GridFunction out(grid.n_points);
  out.real() = grid.spacing * (W * pair_density.real());
  out.imag() = grid.spacing * (W * pair_density.imag());
  return out;
}

}  // namespace

EomWorkspace build_local_potentials(const OrbitalSet& orbitals,
                                    const InteractionSpec& interaction, const SpatialGrid& grid) {
  const int n = grid.n_points;
  const int M = orbitals.M();
  const int Mp = orbitals.M_prime();
  EomWorkspace w;
  w.M = M;
  w.M_prime = Mp;
  w.W_a.resize(M * M);
  w.W_m.resize(Mp * Mp);
  w.W_am.resize(Mp * Mp);
  w.W_ma.resize(M * M);
  w.W_con_fwd.resize(M * M);
  w.W_con_bwd.resize(M * Mp);

  const auto& phi = orbitals.atomic;
  const auto& psi = orbitals.molecular;
  auto pair_density = [](const GridFunction& a, const GridFunction& b) {
    return GridFunction(a.conjugate().cwiseProduct(b));
  };

  if (interaction.kind == InteractionSpec::Kind::contact) {
    for (int s = 0; s < M; ++s)
      for (int l = 0; l < M; ++l)
        w.W_a[s * M + l] = interaction.lambda_a * pair_density(phi[s], phi[l]);
    for (int s = 0; s < Mp; ++s)
      for (int l = 0; l < Mp; ++l)
        w.W_m[s * Mp + l] = interaction.lambda_m * pair_density(psi[s], psi[l]);
    for (int kp = 0; kp < Mp; ++kp)
      for (int qp = 0; qp < Mp; ++qp)
        w.W_am[kp * Mp + qp] = interaction.lambda_am * pair_density(psi[kp], psi[qp]);
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q)
        w.W_ma[k * M + q] = interaction.lambda_am * pair_density(phi[k], phi[q]);
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q)
        w.W_con_fwd[k * M + q] = interaction.lambda_con * phi[k].cwiseProduct(phi[q]);
    for (int q = 0; q < M; ++q)
      for (int kp = 0; kp < Mp; ++kp)
        w.W_con_bwd[q * Mp + kp] =
            interaction.lambda_con * phi[q].conjugate().cwiseProduct(psi[kp]);
    return w;
  }

  if (n % 2 != 0)
    throw PreconditionError("local potentials: general kernels need even n_points");
  if (interaction.kernel_a.rows() != n)
    throw DimensionError("local potentials: kernel size mismatch");

  for (int s = 0; s < M; ++s)
    for (int l = 0; l < M; ++l)
      w.W_a[s * M + l] = kernel_quadrature(grid, interaction.kernel_a, pair_density(phi[s], phi[l]));
  for (int s = 0; s < Mp; ++s)
    for (int l = 0; l < Mp; ++l)
      w.W_m[s * Mp + l] =
          kernel_quadrature(grid, interaction.kernel_m, pair_density(psi[s], psi[l]));
  for (int kp = 0; kp < Mp; ++kp)
    for (int qp = 0; qp < Mp; ++qp)
      w.W_am[kp * Mp + qp] =
          kernel_quadrature(grid, interaction.kernel_am, pair_density(psi[kp], psi[qp]));
  for (int k = 0; k < M; ++k)
    for (int q = 0; q < M; ++q)
      w.W_ma[k * M + q] =
          kernel_quadrature(grid, interaction.kernel_am, pair_density(phi[k], phi[q]));

  // backward conversion kernel: quadrature over r' against psi((r+r')/2)
  std::vector<GridFunction> psi_half(Mp);
  for (int kp = 0; kp < Mp; ++kp) psi_half[kp] = half_point_samples(grid, psi[kp]);
  for (int q = 0; q < M; ++q)
    for (int kp = 0; kp < Mp; ++kp) {
      GridFunction out(n);
      for (int i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j)
          acc += std::conj(phi[q][j]) * interaction.kernel_con(i, j) *
                 psi_half[kp][(i + j) % (2 * n)];
        out[i] = acc * grid.spacing;
      }
      w.W_con_bwd[q * Mp + kp] = out;
    }

  // forward conversion kernel: adjoint of the half-point sampling applied to
  // the centre-of-mass accumulation, so that <psi_k'|Wfwd_kq> equals the
  // conversion integral exactly and a discrete-delta kernel collapses to the
  // contact expression without interpolation residue
  for (int k = 0; k < M; ++k)
    for (int q = k; q < M; ++q) {
      GridFunction com = GridFunction::Zero(2 * n);
      const double dx2 = grid.spacing * grid.spacing;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          com[(i + j) % (2 * n)] += interaction.kernel_con(i, j) * phi[k][i] * phi[q][j] * dx2;
      GridFunction out(n);
      for (int a = 0; a < n; ++a) {
        Complex mid = 0.5 * (com[(2 * a - 1 + 2 * n) % (2 * n)] + com[(2 * a + 1) % (2 * n)]);
        out[a] = (com[2 * a] + mid) / grid.spacing;
      }
      w.W_con_fwd[k * M + q] = out;
      w.W_con_fwd[q * M + k] = out;
    }
  return w;
}

OrbitalDerivatives orbital_rhs(const OrbitalSet& orbitals, const RdmBundle& rdms,
                               const EomWorkspace& workspace, const System& system) {
  const int M = orbitals.M();
  const int Mp = orbitals.M_prime();
  const int n = system.grid.n_points;
  const double sqrt2 = std::sqrt(2.0);
  const auto& phi = orbitals.atomic;
  const auto& psi = orbitals.molecular;

  ComplexMatrix inv_a = regularized_inverse(rdms.rho_a, system.reg_eps);
  ComplexMatrix inv_m = regularized_inverse(rdms.rho_m, system.reg_eps);

  // mean-field brackets g_k = sum_q {rho2 W}_kq phi_q + conversion drive
  std::vector<GridFunction> g_a(M, GridFunction::Zero(n));
  for (int k = 0; k < M; ++k) {
    for (int q = 0; q < M; ++q) {
      GridFunction coupling = GridFunction::Zero(n);
      for (int s = 0; s < M; ++s)
        for (int l = 0; l < M; ++l) coupling += rdms.rho_a2(k, s, l, q) * workspace.wa(s, l);
      for (int kp = 0; kp < Mp; ++kp)
        for (int qp = 0; qp < Mp; ++qp)
          coupling += rdms.rho_am(k, kp, q, qp) * workspace.wam(kp, qp);
      g_a[k] += coupling.cwiseProduct(phi[q]);
      for (int kp = 0; kp < Mp; ++kp)
        g_a[k] += sqrt2 * std::conj(rdms.rho_conv(kp, k, q)) * workspace.wcon_bwd(q, kp);
    }
  }
  std::vector<GridFunction> g_m(Mp, GridFunction::Zero(n));
  for (int kp = 0; kp < Mp; ++kp) {
    for (int qp = 0; qp < Mp; ++qp) {
      GridFunction coupling = GridFunction::Zero(n);
      for (int sp = 0; sp < Mp; ++sp)
        for (int lp = 0; lp < Mp; ++lp)
          coupling += rdms.rho_m2(kp, sp, lp, qp) * workspace.wm(sp, lp);
      for (int k = 0; k < M; ++k)
        for (int q = 0; q < M; ++q)
          coupling += rdms.rho_am(k, kp, q, qp) * workspace.wma(k, q);
      g_m[kp] += coupling.cwiseProduct(psi[qp]);
    }
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q)
        g_m[kp] += (1.0 / sqrt2) * rdms.rho_conv(kp, k, q) * workspace.wcon_fwd(k, q);
  }

  OrbitalDerivatives d;
  d.atomic.resize(M);
  d.molecular.resize(Mp);
  for (int j = 0; j < M; ++j) {
    GridFunction bracket = system.h_atom.apply(phi[j]);
    for (int k = 0; k < M; ++k) bracket += inv_a(j, k) * g_a[k];
    d.atomic[j] = -kImag * project_out(system.grid, phi, bracket);
  }
  for (int jp = 0; jp < Mp; ++jp) {
    GridFunction bracket = system.h_mol.apply(psi[jp]);
    for (int kp = 0; kp < Mp; ++kp) bracket += inv_m(jp, kp) * g_m[kp];
    d.molecular[jp] = -kImag * project_out(system.grid, psi, bracket);
  }
  return d;
}

CoefficientVector coefficient_rhs(const SparseHamiltonian& H, const CoefficientVector& C) {
  return -kImag * matvec(H, C);
}

MeanfieldCouplings meanfield_couplings(const RdmBundle& rdms, const InteractionSpec& interaction,
                                       double eps) {
  if (rdms.rho_a.rows() != 1 || rdms.rho_m.rows() != 1)
    throw PreconditionError("meanfield couplings: require M = M' = 1");
  const double Na = rdms.atom_number();
  const double Nm = rdms.molecule_number();
  MeanfieldCouplings L;
  L.regularized = (Na < eps) || (Nm < eps);
  const double na = std::max(Na, eps);
  const double nm = std::max(Nm, eps);
  const Complex cbb = rdms.rho_conv(0, 0, 0);  // <c+ b b>
  L.a = interaction.lambda_a * rdms.rho_a2(0, 0, 0, 0).real() / na;
  L.am = interaction.lambda_am * rdms.rho_am(0, 0, 0, 0).real() / na;
  L.con = interaction.lambda_con * std::conj(cbb) / na;
  L.m = interaction.lambda_m * rdms.rho_m2(0, 0, 0, 0).real() / nm;
  L.ma = interaction.lambda_am * rdms.rho_am(0, 0, 0, 0).real() / nm;
  L.con_prime = interaction.lambda_con * cbb / nm;
  return L;
}

}  // namespace amc
