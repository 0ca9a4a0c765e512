#include "amc/integrals.hpp"

namespace amc {

namespace {

ComplexMatrix one_body_table(const SpatialGrid& grid, const OneBodyOperator& h,
                             const std::vector<GridFunction>& set) {
  const int m = static_cast<int>(set.size());
  ComplexMatrix table(m, m);
  std::vector<GridFunction> applied(m);
  for (int q = 0; q < m; ++q) applied[q] = h.apply(set[q]);
  for (int k = 0; k < m; ++k) {
    table(k, k) = Complex(inner(grid, set[k], applied[k]).real(), 0.0);
    for (int q = k + 1; q < m; ++q) {
      table(k, q) = inner(grid, set[k], applied[q]);
      table(q, k) = std::conj(table(k, q));
    }
  }
  return table;
}

}  // namespace

IntegralTables compute_integrals(const OrbitalSet& orbitals, const InteractionSpec& interaction,
                                 const SpatialGrid& grid, const OneBodyOperator& h_atom,
                                 const OneBodyOperator& h_mol) {
  const int n = grid.n_points;
  const int M = orbitals.M();
  const int Mp = orbitals.M_prime();
  for (const auto& f : orbitals.atomic)
    if (f.size() != n) throw DimensionError("integrals: atomic orbital length mismatch");
  for (const auto& f : orbitals.molecular)
    if (f.size() != n) throw DimensionError("integrals: molecular orbital length mismatch");
  if (interaction.kind == InteractionSpec::Kind::general_kernel &&
      interaction.kernel_a.rows() != n)
    throw DimensionError("integrals: kernel size mismatch with grid");

  IntegralTables t;
  t.h_a = one_body_table(grid, h_atom, orbitals.atomic);
  t.h_m = one_body_table(grid, h_mol, orbitals.molecular);
  t.W_a = Tensor4(M, M, M, M);
  t.W_m = Tensor4(Mp, Mp, Mp, Mp);
  t.W_am = Tensor4(M, Mp, M, Mp);
  t.W_con = Tensor3(Mp, M, M);

  const double dx = grid.spacing;
  const auto& phi = orbitals.atomic;
  const auto& psi = orbitals.molecular;

  // pair densities conj(f_a) * f_b, reused by every two-body quadrature
  auto pair_density = [n](const GridFunction& a, const GridFunction& b) {
    return GridFunction(a.conjugate().cwiseProduct(b));
  };
  std::vector<GridFunction> A(M * M), B(Mp * Mp);
  for (int k = 0; k < M; ++k)
    for (int q = 0; q < M; ++q) A[k * M + q] = pair_density(phi[k], phi[q]);
  for (int k = 0; k < Mp; ++k)
    for (int q = 0; q < Mp; ++q) B[k * Mp + q] = pair_density(psi[k], psi[q]);

  if (interaction.kind == InteractionSpec::Kind::contact) {
    for (int k = 0; k < M; ++k)
      for (int s = 0; s < M; ++s)
        for (int q = 0; q < M; ++q)
          for (int l = 0; l < M; ++l)
            t.W_a(k, s, q, l) =
                interaction.lambda_a * dx * A[k * M + q].cwiseProduct(A[s * M + l]).sum();
    for (int k = 0; k < Mp; ++k)
      for (int s = 0; s < Mp; ++s)
        for (int q = 0; q < Mp; ++q)
          for (int l = 0; l < Mp; ++l)
            t.W_m(k, s, q, l) =
                interaction.lambda_m * dx * B[k * Mp + q].cwiseProduct(B[s * Mp + l]).sum();
    for (int k = 0; k < M; ++k)
      for (int kp = 0; kp < Mp; ++kp)
        for (int q = 0; q < M; ++q)
          for (int qp = 0; qp < Mp; ++qp)
            t.W_am(k, kp, q, qp) =
                interaction.lambda_am * dx * A[k * M + q].cwiseProduct(B[kp * Mp + qp]).sum();
    for (int kp = 0; kp < Mp; ++kp)
      for (int k = 0; k < M; ++k)
        for (int q = k; q < M; ++q) {
          Complex v = interaction.lambda_con * dx *
                      psi[kp].conjugate().cwiseProduct(phi[k]).cwiseProduct(phi[q]).sum();
          t.W_con(kp, k, q) = v;
          t.W_con(kp, q, k) = v;
        }
    return t;
  }

  // general kernels: double quadrature; the conversion integral samples the
  // molecular orbital at the centre-of-mass point (r+r')/2, which lives on
  // the half-point grid
  const double dx2 = dx * dx;
  // dx^2 * sum_ij ab[i] W(i,j) cd[j]; the pair densities already carry the
  // conjugations of the bra orbitals
  auto quad = [&](const GridFunction& ab, const RealMatrix& W, const GridFunction& cd) {
    GridFunction Wcd(n);
    Wcd.real() = W * cd.real();
    Wcd.imag() = W * cd.imag();
    return Complex(dx2 * ab.cwiseProduct(Wcd).sum());
  };

  for (int k = 0; k < M; ++k)
    for (int s = 0; s < M; ++s)
      for (int q = 0; q < M; ++q)
        for (int l = 0; l < M; ++l)
          t.W_a(k, s, q, l) = quad(A[k * M + q], interaction.kernel_a, A[s * M + l]);
  for (int k = 0; k < Mp; ++k)
    for (int s = 0; s < Mp; ++s)
      for (int q = 0; q < Mp; ++q)
        for (int l = 0; l < Mp; ++l)
          t.W_m(k, s, q, l) = quad(B[k * Mp + q], interaction.kernel_m, B[s * Mp + l]);
  for (int k = 0; k < M; ++k)
    for (int kp = 0; kp < Mp; ++kp)
      for (int q = 0; q < M; ++q)
        for (int qp = 0; qp < Mp; ++qp)
          t.W_am(k, kp, q, qp) = quad(A[k * M + q], interaction.kernel_am, B[kp * Mp + qp]);

  std::vector<GridFunction> psi_half(Mp);
  for (int kp = 0; kp < Mp; ++kp) psi_half[kp] = half_point_samples(grid, psi[kp]);
  for (int kp = 0; kp < Mp; ++kp)
    for (int k = 0; k < M; ++k)
      for (int q = k; q < M; ++q) {
        Complex acc{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
          Complex row{0.0, 0.0};
          for (int j = 0; j < n; ++j)
            row += std::conj(psi_half[kp][(i + j) % (2 * n)]) * interaction.kernel_con(i, j) *
                   phi[q][j];
          acc += row * phi[k][i];
        }
        t.W_con(kp, k, q) = acc * dx2;
        t.W_con(kp, q, k) = acc * dx2;
      }
  return t;
}

}  // namespace amc
