#include "amc/orbitals.hpp"

#include <Eigen/Eigenvalues>

namespace amc {

double orthonormality_defect(const SpatialGrid& grid, const std::vector<GridFunction>& set) {
  double worst = 0.0;
  for (size_t k = 0; k < set.size(); ++k)
    for (size_t q = 0; q < set.size(); ++q) {
      Complex overlap = inner(grid, set[k], set[q]);
      if (k == q) overlap -= 1.0;
      worst = std::max(worst, std::abs(overlap));
    }
  return worst;
}

double orthonormality_defect(const SpatialGrid& grid, const OrbitalSet& orbitals) {
  return std::max(orthonormality_defect(grid, orbitals.atomic),
                  orthonormality_defect(grid, orbitals.molecular));
}

void lowdin_orthonormalize(const SpatialGrid& grid, std::vector<GridFunction>& set) {
  const int m = static_cast<int>(set.size());
  if (m == 0) return;
  ComplexMatrix S(m, m);
  for (int k = 0; k < m; ++k)
    for (int q = 0; q < m; ++q) S(k, q) = inner(grid, set[k], set[q]);
  S = 0.5 * (S + S.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(S);
  ComplexMatrix inv_sqrt = es.eigenvectors() *
                           es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                           es.eigenvectors().adjoint();
  std::vector<GridFunction> fresh(m, GridFunction::Zero(set[0].size()));
  for (int k = 0; k < m; ++k)
    for (int u = 0; u < m; ++u) fresh[k] += inv_sqrt(u, k) * set[u];
  set = std::move(fresh);
}

GridFunction project_out(const SpatialGrid& grid, const std::vector<GridFunction>& set,
                         const GridFunction& f) {
  GridFunction out = f;
  for (const auto& u : set) out -= inner(grid, u, f) * u;
  return out;
}

}  // namespace amc
