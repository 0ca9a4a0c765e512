#pragma once

#include "amc/grid.hpp"

namespace amc {

/// M atomic orbitals phi_k and M' molecular orbitals psi_k' on the grid.
/// Each set is kept orthonormal under the quadrature inner product.
struct OrbitalSet {
  std::vector<GridFunction> atomic;
  std::vector<GridFunction> molecular;

  int M() const { return static_cast<int>(atomic.size()); }
  int M_prime() const { return static_cast<int>(molecular.size()); }
};

/// Largest deviation |<f_k|f_q> - delta_kq| within one orbital set.
double orthonormality_defect(const SpatialGrid& grid, const std::vector<GridFunction>& set);

double orthonormality_defect(const SpatialGrid& grid, const OrbitalSet& orbitals);

/// Symmetric (Loewdin) orthonormalization: f <- f S^{-1/2}.
void lowdin_orthonormalize(const SpatialGrid& grid, std::vector<GridFunction>& set);

/// P f = f - sum_u |f_u><f_u| f  (projector onto the complement of the set).
GridFunction project_out(const SpatialGrid& grid, const std::vector<GridFunction>& set,
                         const GridFunction& f);

}  // namespace amc
