#pragma once

#include "amc/system.hpp"

#include <random>

namespace amc::testing {

inline std::vector<GridFunction> random_orthonormal(const SpatialGrid& grid, int count,
                                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<GridFunction> set(count);
  for (auto& f : set) {
    f.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      const double x = grid.points[i];
      const double env = std::exp(-0.25 * x * x);
      f[i] = Complex(gauss(rng), gauss(rng)) * env;
    }
  }
  lowdin_orthonormalize(grid, set);
  return set;
}

/// Random orthonormal orbitals confined to the span of the lowest trap
/// eigenfunctions; keeps one-body energies moderate so explicit time
/// stepping stays well inside the stability region.
inline std::vector<GridFunction> random_low_energy_orthonormal(const SpatialGrid& grid,
                                                               const OneBodyOperator& h,
                                                               int count, std::mt19937_64& rng,
                                                               int modes = 8) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.dense());
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<GridFunction> set(count);
  const double scale = 1.0 / std::sqrt(grid.spacing);
  for (auto& f : set) {
    f = GridFunction::Zero(grid.n_points);
    for (int m = 0; m < modes; ++m)
      f += Complex(gauss(rng), gauss(rng)) * es.eigenvectors().col(m).cast<Complex>() * scale;
  }
  lowdin_orthonormalize(grid, set);
  return set;
}

inline CoefficientVector random_coefficients(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoefficientVector C(dim);
  for (int i = 0; i < dim; ++i) C[i] = Complex(gauss(rng), gauss(rng));
  C /= C.norm();
  return C;
}

inline GridFunction normalized_gaussian(const SpatialGrid& grid, double sigma = 1.0,
                                        double center = 0.0) {
  GridFunction g(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.points[i] - center;
    g[i] = std::exp(-0.5 * x * x / (sigma * sigma));
  }
  g /= norm(grid, g);
  return g;
}

inline RealVector harmonic_potential(const SpatialGrid& grid, double mass, double omega) {
  RealVector V(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i)
    V[i] = 0.5 * mass * omega * omega * grid.points[i] * grid.points[i];
  return V;
}

/// Small harmonically trapped test system (atom mass 1, molecule mass 2,
/// both traps at omega = 1).
inline System harmonic_system(int N, int M, int Mp, const InteractionSpec& interaction,
                              int n_points = 64, double length = 12.0, double reg_eps = 1e-8) {
  SpatialGrid grid = SpatialGrid::uniform(n_points, length);
  OneBodyOperatorSpec atom{1.0, harmonic_potential(grid, 1.0, 1.0), 0.0};
  OneBodyOperatorSpec mol{2.0, harmonic_potential(grid, 2.0, 1.0), 0.0};
  return System::build(grid, atom, mol, interaction, N, M, Mp, reg_eps);
}

/// Independently coded Gross-Pitaevskii pieces used as oracles for the
/// single-orbital reductions.  These never call the production EOM path.
inline GridFunction gp_rhs_projected(const SpatialGrid& grid, const OneBodyOperator& h,
                                     double coupling, const GridFunction& phi) {
  GridFunction bracket =
      h.apply(phi) + coupling * GridFunction(phi.cwiseAbs2().cast<Complex>().cwiseProduct(phi));
  bracket -= inner(grid, phi, bracket) * phi;
  return Complex(0.0, -1.0) * bracket;
}

struct GpGroundState {
  GridFunction phi;
  double chemical_potential = 0.0;
  double residual = 0.0;
};

inline GpGroundState gp_ground_state(const SpatialGrid& grid, const OneBodyOperator& h,
                                     double coupling, double dtau = 2e-3, double tol = 1e-10,
                                     int max_iter = 200000) {
  GridFunction phi = normalized_gaussian(grid, 1.3);
  // chemical-potential-shifted descent: the exact GP ground state is a fixed
  // point of the discrete map at any dtau (a bare decay flow plus
  // renormalization would be biased at first order in dtau)
  auto deriv = [&](const GridFunction& f) {
    GridFunction Hf =
        h.apply(f) + coupling * GridFunction(f.cwiseAbs2().cast<Complex>().cwiseProduct(f));
    const Complex mu = inner(grid, f, Hf) / inner(grid, f, f);
    return GridFunction(-(Hf - mu * f));
  };
  GpGroundState out;
  for (int it = 0; it < max_iter; ++it) {
    GridFunction k1 = deriv(phi);
    GridFunction k2 = deriv(phi + 0.5 * dtau * k1);
    GridFunction k3 = deriv(phi + 0.5 * dtau * k2);
    GridFunction k4 = deriv(phi + dtau * k3);
    phi += (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    phi /= norm(grid, phi);
    GridFunction Hphi =
        h.apply(phi) + coupling * GridFunction(phi.cwiseAbs2().cast<Complex>().cwiseProduct(phi));
    const Complex mu = inner(grid, phi, Hphi);
    out.residual = norm(grid, GridFunction(Hphi - mu * phi));
    out.chemical_potential = mu.real();
    if (out.residual < tol) break;
  }
  out.phi = phi;
  return out;
}

}  // namespace amc::testing
