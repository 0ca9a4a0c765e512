#pragma once

#include "amc/types.hpp"

namespace amc {

/// Uniform periodic grid on [-L/2, L/2) with quadrature weight `spacing`
/// and spectral (discrete-Fourier) differentiation data.
struct SpatialGrid {
  int n_points = 0;
  double length = 0.0;
  double spacing = 0.0;
  RealVector points;

  /// n must be even and >= 8 (spectral differentiation and half-point
  /// interpolation both rely on it), L > 0.
  static SpatialGrid uniform(int n_points, double length);

  int wrap(long long i) const {
    long long n = n_points;
    return static_cast<int>(((i % n) + n) % n);
  }
};

Complex inner(const SpatialGrid& grid, const GridFunction& f, const GridFunction& g);

inline double norm(const SpatialGrid& grid, const GridFunction& f) {
  return std::sqrt(std::abs(inner(grid, f, f)));
}

/// One-body kernel h = -(1/2 mass) d^2/dx^2 + V(x) + offset, hbar = 1.
struct OneBodyOperatorSpec {
  double mass = 1.0;
  RealVector potential;  // V(x_i), length n_points
  double energy_offset = 0.0;
};

/// Applies the one-body kernel with a precomputed circulant spectral
/// second-derivative matrix. Cheap to apply repeatedly; immutable.
class OneBodyOperator {
public:
  OneBodyOperator(const SpatialGrid& grid, const OneBodyOperatorSpec& spec);

  GridFunction apply(const GridFunction& f) const;

  /// Dense matrix representation (real symmetric), used to seed initial
  /// orbitals with trap eigenfunctions.
  const RealMatrix& dense() const { return matrix_; }

  const OneBodyOperatorSpec& spec() const { return spec_; }
  int n_points() const { return static_cast<int>(matrix_.rows()); }

private:
  OneBodyOperatorSpec spec_;
  RealMatrix matrix_;  // -(1/2m) D2 + diag(V + offset)
};

/// Convenience wrapper matching the one-shot operation contract.
GridFunction apply_one_body(const SpatialGrid& grid, const OneBodyOperatorSpec& spec,
                            const GridFunction& f);

/// Evaluates f at x_i + shift by periodic linear interpolation. `shift` must
/// be an integer or half-integer multiple of the grid spacing; integer shifts
/// are exact cyclic rotations.
GridFunction interpolate_half_points(const SpatialGrid& grid, const GridFunction& f,
                                     double shift);

/// Samples f on the doubled grid x_m = -L/2 + m*spacing/2 (m = 0..2n-1):
/// even m are exact samples, odd m are midpoint averages.
GridFunction half_point_samples(const SpatialGrid& grid, const GridFunction& f);

}  // namespace amc
