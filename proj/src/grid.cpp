#include "amc/grid.hpp"

#include <cmath>

namespace amc {

SpatialGrid SpatialGrid::uniform(int n_points, double length) {
  if (n_points < 8 || n_points % 2 != 0)
    throw PreconditionError("grid: n_points must be even and >= 8");
  if (!(length > 0.0)) throw PreconditionError("grid: length must be positive");
  SpatialGrid g;
  g.n_points = n_points;
  g.length = length;
  g.spacing = length / n_points;
  g.points.resize(n_points);
  for (int i = 0; i < n_points; ++i) g.points[i] = -0.5 * length + i * g.spacing;
  return g;
}

Complex inner(const SpatialGrid& grid, const GridFunction& f, const GridFunction& g) {
  if (f.size() != grid.n_points || g.size() != grid.n_points)
    throw DimensionError("inner: length mismatch with grid");
  return grid.spacing * f.dot(g);  // Eigen dot conjugates the first factor
}

namespace {

// Circulant kernel of the spectral second derivative:
//   K2[d] = (1/n) sum_m (-k_m^2) cos(2 pi m d / n),  k_m = 2 pi m~ / L
// with m~ the signed alias of m.  Real and symmetric in d -> -d.
RealVector second_derivative_kernel(int n, double length) {
  RealVector kernel = RealVector::Zero(n);
  const double two_pi_over_n = 2.0 * M_PI / n;
  for (int d = 0; d < n; ++d) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
      int alias = (m <= n / 2) ? m : m - n;
      double k = 2.0 * M_PI * alias / length;
      acc += -(k * k) * std::cos(two_pi_over_n * m * d);
    }
    kernel[d] = acc / n;
  }
  return kernel;
}

}  // namespace

OneBodyOperator::OneBodyOperator(const SpatialGrid& grid, const OneBodyOperatorSpec& spec)
    : spec_(spec) {
  if (spec.potential.size() != grid.n_points)
    throw DimensionError("one-body operator: potential length != n_points");
  if (!(spec.mass > 0.0)) throw PreconditionError("one-body operator: mass must be positive");
  const int n = grid.n_points;
  RealVector kernel = second_derivative_kernel(n, grid.length);
  matrix_.resize(n, n);
  const double kin = -0.5 / spec.mass;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) matrix_(i, j) = kin * kernel[grid.wrap(i - j)];
  for (int i = 0; i < n; ++i) matrix_(i, i) += spec.potential[i] + spec.energy_offset;
}

GridFunction OneBodyOperator::apply(const GridFunction& f) const {
  if (f.size() != matrix_.rows()) throw DimensionError("one-body apply: length mismatch");
  GridFunction out(f.size());
  out.real() = matrix_ * f.real();
  out.imag() = matrix_ * f.imag();
  return out;
}

GridFunction apply_one_body(const SpatialGrid& grid, const OneBodyOperatorSpec& spec,
                            const GridFunction& f) {
  return OneBodyOperator(grid, spec).apply(f);
}

GridFunction interpolate_half_points(const SpatialGrid& grid, const GridFunction& f,
                                     double shift) {
  if (f.size() != grid.n_points) throw DimensionError("interpolate: length mismatch");
  const double steps = shift / (0.5 * grid.spacing);
  const long long s = std::llround(steps);
  if (std::abs(steps - static_cast<double>(s)) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw PreconditionError("interpolate: shift is not a half-integer multiple of the spacing");
  const int n = grid.n_points;
  GridFunction out(n);
  if (s % 2 == 0) {
    for (int i = 0; i < n; ++i) out[i] = f[grid.wrap(i + s / 2)];
  } else {
    // midpoints: average of the two bracketing samples; s odd makes s-1 even,
    // so (s-1)/2 is exact for either sign
    const long long lo = (s - 1) / 2;
    for (int i = 0; i < n; ++i)
      out[i] = 0.5 * (f[grid.wrap(i + lo)] + f[grid.wrap(i + lo + 1)]);
  }
  return out;
}

GridFunction half_point_samples(const SpatialGrid& grid, const GridFunction& f) {
  if (f.size() != grid.n_points) throw DimensionError("half samples: length mismatch");
  const int n = grid.n_points;
  GridFunction out(2 * n);
  for (int i = 0; i < n; ++i) {
    out[2 * i] = f[i];
    out[2 * i + 1] = 0.5 * (f[i] + f[(i + 1) % n]);
  }
  return out;
}

}  // namespace amc
