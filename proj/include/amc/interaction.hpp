#pragma once

#include "amc/types.hpp"

namespace amc {

/// Two-body and conversion interactions.  Contact form carries four scalar
/// couplings; the general form carries real symmetric kernels W(r, r')
/// sampled on the n x n grid.
struct InteractionSpec {
  enum class Kind { contact, general_kernel };

  Kind kind = Kind::contact;
  double lambda_a = 0.0;
  double lambda_m = 0.0;
  double lambda_am = 0.0;
  double lambda_con = 0.0;
  RealMatrix kernel_a, kernel_m, kernel_am, kernel_con;  // general only

  static InteractionSpec contact(double la, double lm, double lam, double lcon);

  /// Kernels must satisfy W(r,r') = W(r',r) within 1e-12.
  static InteractionSpec general(RealMatrix Wa, RealMatrix Wm, RealMatrix Wam, RealMatrix Wcon);

  /// Discrete delta lambda * delta_ij / spacing; collapses quadratures back
  /// to the contact expressions.
  static RealMatrix delta_kernel(int n_points, double spacing, double lambda);
};

}  // namespace amc
