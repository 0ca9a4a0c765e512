#include "amc/interaction.hpp"

namespace amc {

InteractionSpec InteractionSpec::contact(double la, double lm, double lam, double lcon) {
  InteractionSpec s;
  s.kind = Kind::contact;
  s.lambda_a = la;
  s.lambda_m = lm;
  s.lambda_am = lam;
  s.lambda_con = lcon;
  return s;
}

InteractionSpec InteractionSpec::general(RealMatrix Wa, RealMatrix Wm, RealMatrix Wam,
                                         RealMatrix Wcon) {
  auto check = [](const RealMatrix& W, const char* name) {
    if (W.rows() != W.cols()) throw DimensionError(std::string("kernel ") + name + " not square");
    double defect = (W - W.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-12)
      throw PreconditionError(std::string("kernel ") + name + " not symmetric (defect " +
                              std::to_string(defect) + ")");
  };
  check(Wa, "W_a");
  check(Wm, "W_m");
  check(Wam, "W_am");
  check(Wcon, "W_con");
  if (Wm.rows() != Wa.rows() || Wam.rows() != Wa.rows() || Wcon.rows() != Wa.rows())
    throw DimensionError("kernels differ in grid size");
  InteractionSpec s;
  s.kind = Kind::general_kernel;
  s.kernel_a = std::move(Wa);
  s.kernel_m = std::move(Wm);
  s.kernel_am = std::move(Wam);
  s.kernel_con = std::move(Wcon);
  return s;
}

RealMatrix InteractionSpec::delta_kernel(int n_points, double spacing, double lambda) {
  RealMatrix W = RealMatrix::Zero(n_points, n_points);
  for (int i = 0; i < n_points; ++i) W(i, i) = lambda / spacing;
  return W;
}

}  // namespace amc
