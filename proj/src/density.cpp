#include "amc/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace amc {

RdmBundle compute_rdms(const ConfigurationBasis& basis, const CoefficientVector& C) {
  if (C.size() != basis.size()) throw DimensionError("rdms: coefficient dimension mismatch");
  if (std::abs(C.norm() - 1.0) > 1e-8)
    throw PreconditionError("rdms: coefficient vector is not normalized");

  const int M = basis.M();
  const int Mp = basis.M_prime();
  RdmBundle r;
  r.rho_a = ComplexMatrix::Zero(M, M);
  r.rho_m = ComplexMatrix::Zero(Mp, Mp);
  r.rho_a2 = Tensor4(M, M, M, M);
  r.rho_m2 = Tensor4(Mp, Mp, Mp, Mp);
  r.rho_am = Tensor4(M, Mp, M, Mp);
  r.rho_conv = Tensor3(Mp, M, M);

  // <A> = sum_c conj(C_target) * amplitude * C_c with target = Op|c>
  for (int ci = 0; ci < basis.size(); ++ci) {
    const Complex weight = C[ci];
    if (weight == Complex{0.0, 0.0}) continue;
    const Configuration& c = basis.config(ci);

    // one-body, exploiting <c'|b+_k b_q|c>:
    for (int q = 0; q < M; ++q) {
      LadderResult lowered = apply_annihilator(c, Species::atom, q);
      if (lowered.vanished) continue;
      for (int k = 0; k < M; ++k) {
        LadderResult raised = apply_creator(lowered.target, Species::atom, k);
        auto idx = basis.index_of(raised.target);
        if (!idx) continue;
        r.rho_a(k, q) += std::conj(C[*idx]) * lowered.amplitude * raised.amplitude * weight;
      }
    }
    for (int q = 0; q < Mp; ++q) {
      LadderResult lowered = apply_annihilator(c, Species::molecule, q);
      if (lowered.vanished) continue;
      for (int k = 0; k < Mp; ++k) {
        LadderResult raised = apply_creator(lowered.target, Species::molecule, k);
        auto idx = basis.index_of(raised.target);
        if (!idx) continue;
        r.rho_m(k, q) += std::conj(C[*idx]) * lowered.amplitude * raised.amplitude * weight;
      }
    }

    // two-body atomic <b+_k b+_s b_l b_q>
    for (int q = 0; q < M; ++q) {
      LadderResult a1 = apply_annihilator(c, Species::atom, q);
      if (a1.vanished) continue;
      for (int l = 0; l < M; ++l) {
        LadderResult a2 = apply_annihilator(a1.target, Species::atom, l);
        if (a2.vanished) continue;
        for (int s = 0; s < M; ++s) {
          LadderResult c1 = apply_creator(a2.target, Species::atom, s);
          for (int k = 0; k < M; ++k) {
            LadderResult c2 = apply_creator(c1.target, Species::atom, k);
            auto idx = basis.index_of(c2.target);
            if (!idx) continue;
            r.rho_a2(k, s, l, q) += std::conj(C[*idx]) * a1.amplitude * a2.amplitude *
                                    c1.amplitude * c2.amplitude * weight;
          }
        }
      }
    }
    // two-body molecular
    for (int q = 0; q < Mp; ++q) {
      LadderResult a1 = apply_annihilator(c, Species::molecule, q);
      if (a1.vanished) continue;
      for (int l = 0; l < Mp; ++l) {
        LadderResult a2 = apply_annihilator(a1.target, Species::molecule, l);
        if (a2.vanished) continue;
        for (int s = 0; s < Mp; ++s) {
          LadderResult c1 = apply_creator(a2.target, Species::molecule, s);
          for (int k = 0; k < Mp; ++k) {
            LadderResult c2 = apply_creator(c1.target, Species::molecule, k);
            auto idx = basis.index_of(c2.target);
            if (!idx) continue;
            r.rho_m2(k, s, l, q) += std::conj(C[*idx]) * a1.amplitude * a2.amplitude *
                                    c1.amplitude * c2.amplitude * weight;
          }
        }
      }
    }
    // inter-species <b+_k b_q c+_k' c_q'>
    for (int qp = 0; qp < Mp; ++qp) {
      LadderResult m1 = apply_annihilator(c, Species::molecule, qp);
      if (m1.vanished) continue;
      for (int kp = 0; kp < Mp; ++kp) {
        LadderResult m2 = apply_creator(m1.target, Species::molecule, kp);
        for (int q = 0; q < M; ++q) {
          LadderResult a1 = apply_annihilator(m2.target, Species::atom, q);
          if (a1.vanished) continue;
          for (int k = 0; k < M; ++k) {
            LadderResult a2 = apply_creator(a1.target, Species::atom, k);
            auto idx = basis.index_of(a2.target);
            if (!idx) continue;
            r.rho_am(k, kp, q, qp) += std::conj(C[*idx]) * m1.amplitude * m2.amplitude *
                                      a1.amplitude * a2.amplitude * weight;
          }
        }
      }
    }
    // conversion <c+_k' b_k b_q>, k <= q (symmetric in k<->q)
    for (int q = 0; q < M; ++q) {
      LadderResult a1 = apply_annihilator(c, Species::atom, q);
      if (a1.vanished) continue;
      for (int k = 0; k <= q; ++k) {
        LadderResult a2 = apply_annihilator(a1.target, Species::atom, k);
        if (a2.vanished) continue;
        for (int kp = 0; kp < Mp; ++kp) {
          LadderResult m1 = apply_creator(a2.target, Species::molecule, kp);
          auto idx = basis.index_of(m1.target);
          if (!idx) continue;
          r.rho_conv(kp, k, q) +=
              std::conj(C[*idx]) * a1.amplitude * a2.amplitude * m1.amplitude * weight;
        }
      }
    }
  }

  // exact Hermitian / exchange symmetries
  r.rho_a = 0.5 * (r.rho_a + r.rho_a.adjoint().eval());
  r.rho_m = 0.5 * (r.rho_m + r.rho_m.adjoint().eval());
  for (int kp = 0; kp < Mp; ++kp)
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < k; ++q) r.rho_conv(kp, k, q) = r.rho_conv(kp, q, k);
  return r;
}

ComplexMatrix regularized_inverse(const ComplexMatrix& rho, double eps) {
  if (rho.rows() != rho.cols()) throw DimensionError("regularized_inverse: matrix not square");
  if (!(eps > 0.0)) throw PreconditionError("regularized_inverse: eps must be positive");
  const double defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-8)
    throw PreconditionError("regularized_inverse: input not Hermitian (defect " +
                            std::to_string(defect) + ")");
  ComplexMatrix sym = 0.5 * (rho + rho.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  RealVector floored = es.eigenvalues();
  for (int i = 0; i < floored.size(); ++i) {
    const double lambda = std::max(floored[i], 0.0);  // clip PSD round-off
    floored[i] = 1.0 / (lambda + eps * std::exp(-lambda / eps));
  }
  return es.eigenvectors() * floored.asDiagonal() * es.eigenvectors().adjoint();
}

RealVector natural_occupations(const ComplexMatrix& rho) {
  const double defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-8) throw PreconditionError("natural_occupations: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint().eval()));
  RealVector occ = es.eigenvalues();
  std::reverse(occ.begin(), occ.end());
  return occ;
}

}  // namespace amc
