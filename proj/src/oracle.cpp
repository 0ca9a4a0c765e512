#include "amc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace amc {

namespace {

void check_guard(const ConfigurationBasis& basis) {
  if (basis.size() > kOracleSizeGuard)
    throw PreconditionError("oracle: basis size " + std::to_string(basis.size()) +
                            " exceeds the dense guard of " + std::to_string(kOracleSizeGuard));
}

void check_hermitian(const ComplexMatrix& H, const char* who) {
  if (H.rows() != H.cols()) throw DimensionError(std::string(who) + ": matrix not square");
  const double defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (defect > 1e-10 * scale)
    throw PreconditionError(std::string(who) + ": matrix not Hermitian");
}

}  // namespace

ComplexMatrix build_operator(const ConfigurationBasis& basis,
                             const std::vector<LadderSymbol>& expression) {
  check_guard(basis);
  for (const auto& sym : expression) {
    const int bound = sym.species == Species::atom ? basis.M() : basis.M_prime();
    if (sym.orbital < 0 || sym.orbital >= bound)
      throw PreconditionError("oracle: malformed expression, orbital index out of range");
  }
  const int dim = basis.size();
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Configuration current = basis.config(col);
    double amplitude = 1.0;
    bool alive = true;
    for (auto it = expression.rbegin(); it != expression.rend(); ++it) {
      LadderResult r = it->creator ? apply_creator(current, it->species, it->orbital)
                                   : apply_annihilator(current, it->species, it->orbital);
      if (r.vanished) {
        alive = false;
        break;
      }
      amplitude *= r.amplitude;
      current = std::move(r.target);
    }
    if (!alive) continue;
    auto row = basis.index_of(current);
    if (row) op(*row, col) = amplitude;
  }
  return op;
}

ComplexMatrix build_dense_hamiltonian(const ConfigurationBasis& basis,
                                      const IntegralTables& tables) {
  check_guard(basis);
  const int M = basis.M();
  const int Mp = basis.M_prime();
  const int dim = basis.size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix H = ComplexMatrix::Zero(dim, dim);

  for (int k = 0; k < M; ++k)
    for (int q = 0; q < M; ++q)
      H += tables.h_a(k, q) * build_operator(basis, {atom_creator(k), atom_annihilator(q)});
  for (int k = 0; k < Mp; ++k)
    for (int q = 0; q < Mp; ++q)
      H += tables.h_m(k, q) * build_operator(basis, {mol_creator(k), mol_annihilator(q)});

  for (int k = 0; k < M; ++k)
    for (int s = 0; s < M; ++s)
      for (int q = 0; q < M; ++q)
        for (int l = 0; l < M; ++l)
          H += 0.5 * tables.W_a(k, s, q, l) *
               build_operator(basis, {atom_creator(k), atom_creator(s), atom_annihilator(l),
                                      atom_annihilator(q)});
  for (int k = 0; k < Mp; ++k)
    for (int s = 0; s < Mp; ++s)
      for (int q = 0; q < Mp; ++q)
        for (int l = 0; l < Mp; ++l)
          H += 0.5 * tables.W_m(k, s, q, l) *
               build_operator(basis, {mol_creator(k), mol_creator(s), mol_annihilator(l),
                                      mol_annihilator(q)});
  for (int k = 0; k < M; ++k)
    for (int kp = 0; kp < Mp; ++kp)
      for (int q = 0; q < M; ++q)
        for (int qp = 0; qp < Mp; ++qp)
          H += tables.W_am(k, kp, q, qp) *
               build_operator(basis, {atom_creator(k), atom_annihilator(q), mol_creator(kp),
                                      mol_annihilator(qp)});
  for (int kp = 0; kp < Mp; ++kp)
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q) {
        ComplexMatrix fwd =
            build_operator(basis, {mol_creator(kp), atom_annihilator(k), atom_annihilator(q)});
        H += inv_sqrt2 * tables.W_con(kp, k, q) * fwd;
        H += inv_sqrt2 * std::conj(tables.W_con(kp, k, q)) * fwd.adjoint();
      }
  return H;
}

CoefficientVector exact_evolve(const ComplexMatrix& H, const CoefficientVector& C0, double t) {
  check_hermitian(H, "exact_evolve");
  if (C0.size() != H.rows()) throw DimensionError("exact_evolve: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  CoefficientVector modal = es.eigenvectors().adjoint() * C0;
  for (int i = 0; i < modal.size(); ++i)
    modal[i] *= std::exp(Complex(0.0, -es.eigenvalues()[i] * t));
  return es.eigenvectors() * modal;
}

std::pair<double, CoefficientVector> exact_ground_state(const ComplexMatrix& H) {
  check_hermitian(H, "exact_ground_state");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

RdmBundle exact_rdms(const ConfigurationBasis& basis, const CoefficientVector& C) {
  check_guard(basis);
  const int M = basis.M();
  const int Mp = basis.M_prime();
  RdmBundle r;
  r.rho_a = ComplexMatrix::Zero(M, M);
  r.rho_m = ComplexMatrix::Zero(Mp, Mp);
  r.rho_a2 = Tensor4(M, M, M, M);
  r.rho_m2 = Tensor4(Mp, Mp, Mp, Mp);
  r.rho_am = Tensor4(M, Mp, M, Mp);
  r.rho_conv = Tensor3(Mp, M, M);

  auto expect = [&](const std::vector<LadderSymbol>& expr) {
    return Complex(C.dot(build_operator(basis, expr) * C));
  };
  for (int k = 0; k < M; ++k)
    for (int q = 0; q < M; ++q)
      r.rho_a(k, q) = expect({atom_creator(k), atom_annihilator(q)});
  for (int k = 0; k < Mp; ++k)
    for (int q = 0; q < Mp; ++q)
      r.rho_m(k, q) = expect({mol_creator(k), mol_annihilator(q)});
  for (int k = 0; k < M; ++k)
    for (int s = 0; s < M; ++s)
      for (int l = 0; l < M; ++l)
        for (int q = 0; q < M; ++q)
          r.rho_a2(k, s, l, q) = expect(
              {atom_creator(k), atom_creator(s), atom_annihilator(l), atom_annihilator(q)});
  for (int k = 0; k < Mp; ++k)
    for (int s = 0; s < Mp; ++s)
      for (int l = 0; l < Mp; ++l)
        for (int q = 0; q < Mp; ++q)
          r.rho_m2(k, s, l, q) =
              expect({mol_creator(k), mol_creator(s), mol_annihilator(l), mol_annihilator(q)});
  for (int k = 0; k < M; ++k)
    for (int kp = 0; kp < Mp; ++kp)
      for (int q = 0; q < M; ++q)
        for (int qp = 0; qp < Mp; ++qp)
          r.rho_am(k, kp, q, qp) = expect(
              {atom_creator(k), atom_annihilator(q), mol_creator(kp), mol_annihilator(qp)});
  for (int kp = 0; kp < Mp; ++kp)
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q)
        r.rho_conv(kp, k, q) = expect({mol_creator(kp), atom_annihilator(k), atom_annihilator(q)});
  return r;
}

}  // namespace amc
