#include "amc/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace amc {

namespace {

struct Op {
  bool creator;
  Species species;
  int orbital;
};

// Applies a product of ladder operators (rightmost first, as written) to a
// configuration; returns false when any factor annihilates the vacuum.
bool apply_product(const Configuration& start, const Op* ops, int count, Configuration& target,
                   double& amplitude) {
  Configuration current = start;
  amplitude = 1.0;
  for (int i = count - 1; i >= 0; --i) {
    LadderResult r = ops[i].creator ? apply_creator(current, ops[i].species, ops[i].orbital)
                                    : apply_annihilator(current, ops[i].species, ops[i].orbital);
    if (r.vanished) return false;
    amplitude *= r.amplitude;
    current = std::move(r.target);
  }
  target = std::move(current);
  return true;
}

}  // namespace

SparseHamiltonian assemble_hamiltonian(const ConfigurationBasis& basis,
                                       const IntegralTables& tables) {
  const int M = basis.M();
  const int Mp = basis.M_prime();
  if (tables.M() != M || tables.M_prime() != Mp)
    throw DimensionError("assemble: tables inconsistent with basis dimensions");

  const int dim = basis.size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::unordered_map<long long, Complex> acc;
  acc.reserve(static_cast<size_t>(dim) * (M * M + Mp * Mp + 2));

  Configuration target;
  double amp = 0.0;
  for (int col = 0; col < dim; ++col) {
    const Configuration& ket = basis.config(col);
    auto add = [&](const Op* ops, int count, Complex coeff) {
      if (coeff == Complex{0.0, 0.0}) return;
      if (!apply_product(ket, ops, count, target, amp)) return;
      auto row = basis.index_of(target);
      if (!row) return;  // creators may step outside the N-conserving space
      acc[static_cast<long long>(*row) * dim + col] += coeff * amp;
    };

    // one-body
    for (int k = 0; k < M; ++k)
      for (int q = 0; q < M; ++q) {
        std::array<Op, 2> ops{Op{true, Species::atom, k}, Op{false, Species::atom, q}};
        add(ops.data(), 2, tables.h_a(k, q));
      }
    for (int k = 0; k < Mp; ++k)
      for (int q = 0; q < Mp; ++q) {
        std::array<Op, 2> ops{Op{true, Species::molecule, k}, Op{false, Species::molecule, q}};
        add(ops.data(), 2, tables.h_m(k, q));
      }

    // intra-species two-body, 1/2 prefactor
    for (int k = 0; k < M; ++k)
      for (int s = 0; s < M; ++s)
        for (int l = 0; l < M; ++l)
          for (int q = 0; q < M; ++q) {
            std::array<Op, 4> ops{Op{true, Species::atom, k}, Op{true, Species::atom, s},
                                  Op{false, Species::atom, l}, Op{false, Species::atom, q}};
            add(ops.data(), 4, 0.5 * tables.W_a(k, s, q, l));
          }
    for (int k = 0; k < Mp; ++k)
      for (int s = 0; s < Mp; ++s)
        for (int l = 0; l < Mp; ++l)
          for (int q = 0; q < Mp; ++q) {
            std::array<Op, 4> ops{Op{true, Species::molecule, k}, Op{true, Species::molecule, s},
                                  Op{false, Species::molecule, l}, Op{false, Species::molecule, q}};
            add(ops.data(), 4, 0.5 * tables.W_m(k, s, q, l));
          }

    // inter-species density-density term
    for (int k = 0; k < M; ++k)
      for (int kp = 0; kp < Mp; ++kp)
        for (int q = 0; q < M; ++q)
          for (int qp = 0; qp < Mp; ++qp) {
            std::array<Op, 4> ops{Op{true, Species::atom, k}, Op{false, Species::atom, q},
                                  Op{true, Species::molecule, kp},
                                  Op{false, Species::molecule, qp}};
            add(ops.data(), 4, tables.W_am(k, kp, q, qp));
          }

    // conversion: c+_k' b_k b_q plus Hermitian conjugate
    for (int kp = 0; kp < Mp; ++kp)
      for (int k = 0; k < M; ++k)
        for (int q = 0; q < M; ++q) {
          std::array<Op, 3> fwd{Op{true, Species::molecule, kp}, Op{false, Species::atom, k},
                                Op{false, Species::atom, q}};
          add(fwd.data(), 3, inv_sqrt2 * tables.W_con(kp, k, q));
          std::array<Op, 3> bwd{Op{true, Species::atom, q}, Op{true, Species::atom, k},
                                Op{false, Species::molecule, kp}};
          add(bwd.data(), 3, inv_sqrt2 * std::conj(tables.W_con(kp, k, q)));
        }
  }

  // fold into the Hermitian upper triangle
  SparseHamiltonian H;
  H.dimension = dim;
  H.entries.reserve(acc.size() / 2 + dim);
  for (const auto& [key, value] : acc) {
    const int row = static_cast<int>(key / dim);
    const int col = static_cast<int>(key % dim);
    if (row > col) continue;
    Complex v = value;
    if (row == col) {
      v = Complex(v.real(), 0.0);
    } else {
      auto mirror = acc.find(static_cast<long long>(col) * dim + row);
      if (mirror != acc.end()) v = 0.5 * (v + std::conj(mirror->second));
    }
    if (v != Complex{0.0, 0.0}) H.entries.push_back({row, col, v});
  }
  std::sort(H.entries.begin(), H.entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return H;
}

CoefficientVector matvec(const SparseHamiltonian& H, const CoefficientVector& C) {
  if (C.size() != H.dimension) throw DimensionError("matvec: dimension mismatch");
  CoefficientVector y = CoefficientVector::Zero(H.dimension);
  for (const auto& e : H.entries) {
    y[e.row] += e.value * C[e.col];
    if (e.row != e.col) y[e.col] += std::conj(e.value) * C[e.row];
  }
  return y;
}

double expectation(const SparseHamiltonian& H, const CoefficientVector& C) {
  return C.dot(matvec(H, C)).real();
}

ComplexMatrix SparseHamiltonian::dense() const {
  ComplexMatrix D = ComplexMatrix::Zero(dimension, dimension);
  for (const auto& e : entries) {
    D(e.row, e.col) = e.value;
    if (e.row != e.col) D(e.col, e.row) = std::conj(e.value);
  }
  return D;
}

void dump_coordinates(std::ostream& os, const SparseHamiltonian& H) {
  os.precision(17);
  for (const auto& e : H.entries)
    os << e.row << ' ' << e.col << ' ' << e.value.real() << ' ' << e.value.imag() << '\n';
}

}  // namespace amc
