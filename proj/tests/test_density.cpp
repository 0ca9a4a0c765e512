#include "amc/density.hpp"

#include "amc/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace amc;
using namespace amc::testing;

TEST_CASE("conversion correlator on the N=2 ladder") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(2, 1, 1);
  CoefficientVector C(2);
  C << Complex(0.6, 0.3), Complex(0.5, -0.55);
  C /= C.norm();
  RdmBundle r = compute_rdms(basis, C);
  // <c+ b b> = sqrt(2) C*_1 C_0
  const Complex expected = std::sqrt(2.0) * std::conj(C[1]) * C[0];
  CHECK(std::abs(r.rho_conv(0, 0, 0) - expected) < 1e-14);
}

TEST_CASE("pair expectation values of a two-sector superposition") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 1, 1);
  CoefficientVector C = CoefficientVector::Zero(3);
  C[0] = 1.0 / std::sqrt(2.0);  // |4,0>
  C[2] = 1.0 / std::sqrt(2.0);  // |0,2>
  RdmBundle r = compute_rdms(basis, C);
  CHECK(r.atom_number() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.molecule_number() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.rho_a2(0, 0, 0, 0).real() == doctest::Approx(6.0).epsilon(1e-14));  // <Na(Na-1)>
  // no adjacent sectors populated, so the conversion tensor vanishes
  CHECK(std::abs(r.rho_conv(0, 0, 0)) == 0.0);
}

TEST_CASE("conversion entry with distinct atomic orbitals") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(2, 2, 1);
  Configuration mol, pair;
  mol.atom_occ = Eigen::VectorXi::Zero(2);
  mol.mol_occ = Eigen::VectorXi::Ones(1);
  pair.atom_occ = Eigen::VectorXi::Ones(2);
  pair.mol_occ = Eigen::VectorXi::Zero(1);
  const Complex alpha(0.48, 0.36), beta(0.6, -0.52);
  CoefficientVector C = CoefficientVector::Zero(basis.size());
  C[*basis.index_of(mol)] = alpha;
  C[*basis.index_of(pair)] = beta;
  C /= C.norm();
  RdmBundle r = compute_rdms(basis, C);
  const Complex a = C[*basis.index_of(mol)];
  const Complex b = C[*basis.index_of(pair)];
  CHECK(std::abs(r.rho_conv(0, 0, 1) - std::conj(a) * b) < 1e-14);
  CHECK(r.rho_conv(0, 0, 1) == r.rho_conv(0, 1, 0));  // exchange symmetry, exact

  // cross-check against the dense ladder oracle c+_1 b_1 b_2
  ComplexMatrix op = build_operator(
      basis, {mol_creator(0), atom_annihilator(0), atom_annihilator(1)});
  CHECK(std::abs(r.rho_conv(0, 0, 1) - Complex(C.dot(op * C))) < 1e-14);
}

TEST_CASE("all tensors match the dense oracle on a random state") {
  std::mt19937_64 rng(23);
  ConfigurationBasis basis = ConfigurationBasis::enumerate(5, 2, 2);
  CoefficientVector C = random_coefficients(basis.size(), rng);
  RdmBundle fast = compute_rdms(basis, C);
  RdmBundle exact = exact_rdms(basis, C);
  auto diff = [](const auto& a, const auto& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
  };
  CHECK((fast.rho_a - exact.rho_a).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((fast.rho_m - exact.rho_m).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(diff(fast.rho_a2.data(), exact.rho_a2.data()) < 1e-13);
  CHECK(diff(fast.rho_m2.data(), exact.rho_m2.data()) < 1e-13);
  CHECK(diff(fast.rho_am.data(), exact.rho_am.data()) < 1e-13);
  CHECK(diff(fast.rho_conv.data(), exact.rho_conv.data()) < 1e-13);
}

TEST_CASE("one-body RDMs are Hermitian PSD and conserve N") {
  std::mt19937_64 rng(29);
  ConfigurationBasis basis = ConfigurationBasis::enumerate(6, 2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientVector C = random_coefficients(basis.size(), rng);
    RdmBundle r = compute_rdms(basis, C);
    CHECK((r.rho_a - r.rho_a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(natural_occupations(r.rho_a).minCoeff() > -1e-10);
    CHECK(natural_occupations(r.rho_m).minCoeff() > -1e-10);
    CHECK(std::abs(r.atom_number() + 2.0 * r.molecule_number() - 6.0) < 1e-10);
  }
}

TEST_CASE("two-body contraction identity against the dense oracle") {
  std::mt19937_64 rng(31);
  ConfigurationBasis basis = ConfigurationBasis::enumerate(6, 2, 1);
  CoefficientVector C = random_coefficients(basis.size(), rng);
  RdmBundle r = compute_rdms(basis, C);
  for (int k = 0; k < 2; ++k)
    for (int q = 0; q < 2; ++q) {
      Complex contracted{0.0, 0.0};
      for (int s = 0; s < 2; ++s) contracted += r.rho_a2(k, s, s, q);
      Complex dense{0.0, 0.0};
      for (int s = 0; s < 2; ++s) {
        ComplexMatrix op = build_operator(basis, {atom_creator(k), atom_creator(s),
                                                  atom_annihilator(s), atom_annihilator(q)});
        dense += C.dot(op * C);
      }
      CHECK(std::abs(contracted - dense) < 1e-13);
    }
}

TEST_CASE("gauge covariance: conserving tensors are phase invariant") {
  std::mt19937_64 rng(37);
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 2, 1);
  CoefficientVector C = random_coefficients(basis.size(), rng);
  const double beta = 0.81, gamma = -0.33;
  CoefficientVector Cr = C;
  for (int i = 0; i < basis.size(); ++i) {
    const int p = basis.sector(i);
    Cr[i] *= std::exp(Complex(0.0, -((4 - 2 * p) * beta + p * gamma)));
  }
  RdmBundle before = compute_rdms(basis, C);
  RdmBundle after = compute_rdms(basis, Cr);
  CHECK((before.rho_a - after.rho_a).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((before.rho_m - after.rho_m).cwiseAbs().maxCoeff() < 1e-12);
  for (size_t i = 0; i < before.rho_am.data().size(); ++i)
    CHECK(std::abs(before.rho_am.data()[i] - after.rho_am.data()[i]) < 1e-12);
  // the conversion tensor rotates by exp(i(gamma - 2 beta)); the compensating
  // orbital phases restore the physical density
  const Complex rot = std::exp(Complex(0.0, gamma - 2.0 * beta));
  for (size_t i = 0; i < before.rho_conv.data().size(); ++i)
    CHECK(std::abs(after.rho_conv.data()[i] - rot * before.rho_conv.data()[i]) < 1e-12);
}

TEST_CASE("normalization precondition") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(2, 1, 1);
  CoefficientVector C = CoefficientVector::Constant(2, Complex(1.0, 0.0));
  CHECK_THROWS_AS(compute_rdms(basis, C), PreconditionError);
}

TEST_CASE("regularized inverse") {
  SUBCASE("identity stays the identity") {
    ComplexMatrix rho = ComplexMatrix::Identity(3, 3);
    CHECK((regularized_inverse(rho, 1e-8) - rho).cwiseAbs().maxCoeff() < 1e-7);
  }
  SUBCASE("singular direction is floored at 1/eps") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 5.0;
    ComplexMatrix inv = regularized_inverse(rho, 1e-8);
    CHECK(inv(0, 0).real() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(inv(1, 1).real() == doctest::Approx(1e8).epsilon(1e-9));
    CHECK(std::abs(inv(0, 1)) < 1e-9);
  }
  SUBCASE("eps -> 0 limit recovers the exact inverse") {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 2.0;
    rho(1, 1) = 1.0;
    ComplexMatrix inv = regularized_inverse(rho, 1e-300);
    CHECK(inv(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(inv(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("non-Hermitian input is rejected") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(regularized_inverse(bad, 1e-8), PreconditionError);
  }
}

TEST_CASE("natural occupations") {
  SUBCASE("single-configuration all-atom state") {
    ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 3, 1);
    CoefficientVector C = all_atoms_ground_coefficients(basis);
    RdmBundle r = compute_rdms(basis, C);
    RealVector occ = natural_occupations(r.rho_a);
    CHECK(occ[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::abs(occ[1]) < 1e-14);
    CHECK(std::abs(occ[2]) < 1e-14);
  }
  SUBCASE("2x2 analytic eigenvalues, descending order") {
    ComplexMatrix rho(2, 2);
    rho << 1.0, 0.5, 0.5, 1.0;
    RealVector occ = natural_occupations(rho);
    CHECK(occ[0] == doctest::Approx(1.5));
    CHECK(occ[1] == doctest::Approx(0.5));
    CHECK(occ.sum() == doctest::Approx(rho.trace().real()).epsilon(1e-12));
  }
  SUBCASE("condensed state has leading occupation near the trace") {
    // weakly depleted superposition over M = 2 orbitals
    ConfigurationBasis basis = ConfigurationBasis::enumerate(6, 2, 1);
    CoefficientVector C = CoefficientVector::Zero(basis.size());
    for (int i = 0; i < basis.size(); ++i) {
      const Configuration& c = basis.config(i);
      if (c.molecules() == 0) C[i] = std::pow(0.08, c.atom_occ[1]);
    }
    C /= C.norm();
    RdmBundle r = compute_rdms(basis, C);
    RealVector occ = natural_occupations(r.rho_a);
    CHECK(occ[0] / r.atom_number() > 0.98);
  }
}
