#include "amc/fock.hpp"

#include <doctest.h>

#include <sstream>

using namespace amc;

namespace {
Configuration make_config(std::initializer_list<int> atoms, std::initializer_list<int> mols) {
  Configuration c;
  c.atom_occ.resize(atoms.size());
  int i = 0;
  for (int v : atoms) c.atom_occ[i++] = v;
  c.mol_occ.resize(mols.size());
  i = 0;
  for (int v : mols) c.mol_occ[i++] = v;
  return c;
}
}  // namespace

TEST_CASE("enumeration of the two-mode ladder N=4") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 1, 1);
  REQUIRE(basis.size() == 3);
  CHECK(basis.config(0) == make_config({4}, {0}));
  CHECK(basis.config(1) == make_config({2}, {1}));
  CHECK(basis.config(2) == make_config({0}, {2}));
}

TEST_CASE("enumeration sizes match the closed-form sum") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 2, 1);
  CHECK(basis.size() == 9);  // 5 + 3 + 1
  CHECK(static_cast<long long>(ConfigurationBasis::size_estimate(4, 2, 1)) == 9);

  CHECK(ConfigurationBasis::enumerate(0, 3, 2).size() == 1);  // vacuum only

  for (int N : {2, 5, 6})
    for (int M : {1, 2, 3})
      for (int Mp : {1, 2}) {
        ConfigurationBasis b = ConfigurationBasis::enumerate(N, M, Mp);
        CHECK(b.size() ==
              static_cast<int>(ConfigurationBasis::size_estimate(N, M, Mp) + 0.5L));
      }
}

TEST_CASE("ordering: ascending molecule count, then lexicographic") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 2, 1);
  for (int i = 1; i < basis.size(); ++i) {
    const auto& a = basis.config(i - 1);
    const auto& b = basis.config(i);
    const bool p_ascending = a.molecules() < b.molecules();
    bool lex_ascending = false;
    if (a.molecules() == b.molecules()) {
      for (int k = 0; k < 2; ++k) {
        if (a.atom_occ[k] != b.atom_occ[k]) {
          lex_ascending = a.atom_occ[k] < b.atom_occ[k];
          break;
        }
      }
    }
    CHECK((p_ascending || lex_ascending));
  }
}

TEST_CASE("index_of is the inverse of enumeration and rejects outsiders") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(6, 2, 2);
  for (int i = 0; i < basis.size(); ++i) {
    auto idx = basis.index_of(basis.config(i));
    REQUIRE(idx.has_value());
    CHECK(*idx == i);
  }
  CHECK_FALSE(basis.index_of(make_config({6, 1}, {0, 0})).has_value());  // violates N
}

TEST_CASE("bosonic ladder actions") {
  SUBCASE("annihilator carries sqrt(n)") {
    LadderResult r = apply_annihilator(make_config({2}, {0}), Species::atom, 0);
    REQUIRE_FALSE(r.vanished);
    CHECK(r.amplitude == doctest::Approx(std::sqrt(2.0)));
    CHECK(r.target == make_config({1}, {0}));
  }
  SUBCASE("annihilating an empty mode vanishes") {
    CHECK(apply_annihilator(make_config({2}, {0}), Species::molecule, 0).vanished);
  }
  SUBCASE("annihilator on a multi-orbital configuration") {
    LadderResult r = apply_annihilator(make_config({1, 3}, {1}), Species::atom, 1);
    CHECK(r.amplitude == doctest::Approx(std::sqrt(3.0)));
    CHECK(r.target == make_config({1, 2}, {1}));
  }
  SUBCASE("creator on the vacuum") {
    LadderResult r = apply_creator(make_config({0, 0, 0}, {0}), Species::atom, 0);
    CHECK(r.amplitude == doctest::Approx(1.0));
    CHECK(r.target == make_config({1, 0, 0}, {0}));
  }
  SUBCASE("creator carries sqrt(n+1)") {
    LadderResult r = apply_creator(make_config({3}, {0}), Species::atom, 0);
    CHECK(r.amplitude == doctest::Approx(2.0));
    CHECK(r.target == make_config({4}, {0}));
  }
  SUBCASE("composed conversion amplitude sqrt(p(N-2p+1)(N-2p+2)) at p=1, N=2") {
    LadderResult a1 = apply_annihilator(make_config({2}, {0}), Species::atom, 0);
    LadderResult a2 = apply_annihilator(a1.target, Species::atom, 0);
    LadderResult m = apply_creator(a2.target, Species::molecule, 0);
    CHECK(a1.amplitude * a2.amplitude * m.amplitude == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.target == make_config({0}, {1}));
  }
  SUBCASE("orbital index out of range") {
    CHECK_THROWS_AS(apply_annihilator(make_config({2}, {0}), Species::atom, 1),
                    PreconditionError);
    CHECK_THROWS_AS(apply_creator(make_config({2}, {0}), Species::molecule, 3),
                    PreconditionError);
  }
}

TEST_CASE("number operator reproduced by composed ladder actions") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(5, 3, 2);
  for (int i = 0; i < basis.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      LadderResult down = apply_annihilator(basis.config(i), Species::atom, k);
      double n = 0.0;
      if (!down.vanished) {
        LadderResult up = apply_creator(down.target, Species::atom, k);
        CHECK(up.target == basis.config(i));
        n = down.amplitude * up.amplitude;
      }
      CHECK(n == doctest::Approx(basis.config(i).atom_occ[k]).epsilon(1e-14));
    }
}

TEST_CASE("conversion moves stay inside the basis") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(6, 2, 2);
  for (int i = 0; i < basis.size(); ++i)
    for (int kp = 0; kp < 2; ++kp)
      for (int k = 0; k < 2; ++k)
        for (int q = 0; q < 2; ++q) {
          LadderResult a1 = apply_annihilator(basis.config(i), Species::atom, q);
          if (a1.vanished) continue;
          LadderResult a2 = apply_annihilator(a1.target, Species::atom, k);
          if (a2.vanished) continue;
          LadderResult m = apply_creator(a2.target, Species::molecule, kp);
          CHECK(basis.index_of(m.target).has_value());
          // and the reverse move
          LadderResult md = apply_annihilator(m.target, Species::molecule, kp);
          LadderResult c1 = apply_creator(md.target, Species::atom, k);
          LadderResult c2 = apply_creator(c1.target, Species::atom, q);
          CHECK(basis.index_of(c2.target).has_value());
        }
}

TEST_CASE("desk-scale guard refuses oversized enumerations") {
  CHECK(ConfigurationBasis::size_estimate(200, 5, 1) >
        static_cast<long double>(ConfigurationBasis::kSizeGuard));
  CHECK_THROWS_AS(ConfigurationBasis::enumerate(200, 5, 1), PreconditionError);
}

TEST_CASE("basis dump format") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(4, 1, 1);
  std::ostringstream os;
  basis.dump(os);
  CHECK(os.str() == "0 | 4 | 0\n1 | 2 | 1\n2 | 0 | 2\n");
}
