#pragma once

#include "amc/types.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>

namespace amc {

enum class Species { atom, molecule };

/// Occupation-number state |n_1..n_M : m_1..m_M'> with p = sum(m) molecules.
/// Members of an N-conserving basis satisfy sum(n) + 2 sum(m) = N.
struct Configuration {
  Eigen::VectorXi atom_occ;
  Eigen::VectorXi mol_occ;

  int molecules() const { return mol_occ.sum(); }
  int atoms() const { return atom_occ.sum(); }

  bool operator==(const Configuration& other) const {
    return atom_occ == other.atom_occ && mol_occ == other.mol_occ;
  }
};

/// Outcome of a single ladder-operator action.  `vanished` marks annihilation
/// of an empty mode (the VACUUM-ANNIHILATED sentinel); otherwise amplitude
/// carries the bosonic square-root factor and target the new configuration.
struct LadderResult {
  bool vanished = false;
  double amplitude = 0.0;
  Configuration target;
};

/// b_k |..n_k..> = sqrt(n_k) |..n_k - 1..>
LadderResult apply_annihilator(const Configuration& c, Species species, int orbital);

/// b+_k |..n_k..> = sqrt(n_k + 1) |..n_k + 1..>.  The target may leave an
/// N-conserving basis; callers check membership via index_of.
LadderResult apply_creator(const Configuration& c, Species species, int orbital);

/// All configurations with N - 2p atoms in M orbitals and p molecules in M'
/// orbitals, p = 0..floor(N/2), ordered by ascending p then lexicographically
/// in (atom_occ, mol_occ).  Immutable after enumeration.
class ConfigurationBasis {
public:
  static ConfigurationBasis enumerate(int N, int M, int M_prime);

  /// Closed-form size sum_p binom(N-2p+M-1, M-1) binom(p+M'-1, M'-1),
  /// evaluated without enumerating (used by the desk-scale guard).
  static long double size_estimate(int N, int M, int M_prime);

  /// Refuses enumeration above this many configurations.
  static constexpr long long kSizeGuard = 10'000'000;

  int size() const { return static_cast<int>(configs_.size()); }
  const Configuration& config(int i) const { return configs_[i]; }
  const std::vector<Configuration>& configs() const { return configs_; }

  /// Index of a configuration, or nullopt when it is not a member
  /// (e.g. after a creator left the N-conserving space).
  std::optional<int> index_of(const Configuration& c) const;

  int N() const { return N_; }
  int M() const { return M_; }
  int M_prime() const { return M_prime_; }

  /// Number of molecules of configuration i.
  int sector(int i) const { return configs_[i].molecules(); }

  /// Debug dump, one line per configuration: "p | n1 .. nM | m1 .. mM'".
  void dump(std::ostream& os) const;

private:
  int N_ = 0, M_ = 0, M_prime_ = 0;
  std::vector<Configuration> configs_;
  std::unordered_map<std::string, int> index_;

  static std::string pack(const Configuration& c);
};

}  // namespace amc
