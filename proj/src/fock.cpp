#include "amc/fock.hpp"

#include <cmath>
#include <cstring>
#include <functional>

namespace amc {

namespace {

void check_orbital(const Eigen::VectorXi& occ, int orbital, const char* what) {
  if (orbital < 0 || orbital >= occ.size())
    throw PreconditionError(std::string(what) + ": orbital index out of range");
}

Eigen::VectorXi& occ_of(Configuration& c, Species s) {
  return s == Species::atom ? c.atom_occ : c.mol_occ;
}

}  // namespace

LadderResult apply_annihilator(const Configuration& c, Species species, int orbital) {
  const Eigen::VectorXi& occ = species == Species::atom ? c.atom_occ : c.mol_occ;
  check_orbital(occ, orbital, "annihilator");
  LadderResult res;
  if (occ[orbital] == 0) {
    res.vanished = true;
    return res;
  }
  res.amplitude = std::sqrt(static_cast<double>(occ[orbital]));
  res.target = c;
  occ_of(res.target, species)[orbital] -= 1;
  return res;
}

LadderResult apply_creator(const Configuration& c, Species species, int orbital) {
  const Eigen::VectorXi& occ = species == Species::atom ? c.atom_occ : c.mol_occ;
  check_orbital(occ, orbital, "creator");
  LadderResult res;
  res.amplitude = std::sqrt(static_cast<double>(occ[orbital] + 1));
  res.target = c;
  occ_of(res.target, species)[orbital] += 1;
  return res;
}

long double ConfigurationBasis::size_estimate(int N, int M, int M_prime) {
  auto binom = [](int n, int k) {
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) r *= static_cast<long double>(n - k + i) / i;
    return r;
  };
  long double total = 0.0L;
  for (int p = 0; p <= N / 2; ++p)
    total += binom(N - 2 * p + M - 1, M - 1) * binom(p + M_prime - 1, M_prime - 1);
  return total;
}

std::string ConfigurationBasis::pack(const Configuration& c) {
  std::string key(sizeof(int) * (c.atom_occ.size() + c.mol_occ.size()), '\0');
  std::memcpy(key.data(), c.atom_occ.data(), sizeof(int) * c.atom_occ.size());
  std::memcpy(key.data() + sizeof(int) * c.atom_occ.size(), c.mol_occ.data(),
              sizeof(int) * c.mol_occ.size());
  return key;
}

ConfigurationBasis ConfigurationBasis::enumerate(int N, int M, int M_prime) {
  if (N < 0 || M < 1 || M_prime < 1)
    throw PreconditionError("basis: require N >= 0, M >= 1, M' >= 1");
  const long double predicted = size_estimate(N, M, M_prime);
  if (predicted > static_cast<long double>(kSizeGuard))
    throw PreconditionError("basis: predicted size " + std::to_string((double)predicted) +
                            " exceeds the desk-scale guard of " + std::to_string(kSizeGuard));

  ConfigurationBasis basis;
  basis.N_ = N;
  basis.M_ = M;
  basis.M_prime_ = M_prime;

  // lexicographically ascending compositions of `total` into `parts` slots
  std::vector<int> scratch;
  std::function<void(int, int, const std::function<void()>&)> compositions =
      [&](int parts, int total, const std::function<void()>& emit) {
        if (parts == 1) {
          scratch.push_back(total);
          emit();
          scratch.pop_back();
          return;
        }
        for (int v = 0; v <= total; ++v) {
          scratch.push_back(v);
          compositions(parts - 1, total - v, emit);
          scratch.pop_back();
        }
      };

  for (int p = 0; p <= N / 2; ++p) {
    std::vector<Eigen::VectorXi> atom_parts, mol_parts;
    compositions(M, N - 2 * p, [&] {
      atom_parts.push_back(Eigen::Map<Eigen::VectorXi>(scratch.data(), M));
    });
    compositions(M_prime, p, [&] {
      mol_parts.push_back(Eigen::Map<Eigen::VectorXi>(scratch.data(), M_prime));
    });
    for (const auto& n : atom_parts)
      for (const auto& m : mol_parts) {
        Configuration c;
        c.atom_occ = n;
        c.mol_occ = m;
        basis.index_.emplace(pack(c), static_cast<int>(basis.configs_.size()));
        basis.configs_.push_back(std::move(c));
      }
  }
  return basis;
}

std::optional<int> ConfigurationBasis::index_of(const Configuration& c) const {
  if (c.atom_occ.size() != M_ || c.mol_occ.size() != M_prime_) return std::nullopt;
  auto it = index_.find(pack(c));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ConfigurationBasis::dump(std::ostream& os) const {
  for (const auto& c : configs_) {
    os << c.molecules() << " |";
    for (int k = 0; k < M_; ++k) os << ' ' << c.atom_occ[k];
    os << " |";
    for (int k = 0; k < M_prime_; ++k) os << ' ' << c.mol_occ[k];
    os << '\n';
  }
}

}  // namespace amc
