#include "amc/config.hpp"

#include "amc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace amc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Parser {
  const std::string& path;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
  }

  double to_double(const std::string& key, const std::string& v) const {
    try {
      size_t used = 0;
      double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument("");
      return x;
    } catch (...) {
      fail("key '" + key + "' expects a real number, got '" + v + "'");
    }
  }
  long long to_int(const std::string& key, const std::string& v) const {
    try {
      size_t used = 0;
      long long x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument("");
      return x;
    } catch (...) {
      fail("key '" + key + "' expects an integer, got '" + v + "'");
    }
  }
  bool to_bool(const std::string& key, const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail("key '" + key + "' expects true/false, got '" + v + "'");
  }
};

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  RunConfig cfg;
  cfg.source_path = path;
  Parser p{path};
  std::string section = "system";
  bool mass_m_set = false;
  bool N_set = false;

  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') p.fail("malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "integrator" && section != "initial" &&
          section != "output")
        p.fail("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) p.fail("key '" + key + "' has no value");

    auto& I = cfg.integrator;
    if (section == "system") {
      if (key == "N") { cfg.N = static_cast<int>(p.to_int(key, value)); N_set = true; }
      else if (key == "M") cfg.M = static_cast<int>(p.to_int(key, value));
      else if (key == "M_prime") cfg.M_prime = static_cast<int>(p.to_int(key, value));
      else if (key == "n_points") cfg.n_points = static_cast<int>(p.to_int(key, value));
      else if (key == "length") cfg.length = p.to_double(key, value);
      else if (key == "mass_a") cfg.mass_a = p.to_double(key, value);
      else if (key == "mass_m") { cfg.mass_m = p.to_double(key, value); mass_m_set = true; }
      else if (key == "trap_a") cfg.trap_a = value;
      else if (key == "trap_m") cfg.trap_m = value;
      else if (key == "offset_a") cfg.offset_a = p.to_double(key, value);
      else if (key == "offset_m") cfg.offset_m = p.to_double(key, value);
      else if (key == "interaction") cfg.interaction = value;
      else if (key == "lambda_a") cfg.lambda_a = p.to_double(key, value);
      else if (key == "lambda_m") cfg.lambda_m = p.to_double(key, value);
      else if (key == "lambda_am") cfg.lambda_am = p.to_double(key, value);
      else if (key == "lambda_con") cfg.lambda_con = p.to_double(key, value);
      else if (key == "kernel_a") cfg.kernel_a = value;
      else if (key == "kernel_m") cfg.kernel_m = value;
      else if (key == "kernel_am") cfg.kernel_am = value;
      else if (key == "kernel_con") cfg.kernel_con = value;
      else if (key == "reg_eps") cfg.reg_eps = p.to_double(key, value);
      else p.fail("unknown key '" + key + "' in [system]");
    } else if (section == "integrator") {
      if (key == "scheme") {
        if (value == "rk4") I.scheme = IntegratorConfig::Scheme::rk4;
        else if (value == "rk45") I.scheme = IntegratorConfig::Scheme::rk45;
        else p.fail("key 'scheme' expects rk4 or rk45, got '" + value + "'");
      }
      else if (key == "dt") I.dt = p.to_double(key, value);
      else if (key == "abs_tol") I.abs_tol = p.to_double(key, value);
      else if (key == "rel_tol") I.rel_tol = p.to_double(key, value);
      else if (key == "t_final") I.t_final = p.to_double(key, value);
      else if (key == "record_every") I.record_every = static_cast<int>(p.to_int(key, value));
      else if (key == "renorm_each_step") I.renorm_each_step = p.to_bool(key, value);
      else if (key == "freeze_orbitals") I.freeze_orbitals = p.to_bool(key, value);
      else if (key == "tol_energy") I.tol_energy = p.to_double(key, value);
      else if (key == "tol_orbital") I.tol_orbital = p.to_double(key, value);
      else if (key == "tol_coeff") I.tol_coeff = p.to_double(key, value);
      else if (key == "max_steps") I.max_steps = p.to_int(key, value);
      else p.fail("unknown key '" + key + "' in [integrator]");
    } else if (section == "initial") {
      if (key == "orbitals") cfg.initial_orbitals = value;
      else if (key == "coefficients") cfg.initial_coefficients = value;
      else if (key == "restart") cfg.restart_file = value;
      else p.fail("unknown key '" + key + "' in [initial]");
    } else {  // output
      if (key == "directory") cfg.output_directory = value;
      else if (key == "density_every") cfg.density_every = static_cast<int>(p.to_int(key, value));
      else p.fail("unknown key '" + key + "' in [output]");
    }
  }

  if (!mass_m_set) cfg.mass_m = 2.0 * cfg.mass_a;  // molecule is two bound atoms

  // validation beyond syntax
  p.line = 0;
  if (!N_set) throw ConfigError(path + ": missing required key 'N' in [system]");
  if (cfg.N < 0) throw ConfigError("N must be >= 0");
  if (cfg.M < 1 || cfg.M_prime < 1) throw ConfigError("M and M_prime must be >= 1");
  if (!(cfg.integrator.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.integrator.abs_tol > 0.0) || !(cfg.integrator.rel_tol > 0.0))
    throw ConfigError("integrator tolerances must be positive");
  if (!(cfg.integrator.dt < cfg.integrator.t_final))
    throw ConfigError("dt must be smaller than t_final");
  if (cfg.integrator.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (!(cfg.reg_eps > 0.0)) throw ConfigError("reg_eps must be positive");
  if (cfg.interaction != "contact" && cfg.interaction != "general")
    throw ConfigError("interaction must be 'contact' or 'general'");

  const long double predicted = ConfigurationBasis::size_estimate(cfg.N, cfg.M, cfg.M_prime);
  if (predicted > static_cast<long double>(ConfigurationBasis::kSizeGuard)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Lg", predicted);
    throw ConfigError("requested basis has " + std::string(buf) +
                      " configurations, above the desk-scale guard of " +
                      std::to_string(ConfigurationBasis::kSizeGuard));
  }

  auto referenced_file = [&](const std::string& v) {
    return v != "none" && v.rfind("harmonic(", 0) != 0 && v.rfind("delta(", 0) != 0;
  };
  for (const std::string& v : {cfg.trap_a, cfg.trap_m})
    if (referenced_file(v) && !std::filesystem::exists(v))
      throw ConfigError("trap file '" + v + "' does not exist");
  if (cfg.interaction == "general")
    for (const std::string& v : {cfg.kernel_a, cfg.kernel_m, cfg.kernel_am, cfg.kernel_con})
      if (referenced_file(v) && !std::filesystem::exists(v))
        throw ConfigError("kernel file '" + v + "' does not exist");
  if (!cfg.restart_file.empty() && !std::filesystem::exists(cfg.restart_file))
    throw ConfigError("restart file '" + cfg.restart_file + "' does not exist");
  return cfg;
}

RealVector parse_potential(const std::string& value, const SpatialGrid& grid, double mass) {
  if (value == "none") return RealVector::Zero(grid.n_points);
  if (value.rfind("harmonic(", 0) == 0 && value.back() == ')') {
    const double omega = std::stod(value.substr(9, value.size() - 10));
    RealVector V(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
      V[i] = 0.5 * mass * omega * omega * grid.points[i] * grid.points[i];
    return V;
  }
  std::ifstream in(value);
  if (!in) throw ConfigError("cannot open potential file '" + value + "'");
  RealVector V(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i)
    if (!(in >> V[i]))
      throw ConfigError("potential file '" + value + "' has fewer than " +
                        std::to_string(grid.n_points) + " values");
  return V;
}

RealMatrix parse_kernel(const std::string& value, const SpatialGrid& grid) {
  if (value.rfind("delta(", 0) == 0 && value.back() == ')') {
    const double lambda = std::stod(value.substr(6, value.size() - 7));
    return InteractionSpec::delta_kernel(grid.n_points, grid.spacing, lambda);
  }
  std::ifstream in(value);
  if (!in) throw ConfigError("cannot open kernel file '" + value + "'");
  RealMatrix W(grid.n_points, grid.n_points);
  for (int i = 0; i < grid.n_points; ++i)
    for (int j = 0; j < grid.n_points; ++j)
      if (!(in >> W(i, j)))
        throw ConfigError("kernel file '" + value + "' has fewer than n_points^2 values");
  return W;
}

System build_system(const RunConfig& cfg) {
  SpatialGrid grid = SpatialGrid::uniform(cfg.n_points, cfg.length);
  OneBodyOperatorSpec atom{cfg.mass_a, parse_potential(cfg.trap_a, grid, cfg.mass_a),
                           cfg.offset_a};
  OneBodyOperatorSpec mol{cfg.mass_m, parse_potential(cfg.trap_m, grid, cfg.mass_m),
                          cfg.offset_m};
  InteractionSpec interaction =
      cfg.interaction == "contact"
          ? InteractionSpec::contact(cfg.lambda_a, cfg.lambda_m, cfg.lambda_am, cfg.lambda_con)
          : InteractionSpec::general(parse_kernel(cfg.kernel_a, grid),
                                     parse_kernel(cfg.kernel_m, grid),
                                     parse_kernel(cfg.kernel_am, grid),
                                     parse_kernel(cfg.kernel_con, grid));
  return System::build(grid, atom, mol, interaction, cfg.N, cfg.M, cfg.M_prime, cfg.reg_eps);
}

PropagationState build_initial_state(const RunConfig& cfg, const System& system) {
  if (!cfg.restart_file.empty()) return load_state_json(cfg.restart_file, system);
  PropagationState state;
  state.time = 0.0;
  if (cfg.initial_orbitals == "trap_eigenstates")
    state.orbitals = trap_eigen_orbitals(system);
  else
    throw ConfigError("unknown initial orbitals choice '" + cfg.initial_orbitals +
                      "' (use trap_eigenstates or a restart file)");
  if (cfg.initial_coefficients == "all_atoms_ground")
    state.coefficients = all_atoms_ground_coefficients(system.basis);
  else
    throw ConfigError("unknown initial coefficients choice '" + cfg.initial_coefficients +
                      "' (use all_atoms_ground or a restart file)");
  return state;
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  const auto& I = cfg.integrator;
  os << "# [system]\n"
     << "# N = " << cfg.N << "\n# M = " << cfg.M << "\n# M_prime = " << cfg.M_prime << "\n"
     << "# n_points = " << cfg.n_points << "\n# length = " << num(cfg.length) << "\n"
     << "# mass_a = " << num(cfg.mass_a) << "\n# mass_m = " << num(cfg.mass_m) << "\n"
     << "# trap_a = " << cfg.trap_a << "\n# trap_m = " << cfg.trap_m << "\n"
     << "# offset_a = " << num(cfg.offset_a) << "\n# offset_m = " << num(cfg.offset_m) << "\n"
     << "# interaction = " << cfg.interaction << "\n"
     << "# lambda_a = " << num(cfg.lambda_a) << "\n# lambda_m = " << num(cfg.lambda_m) << "\n"
     << "# lambda_am = " << num(cfg.lambda_am) << "\n# lambda_con = " << num(cfg.lambda_con)
     << "\n";
  if (cfg.interaction == "general")
    os << "# kernel_a = " << cfg.kernel_a << "\n# kernel_m = " << cfg.kernel_m << "\n"
       << "# kernel_am = " << cfg.kernel_am << "\n# kernel_con = " << cfg.kernel_con << "\n";
  os << "# reg_eps = " << num(cfg.reg_eps) << "\n"
     << "# [integrator]\n"
     << "# scheme = " << (I.scheme == IntegratorConfig::Scheme::rk4 ? "rk4" : "rk45") << "\n"
     << "# dt = " << num(I.dt) << "\n# abs_tol = " << num(I.abs_tol)
     << "\n# rel_tol = " << num(I.rel_tol) << "\n# t_final = " << num(I.t_final) << "\n"
     << "# record_every = " << I.record_every << "\n"
     << "# renorm_each_step = " << (I.renorm_each_step ? "true" : "false") << "\n"
     << "# freeze_orbitals = " << (I.freeze_orbitals ? "true" : "false") << "\n"
     << "# tol_energy = " << num(I.tol_energy) << "\n# tol_orbital = " << num(I.tol_orbital)
     << "\n# tol_coeff = " << num(I.tol_coeff) << "\n# max_steps = " << I.max_steps << "\n"
     << "# [initial]\n"
     << "# orbitals = " << cfg.initial_orbitals << "\n"
     << "# coefficients = " << cfg.initial_coefficients << "\n";
  if (!cfg.restart_file.empty()) os << "# restart = " << cfg.restart_file << "\n";
  os << "# [output]\n"
     << "# directory = " << cfg.output_directory << "\n"
     << "# density_every = " << cfg.density_every << "\n";
  return os.str();
}

}  // namespace amc
