#include "amc/config.hpp"

#include "amc/io.hpp"
#include "amc/run.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace amc;
using namespace amc::testing;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& body) {
  fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("minimal config fills documented defaults") {
  fs::path path = write_temp("amc_minimal.cfg", "[system]\nN = 2\n");
  RunConfig cfg = parse_config(path.string());
  CHECK(cfg.N == 2);
  CHECK(cfg.M == 1);
  CHECK(cfg.M_prime == 1);
  CHECK(cfg.n_points == 128);
  CHECK(cfg.length == 16.0);
  CHECK(cfg.mass_a == 1.0);
  CHECK(cfg.mass_m == 2.0);  // molecule defaults to twice the atomic mass
  CHECK(cfg.interaction == "contact");
  CHECK(cfg.integrator.scheme == IntegratorConfig::Scheme::rk4);
  CHECK(cfg.reg_eps == 1e-8);
}

TEST_CASE("N is the one required key") {
  fs::path path = write_temp("amc_no_n.cfg", "[system]\nM = 1\n");
  try {
    parse_config(path.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("missing required key") != std::string::npos);
    CHECK(what.find("'N'") != std::string::npos);
  }
}

TEST_CASE("unknown keys are hard errors naming key and line") {
  fs::path path = write_temp("amc_typo.cfg", "[system]\nN = 2\nlamda_a = 0.1\n");
  try {
    parse_config(path.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("lamda_a") != std::string::npos);
    CHECK(what.find(":3") != std::string::npos);
  }
}

TEST_CASE("type mismatches name the key") {
  fs::path path = write_temp("amc_type.cfg", "[system]\nN = two\n");
  try {
    parse_config(path.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("'N'") != std::string::npos);
  }
}

TEST_CASE("desk-scale guard refusal reports the computed size") {
  fs::path path = write_temp("amc_guard.cfg", "[system]\nN = 2000\nM = 3\n");
  try {
    parse_config(path.string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("guard") != std::string::npos);
    CHECK(what.find("configurations") != std::string::npos);
  }
}

TEST_CASE("potential parsing") {
  SpatialGrid grid = SpatialGrid::uniform(16, 8.0);
  RealVector none = parse_potential("none", grid, 1.0);
  CHECK(none.cwiseAbs().maxCoeff() == 0.0);
  RealVector harm = parse_potential("harmonic(2.0)", grid, 3.0);
  CHECK(harm[0] == doctest::Approx(0.5 * 3.0 * 4.0 * 16.0));

  fs::path vfile = write_temp("amc_potential.txt", [] {
    std::string body;
    for (int i = 0; i < 16; ++i) body += std::to_string(0.25 * i) + "\n";
    return body;
  }());
  RealVector from_file = parse_potential(vfile.string(), grid, 1.0);
  CHECK(from_file[4] == doctest::Approx(1.0));

  fs::path short_file = write_temp("amc_potential_short.txt", "0.0\n1.0\n");
  CHECK_THROWS_AS(parse_potential(short_file.string(), grid, 1.0), ConfigError);

  fs::path missing = write_temp("amc_trapref.cfg",
                                "[system]\nN = 2\ntrap_a = /no/such/file.txt\n");
  CHECK_THROWS_AS(parse_config(missing.string()), ConfigError);
}

TEST_CASE("config echo is deterministic and complete") {
  fs::path path = write_temp("amc_echo.cfg", "[system]\nN = 4\nlambda_con = 0.25\n");
  RunConfig cfg = parse_config(path.string());
  std::string echo = echo_config(cfg);
  CHECK(echo.rfind("# [system]", 0) == 0);
  CHECK(echo.find("# lambda_con = 0.25") != std::string::npos);
  CHECK(echo == echo_config(cfg));
}

TEST_CASE("state JSON round trip") {
  System system = harmonic_system(4, 2, 1, InteractionSpec::contact(0.1, 0.0, 0.0, 0.2), 32,
                                  8.0);
  std::mt19937_64 rng(73);
  PropagationState state;
  state.time = 2.5;
  state.orbitals.atomic = random_orthonormal(system.grid, 2, rng);
  state.orbitals.molecular = random_orthonormal(system.grid, 1, rng);
  state.coefficients = random_coefficients(system.basis.size(), rng);

  fs::path path = fs::temp_directory_path() / "amc_state.json";
  {
    std::ofstream out(path);
    out << state_to_json(system, state, -1.25).dump();
  }
  PropagationState loaded = load_state_json(path.string(), system);
  CHECK(loaded.time == doctest::Approx(2.5));
  CHECK((loaded.coefficients - state.coefficients).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((loaded.orbitals.atomic[1] - state.orbitals.atomic[1]).cwiseAbs().maxCoeff() < 1e-15);

  // dimension mismatch is rejected
  System other = harmonic_system(2, 1, 1, InteractionSpec::contact(0, 0, 0, 0), 32, 8.0);
  CHECK_THROWS_AS(load_state_json(path.string(), other), PreconditionError);
}

TEST_CASE("RDM JSON dump carries all six tensors as re/im pairs") {
  ConfigurationBasis basis = ConfigurationBasis::enumerate(2, 1, 1);
  CoefficientVector C(2);
  C << Complex(0.8, 0.0), Complex(0.0, 0.6);
  nlohmann::json j = rdms_to_json(compute_rdms(basis, C));
  for (const char* key : {"rho_a", "rho_m", "rho_a2", "rho_m2", "rho_am", "rho_conv"})
    CHECK(j.contains(key));
  CHECK(j["rho_a"][0][0].contains("re"));
  CHECK(j["rho_a"][0][0].contains("im"));
  CHECK(j["rho_a"][0][0]["re"].get<double>() == doctest::Approx(2.0 * 0.64));
}

TEST_CASE("end-to-end: relax run writes artifacts and restart reproduces it") {
  fs::path out_dir = fs::temp_directory_path() / "amc_run_relax";
  fs::remove_all(out_dir);
  fs::path cfg_path = write_temp("amc_run_relax.cfg",
                                 "[system]\nN = 2\nn_points = 48\nlength = 10.0\n"
                                 "lambda_con = 0.3\n\n[integrator]\ndt = 0.004\n"
                                 "t_final = 1000\nmax_steps = 60000\n\n[output]\ndirectory = " +
                                     (out_dir).string() + "\n");
  RunConfig cfg = parse_config(cfg_path.string());
  REQUIRE(run(cfg, RunMode::relax) == 0);
  CHECK(fs::exists(out_dir / "final_state.json"));
  CHECK(fs::exists(out_dir / "convergence.csv"));
  CHECK(fs::exists(out_dir / "rdms.json"));

  // observables of a propagation restarted from the relaxed state stay put
  fs::path prop_dir = fs::temp_directory_path() / "amc_run_prop";
  fs::remove_all(prop_dir);
  fs::path prop_cfg_path = write_temp(
      "amc_run_prop.cfg", "[system]\nN = 2\nn_points = 48\nlength = 10.0\nlambda_con = 0.3\n\n"
                          "[integrator]\ndt = 0.002\nt_final = 0.2\nrecord_every = 20\n\n"
                          "[initial]\nrestart = " +
                              (out_dir / "final_state.json").string() +
                              "\n\n[output]\ndirectory = " + prop_dir.string() + "\n");
  RunConfig prop_cfg = parse_config(prop_cfg_path.string());
  REQUIRE(run(prop_cfg, RunMode::propagate) == 0);
  REQUIRE(fs::exists(prop_dir / "observables.csv"));

  std::ifstream csv(prop_dir / "observables.csv");
  std::string line, header;
  double first_energy = 0.0, last_energy = 0.0;
  bool have_first = false;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    const double energy = std::stod(line.substr(line.find(',') + 1));
    if (!have_first) {
      first_energy = energy;
      have_first = true;
    }
    last_energy = energy;
  }
  CHECK(header == "t,energy,Na,Nm,norm_C,occ_a_1,occ_m_1");
  CHECK(have_first);
  CHECK(std::abs(last_energy - first_energy) < 1e-8);
}

TEST_CASE("reruns are byte-identical and density snapshots appear on request") {
  auto run_once = [](const fs::path& out_dir) {
    fs::remove_all(out_dir);
    fs::path cfg_path = write_temp(
        "amc_rerun.cfg", "[system]\nN = 2\nn_points = 48\nlength = 10.0\nlambda_con = 0.2\n\n"
                         "[integrator]\ndt = 0.002\nt_final = 0.1\nrecord_every = 10\n\n"
                         "[output]\ndirectory = " +
                             out_dir.string() + "\ndensity_every = 2\n");
    REQUIRE(run(parse_config(cfg_path.string()), RunMode::propagate) == 0);
  };
  fs::path dir = fs::temp_directory_path() / "amc_rerun";
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  run_once(dir);
  std::string observables = slurp(dir / "observables.csv");
  std::string density = slurp(dir / "density_a_000002.csv");
  CHECK(observables.size() > 0);
  CHECK(fs::exists(dir / "density_a_000000.csv"));
  CHECK(fs::exists(dir / "density_m_000000.csv"));
  run_once(dir);  // identical config, fresh run
  CHECK(observables == slurp(dir / "observables.csv"));
  CHECK(density == slurp(dir / "density_a_000002.csv"));
}

TEST_CASE("failure paths surface as typed errors") {
  System system = harmonic_system(2, 1, 1, InteractionSpec::contact(0, 0, 0, 0.2), 48, 10.0);
  PropagationState initial;
  initial.orbitals = trap_eigen_orbitals(system);
  initial.coefficients = all_atoms_ground_coefficients(system.basis);

  SUBCASE("relax reports residuals when it cannot converge") {
    IntegratorConfig cfg;
    cfg.dt = 0.002;
    cfg.max_steps = 3;
    try {
      relax(initial, cfg, system);
      FAIL("expected PropagationError");
    } catch (const PropagationError& err) {
      CHECK(std::string(err.what()).find("residual") != std::string::npos);
    }
  }
  SUBCASE("an unstable step size aborts with a diagnostic instead of NaNs") {
    IntegratorConfig cfg;
    cfg.dt = 0.8;  // far outside the explicit stability region
    cfg.t_final = 400.0;
    CHECK_THROWS_AS(propagate(initial, cfg, system, 1), PropagationError);
  }
}

TEST_CASE("aborted runs exit nonzero and leave a diagnostic file") {
  fs::path out_dir = fs::temp_directory_path() / "amc_run_abort";
  fs::remove_all(out_dir);
  // dt far outside the explicit stability region blows the state up
  fs::path cfg_path = write_temp(
      "amc_run_abort.cfg", "[system]\nN = 2\nn_points = 48\nlength = 10.0\nlambda_con = 0.2\n\n"
                           "[integrator]\ndt = 0.9\nt_final = 500\nrecord_every = 1000\n\n"
                           "[output]\ndirectory = " +
                               out_dir.string() + "\n");
  CHECK(run(parse_config(cfg_path.string()), RunMode::propagate) == 2);
  CHECK(fs::exists(out_dir / "diagnostic.txt"));

  fs::path relax_cfg = write_temp(
      "amc_run_abort2.cfg", "[system]\nN = 2\nn_points = 48\nlength = 10.0\nlambda_con = 0.2\n\n"
                            "[integrator]\ndt = 0.004\nt_final = 500\nmax_steps = 2\n\n"
                            "[output]\ndirectory = " +
                                out_dir.string() + "\n");
  CHECK(run(parse_config(relax_cfg.string()), RunMode::relax) == 2);
}

TEST_CASE("propagation from a pure-atom state with no conversion keeps Nm = 0") {
  fs::path out_dir = fs::temp_directory_path() / "amc_run_decoupled";
  fs::remove_all(out_dir);
  fs::path cfg_path = write_temp(
      "amc_run_dec.cfg", "[system]\nN = 4\nn_points = 48\nlength = 10.0\nlambda_a = 0.1\n"
                         "lambda_am = 0.05\n\n[integrator]\ndt = 0.002\nt_final = 0.4\n"
                         "record_every = 25\n\n[output]\ndirectory = " +
                             out_dir.string() + "\n");
  RunConfig cfg = parse_config(cfg_path.string());
  REQUIRE(run(cfg, RunMode::propagate) == 0);
  std::ifstream csv(out_dir / "observables.csv");
  std::string line;
  bool seen_header = false;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    // Nm is the fourth column
    size_t pos = 0;
    for (int c = 0; c < 3; ++c) pos = line.find(',', pos) + 1;
    const double Nm = std::stod(line.substr(pos));
    CHECK(std::abs(Nm) < 1e-10);
  }
}
