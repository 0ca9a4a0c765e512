#include "amc/io.hpp"

#include <cstdio>
#include <fstream>

namespace amc {

namespace {

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

nlohmann::json grid_function_to_json(const GridFunction& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < f.size(); ++i) arr.push_back(complex_to_json(f[i]));
  return arr;
}

GridFunction grid_function_from_json(const nlohmann::json& arr) {
  GridFunction f(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) f[static_cast<int>(i)] = complex_from_json(arr[i]);
  return f;
}

}  // namespace

nlohmann::json state_to_json(const System& system, const PropagationState& state,
                             double epsilon) {
  nlohmann::json j;
  j["N"] = system.N();
  j["M"] = system.M();
  j["M_prime"] = system.M_prime();
  j["grid"] = {{"n_points", system.grid.n_points}, {"length", system.grid.length}};
  j["time"] = state.time;
  j["epsilon"] = epsilon;
  nlohmann::json atomic = nlohmann::json::array();
  for (const auto& f : state.orbitals.atomic) atomic.push_back(grid_function_to_json(f));
  nlohmann::json molecular = nlohmann::json::array();
  for (const auto& f : state.orbitals.molecular) molecular.push_back(grid_function_to_json(f));
  j["orbitals_atomic"] = std::move(atomic);
  j["orbitals_molecular"] = std::move(molecular);
  j["coefficients"] = grid_function_to_json(state.coefficients);
  return j;
}

PropagationState load_state_json(const std::string& path, const System& system) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open state file '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (j.at("N").get<int>() != system.N() || j.at("M").get<int>() != system.M() ||
      j.at("M_prime").get<int>() != system.M_prime() ||
      j.at("grid").at("n_points").get<int>() != system.grid.n_points)
    throw PreconditionError("state file '" + path + "' does not match the configured system");
  PropagationState state;
  state.time = j.value("time", 0.0);
  for (const auto& f : j.at("orbitals_atomic"))
    state.orbitals.atomic.push_back(grid_function_from_json(f));
  for (const auto& f : j.at("orbitals_molecular"))
    state.orbitals.molecular.push_back(grid_function_from_json(f));
  state.coefficients = grid_function_from_json(j.at("coefficients"));
  return state;
}

nlohmann::json rdms_to_json(const RdmBundle& rdms) {
  nlohmann::json j;
  auto matrix = [&](const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k < m.rows(); ++k) {
      nlohmann::json row = nlohmann::json::array();
      for (int q = 0; q < m.cols(); ++q) row.push_back(complex_to_json(m(k, q)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto rank4 = [&](const Tensor4& t) {
    nlohmann::json a0 = nlohmann::json::array();
    for (int i = 0; i < t.dim0(); ++i) {
      nlohmann::json a1 = nlohmann::json::array();
      for (int jj = 0; jj < t.dim1(); ++jj) {
        nlohmann::json a2 = nlohmann::json::array();
        for (int k = 0; k < t.dim2(); ++k) {
          nlohmann::json a3 = nlohmann::json::array();
          for (int l = 0; l < t.dim3(); ++l) a3.push_back(complex_to_json(t(i, jj, k, l)));
          a2.push_back(std::move(a3));
        }
        a1.push_back(std::move(a2));
      }
      a0.push_back(std::move(a1));
    }
    return a0;
  };
  auto rank3 = [&](const Tensor3& t) {
    nlohmann::json a0 = nlohmann::json::array();
    for (int i = 0; i < t.dim0(); ++i) {
      nlohmann::json a1 = nlohmann::json::array();
      for (int jj = 0; jj < t.dim1(); ++jj) {
        nlohmann::json a2 = nlohmann::json::array();
        for (int k = 0; k < t.dim2(); ++k) a2.push_back(complex_to_json(t(i, jj, k)));
        a1.push_back(std::move(a2));
      }
      a0.push_back(std::move(a1));
    }
    return a0;
  };
  j["rho_a"] = matrix(rdms.rho_a);
  j["rho_m"] = matrix(rdms.rho_m);
  j["rho_a2"] = rank4(rdms.rho_a2);
  j["rho_m2"] = rank4(rdms.rho_m2);
  j["rho_am"] = rank4(rdms.rho_am);
  j["rho_conv"] = rank3(rdms.rho_conv);
  return j;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace amc
