// Copyright (c) 2026 the edkp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edkp/suites.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edkp/hodograph.hpp"
#include "edkp/identities.hpp"

namespace edkp {

namespace {

using nlohmann::ordered_json;

double tol_or(const RunConfig& cfg, const std::string& suite, double dflt) {
  auto it = cfg.tolerances.find(suite);
  if (it == cfg.tolerances.end()) return dflt;
  if (!(it->second > 0.0)) throw ConfigError("tolerance override must be positive");
  return it->second;
}

// Cached per-run field build so suites sharing a field don't refill it.
struct FieldCache {
  std::string key;
  std::optional<HydroField> field;
  const HydroField& get(const Scenario& s) {
    const std::string k = scenario_to_json(s);
    if (!field || key != k) {
      field = integrate_grid(s);
      key = k;
    }
    return *field;
  }
};

std::vector<ResidualReport> suite_identities(const RunConfig& cfg) {
  const double tol = tol_or(cfg, "identities", 1e-10);
  std::vector<double> taus = {0.8, 1.0, 1.5};
  if (cfg.tau_im) taus = {*cfg.tau_im};
  std::vector<ResidualReport> out;
  for (double ti : taus) {
    ModularParam m(Complex{0.0, ti});
    auto rep = identity_suite(m, 100, cfg.seed, tol);
    out.insert(out.end(), rep.begin(), rep.end());
  }
  return out;
}

std::vector<ResidualReport> suite_gt(const RunConfig& cfg,
                                     const HydroField& field) {
  std::vector<ResidualReport> out = check_gt_fd(field, tol_or(cfg, "gt", 1e-5));
  // compatibility function with substituted closed-form data at the base
  GTState base;
  base.tau = cfg.scenario.tau0;
  base.xi = cfg.scenario.xi0;
  base.v = cfg.scenario.v0;
  base.lambda.assign(cfg.scenario.N, 0.0);
  out.push_back(check_fjk(base, 50, cfg.seed, 1e-9));
  out.push_back(check_path_independence(cfg.scenario, 1e-7));
  out.push_back(check_f201(field, 0, 1, tol_or(cfg, "gt", 1e-5)));
  auto health = check_field_health(field);
  out.insert(out.end(), health.begin(), health.end());
  out.push_back(check_symmetry_invariant(field, tol_or(cfg, "gt", 1e-5)));
  return out;
}

std::vector<ResidualReport> suite_gamma(const RunConfig& cfg,
                                        const HydroField& field) {
  return check_gamma_routes(field, tol_or(cfg, "gamma", 1e-9), 1e-8);
}

std::vector<ResidualReport> suite_metric(const RunConfig& cfg) {
  // the metric suite needs three axes for the triple-index relations
  Scenario sc3 =
      cfg.scenario.N >= 3 ? cfg.scenario : Scenario::default_n3();
  HydroField field = integrate_grid(sc3);
  const double tol = tol_or(cfg, "metric", 1e-5);
  std::vector<ResidualReport> out;
  out.push_back(check_gamma_log(field, tol));
  out.push_back(check_egorov(field, tol));
  out.push_back(check_potential(field, tol));
  auto curv = check_curvature(field, tol, 1e-9);
  out.insert(out.end(), curv.begin(), curv.end());
  return out;
}

TimePoint center_times(const Scenario& sc) {
  const double ext = sc.grid_spacing * (sc.grid_nodes - 1);
  std::vector<double> lam_star(sc.N, ext / 2.0);
  return manufactured_times(sc, lam_star, 0.01, 6);
}

std::vector<ResidualReport> suite_hodograph(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  TimePoint tp = center_times(sc);
  std::vector<ResidualReport> out;
  // manufactured recovery from a perturbed seed
  std::vector<double> seed = tp.lambda;
  for (int i = 0; i < sc.N; ++i)
    seed[i] += (i % 2 == 0 ? 1.0 : -1.0) * sc.grid_spacing;
  TimePoint sol = hodograph_solve(sc, tp.t0, tp.t, seed);
  ResidualAccumulator rec, moff;
  for (int i = 0; i < sc.N; ++i)
    rec.add(std::abs(sol.lambda[i] - tp.lambda[i]));
  moff.add(sol.max_offdiag_m);
  out.push_back(rec.finish("manufactured_recovery", sc.tau0.imag(),
                           tol_or(cfg, "hodograph", 1e-9)));
  out.push_back(moff.finish("offdiag_m", sc.tau0.imag(), 1e-8));
  out.push_back(check_hydro_evolution(sc, sol, 2, 1e-6));
  return out;
}

std::vector<ResidualReport> suite_dkp(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  TimePoint tp = center_times(sc);
  TimePoint sol = hodograph_solve(sc, tp.t0, tp.t, tp.lambda);
  // z-sample roles: grad at the largest |z| samples to keep the
  // truncation of grad(z) below tolerance.
  return check_dkp(sc, sol, 5, 0, 5, 6, 2, 6, 5e-4,
                   tol_or(cfg, "dkp", 1e-5));
}

std::vector<ResidualReport> suite_conserved(const RunConfig& cfg,
                                            const HydroField& field) {
  return check_conserved(field, 6, tol_or(cfg, "conserved", 1e-5));
}

std::vector<ResidualReport> suite_curve(const RunConfig& cfg) {
  GTState base;
  base.tau = cfg.scenario.tau0;
  base.xi = cfg.scenario.xi0;
  base.v = cfg.scenario.v0;
  base.lambda.assign(cfg.scenario.N, 0.0);
  ULaurent u;
  u.coeffs = cfg.scenario.u0_coeffs;
  std::vector<ResidualReport> out;
  out.push_back(
      check_curve(u, base, 100, cfg.seed, tol_or(cfg, "curve", 1e-10)));
  return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "identities", "gt", "gamma", "metric",
      "hodograph",  "dkp", "conserved", "curve"};
  return names;
}

namespace {

std::vector<ResidualReport> run_suite_impl(const std::string& name,
                                           const RunConfig& cfg,
                                           FieldCache& cache) {
  if (name == "identities") return suite_identities(cfg);
  if (name == "gt") return suite_gt(cfg, cache.get(cfg.scenario));
  if (name == "gamma") return suite_gamma(cfg, cache.get(cfg.scenario));
  if (name == "metric") return suite_metric(cfg);
  if (name == "hodograph") return suite_hodograph(cfg);
  if (name == "dkp") return suite_dkp(cfg);
  if (name == "conserved") return suite_conserved(cfg, cache.get(cfg.scenario));
  if (name == "curve") return suite_curve(cfg);
  throw ConfigError("unknown suite: " + name);
}

}  // namespace

std::vector<ResidualReport> run_suite(const std::string& name,
                                      const RunConfig& cfg) {
  FieldCache cache;
  return run_suite_impl(name, cfg, cache);
}

RunResult run(const RunConfig& cfg) {
  if (cfg.suites.empty()) throw ConfigError("no suites requested");
  // validate names before doing any work
  std::vector<std::string> wanted = cfg.suites;
  if (wanted.size() == 1 && wanted[0] == "all") wanted = known_suites();
  for (const auto& s : wanted)
    if (std::find(known_suites().begin(), known_suites().end(), s) ==
        known_suites().end())
      throw ConfigError("unknown suite: " + s);

  RunResult result;
  FieldCache cache;
  for (const auto& name : known_suites()) {
    if (std::find(wanted.begin(), wanted.end(), name) == wanted.end())
      continue;
    auto reports = run_suite_impl(name, cfg, cache);
    for (const auto& r : reports) result.all_pass = result.all_pass && r.pass;
    result.by_suite[name] = std::move(reports);
  }

  if (!cfg.output_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.output_dir);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream os(fs::path(cfg.output_dir) / name, std::ios::binary);
      if (!os) throw IoError("cannot write " + name);
      os << text;
    };
    ordered_json summary;
    summary["scenario"] = cfg.scenario.name;
    summary["seed"] = cfg.seed;
    summary["pass"] = result.all_pass;
    ordered_json suites_json = ordered_json::object();
    for (const auto& [name, reports] : result.by_suite) {
      bool pass = true;
      for (const auto& r : reports) pass = pass && r.pass;
      suites_json[name] = pass;
      if (cfg.format == "json" || cfg.format == "both")
        write(name + ".json", reports_to_json(reports));
      if (cfg.format == "csv" || cfg.format == "both")
        write(name + ".csv", reports_to_csv(reports));
    }
    summary["suites"] = suites_json;
    write("summary.json", summary.dump(2) + "\n");
  }
  return result;
}

namespace {

Driving driving_from_json(const ordered_json& j) {
  Driving d;
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant")
    d.kind = Driving::Kind::Constant;
  else if (kind == "linear")
    d.kind = Driving::Kind::Linear;
  else if (kind == "sinusoid")
    d.kind = Driving::Kind::Sinusoid;
  else
    throw ConfigError("unknown driving kind: " + kind);
  d.a = j.value("a", 0.0);
  d.b = j.value("b", 0.0);
  d.c = j.value("c", 0.0);
  return d;
}

ordered_json driving_to_json(const Driving& d) {
  const char* kind = d.kind == Driving::Kind::Constant  ? "constant"
                     : d.kind == Driving::Kind::Linear ? "linear"
                                                        : "sinusoid";
  return {{"kind", kind}, {"a", d.a}, {"b", d.b}, {"c", d.c}};
}

Complex complex_from_json(const ordered_json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return Complex{j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex values are numbers or [re, im] pairs");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario JSON parse error: ") + e.what());
  }
  Scenario sc;
  sc.name = j.value("name", "custom");
  sc.N = j.at("N").get<int>();
  if (sc.N < 1) throw ConfigError("N must be positive");
  sc.tau0 = Complex{0.0, j.at("tau0").get<double>()};
  sc.xi0 = j.at("xi0").get<std::vector<double>>();
  sc.v0.clear();
  for (double x : j.at("v0").get<std::vector<double>>())
    sc.v0.push_back(Complex{0.0, x});
  sc.d.assign(sc.N, Driving{});
  sc.w.assign(sc.N, Driving{});
  if (j.contains("driving")) {
    const auto& dj = j["driving"];
    if (dj.contains("d")) {
      int i = 0;
      for (const auto& e : dj["d"]) sc.d.at(i++) = driving_from_json(e);
    }
    if (dj.contains("w")) {
      int i = 0;
      for (const auto& e : dj["w"]) sc.w.at(i++) = driving_from_json(e);
    }
  }
  sc.u0_coeffs = j.at("u0_coeffs").get<std::vector<double>>();
  sc.z_samples.clear();
  for (const auto& e : j.at("z_samples")) sc.z_samples.push_back(complex_from_json(e));
  if (j.contains("grid")) {
    sc.grid_spacing = j["grid"].value("spacing", 0.02);
    sc.grid_nodes = j["grid"].value("extent", 5);
  }
  sc.step = j.value("step", 1e-3);
  sc.jet_order = j.value("jet_order", 3);
  sc.z_min = j.value("z_min", 3.0);
  if (j.contains("r_driving")) sc.r_driving = driving_from_json(j["r_driving"]);
  if (j.contains("r0")) sc.r0 = j["r0"].get<std::vector<double>>();
  else sc.r0.assign(sc.N, 0.0);
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["N"] = sc.N;
  j["tau0"] = sc.tau0.imag();
  j["xi0"] = sc.xi0;
  std::vector<double> v0;
  for (auto v : sc.v0) v0.push_back(v.imag());
  j["v0"] = v0;
  ordered_json dd = ordered_json::array(), ww = ordered_json::array();
  for (const auto& d : sc.d) dd.push_back(driving_to_json(d));
  for (const auto& w : sc.w) ww.push_back(driving_to_json(w));
  j["driving"] = {{"d", dd}, {"w", ww}};
  j["u0_coeffs"] = sc.u0_coeffs;
  ordered_json zs = ordered_json::array();
  for (auto z : sc.z_samples) {
    if (z.imag() == 0.0)
      zs.push_back(z.real());
    else
      zs.push_back(ordered_json::array({z.real(), z.imag()}));
  }
  j["z_samples"] = zs;
  j["grid"] = {{"spacing", sc.grid_spacing}, {"extent", sc.grid_nodes}};
  j["step"] = sc.step;
  j["jet_order"] = sc.jet_order;
  j["z_min"] = sc.z_min;
  j["r_driving"] = driving_to_json(sc.r_driving);
  j["r0"] = sc.r0;
  return j.dump(2) + "\n";
}

std::string field_to_json(const HydroField& field) {
  ordered_json j;
  j["scenario"] = field.scenario.name;
  j["shape"] = field.shape;
  j["max_reality_drift"] = field.max_reality_drift;
  j["max_series_mismatch"] = field.max_series_mismatch;
  j["tail_health"] = field.tail_health;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : field.nodes) {
    ordered_json nj;
    nj["lambda"] = n.state.lambda;
    nj["tau_im"] = n.state.tau.imag();
    nj["xi"] = n.state.xi;
    std::vector<double> vim;
    for (auto v : n.state.v) vim.push_back(v.imag());
    nj["v"] = vim;
    nj["coeffs"] = n.u.coeffs;
    ordered_json us = ordered_json::array();
    for (const auto& [z, u] : n.u.samples)
      us.push_back(ordered_json::array({u.real(), u.imag()}));
    nj["u_samples"] = us;
    if (!n.r.empty()) nj["r"] = n.r;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

std::string field_to_csv(const HydroField& field) {
  std::ostringstream os;
  os.precision(17);
  const int N = field.scenario.N;
  os << "node";
  for (int i = 0; i < N; ++i) os << ",lambda" << i + 1;
  os << ",tau_im";
  for (int i = 0; i < N; ++i) os << ",xi" << i + 1;
  for (int i = 0; i < N; ++i) os << ",v" << i + 1 << "_im";
  for (size_t k = 0; k < field.scenario.u0_coeffs.size(); ++k)
    os << ",c" << k + 1;
  for (int i = 0; i < N; ++i) os << ",r" << i + 1;
  os << '\n';
  for (size_t f = 0; f < field.nodes.size(); ++f) {
    const auto& n = field.nodes[f];
    os << f;
    for (int i = 0; i < N; ++i) os << ',' << n.state.lambda[i];
    os << ',' << n.state.tau.imag();
    for (int i = 0; i < N; ++i) os << ',' << n.state.xi[i];
    for (int i = 0; i < N; ++i) os << ',' << n.state.v[i].imag();
    for (double c : n.u.coeffs) os << ',' << c;
    for (int i = 0; i < N && !n.r.empty(); ++i) os << ',' << n.r[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace edkp
