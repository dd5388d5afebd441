#include "eerd/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace eerd {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json model_json(const ModelFunctions& m) {
  ordered_json j;
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LogEntropy>) {
          j["sigma"] = "log";
          j["a"] = s.a;
        } else {
          j["sigma"] = "power";
          j["a"] = s.a;
          j["alpha"] = s.alpha;
        }
      },
      m.sigma);
  j["b"] = m.weight.b;
  j["beta"] = m.weight.beta;
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRate>) {
          j["rate"] = "constant";
          j["F0"] = r.F0;
        } else {
          j["rate"] = "srh";
          j["k1"] = r.k1;
          j["k2"] = r.k2;
          j["k3"] = r.k3;
        }
      },
      m.rate);
  return j;
}

ordered_json check_record_json(const CheckRecord& rec) {
  ordered_json j;
  j["name"] = rec.name;
  j["digest"] = rec.digest;
  j["lhs"] = rec.lhs;
  j["rhs"] = rec.rhs;
  j["margin"] = rec.margin;
  j["pass"] = rec.pass;
  return j;
}

bool has_false_flag(const ordered_json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if ((key == "pass" || key == "all_pass") && value.is_boolean() &&
          !value.get<bool>())
        return true;
      if (has_false_flag(value)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (has_false_flag(v)) return true;
  }
  return false;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json(const ModelHypothesisReport& report) {
  ordered_json j;
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["constant"] = c.constant;
    e["worst_ratio"] = c.worst_ratio;
    e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  j["all_pass"] = report.all_pass;
  return j.dump(2) + "\n";
}

std::string to_json(const Equilibrium& eq, const EquilibriumReport& report) {
  ordered_json j;
  j["u_inf"] = eq.u_inf;
  j["n_inf"] = eq.n_inf;
  j["p_inf"] = eq.p_inf;
  j["theta_inf"] = eq.theta_inf;
  j["psi_inf"] = eq.psi_inf;
  j["eta"] = eq.eta;
  j["kappa"] = eq.kappa;
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["tol"] = c.tol;
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["all_pass"] = report.all_pass;
  return j.dump(2) + "\n";
}

std::string constants_json(const HypothesisConstants& hc, const EEPConstants& eep) {
  ordered_json j;
  auto put = [&j](const char* name, double value, const char* formula) {
    ordered_json e;
    e["value"] = value;
    e["formula"] = formula;
    j[name] = e;
  };
  put("g_w", hc.g_w, "g_w = beta/(1-beta); (w')^2 <= -g_w w'' w");
  put("G_w", hc.G_w, "G_w = (1-beta)/beta; -w'' w <= G_w (w')^2");
  put("G_sigma", hc.G_sigma,
      "-sigma'' w <= G_sigma sigma' w' on [c_u, inf); (1+c_u)/(beta c_u) for log, "
      "(1-alpha)(1+c_u)/(beta c_u) for power");
  put("c_theta", hc.c_theta, "temperature floor (input)");
  put("C_u", hc.C_u, "energy ceiling (input)");
  put("c_u", hc.c_u, "c_u = (sigma')^{-1}(1/c_theta)");
  put("C_theta", hc.C_theta, "C_theta = 1/sigma'(C_u)");
  put("N_max", hc.N_max, "N_max = w(C_u)/(c_theta w'(C_u))");
  put("c_F", hc.c_F,
      "c_F = F0 (constant rate) or 1/(k1 + (k2+k3) N_max) (SRH rate)");
  put("C_P", hc.C_P, "C_P = (L/pi)^2, interval Poincare constant");
  put("eps_min", hc.eps_min, "permittivity floor");
  put("eps_max", hc.eps_max, "permittivity ceiling");
  put("K_sigma", eep.K_sigma, "K_sigma = sup_{[c_u,C_u]}(-sigma'')/2");
  put("K_w", eep.K_w, "K_w = sup_{[c_u,C_u]}(-w'')/2");
  put("k_sigma", eep.k_sigma, "k_sigma = inf_{(0,C_u]}(-sigma'')/2");
  put("k_w", eep.k_w, "k_w = inf_{[0,C_u]}(-w'')/2");
  put("C1", eep.C1,
      "C1 = max(2/w(0) + C_P/(theta_inf eps_min), 2(2 w'(0)^2/w(0) + K_w) + K_sigma)");
  put("C2_tilde", eep.C2_tilde,
      "C2_tilde = (max(1, sigma'(C_u)/(4 eps_max c_F)) + 2 max(G_sigma,G_w)^2) "
      "* (2 eps_max/(1-2 g_w)) * max(1/sigma'(C_u), (C_P/eps_min)"
      "(C_P w(C_u)^2/(4 eps_min c_theta w'(C_u)^2) - 1/sigma''(C_u)))");
  put("C2", eep.C2, "C2 = (2 + max(4 w'(0)^2 - 1, 0)) C2_tilde");
  put("C3", eep.C3,
      "C3 = max(2|Omega|(2 w(C_u)/(3 c_theta w'(C_u)) + 4 w(C_u)/3 + "
      "w'(0)^2/(2 k_w)), |Omega|/k_sigma, 2(1+C_P) theta_inf/eps_min) H0");
  put("rate", eep.rate, "rate = 1/(C1 C2), decay exponent of the relative entropy");
  return j.dump(2) + "\n";
}

std::string battery_json(const BatteryResult& battery, const BatteryConfig& cfg) {
  ordered_json j;
  j["states"] = cfg.states;
  j["seed"] = cfg.seed;
  j["margin"] = cfg.margin;
  j["amplitude"] = cfg.amplitude;
  j["states_checked"] = battery.states_checked;
  j["violations"] = battery.violations;

  // Per-check aggregates keep the report compact; individual entries are
  // reproducible from (seed, config).
  struct Agg {
    int count = 0;
    int failures = 0;
    double worst_ratio = 0.0;
  };
  std::map<std::string, Agg> aggregates;
  for (const auto& e : battery.report.entries) {
    auto& a = aggregates[e.name];
    ++a.count;
    if (!e.pass) ++a.failures;
    if (e.rhs > 0.0) a.worst_ratio = std::max(a.worst_ratio, e.lhs / e.rhs);
  }
  j["checks"] = ordered_json::object();
  for (const auto& [name, a] : aggregates) {
    ordered_json e;
    e["count"] = a.count;
    e["failures"] = a.failures;
    e["worst_lhs_over_rhs"] = a.worst_ratio;
    e["pass"] = (a.failures == 0);
    j["checks"][name] = e;
  }
  j["violating_states"] = ordered_json::array();
  for (const auto& s : battery.violating_states)
    j["violating_states"].push_back(ordered_json::parse(s));
  j["all_pass"] = (battery.violations == 0);
  return j.dump(2) + "\n";
}

std::string config_json(const RunConfig& cfg) {
  ordered_json j;
  j["model"] = model_json(cfg.model);
  ordered_json domain;
  domain["L"] = cfg.L;
  domain["N"] = cfg.N;
  domain["E0"] = cfg.E0;
  domain["eps"] = cfg.eps;
  j["domain"] = domain;
  ordered_json bounds;
  bounds["c_theta"] = cfg.bounds.c_theta;
  bounds["C_u"] = cfg.bounds.C_u;
  j["bounds"] = bounds;
  ordered_json sim;
  sim["t_end"] = cfg.simulation.t_end;
  sim["dt_init"] = cfg.simulation.dt_init;
  sim["cfl"] = cfg.simulation.cfl;
  sim["sample_every"] = cfg.simulation.sample_every;
  sim["positivity_floor"] = cfg.simulation.positivity_floor;
  sim["initial"] = cfg.initial;
  sim["amplitude"] = cfg.sim_amplitude;
  sim["seed"] = cfg.sim_seed;
  sim["csv"] = cfg.csv_path;
  j["simulation"] = sim;
  ordered_json verify;
  verify["states"] = cfg.verify_states;
  verify["seed"] = cfg.verify_seed;
  verify["margin"] = cfg.verify_margin;
  verify["amplitude"] = cfg.verify_amplitude;
  j["verify"] = verify;
  ordered_json output;
  output["out_dir"] = cfg.out_dir;
  std::string formats;
  if (cfg.write_csv) formats += "csv";
  if (cfg.write_json) formats += formats.empty() ? "json" : ",json";
  if (cfg.write_svg) formats += formats.empty() ? "svg" : ",svg";
  output["formats"] = formats;
  j["output"] = output;
  j["defaults_applied"] = cfg.defaults_applied;
  return j.dump(2) + "\n";
}

SimulationSummary summarize(const Trajectory& traj) {
  SimulationSummary s{};
  const auto& samples = traj.samples;
  s.t_end = samples.empty() ? 0.0 : samples.back().t;
  s.H0 = traj.H0;
  s.predicted_rate = traj.predicted_rate;
  s.steps = traj.steps;
  s.rejections = traj.rejections;

  // The asymptotic slope comes from the second half of the run;
  // transients from non-modal initial data decay faster.
  s.fitted_rate = fitted_decay_rate(traj, 0.5 * s.t_end);

  s.envelope_satisfied = true;
  s.entropy_monotone = true;
  s.max_charge_drift = 0.0;
  s.max_energy_drift_rel = 0.0;
  if (!samples.empty()) {
    const double Q0 = samples.front().Q;
    const double E0 = samples.front().E;
    double prev_S = samples.front().S;
    for (const auto& smp : samples) {
      if (smp.H > traj.H0 * std::exp(-traj.predicted_rate * smp.t) * (1.0 + 1e-12))
        s.envelope_satisfied = false;
      if (smp.S < prev_S - 1e-8 * (1.0 + std::abs(smp.S))) s.entropy_monotone = false;
      prev_S = smp.S;
      s.max_charge_drift = std::max(s.max_charge_drift, std::abs(smp.Q - Q0));
      s.max_energy_drift_rel =
          std::max(s.max_energy_drift_rel, std::abs(smp.E - E0) / std::abs(E0));
    }
  }
  return s;
}

std::string to_json(const SimulationSummary& s) {
  ordered_json j;
  j["t_end"] = s.t_end;
  j["H0"] = s.H0;
  if (std::isnan(s.fitted_rate)) {
    j["fitted_rate"] = nullptr;
    j["fitted_rate_note"] = "undefined: relative entropy vanishes along the run";
  } else {
    j["fitted_rate"] = s.fitted_rate;
  }
  j["predicted_rate"] = s.predicted_rate;
  j["envelope_satisfied"] = s.envelope_satisfied;
  j["entropy_monotone"] = s.entropy_monotone;
  j["max_charge_drift"] = s.max_charge_drift;
  j["max_energy_drift_rel"] = s.max_energy_drift_rel;
  j["steps"] = s.steps;
  j["rejections"] = s.rejections;
  j["pass"] = s.envelope_satisfied && s.entropy_monotone;
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,S,E,Q,H,P,l1_n,l1_p,l1_u,h1_psi,dt\n";
  for (const auto& s : traj.samples) {
    out += fmt17(s.t);
    for (double v : {s.S, s.E, s.Q, s.H, s.P, s.l1_n, s.l1_p, s.l1_u, s.h1_psi, s.dt}) {
      out += ',';
      out += fmt17(v);
    }
    out += '\n';
  }
  return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
  Trajectory traj;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "t,S,E,Q,H,P,l1_n,l1_p,l1_u,h1_psi,dt")
    throw std::runtime_error("trajectory CSV: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string item;
    double v[11];
    for (int c = 0; c < 11; ++c) {
      if (!std::getline(ss, item, ','))
        throw std::runtime_error("trajectory CSV: short row");
      v[c] = std::stod(item);
    }
    traj.samples.push_back(
        {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]});
  }
  if (!traj.samples.empty()) traj.H0 = traj.samples.front().H;
  return traj;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string aggregate_report(const std::string& dir) {
  ordered_json j;
  j["artifacts"] = ordered_json::object();
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".json") continue;
    if (entry.path().filename() == "report.json") continue;
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  bool all_pass = true;
  for (const auto& name : names) {
    const auto content =
        ordered_json::parse(read_text_file((std::filesystem::path(dir) / name).string()));
    if (has_false_flag(content)) all_pass = false;
    j["artifacts"][name] = content;
  }
  j["all_pass"] = all_pass;
  return j.dump(2) + "\n";
}

}  // namespace eerd
