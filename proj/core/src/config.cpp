#include "eerd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "eerd/equilibrium.hpp"
#include "eerd/toml.hpp"
#include "eerd/verifier.hpp"

namespace eerd {

namespace {

struct SectionReader {
  const std::string origin;
  const std::string section;
  const toml::Table* table;  // null when the section is absent
  std::set<std::string> consumed;
  std::vector<std::string>* defaults;

  std::string where(const std::string& key) const {
    return origin + ": [" + section + "] " + key;
  }

  bool has(const std::string& key) const { return table && table->count(key); }

  const toml::Value& get(const std::string& key) {
    consumed.insert(key);
    return table->at(key);
  }

  double number(const std::string& key) {
    const auto& v = get(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.as_number();
  }
  double number_or(const std::string& key, double fallback) {
    if (!has(key)) {
      defaults->push_back(where(key) + " = " + std::to_string(fallback));
      return fallback;
    }
    return number(key);
  }
  double required_number(const std::string& key) {
    if (!has(key)) throw ConfigError(where(key) + ": required key missing");
    return number(key);
  }
  long long integer(const std::string& key) {
    const double v = number(key);
    if (v != std::floor(v)) throw ConfigError(where(key) + ": expected an integer");
    return static_cast<long long>(v);
  }
  long long integer_or(const std::string& key, long long fallback) {
    if (!has(key)) {
      defaults->push_back(where(key) + " = " + std::to_string(fallback));
      return fallback;
    }
    return integer(key);
  }
  std::string string_or(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
      defaults->push_back(where(key) + " = \"" + fallback + "\"");
      return fallback;
    }
    const auto& v = get(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.as_string();
  }
  std::string required_string(const std::string& key) {
    if (!has(key)) throw ConfigError(where(key) + ": required key missing");
    const auto& v = get(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.as_string();
  }

  void finish() {
    if (!table) return;
    for (const auto& [key, value] : *table)
      if (!consumed.count(key))
        throw ConfigError(where(key) + ": unknown key (line " +
                          std::to_string(value.line) + ")");
  }
};

}  // namespace

RunConfig parse_config_string(const std::string& text, const std::string& origin) {
  toml::Document doc;
  try {
    doc = toml::parse_string(text);
  } catch (const toml::ParseError& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  static const std::set<std::string> known_sections = {
      "model", "domain", "bounds", "simulation", "verify", "output"};
  for (const auto& [name, _] : doc.sections)
    if (!known_sections.count(name))
      throw ConfigError(origin + ": unknown section [" + name + "]");
  for (const char* required : {"model", "domain", "bounds"})
    if (!doc.has(required))
      throw ConfigError(origin + ": missing required section [" + std::string(required) +
                        "]");

  RunConfig cfg;
  auto reader = [&](const std::string& name) {
    return SectionReader{origin, name,
                         doc.has(name) ? &doc.sections.at(name) : nullptr,
                         {}, &cfg.defaults_applied};
  };

  {
    auto r = reader("model");
    const std::string sigma = r.string_or("sigma", "log");
    if (sigma == "log") {
      LogEntropy s;
      s.a = r.number_or("a", 1.0);
      if (r.has("alpha"))
        throw ConfigError(r.where("alpha") + ": not allowed for sigma = \"log\"");
      cfg.model.sigma = s;
    } else if (sigma == "power") {
      PowerEntropy s;
      s.a = r.number_or("a", 1.0);
      s.alpha = r.required_number("alpha");
      cfg.model.sigma = s;
    } else {
      throw ConfigError(r.where("sigma") + ": must be \"log\" or \"power\"");
    }
    cfg.model.weight.b = r.number_or("b", 1.0);
    cfg.model.weight.beta = r.number_or("beta", 0.25);
    const std::string rate = r.string_or("rate", "constant");
    if (rate == "constant") {
      ConstantRate rr;
      rr.F0 = r.number_or("F0", 1.0);
      for (const char* k : {"k1", "k2", "k3"})
        if (r.has(k))
          throw ConfigError(r.where(k) + ": not allowed for rate = \"constant\"");
      cfg.model.rate = rr;
    } else if (rate == "srh") {
      SrhRate rr;
      rr.k1 = r.required_number("k1");
      rr.k2 = r.number_or("k2", 0.0);
      rr.k3 = r.number_or("k3", 0.0);
      if (r.has("F0"))
        throw ConfigError(r.where("F0") + ": not allowed for rate = \"srh\"");
      cfg.model.rate = rr;
    } else {
      throw ConfigError(r.where("rate") + ": must be \"constant\" or \"srh\"");
    }
    r.finish();
    try {
      validate_model(cfg.model);
      hypothesis_constants(cfg.model, 1.0);
    } catch (const std::exception& e) {
      throw ConfigError(origin + ": [model] hypothesis violation: " + e.what());
    }
  }

  {
    auto r = reader("domain");
    cfg.L = r.required_number("L");
    if (!r.has("N")) throw ConfigError(r.where("N") + ": required key missing");
    cfg.N = static_cast<int>(r.integer("N"));
    cfg.E0 = r.required_number("E0");
    if (r.has("eps")) {
      const auto& v = r.get("eps");
      if (v.is_number()) {
        cfg.eps = {v.as_number()};
      } else if (v.is_array()) {
        cfg.eps = v.as_array();
      } else {
        throw ConfigError(r.where("eps") + ": expected a number or numeric array");
      }
    } else {
      cfg.eps = {1.0};
      cfg.defaults_applied.push_back(r.where("eps") + " = 1");
    }
    r.finish();
    if (!(cfg.L > 0.0)) throw ConfigError(r.where("L") + ": must be positive");
    if (cfg.N < 2) throw ConfigError(r.where("N") + ": need at least two cells");
    if (!(cfg.E0 > 0.0)) throw ConfigError(r.where("E0") + ": must be positive");
    if (cfg.eps.size() != 1 && cfg.eps.size() != static_cast<size_t>(cfg.N))
      throw ConfigError(r.where("eps") + ": length must be 1 or N");
    for (double e : cfg.eps)
      if (!(e > 0.0)) throw ConfigError(r.where("eps") + ": values must be positive");
  }

  {
    auto r = reader("bounds");
    cfg.bounds.c_theta = r.required_number("c_theta");
    cfg.bounds.C_u = r.required_number("C_u");
    r.finish();
    if (!(cfg.bounds.c_theta > 0.0))
      throw ConfigError(r.where("c_theta") + ": must be positive");
    if (!(cfg.bounds.C_u > 0.0)) throw ConfigError(r.where("C_u") + ": must be positive");
  }

  {
    auto r = reader("simulation");
    cfg.simulation.t_end = r.number_or("t_end", 1.0);
    cfg.simulation.dt_init = r.number_or("dt_init", 1e-3);
    cfg.simulation.cfl = r.number_or("cfl", 0.2);
    cfg.simulation.sample_every = static_cast<int>(r.integer_or("sample_every", 100));
    cfg.simulation.positivity_floor = r.number_or("positivity_floor", 0.0);
    cfg.initial = r.string_or("initial", "random");
    cfg.sim_amplitude = r.number_or("amplitude", 0.2);
    cfg.sim_seed = static_cast<std::uint64_t>(r.integer_or("seed", 1));
    cfg.csv_path = r.string_or("csv", "");
    r.finish();
    if (!(cfg.simulation.t_end > 0.0))
      throw ConfigError(r.where("t_end") + ": must be positive");
    if (!(cfg.simulation.cfl > 0.0 && cfg.simulation.cfl < 1.0))
      throw ConfigError(r.where("cfl") + ": must lie in (0, 1)");
    if (cfg.simulation.sample_every < 1)
      throw ConfigError(r.where("sample_every") + ": must be at least 1");
    if (cfg.initial != "random" && cfg.initial != "equilibrium" && cfg.initial != "csv")
      throw ConfigError(r.where("initial") +
                        ": must be \"random\", \"equilibrium\", or \"csv\"");
    if (cfg.initial == "csv" && cfg.csv_path.empty())
      throw ConfigError(r.where("csv") + ": required for initial = \"csv\"");
    if (!(cfg.sim_amplitude >= 0.0 && cfg.sim_amplitude < 1.0))
      throw ConfigError(r.where("amplitude") + ": must lie in [0, 1)");
  }

  {
    auto r = reader("verify");
    cfg.verify_states = static_cast<int>(r.integer_or("states", 1000));
    cfg.verify_seed = static_cast<std::uint64_t>(r.integer_or("seed", 1));
    cfg.verify_margin = r.number_or("margin", 1.1);
    cfg.verify_amplitude = r.number_or("amplitude", 0.2);
    r.finish();
    if (cfg.verify_states < 1)
      throw ConfigError(r.where("states") + ": must be at least 1");
    if (!(cfg.verify_margin >= 1.0))
      throw ConfigError(r.where("margin") + ": must be at least 1");
    if (!(cfg.verify_amplitude >= 0.0 && cfg.verify_amplitude < 1.0))
      throw ConfigError(r.where("amplitude") + ": must lie in [0, 1)");
  }

  {
    auto r = reader("output");
    cfg.out_dir = r.string_or("out_dir", "out");
    cfg.write_csv = cfg.write_json = cfg.write_svg = false;
    if (r.has("formats")) {
      const auto& v = r.get("formats");
      if (!v.is_string())
        throw ConfigError(r.where("formats") +
                          ": expected a string like \"csv,json,svg\"");
      std::stringstream ss(v.as_string());
      std::string fmt;
      while (std::getline(ss, fmt, ',')) {
        if (fmt == "csv") cfg.write_csv = true;
        else if (fmt == "json") cfg.write_json = true;
        else if (fmt == "svg") cfg.write_svg = true;
        else throw ConfigError(r.where("formats") + ": unknown format '" + fmt + "'");
      }
    } else {
      cfg.write_csv = cfg.write_json = cfg.write_svg = true;
      cfg.defaults_applied.push_back(r.where("formats") + " = \"csv,json,svg\"");
    }
    r.finish();
  }

  // Cross-section sanity: the equilibrium must sit inside the band.
  const double u_inf = cfg.E0 / cfg.L;
  if (u_inf > cfg.bounds.C_u)
    throw ConfigError(origin + ": E0/L exceeds the energy ceiling C_u");

  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str(), path);
}

Grid make_grid(const RunConfig& cfg) {
  if (cfg.eps.size() == 1) return Grid(cfg.L, cfg.N, cfg.eps[0]);
  return Grid(cfg.L, cfg.N, cfg.eps);
}

State read_state_csv(const std::string& path, const Grid& g) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open state CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  if (line != "x,n,p,u")
    throw ConfigError(path + ": expected header 'x,n,p,u', got '" + line + "'");
  State s;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string item;
    double vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, item, ','))
        throw ConfigError(path + ":" + std::to_string(row) + ": expected 4 columns");
      try {
        vals[c] = std::stod(item);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(row) + ": invalid number '" +
                          item + "'");
      }
    }
    s.n.push_back(vals[1]);
    s.p.push_back(vals[2]);
    s.u.push_back(vals[3]);
  }
  if (s.n.size() != static_cast<size_t>(g.cells()))
    throw ConfigError(path + ": row count " + std::to_string(s.n.size()) +
                      " does not match the grid (" + std::to_string(g.cells()) + ")");
  return s;
}

State make_initial_state(const RunConfig& cfg, const Grid& g) {
  const Equilibrium eq = compute_equilibrium(cfg.E0, 0.0, g, cfg.model);
  if (cfg.initial == "equilibrium") return equilibrium_state(eq, g);
  if (cfg.initial == "csv") return read_state_csv(cfg.csv_path, g);
  return random_admissible_state(cfg.sim_seed, g, cfg.model, cfg.bounds, eq,
                                 cfg.sim_amplitude);
}

}  // namespace eerd
