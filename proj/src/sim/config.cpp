#include "gwnk/sim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gwnk::sim {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(what + ": expected a number, got '" + text + "'");
  return v;
}

std::size_t to_size(const std::string& text, const std::string& what) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(what + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& text, const std::string& what) {
  const auto t = lower(text);
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw ConfigError(what + ": expected true/false, got '" + text + "'");
}

class Reader {
 public:
  Reader(std::vector<Entry> entries, std::string origin) : entries_(std::move(entries)), origin_(std::move(origin)) {}

  [[nodiscard]] bool has(const std::string& sec, const std::string& key) const { return lookup(sec, key) != nullptr; }

  std::optional<std::string> text(const std::string& sec, const std::string& key) {
    Entry* e = lookup(sec, key);
    if (e == nullptr) return std::nullopt;
    e->used = true;
    return e->value;
  }

  void num(const std::string& sec, const std::string& key, double& out, bool required) {
    if (auto v = fetch(sec, key, required)) out = to_double(*v, where(sec, key));
  }
  void count(const std::string& sec, const std::string& key, std::size_t& out, bool required) {
    if (auto v = fetch(sec, key, required)) out = to_size(*v, where(sec, key));
  }
  void flag(const std::string& sec, const std::string& key, bool& out) {
    if (auto v = fetch(sec, key, false)) out = to_bool(*v, where(sec, key));
  }

  std::vector<const Entry*> all(const std::string& sec, const std::string& key) {
    std::vector<const Entry*> out;
    for (auto& e : entries_) {
      if (e.section == sec && e.key == key) {
        e.used = true;
        out.push_back(&e);
      }
    }
    return out;
  }

  void reject_unused() const {
    for (const auto& e : entries_) {
      if (!e.used) {
        throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "' in section [" +
                          e.section + "]");
      }
    }
  }

  [[nodiscard]] std::string where(const std::string& sec, const std::string& key) const {
    const Entry* e = lookup(sec, key);
    const std::string loc = e ? origin_ + ":" + std::to_string(e->line) : origin_;
    return loc + ": [" + sec + "] " + key;
  }

 private:
  std::optional<std::string> fetch(const std::string& sec, const std::string& key, bool required) {
    auto v = text(sec, key);
    if (!v && required) throw ConfigError(origin_ + ": missing required key [" + sec + "] " + key);
    return v;
  }

  Entry* lookup(const std::string& sec, const std::string& key) const {
    for (auto& e : entries_) {
      if (e.section == sec && e.key == key) return const_cast<Entry*>(&e);
    }
    return nullptr;
  }

  std::vector<Entry> entries_;
  std::string origin_;
};

std::vector<Entry> tokenize(const std::string& text, const std::string& origin) {
  std::vector<Entry> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string at = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(at + ": malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(at + ": expected key = value");
    if (section.empty()) throw ConfigError(at + ": key outside of any [section]");
    Entry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (e.key.empty()) throw ConfigError(at + ": empty key");
    if (e.key != "well" && !seen.insert({e.section, e.key}).second) {
      throw ConfigError(at + ": duplicate key '" + e.key + "' in [" + e.section + "]");
    }
    out.push_back(std::move(e));
  }
  if (out.empty()) throw ConfigError(origin + ": no settings found");
  return out;
}

SideCondition parse_side(const std::string& text, const std::string& what) {
  const auto t = lower(trim(text));
  if (t == "noflow") return {};
  const auto colon = t.find(':');
  if (colon != std::string::npos) {
    const auto kind = t.substr(0, colon);
    const double v = to_double(trim(t.substr(colon + 1)), what);
    if (kind == "fixed") return {SideCondition::Kind::Fixed, v};
    if (kind == "flux") return {SideCondition::Kind::Flux, v};
  }
  throw ConfigError(what + ": expected noflow, fixed:<head> or flux:<rate>, got '" + text + "'");
}

void read_layer(Reader& r, const std::string& sec, models::LayerParams& p, bool required) {
  r.num(sec, "K", p.K, required);
  r.num(sec, "S_y", p.S_y, required);
  r.num(sec, "S_o", p.S_o, required);
  r.num(sec, "z", p.z, required);
  r.num(sec, "Z", p.Z, required);
}

void read_fd(Reader& r, FdSetup& s, bool required) {
  r.count("grid", "nx", s.nx, required);
  r.count("grid", "ny", s.ny, required);
  r.num("grid", "dx", s.dx, required);
  r.num("grid", "dy", s.dy, required);
  r.num("grid", "h0", s.h0, required);
  for (auto [name, side] : {std::pair{"left", &s.left}, std::pair{"right", &s.right},
                            std::pair{"bottom", &s.bottom}, std::pair{"top", &s.top}}) {
    if (auto v = r.text("grid", name)) {
      *side = parse_side(*v, r.where("grid", name));
    } else if (required) {
      throw ConfigError("missing required key [grid] " + std::string(name));
    }
  }
  read_layer(r, "layer", s.layer, required);
}

void read_fe(Reader& r, FeSetup& s, bool required) {
  r.count("mesh", "cells_x", s.cells_x, required);
  r.count("mesh", "cells_y", s.cells_y, required);
  r.num("mesh", "dx", s.dx, required);
  r.num("mesh", "dy", s.dy, required);
  r.num("mesh", "h0_top", s.h0_top, required);
  r.num("mesh", "h0_bottom", s.h0_bottom, required);
  read_layer(r, "top", s.top, required);
  read_layer(r, "bottom", s.bottom, required);
  r.num("aquitard", "K_v", s.aquitard.K_v, required);
  r.num("aquitard", "D", s.aquitard.D, required);
  const auto wells = r.all("pumps", "well");
  if (!wells.empty()) {
    s.pumps.clear();
    for (const auto* e : wells) {
      std::istringstream in(e->value);
      std::string layer, cell, rate, extra;
      const std::string what = "line " + std::to_string(e->line) + ": [pumps] well";
      if (!(in >> layer >> cell >> rate) || (in >> extra)) {
        throw ConfigError(what + ": expected '<layer> <cell> <rate>'");
      }
      s.pumps.push_back({to_size(layer, what), to_size(cell, what), to_double(rate, what)});
    }
  }
}

void read_solver(Reader& r, SolverConfig& s) {
  if (auto m = r.text("solver", "method")) s.method = parse_method(*m);
  auto& n = s.newton;
  r.num("solver", "tau_h", n.tau_h, false);
  r.count("solver", "max_newton", n.max_newton, false);
  r.num("solver", "gamma_ini", n.gamma_ini, false);
  r.num("solver", "r_threshold", n.r_threshold, false);
  r.num("solver", "ls_alpha", n.ls_alpha, false);
  r.num("solver", "ls_rho", n.ls_rho, false);
  r.count("solver", "max_ls", n.max_ls, false);
  r.num("solver", "fd_b", n.fd_b, false);
  if (auto v = r.text("solver", "line_search")) {
    const auto t = lower(*v);
    if (t == "auto") {
      s.line_search.reset();
    } else {
      s.line_search = to_bool(t, r.where("solver", "line_search"));
    }
  }
  if (auto v = r.text("solver", "step_norm")) {
    const auto t = lower(*v);
    if (t == "l2") {
      n.step_norm = nonlinear::StepNorm::L2;
    } else if (t == "max") {
      n.step_norm = nonlinear::StepNorm::Max;
    } else {
      throw ConfigError(r.where("solver", "step_norm") + ": expected l2 or max");
    }
  }
  r.count("solver", "gmres_restart", s.gmres.restart, false);
  r.num("solver", "gmres_tol", s.gmres.tolerance, false);
  r.count("solver", "gmres_max_restarts", s.gmres.max_restarts, false);
  r.flag("solver", "precondition", s.precondition);
}

}  // namespace

Method parse_method(const std::string& s) {
  const auto t = lower(trim(s));
  if (t == "nk") return Method::NK;
  if (t == "jfnk") return Method::JFNK;
  throw ConfigError("method: expected nk or jfnk, got '" + s + "'");
}

std::string to_string(Method m) { return m == Method::NK ? "nk" : "jfnk"; }

std::vector<std::string> builtin_names() { return {"tc1", "tc2"}; }

ScenarioConfig builtin_scenario(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.kind = name;
  c.dt = 1.0;
  c.n_steps = 1461;
  c.snapshot_every = 365;
  if (name == "tc1") {
    FdSetup s;
    s.nx = s.ny = 81;
    s.dx = s.dy = 1500.0;
    s.h0 = 400.0;
    s.layer = {100.0, 0.25, 1e-6, 0.0, 500.0};
    s.left = {SideCondition::Kind::Fixed, 50.0};
    s.right = {SideCondition::Kind::Fixed, 400.0};
    c.model = s;
    return c;
  }
  if (name == "tc2") {
    FeSetup s;
    s.cells_x = s.cells_y = 20;
    s.dx = s.dy = 6000.0;
    s.h0_top = s.h0_bottom = 250.0;
    s.top = {100.0, 0.25, 1e-6, 200.0, 500.0};
    s.bottom = {100.0, 0.25, 1e-6, 0.0, 170.0};
    s.aquitard = {1e-3, 30.0};
    s.pumps = {{1, 210, -13068000.0}, {2, 210, -13068000.0}};
    c.model = s;
    return c;
  }
  std::string names;
  for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
  throw ConfigError("unknown scenario kind '" + name + "'; valid kinds: " + names + ", custom");
}

void ScenarioConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("[scenario] dt must be > 0");
  sm.validate();
  solver.newton.validate();
  solver.gmres.validate();
  if (const auto* fd = std::get_if<FdSetup>(&model)) {
    if (fd->nx < 2 || fd->ny < 2) throw ConfigError("[grid] nx and ny must be >= 2");
    if (!(fd->dx > 0.0 && fd->dy > 0.0)) throw ConfigError("[grid] dx and dy must be > 0");
    fd->layer.validate();
  } else {
    const auto& fe = std::get<FeSetup>(model);
    if (fe.cells_x < 1 || fe.cells_y < 1) throw ConfigError("[mesh] cells_x and cells_y must be >= 1");
    if (!(fe.dx > 0.0 && fe.dy > 0.0)) throw ConfigError("[mesh] dx and dy must be > 0");
    fe.top.validate();
    fe.bottom.validate();
    fe.aquitard.validate();
    if (fe.bottom.Z > fe.top.z) throw ConfigError("[bottom] Z must not exceed [top] z");
    for (const auto& p : fe.pumps) {
      if (p.layer < 1 || p.layer > 2) throw ConfigError("[pumps] well layer must be 1 or 2");
      if (p.cell < 1 || p.cell > fe.cells_x * fe.cells_y) {
        throw ConfigError("[pumps] well cell " + std::to_string(p.cell) + " outside the mesh");
      }
    }
  }
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
  Reader r(tokenize(text, origin), origin);
  const auto kind_text = r.text("scenario", "kind");
  if (!kind_text) throw ConfigError(origin + ": missing required key [scenario] kind");
  const std::string kind = lower(*kind_text);

  ScenarioConfig c;
  bool required = false;
  if (kind == "custom") {
    required = true;
    c.kind = "custom";
    c.name = "custom";
    const auto model = r.text("scenario", "model");
    if (!model) throw ConfigError(origin + ": custom scenarios need [scenario] model = fd or fe");
    if (lower(*model) == "fd") {
      c.model = FdSetup{};
    } else if (lower(*model) == "fe") {
      c.model = FeSetup{};
    } else {
      throw ConfigError(r.where("scenario", "model") + ": expected fd or fe");
    }
  } else {
    c = builtin_scenario(kind);
    if (auto model = r.text("scenario", "model")) {
      if (lower(*model) != (c.is_fd() ? "fd" : "fe")) {
        throw ConfigError(r.where("scenario", "model") + ": does not match scenario kind " + kind);
      }
    }
  }
  if (auto n = r.text("scenario", "name")) c.name = *n;
  r.num("scenario", "dt", c.dt, required);
  r.count("scenario", "n_steps", c.n_steps, required);
  r.count("scenario", "snapshot_every", c.snapshot_every, false);
  if (auto f = r.text("scenario", "on_failure")) {
    const auto t = lower(*f);
    if (t == "continue") {
      c.on_failure = FailurePolicy::Continue;
    } else if (t == "abort") {
      c.on_failure = FailurePolicy::Abort;
    } else {
      throw ConfigError(r.where("scenario", "on_failure") + ": expected continue or abort");
    }
  }
  if (auto* fd = std::get_if<FdSetup>(&c.model)) {
    read_fd(r, *fd, required);
  } else {
    read_fe(r, std::get<FeSetup>(c.model), required);
  }
  r.num("smoothing", "eps_s", c.sm.eps_s, false);
  r.num("smoothing", "beta", c.sm.beta, false);
  read_solver(r, c.solver);
  r.reject_unused();
  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end() &&
      !std::filesystem::exists(name_or_path)) {
    return builtin_scenario(name_or_path);
  }
  return parse_config(name_or_path);
}

}  // namespace gwnk::sim
