#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gwnk/krylov/gmres.hpp"
#include "gwnk/models/fd_model.hpp"
#include "gwnk/models/fe_model.hpp"
#include "gwnk/nonlinear/settings.hpp"

namespace gwnk::sim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { NK, JFNK };
enum class FailurePolicy { Continue, Abort };

struct SolverConfig {
  Method method = Method::JFNK;
  nonlinear::NewtonSettings newton;
  krylov::GmresSettings gmres;
  bool precondition = true;            // ILU(0); NK only
  std::optional<bool> line_search;     // unset: off for NK, on for JFNK

  [[nodiscard]] bool line_search_enabled() const { return line_search.value_or(method == Method::JFNK); }
};

/// Boundary condition on one side of the single-layer grid.
struct SideCondition {
  enum class Kind { NoFlow, Fixed, Flux } kind = Kind::NoFlow;
  double value = 0.0;
};

struct FdSetup {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double h0 = 0.0;
  models::LayerParams layer;
  SideCondition left, right, bottom, top;
};

struct FeSetup {
  std::size_t cells_x = 0;
  std::size_t cells_y = 0;
  double dx = 0.0;
  double dy = 0.0;
  double h0_top = 0.0;
  double h0_bottom = 0.0;
  models::LayerParams top;
  models::LayerParams bottom;
  models::AquitardParams aquitard;
  std::vector<models::PumpSpec> pumps;
};

struct ScenarioConfig {
  std::string name;
  std::string kind;  // tc1 | tc2 | custom
  double dt = 1.0;
  std::size_t n_steps = 0;
  std::size_t snapshot_every = 365;  // 0 = final state only
  FailurePolicy on_failure = FailurePolicy::Continue;
  std::variant<FdSetup, FeSetup> model;
  models::SmoothingParams sm;
  SolverConfig solver;

  [[nodiscard]] bool is_fd() const { return std::holds_alternative<FdSetup>(model); }
  void validate() const;
};

/// Names accepted by builtin_scenario().
std::vector<std::string> builtin_names();

/// Single-layer unconfined case (81 x 81 nodes) or the two-layer pumping case.
ScenarioConfig builtin_scenario(const std::string& name);

/// Parses key = value text with [sections]; see README for the key list.
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");
ScenarioConfig parse_config(const std::filesystem::path& path);

/// A builtin name, or a path to a config file.
ScenarioConfig load_scenario(const std::string& name_or_path);

Method parse_method(const std::string& s);
std::string to_string(Method m);

}  // namespace gwnk::sim
