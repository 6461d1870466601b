#include "ibex/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "ibex/errors.hpp"
#include "ibex/projection.hpp"

namespace ibex {
namespace {

std::string trimmed(std::string s) {
  const auto not_space = [](unsigned char c) { return std::isspace(c) == 0; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

/// Line-oriented `key = value` store. Every lookup marks the key as
/// consumed so that leftovers can be reported with their line numbers.
class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trimmed(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(number) +
                          ": expected 'key = value', got '" + line + "'");
      const std::string key = trimmed(line.substr(0, eq));
      const std::string value = trimmed(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(number) + ": empty key");
      if (value.empty()) fail_key(key, "empty value (line " + std::to_string(number) + ")");
      const auto [it, inserted] = entries_.emplace(key, Entry{value, number});
      if (!inserted)
        fail_key(key, "line " + std::to_string(number) + " duplicates line " +
                          std::to_string(it->second.line));
    }
  }

  bool has(const std::string& key) const { return entries_.contains(key); }

  std::string get_string(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) fail_key(key, "required but missing");
    it->second.used = true;
    return it->second.value;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) {
    const std::string raw = get_string(key);
    try {
      std::size_t pos = 0;
      const double value = std::stod(raw, &pos);
      if (pos == raw.size() && std::isfinite(value)) return value;
    } catch (const std::exception&) {
    }
    fail_key(key, "expected a number, got '" + raw + "'");
  }

  double get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  int get_int(const std::string& key) {
    const std::string raw = get_string(key);
    try {
      std::size_t pos = 0;
      const long long value = std::stoll(raw, &pos);
      if (pos == raw.size() && value >= INT_MIN_SAFE && value <= INT_MAX_SAFE)
        return static_cast<int>(value);
    } catch (const std::exception&) {
    }
    fail_key(key, "expected an integer, got '" + raw + "'");
  }

  int get_int(const std::string& key, int fallback) {
    return has(key) ? get_int(key) : fallback;
  }

  /// 'auto' (or an absent key) maps to -1; otherwise a number >= 0.
  double get_rate(const std::string& key) {
    if (!has(key)) return -1.0;
    if (entries_.at(key).value == "auto") {
      entries_.at(key).used = true;
      return -1.0;
    }
    const double value = get_double(key);
    if (value < 0.0) fail_key(key, "expected 'auto' or a number >= 0");
    return value;
  }

  void finish() const {
    for (const auto& [key, entry] : entries_)
      if (!entry.used)
        fail_key(key, "not recognized for this problem (line " + std::to_string(entry.line) + ")");
  }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
  };

  static constexpr long long INT_MIN_SAFE = -2147483648LL;
  static constexpr long long INT_MAX_SAFE = 2147483647LL;

  std::map<std::string, Entry> entries_;
};

/// Conversion from the units a config is written in to nondimensional
/// values. Identity unless the config carries a scales section.
struct UnitSystem {
  bool physical = false;
  double x0 = 1.0;
  double u0 = 1.0;
  double theta0 = 1.0;
  double rho0 = 1.0;

  double length(double v) const { return physical ? v / x0 : v; }
  double velocity(double v) const { return physical ? v / u0 : v; }
  double temperature(double v) const { return physical ? v / theta0 : v; }
  double density(double v) const { return physical ? v / rho0 : v; }
};

Eigen::Vector3d read_vector(Reader& reader, const std::string& prefix, double unit_factor) {
  return {reader.get_double(prefix + ".u1", 0.0) / unit_factor,
          reader.get_double(prefix + ".u2", 0.0) / unit_factor,
          reader.get_double(prefix + ".u3", 0.0) / unit_factor};
}

void read_boundary_side(Reader& reader, const UnitSystem& units, const std::string& name,
                        BoundaryKind& kind, WallSpec& wall) {
  const std::string key = "boundary." + name;
  const std::string raw = reader.get_string(key, "periodic");
  if (raw == "periodic") {
    kind = BoundaryKind::periodic;
    return;
  }
  if (raw != "wall") fail_key(key, "expected 'periodic' or 'wall', got '" + raw + "'");
  kind = BoundaryKind::diffusive_wall;
  wall.velocity = read_vector(reader, key, units.physical ? units.u0 : 1.0);
  wall.theta = units.temperature(reader.get_double(key + ".theta"));
  if (wall.theta <= 0.0) fail_key(key + ".theta", "wall temperature must be > 0");
}

}  // namespace

ModelConfig parse_config(const std::string& text) {
  Reader reader(text);
  ModelConfig config;

  const std::string problem = reader.get_string("problem");
  if (problem == "heating")
    config.problem = ProblemKind::heating;
  else if (problem == "haff")
    config.problem = ProblemKind::haff;
  else if (problem == "inhomogeneous")
    config.problem = ProblemKind::inhomogeneous;
  else
    fail_key("problem", "expected 'heating', 'haff' or 'inhomogeneous', got '" + problem + "'");

  config.kernel.varpi = reader.get_double("kernel.varpi", 1.0);
  config.kernel.c_const = reader.get_double("kernel.const", 1.0 / (4.0 * std::numbers::pi));
  config.kernel.e = reader.get_double("kernel.e");
  if (!config.kernel.valid())
    throw ConfigError(
        "config keys 'kernel.*': need 0 < varpi <= 1, const > 0 and e in [0, 1]");

  config.m0 = reader.get_int("model.m0");
  config.m = reader.get_int("model.m");
  if (config.m0 < 2) fail_key("model.m0", "quadratic band must be at least 2");
  if (config.m < config.m0) fail_key("model.m", "must be >= model.m0");
  config.nu1_override = reader.get_rate("model.nu1");
  config.nu2_override = reader.get_rate("model.nu2");
  config.prandtl = reader.get_double("model.prandtl", 2.0 / 3.0);
  if (config.prandtl <= 0.0) fail_key("model.prandtl", "must be > 0");

  config.drop_tol = reader.get_double("tensor.drop_tol", 1e-14);
  if (config.drop_tol < 0.0) fail_key("tensor.drop_tol", "must be >= 0");

  UnitSystem units;
  const std::array<std::string, 5> scale_keys = {"scales.x0", "scales.m0", "scales.theta0",
                                                 "scales.rho0", "scales.d_ref"};
  const auto present =
      std::count_if(scale_keys.begin(), scale_keys.end(),
                    [&reader](const std::string& key) { return reader.has(key); });
  if (present > 0) {
    for (const auto& key : scale_keys)
      if (!reader.has(key)) fail_key(key, "all five scales.* keys must be given together");
    if (reader.has("kn"))
      fail_key("kn", "give either kn or the scales.* section, not both");
    PhysicalScales scales;
    scales.x0 = reader.get_double("scales.x0");
    scales.m0 = reader.get_double("scales.m0");
    scales.theta0 = reader.get_double("scales.theta0");
    scales.rho0 = reader.get_double("scales.rho0");
    scales.d_ref = reader.get_double("scales.d_ref");
    config.kn = compute_knudsen(scales);  // validates the scales
    config.scales = scales;
    units = {true, scales.x0, scales.u0(), scales.theta0, scales.rho0};
  } else {
    config.kn = reader.get_double("kn", 1.0);
    if (config.kn <= 0.0) fail_key("kn", "must be > 0");
  }

  config.dt = reader.get_double("time.dt", 0.01);
  if (config.dt <= 0.0) fail_key("time.dt", "must be > 0");
  config.t_end = reader.get_double("time.t_end");
  if (config.t_end <= 0.0) fail_key("time.t_end", "must be > 0");
  config.cfl = reader.get_double("time.cfl", 0.3);
  if (config.cfl <= 0.0 || config.cfl >= 1.0) fail_key("time.cfl", "must lie in (0, 1)");
  const std::string splitting = reader.get_string("time.splitting", "lie");
  if (splitting == "strang")
    config.strang = true;
  else if (splitting != "lie")
    fail_key("time.splitting", "expected 'lie' or 'strang', got '" + splitting + "'");

  config.threads = reader.get_int("threads", 0);
  if (config.threads < 0) fail_key("threads", "must be >= 0");

  config.output_interval = reader.get_double("output.interval", 0.0);
  if (config.output_interval < 0.0) fail_key("output.interval", "must be >= 0");
  const std::string out_units = reader.get_string("output.units", "nondimensional");
  if (out_units == "physical") {
    if (!config.scales)
      fail_key("output.units", "physical output needs a scales.* section");
    config.physical_output = true;
  } else if (out_units != "nondimensional") {
    fail_key("output.units", "expected 'nondimensional' or 'physical', got '" + out_units + "'");
  }

  // Background fields. Defaults are the reference values themselves, so a
  // physical config that omits them starts from the nondimensional unit state.
  config.init.rho = units.density(reader.get_double("init.rho", units.physical ? units.rho0 : 1.0));
  config.init.theta =
      units.temperature(reader.get_double("init.theta", units.physical ? units.theta0 : 1.0));
  config.init.u = read_vector(reader, "init", units.physical ? units.u0 : 1.0);
  if (config.init.rho <= 0.0) fail_key("init.rho", "must be > 0");
  if (config.init.theta <= 0.0) fail_key("init.theta", "must be > 0");

  if (config.problem == ProblemKind::heating) {
    config.heating_epsilon = reader.get_double("heating.epsilon");
    if (config.heating_epsilon < 0.0) fail_key("heating.epsilon", "must be >= 0");
  }

  if (config.problem == ProblemKind::inhomogeneous) {
    config.geometry.dims = reader.get_int("grid.dims", 1);
    if (config.geometry.dims != 1 && config.geometry.dims != 2)
      fail_key("grid.dims", "must be 1 or 2");
    config.geometry.cells[0] = reader.get_int("grid.nx");
    config.geometry.length[0] =
        units.length(reader.get_double("grid.lx", units.physical ? units.x0 : 1.0));
    if (config.geometry.dims == 2) {
      config.geometry.cells[1] = reader.get_int("grid.ny");
      config.geometry.length[1] =
          units.length(reader.get_double("grid.ly", units.physical ? units.x0 : 1.0));
    }
    if (!config.geometry.valid())
      throw ConfigError("config keys 'grid.*': cell counts must be >= 1 and lengths > 0");

    config.convection_center.u_bar = read_vector(reader, "center", 1.0);  // nondimensional
    config.convection_center.t_bar = reader.get_double("center.t", 1.0);
    if (config.convection_center.t_bar <= 0.0) fail_key("center.t", "must be > 0");

    read_boundary_side(reader, units, "x.low", config.boundary.kind[0][0],
                       config.boundary.wall[0][0]);
    read_boundary_side(reader, units, "x.high", config.boundary.kind[0][1],
                       config.boundary.wall[0][1]);
    if (config.geometry.dims == 2) {
      read_boundary_side(reader, units, "y.low", config.boundary.kind[1][0],
                         config.boundary.wall[1][0]);
      read_boundary_side(reader, units, "y.high", config.boundary.kind[1][1],
                         config.boundary.wall[1][1]);
    }
    config.boundary.validate(config.geometry.dims);

    config.init.profile = reader.get_string("init.profile", "uniform");
    if (config.init.profile == "sine2d") {
      if (config.geometry.dims != 2) fail_key("init.profile", "sine2d needs grid.dims = 2");
      config.init.amplitude = reader.get_double("init.amplitude", 0.5);
      config.init.mode_x = reader.get_int("init.mode_x", 1);
      config.init.mode_y = reader.get_int("init.mode_y", 1);
      config.init.theta_amplitude = reader.get_double("init.theta_amplitude", 0.0);
      if (std::abs(config.init.amplitude) >= 1.0)
        fail_key("init.amplitude", "|amplitude| must stay below 1 to keep the density positive");
      if (std::abs(config.init.theta_amplitude) >= 1.0)
        fail_key("init.theta_amplitude", "|amplitude| must stay below 1 to keep theta positive");
      if (config.init.mode_x < 1) fail_key("init.mode_x", "must be >= 1");
      if (config.init.mode_y < 1) fail_key("init.mode_y", "must be >= 1");
    } else if (config.init.profile != "uniform") {
      fail_key("init.profile", "expected 'uniform' or 'sine2d', got '" + config.init.profile + "'");
    }
  }

  reader.finish();
  return config;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

SolverParams solver_params_from(const ModelConfig& config) {
  SolverParams params;
  params.kn = config.kn;
  params.dt = config.dt;
  params.t_end = config.t_end;
  params.cfl = config.cfl;
  params.strang = config.strang;
  params.threads = config.threads;
  params.output_interval = config.output_interval;
  params.model.m0 = config.m0;
  params.model.m = config.m;
  params.model.prandtl = config.prandtl;
  return params;
}

CollisionModelParams resolve_model_params(const ModelConfig& config,
                                          const CollisionTensor& tensor) {
  CollisionModelParams params;
  params.m0 = config.m0;
  params.m = config.m;
  params.prandtl = config.prandtl;
  if (config.m0 >= config.m) {
    // No linear branch: the rates never enter. Keep harmless values.
    params.nu1 = 1.0;
    params.nu2 = 0.0;
    return params;
  }
  params.nu1 =
      config.nu1_override >= 0.0 ? config.nu1_override : estimate_nu1(tensor, config.m0);
  params.nu2 = config.nu2_override >= 0.0 ? config.nu2_override : nu2_default(config.kernel.e);
  return params;
}

SpectralState build_initial_state(const ModelConfig& config) {
  const ExpansionCenter center{config.init.u, config.init.theta};
  return SpectralState::maxwellian(config.init.rho, center, config.m);
}

GridField build_initial_grid(const ModelConfig& config, const IndexSet& set) {
  if (set.max_degree() != config.m)
    throw ConfigError("index set degree does not match model.m");
  GridField grid(config.geometry, config.convection_center, config.m);
  const GridGeometry& g = config.geometry;
  const int ny = g.dims == 2 ? g.cells[1] : 1;

  const auto projected_maxwellian = [&](double rho, double theta) {
    const SpectralState cell =
        SpectralState::maxwellian(rho, ExpansionCenter{config.init.u, theta}, config.m);
    return project(cell, config.convection_center, set).coeffs;
  };

  if (config.init.profile == "uniform") {
    const Eigen::VectorXd coeffs = projected_maxwellian(config.init.rho, config.init.theta);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < g.cells[0]; ++i) grid.cell(i, j) = coeffs;
    return grid;
  }

  // sine2d: separable sinusoidal modulation of the background fields.
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < ny; ++j) {
    const double y = (j + 0.5) * g.dx(1);
    const double sy = std::sin(two_pi * config.init.mode_y * y / g.length[1]);
    for (int i = 0; i < g.cells[0]; ++i) {
      const double x = (i + 0.5) * g.dx(0);
      const double sx = std::sin(two_pi * config.init.mode_x * x / g.length[0]);
      const double rho = config.init.rho * (1.0 + config.init.amplitude * sx * sy);
      const double theta = config.init.theta * (1.0 + config.init.theta_amplitude * sx * sy);
      grid.cell(i, j) = projected_maxwellian(rho, theta);
    }
  }
  return grid;
}

}  // namespace ibex
