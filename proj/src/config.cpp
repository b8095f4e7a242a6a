#include "boussinesq/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <locale>
#include <map>
#include <numbers>
#include <sstream>

#include "boussinesq/errors.hpp"

namespace boussinesq {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double scale = 1.0;
  if (v.size() >= 2 && v.substr(v.size() - 2) == "pi") {
    scale = std::numbers::pi;
    v.remove_suffix(2);
    if (v.empty()) return scale;
  }
  double x = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(v) + "'");
  return x * scale;
}

template <typename I>
I parse_int(std::string_view key, std::string_view v) {
  I x{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" +
                      std::string(v) + "'");
  return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("key '" + std::string(key) + "': expected true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) throw ConfigError("key '" + std::string(key) + "': empty list entry");
    out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

PhysicalParams RunConfig::params() const {
  PhysicalParams p;
  p.kappa = kappa;
  p.nu = nu;
  p.delta = delta;
  p.buoyancy_on = buoyancy;
  return p;
}

EvolveOptions RunConfig::evolve_options() const {
  EvolveOptions o;
  o.horizon = horizon;
  o.dt = dt;
  o.auto_dt = auto_dt;
  o.cfl_fraction = cfl;
  o.sample_every = sample_every;
  o.snapshot_every = snapshot_every;
  return o;
}

Grid RunConfig::grid() const { return make_grid(n, length); }

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  // Constant estimation samples modes up to 12, which must survive dealiasing.
  if (n < 40 || n % 2 != 0) fail("n must be even and at least 40");
  if (n > 4096) fail("n above 4096 is not supported");
  if (!(length > 0.0)) fail("L must be positive");
  if (!(kappa > 0.0)) fail("kappa must be positive");
  if (!(nu >= 0.0)) fail("nu must be non-negative");
  const double dx = length / n;
  auto check_delta = [&](double d) {
    if (d == 0.0) return;
    if (!(d >= 4.0 * dx * (1.0 - 1e-12)))
      fail("delta " + num(d) + " is under-resolved: need delta >= 4 dx = " + num(4.0 * dx));
    if (!(d <= length / 4.0)) fail("delta " + num(d) + " exceeds L/4");
  };
  if (!(delta >= 0.0)) fail("delta must be non-negative");
  check_delta(delta);
  for (double d : sweep_values) {
    if (!(d >= 0.0)) fail("sweep values must be non-negative");
  }
  if (initial == "file") {
    if (initial_file.empty()) fail("initial = file needs initial_file");
  } else {
    try {
      (void)parse_initial_kind(initial);
    } catch (const ParameterError& e) {
      fail(e.what());
    }
    if (!(radius > 0.0)) fail("radius must be positive");
    // The box must be at least four support diameters wide.
    if (radius > length / 8.0 * (1.0 + 1e-12))
      fail("radius " + num(radius) + " too large: need L >= 8 radius");
    if (!std::isfinite(amplitude)) fail("amplitude must be finite");
  }
  if (!(horizon > 0.0)) fail("T must be positive");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (!(cfl > 0.0 && cfl <= 0.5)) fail("cfl must lie in (0, 0.5]");
  if (sample_every < 1) fail("sample_every must be at least 1");
  if (snapshot_every < 0) fail("snapshot_every must be non-negative");
  if (dt * sample_every > 0.01 * (1.0 + 1e-9))
    fail("dt * sample_every must not exceed 0.01 (time-derivative checks need dense records)");
  if (constants_samples < 1) fail("constants_samples must be at least 1");
  if (!(residual_budget > 0.0)) fail("residual_budget must be positive");
  if (threads < 0) fail("threads must be non-negative");
  if (output_dir.empty()) fail("output_dir must not be empty");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  using Setter = std::function<void(std::string_view, std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"n", [&](auto k, auto v) { c.n = parse_int<int>(k, v); }},
      {"L", [&](auto k, auto v) { c.length = parse_double(k, v); }},
      {"kappa", [&](auto k, auto v) { c.kappa = parse_double(k, v); }},
      {"nu", [&](auto k, auto v) { c.nu = parse_double(k, v); }},
      {"delta", [&](auto k, auto v) { c.delta = parse_double(k, v); }},
      {"buoyancy", [&](auto k, auto v) { c.buoyancy = parse_bool(k, v); }},
      {"initial", [&](auto, auto v) { c.initial = std::string(v); }},
      {"amplitude", [&](auto k, auto v) { c.amplitude = parse_double(k, v); }},
      {"radius", [&](auto k, auto v) { c.radius = parse_double(k, v); }},
      {"initial_file",
       [&](auto, auto v) {
         std::filesystem::path p{std::string(v)};
         c.initial_file = (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
       }},
      {"T", [&](auto k, auto v) { c.horizon = parse_double(k, v); }},
      {"dt",
       [&](auto k, auto v) {
         if (v == "auto") {
           c.auto_dt = true;
         } else {
           c.auto_dt = false;
           c.dt = parse_double(k, v);
         }
       }},
      {"dt_max", [&](auto k, auto v) { c.dt = parse_double(k, v); }},
      {"cfl", [&](auto k, auto v) { c.cfl = parse_double(k, v); }},
      {"sample_every", [&](auto k, auto v) { c.sample_every = parse_int<int>(k, v); }},
      {"snapshot_every", [&](auto k, auto v) { c.snapshot_every = parse_int<int>(k, v); }},
      {"sweep_values", [&](auto k, auto v) { c.sweep_values = parse_list(k, v); }},
      {"output_dir", [&](auto, auto v) { c.output_dir = std::string(v); }},
      {"seed", [&](auto k, auto v) { c.seed = parse_int<std::uint64_t>(k, v); }},
      {"constants_samples", [&](auto k, auto v) { c.constants_samples = parse_int<int>(k, v); }},
      {"mollifier_profile",
       [&](auto, auto v) {
         try {
           c.profile = parse_profile(v);
         } catch (const ParameterError& e) {
           throw ConfigError(e.what());
         }
       }},
      {"require_delta_condition",
       [&](auto k, auto v) { c.require_delta_condition = parse_bool(k, v); }},
      {"residual_budget", [&](auto k, auto v) { c.residual_budget = parse_double(k, v); }},
      {"threads", [&](auto k, auto v) { c.threads = parse_int<int>(k, v); }},
  };

  std::size_t line_no = 0;
  std::map<std::string, std::size_t, std::less<>> seen;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (seen.contains(key)) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    seen.emplace(std::string(key), line_no);
    if (value.empty()) throw ConfigError(where + "missing value for '" + std::string(key) + "'");
    try {
      it->second(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), file.parent_path());
}

std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "n = " << c.n << '\n'
     << "L = " << num(c.length) << '\n'
     << "kappa = " << num(c.kappa) << '\n'
     << "nu = " << num(c.nu) << '\n'
     << "delta = " << num(c.delta) << '\n'
     << "buoyancy = " << (c.buoyancy ? "true" : "false") << '\n'
     << "initial = " << c.initial << '\n'
     << "amplitude = " << num(c.amplitude) << '\n'
     << "radius = " << num(c.radius) << '\n';
  if (!c.initial_file.empty()) os << "initial_file = " << c.initial_file << '\n';
  os << "T = " << num(c.horizon) << '\n';
  if (c.auto_dt) {
    os << "dt = auto\n" << "dt_max = " << num(c.dt) << '\n';
  } else {
    os << "dt = " << num(c.dt) << '\n';
  }
  os << "cfl = " << num(c.cfl) << '\n'
     << "sample_every = " << c.sample_every << '\n'
     << "snapshot_every = " << c.snapshot_every << '\n';
  if (!c.sweep_values.empty()) {
    os << "sweep_values = ";
    for (std::size_t i = 0; i < c.sweep_values.size(); ++i)
      os << (i ? ", " : "") << num(c.sweep_values[i]);
    os << '\n';
  }
  os << "output_dir = " << c.output_dir << '\n'
     << "seed = " << c.seed << '\n'
     << "constants_samples = " << c.constants_samples << '\n'
     << "mollifier_profile = " << profile_name(c.profile) << '\n'
     << "require_delta_condition = " << (c.require_delta_condition ? "true" : "false") << '\n'
     << "residual_budget = " << num(c.residual_budget) << '\n'
     << "threads = " << c.threads << '\n';
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.n == b.n && a.length == b.length && a.kappa == b.kappa && a.nu == b.nu &&
         a.delta == b.delta && a.buoyancy == b.buoyancy && a.initial == b.initial &&
         a.amplitude == b.amplitude && a.radius == b.radius && a.initial_file == b.initial_file &&
         a.horizon == b.horizon && a.dt == b.dt && a.auto_dt == b.auto_dt && a.cfl == b.cfl &&
         a.sample_every == b.sample_every && a.snapshot_every == b.snapshot_every &&
         a.sweep_values == b.sweep_values && a.output_dir == b.output_dir && a.seed == b.seed &&
         a.constants_samples == b.constants_samples && a.profile == b.profile &&
         a.require_delta_condition == b.require_delta_condition &&
         a.residual_budget == b.residual_budget && a.threads == b.threads;
}

InitialData build_initial_data(const RunConfig& c) {
  const Grid g = c.grid();
  if (c.initial != "file") {
    return make_initial_data(parse_initial_kind(c.initial), c.amplitude, c.radius, g);
  }
  std::ifstream in(c.initial_file);
  if (!in) throw ConfigError("cannot read initial_file " + c.initial_file);
  in.imbue(std::locale::classic());
  const std::size_t count = g.physical_size();
  std::vector<double> psi;
  std::vector<double> beta;
  psi.reserve(count);
  beta.reserve(count);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    double p = 0.0;
    double b = 0.0;
    if (!(ls >> p >> b)) throw ConfigError("initial_file: malformed line '" + line + "'");
    psi.push_back(p);
    beta.push_back(b);
  }
  if (psi.size() != count)
    throw ConfigError("initial_file: expected " + std::to_string(count) + " samples, found " +
                      std::to_string(psi.size()));
  try {
    return initial_data_from_samples(g, std::move(psi), std::move(beta));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("initial_file: ") + e.what());
  }
}

}  // namespace boussinesq
