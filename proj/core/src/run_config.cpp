#include "pmlwave/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmlwave/csv.hpp"
#include "pmlwave/error.hpp"

namespace pmlwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError("bad value for " + key + ": '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw ConfigError("bad integer for " + key + ": '" + text + "'");
  return v;
}

// Comma-separated values, or a range `start:stop:step` (inclusive stop).
std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(key, item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw ConfigError("bad range for " + key + ": '" + text + "'");
    }
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out;
}

}  // namespace

ExperimentId parse_experiment(const std::string& name) {
  if (name == "experiment1") return ExperimentId::Experiment1;
  if (name == "experiment2") return ExperimentId::Experiment2;
  if (name == "experiment3") return ExperimentId::Experiment3;
  if (name == "verify") return ExperimentId::Verify;
  if (name == "run") return ExperimentId::Run;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::Experiment1: return "experiment1";
    case ExperimentId::Experiment2: return "experiment2";
    case ExperimentId::Experiment3: return "experiment3";
    case ExperimentId::Verify: return "verify";
    case ExperimentId::Run: return "run";
  }
  return "?";
}

RunConfig RunConfig::defaults(ExperimentId id) {
  RunConfig c;
  c.experiment = id;
  c.out_dir = "out/" + to_string(id);
  switch (id) {
    case ExperimentId::Experiment2:
      c.R = {1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6};
      c.dt = 0.000625;
      c.spacing = 0.00125;
      break;
    case ExperimentId::Experiment3:
      c.c = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
      c.dt = 0.00125;
      c.spacing = 0.0025;
      break;
    case ExperimentId::Verify:
      c.R = {0.1, 0.3, 0.6, 1.0, 2.0, 3.0};
      break;
    default:
      break;
  }
  return c;
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "R") {
    R = parse_list(key, value);
  } else if (key == "alpha0") {
    alpha0 = parse_double(key, value);
  } else if (key == "dt") {
    dt = parse_double(key, value);
  } else if (key == "M") {
    M = parse_int(key, value);
  } else if (key == "n_modes") {
    n_modes = parse_int(key, value);
  } else if (key == "c") {
    c = parse_list(key, value);
  } else if (key == "L") {
    L = parse_double(key, value);
  } else if (key == "N_series") {
    N_series = parse_int(key, value);
  } else if (key == "T") {
    T = parse_double(key, value);
  } else if (key == "out_dir") {
    out_dir = trim(value);
    if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

int RunConfig::grid_intervals(double radius) const {
  return M > 0 ? M : static_cast<int>(std::ceil(radius / spacing - 1e-9));
}

void RunConfig::validate() const {
  const bool needs_solver = experiment != ExperimentId::Verify;
  if (R.empty()) throw ConfigError("R must have at least one value");
  if (needs_solver) {
    for (double r : R) {
      if (!(r > 1.0)) throw ConfigError("R must exceed 1 (the layer starts at r = 1)");
    }
    if (!(alpha0 >= 0.0)) throw ConfigError("alpha0 must be non-negative");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(T >= 0.0)) throw ConfigError("T must be non-negative");
    if (std::abs(std::round(T / dt) * dt - T) > 1e-9 * std::max(1.0, T)) {
      throw ConfigError("T must be a multiple of dt");
    }
    if (M != 0 && M < 64) throw ConfigError("M must be at least 64");
    for (double r : R) {
      if (dt > 0.5 * r / grid_intervals(r)) throw ConfigError("dt must not exceed half the radial spacing");
    }
  } else {
    for (double r : R) {
      if (!(r > 0.0)) throw ConfigError("R must be positive");
    }
  }
  if (n_modes < 0) throw ConfigError("n_modes must be non-negative");
  if (N_series != 0 && N_series < 8) throw ConfigError("N_series must be at least 8");
  if (!(L > 0.0)) throw ConfigError("L must be positive");
  for (double off : c) {
    if (off < 0.0 || off >= 0.75) throw ConfigError("offset c must lie in [0, 0.75)");
  }
  if (experiment == ExperimentId::Experiment2 && R.size() < 2) {
    throw ConfigError("experiment2 needs a sweep of at least two R values");
  }
  if (experiment == ExperimentId::Experiment3 && c.size() < 2) {
    throw ConfigError("experiment3 needs at least two offsets");
  }
}

std::string RunConfig::provenance() const {
  std::ostringstream os;
  os << "experiment=" << to_string(experiment) << " R=" << join(R) << " alpha0=" << format_number(alpha0)
     << " dt=" << format_number(dt) << " M=" << M << " n_modes=" << n_modes << " c=" << join(c)
     << " L=" << format_number(L) << " N_series=" << N_series << " T=" << format_number(T) << " out_dir=" << out_dir << " dr=" << (M > 0 ? "R/" + std::to_string(M) : join({spacing}));
  return os.str();
}

RunConfig resolve_config(ExperimentId id, const std::string& config_path, const std::vector<std::string>& sets) {
  RunConfig c = RunConfig::defaults(id);
  if (!config_path.empty()) c.load_file(config_path);
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    c.set(s.substr(0, eq), s.substr(eq + 1));
  }
  c.validate();
  return c;
}

}  // namespace pmlwave
