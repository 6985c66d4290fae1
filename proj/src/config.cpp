#include "skdv/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace skdv {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// typed extraction with error collection
class KvReader {
public:
  KvReader(std::map<std::string, std::string> kv, std::vector<std::string>& errors)
      : kv_(std::move(kv)), errors_(errors) {}

  bool has(const std::string& key) { return kv_.count(key) > 0; }

  void get(const std::string& key, double& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    try {
      size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
      out = v;
    } catch (const std::exception&) {
      errors_.push_back(key + ": expected a real number, got \"" + it->second + "\"");
    }
  }

  void get(const std::string& key, int& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    try {
      size_t pos = 0;
      const long v = std::stol(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
      out = static_cast<int>(v);
    } catch (const std::exception&) {
      errors_.push_back(key + ": expected an integer, got \"" + it->second + "\"");
    }
  }

  void get(const std::string& key, std::uint64_t& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    try {
      size_t pos = 0;
      const unsigned long long v = std::stoull(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
      out = v;
    } catch (const std::exception&) {
      errors_.push_back(key + ": expected an unsigned integer, got \"" + it->second + "\"");
    }
  }

  void get(const std::string& key, bool& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "on" || v == "yes") out = true;
    else if (v == "false" || v == "0" || v == "off" || v == "no") out = false;
    else errors_.push_back(key + ": expected a boolean, got \"" + it->second + "\"");
  }

  void get(const std::string& key, std::string& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    out = it->second;
  }

  void get(const std::string& key, std::vector<double>& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    std::vector<double> vals;
    std::stringstream ss(it->second);
    std::string item;
    bool ok = true;
    while (std::getline(ss, item, ',')) {
      try {
        vals.push_back(std::stod(trim(item)));
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || vals.empty())
      errors_.push_back(key + ": expected a comma-separated list of reals, got \"" + it->second +
                        "\"");
    else
      out = std::move(vals);
  }

  void get(const std::string& key, std::vector<int>& out) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    used_.insert(key);
    std::vector<int> vals;
    std::stringstream ss(it->second);
    std::string item;
    bool ok = true;
    while (std::getline(ss, item, ',')) {
      try {
        vals.push_back(std::stoi(trim(item)));
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || vals.empty())
      errors_.push_back(key + ": expected a comma-separated list of integers, got \"" +
                        it->second + "\"");
    else
      out = std::move(vals);
  }

  void report_unknown() {
    for (const auto& [k, v] : kv_)
      if (!used_.count(k)) errors_.push_back("unknown key: " + k);
  }

private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
  std::vector<std::string>& errors_;
};

std::map<std::string, std::string> parse_flat(const std::string& text,
                                              std::vector<std::string>& errors) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (kv.count(key)) {
      errors.push_back("duplicate key: " + key);
      continue;
    }
    kv[key] = value;
  }
  return kv;
}

const std::vector<std::string> kSubcommands = {"simulate",  "conserve", "iscan",
                                               "estimates", "converge", "gwp-threshold"};

} // namespace

ConfigParseError::ConfigParseError(std::vector<std::string> errs)
    : std::runtime_error("invalid configuration:\n  " + join(errs, "\n  ")),
      errors(std::move(errs)) {}

RunConfig parse_config(const std::string& text) { return parse_config(text, {}); }

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::vector<std::string> errors;
  auto kv = parse_flat(text, errors);
  for (const auto& [k, v] : overrides) kv[k] = v;

  RunConfig cfg;
  KvReader r(std::move(kv), errors);

  r.get("subcommand", cfg.subcommand);
  r.get("seed", cfg.seed);
  r.get("out_dir", cfg.out_dir);

  if (cfg.subcommand == "iscan") {
    // documented iscan defaults: the scan family (overridable per key below)
    const ScanConfig sc;
    cfg.data = sc.family;
    cfg.stepper = sc.stepper;
  }

  r.get("grid.n", cfg.grid_n);
  r.get("grid.box_length", cfg.box_length);

  r.get("physics.alpha", cfg.physics.alpha);
  r.get("physics.beta", cfg.physics.beta);
  r.get("physics.gamma", cfg.physics.gamma);

  r.get("stepper.dt", cfg.stepper.dt);
  r.get("stepper.dealias", cfg.stepper.dealias);
  r.get("stepper.blowup_threshold", cfg.stepper.blowup_threshold);

  r.get("imethod.N", cfg.imethod.N);
  r.get("imethod.s", cfg.imethod.s);

  r.get("data.family", cfg.data.id);
  r.get("data.amplitude", cfg.data.amplitude);
  r.get("data.k0", cfg.data.k0);
  r.get("data.width", cfg.data.width);
  r.get("data.x0", cfg.data.x0);
  r.get("data.c", cfg.data.c);
  r.get("data.noise", cfg.data.noise);

  r.get("sim.t_end", cfg.t_end);
  r.get("sim.stride", cfg.stride);
  r.get("sim.track_rates", cfg.track_rates);

  r.get("scan.N_values", cfg.scan_N);
  r.get("scan.s", cfg.scan_s);
  r.get("scan.T", cfg.scan_T);
  r.get("scan.samples", cfg.scan_samples);
  r.get("scan.n", cfg.scan_n);
  r.get("scan.box_length", cfg.scan_box_length);

  r.get("est.id", cfg.est_id);
  r.get("est.samples", cfg.est_samples);
  r.get("est.resolutions", cfg.est_resolutions);
  r.get("est.s", cfg.est.s);
  r.get("est.b", cfg.est.b);
  r.get("est.bprime", cfg.est.bprime);
  r.get("est.epsilon", cfg.est.epsilon);
  r.get("est.concentration", cfg.est.concentration);
  r.get("est.gamma1", cfg.est.gamma1);
  r.get("est.gamma2", cfg.est.gamma2);
  r.get("est.beta_sep", cfg.est.beta_sep);
  r.get("est.conj1", cfg.est.conj1);
  r.get("est.conj2", cfg.est.conj2);

  r.get("conv.oracle", cfg.conv_oracle);
  r.get("conv.dt_values", cfg.conv_dts);
  r.get("conv.T", cfg.conv_T);

  r.get("threshold.beta_zero", cfg.beta_zero);

  r.report_unknown();

  // whole-config validation; module validators supply the messages
  if (!cfg.subcommand.empty() &&
      std::find(kSubcommands.begin(), kSubcommands.end(), cfg.subcommand) == kSubcommands.end())
    errors.push_back("unknown subcommand: " + cfg.subcommand);

  auto check = [&errors](auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  };

  check([&] { make_grid(cfg.grid_n, cfg.box_length); });
  check([&] { cfg.physics.validate(); });
  check([&] { cfg.stepper.validate(); });
  check([&] { cfg.imethod.validate(); });
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
    errors.push_back("sim.t_end must be finite and nonnegative");
  if (cfg.stride < 1) errors.push_back("sim.stride must be >= 1");

  if (cfg.subcommand == "iscan") {
    check([&] {
      ScanConfig sc;
      sc.N_values = cfg.scan_N;
      sc.s = cfg.scan_s;
      sc.T = cfg.scan_T;
      sc.samples = cfg.scan_samples;
      sc.grid_n = cfg.scan_n;
      sc.box_length = cfg.scan_box_length;
      sc.physics = cfg.physics;
      sc.stepper = cfg.stepper;
      sc.validate();
      make_grid(sc.grid_n, sc.box_length);
    });
  }
  if (cfg.subcommand == "estimates") {
    check([&] { check_gates(catalog_id_from_string(cfg.est_id), cfg.est); });
    if (cfg.est_samples < 1) errors.push_back("est.samples must be >= 1");
    for (int n : cfg.est_resolutions)
      if (n < 8 || n % 2 != 0) errors.push_back("est.resolutions entries must be even and >= 8");
  }
  if (cfg.subcommand == "converge") {
    check([&] {
      ConvergenceConfig cc;
      cc.oracle = oracle_from_string(cfg.conv_oracle);
      cc.dts = cfg.conv_dts;
      cc.T = cfg.conv_T;
      cc.physics = cfg.physics;
      cc.grid_n = cfg.grid_n;
      cc.box_length = cfg.box_length;
      cc.amplitude = cfg.data.amplitude;
      cc.k0 = cfg.data.k0;
      cc.c = cfg.data.c;
      cc.validate();
    });
  }
  if (cfg.subcommand == "simulate" || cfg.subcommand == "conserve" || cfg.subcommand.empty()) {
    check([&] { make_initial_state(make_grid(cfg.grid_n, cfg.box_length), cfg.data); });
  }

  if (!errors.empty()) throw ConfigParseError(std::move(errors));
  return cfg;
}

std::string canonical_config_text(const RunConfig& c) {
  std::ostringstream os;
  auto put = [&os](const std::string& k, const std::string& v) { os << k << " = " << v << "\n"; };
  auto putd = [&](const std::string& k, double v) { put(k, format_double(v)); };
  auto puti = [&](const std::string& k, long long v) { put(k, std::to_string(v)); };
  auto putb = [&](const std::string& k, bool v) { put(k, v ? "true" : "false"); };
  auto putlist = [&](const std::string& k, const auto& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(xs[i])>, double>)
        s += format_double(xs[i]);
      else
        s += std::to_string(xs[i]);
    }
    put(k, s);
  };

  put("subcommand", c.subcommand);
  puti("seed", static_cast<long long>(c.seed));
  put("out_dir", c.out_dir);
  puti("grid.n", c.grid_n);
  putd("grid.box_length", c.box_length);
  putd("physics.alpha", c.physics.alpha);
  putd("physics.beta", c.physics.beta);
  putd("physics.gamma", c.physics.gamma);
  putd("stepper.dt", c.stepper.dt);
  putb("stepper.dealias", c.stepper.dealias);
  putd("stepper.blowup_threshold", c.stepper.blowup_threshold);
  putd("imethod.N", c.imethod.N);
  putd("imethod.s", c.imethod.s);
  put("data.family", c.data.id);
  putd("data.amplitude", c.data.amplitude);
  putd("data.k0", c.data.k0);
  putd("data.width", c.data.width);
  putd("data.x0", c.data.x0);
  putd("data.c", c.data.c);
  putd("data.noise", c.data.noise);
  putd("sim.t_end", c.t_end);
  puti("sim.stride", c.stride);
  putb("sim.track_rates", c.track_rates);
  putlist("scan.N_values", c.scan_N);
  putd("scan.s", c.scan_s);
  putd("scan.T", c.scan_T);
  puti("scan.samples", c.scan_samples);
  puti("scan.n", c.scan_n);
  putd("scan.box_length", c.scan_box_length);
  put("est.id", c.est_id);
  puti("est.samples", c.est_samples);
  putlist("est.resolutions", c.est_resolutions);
  putd("est.s", c.est.s);
  putd("est.b", c.est.b);
  putd("est.bprime", c.est.bprime);
  putd("est.epsilon", c.est.epsilon);
  putd("est.concentration", c.est.concentration);
  putd("est.gamma1", c.est.gamma1);
  putd("est.gamma2", c.est.gamma2);
  putd("est.beta_sep", c.est.beta_sep);
  putb("est.conj1", c.est.conj1);
  putb("est.conj2", c.est.conj2);
  put("conv.oracle", c.conv_oracle);
  putlist("conv.dt_values", c.conv_dts);
  putd("conv.T", c.conv_T);
  putb("threshold.beta_zero", c.beta_zero);
  return os.str();
}

} // namespace skdv
