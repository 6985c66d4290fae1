#include "skdv/runner.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "skdv/report_io.hpp"

namespace skdv {

namespace fs = std::filesystem;

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

/// Collects emitted files so the manifest can digest them and failures can
/// clean them up.
class OutputSet {
public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void emit(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    write_file_atomic(p, content);
    names_.push_back(name);
    digests_.push_back(fnv1a64_hex(content));
  }

  void remove_all() {
    for (const auto& n : names_) {
      std::error_code ec;
      fs::remove(dir_ / n, ec);
    }
  }

  json digest_json() const {
    json j = json::object();
    for (size_t i = 0; i < names_.size(); ++i) j[names_[i]] = digests_[i];
    return j;
  }

  const fs::path& dir() const { return dir_; }

private:
  fs::path dir_;
  std::vector<std::string> names_;
  std::vector<std::string> digests_;
};

std::vector<std::string> timeseries_header(bool track_rates) {
  std::vector<std::string> h = {"t",    "M",    "L",    "E",    "E_mod",
                                "L_mod", "Hs_u", "Hs_v", "H1_u", "H1_v"};
  if (track_rates) {
    for (int i = 1; i <= 12; ++i) h.push_back("e" + std::to_string(i));
    for (int i = 1; i <= 4; ++i) h.push_back("l" + std::to_string(i));
  }
  return h;
}

void run_time_series(const RunConfig& cfg, OutputSet& out_set, std::ostream& out,
                     bool with_final_state) {
  auto grid = make_grid(cfg.grid_n, cfg.box_length);
  DataFamily family = cfg.data;
  family.seed = cfg.seed;
  family.s = cfg.imethod.s;
  const State initial = make_initial_state(grid, family);

  CsvWriter csv(timeseries_header(cfg.track_rates));
  Observer row_writer = [&](const State& s) {
    const FunctionalReport fr = functional_report(s, cfg.physics, cfg.imethod.s);
    std::vector<std::string> cells = {
        format17(fr.t),
        format17(fr.M),
        format17(fr.L),
        format17(fr.E),
        format17(modified_e(s.u, s.v, cfg.physics, cfg.imethod)),
        format17(modified_l(s.u, s.v, cfg.physics, cfg.imethod)),
        format17(fr.Hs_u),
        format17(fr.Hs_v),
        format17(fr.H1_u),
        format17(fr.H1_v)};
    if (cfg.track_rates) {
      const RateReport rr = rate_report(s, cfg.physics, cfg.imethod);
      for (double e : rr.e_terms) cells.push_back(format17(e));
      for (double l : rr.l_terms) cells.push_back(format17(l));
    }
    csv.add_row(cells);
  };

  const Trajectory traj =
      simulate(initial, cfg.physics, cfg.stepper, cfg.t_end, {row_writer}, cfg.stride);
  out_set.emit("timeseries.csv", csv.text());

  if (with_final_state) {
    CsvWriter fin({"x", "re_u", "im_u", "v"});
    const State& f = traj.final_state;
    for (int i = 0; i < grid->n; ++i)
      fin.add_row({format17(i * grid->dx), format17(f.u.values()[i].real()),
                   format17(f.u.values()[i].imag()), format17(f.v.values()[i])});
    out_set.emit("final_state.csv", fin.text());
  }
  out << "steps: " << traj.steps << ", samples: " << traj.samples.size() << "\n";
}

void run_subcommand(const RunConfig& cfg, OutputSet& out_set, std::ostream& out) {
  if (cfg.subcommand == "simulate") {
    run_time_series(cfg, out_set, out, true);
  } else if (cfg.subcommand == "conserve") {
    run_time_series(cfg, out_set, out, false);
  } else if (cfg.subcommand == "iscan") {
    ScanConfig sc;
    sc.N_values = cfg.scan_N;
    sc.s = cfg.scan_s;
    sc.T = cfg.scan_T;
    sc.samples = cfg.scan_samples;
    sc.grid_n = cfg.scan_n;
    sc.box_length = cfg.scan_box_length;
    sc.physics = cfg.physics;
    sc.stepper = cfg.stepper;
    sc.seed = cfg.seed;
    sc.family = cfg.data;
    const ScanReport rep = almost_conservation_scan(sc);
    out_set.emit("scan.json", to_json(rep).dump(2) + "\n");
    out << "scan: e_slope=" << rep.e_slope << " l_slope=" << rep.l_slope << "\n";
  } else if (cfg.subcommand == "estimates") {
    const CatalogId id = catalog_id_from_string(cfg.est_id);
    const EstimateReport rep =
        measure_estimate(id, cfg.est, cfg.est_samples, cfg.est_resolutions, cfg.seed);
    out_set.emit("estimates.json", to_json(rep).dump(2) + "\n");
    for (const auto& res : rep.resolutions)
      out << rep.id << " n=" << res.n << " max_ratio=" << res.max_ratio << "\n";
  } else if (cfg.subcommand == "converge") {
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
    cc.dealias = cfg.stepper.dealias;
    const ConvergenceReport rep = convergence_study(cc);
    out_set.emit("converge.json", to_json(rep).dump(2) + "\n");
    out << "order: " << rep.order << "\n";
  } else if (cfg.subcommand == "gwp-threshold") {
    const ThresholdReport rep = gwp_threshold(cfg.beta_zero);
    out_set.emit("threshold.json", to_json(rep).dump(2) + "\n");
    out << rep.overall.str() << "\n";
    for (const auto& c : rep.conditions)
      out << "  " << c.id << ": s > " << c.threshold.str() << "   [" << c.inequality << "]\n";
  } else {
    throw ConfigError("no subcommand given");
  }
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string started = iso_now();
  OutputSet out_set{fs::path(cfg.out_dir)};
  try {
    run_subcommand(cfg, out_set, out);

    json manifest;
    manifest["artifact"] = "skdv";
    manifest["version"] = "0.1.0";
    manifest["subcommand"] = cfg.subcommand;
    manifest["config"] = canonical_config_text(cfg);
    manifest["conventions"] = {
        {"coefficients", "f(x) = sum_k fhat_k e^{i xi_k x}, Parseval factor L"},
        {"schrodinger_propagator", "coefficient phase e^{-i xi^2 t}"},
        {"airy_propagator", "coefficient phase e^{+i xi^3 t}"},
        {"mn_transition", "C1 monotone cubic Hermite in log-log on (N, 2N)"},
        {"epsilon", format17(cfg.est.epsilon)},
        {"dealiasing", "2/3 rule, unpaired Nyquist mode zeroed"}};
    manifest["started"] = started;
    manifest["finished"] = iso_now();
    manifest["outputs"] = out_set.digest_json();
    write_file_atomic(out_set.dir() / "manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const ConfigParseError& e) {
    out_set.remove_all();
    err << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    out_set.remove_all();
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const BlowupError& e) {
    out_set.remove_all();
    err << e.what() << "\n";
    return kExitBlowup;
  } catch (const std::exception& e) {
    out_set.remove_all();
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

} // namespace skdv
