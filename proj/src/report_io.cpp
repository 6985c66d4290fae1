#include "skdv/report_io.hpp"

#include <cstdio>
#include <fstream>

namespace skdv {

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_quote(header[i]);
  }
  text_ += "\r\n";
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw ConfigError("csv row width " + std::to_string(cells.size()) +
                      " does not match header width " + std::to_string(width_));
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_quote(cells[i]);
  }
  text_ += "\r\n";
}

json to_json(const ScanReport& r) {
  json j;
  j["kind"] = "almost_conservation_scan";
  j["s"] = r.s;
  j["T"] = r.T;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["mn_transition"] = r.mn_transition;
  j["delta_scaling_exponent"] = r.delta_scaling_exponent;
  j["e_slope"] = r.e_slope;
  j["e_slope_residual"] = r.e_slope_residual;
  j["l_slope"] = r.l_slope;
  j["l_slope_residual"] = r.l_slope_residual;
  j["e_pair_slopes"] = r.e_pair_slopes;
  j["l_pair_slopes"] = r.l_pair_slopes;
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["N"] = e.N;
    je["e0"] = e.e0;
    je["l0"] = e.l0;
    je["e_increment"] = e.e_increment;
    je["l_increment"] = e.l_increment;
    je["h1_sum0"] = e.h1_sum0;
    je["h1_sum_max"] = e.h1_sum_max;
    je["norm_budget_ok"] = e.norm_budget_ok;
    je["times"] = e.times;
    je["e_history"] = e.e_history;
    je["l_history"] = e.l_history;
    je["h1_u_history"] = e.h1_u_history;
    je["h1_v_history"] = e.h1_v_history;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

json to_json(const EstimateReport& r) {
  json j;
  j["kind"] = "estimate_ratio_measurement";
  j["id"] = r.id;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["epsilon"] = r.epsilon;
  j["s"] = r.s;
  j["b"] = r.b;
  j["bprime"] = r.bprime;
  j["conj1"] = r.conj1;
  j["conj2"] = r.conj2;
  j["notes"] = r.notes;
  j["resolutions"] = json::array();
  for (const auto& res : r.resolutions) {
    json jr;
    jr["n"] = res.n;
    jr["n_t"] = res.n_t;
    jr["max_ratio"] = res.max_ratio;
    jr["mean_ratio"] = res.mean_ratio;
    jr["ratios"] = res.ratios;
    j["resolutions"].push_back(std::move(jr));
  }
  return j;
}

json to_json(const ThresholdReport& r) {
  json j;
  j["kind"] = "regularity_threshold";
  j["beta_zero"] = r.beta_zero;
  j["overall"] = r.overall.str();
  j["conditions"] = json::array();
  for (const auto& c : r.conditions) {
    json jc;
    jc["id"] = c.id;
    jc["inequality"] = c.inequality;
    jc["threshold"] = c.threshold.str();
    j["conditions"].push_back(std::move(jc));
  }
  return j;
}

json to_json(const ConvergenceReport& r) {
  json j;
  j["kind"] = "convergence_study";
  j["oracle"] = r.oracle;
  j["dt"] = r.dts;
  j["error"] = r.errors;
  j["order"] = r.order;
  j["order_residual"] = r.order_residual;
  return j;
}

json to_json(const AprioriReport& r) {
  json j;
  j["kind"] = "apriori_inequality_report";
  j["decaying"] = r.decaying;
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["tag"] = e.tag;
    je["lhs"] = e.lhs;
    je["rhs"] = e.rhs;
    je["ratio"] = e.ratio;
    je["flag"] = e.flag;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace skdv
