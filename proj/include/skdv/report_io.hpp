#ifndef SKDV_REPORT_IO_HPP
#define SKDV_REPORT_IO_HPP

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skdv/estimates.hpp"
#include "skdv/experiments.hpp"
#include "skdv/functionals.hpp"

namespace skdv {

using nlohmann::json;

/// "%.17g" rendering used for every floating value in CSV output.
std::string format17(double v);

/// RFC-4180 quoting (only applied when the cell needs it).
std::string csv_quote(const std::string& cell);

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells); // must match the header width
  const std::string& text() const { return text_; }

private:
  size_t width_;
  std::string text_;
};

json to_json(const ScanReport& r);
json to_json(const EstimateReport& r);
json to_json(const ThresholdReport& r);
json to_json(const ConvergenceReport& r);
json to_json(const AprioriReport& r);

/// FNV-1a 64-bit content digest, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

/// Write atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace skdv

#endif
