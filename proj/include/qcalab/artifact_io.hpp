#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qcalab {

inline constexpr const char* kArtifactVersion = "1.0.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest locale-independent form with 17 significant digits ("%.17g").
std::string format_double(double x);

using Cell = std::variant<double, long long, std::string>;

/// CSV artifact: the header JSON on '#'-prefixed lines, then a column row and
/// comma-separated data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  /// Header is pretty-printed with sorted keys, one '#' line per JSON line.
  std::string render(const nlohmann::json& header) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Writes `content` to path, or to stdout if path is empty or "-".
void write_text(const std::string& path, const std::string& content);

}  // namespace qcalab
