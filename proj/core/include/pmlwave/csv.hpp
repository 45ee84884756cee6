#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmlwave {

/// Column table written as `# provenance`, header row, then data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }

  void write(std::ostream& out, const std::string& provenance) const;
  /// Writes to `path`, creating parent directories.
  void write(const std::string& path, const std::string& provenance) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace pmlwave
