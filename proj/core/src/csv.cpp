#include "pmlwave/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "pmlwave/error.hpp"

namespace pmlwave {

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw Error("CSV row width does not match header");
  rows_.push_back(cells);
}

void CsvTable::write(std::ostream& out, const std::string& provenance) const {
  out << "# " << provenance << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

void CsvTable::write(const std::string& path, const std::string& provenance) const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + path);
  write(out, provenance);
}

}  // namespace pmlwave
