#include "lords/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lords/errors.hpp"

namespace lords {

void Dataset::add_column(std::string name, std::vector<double> values) {
  if (index_.count(name)) throw ValidationError("duplicate column '" + name + "'");
  if (values.size() != n_)
    throw ValidationError("column '" + name + "' has " + std::to_string(values.size()) +
                          " rows, expected " + std::to_string(n_));
  index_.emplace(name, cols_.size());
  names_.push_back(std::move(name));
  cols_.push_back(std::move(values));
}

bool Dataset::has(std::string_view name) const {
  return index_.count(std::string(name)) > 0;
}

const std::vector<double>& Dataset::col(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw EstimationError("missing column '" + std::string(name) + "'");
  return cols_[it->second];
}

std::vector<double>& Dataset::mutable_col(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw EstimationError("missing column '" + std::string(name) + "'");
  return cols_[it->second];
}

void write_csv(const Dataset& ds, const std::filesystem::path& path,
               std::span<const std::string> order) {
  std::vector<std::string> cols(order.begin(), order.end());
  if (cols.empty()) cols = ds.column_names();
  for (const auto& c : cols)
    if (!ds.has(c)) throw ValidationError("csv export: unknown column '" + c + "'");

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");

  for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? "," : "") << cols[j];
  out << "\n";

  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", ds.col(cols[j])[i]);
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw ValidationError("write failed for '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path, Units units) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty csv '" + path.string() + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  if (header.empty()) throw ValidationError("csv header missing in '" + path.string() + "'");

  std::vector<std::vector<double>> cols(header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw ValidationError("csv row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(cells[j].c_str(), &end);
      if (end == cells[j].c_str() || *end != '\0' || !std::isfinite(v))
        throw ValidationError("csv row " + std::to_string(row) + ", column '" + header[j] +
                              "': bad value '" + cells[j] + "'");
      cols[j].push_back(v);
    }
    ++row;
  }

  Dataset ds(cols.empty() ? 0 : cols[0].size(), units);
  for (std::size_t j = 0; j < header.size(); ++j) ds.add_column(header[j], std::move(cols[j]));
  return ds;
}

}  // namespace lords
