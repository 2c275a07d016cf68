#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lords {

enum class Units { standardized, natural };

// Column-major table of simulated or imported observations. Columns are kept
// in insertion order; lookups go through an index so column count stays small
// and cheap.
class Dataset {
public:
  Dataset() = default;
  Dataset(std::size_t n, Units units) : n_(n), units_(units) {}

  void add_column(std::string name, std::vector<double> values);
  bool has(std::string_view name) const;
  const std::vector<double>& col(std::string_view name) const;
  std::vector<double>& mutable_col(std::string_view name);

  const std::vector<std::string>& column_names() const { return names_; }
  std::size_t size() const { return n_; }
  Units units() const { return units_; }
  void set_units(Units u) { units_ = u; }

private:
  std::size_t n_ = 0;
  Units units_ = Units::standardized;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> cols_;
  std::unordered_map<std::string, std::size_t> index_;
};

// CSV with a header row; values carry 6 significant digits. An explicit order
// may select/reorder a subset of columns; by default all columns are written
// in dataset order.
void write_csv(const Dataset& ds, const std::filesystem::path& path,
               std::span<const std::string> order = {});

// Strict reader: rectangular, numeric, finite.
Dataset read_csv(const std::filesystem::path& path, Units units);

}  // namespace lords
