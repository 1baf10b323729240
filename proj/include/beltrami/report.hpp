#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace beltrami {

/// Labelled numeric columns plus optional per-row pass flags and trailing
/// key=value notes. CSV is the canonical form; SVG is a derived plot.
class ReportTable {
 public:
  explicit ReportTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<double>& row(std::size_t r) const { return rows_[r]; }
  double at(std::size_t r, const std::string& column) const;
  std::vector<double> column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;

  /// Appends a row without an assertion.
  void add_row(std::vector<double> values);
  /// Appends a row whose asserted inequality passed or failed.
  void add_checked_row(std::vector<double> values, bool pass);

  /// Notes are emitted as "# key=value" lines after the data.
  void note(const std::string& key, double value);
  void note(const std::string& key, const std::string& value);
  std::optional<std::string> note_value(const std::string& key) const;

  /// Marks a table-level assertion (e.g. envelope growth) as failed.
  void fail(const std::string& reason);

  bool has_flags() const { return has_flags_; }
  bool row_pass(std::size_t r) const { return flags_[r]; }
  bool all_pass() const;
  std::optional<std::size_t> first_failure() const;
  const std::vector<std::string>& failures() const { return failures_; }

  std::string to_csv() const;
  /// Line plot of y_columns against x_column in an 800x600 viewBox.
  std::string to_svg(const std::string& x_column, const std::vector<std::string>& y_columns,
                     bool log_x, bool log_y, const std::string& title) const;

  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<bool> flags_;
  bool has_flags_ = false;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::string> failures_;
};

/// Shortest round-trip decimal form ("%.17g").
std::string format_number(double value);

}  // namespace beltrami
