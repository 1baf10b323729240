#include "beltrami/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "beltrami/error.hpp"
#include "beltrami/field_io.hpp"

namespace beltrami {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ReportTable::ReportTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("a report needs at least one column");
}

std::size_t ReportTable::column_index(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw InvalidArgument("no column named " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

double ReportTable::at(std::size_t r, const std::string& column) const {
  return rows_.at(r)[column_index(column)];
}

std::vector<double> ReportTable::column(const std::string& name) const {
  std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[c]);
  return out;
}

void ReportTable::add_row(std::vector<double> values) {
  if (values.size() != columns_.size()) throw InvalidArgument("row width does not match columns");
  rows_.push_back(std::move(values));
  flags_.push_back(true);
}

void ReportTable::add_checked_row(std::vector<double> values, bool pass) {
  add_row(std::move(values));
  flags_.back() = pass;
  has_flags_ = true;
}

void ReportTable::note(const std::string& key, double value) { note(key, format_number(value)); }

void ReportTable::note(const std::string& key, const std::string& value) {
  for (auto& [k, v] : notes_)
    if (k == key) {
      v = value;
      return;
    }
  notes_.emplace_back(key, value);
}

std::optional<std::string> ReportTable::note_value(const std::string& key) const {
  for (const auto& [k, v] : notes_)
    if (k == key) return v;
  return std::nullopt;
}

void ReportTable::fail(const std::string& reason) { failures_.push_back(reason); }

bool ReportTable::all_pass() const { return failures_.empty() && !first_failure(); }

std::optional<std::size_t> ReportTable::first_failure() const {
  for (std::size_t r = 0; r < flags_.size(); ++r)
    if (!flags_[r]) return r;
  return std::nullopt;
}

std::string ReportTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  if (has_flags_) out << ",pass";
  out << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      out << (c ? "," : "") << format_number(rows_[r][c]);
    if (has_flags_) out << ',' << (flags_[r] ? 1 : 0);
    out << '\n';
  }
  for (const auto& [k, v] : notes_) out << "# " << k << '=' << v << '\n';
  for (const auto& f : failures_) out << "# failure=" << f << '\n';
  return out.str();
}

void ReportTable::write_csv(const std::filesystem::path& path) const {
  write_file_atomic(path, to_csv());
}

std::string ReportTable::to_svg(const std::string& x_column,
                                const std::vector<std::string>& y_columns, bool log_x, bool log_y,
                                const std::string& title) const {
  constexpr double W = 800, H = 600, left = 80, right = 20, top = 40, bottom = 60;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  auto usable = [](double v, bool log) { return std::isfinite(v) && (!log || v > 0); };

  const auto xs = column(x_column);
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& name : y_columns) {
    const auto ys = column(name);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!usable(xs[r], log_x) || !usable(ys[r], log_y)) continue;
      x0 = std::min(x0, tx(xs[r]));
      x1 = std::max(x1, tx(xs[r]));
      y0 = std::min(y0, ty(ys[r]));
      y1 = std::max(y1, ty(ys[r]));
    }
  }
  if (!(x0 < x1)) x0 -= 1, x1 += 1;
  if (!(y0 < y1)) y0 -= 1, y1 += 1;
  auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double v) { return H - bottom - (ty(v) - y0) / (y1 - y0) * (H - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
         "height=\"600\">\n";
  out << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right
      << "\" height=\"" << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto label = [](double v, bool log) {
    return log ? "1e" + format_number(std::round(v * 100) / 100) : format_number(v);
  };
  for (int k = 0; k <= 4; ++k) {
    double fx = x0 + (x1 - x0) * k / 4, fy = y0 + (y1 - y0) * k / 4;
    double sx = left + (W - left - right) * k / 4, sy = H - bottom - (H - top - bottom) * k / 4;
    out << "<text x=\"" << sx << "\" y=\"" << H - bottom + 20
        << "\" text-anchor=\"middle\" font-size=\"11\">" << label(fx, log_x) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << sy + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << label(fy, log_y) << "</text>\n";
  }
  out << "<text x=\"400\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << x_column << "</text>\n";
  for (std::size_t s = 0; s < y_columns.size(); ++s) {
    const auto ys = column(y_columns[s]);
    const char* colour = palette[s % 5];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (usable(xs[r], log_x) && usable(ys[r], log_y))
        out << px(xs[r]) << ',' << py(ys[r]) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << W - right - 10 << "\" y=\"" << top + 18 * (s + 1)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colour << "\">" << y_columns[s]
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace beltrami
