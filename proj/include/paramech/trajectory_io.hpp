#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integrators.hpp"
#include "lagrangian.hpp"

namespace paramech {

/// Formats a double with 17 significant digits (round-trips exactly).
[[nodiscard]] inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

/// Writes `content` to `path` through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

/// CSV: t, x_1..x_{4n}, energy, res_1..res_{4n}; one row per sample.
[[nodiscard]] inline std::string trajectory_csv(const Trajectory& traj, const ResidualSeries& residuals) {
  if (traj.size() == 0) return {};
  const Eigen::Index dim = traj.states.front().size();
  std::ostringstream os;
  os << "t";
  for (Eigen::Index a = 1; a <= dim; ++a) os << ",x_" << a;
  os << ",energy";
  for (Eigen::Index a = 1; a <= dim; ++a) os << ",res_" << a;
  os << '\n';
  const auto energy = traj.invariants.find("energy");
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_double(traj.times[k]);
    for (Eigen::Index a = 0; a < dim; ++a) os << ',' << format_double(traj.states[k][a]);
    os << ',' << format_double(energy != traj.invariants.end() ? energy->second[k] : 0.0);
    for (Eigen::Index a = 0; a < dim; ++a) os << ',' << format_double(k < residuals.size() ? residuals[k][a] : 0.0);
    os << '\n';
  }
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

[[nodiscard]] inline Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw InputError("'" + path.string() + "' is empty");
  t.header = split_csv_line(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size())
      throw InputError("'" + path.string() + "' line " + std::to_string(lineno) + ": expected " +
                       std::to_string(t.header.size()) + " columns");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

/// Extracts the named columns, in the requested order.
[[nodiscard]] inline Table select_columns(const Table& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& name : names) {
    std::size_t k = 0;
    while (k < t.header.size() && t.header[k] != name) ++k;
    if (k == t.header.size()) throw InputError("unknown column '" + name + "'");
    idx.push_back(k);
  }
  Table out;
  out.header = names;
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    for (std::size_t k : idx) r.push_back(row[k]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

[[nodiscard]] inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? "," : "") << t.header[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
    os << '\n';
  }
  return os.str();
}

}  // namespace paramech
