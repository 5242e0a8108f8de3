#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dampedwave/diagnostics.hpp"
#include "dampedwave/grid.hpp"
#include "dampedwave/ode_lab.hpp"

namespace dampedwave::app {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header of the diagnostics CSV.
inline constexpr const char* kDiagnosticsHeader = "t,l2_u,h1_u,l2_ut,hm1_G,E_u,E0_u,H_lyap,l2_dist_psi";

/// Scientific notation with 15 significant digits.
std::string format_number(double v);

/// Streams rows as they are produced so that a failed run keeps its prefix.
class DiagnosticsCsvWriter {
 public:
  explicit DiagnosticsCsvWriter(const std::filesystem::path& path);

  void write(const DiagnosticsRow& row);
  void write_all(std::span<const DiagnosticsRow> rows);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string format_row(const DiagnosticsRow& row);

/// Columnar numeric table read from a CSV with a header line.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws IoError when absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(std::size_t index) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& origin = "<memory>");

/// Field file: header `x,value`, one interior node per line.
void write_field_csv(const std::filesystem::path& path, const Field& v, const Grid1D& g);
Field read_field_csv(const std::filesystem::path& path, const Grid1D& g);

/// Snapshot file in long format: header `t,x,u`.
class SnapshotCsvWriter {
 public:
  SnapshotCsvWriter(const std::filesystem::path& path, const Grid1D& g);

  void write(double t, const Field& u);

 private:
  std::filesystem::path path_;
  Grid1D grid_;
  std::ofstream out_;
};

/// Mode ODE CSV: header `t,omega,omega_dot,energy`.
void write_mode_csv(const std::filesystem::path& path, std::span<const ModeSample> samples);

/// Writes text to a file, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dampedwave::app
