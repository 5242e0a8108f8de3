#include "dampedwave/app/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace dampedwave::app {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void check(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

double parse_cell(const std::string& cell, const std::string& origin, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw IoError(origin + ":" + std::to_string(line) + ": '" + cell + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // folds -0 into 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

std::string format_row(const DiagnosticsRow& r) {
  std::string line;
  for (double v : {r.t, r.l2_u, r.h1_u, r.l2_ut, r.hm1_G, r.E_u, r.E_0_u, r.H_lyap}) {
    line += format_number(v);
    line += ',';
  }
  line += r.l2_dist_psi ? format_number(*r.l2_dist_psi) : std::string("nan");
  return line;
}

DiagnosticsCsvWriter::DiagnosticsCsvWriter(const std::filesystem::path& path)
    : path_(path), out_(open_out(path)) {
  out_ << kDiagnosticsHeader << '\n';
  check(out_, path_);
}

void DiagnosticsCsvWriter::write(const DiagnosticsRow& row) {
  out_ << format_row(row) << '\n';
  check(out_, path_);
}

void DiagnosticsCsvWriter::write_all(std::span<const DiagnosticsRow> rows) {
  for (const auto& r : rows) write(r);
}

void DiagnosticsCsvWriter::close() {
  out_.flush();
  check(out_, path_);
  out_.close();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw IoError("missing column '" + name + "'");
}

std::vector<double> CsvTable::column_values(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(index));
  return out;
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (table.columns.empty()) {
      table.columns = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw IoError(origin + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.columns.size()) + " cells, got " +
                    std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, origin, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw IoError(origin + ": empty CSV");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), path.string());
}

void write_field_csv(const std::filesystem::path& path, const Field& v, const Grid1D& g) {
  require_on_grid(v, g);
  std::ofstream out = open_out(path);
  out << "x,value\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << format_number(g.x(i)) << ',' << format_number(v[i]) << '\n';
  }
  check(out, path);
}

Field read_field_csv(const std::filesystem::path& path, const Grid1D& g) {
  const CsvTable t = read_csv(path);
  const std::size_t xi = t.column("x");
  const std::size_t vi = t.column("value");
  if (t.rows.size() != g.size()) {
    throw IoError("'" + path.string() + "' holds " + std::to_string(t.rows.size()) +
                  " nodes, grid has " + std::to_string(g.size()));
  }
  Field v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(t.rows[i][xi] - g.x(i)) > 1e-9 * std::max(1.0, g.half_length())) {
      throw IoError("'" + path.string() + "' node " + std::to_string(i) + " is not on the grid");
    }
    v[i] = t.rows[i][vi];
  }
  return v;
}

SnapshotCsvWriter::SnapshotCsvWriter(const std::filesystem::path& path, const Grid1D& g)
    : path_(path), grid_(g), out_(open_out(path)) {
  out_ << "t,x,u\n";
  check(out_, path_);
}

void SnapshotCsvWriter::write(double t, const Field& u) {
  const std::string ts = format_number(t);
  for (std::size_t i = 0; i < u.size(); ++i) {
    out_ << ts << ',' << format_number(grid_.x(i)) << ',' << format_number(u[i]) << '\n';
  }
  check(out_, path_);
}

void write_mode_csv(const std::filesystem::path& path, std::span<const ModeSample> samples) {
  std::ofstream out = open_out(path);
  out << "t,omega,omega_dot,energy\n";
  for (const auto& s : samples) {
    out << format_number(s.t) << ',' << format_number(s.omega) << ',' << format_number(s.omega_dot)
        << ',' << format_number(s.energy) << '\n';
  }
  check(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  check(out, path);
}

}  // namespace dampedwave::app
