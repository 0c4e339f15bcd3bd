#include "l1obstacle/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace l1obstacle {

std::string format_double(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction& u) {
  const auto& s = u.spec();
  os << (s.dim() == 1 ? "x,value\n" : "x,y,value\n");
  for (int i = 0; i < s.n(0); ++i)
    for (int j = 0; j < s.n(1); ++j) {
      os << format_double(s.coord(0, i)) << ',';
      if (s.dim() == 2) os << format_double(s.coord(1, j)) << ',';
      os << format_double(u(i, j)) << '\n';
    }
}

void write_grid_csv(const std::string& path, const GridFunction& u) {
  auto os = open_out(path);
  write_grid_csv(os, u);
}

GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty grid CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int dim;
  if (line == "x,value")
    dim = 1;
  else if (line == "x,y,value")
    dim = 2;
  else
    throw std::runtime_error("unrecognised grid CSV header '" + line + "'");

  std::vector<std::array<double, 3>> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tok = split(line);
    if (static_cast<int>(tok.size()) != dim + 1)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) + " fields");
    std::array<double, 3> r{0.0, 0.0, 0.0};
    r[0] = parse_double(tok[0], lineno);
    if (dim == 2) r[1] = parse_double(tok[1], lineno);
    r[2] = parse_double(tok[dim], lineno);
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error("grid CSV has no data rows");

  int n1 = 1;
  if (dim == 2) {
    while (n1 < static_cast<int>(rows.size()) && rows[n1][0] == rows[0][0]) ++n1;
  }
  if (rows.size() % n1 != 0) throw std::runtime_error("grid CSV is not a full tensor grid");
  const int n0 = static_cast<int>(rows.size() / n1);
  const GridSpec s = dim == 1 ? GridSpec::line(rows.front()[0], rows.back()[0], n0)
                              : GridSpec::rectangle({rows.front()[0], rows.front()[1]},
                                                    {rows.back()[0], rows.back()[1]}, {n0, n1});
  GridFunction u(s);
  for (std::size_t k = 0; k < rows.size(); ++k) u[static_cast<Eigen::Index>(k)] = rows[k][2];
  return u;
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_grid_csv(is);
}

void write_history_csv(std::ostream& os, const std::vector<IterationRecord>& history) {
  os << "iter,diff,energy\n";
  for (const auto& r : history) os << r.iter << ',' << format_double(r.diff) << ',' << format_double(r.energy) << '\n';
}

void write_history_csv(const std::string& path, const std::vector<IterationRecord>& history) {
  auto os = open_out(path);
  write_history_csv(os, history);
}

void write_polylines_csv(std::ostream& os, const std::vector<Polyline>& lines, int dim) {
  os << (dim == 1 ? "component_id,x\n" : "component_id,x,y\n");
  for (std::size_t c = 0; c < lines.size(); ++c)
    for (const auto& p : lines[c].points) {
      os << c << ',' << format_double(p[0]);
      if (dim == 2) os << ',' << format_double(p[1]);
      os << '\n';
    }
}

void write_polylines_csv(const std::string& path, const std::vector<Polyline>& lines, int dim) {
  auto os = open_out(path);
  write_polylines_csv(os, lines, dim);
}

}  // namespace l1obstacle
