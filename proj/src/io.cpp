#include "bskde/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bskde/errors.hpp"

namespace bskde {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_field(const std::string& field, std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw ValidationError("line " + std::to_string(line_no) +
                          ": cannot parse '" + field + "' as a number");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Sample2 read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ValidationError("input file '" + path + "' is empty");
  }
  ++line_no;
  line = strip_cr(line);
  if (line != "x1,x2") {
    throw ValidationError("line 1: expected header 'x1,x2', got '" + line +
                          "'");
  }
  std::vector<TargetPoint2> pts;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 2 comma-separated fields, got " +
                            std::to_string(fields.size()));
    }
    const double x1 = parse_field(fields[0], line_no);
    const double x2 = parse_field(fields[1], line_no);
    if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": coordinate outside the unit square: " + line);
    }
    pts.emplace_back(x1, x2);
  }
  if (pts.empty()) {
    throw ValidationError("input file '" + path + "' holds no data rows");
  }
  return Sample2(std::move(pts));
}

void write_density_grid_csv(const std::string& path, const DensityGrid& grid) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << "x1,x2,fhat\n";
  for (std::size_t i = 0; i < grid.resolution; ++i) {
    for (std::size_t j = 0; j < grid.resolution; ++j) {
      out << format_double(grid.node_coord(i)) << ','
          << format_double(grid.node_coord(j)) << ','
          << format_double(grid.at(i, j)) << '\n';
    }
  }
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

DensityGrid read_density_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "x1,x2,fhat") {
    throw ValidationError("file '" + path + "' lacks the x1,x2,fhat header");
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 3 fields");
    }
    values.push_back(parse_field(fields[2], line_no));
  }
  const auto g = static_cast<std::size_t>(std::llround(
      std::sqrt(static_cast<double>(values.size()))));
  if (g < 2 || g * g != values.size()) {
    throw ValidationError("file '" + path +
                          "' does not hold a square midpoint grid");
  }
  DensityGrid grid(g);
  grid.values = std::move(values);
  return grid;
}

}  // namespace bskde
