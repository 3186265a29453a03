#include "semistream/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semistream/errors.hpp"

namespace semistream {

namespace {

double parse_number(const std::string& token, const std::string& path, int line) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw InputError(path + ":" + std::to_string(line) + ": non-numeric cell '" +
                     token + "'");
  return v;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Dataset ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Dataset data;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trimmed(line);
    if (row.empty()) continue;
    std::vector<double> coords;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = row.find(',', start);
      const std::string cell =
          trimmed(row.substr(start, comma == std::string::npos ? std::string::npos
                                                               : comma - start));
      coords.push_back(parse_number(cell, path, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (width == 0) width = coords.size();
    if (coords.size() != width)
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, got " +
                       std::to_string(coords.size()));
    data.points.push_back(
        make_coord_point(static_cast<PointId>(data.points.size()), std::move(coords)));
  }
  if (data.points.empty()) throw InputError(path + ": no points found");
  return data;
}

Dataset ingest_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::int64_t n = 0;
  if (!(in >> n) || n < 1) throw InputError(path + ":1: expected the matrix size n");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  for (std::int64_t i = 0; i < n * n; ++i) {
    double v = 0.0;
    if (!(in >> v))
      throw InputError(path + ": matrix ended after " + std::to_string(i) + " of " +
                       std::to_string(n * n) + " entries");
    values.push_back(v);
  }
  Dataset data;
  data.matrix = std::make_shared<DistanceMatrix>(
      DistanceMatrix::validated(static_cast<std::int32_t>(n), std::move(values)));
  for (std::int64_t i = 0; i < n; ++i)
    data.points.push_back(
        make_node_point(static_cast<PointId>(i), static_cast<std::int32_t>(i)));
  return data;
}

Dataset ingest_points(const std::string& path, const std::string& format) {
  if (format == "csv") return ingest_csv(path);
  if (format == "matrix") return ingest_matrix(path);
  throw InputError("unknown input format '" + format + "' (expected csv|matrix)");
}

DissimilarityMeasure measure_for(const Dataset& data, const std::string& name) {
  const DissimilarityMeasure base = DissimilarityMeasure::parse(name);
  if (data.is_matrix()) return base.rebase_matrix(data.matrix);
  return base;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace semistream
