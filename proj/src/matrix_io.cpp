#include "pfsr/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pfsr {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(const std::string& token, const std::filesystem::path& path,
                    int line_no) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end || begin == end) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) +
                     ": not a number: '" + token + "'");
  }
  return v;
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) {
      row.push_back(parse_double(token, path, line_no));
    }
    if (line.empty() || line.back() == ',') {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": empty field");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected " + std::to_string(rows.front().size()) +
                       " values, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": empty matrix file");
  DenseMatrix m(static_cast<Index>(rows.size()),
                static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
  }
  return m;
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    // A zero-column row would serialize as an empty line, which cannot be
    // read back; refuse instead of writing an unloadable file.
    throw InvalidInput("save_matrix: cannot serialize an empty matrix");
  }
  std::ofstream out = open_out(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_value(m(i, j));
    }
    out << '\n';
  }
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() && in.peek() == EOF) break;
    int v = 0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc{} || res.ptr != line.data() + line.size() ||
        v <= 0) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected a positive integer, got '" + line + "'");
    }
    labels.push_back(v);
  }
  if (labels.empty()) throw ParseError(path.string() + ": empty label file");
  return labels;
}

void save_labels(const std::filesystem::path& path,
                 const std::vector<int>& labels) {
  std::ofstream out = open_out(path);
  for (int l : labels) out << l << '\n';
}

void save_predictions(const std::filesystem::path& path,
                      const std::vector<int>& labels) {
  std::ofstream out = open_out(path);
  for (int l : labels) {
    if (l == kUnclassified) {
      out << "?\n";
    } else {
      out << l << '\n';
    }
  }
}

std::vector<int> load_predictions(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() && in.peek() == EOF) break;
    if (line == "?") {
      labels.push_back(kUnclassified);
      continue;
    }
    int v = 0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc{} || res.ptr != line.data() + line.size() ||
        v <= 0) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected a label or '?', got '" + line + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

void save_trace(const std::filesystem::path& path,
                const std::vector<TraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "iter,objective,r1,r2,dz,h_diff\n";
  for (const TraceRow& row : trace) {
    out << row.iter << ',' << format_value(row.objective) << ','
        << format_value(row.r1) << ',' << format_value(row.r2) << ','
        << format_value(row.dz) << ',' << format_value(row.h_diff) << '\n';
  }
}

std::vector<TraceRow> load_trace(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path.string() + ": empty trace file");
  }
  strip_cr(line);
  if (line != "iter,objective,r1,r2,dz,h_diff") {
    throw ParseError(path.string() + ": unexpected trace header");
  }
  std::vector<TraceRow> trace;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() && in.peek() == EOF) break;
    std::stringstream ss(line);
    std::string token;
    std::vector<double> vals;
    while (std::getline(ss, token, ',')) {
      vals.push_back(parse_double(token, path, line_no));
    }
    if (vals.size() != 6) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 6 trace fields");
    }
    trace.push_back({static_cast<int>(vals[0]), vals[1], vals[2], vals[3],
                     vals[4], vals[5]});
  }
  return trace;
}

void save_manifest(const std::filesystem::path& path, const Manifest& entries) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : entries) {
    out << key << '=' << value << '\n';
  }
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  Manifest entries;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ": manifest line without '='");
    }
    entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return entries;
}

}  // namespace pfsr
