#include "robustgauss/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace robustgauss {

namespace {

[[noreturn]] void parse_fail(const std::string& path, long line, const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& path, long line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    parse_fail(path, line, "expected a number, got \"" + text + "\"");
  }
  // Allow surrounding whitespace, nothing else.
  for (std::size_t i = used; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      parse_fail(path, line, "trailing characters after number in \"" + text + "\"");
    }
  }
  return v;
}

struct ParsedRows {
  std::vector<std::vector<double>> rows;
  long first_line = 0;
};

ParsedRows read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(path + ": cannot open for reading");
  }
  ParsedRows out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<double> row;
    for (const std::string& field : split_csv(line)) {
      row.push_back(parse_number(field, path, lineno));
    }
    if (!out.rows.empty() && row.size() != out.rows.front().size()) {
      parse_fail(path, lineno,
                 "row has " + std::to_string(row.size()) + " values, expected " +
                     std::to_string(out.rows.front().size()));
    }
    if (out.rows.empty()) out.first_line = lineno;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Mat read_matrix_file(const std::string& path) {
  ParsedRows parsed = read_rows(path);
  if (parsed.rows.empty()) {
    throw IoError(path + ": no data rows");
  }
  const Index r = static_cast<Index>(parsed.rows.size());
  const Index c = static_cast<Index>(parsed.rows.front().size());
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = parsed.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Vec read_vector_file(const std::string& path) {
  Mat m = read_matrix_file(path);
  if (m.rows() == 1) return m.row(0).transpose();
  if (m.cols() == 1) return m.col(0);
  throw IoError(path + ": expected a vector (1 row or 1 column), got " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()));
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_matrix_file(const std::string& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_sig(m(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

void write_vector_file(const std::string& path, const Vec& v) { write_matrix_file(path, v.transpose()); }

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(path + ": cannot open for reading");
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw IoError(path + ":1: missing header row");
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const std::vector<std::string> cols = split_csv(header);
  if (cols.empty() || cols[0] != "y") {
    parse_fail(path, 1, "header must start with \"y\"");
  }
  const Index d = static_cast<Index>(cols.size()) - 1;
  if (d < 1) {
    parse_fail(path, 1, "header names no feature columns");
  }
  for (Index j = 0; j < d; ++j) {
    if (cols[static_cast<std::size_t>(j + 1)] != "x" + std::to_string(j + 1)) {
      parse_fail(path, 1, "feature columns must be named x1..xd");
    }
  }

  std::vector<double> labels;
  std::vector<double> features;
  std::string line;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (static_cast<Index>(fields.size()) != d + 1) {
      parse_fail(path, lineno,
                 "expected " + std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
    }
    const double y = parse_number(fields[0], path, lineno);
    if (y != 1.0 && y != -1.0) {
      parse_fail(path, lineno, "label must be +1 or -1");
    }
    labels.push_back(y);
    for (Index j = 0; j < d; ++j) {
      features.push_back(parse_number(fields[static_cast<std::size_t>(j + 1)], path, lineno));
    }
  }
  if (labels.empty()) {
    throw IoError(path + ": no sample rows");
  }
  Dataset data;
  const Index n = static_cast<Index>(labels.size());
  data.x.resize(n, d);
  data.y.resize(n);
  for (Index i = 0; i < n; ++i) {
    data.y[i] = labels[static_cast<std::size_t>(i)] > 0 ? 1 : -1;
    for (Index j = 0; j < d; ++j) {
      data.x(i, j) = features[static_cast<std::size_t>(i * d + j)];
    }
  }
  return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  out << 'y';
  for (Index j = 0; j < data.dim(); ++j) out << ",x" << (j + 1);
  out << '\n';
  for (Index i = 0; i < data.n(); ++i) {
    out << data.y[i];
    for (Index j = 0; j < data.dim(); ++j) out << ',' << format_sig(data.x(i, j));
    out << '\n';
  }
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

}  // namespace robustgauss
