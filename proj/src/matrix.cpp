#include "flagmine/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "flagmine/error.hpp"

namespace flagmine {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string cell_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Returns false if the cell is not numeric; sets `missing` for blank/NaN.
bool parse_cell(const std::string& raw, double& value, bool& missing) {
  std::string s = trim(raw);
  missing = false;
  if (s.empty() || s == "NaN" || s == "nan" || s == "NA") {
    missing = true;
    value = kNaN;
    return true;
  }
  char* end = nullptr;
  value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  if (!std::isfinite(value)) return false;
  return true;
}

}  // namespace

DataMatrix::DataMatrix(int rows, int cols, Domain domain)
    : rows_(rows),
      cols_(cols),
      domain_(domain),
      values_(static_cast<std::size_t>(rows) * cols, 0.0),
      missing_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 1 || cols < 1) {
    throw ConfigError("matrix dimensions must be positive");
  }
}

DataMatrix::DataMatrix(int rows, int cols, std::vector<double> values,
                       Domain domain)
    : DataMatrix(rows, cols, domain) {
  if (values.size() != values_.size()) {
    throw ConfigError("value count does not match dimensions");
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double v = values[index(i, j)];
      if (std::isnan(v)) {
        set_missing(i, j);
      } else {
        set(i, j, v);
      }
    }
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                 Domain domain) {
  if (rows.empty()) throw ConfigError("matrix has no rows");
  int n = static_cast<int>(rows[0].size());
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ConfigError("ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return DataMatrix(static_cast<int>(rows.size()), n, std::move(flat), domain);
}

void DataMatrix::set_missing(int i, int j, bool m) {
  std::size_t k = index(i, j);
  if (m && !missing_[k]) {
    ++missing_count_;
  } else if (!m && missing_[k]) {
    --missing_count_;
  }
  missing_[k] = m ? 1 : 0;
  if (m) values_[k] = kNaN;
}

void DataMatrix::set(int i, int j, double v) {
  if (!std::isfinite(v)) {
    throw ConfigError("non-finite value at " + cell_name(i, j));
  }
  set_missing(i, j, false);
  values_[index(i, j)] = v;
}

bool DataMatrix::operator==(const DataMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || domain_ != o.domain_) {
    return false;
  }
  if (missing_ != o.missing_) return false;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!missing_[k] && values_[k] != o.values_[k]) return false;
  }
  return true;
}

DataMatrix log_transform(const DataMatrix& m) {
  DataMatrix out(m.rows(), m.cols(), Domain::kAdditive);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m.missing(i, j)) {
        out.set_missing(i, j);
        continue;
      }
      double v = m(i, j);
      if (!(v > 0.0)) throw NonPositiveEntry("non-positive entry at " + cell_name(i, j));
      out.set(i, j, std::log(v));
    }
  }
  return out;
}

DataMatrix read_matrix_csv(std::istream& in, Domain domain) {
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<bool>> miss;
  std::string line;
  int line_no = 0;
  int width = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    std::vector<double> vals(cells.size());
    std::vector<bool> ms(cells.size());
    bool numeric = true;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      bool mk = false;
      if (!parse_cell(cells[k], vals[k], mk)) {
        numeric = false;
        break;
      }
      ms[k] = mk;
    }
    if (!numeric) {
      if (rows.empty() && width < 0) {
        width = static_cast<int>(cells.size());  // header row
        continue;
      }
      throw ParseError("non-numeric cell on line " + std::to_string(line_no));
    }
    if (width < 0) width = static_cast<int>(cells.size());
    if (static_cast<int>(cells.size()) != width) {
      throw ParseError("line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(width));
    }
    rows.push_back(std::move(vals));
    miss.push_back(std::move(ms));
  }
  if (rows.size() < 2 || width < 2) {
    throw ParseError("matrix must be at least 2x2");
  }
  DataMatrix m(static_cast<int>(rows.size()), width, domain);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < width; ++j) {
      if (miss[i][j]) {
        m.set_missing(i, j);
      } else {
        m.set(i, j, rows[i][j]);
      }
    }
  }
  return m;
}

DataMatrix read_matrix_csv_file(const std::string& path, Domain domain) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_matrix_csv(in, domain);
}

void write_matrix_csv(std::ostream& out, const DataMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      if (m.missing(i, j)) {
        out << "NaN";
      } else {
        out << format_double(m(i, j));
      }
    }
    out << '\n';
  }
}

void write_matrix_csv_file(const std::string& path, const DataMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_matrix_csv(out, m);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace flagmine
