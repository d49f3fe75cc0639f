#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flagmine {

enum class Domain { kMultiplicativeRaw, kAdditive };

// Dense row-major m x n matrix with a missing-value mask.
// Missing cells hold NaN in `values` so vectorized kernels can skip the mask
// lookup only when `has_missing()` is false.
class DataMatrix {
 public:
  DataMatrix() = default;
  DataMatrix(int rows, int cols, Domain domain = Domain::kAdditive);
  DataMatrix(int rows, int cols, std::vector<double> values,
             Domain domain = Domain::kAdditive);

  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows,
                              Domain domain = Domain::kAdditive);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Domain domain() const { return domain_; }
  void set_domain(Domain d) { domain_ = d; }

  double operator()(int i, int j) const { return values_[index(i, j)]; }
  double& at(int i, int j) { return values_[index(i, j)]; }
  const double* row(int i) const { return values_.data() + index(i, 0); }

  bool missing(int i, int j) const { return missing_[index(i, j)] != 0; }
  void set_missing(int i, int j, bool m = true);
  void set(int i, int j, double v);
  bool has_missing() const { return missing_count_ > 0; }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const DataMatrix& o) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  Domain domain_ = Domain::kAdditive;
  std::vector<double> values_;
  std::vector<std::uint8_t> missing_;
  std::size_t missing_count_ = 0;
};

// Element-wise natural log. Throws NonPositiveEntry on the first value <= 0.
DataMatrix log_transform(const DataMatrix& m);

// CSV: one row per object, empty cell or `NaN` is missing, optional header
// row (detected when the first line does not parse as numbers).
DataMatrix read_matrix_csv(std::istream& in, Domain domain);
DataMatrix read_matrix_csv_file(const std::string& path, Domain domain);
void write_matrix_csv(std::ostream& out, const DataMatrix& m);
void write_matrix_csv_file(const std::string& path, const DataMatrix& m);

// Text form of a double with 17 significant digits.
std::string format_double(double v);

}  // namespace flagmine
