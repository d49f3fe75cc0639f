#pragma once

#include <map>
#include <utility>
#include <vector>

#include "flagmine/matrix.hpp"
#include "flagmine/profile_fit.hpp"

namespace flagmine {

struct Objective {
  enum class Kind { kArea, kPerimeter, kPsi };
  Kind kind = Kind::kArea;
  double psi = 0.5;

  static Objective area() { return {Kind::kArea, 0.5}; }
  static Objective perimeter() { return {Kind::kPerimeter, 0.5}; }
  static Objective with_psi(double p) { return {Kind::kPsi, p}; }
};

double objective_score(int size_i, int size_j, const Objective& kind);

// A fuzzy lagged co-cluster. Cell (i, j) of the cluster sits at matrix column
// j + lag(i) + fuzz(i, j). Lags and fuzz are relative to `anchor`.
struct FuzzyLaggedCluster {
  std::vector<int> rows;   // ascending
  std::vector<int> lags;   // parallel to rows
  std::vector<int> cols;   // ascending, in anchor coordinates
  std::map<std::pair<int, int>, int> fuzz;  // (row, col) -> f, nonzero only
  int max_fuzz = 0;
  double achieved_error = 0.0;
  double objective = 0.0;
  int anchor = -1;
  std::vector<int> anti_rows;  // ascending; rows fitted as R - C

  int lag_of(int row) const;
  int fuzz_at(int row, int col) const;
  bool is_anti(int row) const;
  bool anti() const { return !anti_rows.empty(); }
  int position(int row, int col) const { return col + lag_of(row) + fuzz_at(row, col); }

  // Identity used for deduplication: rows, lags and columns.
  bool same_shape(const FuzzyLaggedCluster& o) const {
    return rows == o.rows && lags == o.lags && cols == o.cols;
  }
};

// Aligned submatrix B_ij = A[i][j + T_i + F_ij]; out-of-range or masked
// cells are NaN. Anti rows are negated so a plain additive fit applies.
Submatrix aligned_submatrix(const DataMatrix& a, const FuzzyLaggedCluster& c);

struct VerifyResult {
  bool valid = false;
  double achieved_error = 0.0;
  ProfilePair profiles;
};

// Fits profiles to the aligned submatrix and reports whether the achieved
// error is within w. A relative slack of 1e-9 absorbs rounding.
VerifyResult verify_cluster(const DataMatrix& a, const FuzzyLaggedCluster& c,
                            double w);

}  // namespace flagmine
