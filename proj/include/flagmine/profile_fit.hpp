#pragma once

#include <cstddef>
#include <vector>

namespace flagmine {

// Small dense matrix used for aligned cluster submatrices. Missing entries
// are NaN.
struct Submatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Submatrix() = default;
  Submatrix(int r, int c);
  static Submatrix from_rows(const std::vector<std::vector<double>>& rows);

  double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
  bool missing(int i, int j) const;
};

struct ProfilePair {
  std::vector<double> R;  // one per row
  std::vector<double> C;  // one per column
  double w_star = 0.0;
  int iterations = 0;
};

struct TwoRowFit {
  double w = 0.0;
  double h = 0.0;
  int split = 0;          // sorted columns with d_j <= h (row 0 residual >= 0)
  double R[2] = {0.0, 0.0};
  std::vector<double> C;  // NaN for columns not jointly present
};

// Exact Chebyshev fit of two rows: w = (max d - min d) / 4 with d = a - b.
// `missing` may be empty; otherwise entry j marks column j as unusable.
TwoRowFit two_row_error(const std::vector<double>& row_a,
                        const std::vector<double>& row_b,
                        const std::vector<bool>& missing = {});

struct FitOptions {
  double tol = 1e-9;
  int max_iter = 500;
};

// Alternating midrange updates of R and C. `trace`, when given, receives the
// max residual after the initial step and after each sweep.
ProfilePair fit_profiles(const Submatrix& b, const FitOptions& opt = {},
                         std::vector<double>* trace = nullptr);

// Max residual of the given profiles over the present entries.
double profile_residual(const Submatrix& b, const std::vector<double>& R,
                        const std::vector<double>& C);

// Grid search over R (R[0] = 0) with exact midrange C; at most 4x6, or 2x10.
double brute_force_error(const Submatrix& b, double grid_step);

}  // namespace flagmine
