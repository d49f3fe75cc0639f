#include "flagmine/profile_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flagmine/error.hpp"

namespace flagmine {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// C_j = midrange_i(B_ij - R_i). Returns the largest half-range, which is the
// max residual of (R, C).
double update_columns(const Submatrix& b, const std::vector<double>& R,
                      std::vector<double>& C) {
  double worst = 0.0;
  for (int j = 0; j < b.cols; ++j) {
    double lo = kInf, hi = -kInf;
    for (int i = 0; i < b.rows; ++i) {
      double x = b(i, j);
      if (std::isnan(x)) continue;
      double d = x - R[i];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    C[j] = 0.5 * (lo + hi);
    worst = std::max(worst, 0.5 * (hi - lo));
  }
  return worst;
}

void update_rows(const Submatrix& b, const std::vector<double>& C,
                 std::vector<double>& R) {
  for (int i = 0; i < b.rows; ++i) {
    double lo = kInf, hi = -kInf;
    for (int j = 0; j < b.cols; ++j) {
      double x = b(i, j);
      if (std::isnan(x)) continue;
      double d = x - C[j];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    R[i] = 0.5 * (lo + hi);
  }
}

void require_nonempty_lines(const Submatrix& b) {
  if (b.rows < 1 || b.cols < 1) throw EmptyRowOrColumn("empty submatrix");
  std::vector<int> row_count(b.rows, 0), col_count(b.cols, 0);
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      if (!b.missing(i, j)) {
        ++row_count[i];
        ++col_count[j];
      }
    }
  }
  for (int i = 0; i < b.rows; ++i) {
    if (row_count[i] == 0) throw EmptyRowOrColumn("row " + std::to_string(i) + " has no entries");
  }
  for (int j = 0; j < b.cols; ++j) {
    if (col_count[j] == 0) throw EmptyRowOrColumn("column " + std::to_string(j) + " has no entries");
  }
}

}  // namespace

Submatrix::Submatrix(int r, int c)
    : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, kNaN) {}

Submatrix Submatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Submatrix s(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < s.rows; ++i) {
    for (int j = 0; j < s.cols; ++j) s.at(i, j) = rows[i][j];
  }
  return s;
}

bool Submatrix::missing(int i, int j) const { return std::isnan((*this)(i, j)); }

TwoRowFit two_row_error(const std::vector<double>& row_a,
                        const std::vector<double>& row_b,
                        const std::vector<bool>& missing) {
  const int k = static_cast<int>(std::min(row_a.size(), row_b.size()));
  std::vector<int> cols;
  std::vector<double> d(k, kNaN);
  for (int j = 0; j < k; ++j) {
    bool gone = (!missing.empty() && missing[j]) || std::isnan(row_a[j]) ||
                std::isnan(row_b[j]);
    if (gone) continue;
    d[j] = row_a[j] - row_b[j];
    cols.push_back(j);
  }
  if (cols.size() < 2) throw TooFewColumns("two_row_error needs two shared columns");

  std::stable_sort(cols.begin(), cols.end(),
                   [&](int x, int y) { return d[x] < d[y]; });
  const double dmin = d[cols.front()];
  const double dmax = d[cols.back()];

  TwoRowFit fit;
  fit.w = 0.25 * (dmax - dmin);
  fit.h = 0.5 * (dmax + dmin);
  fit.R[0] = 0.0;
  fit.R[1] = -fit.h;

  // Smallest l with d_(l) <= h <= d_(l+1), 1-based over the sorted order.
  int split = 1;
  for (int l = 1; l < static_cast<int>(cols.size()); ++l) {
    if (d[cols[l - 1]] <= fit.h && fit.h <= d[cols[l]]) {
      split = l;
      break;
    }
  }
  fit.split = split;
  fit.C.assign(k, kNaN);
  for (int pos = 0; pos < static_cast<int>(cols.size()); ++pos) {
    int j = cols[pos];
    // Split the deviation d_j - h evenly between the two rows.
    fit.C[j] = row_a[j] - 0.5 * (d[j] - fit.h);
  }
  return fit;
}

double profile_residual(const Submatrix& b, const std::vector<double>& R,
                        const std::vector<double>& C) {
  double worst = 0.0;
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double x = b(i, j);
      if (std::isnan(x)) continue;
      worst = std::max(worst, std::fabs(R[i] + C[j] - x));
    }
  }
  return worst;
}

ProfilePair fit_profiles(const Submatrix& b, const FitOptions& opt,
                         std::vector<double>* trace) {
  require_nonempty_lines(b);

  // Start from the best of: R = 0, or R taken from one fully present column.
  // The column start matters for mined clusters, whose column phase certifies
  // a 2w fit relative to the anchor column.
  std::vector<double> R(b.rows, 0.0), C(b.cols, 0.0);
  double best = update_columns(b, R, C);
  std::vector<double> best_R = R;
  std::vector<double> cand(b.rows), scratch(b.cols);
  for (int k = 0; k < b.cols; ++k) {
    bool full = true;
    for (int i = 0; i < b.rows && full; ++i) {
      if (b.missing(i, k)) full = false;
      else cand[i] = b(i, k);
    }
    if (!full) continue;
    double e = update_columns(b, cand, scratch);
    if (e < best) {
      best = e;
      best_R = cand;
    }
  }
  R = best_R;
  double w = update_columns(b, R, C);
  if (trace) trace->push_back(w);

  ProfilePair out;
  int it = 0;
  while (it < opt.max_iter) {
    std::vector<double> R_next = R, C_next = C;
    update_rows(b, C_next, R_next);
    double w_next = update_columns(b, R_next, C_next);
    ++it;
    if (trace) trace->push_back(std::min(w_next, w));
    if (w_next <= w) {
      R.swap(R_next);
      C.swap(C_next);
    }
    double gain = w - w_next;
    w = std::min(w, w_next);
    if (gain < opt.tol) break;
  }
  out.R = std::move(R);
  out.C = std::move(C);
  out.w_star = profile_residual(b, out.R, out.C);
  out.iterations = it;
  return out;
}

double brute_force_error(const Submatrix& b, double grid_step) {
  // Two rows search a single offset, so wider inputs stay cheap.
  if (b.rows > 4 || b.cols > (b.rows <= 2 ? 10 : 6)) {
    throw TooLarge("brute_force_error is limited to 4x6 (2x10 for two rows)");
  }
  if (!(grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  require_nonempty_lines(b);

  std::vector<double> R(b.rows, 0.0), C(b.cols, 0.0);
  if (b.rows == 1) return update_columns(b, R, C);

  double gmin = kInf, gmax = -kInf;
  for (double x : b.v) {
    if (std::isnan(x)) continue;
    gmin = std::min(gmin, x);
    gmax = std::max(gmax, x);
  }
  std::vector<double> dl(b.rows, kInf), dh(b.rows, -kInf);
  for (int i = 1; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      if (b.missing(i, j) || b.missing(0, j)) continue;
      const double d = b(i, j) - b(0, j);
      dl[i] = std::min(dl[i], d);
      dh[i] = std::max(dh[i], d);
    }
  }

  // Upper bound from R = 0 or from R_i at the midrange of its differences.
  double w_ub = update_columns(b, R, C);
  for (int i = 1; i < b.rows; ++i) R[i] = dl[i] <= dh[i] ? 0.5 * (dl[i] + dh[i]) : 0.0;
  w_ub = std::min(w_ub, update_columns(b, R, C));

  // With R_0 = 0, an optimum has R_i within 2w* of B_ij - B_0j for every
  // column shared with row 0, and w* <= w_ub.
  std::vector<double> lo(b.rows, 0.0), hi(b.rows, 0.0);
  for (int i = 1; i < b.rows; ++i) {
    if (dl[i] > dh[i]) {
      // No column shared with row 0: any offset that keeps values in range.
      lo[i] = gmin - gmax - grid_step;
      hi[i] = gmax - gmin + grid_step;
      continue;
    }
    // Every shared column pins R_i to [d_j - 2w*, d_j + 2w*]; intersect them.
    lo[i] = dh[i] - 2.0 * w_ub - grid_step;
    hi[i] = dl[i] + 2.0 * w_ub + grid_step;
  }

  std::vector<long> steps(b.rows, 0), idx(b.rows, 0);
  for (int i = 1; i < b.rows; ++i) {
    steps[i] = static_cast<long>(std::ceil((hi[i] - lo[i]) / grid_step)) + 1;
  }
  double best = w_ub;
  for (;;) {
    for (int i = 1; i < b.rows; ++i) R[i] = lo[i] + grid_step * static_cast<double>(idx[i]);
    best = std::min(best, update_columns(b, R, C));
    int d = 1;
    while (d < b.rows) {
      if (++idx[d] < steps[d]) break;
      idx[d] = 0;
      ++d;
    }
    if (d == b.rows) break;
  }
  return best;
}

}  // namespace flagmine
