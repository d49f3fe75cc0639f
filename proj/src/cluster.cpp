#include "flagmine/cluster.hpp"

#include <algorithm>
#include <cmath>

#include "flagmine/error.hpp"

namespace flagmine {

double objective_score(int size_i, int size_j, const Objective& kind) {
  switch (kind.kind) {
    case Objective::Kind::kArea:
      return static_cast<double>(size_i) * static_cast<double>(size_j);
    case Objective::Kind::kPerimeter:
      return static_cast<double>(size_i) + static_cast<double>(size_j);
    case Objective::Kind::kPsi:
      if (!(kind.psi > 0.0 && kind.psi < 1.0)) {
        throw InvalidPsi("psi must lie in (0,1)");
      }
      return static_cast<double>(size_i) / std::pow(kind.psi, size_j);
  }
  return 0.0;
}

int FuzzyLaggedCluster::lag_of(int row) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), row);
  if (it == rows.end() || *it != row) {
    throw IndexOutOfRange("row " + std::to_string(row) + " is not in the cluster");
  }
  return lags[static_cast<std::size_t>(it - rows.begin())];
}

int FuzzyLaggedCluster::fuzz_at(int row, int col) const {
  auto it = fuzz.find({row, col});
  return it == fuzz.end() ? 0 : it->second;
}

bool FuzzyLaggedCluster::is_anti(int row) const {
  return std::binary_search(anti_rows.begin(), anti_rows.end(), row);
}

Submatrix aligned_submatrix(const DataMatrix& a, const FuzzyLaggedCluster& c) {
  if (c.rows.size() != c.lags.size()) {
    throw IndexOutOfRange("lag count does not match row count");
  }
  Submatrix b(static_cast<int>(c.rows.size()), static_cast<int>(c.cols.size()));
  bool any = false;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    int i = c.rows[r];
    if (i < 0 || i >= a.rows()) throw IndexOutOfRange("row index out of range");
    const double sign = c.is_anti(i) ? -1.0 : 1.0;
    for (std::size_t k = 0; k < c.cols.size(); ++k) {
      int j = c.cols[k];
      if (j < 0 || j >= a.cols()) throw IndexOutOfRange("column index out of range");
      int pos = j + c.lags[r] + c.fuzz_at(i, j);
      if (pos < 0 || pos >= a.cols() || a.missing(i, pos)) continue;
      b.at(static_cast<int>(r), static_cast<int>(k)) = sign * a(i, pos);
      any = true;
    }
  }
  if (!any) throw EmptyAlignment("every aligned entry is missing");
  return b;
}

VerifyResult verify_cluster(const DataMatrix& a, const FuzzyLaggedCluster& c,
                            double w) {
  Submatrix b = aligned_submatrix(a, c);
  VerifyResult out;
  out.profiles = fit_profiles(b);
  out.achieved_error = out.profiles.w_star;
  double scale = 1.0;
  for (double x : b.v) {
    if (!std::isnan(x)) scale = std::max(scale, std::fabs(x));
  }
  out.valid = out.achieved_error <= w + 1e-9 * scale;
  return out;
}

}  // namespace flagmine
