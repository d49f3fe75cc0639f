#pragma once

#include <cstdint>

namespace flagmine::detail {

// Row-phase prefilter over lags t in [t_lo, t_hi]. Every group position
// s[g] + t + f with |f| <= fk[g] must be in range for these lags. Writes
// out[t - t_lo] = 0 only for lags that cannot be feasible.
struct RowPrefilterArgs {
  const double* row;          // candidate row
  const int* s;               // per group column
  const double* anchor_val;   // per group A[p][s]
  const int* fk;              // per group fuzz bound
  int groups;
  double width;
  bool sum;
  int t_lo;
  int t_hi;
  std::uint8_t* out;
};

// Column-phase prefilter over columns j in [j_lo, j_hi]; all positions
// j + lag[r] + f (|f| <= fk[r]) must be in range.
struct ColumnPrefilterArgs {
  const double* const* rows;  // per cluster row: pointer to matrix row
  const int* lags;
  const double* ref;
  const double* sign;
  const int* fk;
  int nrows;
  int anchor;                 // index into rows; fk[anchor] == 0
  double width;
  int j_lo;
  int j_hi;
  std::uint8_t* out;
};

void row_prefilter_avx2(const RowPrefilterArgs& a);
void column_prefilter_avx2(const ColumnPrefilterArgs& a);

}  // namespace flagmine::detail
