// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <vector>

#include "window_internal.hpp"

namespace flagmine::detail {

namespace {

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline void store_mask(std::uint8_t* out, __m256d alive) {
  const int m = _mm256_movemask_pd(alive);
  out[0] = (m & 1) ? 1 : 0;
  out[1] = (m & 2) ? 1 : 0;
  out[2] = (m & 4) ? 1 : 0;
  out[3] = (m & 8) ? 1 : 0;
}

}  // namespace

void row_prefilter_avx2(const RowPrefilterArgs& a) {
  std::vector<int> singles, fuzzy;
  for (int g = 0; g < a.groups; ++g) (a.fk[g] == 0 ? singles : fuzzy).push_back(g);
  const __m256d width = _mm256_set1_pd(a.width);
  auto value = [&](int g, int f, int t0) {
    __m256d x = _mm256_loadu_pd(a.row + a.s[g] + f + t0);
    __m256d ap = _mm256_set1_pd(a.anchor_val[g]);
    return a.sum ? _mm256_add_pd(ap, x) : _mm256_sub_pd(x, ap);
  };

  for (int t0 = a.t_lo; t0 + 3 <= a.t_hi; t0 += 4) {
    std::uint8_t* out = a.out + (t0 - a.t_lo);
    __m256d alive;
    if (!singles.empty()) {
      __m256d mn = value(singles[0], 0, t0);
      __m256d mx = mn;
      for (std::size_t k = 1; k < singles.size(); ++k) {
        __m256d x = value(singles[k], 0, t0);
        mn = _mm256_min_pd(mn, x);
        mx = _mm256_max_pd(mx, x);
      }
      alive = _mm256_cmp_pd(_mm256_sub_pd(mx, mn), width, _CMP_LE_OQ);
      for (std::size_t k = 0; k < fuzzy.size() && _mm256_movemask_pd(alive); ++k) {
        const int g = fuzzy[k];
        __m256d any = _mm256_setzero_pd();
        for (int f = -a.fk[g]; f <= a.fk[g]; ++f) {
          __m256d x = value(g, f, t0);
          __m256d lo_ok = _mm256_cmp_pd(_mm256_sub_pd(x, mn), width, _CMP_LE_OQ);
          __m256d hi_ok = _mm256_cmp_pd(_mm256_sub_pd(mx, x), width, _CMP_LE_OQ);
          any = _mm256_or_pd(any, _mm256_and_pd(lo_ok, hi_ok));
        }
        alive = _mm256_and_pd(alive, any);
      }
    } else {
      alive = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
      const int g0 = fuzzy[0];
      for (std::size_t k = 1; k < fuzzy.size() && _mm256_movemask_pd(alive); ++k) {
        const int g = fuzzy[k];
        __m256d any = _mm256_setzero_pd();
        for (int f0 = -a.fk[g0]; f0 <= a.fk[g0]; ++f0) {
          __m256d y = value(g0, f0, t0);
          for (int f = -a.fk[g]; f <= a.fk[g]; ++f) {
            __m256d x = value(g, f, t0);
            any = _mm256_or_pd(any, _mm256_cmp_pd(abs_pd(_mm256_sub_pd(x, y)), width, _CMP_LE_OQ));
          }
        }
        alive = _mm256_and_pd(alive, any);
      }
    }
    store_mask(out, alive);
  }
}

void column_prefilter_avx2(const ColumnPrefilterArgs& a) {
  const __m256d width = _mm256_set1_pd(a.width);
  auto value = [&](int r, int f, int j0) {
    __m256d x = _mm256_loadu_pd(a.rows[r] + j0 + a.lags[r] + f);
    __m256d d = _mm256_sub_pd(x, _mm256_set1_pd(a.ref[r]));
    return _mm256_mul_pd(_mm256_set1_pd(a.sign[r]), d);
  };
  for (int j0 = a.j_lo; j0 + 3 <= a.j_hi; j0 += 4) {
    const __m256d pivot = value(a.anchor, 0, j0);
    __m256d alive = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int r = 0; r < a.nrows && _mm256_movemask_pd(alive); ++r) {
      if (r == a.anchor) continue;
      __m256d any = _mm256_setzero_pd();
      for (int f = -a.fk[r]; f <= a.fk[r]; ++f) {
        __m256d x = value(r, f, j0);
        any = _mm256_or_pd(any, _mm256_cmp_pd(abs_pd(_mm256_sub_pd(x, pivot)), width, _CMP_LE_OQ));
      }
      alive = _mm256_and_pd(alive, any);
    }
    store_mask(a.out + (j0 - a.j_lo), alive);
  }
}

}  // namespace flagmine::detail
