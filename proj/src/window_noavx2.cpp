// Non-x86 builds: the prefilters keep every lane and the scalar test decides.
#include <algorithm>

#include "window_internal.hpp"

namespace flagmine::detail {

void row_prefilter_avx2(const RowPrefilterArgs& a) {
  std::fill(a.out, a.out + (a.t_hi - a.t_lo + 1), std::uint8_t{1});
}

void column_prefilter_avx2(const ColumnPrefilterArgs& a) {
  std::fill(a.out, a.out + (a.j_hi - a.j_lo + 1), std::uint8_t{1});
}

}  // namespace flagmine::detail
