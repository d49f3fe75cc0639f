#include "flagmine/window.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "window_internal.hpp"

namespace flagmine {

namespace {

enum GroupStatus { kImpossible = 0, kExcused = 1, kActive = 2 };

bool prefer_fuzz(int f, int best) {
  int af = std::abs(f), ab = std::abs(best);
  return af < ab || (af == ab && f < best);
}

bool enough(int active, int total, double nu) {
  return active >= 1 && static_cast<double>(active) >= nu * static_cast<double>(total);
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelLevel resolve_kernel(KernelLevel requested, const DataMatrix& a) {
  KernelLevel k = requested;
  if (k == KernelLevel::kAuto) k = cpu_has_avx2() ? KernelLevel::kAvx2 : KernelLevel::kScalar;
  if (k == KernelLevel::kAvx2 && (!cpu_has_avx2() || a.has_missing())) k = KernelLevel::kScalar;
  return k;
}

const char* kernel_name(KernelLevel k) {
  switch (k) {
    case KernelLevel::kAuto: return "auto";
    case KernelLevel::kReference: return "reference";
    case KernelLevel::kScalar: return "scalar";
    case KernelLevel::kAvx2: return "avx2";
  }
  return "?";
}

// ---------------------------------------------------------------- rows

RowScanner::RowScanner(const RowProblem& problem, KernelLevel level)
    : p_(problem), level_(resolve_kernel(level, *problem.a)) {}

bool RowScanner::check_lag(int row, int max_fuzz, int t, RowWitness* witness) {
  const DataMatrix& a = *p_.a;
  const int n = a.cols();
  const int G = static_cast<int>(p_.S.size());
  cand_.clear();
  status_.assign(static_cast<std::size_t>(G), kExcused);
  int active = 0;
  for (int g = 0; g < G; ++g) {
    const int s = p_.S[g];
    if (a.missing(p_.anchor, s)) continue;
    const double ap = a(p_.anchor, s);
    const int fg = p_.rigid[g] ? 0 : max_fuzz;
    bool in_range = false, has = false;
    for (int f = -fg; f <= fg; ++f) {
      const int pos = s + t + f;
      if (pos < 0 || pos >= n) continue;
      in_range = true;
      if (a.missing(row, pos)) continue;
      const double x = a(row, pos);
      cand_.push_back({p_.sum ? ap + x : x - ap, f, g});
      has = true;
    }
    if (!in_range) return false;
    if (has) {
      status_[g] = kActive;
      ++active;
    }
  }
  if (!enough(active, G, p_.nu)) return false;

  std::sort(cand_.begin(), cand_.end(), [](const Cand& x, const Cand& y) { return x.v < y.v; });
  std::vector<int>& seen = cnt_;
  seen.assign(static_cast<std::size_t>(G), -1);
  const int K = static_cast<int>(cand_.size());
  for (int lo = 0; lo < K; ++lo) {
    if (lo > 0 && cand_[lo].v == cand_[lo - 1].v) continue;
    const double base = cand_[lo].v;
    int covered = 0;
    int hi = lo;
    for (; hi < K && cand_[hi].v - base <= p_.width; ++hi) {
      if (seen[cand_[hi].g] != lo) {
        seen[cand_[hi].g] = lo;
        ++covered;
      }
    }
    if (covered != active) continue;
    if (witness) {
      witness->lag = t;
      witness->fuzz.assign(static_cast<std::size_t>(G), 0);
      std::vector<int> set(static_cast<std::size_t>(G), 0);
      for (int k = lo; k < hi; ++k) {
        const Cand& c = cand_[k];
        if (!set[c.g] || prefer_fuzz(c.f, witness->fuzz[c.g])) {
          witness->fuzz[c.g] = c.f;
          set[c.g] = 1;
        }
      }
    }
    return true;
  }
  return false;
}

void RowScanner::sweep(int row, int max_fuzz, std::vector<std::uint8_t>& out) {
  const DataMatrix& a = *p_.a;
  const int n = a.cols();
  const int G = static_cast<int>(p_.S.size());
  const int L = 2 * n - 1;
  out.assign(static_cast<std::size_t>(L), 0);

  // Per-lag witness requirements.
  status_.assign(static_cast<std::size_t>(L) * G, kExcused);
  required_.assign(static_cast<std::size_t>(L), 0);
  std::vector<std::uint8_t> valid(static_cast<std::size_t>(L), 1);
  for (int li = 0; li < L; ++li) {
    const int t = li - (n - 1);
    for (int g = 0; g < G; ++g) {
      const int s = p_.S[g];
      if (a.missing(p_.anchor, s)) continue;
      const int fg = p_.rigid[g] ? 0 : max_fuzz;
      bool in_range = false, has = false;
      for (int f = -fg; f <= fg; ++f) {
        const int pos = s + t + f;
        if (pos < 0 || pos >= n) continue;
        in_range = true;
        if (!a.missing(row, pos)) has = true;
      }
      if (!in_range) {
        valid[li] = 0;
      } else if (has) {
        status_[static_cast<std::size_t>(li) * G + g] = kActive;
        ++required_[li];
      }
    }
    if (!enough(required_[li], G, p_.nu)) valid[li] = 0;
  }

  // Events e_{s,j,f} = A[row][j+f] - A[p][s] for every base column j.
  events_.clear();
  for (int g = 0; g < G; ++g) {
    const int s = p_.S[g];
    if (a.missing(p_.anchor, s)) continue;
    const double ap = a(p_.anchor, s);
    const int fg = p_.rigid[g] ? 0 : max_fuzz;
    // Base columns outside the matrix still reach it through fuzz.
    for (int j = -fg; j < n + fg; ++j) {
      if (j - s < -(n - 1) || j - s > n - 1) continue;
      for (int f = -fg; f <= fg; ++f) {
        const int pos = j + f;
        if (pos < 0 || pos >= n || a.missing(row, pos)) continue;
        const double x = a(row, pos);
        events_.push_back({p_.sum ? ap + x : x - ap, j - s, g});
      }
    }
  }
  last_events_ = events_.size();
  std::sort(events_.begin(), events_.end(),
            [](const Event& x, const Event& y) { return x.v < y.v; });

  cnt_.assign(static_cast<std::size_t>(L) * G, 0);
  covered_.assign(static_cast<std::size_t>(L), 0);
  const int E = static_cast<int>(events_.size());
  int hi = 0;
  for (int lo = 0; lo < E; ++lo) {
    while (hi < E && events_[hi].v - events_[lo].v <= p_.width) {
      const Event& e = events_[hi];
      const int li = e.t + n - 1;
      if (cnt_[static_cast<std::size_t>(li) * G + e.g]++ == 0) {
        if (++covered_[li] == required_[li] && valid[li]) out[li] = 1;
      }
      ++hi;
    }
    const Event& e = events_[lo];
    const int li = e.t + n - 1;
    if (--cnt_[static_cast<std::size_t>(li) * G + e.g] == 0) --covered_[li];
  }
}

void RowScanner::lag_scan(int row, int max_fuzz, std::vector<std::uint8_t>& out) {
  const int n = p_.a->cols();
  out.assign(static_cast<std::size_t>(2 * n - 1), 0);
  for (int t = -(n - 1); t <= n - 1; ++t) {
    out[t + n - 1] = check_lag(row, max_fuzz, t, nullptr) ? 1 : 0;
  }
}

void RowScanner::feasible_lags(int row, int max_fuzz, std::vector<std::uint8_t>& out) {
  const int n = p_.a->cols();
  if (level_ == KernelLevel::kReference) {
    sweep(row, max_fuzz, out);
    return;
  }
  if (level_ == KernelLevel::kScalar) {
    lag_scan(row, max_fuzz, out);
    return;
  }
  out.assign(static_cast<std::size_t>(2 * n - 1), 0);
  std::vector<std::uint8_t> maybe;
  int t_lo = 0, t_hi = -1;
  const int G = static_cast<int>(p_.S.size());
  std::vector<double> av(static_cast<std::size_t>(G));
  std::vector<int> fk(static_cast<std::size_t>(G));
  t_lo = -(n - 1);
  t_hi = n - 1;
  for (int g = 0; g < G; ++g) {
    av[g] = (*p_.a)(p_.anchor, p_.S[g]);
    fk[g] = p_.rigid[g] ? 0 : max_fuzz;
    t_lo = std::max(t_lo, fk[g] - p_.S[g]);
    t_hi = std::min(t_hi, n - 1 - fk[g] - p_.S[g]);
  }
  if (t_lo <= t_hi) {
    maybe.assign(static_cast<std::size_t>(t_hi - t_lo + 1), 1);
    detail::row_prefilter_avx2({p_.a->row(row), p_.S.data(), av.data(), fk.data(), G,
                                p_.width, p_.sum, t_lo, t_hi, maybe.data()});
  }
  for (int t = -(n - 1); t <= n - 1; ++t) {
    if (t >= t_lo && t <= t_hi && !maybe[t - t_lo]) continue;
    out[t + n - 1] = check_lag(row, max_fuzz, t, nullptr) ? 1 : 0;
  }
}

std::optional<RowWitness> RowScanner::witness_at(int row, int max_fuzz, int t) {
  RowWitness w;
  if (check_lag(row, max_fuzz, t, &w)) return w;
  return std::nullopt;
}

std::optional<RowWitness> RowScanner::scan(int row, int max_fuzz) {
  const int n = p_.a->cols();
  RowWitness w;
  if (level_ == KernelLevel::kReference) {
    std::vector<std::uint8_t> ok;
    sweep(row, max_fuzz, ok);
    for (int d = 0; d <= n - 1; ++d) {
      for (int t : {-d, d}) {
        if (ok[t + n - 1] && check_lag(row, max_fuzz, t, &w)) return w;
        if (d == 0) break;
      }
    }
    return std::nullopt;
  }

  // Lag-major kernels only visit lags where every group can be in range.
  const DataMatrix& a = *p_.a;
  const int G = static_cast<int>(p_.S.size());
  int lo = -(n - 1), hi = n - 1;
  for (int g = 0; g < G; ++g) {
    if (a.missing(p_.anchor, p_.S[g])) continue;
    const int fg = p_.rigid[g] ? 0 : max_fuzz;
    lo = std::max(lo, -p_.S[g] - fg);
    hi = std::min(hi, n - 1 - p_.S[g] + fg);
  }
  if (lo > hi) return std::nullopt;

  std::vector<std::uint8_t> maybe;
  int t_lo = 0, t_hi = -1;
  if (level_ == KernelLevel::kAvx2) {
    std::vector<double> av(static_cast<std::size_t>(G));
    std::vector<int> fk(static_cast<std::size_t>(G));
    t_lo = lo;
    t_hi = hi;
    for (int g = 0; g < G; ++g) {
      av[g] = a(p_.anchor, p_.S[g]);
      fk[g] = p_.rigid[g] ? 0 : max_fuzz;
      t_lo = std::max(t_lo, fk[g] - p_.S[g]);
      t_hi = std::min(t_hi, n - 1 - fk[g] - p_.S[g]);
    }
    if (t_lo <= t_hi) {
      maybe.assign(static_cast<std::size_t>(t_hi - t_lo + 1), 1);
      detail::row_prefilter_avx2({a.row(row), p_.S.data(), av.data(), fk.data(), G, p_.width,
                                  p_.sum, t_lo, t_hi, maybe.data()});
    }
  }
  const int reach = std::max(std::abs(lo), std::abs(hi));
  for (int d = 0; d <= reach; ++d) {
    for (int t : {-d, d}) {
      if (t >= lo && t <= hi) {
        bool skip = t >= t_lo && t <= t_hi && !maybe[t - t_lo];
        if (!skip && check_lag(row, max_fuzz, t, &w)) return w;
      }
      if (d == 0) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- columns

ColumnScanner::ColumnScanner(const ColumnProblem& problem, KernelLevel level)
    : p_(problem), level_(resolve_kernel(level, *problem.a)) {}

std::optional<ColumnWitness> ColumnScanner::scan(int col) {
  const DataMatrix& a = *p_.a;
  const int n = a.cols();
  const int R = static_cast<int>(p_.rows.size());
  events_.clear();
  int active = 0;
  for (int r = 0; r < R; ++r) {
    const int i = p_.rows[r];
    const int fr = p_.max_fuzz[r];
    bool in_range = false, has = false;
    for (int f = -fr; f <= fr; ++f) {
      const int pos = col + p_.lags[r] + f;
      if (pos < 0 || pos >= n) continue;
      in_range = true;
      if (a.missing(i, pos)) continue;
      events_.push_back({p_.sign[r] * (a(i, pos) - p_.ref[r]), r, f});
      has = true;
    }
    if (!in_range) return std::nullopt;
    if (has) ++active;
  }
  last_events_ = events_.size();
  if (!enough(active, R, p_.nu)) return std::nullopt;

  std::sort(events_.begin(), events_.end(),
            [](const Event& x, const Event& y) { return x.v < y.v; });
  cnt_.assign(static_cast<std::size_t>(R), 0);
  const int E = static_cast<int>(events_.size());
  int covered = 0;
  int hi = 0;
  for (int lo = 0; lo < E; ++lo) {
    bool full = false;
    while (hi < E && events_[hi].v - events_[lo].v <= p_.width) {
      if (cnt_[events_[hi].r]++ == 0 && ++covered == active) full = true;
      ++hi;
    }
    if (full || covered == active) {
      ColumnWitness w;
      w.col = col;
      w.fuzz.assign(static_cast<std::size_t>(R), 0);
      std::vector<std::uint8_t> set(static_cast<std::size_t>(R), 0);
      for (int k = lo; k < hi; ++k) {
        const Event& e = events_[k];
        if (!set[e.r] || prefer_fuzz(e.f, w.fuzz[e.r])) {
          w.fuzz[e.r] = e.f;
          set[e.r] = 1;
        }
      }
      return w;
    }
    if (--cnt_[events_[lo].r] == 0) --covered;
  }
  return std::nullopt;
}

std::vector<ColumnWitness> ColumnScanner::scan_all() {
  const DataMatrix& a = *p_.a;
  const int n = a.cols();
  const int R = static_cast<int>(p_.rows.size());
  std::vector<std::uint8_t> maybe;
  int j_lo = 0, j_hi = -1;
  if (level_ == KernelLevel::kAvx2) {
    j_lo = 0;
    j_hi = n - 1;
    for (int r = 0; r < R; ++r) {
      j_lo = std::max(j_lo, p_.max_fuzz[r] - p_.lags[r]);
      j_hi = std::min(j_hi, n - 1 - p_.lags[r] - p_.max_fuzz[r]);
    }
    if (j_lo <= j_hi) {
      std::vector<const double*> ptrs(static_cast<std::size_t>(R));
      for (int r = 0; r < R; ++r) ptrs[r] = a.row(p_.rows[r]);
      maybe.assign(static_cast<std::size_t>(j_hi - j_lo + 1), 1);
      detail::column_prefilter_avx2({ptrs.data(), p_.lags.data(), p_.ref.data(), p_.sign.data(),
                                     p_.max_fuzz.data(), R, p_.anchor_index, p_.width, j_lo,
                                     j_hi, maybe.data()});
    }
  }
  std::vector<ColumnWitness> out;
  for (int j = 0; j < n; ++j) {
    if (j >= j_lo && j <= j_hi && !maybe[j - j_lo]) continue;
    if (auto w = scan(j)) out.push_back(std::move(*w));
  }
  return out;
}

}  // namespace flagmine
