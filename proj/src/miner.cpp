#include "flagmine/miner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <limits>
#include <thread>
#include <tuple>

#include "flagmine/error.hpp"

namespace flagmine {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

int ceil_fraction(double beta, int total) {
  return static_cast<int>(std::ceil(beta * static_cast<double>(total) - 1e-12));
}

}  // namespace

DiscSetSize default_disc_set_size(int m, int n) {
  DiscSetSize out;
  out.exact = 0.6197 * std::log2(4.0 * m * n) - 1.0063;
  int r = static_cast<int>(std::floor(out.exact + 0.5));
  out.recommended = std::clamp(r, 2, std::max(2, n));
  return out;
}

double theoretical_disc_set_size(int m, int n, double beta_j_upper, int max_fuzz) {
  const double base = 3.0 * beta_j_upper * (2.0 * max_fuzz + 1.0);
  if (!(base > 0.0 && base < 1.0)) {
    throw ConfigError("theoretical |S| needs 0 < 3 beta_J' (2F+1) < 1");
  }
  return std::log(4.0 * m * n) / std::log(1.0 / base);
}

double calibrated_disc_prob(int disc_size) {
  static const double table[] = {0.082, 0.408, 0.743, 0.894, 0.941, 0.956};  // |S| = 4..9
  int k = std::clamp(disc_size, 4, 9) - 4;
  return table[k];
}

std::uint64_t default_iterations(double beta_I, double beta_J, int disc_size, double disc_prob) {
  if (!(beta_I > 0.0 && beta_I <= 1.0) || !(beta_J > 0.0 && beta_J <= 1.0)) {
    throw ConfigError("beta fractions must lie in (0,1]");
  }
  if (!(disc_prob > 0.0 && disc_prob <= 1.0)) throw ConfigError("disc_prob must lie in (0,1]");
  if (disc_size < 0) throw ConfigError("disc_size must be nonnegative");
  const long double rho = (1.0L / disc_prob) * 2.0L * std::log(2.0L) /
                          (static_cast<long double>(beta_I) *
                           std::pow(static_cast<long double>(beta_J), disc_size));
  if (rho > std::ldexp(1.0L, 48)) {
    throw CapExceeded("iteration count exceeds 2^48; use a smaller |S|");
  }
  return static_cast<std::uint64_t>(std::ceil(rho));
}

double expected_hit_rate(double disc_prob) { return 1.0 - std::pow(0.25, disc_prob); }

ResolvedConfig resolve_config(const DataMatrix& a, const MinerConfig& cfg) {
  ResolvedConfig rc;
  rc.cfg = cfg;
  rc.m = a.rows();
  rc.n = a.cols();
  if (rc.m < 2 || rc.n < 2) throw ConfigError("matrix must be at least 2x2");
  if (!(cfg.w >= 0.0) || !std::isfinite(cfg.w)) throw ConfigError("w must be finite and >= 0");
  if (!(cfg.beta_I > 0.0 && cfg.beta_I <= 1.0)) throw ConfigError("beta_I must lie in (0,1]");
  if (!(cfg.beta_J > 0.0 && cfg.beta_J <= 1.0)) throw ConfigError("beta_J must lie in (0,1]");
  if (!(cfg.nu >= 0.0 && cfg.nu <= 1.0)) throw ConfigError("nu must lie in [0,1]");
  rc.min_rows = ceil_fraction(cfg.beta_I, rc.m);
  rc.min_cols = ceil_fraction(cfg.beta_J, rc.n);
  if (rc.min_rows < 2) throw ConfigError("ceil(beta_I * m) must be at least 2");
  if (rc.min_cols < 2) throw ConfigError("ceil(beta_J * n) must be at least 2");

  if (cfg.disc_set_size > 0) {
    rc.disc_size = cfg.disc_set_size;
  } else if (cfg.beta_J_upper) {
    double t = theoretical_disc_set_size(rc.m, rc.n, *cfg.beta_J_upper,
                                         cfg.row_fuzz.empty()
                                             ? cfg.max_fuzz
                                             : *std::max_element(cfg.row_fuzz.begin(), cfg.row_fuzz.end()));
    rc.disc_size = std::clamp(static_cast<int>(std::ceil(t)), 2, rc.n);
  } else {
    rc.disc_size = default_disc_set_size(rc.m, rc.n).recommended;
  }
  if (rc.disc_size < 1 || rc.disc_size > rc.n) throw ConfigError("|S| must lie in [1, n]");
  if (cfg.sfz_size < 0) throw ConfigError("|S0| must be nonnegative");
  rc.sfz_size = std::min(cfg.sfz_size, rc.disc_size);

  if (!cfg.row_fuzz.empty()) {
    if (static_cast<int>(cfg.row_fuzz.size()) != rc.m) {
      throw ConfigError("per-row fuzz needs one entry per matrix row");
    }
    rc.row_fuzz = cfg.row_fuzz;
  } else {
    rc.row_fuzz.assign(static_cast<std::size_t>(rc.m), cfg.max_fuzz);
  }
  for (int f : rc.row_fuzz) {
    if (f < 0) throw ConfigError("fuzz bounds must be nonnegative");
  }

  if (cfg.iterations > 0) {
    rc.iterations = cfg.iterations;
  } else {
    double p = cfg.disc_prob > 0.0 ? cfg.disc_prob : calibrated_disc_prob(rc.disc_size);
    rc.iterations = default_iterations(cfg.beta_I, cfg.beta_J, rc.disc_size, p);
  }
  if (cfg.objective.kind == Objective::Kind::kPsi) objective_score(2, 2, cfg.objective);
  rc.kernel = resolve_kernel(cfg.kernel, a);
  return rc;
}

SeedChoice draw_seed(Rng& rng, int m, int n, int disc_size, int sfz_size) {
  SeedChoice s;
  s.anchor = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
  s.S = rng.sample(n, disc_size);
  for (int k : rng.sample(disc_size, sfz_size)) s.S0.push_back(s.S[k]);
  s.anchor_col = s.S[rng.below(static_cast<std::uint64_t>(disc_size))];
  return s;
}

namespace {

struct LagSupport {
  int matched = 0;
  long fuzz_cost = 0;
};

// Agreement of row i at lag t with the anchor over every column: the number
// of columns with a witness within 2w of the seed-window offset, and the
// total |f| of the least-fuzzy such witnesses.
LagSupport lag_support(const DataMatrix& a, const SeedChoice& seed, int i, const RowWitness& wit,
                       double w, int max_fuzz, bool sum) {
  const int n = a.cols();
  const int p = seed.anchor;
  auto event = [&](int j, int pos) { return sum ? a(p, j) + a(i, pos) : a(i, pos) - a(p, j); };
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t g = 0; g < seed.S.size(); ++g) {
    const int s = seed.S[g];
    const int pos = s + wit.lag + wit.fuzz[g];
    if (a.missing(p, s) || pos < 0 || pos >= n || a.missing(i, pos)) continue;
    const double e = event(s, pos);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  LagSupport out;
  if (lo > hi) return out;
  const double mid = 0.5 * (lo + hi);
  for (int j = 0; j < n; ++j) {
    if (a.missing(p, j)) continue;
    for (int d = 0; d <= max_fuzz; ++d) {
      bool hit = false;
      for (int f : {-d, d}) {
        const int pos = j + wit.lag + f;
        if (pos < 0 || pos >= n || a.missing(i, pos)) continue;
        if (std::abs(event(j, pos) - mid) <= 2.0 * w) hit = true;
        if (d == 0) break;
      }
      if (hit) {
        ++out.matched;
        out.fuzz_cost += d;
        break;
      }
    }
  }
  return out;
}

// Among all feasible lags, prefers the one best supported across the whole
// row; the smallest |t| (ties to negative) breaks remaining ties.
std::optional<RowWitness> choose_lag(RowScanner& scan, const DataMatrix& a, const SeedChoice& seed,
                                     int i, int max_fuzz, double w, bool sum,
                                     std::vector<std::uint8_t>& lags) {
  std::optional<RowWitness> first = scan.scan(i, max_fuzz);
  if (!first || max_fuzz == 0) return first;
  scan.feasible_lags(i, max_fuzz, lags);
  const int n = a.cols();
  RowWitness best = *first;
  LagSupport best_s = lag_support(a, seed, i, best, w, max_fuzz, sum);
  for (int d = 1; d < n; ++d) {
    for (int t : {-d, d}) {
      if (t == first->lag || !lags[t + n - 1]) continue;
      std::optional<RowWitness> alt = scan.witness_at(i, max_fuzz, t);
      if (!alt) continue;
      const LagSupport s = lag_support(a, seed, i, *alt, w, max_fuzz, sum);
      if (s.matched > best_s.matched ||
          (s.matched == best_s.matched && s.fuzz_cost < best_s.fuzz_cost)) {
        best = std::move(*alt);
        best_s = s;
      }
    }
  }
  return best;
}

}  // namespace

RowPhaseResult row_addition(const DataMatrix& a, const SeedChoice& seed, double w,
                            const std::vector<int>& row_fuzz, bool anti, double nu,
                            KernelLevel kernel, int min_rows) {
  RowProblem base;
  base.a = &a;
  base.anchor = seed.anchor;
  base.S = seed.S;
  base.rigid.resize(seed.S.size());
  for (std::size_t g = 0; g < seed.S.size(); ++g) {
    base.rigid[g] = std::binary_search(seed.S0.begin(), seed.S0.end(), seed.S[g]) ? 1 : 0;
  }
  base.width = 4.0 * w;
  base.nu = nu;
  RowProblem flipped = base;
  flipped.sum = true;
  RowScanner scan(base, kernel);
  RowScanner scan_anti(flipped, kernel);

  RowPhaseResult out;
  const int m = a.rows();
  std::vector<std::uint8_t> lag_buf;
  for (int i = 0; i < m; ++i) {
    if (i == seed.anchor) {
      out.rows.push_back(i);
      out.lags.push_back(0);
      out.fuzz.emplace_back(seed.S.size(), 0);
      out.anti.push_back(0);
    } else {
      std::optional<RowWitness> hit =
          choose_lag(scan, a, seed, i, row_fuzz[i], w, false, lag_buf);
      bool is_anti = false;
      if (!hit && anti) {
        hit = choose_lag(scan_anti, a, seed, i, row_fuzz[i], w, true, lag_buf);
        is_anti = hit.has_value();
      }
      if (hit) {
        out.rows.push_back(i);
        out.lags.push_back(hit->lag);
        out.fuzz.push_back(std::move(hit->fuzz));
        out.anti.push_back(is_anti ? 1 : 0);
      }
    }
    if (min_rows > 0 && static_cast<int>(out.rows.size()) + (m - 1 - i) < min_rows) {
      out.aborted = true;
      return out;
    }
  }
  return out;
}

ColumnPhaseResult column_addition(const DataMatrix& a, const SeedChoice& seed,
                                  const RowPhaseResult& rows, double w,
                                  const std::vector<int>& row_fuzz, double nu,
                                  KernelLevel kernel) {
  ColumnPhaseResult out;
  const int n = a.cols();
  const int g0 = static_cast<int>(std::lower_bound(seed.S.begin(), seed.S.end(), seed.anchor_col) -
                                  seed.S.begin());
  ColumnProblem cp;
  cp.a = &a;
  std::vector<int> s0_fuzz;
  for (std::size_t r = 0; r < rows.rows.size(); ++r) {
    const int i = rows.rows[r];
    const int f = rows.fuzz[r][g0];
    const int pos = seed.anchor_col + rows.lags[r] + f;
    if (pos < 0 || pos >= n || a.missing(i, pos)) {
      if (i == seed.anchor) return out;
      continue;  // no witness at s0 to align against
    }
    if (i == seed.anchor) cp.anchor_index = static_cast<int>(cp.rows.size());
    cp.rows.push_back(i);
    cp.lags.push_back(rows.lags[r]);
    cp.ref.push_back(a(i, pos));
    cp.sign.push_back(rows.anti[r] ? -1.0 : 1.0);
    cp.max_fuzz.push_back(i == seed.anchor ? 0 : row_fuzz[i]);
    s0_fuzz.push_back(f);
    out.anti.push_back(rows.anti[r]);
  }
  cp.width = 4.0 * w;
  cp.nu = nu;
  out.rows = cp.rows;
  out.lags = cp.lags;

  ColumnScanner scanner(cp, kernel);
  std::vector<ColumnWitness> accepted = scanner.scan_all();
  bool have_s0 = false;
  for (ColumnWitness& cw : accepted) {
    if (cw.col == seed.anchor_col) {
      cw.fuzz = s0_fuzz;
      have_s0 = true;
    }
  }
  if (!have_s0) {
    accepted.push_back({seed.anchor_col, s0_fuzz});
    std::sort(accepted.begin(), accepted.end(),
              [](const ColumnWitness& x, const ColumnWitness& y) { return x.col < y.col; });
  }
  out.fuzz.assign(cp.rows.size(), {});
  for (const ColumnWitness& cw : accepted) {
    out.cols.push_back(cw.col);
    for (std::size_t r = 0; r < cp.rows.size(); ++r) out.fuzz[r].push_back(cw.fuzz[r]);
  }
  return out;
}

std::optional<FuzzyLaggedCluster> mine_iteration(const DataMatrix& a, const ResolvedConfig& rc,
                                                 std::uint64_t index, IterationStats* stats) {
  Rng rng(derive_seed(rc.cfg.seed, "iteration", index));
  const SeedChoice seed = draw_seed(rng, rc.m, rc.n, rc.disc_size, rc.sfz_size);

  auto t0 = Clock::now();
  RowPhaseResult rows = row_addition(a, seed, rc.cfg.w, rc.row_fuzz, rc.cfg.anti, rc.cfg.nu,
                                     rc.kernel, rc.min_rows);
  if (stats) stats->row_phase_ns += elapsed_ns(t0);
  if (rows.aborted || static_cast<int>(rows.rows.size()) < rc.min_rows) return std::nullopt;

  auto t1 = Clock::now();
  ColumnPhaseResult cols = column_addition(a, seed, rows, rc.cfg.w, rc.row_fuzz, rc.cfg.nu,
                                           rc.kernel);
  if (stats) {
    stats->col_phase_ns += elapsed_ns(t1);
    ++stats->column_phases;
  }
  if (static_cast<int>(cols.rows.size()) < rc.min_rows ||
      static_cast<int>(cols.cols.size()) < rc.min_cols) {
    return std::nullopt;
  }

  FuzzyLaggedCluster c;
  c.rows = cols.rows;
  c.lags = cols.lags;
  c.cols = cols.cols;
  c.anchor = seed.anchor;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    c.max_fuzz = std::max(c.max_fuzz, rc.row_fuzz[c.rows[r]]);
    if (cols.anti[r]) c.anti_rows.push_back(c.rows[r]);
    for (std::size_t k = 0; k < c.cols.size(); ++k) {
      if (cols.fuzz[r][k] != 0) c.fuzz[{c.rows[r], c.cols[k]}] = cols.fuzz[r][k];
    }
  }
  return c;
}

int workers_from_env(int fallback) {
  if (const char* env = std::getenv("FLAGMINE_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return fallback;
}

std::vector<FuzzyLaggedCluster> mine(const DataMatrix& a, const MinerConfig& cfg,
                                     MineStats* stats) {
  const ResolvedConfig rc = resolve_config(a, cfg);
  const int workers = std::max(1, cfg.workers);

  std::vector<std::vector<std::pair<std::uint64_t, FuzzyLaggedCluster>>> found(
      static_cast<std::size_t>(workers));
  std::vector<IterationStats> phase(static_cast<std::size_t>(workers));
  auto run = [&](int wid) {
    for (std::uint64_t k = static_cast<std::uint64_t>(wid); k < rc.iterations;
         k += static_cast<std::uint64_t>(workers)) {
      if (auto c = mine_iteration(a, rc, k, &phase[wid])) found[wid].emplace_back(k, std::move(*c));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int wid = 0; wid < workers; ++wid) pool.emplace_back(run, wid);
    for (auto& t : pool) t.join();
  }

  std::vector<std::pair<std::uint64_t, FuzzyLaggedCluster>> all;
  for (auto& v : found) {
    for (auto& e : v) all.push_back(std::move(e));
  }
  std::sort(all.begin(), all.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  using Key = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>;
  std::map<Key, bool> seen;
  std::vector<FuzzyLaggedCluster> out;
  MineStats st;
  st.iterations = rc.iterations;
  st.raw_clusters = all.size();
  for (auto& [k, c] : all) {
    if (!seen.emplace(Key{c.rows, c.lags, c.cols}, true).second) continue;
    VerifyResult v = verify_cluster(a, c, 2.0 * rc.cfg.w);
    if (!v.valid) {
      ++st.verify_failures;
      continue;
    }
    c.achieved_error = v.achieved_error;
    c.objective = objective_score(static_cast<int>(c.rows.size()), static_cast<int>(c.cols.size()),
                                  rc.cfg.objective);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const FuzzyLaggedCluster& x, const FuzzyLaggedCluster& y) {
    if (x.objective != y.objective) return x.objective > y.objective;
    return std::tie(x.rows, x.cols, x.lags) < std::tie(y.rows, y.cols, y.lags);
  });
  for (const auto& p : phase) {
    st.phases.row_phase_ns += p.row_phase_ns;
    st.phases.col_phase_ns += p.col_phase_ns;
    st.phases.column_phases += p.column_phases;
  }
  if (stats) *stats = st;
  return out;
}

}  // namespace flagmine
