#include "flagmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flagmine/error.hpp"
#include "flagmine/rng.hpp"

namespace flagmine {

namespace {

constexpr int kMaxWindowFuzz = 8;

int ceil_count(double beta, int total) {
  return static_cast<int>(std::ceil(beta * total - 1e-12));
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Fuzz for `rows` rows over `cols` columns. Each column gets a window
// [b, b + F] with b in {-F..0} holding every row's fuzz, so fuzz relative to
// any row stays within F. Row 0 is the rigid anchor (f = 0) when
// `rigid_first`. Every other row is drawn uniformly from the assignments whose
// positions k + f never repeat; the identity is one, so one always exists.
std::vector<std::vector<int>> window_fuzz(Rng& rng, int rows, int cols, int F, bool rigid_first) {
  std::vector<std::vector<int>> f(static_cast<std::size_t>(rows), std::vector<int>(cols, 0));
  if (F == 0 || cols == 0) return f;
  if (F > kMaxWindowFuzz) throw ConfigError("fuzz above " + std::to_string(kMaxWindowFuzz));
  std::vector<int> b(static_cast<std::size_t>(cols));
  for (int& x : b) x = -static_cast<int>(rng.below(static_cast<std::uint64_t>(F) + 1));

  // Bit i of the mask before column k marks position k - F + i as used.
  const int bits = 2 * F;
  const std::size_t states = std::size_t{1} << bits;
  auto advance = [&](std::uint32_t mask, int fz, std::uint32_t& out) {
    const int idx = fz + F;
    if (idx < bits && ((mask >> idx) & 1u)) return false;
    out = static_cast<std::uint32_t>((static_cast<std::uint64_t>(mask) | (std::uint64_t{1} << idx)) >> 1);
    return true;
  };
  // ways[k][mask]: completions of columns k.. up to a per-column scale.
  std::vector<std::vector<double>> ways(static_cast<std::size_t>(cols) + 1,
                                        std::vector<double>(states, 0.0));
  std::fill(ways[cols].begin(), ways[cols].end(), 1.0);
  for (int k = cols - 1; k >= 0; --k) {
    double top = 0.0;
    for (std::size_t mask = 0; mask < states; ++mask) {
      double sum = 0.0;
      std::uint32_t next = 0;
      for (int fz = b[k]; fz <= b[k] + F; ++fz) {
        if (advance(static_cast<std::uint32_t>(mask), fz, next)) sum += ways[k + 1][next];
      }
      ways[k][mask] = sum;
      top = std::max(top, sum);
    }
    for (double& v : ways[k]) v /= top;
  }

  for (int r = rigid_first ? 1 : 0; r < rows; ++r) {
    std::uint32_t mask = 0;
    for (int k = 0; k < cols; ++k) {
      double weight[2 * kMaxWindowFuzz + 1];
      std::uint32_t nexts[2 * kMaxWindowFuzz + 1];
      double total = 0.0;
      for (int x = 0; x <= F; ++x) {
        weight[x] = advance(mask, b[k] + x, nexts[x]) ? ways[k + 1][nexts[x]] : 0.0;
        total += weight[x];
      }
      double u = rng.uniform() * total;
      int pick = F;
      while (pick > 0 && weight[pick] == 0.0) --pick;
      for (int x = 0; x <= F; ++x) {
        if (weight[x] == 0.0) continue;
        if (u < weight[x]) {
          pick = x;
          break;
        }
        u -= weight[x];
      }
      f[r][k] = b[k] + pick;
      mask = nexts[pick];
    }
  }
  return f;
}

std::vector<double> random_walk(Rng& rng, int length, double step) {
  // Uniform steps with standard deviation `step`.
  const double h = step * std::sqrt(3.0);
  std::vector<double> out(static_cast<std::size_t>(length));
  double v = 0.0;
  for (double& x : out) {
    x = v;
    v += rng.uniform(-h, h);
  }
  return out;
}

}  // namespace

DataMatrix gen_random_matrix(int m, int n, double lo, double hi, std::uint64_t seed) {
  if (m < 2 || n < 2) throw ConfigError("matrix must be at least 2x2");
  if (!(lo < hi)) throw ConfigError("value range needs lo < hi");
  Rng rng(derive_seed(seed, "matrix"));
  std::vector<double> v(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (double& x : v) {
    x = rng.uniform(lo, hi);
    if (x >= hi) x = std::nextafter(hi, lo);
  }
  return DataMatrix(m, n, std::move(v));
}

PlantResult plant_cluster(const DataMatrix& a, const PlantSpec& spec) {
  const int m = a.rows();
  const int n = a.cols();
  const int n_i = ceil_count(spec.beta_I, m);
  const int n_j = ceil_count(spec.beta_J, n);
  if (n_i < 2 || n_j < 2) throw InfeasiblePlant("planted cluster needs at least 2 rows and 2 columns");
  if (n_i > m) throw InfeasiblePlant("beta_I exceeds the row count");
  if (!(spec.lo < spec.hi)) throw InfeasiblePlant("value range needs lo < hi");
  if (spec.F < 0 || spec.F > kMaxWindowFuzz || spec.max_lag < 0 || spec.w < 0) {
    throw InfeasiblePlant("negative or oversized w, F or max_lag");
  }
  const int margin = spec.max_lag + spec.F;
  if (n_j + 2 * margin > n) {
    throw InfeasiblePlant("no room for " + std::to_string(n_j) + " columns with lag and fuzz margin " +
                          std::to_string(margin) + " in " + std::to_string(n) + " columns");
  }

  Rng rng(derive_seed(spec.seed, "plant"));
  PlantResult out{a, {}};
  GroundTruth& t = out.truth;
  FuzzyLaggedCluster& c = t.cluster;
  t.w = spec.w;
  t.F = spec.F;
  t.seed = spec.seed;
  c.max_fuzz = spec.F;
  c.rows = rng.sample(m, n_i);
  c.anchor = c.rows[rng.below(static_cast<std::uint64_t>(n_i))];
  const int offset = rng.range(margin, n - n_j - margin);
  for (int k = 0; k < n_j; ++k) c.cols.push_back(offset + k);

  const double range = spec.hi - spec.lo;
  const double q = 0.1 * range;
  double c_lo = spec.lo + q + spec.w;
  double c_hi = spec.hi - q - spec.w;
  if (!(c_lo < c_hi)) {
    c_lo = spec.lo;
    c_hi = spec.hi;
  }
  for (int k = 0; k < n_j; ++k) t.C.push_back(rng.uniform(c_lo, c_hi));

  // Row 0 of the fuzz table is the anchor.
  std::vector<int> order{c.anchor};
  for (int i : c.rows) {
    if (i != c.anchor) order.push_back(i);
  }
  const auto fuzz = window_fuzz(rng, n_i, n_j, spec.F, true);
  std::vector<int> slot(static_cast<std::size_t>(m), -1);
  for (int r = 0; r < n_i; ++r) slot[order[r]] = r;
  for (int i : c.rows) {
    const bool is_anchor = i == c.anchor;
    const int lag = is_anchor ? 0 : rng.range(-spec.max_lag, spec.max_lag);
    const double r = is_anchor ? 0.0 : rng.uniform(-q, q);
    c.lags.push_back(lag);
    t.R.push_back(r);
    for (int k = 0; k < n_j; ++k) {
      const int j = c.cols[k];
      const int f = fuzz[slot[i]][k];
      if (f != 0) c.fuzz[{i, j}] = f;
      const double noise = spec.w > 0 ? rng.uniform(-spec.w, spec.w) : 0.0;
      out.matrix.set(i, j + lag + f, r + t.C[k] + noise);
    }
  }
  c.achieved_error = verify_cluster(out.matrix, c, spec.w).achieved_error;
  return out;
}

double artifact_probability(long long m, long long n, long long size_i, long long size_j,
                            double w, int F) {
  if (m < 1 || n < 1 || F < 0 || !(w >= 0)) throw ConfigError("invalid artifact-probability arguments");
  if (size_i < 2 || size_i > 2 * m * n || size_j < 2 || size_j > 3 * n) {
    throw ConfigError("cluster size outside 2 <= |I| <= 2mn, 2 <= |J| <= 3n");
  }
  const double cell = std::min(2.0 * w, 1.0);
  if (cell <= 0.0) return 0.0;
  if (cell >= 1.0) return 1.0;
  // q: a fixed cell lands within w for at least one of its 2F + 1 positions.
  const double log_miss = static_cast<double>(2 * F + 1) * std::log1p(-cell);
  const double log_q = std::log(-std::expm1(log_miss));
  const double log_x = static_cast<double>(size_i) * static_cast<double>(size_j) * log_q;
  const double log_count = log_choose(2.0 * static_cast<double>(m) * static_cast<double>(n),
                                      static_cast<double>(size_i)) +
                           log_choose(3.0 * static_cast<double>(n), static_cast<double>(size_j));
  // P = 1 - (1 - x)^N = -expm1(N log1p(-x)); y = log(N * -log1p(-x)).
  double log_neg_log1p;
  if (log_x < -30.0) {
    log_neg_log1p = log_x;  // -log1p(-x) = x (1 + x/2 + ...), relative error < 1e-13
  } else {
    log_neg_log1p = std::log(-std::log1p(-std::exp(log_x)));
  }
  const double y = log_count + log_neg_log1p;
  if (y > 50.0) return 1.0;
  if (y < -745.0) return 0.0;
  const double p = -std::expm1(-std::exp(y));
  return std::clamp(p, 0.0, 1.0);
}

TrajectorySet gen_trajectory_groups(const TrajectoryParams& p) {
  if (p.groups * p.members < 2 || p.timesteps < 4 || p.groups < 1 || p.members < 1) {
    throw ConfigError("trajectories need groups*members >= 2 and timesteps >= 4");
  }
  if (p.lag_spread < 0 || p.fuzz_spread < 0 || p.fuzz_spread > kMaxWindowFuzz || p.noise < 0) {
    throw ConfigError("negative or oversized trajectory parameter");
  }
  Rng rng(derive_seed(p.seed, "trajectories"));
  const int n = p.timesteps;
  const int pad = p.lag_spread + p.fuzz_spread + 1;
  const int len = n + 2 * pad;

  const std::vector<double> base_x = random_walk(rng, len, p.step);
  const std::vector<double> base_y = random_walk(rng, len, p.step);
  std::vector<std::vector<double>> lead_x, lead_y;
  for (int g = 0; g < p.groups; ++g) {
    std::vector<double> dx = random_walk(rng, len, p.step);
    std::vector<double> dy = random_walk(rng, len, p.step);
    for (int t = 0; t < len; ++t) {
      dx[t] += base_x[t];
      dy[t] += base_y[t];
    }
    lead_x.push_back(std::move(dx));
    lead_y.push_back(std::move(dy));
  }

  // Route samples j in [j0, j0 + span) land at time j + lag + f.
  const int j0 = -pad + p.fuzz_spread;
  const int span = n + 2 * pad - 2 * p.fuzz_spread;
  std::vector<std::vector<std::vector<int>>> fuzz;
  for (int g = 0; g < p.groups; ++g) {
    fuzz.push_back(window_fuzz(rng, p.members, span, p.fuzz_spread, true));
  }

  TrajectorySet out;
  const int objects = p.groups * p.members;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int r = 0; r < objects; ++r) {
    const int g = r % p.groups;
    const int member = r / p.groups;
    // One offset for both coordinates keeps interleaved rows additive.
    const double ox = rng.uniform(-p.spread, p.spread);
    const double oy = ox;
    const int lag = member == 0 ? 0 : rng.range(-p.lag_spread, p.lag_spread);
    std::vector<double> x(static_cast<std::size_t>(n), nan), y(static_cast<std::size_t>(n), nan);
    auto jitter = [&]() { return p.noise > 0 ? rng.uniform(-p.noise, p.noise) : 0.0; };
    for (int k = 0; k < span; ++k) {
      const int j = j0 + k;
      const int pos = j + lag + fuzz[g][member][k];
      if (pos < 0 || pos >= n) continue;
      x[pos] = ox + lead_x[g][j + pad] + jitter();
      y[pos] = oy + lead_y[g][j + pad] + jitter();
    }
    for (int t = 0; t < n; ++t) {
      if (!std::isnan(x[t])) continue;
      x[t] = ox + lead_x[g][t - lag + pad] + jitter();
      y[t] = oy + lead_y[g][t - lag + pad] + jitter();
    }
    out.x.push_back(std::move(x));
    out.y.push_back(std::move(y));
    out.labels.push_back(g);
  }
  return out;
}

DataMatrix trajectory_matrix(const TrajectorySet& t, TrajectoryLayout layout) {
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < t.x.size(); ++r) {
    switch (layout) {
      case TrajectoryLayout::kX:
        rows.push_back(t.x[r]);
        break;
      case TrajectoryLayout::kY:
        rows.push_back(t.y[r]);
        break;
      case TrajectoryLayout::kInterleaved: {
        std::vector<double> v;
        for (std::size_t k = 0; k < t.x[r].size(); ++k) {
          v.push_back(t.x[r][k]);
          v.push_back(t.y[r][k]);
        }
        rows.push_back(std::move(v));
        break;
      }
    }
  }
  return DataMatrix::from_rows(rows);
}

std::vector<std::vector<double>> trajectory_points(const TrajectorySet& t) {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < t.x.size(); ++r) {
    std::vector<double> v = t.x[r];
    v.insert(v.end(), t.y[r].begin(), t.y[r].end());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace flagmine
