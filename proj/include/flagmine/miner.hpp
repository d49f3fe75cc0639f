#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flagmine/cluster.hpp"
#include "flagmine/matrix.hpp"
#include "flagmine/rng.hpp"
#include "flagmine/window.hpp"

namespace flagmine {

struct MinerConfig {
  double w = 0.01;                 // error bound in the mining domain
  int max_fuzz = 0;                // broadcast when row_fuzz is empty
  std::vector<int> row_fuzz;       // optional per-row bounds F_i
  double beta_I = 0.5;
  double beta_J = 0.5;
  int disc_set_size = 0;           // 0: default_disc_set_size
  int sfz_size = 3;                // |S0|, clamped to |S|
  std::uint64_t iterations = 0;    // 0: default_iterations
  double disc_prob = 0.0;          // 0: calibrated_disc_prob(|S|)
  Objective objective = Objective::area();
  bool anti = false;
  double nu = 0.5;
  std::uint64_t seed = 0;
  std::optional<double> beta_J_upper;  // enables the theoretical |S| bound
  int workers = 1;
  KernelLevel kernel = KernelLevel::kAuto;
};

// Config with every default filled in and checked against the matrix.
struct ResolvedConfig {
  MinerConfig cfg;
  int m = 0;
  int n = 0;
  int min_rows = 0;   // ceil(beta_I * m)
  int min_cols = 0;   // ceil(beta_J * n)
  int disc_size = 0;
  int sfz_size = 0;
  std::uint64_t iterations = 0;
  std::vector<int> row_fuzz;  // size m
  KernelLevel kernel = KernelLevel::kScalar;
};

ResolvedConfig resolve_config(const DataMatrix& a, const MinerConfig& cfg);

struct DiscSetSize {
  double exact = 0.0;
  int recommended = 0;
};

DiscSetSize default_disc_set_size(int m, int n);
// log(4mn) / log(1 / (3 beta_J' (2F+1))); requires 3 beta_J' (2F+1) < 1.
double theoretical_disc_set_size(int m, int n, double beta_j_upper, int max_fuzz);
// Measured probability that a random |S|-subset discriminates (|S0| = 3).
double calibrated_disc_prob(int disc_size);
std::uint64_t default_iterations(double beta_I, double beta_J, int disc_size, double disc_prob);
double expected_hit_rate(double disc_prob);

struct SeedChoice {
  int anchor = 0;
  std::vector<int> S;       // ascending
  std::vector<int> S0;      // ascending subset of S
  int anchor_col = 0;       // s0
};

SeedChoice draw_seed(Rng& rng, int m, int n, int disc_size, int sfz_size);

struct RowPhaseResult {
  std::vector<int> rows;                // ascending, includes the anchor
  std::vector<int> lags;
  std::vector<std::vector<int>> fuzz;   // per row, per S entry
  std::vector<std::uint8_t> anti;       // per row
  bool aborted = false;                 // stopped early: cannot reach min_rows
};

// `min_rows` > 0 lets the scan stop once that count is out of reach.
RowPhaseResult row_addition(const DataMatrix& a, const SeedChoice& seed, double w,
                            const std::vector<int>& row_fuzz, bool anti, double nu,
                            KernelLevel kernel, int min_rows = 0);

struct ColumnPhaseResult {
  std::vector<int> rows;  // rows kept (those with a witness at s0)
  std::vector<int> lags;
  std::vector<std::uint8_t> anti;
  std::vector<int> cols;  // ascending
  std::vector<std::vector<int>> fuzz;  // per row, per column
};

ColumnPhaseResult column_addition(const DataMatrix& a, const SeedChoice& seed,
                                  const RowPhaseResult& rows, double w,
                                  const std::vector<int>& row_fuzz, double nu,
                                  KernelLevel kernel);

struct IterationStats {
  std::uint64_t row_phase_ns = 0;
  std::uint64_t col_phase_ns = 0;
  std::uint64_t column_phases = 0;
};

// One seeded iteration; the RNG stream depends only on (seed, index).
std::optional<FuzzyLaggedCluster> mine_iteration(const DataMatrix& a, const ResolvedConfig& rc,
                                                 std::uint64_t index,
                                                 IterationStats* stats = nullptr);

struct MineStats {
  IterationStats phases;
  std::uint64_t iterations = 0;
  std::uint64_t raw_clusters = 0;
  std::uint64_t verify_failures = 0;
};

// Runs every iteration, deduplicates by (I, T, J), verifies at 2w and sorts
// by descending objective then (I, J, T).
std::vector<FuzzyLaggedCluster> mine(const DataMatrix& a, const MinerConfig& cfg,
                                     MineStats* stats = nullptr);

// Worker count from FLAGMINE_WORKERS, or `fallback`.
int workers_from_env(int fallback);

}  // namespace flagmine
