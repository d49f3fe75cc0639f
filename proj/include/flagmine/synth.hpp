#pragma once

#include <cstdint>
#include <vector>

#include "flagmine/cluster.hpp"
#include "flagmine/matrix.hpp"

namespace flagmine {

// I.i.d. uniform entries in [lo, hi).
DataMatrix gen_random_matrix(int m, int n, double lo, double hi, std::uint64_t seed);

struct PlantSpec {
  double beta_I = 0.5;
  double beta_J = 0.5;
  double w = 0.0;   // entry noise is uniform in (-w, w)
  int F = 0;        // fuzz in {-F..F}, F <= 8; one column's fuzz values span at most F
  int max_lag = 3;  // lags are drawn from {-max_lag..max_lag}
  double lo = 100.0;
  double hi = 1100.0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  FuzzyLaggedCluster cluster;  // rows I*, lags T*, columns J*, fuzz
  std::vector<double> R;       // per cluster row
  std::vector<double> C;       // per cluster column
  double w = 0.0;
  int F = 0;
  std::uint64_t seed = 0;
};

struct PlantResult {
  DataMatrix matrix;
  GroundTruth truth;
};

// Writes R_i + C_j + U(-w, w) at column j + T_i + F_ij of every planted row.
// J* is a contiguous block; within a row no two cluster columns share a
// position. The anchor row has lag 0 and no fuzz.
PlantResult plant_cluster(const DataMatrix& a, const PlantSpec& spec);

// Upper bound on the probability that an m x n uniform matrix holds an
// sizeI x sizeJ cluster of error w (a fraction of the value range) and
// fuzziness F, evaluated in log space.
double artifact_probability(long long m, long long n, long long size_i, long long size_j,
                            double w, int F);

struct TrajectoryParams {
  int groups = 4;
  int members = 8;
  int timesteps = 64;
  int lag_spread = 3;      // member lags in {-lag_spread..lag_spread}
  int fuzz_spread = 2;     // per-entry jitter in {-fuzz_spread..fuzz_spread}, at most 8
  double noise = 0.05;     // additive noise, uniform in (-noise, noise)
  double step = 1.0;       // random-walk step scale of routes
  double spread = 40.0;    // member offset, uniform in (-spread, spread)
  std::uint64_t seed = 0;
};

struct TrajectorySet {
  std::vector<std::vector<double>> x;  // per object, per timestep
  std::vector<std::vector<double>> y;
  std::vector<int> labels;             // group of each object
};

enum class TrajectoryLayout { kX, kY, kInterleaved };

// Groups share one base route and differ by their own random-walk deviation.
// Each member is displaced by one offset on both axes, drawn from a common
// range, so groups overlap in space.
// Object r belongs to group r % groups; member 0 of each group is its leader.
TrajectorySet gen_trajectory_groups(const TrajectoryParams& p);

// One row per object; kInterleaved yields x0,y0,x1,y1,... columns.
DataMatrix trajectory_matrix(const TrajectorySet& t, TrajectoryLayout layout);

// Flattened (x..., y...) vector per object for whole-trajectory comparison.
std::vector<std::vector<double>> trajectory_points(const TrajectorySet& t);

}  // namespace flagmine
