#pragma once

#include <set>
#include <utility>
#include <vector>

#include "flagmine/cluster.hpp"

namespace flagmine {

// (row, matrix column) cells covered by a cluster.
using CellSet = std::set<std::pair<int, int>>;

CellSet cell_set(const FuzzyLaggedCluster& c);

// |intersection| / |union|. Throws BothEmpty when both sets are empty.
double rnia_complement(const CellSet& a, const CellSet& b);

// 2tp / (2tp + fn + fp); 0 when the denominator vanishes.
double f1_from_counts(long long tp, long long fp, long long fn);
// Row-membership F1; duplicate rows count once.
double f1_score(const std::vector<int>& predicted, const std::vector<int>& truth);

// Each inner vector holds the class labels of one cluster's members.
// Size-weighted mean entropy divided by ln k.
double normalized_entropy(const std::vector<std::vector<int>>& cluster_labels, int k);

// Fraction of truth members that appear in some group.
double coverage(const std::vector<std::vector<int>>& groups,
                const std::vector<std::vector<int>>& truth);

// Mean over truth classes of the best F1 against any predicted group.
double best_match_f1(const std::vector<std::vector<int>>& groups,
                     const std::vector<std::vector<int>>& truth);

struct DbscanConfig {
  double eps = 1.0;
  int min_pts = 2;
};

inline constexpr int kNoise = -1;

// Classic DBSCAN with L2 distance, visiting points in input order. Border
// points join the first cluster that reaches them. Returns a label per point:
// cluster ids from 0, or kNoise.
std::vector<int> dbscan(const std::vector<std::vector<double>>& points, const DbscanConfig& cfg);

// Members of each label (noise excluded), ordered by label.
std::vector<std::vector<int>> groups_from_labels(const std::vector<int>& labels);

}  // namespace flagmine
