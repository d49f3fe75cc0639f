#pragma once

#include <vector>

#include "flagmine/cluster.hpp"
#include "flagmine/matrix.hpp"

namespace flagmine {

inline constexpr int kAbsent = -2147483647 - 1;

// Matrix positions j + T_i + F_ij of one cluster column across the cluster
// rows; kAbsent where the alignment is missing.
struct Bridge {
  int col = 0;
  std::vector<int> rows;
  std::vector<int> pos;
};

// One bridge per cluster column. With a matrix, out-of-range or masked
// positions become kAbsent.
std::vector<Bridge> cluster_bridges(const FuzzyLaggedCluster& c, const DataMatrix* a = nullptr);

// Paths cross (sign change across rows) or touch (equal at some row).
bool bridges_intersect(const Bridge& b1, const Bridge& b2);

struct ColumnSelection {
  std::vector<int> cols;  // ascending
  bool greedy = false;    // size guard tripped
};

// Largest pairwise non-intersecting column subset; the lexicographically
// smallest one among ties.
ColumnSelection max_nonintersecting_columns(const FuzzyLaggedCluster& c,
                                            const DataMatrix* a = nullptr);
ColumnSelection max_nonintersecting_columns(const std::vector<Bridge>& bridges);

// Left-to-right greedy selection; a lower bound for the optimum.
std::vector<int> greedy_nonintersecting_columns(const std::vector<Bridge>& bridges);

// Restricts a cluster to the given columns.
FuzzyLaggedCluster restrict_columns(const FuzzyLaggedCluster& c, const std::vector<int>& cols);

struct MergedGroup {
  std::vector<int> rows;     // ascending
  std::vector<int> members;  // indices of the input sets
};

// Union-find over shared rows; groups ordered by smallest row.
std::vector<MergedGroup> merge_row_sets(const std::vector<std::vector<int>>& sets);
std::vector<MergedGroup> merge_clusters(const std::vector<FuzzyLaggedCluster>& clusters);

}  // namespace flagmine
