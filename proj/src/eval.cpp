#include "flagmine/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "flagmine/error.hpp"

namespace flagmine {

CellSet cell_set(const FuzzyLaggedCluster& c) {
  CellSet out;
  for (int i : c.rows) {
    for (int j : c.cols) out.emplace(i, c.position(i, j));
  }
  return out;
}

double rnia_complement(const CellSet& a, const CellSet& b) {
  if (a.empty() && b.empty()) throw BothEmpty("both cell sets are empty");
  std::size_t inter = 0;
  for (const auto& cell : a) inter += b.count(cell);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double f1_from_counts(long long tp, long long fp, long long fn) {
  const long long den = 2 * tp + fp + fn;
  return den == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(den);
}

double f1_score(const std::vector<int>& predicted, const std::vector<int>& truth) {
  std::set<int> p(predicted.begin(), predicted.end());
  std::set<int> t(truth.begin(), truth.end());
  long long tp = 0;
  for (int r : p) tp += t.count(r);
  return f1_from_counts(tp, static_cast<long long>(p.size()) - tp,
                        static_cast<long long>(t.size()) - tp);
}

double normalized_entropy(const std::vector<std::vector<int>>& cluster_labels, int k) {
  if (k < 2) throw ConfigError("normalized entropy needs k >= 2");
  double total = 0.0, weighted = 0.0;
  for (const auto& labels : cluster_labels) {
    if (labels.empty()) continue;
    std::map<int, int> counts;
    for (int l : labels) ++counts[l];
    const double size = static_cast<double>(labels.size());
    double h = 0.0;
    for (const auto& [l, cnt] : counts) {
      const double p = cnt / size;
      h -= p * std::log(p);
    }
    weighted += size * h;
    total += size;
  }
  if (total == 0.0) return 0.0;
  return weighted / total / std::log(static_cast<double>(k));
}

double coverage(const std::vector<std::vector<int>>& groups,
                const std::vector<std::vector<int>>& truth) {
  std::set<int> covered;
  for (const auto& g : groups) covered.insert(g.begin(), g.end());
  std::set<int> members;
  for (const auto& t : truth) members.insert(t.begin(), t.end());
  if (members.empty()) return 0.0;
  std::size_t hit = 0;
  for (int r : members) hit += covered.count(r);
  return static_cast<double>(hit) / static_cast<double>(members.size());
}

double best_match_f1(const std::vector<std::vector<int>>& groups,
                     const std::vector<std::vector<int>>& truth) {
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& g : groups) best = std::max(best, f1_score(g, t));
    sum += best;
  }
  return sum / static_cast<double>(truth.size());
}

std::vector<int> dbscan(const std::vector<std::vector<double>>& points, const DbscanConfig& cfg) {
  if (cfg.eps < 0 || cfg.min_pts < 1) throw ConfigError("dbscan needs eps >= 0 and min_pts >= 1");
  const std::size_t n = points.size();
  const double eps2 = cfg.eps * cfg.eps;
  auto neighbours = [&](std::size_t p) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q) {
      double d = 0.0;
      for (std::size_t k = 0; k < points[p].size(); ++k) {
        const double diff = points[p][k] - points[q][k];
        d += diff * diff;
      }
      if (d <= eps2) out.push_back(q);
    }
    return out;
  };

  constexpr int kUnvisited = -2;
  std::vector<int> label(n, kUnvisited);
  int next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (label[p] != kUnvisited) continue;
    std::vector<std::size_t> nb = neighbours(p);
    if (static_cast<int>(nb.size()) < cfg.min_pts) {
      label[p] = kNoise;
      continue;
    }
    const int id = next++;
    label[p] = id;
    std::vector<std::size_t> queue(nb.begin(), nb.end());
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const std::size_t q = queue[k];
      if (label[q] == kNoise) label[q] = id;
      if (label[q] != kUnvisited) continue;
      label[q] = id;
      std::vector<std::size_t> nq = neighbours(q);
      if (static_cast<int>(nq.size()) >= cfg.min_pts) queue.insert(queue.end(), nq.begin(), nq.end());
    }
  }
  return label;
}

std::vector<std::vector<int>> groups_from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> by;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] != kNoise) by[labels[r]].push_back(static_cast<int>(r));
  }
  std::vector<std::vector<int>> out;
  for (auto& [l, rows] : by) out.push_back(std::move(rows));
  return out;
}

}  // namespace flagmine
