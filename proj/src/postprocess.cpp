#include "flagmine/postprocess.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <numeric>

#include "flagmine/error.hpp"

namespace flagmine {

namespace {

constexpr std::size_t kExactLimit = 5000;

bool all_present(const std::vector<Bridge>& bs) {
  for (const Bridge& b : bs) {
    for (int p : b.pos) {
      if (p == kAbsent) return false;
    }
  }
  return true;
}

// True when every non-intersecting pair is ordered the same way by column
// index and by position. Holds whenever the anchor row is among the rows.
bool order_matches_columns(const std::vector<Bridge>& bs,
                           const std::vector<std::vector<char>>& hit) {
  for (std::size_t u = 0; u < bs.size(); ++u) {
    for (std::size_t v = u + 1; v < bs.size(); ++v) {
      if (!hit[u][v] && bs[u].pos[0] > bs[v].pos[0]) return false;
    }
  }
  return true;
}

// Without absent positions "non-intersecting" is the strict order "left of
// at every row", so a maximum set is a longest chain.
std::vector<int> longest_chain(const std::vector<Bridge>& bs,
                               const std::vector<std::vector<char>>& hit) {
  const int k = static_cast<int>(bs.size());
  std::vector<int> len(static_cast<std::size_t>(k), 1);
  for (int v = k - 1; v >= 0; --v) {
    for (int u = v + 1; u < k; ++u) {
      if (!hit[v][u] && bs[v].pos[0] < bs[u].pos[0]) len[v] = std::max(len[v], 1 + len[u]);
    }
  }
  int best = *std::max_element(len.begin(), len.end());
  std::vector<int> out;
  int last = -1;
  for (int need = best; need >= 1; --need) {
    for (int v = last + 1; v < k; ++v) {
      if (len[v] != need) continue;
      if (last >= 0 && (hit[last][v] || bs[last].pos[0] >= bs[v].pos[0])) continue;
      out.push_back(v);
      last = v;
      break;
    }
  }
  return out;
}

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const std::vector<std::vector<char>>& hit) : hit_(hit) {}

  std::vector<int> solve(const std::vector<int>& vertices) {
    best_.clear();
    cur_.clear();
    recurse(vertices);
    return best_;
  }

 private:
  void recurse(const std::vector<int>& cand) {
    if (cur_.size() + cand.size() <= best_.size()) return;
    if (cand.empty()) {
      best_ = cur_;
      return;
    }
    const int v = cand[0];
    std::vector<int> rest;
    rest.reserve(cand.size());
    for (std::size_t k = 1; k < cand.size(); ++k) {
      if (!hit_[v][cand[k]]) rest.push_back(cand[k]);
    }
    cur_.push_back(v);
    recurse(rest);
    cur_.pop_back();
    recurse(std::vector<int>(cand.begin() + 1, cand.end()));
  }

  const std::vector<std::vector<char>>& hit_;
  std::vector<int> best_;
  std::vector<int> cur_;
};

}  // namespace

std::vector<Bridge> cluster_bridges(const FuzzyLaggedCluster& c, const DataMatrix* a) {
  std::vector<Bridge> out;
  out.reserve(c.cols.size());
  for (int j : c.cols) {
    Bridge b;
    b.col = j;
    b.rows = c.rows;
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
      const int i = c.rows[r];
      int p = j + c.lags[r] + c.fuzz_at(i, j);
      if (a && (p < 0 || p >= a->cols() || a->missing(i, p))) p = kAbsent;
      b.pos.push_back(p);
    }
    out.push_back(std::move(b));
  }
  return out;
}

bool bridges_intersect(const Bridge& b1, const Bridge& b2) {
  if (b1.rows != b2.rows || b1.pos.size() != b2.pos.size()) {
    throw RowSetMismatch("bridges are defined over different rows");
  }
  bool left = false, right = false;
  for (std::size_t r = 0; r < b1.pos.size(); ++r) {
    if (b1.pos[r] == kAbsent || b2.pos[r] == kAbsent) continue;
    if (b1.pos[r] == b2.pos[r]) return true;
    (b1.pos[r] < b2.pos[r] ? left : right) = true;
    if (left && right) return true;
  }
  return false;
}

std::vector<int> greedy_nonintersecting_columns(const std::vector<Bridge>& bridges) {
  std::vector<std::size_t> order(bridges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return bridges[x].col < bridges[y].col; });
  std::vector<std::size_t> chosen;
  for (std::size_t v : order) {
    bool ok = true;
    for (std::size_t u : chosen) {
      if (bridges_intersect(bridges[u], bridges[v])) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(v);
  }
  std::vector<int> cols;
  for (std::size_t v : chosen) cols.push_back(bridges[v].col);
  std::sort(cols.begin(), cols.end());
  return cols;
}

ColumnSelection max_nonintersecting_columns(const std::vector<Bridge>& input) {
  ColumnSelection out;
  if (input.empty()) return out;
  if (input.size() > kExactLimit) {
    std::cerr << "warning: " << input.size()
              << " columns exceed the exact bridge-selection limit; using greedy\n";
    out.cols = greedy_nonintersecting_columns(input);
    out.greedy = true;
    return out;
  }
  std::vector<Bridge> bs = input;
  std::sort(bs.begin(), bs.end(), [](const Bridge& x, const Bridge& y) { return x.col < y.col; });
  const int k = static_cast<int>(bs.size());
  std::vector<std::vector<char>> hit(static_cast<std::size_t>(k), std::vector<char>(k, 0));
  for (int u = 0; u < k; ++u) {
    hit[u][u] = 1;
    for (int v = u + 1; v < k; ++v) hit[u][v] = hit[v][u] = bridges_intersect(bs[u], bs[v]) ? 1 : 0;
  }

  std::vector<int> picked;
  if (all_present(bs) && !bs[0].pos.empty() && order_matches_columns(bs, hit)) {
    picked = longest_chain(bs, hit);
  } else {
    // Exact search per connected component of the intersection graph; the
    // union of per-component lexicographic minima is the global minimum.
    std::vector<int> comp(static_cast<std::size_t>(k), -1);
    IndependentSetSearch search(hit);
    for (int s = 0; s < k; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> members{s}, stack{s};
      comp[s] = s;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < k; ++v) {
          if (v != u && hit[u][v] && comp[v] < 0) {
            comp[v] = s;
            members.push_back(v);
            stack.push_back(v);
          }
        }
      }
      std::sort(members.begin(), members.end());
      for (int v : search.solve(members)) picked.push_back(v);
    }
  }
  for (int v : picked) out.cols.push_back(bs[v].col);
  std::sort(out.cols.begin(), out.cols.end());
  return out;
}

ColumnSelection max_nonintersecting_columns(const FuzzyLaggedCluster& c, const DataMatrix* a) {
  return max_nonintersecting_columns(cluster_bridges(c, a));
}

FuzzyLaggedCluster restrict_columns(const FuzzyLaggedCluster& c, const std::vector<int>& cols) {
  FuzzyLaggedCluster out = c;
  out.cols = cols;
  std::sort(out.cols.begin(), out.cols.end());
  out.fuzz.clear();
  for (const auto& [key, f] : c.fuzz) {
    if (std::binary_search(out.cols.begin(), out.cols.end(), key.second)) out.fuzz[key] = f;
  }
  return out;
}

std::vector<MergedGroup> merge_row_sets(const std::vector<std::vector<int>>& sets) {
  std::map<int, int> parent;
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& s : sets) {
    for (int r : s) parent.emplace(r, r);
    for (std::size_t k = 1; k < s.size(); ++k) {
      int a = find(s[0]), b = find(s[k]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, MergedGroup> groups;
  for (auto& [r, p] : parent) groups[find(r)].rows.push_back(r);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (!sets[k].empty()) groups[find(sets[k][0])].members.push_back(static_cast<int>(k));
  }
  std::vector<MergedGroup> out;
  for (auto& [root, g] : groups) out.push_back(std::move(g));
  return out;
}

std::vector<MergedGroup> merge_clusters(const std::vector<FuzzyLaggedCluster>& clusters) {
  std::vector<std::vector<int>> sets;
  sets.reserve(clusters.size());
  for (const auto& c : clusters) sets.push_back(c.rows);
  return merge_row_sets(sets);
}

}  // namespace flagmine
