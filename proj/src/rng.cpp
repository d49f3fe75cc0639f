#include "flagmine/rng.hpp"

#include <algorithm>

namespace flagmine {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<int> Rng::sample(int n, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = n - k; j < n; ++j) {
    int t = range(0, j);
    if (std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    } else {
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the stream name
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix(mix(master ^ h) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace flagmine
