#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "flagmine/matrix.hpp"

namespace flagmine {

// Which implementation evaluates the 4w window tests.
//  kReference: one sorted event list per row, two-pointer sweep.
//  kScalar:    lag-major exact test, one lag (or column) at a time.
//  kAvx2:      lag-major with a vectorized necessary-condition prefilter;
//              survivors are confirmed by the scalar test. Dense matrices only.
//  kAuto:      kAvx2 when the CPU supports it, else kScalar.
enum class KernelLevel { kAuto, kReference, kScalar, kAvx2 };

bool cpu_has_avx2();
KernelLevel resolve_kernel(KernelLevel requested, const DataMatrix& a);
const char* kernel_name(KernelLevel k);

// Row phase inputs shared by every candidate row of one iteration.
struct RowProblem {
  const DataMatrix* a = nullptr;
  int anchor = 0;
  std::vector<int> S;              // discriminating columns
  std::vector<std::uint8_t> rigid; // per S entry: 1 if in S0 (no fuzz)
  double width = 0.0;              // 4w
  double nu = 0.5;                 // min fraction of realizable witnesses
  bool sum = false;                // anti pass: A[p][s] + A[i][pos]
};

struct RowWitness {
  int lag = 0;
  std::vector<int> fuzz;  // per S entry
};

class RowScanner {
 public:
  RowScanner(const RowProblem& problem, KernelLevel level);

  // Smallest-|t| feasible lag (ties to negative t) with resolved fuzz.
  std::optional<RowWitness> scan(int row, int max_fuzz);

  // Witness for one given lag, if feasible.
  std::optional<RowWitness> witness_at(int row, int max_fuzz, int t);

  // out[t + n - 1] = 1 iff lag t is feasible for the row.
  void feasible_lags(int row, int max_fuzz, std::vector<std::uint8_t>& out);

  // Events built by the reference sweep for the last scanned row.
  std::size_t last_event_count() const { return last_events_; }
  KernelLevel level() const { return level_; }

 private:
  bool check_lag(int row, int max_fuzz, int t, RowWitness* witness);
  void sweep(int row, int max_fuzz, std::vector<std::uint8_t>& out);
  void lag_scan(int row, int max_fuzz, std::vector<std::uint8_t>& out);

  const RowProblem& p_;
  KernelLevel level_;
  std::size_t last_events_ = 0;
  // scratch
  struct Cand {
    double v;
    int f;
    int g;
  };
  std::vector<Cand> cand_;
  std::vector<double> anchors_;
  std::vector<int> status_;
  std::vector<int> cnt_;
  std::vector<int> covered_;
  std::vector<int> required_;
  struct Event {
    double v;
    int t;
    int g;
  };
  std::vector<Event> events_;
};

// Column phase inputs for a fixed row set.
struct ColumnProblem {
  const DataMatrix* a = nullptr;
  std::vector<int> rows;
  std::vector<int> lags;
  std::vector<double> ref;   // per row: aligned value at the anchor column
  std::vector<double> sign;  // per row: +1, or -1 for anti rows
  std::vector<int> max_fuzz; // per row; the anchor row uses 0
  int anchor_index = 0;      // position of the anchor within rows
  double width = 0.0;
  double nu = 0.5;
};

struct ColumnWitness {
  int col = 0;
  std::vector<int> fuzz;  // per row; 0 for excused rows
};

class ColumnScanner {
 public:
  ColumnScanner(const ColumnProblem& problem, KernelLevel level);

  // Accepted columns in ascending order with resolved fuzz.
  std::vector<ColumnWitness> scan_all();
  std::optional<ColumnWitness> scan(int col);

  std::size_t last_event_count() const { return last_events_; }

 private:
  const ColumnProblem& p_;
  KernelLevel level_;
  std::size_t last_events_ = 0;
  struct Event {
    double v;
    int r;
    int f;
  };
  std::vector<Event> events_;
  std::vector<int> status_;
  std::vector<int> cnt_;
};

}  // namespace flagmine
