#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hamball/scores.hpp"

namespace hamball {

// Receives every reported solution together with its objective vector, so the
// consumer never re-evaluates. Reports happen before each weak step and once
// at termination.
using ReportSink = std::function<void(const BitVector&, std::span<const std::int64_t>)>;

// Histogram of individual move durations in 100 ns bins, with exact mean.
class MoveTimeHistogram {
 public:
  static constexpr std::int64_t kBinNs = 100;
  static constexpr std::size_t kBins = 16384;  // 1.6384 ms cap, then overflow

  void record(std::chrono::nanoseconds dt);
  void merge(const MoveTimeHistogram& other);

  std::uint64_t count() const { return count_; }
  double mean_us() const;
  double median_us() const;

 private:
  std::vector<std::uint64_t> bins_ = std::vector<std::uint64_t>(kBins + 1, 0);
  std::uint64_t count_ = 0;
  std::int64_t total_ns_ = 0;
};

// Debug-only record of every visited solution, in visit order (x0 first).
struct ClimbTrace {
  std::vector<std::pair<BitVector, ObjectiveVector>> visited;
};

struct ClimbOptions {
  // Checked between moves; an expired deadline stops the climb early and the
  // unfinished solution is not reported.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  MoveTimeHistogram* move_times = nullptr;
  ClimbTrace* trace = nullptr;
};

struct ClimbResult {
  BitVector solution;
  ObjectiveVector objective;
  std::uint64_t moves = 0;
  std::uint64_t strong_moves = 0;
  std::uint64_t weak_moves = 0;  // == intermediate reports
  bool completed = true;
  std::chrono::nanoseconds loop_time{0};
};

// The Hamming-ball hill climber: while any stored move has positive w-score,
// take a strong improving move if one exists, otherwise a w-improving move
// (reporting the pre-move solution); report the final solution, which is then
// a local optimum for the whole radius-r ball. Selection picks uniformly among
// bucket members of minimum |v|. w·f(x) strictly increases at every accepted
// move, so the climb cannot cycle and always terminates.
ClimbResult climb(ScoreStore& store, Rng& rng, const ReportSink& report,
                  const ClimbOptions& opts = {});

ClimbResult climb(const VectorMkLandscape& f, const MoveIndex& index, const BitVector& x0,
                  WeightVector w, Rng& rng, const ReportSink& report,
                  const ClimbOptions& opts = {});

}  // namespace hamball
