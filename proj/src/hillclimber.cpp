#include "hamball/hillclimber.hpp"

#include <algorithm>

namespace hamball {

void MoveTimeHistogram::record(std::chrono::nanoseconds dt) {
  const std::int64_t ns = std::max<std::int64_t>(dt.count(), 0);
  const auto bin = std::min<std::size_t>(static_cast<std::size_t>(ns / kBinNs), kBins);
  ++bins_[bin];
  ++count_;
  total_ns_ += ns;
}

void MoveTimeHistogram::merge(const MoveTimeHistogram& other) {
  for (std::size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
  count_ += other.count_;
  total_ns_ += other.total_ns_;
}

double MoveTimeHistogram::mean_us() const {
  return count_ == 0 ? 0.0
                     : static_cast<double>(total_ns_) / 1000.0 / static_cast<double>(count_);
}

double MoveTimeHistogram::median_us() const {
  if (count_ == 0) return 0.0;
  const std::uint64_t target = (count_ + 1) / 2;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    seen += bins_[i];
    if (seen >= target)
      return static_cast<double>(i) * kBinNs / 1000.0;  // bin lower edge
  }
  return 0.0;
}

ClimbResult climb(ScoreStore& store, Rng& rng, const ReportSink& report,
                  const ClimbOptions& opts) {
  using clock = std::chrono::steady_clock;
  ClimbResult result;
  const bool need_clock = opts.deadline.has_value() || opts.move_times != nullptr;

  if (opts.trace)
    opts.trace->visited.emplace_back(store.solution(),
                                     ObjectiveVector(store.objective().begin(),
                                                     store.objective().end()));

  const auto loop_start = clock::now();
  while (store.improving_available()) {
    clock::time_point iter_start{};
    if (need_clock) {
      iter_start = clock::now();
      if (opts.deadline && iter_start >= *opts.deadline) {
        result.completed = false;
        break;
      }
    }

    std::uint32_t t;
    if (store.bucket_size(Bucket::Strong) > 0) {
      t = store.sample(Bucket::Strong, rng);
      ++result.strong_moves;
    } else {
      t = store.sample(Bucket::WImproving, rng);
      // The pre-move solution may be non-dominated; hand it out before it is
      // traded away for progress in the w direction.
      report(store.solution(), store.objective());
      ++result.weak_moves;
    }
    store.apply(t);
    ++result.moves;

    if (opts.move_times) opts.move_times->record(clock::now() - iter_start);
    if (opts.trace)
      opts.trace->visited.emplace_back(store.solution(),
                                       ObjectiveVector(store.objective().begin(),
                                                       store.objective().end()));
  }
  result.loop_time = clock::now() - loop_start;

  if (result.completed) report(store.solution(), store.objective());
  result.solution = store.solution();
  result.objective.assign(store.objective().begin(), store.objective().end());
  return result;
}

ClimbResult climb(const VectorMkLandscape& f, const MoveIndex& index, const BitVector& x0,
                  WeightVector w, Rng& rng, const ReportSink& report,
                  const ClimbOptions& opts) {
  ScoreStore store(f, index, x0, std::move(w));
  return climb(store, rng, report, opts);
}

}  // namespace hamball
