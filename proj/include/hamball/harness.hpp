#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hamball/archive.hpp"
#include "hamball/hillclimber.hpp"

namespace hamball {

struct RunConfig {
  std::uint32_t n = 0;
  std::uint32_t k = 1;  // the K of the MNK model; subfunctions span K+1 variables
  std::uint32_t d = 2;
  std::int32_t q = 100;
  std::uint32_t r = 1;
  std::uint64_t seed = 1;
  double time_limit_s = 60.0;
  std::uint64_t max_climbs = 0;  // 0 = no climb cap; with a cap, outputs are seed-deterministic
  std::uint32_t runs = 1;
  std::uint32_t threads = 1;
  std::string model = "adjacent";
  std::filesystem::path out_dir;  // empty = no files written

  void validate() const;  // throws std::invalid_argument
};

// Per-run statistics. The per-move mean follows the measurement protocol of
// the runtime experiment: problem-dependent initialization (building the move
// index) is excluded, while the per-restart solution-dependent initialization
// and archive updates stay inside the measured loop and are amortized over
// moves. The median comes from individually timed climb iterations.
struct RunStats {
  std::uint64_t total_moves = 0;
  std::uint64_t strong_moves = 0;
  std::uint64_t weak_moves = 0;
  std::uint64_t climbs_started = 0;
  std::uint64_t climbs_completed = 0;
  std::uint64_t reports = 0;
  std::chrono::nanoseconds problem_init{0};
  std::chrono::nanoseconds loop_time{0};
  MoveTimeHistogram move_times;
  std::vector<std::pair<std::chrono::nanoseconds, std::uint64_t>> archive_growth;

  double mean_move_us() const {
    return total_moves == 0 ? 0.0
                            : static_cast<double>(loop_time.count()) / 1000.0 /
                                  static_cast<double>(total_moves);
  }
  double median_move_us() const { return move_times.median_us(); }
};

// Uniform over the positive unit simplex: components strictly positive,
// summing to 1. d = 1 yields exactly (1.0).
WeightVector sample_weight(std::uint32_t d, Rng& rng);

// Multi-start loop: random solution and weights, climb feeding the archive,
// until the wall-clock budget or climb cap is hit. The first climb always runs
// to completion so the archive is never empty and its last report is a
// certified local optimum; later climbs are cut off between moves when the
// budget expires.
RunStats multistart(const VectorMkLandscape& f, const MoveIndex& index,
                    ParetoArchive& archive, Rng& rng, double time_limit_s,
                    std::uint64_t max_climbs = 0);

// 50% empirical attainment surface for two maximized objectives: the
// non-dominated candidate points (over the merged coordinate grid) weakly
// attained by at least half of the fronts. Output sorted lexicographically.
std::vector<ObjectiveVector> eas50(const std::vector<std::vector<ObjectiveVector>>& fronts);

// True iff some point of the front weakly dominates p (>= component-wise).
bool front_attains(const std::vector<ObjectiveVector>& front,
                   std::span<const std::int64_t> p);

void write_stats(const RunStats& stats, const ParetoArchive& archive, std::ostream& out);
void write_stats(const RunStats& stats, const ParetoArchive& archive,
                 const std::filesystem::path& path);
void write_metadata(const RunConfig& config, std::ostream& out);
void write_metadata(const RunConfig& config, const std::filesystem::path& path);

struct ExperimentResult {
  ParetoArchive combined{1};
  std::vector<RunStats> stats;                      // one per run
  std::vector<std::vector<ObjectiveVector>> fronts; // one per run, export order
};

// The full protocol: generate the instance from the seed, build the move
// index once (the shared problem-dependent initialization), execute
// config.runs independent multistart runs (run j draws from stream j+1 of the
// seed), optionally in parallel, and write the output files when out_dir is
// set. Results are deterministic per (seed, run index) apart from wall-clock
// cutoff effects; use max_climbs for bit-exact reruns.
ExperimentResult run_experiment(const RunConfig& config);

}  // namespace hamball
