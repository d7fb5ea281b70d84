#include "hamball/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hamball {

void RunConfig::validate() const {
  if (n == 0) throw std::invalid_argument("config: n must be positive");
  if (n <= k) throw std::invalid_argument("config: n must exceed k");
  if (d == 0) throw std::invalid_argument("config: d must be positive");
  if (q < 2) throw std::invalid_argument("config: q must be at least 2");
  if (r == 0) throw std::invalid_argument("config: r must be at least 1");
  if (!(time_limit_s > 0)) throw std::invalid_argument("config: time limit must be positive");
  if (runs == 0) throw std::invalid_argument("config: runs must be positive");
  if (threads == 0) throw std::invalid_argument("config: threads must be positive");
  if (model != "adjacent" && model != "random")
    throw std::invalid_argument("config: model must be 'adjacent' or 'random'");
}

WeightVector sample_weight(std::uint32_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("weights: d must be positive");
  std::vector<double> w(d);
  for (;;) {
    double sum = 0.0;
    for (auto& v : w) {
      v = -std::log(uniform_unit(rng));
      sum += v;
    }
    if (sum <= 0.0) continue;
    bool ok = true;
    for (auto& v : w) {
      v /= sum;
      ok &= v > 0.0;
    }
    if (ok) return WeightVector(std::move(w));
  }
}

RunStats multistart(const VectorMkLandscape& f, const MoveIndex& index,
                    ParetoArchive& archive, Rng& rng, double time_limit_s,
                    std::uint64_t max_climbs) {
  using clock = std::chrono::steady_clock;
  RunStats stats;

  ScoreStore store(f, index);
  const ReportSink sink = [&](const BitVector& x, std::span<const std::int64_t> objv) {
    ++stats.reports;
    archive.insert(objv, x);
  };

  const auto start = clock::now();
  const auto deadline =
      start + std::chrono::nanoseconds(static_cast<std::int64_t>(time_limit_s * 1e9));
  for (;;) {
    if (stats.climbs_started > 0) {
      if (clock::now() >= deadline) break;
      if (max_climbs != 0 && stats.climbs_started >= max_climbs) break;
    }
    // Draw order is part of the reproducibility contract: solution, then weights.
    BitVector x0 = random_bits(rng, f.num_vars());
    WeightVector w = sample_weight(f.num_objectives(), rng);
    store.reset(x0, std::move(w));

    ClimbOptions opts;
    opts.move_times = &stats.move_times;
    // The first climb always finishes, so even a tiny budget yields an
    // archive whose last report is a genuine local optimum.
    if (stats.climbs_started > 0) opts.deadline = deadline;

    const ClimbResult r = climb(store, rng, sink, opts);
    ++stats.climbs_started;
    stats.climbs_completed += r.completed ? 1 : 0;
    stats.total_moves += r.moves;
    stats.strong_moves += r.strong_moves;
    stats.weak_moves += r.weak_moves;
    stats.archive_growth.emplace_back(clock::now() - start, archive.size());
    if (!r.completed) break;
  }
  stats.loop_time = clock::now() - start;
  return stats;
}

bool front_attains(const std::vector<ObjectiveVector>& front,
                   std::span<const std::int64_t> p) {
  for (const auto& q : front) {
    bool ok = q.size() == p.size();
    for (std::size_t i = 0; ok && i < p.size(); ++i) ok = q[i] >= p[i];
    if (ok) return true;
  }
  return false;
}

namespace {

// Best second coordinate among front points with first coordinate >= x, as a
// staircase over descending first coordinates.
class Staircase {
 public:
  explicit Staircase(const std::vector<ObjectiveVector>& front) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    pts.reserve(front.size());
    for (const auto& p : front) pts.emplace_back(p[0], p[1]);
    std::sort(pts.begin(), pts.end(), std::greater<>());
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (auto [x, y] : pts) {
      best = std::max(best, y);
      if (steps_.empty() || steps_.back().second < best) steps_.emplace_back(x, best);
    }
    // steps_: first coordinate descending, second strictly increasing.
  }

  // min() when no point reaches x.
  std::int64_t best_y_at(std::int64_t x) const {
    // Last step with first >= x.
    auto it = std::partition_point(steps_.begin(), steps_.end(),
                                   [&](const auto& s) { return s.first >= x; });
    if (it == steps_.begin()) return std::numeric_limits<std::int64_t>::min();
    return std::prev(it)->second;
  }

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> steps_;
};

}  // namespace

std::vector<ObjectiveVector> eas50(const std::vector<std::vector<ObjectiveVector>>& fronts) {
  if (fronts.empty()) throw std::invalid_argument("eas50: need at least one front");
  for (const auto& front : fronts)
    for (const auto& p : front)
      if (p.size() != 2) throw std::invalid_argument("eas50: fronts must be 2-dimensional");

  const std::size_t need = (fronts.size() + 1) / 2;  // attained by at least half

  std::vector<Staircase> stairs;
  stairs.reserve(fronts.size());
  std::vector<std::int64_t> xs;
  for (const auto& front : fronts) {
    stairs.emplace_back(front);
    for (const auto& p : front) xs.push_back(p[0]);
  }
  std::sort(xs.begin(), xs.end(), std::greater<>());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // At each candidate x the tightest attainable y is the need-th largest of
  // the per-run staircase values; keeping only strictly increasing y over
  // descending x leaves the non-dominated surface points.
  std::vector<ObjectiveVector> out;
  std::vector<std::int64_t> ys(fronts.size());
  std::int64_t best_y = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t x : xs) {
    for (std::size_t j = 0; j < stairs.size(); ++j) ys[j] = stairs[j].best_y_at(x);
    std::nth_element(ys.begin(), ys.begin() + (need - 1), ys.end(), std::greater<>());
    const std::int64_t y = ys[need - 1];
    if (y == std::numeric_limits<std::int64_t>::min()) continue;
    if (y > best_y) {
      best_y = y;
      out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::int64_t to_us(std::chrono::nanoseconds ns) {
  return std::chrono::duration_cast<std::chrono::microseconds>(ns).count();
}

}  // namespace

void write_stats(const RunStats& stats, const ParetoArchive& archive, std::ostream& out) {
  out << "moves=" << stats.total_moves << "\n";
  out << "strong_moves=" << stats.strong_moves << "\n";
  out << "weak_moves=" << stats.weak_moves << "\n";
  out << "climbs_started=" << stats.climbs_started << "\n";
  out << "climbs_completed=" << stats.climbs_completed << "\n";
  out << "reports=" << stats.reports << "\n";
  out << "archive_size=" << archive.size() << "\n";
  out << "archive_added=" << archive.added() << "\n";
  out << "archive_rejected_dominated=" << archive.rejected_dominated() << "\n";
  out << "archive_rejected_duplicate=" << archive.rejected_duplicate() << "\n";
  out << "problem_init_us=" << to_us(stats.problem_init) << "\n";
  out << "loop_us=" << to_us(stats.loop_time) << "\n";
  out << std::fixed << std::setprecision(3);
  out << "mean_move_us=" << stats.mean_move_us() << "\n";
  out << "median_move_us=" << stats.median_move_us() << "\n";
}

void write_stats(const RunStats& stats, const ParetoArchive& archive,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_stats(stats, archive, out);
  if (!out) throw std::runtime_error("write failed on " + path.string());
}

void write_metadata(const RunConfig& config, std::ostream& out) {
  out << "n=" << config.n << "\n";
  out << "k=" << config.k << "\n";
  out << "d=" << config.d << "\n";
  out << "q=" << config.q << "\n";
  out << "r=" << config.r << "\n";
  out << "seed=" << config.seed << "\n";
  out << "time_limit_s=" << config.time_limit_s << "\n";
  out << "max_climbs=" << config.max_climbs << "\n";
  out << "runs=" << config.runs << "\n";
  out << "threads=" << config.threads << "\n";
  out << "model=" << config.model << "\n";
  // Instance tables come from stream 0 of the seed; run j draws from stream j+1.
  for (std::uint32_t j = 0; j < config.runs; ++j)
    out << "run_stream_" << j << "=" << j + 1 << "\n";
}

void write_metadata(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_metadata(config, out);
  if (!out) throw std::runtime_error("write failed on " + path.string());
}

namespace {

std::string run_suffix(std::uint32_t j) {
  std::ostringstream s;
  s << std::setw(2) << std::setfill('0') << j;
  return s.str();
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  using clock = std::chrono::steady_clock;
  config.validate();

  const VectorMkLandscape f =
      config.model == "adjacent"
          ? VectorMkLandscape::generate_adjacent_mnk(config.n, config.k, config.d, config.q,
                                                     config.seed)
          : VectorMkLandscape::generate_random_mnk(config.n, config.k, config.d, config.q,
                                                   config.seed);

  const auto init_start = clock::now();
  const CoOccurrenceGraph graph(f);
  const MoveIndex index(f, graph, config.r);
  const auto problem_init = clock::now() - init_start;

  ExperimentResult result;
  result.stats.resize(config.runs);
  result.fronts.resize(config.runs);
  std::vector<ParetoArchive> archives(config.runs, ParetoArchive(config.d));

  const auto run_one = [&](std::uint32_t j) {
    Rng rng = make_rng(config.seed, j + 1);
    result.stats[j] =
        multistart(f, index, archives[j], rng, config.time_limit_s, config.max_climbs);
    result.stats[j].problem_init = problem_init;
    result.fronts[j] = archives[j].front();
  };

  if (config.threads <= 1) {
    for (std::uint32_t j = 0; j < config.runs; ++j) run_one(j);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    const std::uint32_t width = std::min(config.threads, config.runs);
    pool.reserve(width);
    for (std::uint32_t t = 0; t < width; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::uint32_t j = next.fetch_add(1);
          if (j >= config.runs) return;
          run_one(j);
        }
      });
    for (auto& t : pool) t.join();
  }

  // Merge in run order so the combined archive is thread-count independent.
  result.combined = ParetoArchive(config.d);
  for (const auto& a : archives) result.combined.merge_from(a);

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    write_metadata(config, config.out_dir / "metadata.txt");
    for (std::uint32_t j = 0; j < config.runs; ++j) {
      const std::string suffix = run_suffix(j);
      write_front(archives[j], config.out_dir / ("front_" + suffix + ".tsv"));
      write_stats(result.stats[j], archives[j], config.out_dir / ("stats_" + suffix + ".txt"));
      std::ofstream growth(config.out_dir / ("archive_growth_" + suffix + ".tsv"));
      if (!growth)
        throw std::runtime_error("cannot open archive growth file in " +
                                 config.out_dir.string());
      for (const auto& [t, size] : result.stats[j].archive_growth)
        growth << to_us(t) << "\t" << size << "\n";
    }
    write_front(result.combined, config.out_dir / "front.tsv");
  }
  return result;
}

}  // namespace hamball
