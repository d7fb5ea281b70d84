#include <doctest.h>

#include <map>
#include <unordered_set>

#include "hamball/hillclimber.hpp"
#include "hamball/archive.hpp"
#include "test_util.hpp"

using namespace hamball;

namespace {

struct Capture {
  std::vector<std::pair<BitVector, ObjectiveVector>> reports;
  ReportSink sink() {
    return [this](const BitVector& x, std::span<const std::int64_t> objv) {
      reports.emplace_back(x, ObjectiveVector(objv.begin(), objv.end()));
    };
  }
};

}  // namespace

TEST_CASE("climb: a w-local optimum start takes zero moves and reports itself") {
  auto f = VectorMkLandscape::Builder(3, 2, 2, 2)
               .add(0, {0, 1}, {0, 0, 0, 0})
               .add(1, {1, 2}, {0, 0, 0, 0})
               .build();
  CoOccurrenceGraph g(f);
  MoveIndex index(f, g, 2);
  Rng rng = make_rng(1);
  const BitVector x0 = BitVector::from_string("101");
  Capture cap;
  const auto result = climb(f, index, x0, WeightVector({1.0, 1.0}), rng, cap.sink());
  CHECK(result.moves == 0);
  CHECK(result.completed);
  CHECK(result.solution == x0);
  REQUIRE(cap.reports.size() == 1);
  CHECK(cap.reports[0].first == x0);
}

TEST_CASE("climb: d=1 terminates with no improving move left in the ball") {
  Rng rng = make_rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = VectorMkLandscape::generate_adjacent_mnk(14, 2, 1, 100, rng());
    CoOccurrenceGraph g(f);
    for (std::uint32_t r = 1; r <= 2; ++r) {
      MoveIndex index(f, g, r);
      Capture cap;
      const auto result =
          climb(f, index, random_bits(rng, 14), WeightVector({1.0}), rng, cap.sink());
      CHECK(result.completed);
      // Single objective: strong and weak coincide, so the terminal solution
      // maximizes over the whole radius-r ball.
      for (const auto& e : oracle::ball_scan(f, result.solution, r))
        CHECK(e.delta[0] <= 0);
    }
  }
}

TEST_CASE("climb: non-co-occurring trade-off reaches the dominating solution") {
  auto f = testutil::two_var_tradeoff();
  CoOccurrenceGraph g(f);
  MoveIndex index(f, g, 2);
  Rng rng = make_rng(3);
  const BitVector x0(2);  // f(00) = (1,1); f(11) = (3,3) dominates it
  Capture cap;
  const auto result = climb(f, index, x0, WeightVector({1.0, 1.0}), rng, cap.sink());
  CHECK(result.completed);
  CHECK(result.solution == BitVector::from_string("11"));
  CHECK(result.objective == ObjectiveVector{3, 3});
  CHECK(result.moves == 2);
  CHECK(result.weak_moves == 2);  // both steps trade one objective for the other
  CHECK(result.strong_moves == 0);
  CHECK(dominates(result.objective, f.evaluate(x0)));
}

TEST_CASE("climb: terminal solutions are w-local optima (exhaustive check)") {
  Rng rng = make_rng(2025);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::uint32_t>(10 + uniform_below(rng, 6));
    auto f = VectorMkLandscape::generate_adjacent_mnk(n, 2, 2, 100, rng());
    CoOccurrenceGraph g(f);
    const auto r = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    MoveIndex index(f, g, r);
    const double a = 0.1 + 0.8 * uniform_unit(rng);
    const WeightVector w({a, 1.0 - a});
    Capture cap;
    const auto result = climb(f, index, random_bits(rng, n), w, rng, cap.sink());
    CHECK(result.completed);
    CHECK(oracle::is_w_local_optimum(f, result.solution, r, w));
  }
}

TEST_CASE("selection: minimum-size moves first, uniformly at random among ties") {
  // f = x0 + x1 with co-occurring variables: at 00 the strong bucket holds
  // both singletons and the pair, but only singletons may be sampled.
  auto f = VectorMkLandscape::Builder(2, 1, 2, 3).add(0, {0, 1}, {0, 1, 1, 2}).build();
  CoOccurrenceGraph g(f);
  MoveIndex index(f, g, 2);
  ScoreStore store(f, index, BitVector(2), WeightVector({1.0}));
  REQUIRE(store.bucket_size(Bucket::Strong) == 3);

  Rng rng = make_rng(9);
  std::map<std::uint32_t, int> freq;
  for (int i = 0; i < 10000; ++i) ++freq[store.sample(Bucket::Strong, rng)];
  REQUIRE(freq.size() == 2);
  for (const auto& [m, count] : freq) {
    CHECK(index.move_size(m) == 1);
    CHECK(count > 4700);  // ~6 sigma around the fair 5000
    CHECK(count < 5300);
  }

  SUBCASE("a single-member bucket always returns that member") {
    // At 10 only flipping x1 gains; the pair just swaps the bits.
    ScoreStore s2(f, index, BitVector::from_string("10"), WeightVector({1.0}));
    REQUIRE(s2.bucket_size(Bucket::Strong) == 1);
    Rng r2 = make_rng(10);
    for (int i = 0; i < 100; ++i) {
      const auto m = s2.sample(Bucket::Strong, r2);
      const auto vars = index.move_vars(m);
      REQUIRE(vars.size() == 1);
      CHECK(vars[0] == 1);
    }
  }
}

TEST_CASE("climb: w-scalarized objective strictly increases and no solution repeats") {
  Rng rng = make_rng(7777);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = VectorMkLandscape::generate_adjacent_mnk(16, 3, 2, 100, rng());
    CoOccurrenceGraph g(f);
    MoveIndex index(f, g, 2);
    const double a = 0.2 + 0.6 * uniform_unit(rng);
    const WeightVector w({a, 1.0 - a});
    ClimbTrace trace;
    ClimbOptions opts;
    opts.trace = &trace;
    Capture cap;
    const auto result = climb(f, index, random_bits(rng, 16), w, rng, cap.sink(), opts);
    REQUIRE(trace.visited.size() == result.moves + 1);

    std::unordered_set<BitVector, BitVectorHash> seen;
    std::uint64_t dominating_steps = 0;
    for (std::size_t i = 0; i < trace.visited.size(); ++i) {
      CHECK(seen.insert(trace.visited[i].first).second);  // never revisit
      if (i == 0) continue;
      const auto& prev = trace.visited[i - 1].second;
      const auto& cur = trace.visited[i].second;
      ObjectiveVector delta(cur.size());
      for (std::size_t j = 0; j < cur.size(); ++j) delta[j] = cur[j] - prev[j];
      CHECK(w_score(w, delta) > 0.0);  // every accepted move w-improves
      if (dominates(cur, prev)) ++dominating_steps;
    }
    // Strong steps dominate; weak steps never do (they would have been
    // classified strong otherwise).
    CHECK(dominating_steps == result.strong_moves);
  }
}

TEST_CASE("climb: reports are exactly the weak-step predecessors plus the final solution") {
  Rng rng = make_rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = VectorMkLandscape::generate_adjacent_mnk(15, 2, 2, 100, rng());
    CoOccurrenceGraph g(f);
    MoveIndex index(f, g, 2);
    Capture cap;
    const auto result =
        climb(f, index, random_bits(rng, 15), WeightVector({0.5, 0.5}), rng, cap.sink());
    CHECK(cap.reports.size() == result.weak_moves + 1);
    CHECK(cap.reports.back().first == result.solution);
    CHECK(cap.reports.back().second == result.objective);
    for (const auto& [x, objv] : cap.reports) CHECK(f.evaluate(x) == objv);
  }
}

TEST_CASE("climb: an expired deadline stops between moves without a final report") {
  auto f = VectorMkLandscape::generate_adjacent_mnk(30, 2, 2, 100, 5);
  CoOccurrenceGraph g(f);
  MoveIndex index(f, g, 2);
  Rng rng = make_rng(6);
  ClimbOptions opts;
  opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  Capture cap;
  const auto result =
      climb(f, index, random_bits(rng, 30), WeightVector({1.0, 1.0}), rng, cap.sink(), opts);
  CHECK_FALSE(result.completed);
  CHECK(result.moves == 0);
  CHECK(cap.reports.empty());
}
