#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hamball/bits.hpp"
#include "hamball/moves.hpp"
#include "hamball/rng.hpp"

namespace hamball {

// Strictly positive weights defining the scalarizing direction. Positivity is
// what makes w-improving acceptance cycle-free.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const { return w_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> w_;
};

enum class Bucket : std::uint8_t { Strong = 0, WImproving = 1, Rest = 2 };

inline double w_score(const WeightVector& w, std::span<const std::int64_t> s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * static_cast<double>(s[i]);
  return acc;
}

// Strong: no component decreases and at least one increases (the new solution
// dominates the old). WImproving: not strong but w·S > 0. Rest: everything
// else, including all-zero scores.
inline Bucket classify_score(std::span<const std::int64_t> s, const WeightVector& w) {
  bool any_pos = false, any_neg = false;
  for (std::int64_t v : s) {
    any_pos |= v > 0;
    any_neg |= v < 0;
  }
  if (any_pos && !any_neg) return Bucket::Strong;
  return w_score(w, s) > 0.0 ? Bucket::WImproving : Bucket::Rest;
}

// Exact integer score vectors S_v = f(x xor v) - f(x) for every move in M^r,
// kept current under moves in constant time per move, with the moves
// partitioned into the three selection buckets. Bound to one climb at a time;
// distinct stores over the same instance/index may run concurrently.
class ScoreStore {
 public:
  ScoreStore(const VectorMkLandscape& f, const MoveIndex& index);
  ScoreStore(const VectorMkLandscape& f, const MoveIndex& index, const BitVector& x,
             WeightVector w);

  // Scores from scratch for a new solution and weights; reuses all storage.
  void reset(const BitVector& x, WeightVector w);

  // Score update for move t followed by x <- x xor t. Only subfunctions
  // overlapping t are visited and only their incident moves change; every
  // touched move is re-bucketed.
  void apply(std::uint32_t move_id);

  const BitVector& solution() const { return x_; }
  std::span<const std::int64_t> objective() const { return objective_; }
  const WeightVector& weights() const { return w_; }

  std::span<const std::int64_t> score(std::uint32_t move_id) const {
    return {scores_.data() + static_cast<std::size_t>(move_id) * d_, d_};
  }
  double w_score_of(std::uint32_t move_id) const { return w_score(w_, score(move_id)); }
  Bucket bucket_of(std::uint32_t move_id) const { return static_cast<Bucket>(tag_[move_id]); }

  std::size_t bucket_size(Bucket b) const { return bucket_count_[static_cast<int>(b)]; }
  bool improving_available() const {
    return bucket_count_[0] + bucket_count_[1] > 0;
  }

  // Uniformly random member of the bucket among those of minimum size |v|.
  // The bucket must be non-empty.
  std::uint32_t sample(Bucket b, Rng& rng) const;

  // Re-tags the non-strong moves against new weights; strong tags and all
  // score vectors are untouched. (Keeping one Rest bucket means disimproving
  // moves are rescanned too; splitting it would only speed this call.)
  void reclassify(WeightVector w_new);

  // Cumulative count of (subfunction, move) pairs processed by apply().
  std::uint64_t update_triples() const { return triples_; }

  const MoveIndex& index() const { return *index_; }

  // Debug dump: one line per move with vars, score vector and bucket.
  void dump(std::ostream& out) const;

 private:
  void place(std::uint32_t move_id, Bucket b);
  void remove(std::uint32_t move_id);
  void rebucket(std::uint32_t move_id);

  const VectorMkLandscape* f_;
  const MoveIndex* index_;
  std::uint32_t d_;

  BitVector x_;
  WeightVector w_;
  ObjectiveVector objective_;
  std::vector<std::int64_t> scores_;  // num_moves * d

  std::vector<std::uint8_t> tag_;
  std::vector<std::uint32_t> pos_;
  std::array<std::vector<std::vector<std::uint32_t>>, 3> buckets_;  // [bucket][size-1]
  std::array<std::size_t, 3> bucket_count_{};

  // apply() scratch: epoch stamps dedupe subfunctions and touched moves.
  std::vector<std::uint64_t> sub_stamp_;
  std::vector<std::uint64_t> move_stamp_;
  std::vector<std::uint32_t> touched_;
  std::vector<std::uint32_t> gather_;
  std::uint64_t epoch_ = 0;
  std::uint64_t triples_ = 0;
};

}  // namespace hamball
