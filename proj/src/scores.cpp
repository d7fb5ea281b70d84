#include "hamball/scores.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hamball {

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("weights: empty vector");
  for (double v : w_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weights: every component must be strictly positive");
}

ScoreStore::ScoreStore(const VectorMkLandscape& f, const MoveIndex& index)
    : f_(&f),
      index_(&index),
      d_(f.num_objectives()),
      x_(f.num_vars()),
      w_(std::vector<double>(f.num_objectives(), 1.0)),
      objective_(d_, 0),
      scores_(static_cast<std::size_t>(index.num_moves()) * d_, 0),
      tag_(index.num_moves(), static_cast<std::uint8_t>(Bucket::Rest)),
      pos_(index.num_moves(), 0),
      sub_stamp_(f.num_subfunctions(), 0),
      move_stamp_(index.num_moves(), 0) {
  for (auto& bucket : buckets_) bucket.resize(index.radius());
  reset(x_, w_);
}

ScoreStore::ScoreStore(const VectorMkLandscape& f, const MoveIndex& index, const BitVector& x,
                       WeightVector w)
    : ScoreStore(f, index) {
  reset(x, std::move(w));
}

void ScoreStore::reset(const BitVector& x, WeightVector w) {
  if (x.size() != f_->num_vars())
    throw std::invalid_argument("scores: solution length mismatch");
  if (w.size() != d_) throw std::invalid_argument("scores: weight dimension mismatch");
  x_ = x;
  w_ = std::move(w);

  // One pass over the subfunctions accumulates both f(x) and, through each
  // incidence list, every masked score delta: only subfunctions overlapping a
  // move contribute to its score.
  std::fill(objective_.begin(), objective_.end(), 0);
  std::fill(scores_.begin(), scores_.end(), 0);
  const auto num_subs = f_->num_subfunctions();
  for (std::size_t s = 0; s < num_subs; ++s) {
    const auto mask = f_->sub_mask(s);
    const auto* table = f_->sub_table_ptr(s);
    std::uint32_t idx = 0;
    for (std::size_t j = 0; j < mask.size(); ++j)
      idx |= static_cast<std::uint32_t>(x_.get(mask[j])) << j;
    const std::int32_t at_x = table[idx];
    const std::uint32_t obj = f_->sub_objective(s);
    objective_[obj] += at_x;
    for (const auto& [move, proj] : index_->moves_touching_sub(s))
      scores_[static_cast<std::size_t>(move) * d_ + obj] += table[idx ^ proj] - at_x;
  }

  for (auto& bucket : buckets_)
    for (auto& by_size : bucket) by_size.clear();
  bucket_count_.fill(0);
  const std::uint32_t num_moves = index_->num_moves();
  for (std::uint32_t m = 0; m < num_moves; ++m) place(m, classify_score(score(m), w_));
}

void ScoreStore::apply(std::uint32_t move_id) {
  assert(move_id < index_->num_moves());
  const auto move = index_->move_vars(move_id);

  // The stored score of the move being taken is exactly f(x xor t) - f(x).
  {
    const auto s = score(move_id);
    for (std::uint32_t i = 0; i < d_; ++i) objective_[i] += s[i];
  }

  ++epoch_;
  touched_.clear();

  // Gather the subfunctions the move overlaps, warming their tables and
  // masks: the walk below would otherwise serialize on those loads.
  gather_.clear();
  for (std::uint32_t var : move) {
    for (std::uint32_t s : f_->subfunctions_of_var(var)) {
      if (sub_stamp_[s] == epoch_) continue;
      sub_stamp_[s] = epoch_;
      gather_.push_back(s);
      __builtin_prefetch(f_->sub_table_ptr(s));
      __builtin_prefetch(f_->sub_mask_ptr(s));
    }
  }

  for (std::uint32_t s : gather_) {
    const auto mask = f_->sub_mask(s);
    const auto* table = f_->sub_table_ptr(s);

    // Table-index bits of x's projection and of the mask variables the move
    // flips.
    std::uint32_t idx = 0;
    for (std::size_t j = 0; j < mask.size(); ++j)
      idx |= static_cast<std::uint32_t>(x_.get(mask[j])) << j;
    std::uint32_t proj_t = 0;
    {
      std::size_t a = 0, b = 0;
      while (a < mask.size() && b < move.size()) {
        if (mask[a] == move[b]) {
          proj_t |= 1u << a;
          ++a;
          ++b;
        } else if (mask[a] < move[b]) {
          ++a;
        } else {
          ++b;
        }
      }
    }

    const std::int32_t at_x = table[idx];
    const std::int32_t at_xt = table[idx ^ proj_t];
    const std::uint32_t obj = f_->sub_objective(s);
    const auto touches = index_->moves_touching_sub(s);
    const std::size_t count = touches.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (i + 8 < count)
        __builtin_prefetch(&scores_[static_cast<std::size_t>(touches[i + 8].move) * d_]);
      const auto [v, proj_v] = touches[i];
      scores_[static_cast<std::size_t>(v) * d_ + obj] +=
          static_cast<std::int64_t>(table[idx ^ proj_t ^ proj_v]) - at_xt -
          table[idx ^ proj_v] + at_x;
      if (move_stamp_[v] != epoch_) {
        move_stamp_[v] = epoch_;
        touched_.push_back(v);
      }
    }
    triples_ += count;
  }

  x_.flip_all(move);
  for (std::uint32_t v : touched_) rebucket(v);
}

std::uint32_t ScoreStore::sample(Bucket b, Rng& rng) const {
  const auto& bucket = buckets_[static_cast<int>(b)];
  for (const auto& by_size : bucket) {
    if (!by_size.empty())
      return by_size[uniform_below(rng, by_size.size())];
  }
  throw std::logic_error("scores: sampling from an empty bucket");
}

void ScoreStore::reclassify(WeightVector w_new) {
  if (w_new.size() != d_) throw std::invalid_argument("scores: weight dimension mismatch");
  w_ = std::move(w_new);
  const std::uint32_t num_moves = index_->num_moves();
  for (std::uint32_t m = 0; m < num_moves; ++m) {
    if (bucket_of(m) == Bucket::Strong) continue;
    rebucket(m);
  }
}

void ScoreStore::place(std::uint32_t move_id, Bucket b) {
  auto& by_size = buckets_[static_cast<int>(b)][index_->move_size(move_id) - 1];
  tag_[move_id] = static_cast<std::uint8_t>(b);
  pos_[move_id] = static_cast<std::uint32_t>(by_size.size());
  by_size.push_back(move_id);
  ++bucket_count_[static_cast<int>(b)];
}

void ScoreStore::remove(std::uint32_t move_id) {
  auto& by_size = buckets_[tag_[move_id]][index_->move_size(move_id) - 1];
  const std::uint32_t at = pos_[move_id];
  by_size[at] = by_size.back();
  pos_[by_size[at]] = at;
  by_size.pop_back();
  --bucket_count_[tag_[move_id]];
}

void ScoreStore::rebucket(std::uint32_t move_id) {
  const Bucket b = classify_score(score(move_id), w_);
  if (b == bucket_of(move_id)) return;
  remove(move_id);
  place(move_id, b);
}

void ScoreStore::dump(std::ostream& out) const {
  static constexpr const char* names[] = {"strong", "w-improving", "rest"};
  const std::uint32_t num_moves = index_->num_moves();
  for (std::uint32_t m = 0; m < num_moves; ++m) {
    out << m << " [";
    const auto vars = index_->move_vars(m);
    for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? "," : "") << vars[i];
    out << "] (";
    const auto s = score(m);
    for (std::uint32_t i = 0; i < d_; ++i) out << (i ? "," : "") << s[i];
    out << ") " << names[tag_[m]] << "\n";
  }
}

}  // namespace hamball
