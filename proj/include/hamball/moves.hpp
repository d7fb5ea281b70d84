#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamball/landscape.hpp"

namespace hamball {

// Every subset of up to `radius` variables whose induced co-occurrence
// subgraph is connected, emitted exactly once. Scores for these moves suffice
// to recover the score of any move in the Hamming ball: a disconnected move is
// the disjoint union of its components and its score is their sum.
std::vector<std::vector<std::uint32_t>> enumerate_connected_subsets(
    const CoOccurrenceGraph& g, std::uint32_t radius);

// Connected components of the subgraph induced by `vars`. Components come out
// sorted by smallest member, each internally sorted.
std::vector<std::vector<std::uint32_t>> decompose_move(
    std::span<const std::uint32_t> vars, const CoOccurrenceGraph& g);

// The move basis M^r with the incidence structure the score store needs:
// which moves each variable belongs to, and for each subfunction the moves
// that overlap its mask together with the precomputed table-index projection
// of that overlap. Immutable after construction.
class MoveIndex {
 public:
  // An incidence entry: move id plus the table-index bits of move ∩ mask.
  struct Touch {
    std::uint32_t move;
    std::uint32_t proj;
  };

  MoveIndex(const VectorMkLandscape& f, const CoOccurrenceGraph& g, std::uint32_t radius);

  std::uint32_t radius() const { return radius_; }
  std::uint32_t num_moves() const { return static_cast<std::uint32_t>(move_off_.size() - 1); }

  std::span<const std::uint32_t> move_vars(std::uint32_t id) const {
    return {var_pool_.data() + move_off_[id], move_off_[id + 1] - move_off_[id]};
  }
  std::uint32_t move_size(std::uint32_t id) const {
    return static_cast<std::uint32_t>(move_off_[id + 1] - move_off_[id]);
  }

  std::span<const std::uint32_t> moves_of_var(std::uint32_t var) const {
    return {vm_pool_.data() + vm_off_[var], vm_off_[var + 1] - vm_off_[var]};
  }

  std::span<const Touch> moves_touching_sub(std::size_t sub_id) const {
    return {sub_pool_.data() + sub_off_[sub_id], sub_off_[sub_id + 1] - sub_off_[sub_id]};
  }

  std::size_t max_sub_incidence() const { return max_sub_incidence_; }

 private:
  std::uint32_t radius_;
  std::vector<std::uint32_t> var_pool_;
  std::vector<std::uint64_t> move_off_;
  std::vector<std::uint32_t> vm_pool_;
  std::vector<std::uint64_t> vm_off_;
  std::vector<Touch> sub_pool_;
  std::vector<std::uint64_t> sub_off_;
  std::size_t max_sub_incidence_ = 0;
};

}  // namespace hamball
