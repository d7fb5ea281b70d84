#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "hamball/bits.hpp"
#include "hamball/landscape.hpp"

namespace hamball {

// True iff a >= b component-wise with at least one strict inequality
// (maximization). Throws on dimension mismatch.
bool dominates(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

enum class InsertOutcome : std::uint8_t { Added, Dominated, Duplicate };

// External set of mutually non-dominated reported solutions. Duplicates of an
// existing objective vector keep the first-seen solution so fixed seeds give
// deterministic contents.
//
// Inserts arrive once per weak climber step, so for d=2 the set is indexed by
// the first objective: a mutually non-dominated planar front has strictly
// decreasing second coordinate along increasing first, which makes the
// dominance test one ordered lookup and eviction a backwards walk over the
// doomed prefix. Other dimensions fall back to a linear scan.
class ParetoArchive {
 public:
  struct Entry {
    ObjectiveVector objective;
    BitVector solution;
  };

  explicit ParetoArchive(std::uint32_t dims) : dims_(dims) {}

  InsertOutcome insert(std::span<const std::int64_t> objective, const BitVector& solution);

  std::size_t size() const { return entries_.size(); }
  std::uint32_t dims() const { return dims_; }
  std::span<const Entry> entries() const { return entries_; }

  std::uint64_t added() const { return added_; }
  std::uint64_t rejected_dominated() const { return rejected_dominated_; }
  std::uint64_t rejected_duplicate() const { return rejected_duplicate_; }

  void merge_from(const ParetoArchive& other);

  // Objective vectors sorted lexicographically (the front-file order).
  std::vector<ObjectiveVector> front() const;

 private:
  InsertOutcome insert_planar(std::span<const std::int64_t> objective,
                              const BitVector& solution);
  InsertOutcome insert_linear(std::span<const std::int64_t> objective,
                              const BitVector& solution);
  void evict(std::size_t pos);

  std::uint32_t dims_;
  std::vector<Entry> entries_;
  std::map<std::int64_t, std::size_t> by_first_;  // d=2: first objective -> entries_ slot
  std::uint64_t added_ = 0, rejected_dominated_ = 0, rejected_duplicate_ = 0;
};

// Front file: one entry per line, d tab-separated integers, sorted
// lexicographically.
void write_front(const ParetoArchive& archive, std::ostream& out);
void write_front(const ParetoArchive& archive, const std::filesystem::path& path);
std::vector<ObjectiveVector> read_front(std::istream& in, const std::string& name = "<stream>");
std::vector<ObjectiveVector> read_front(const std::filesystem::path& path);

}  // namespace hamball
