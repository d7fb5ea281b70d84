#include "hamball/archive.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hamball {

bool dominates(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: objective dimension mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    strict |= a[i] > b[i];
  }
  return strict;
}

InsertOutcome ParetoArchive::insert(std::span<const std::int64_t> objective,
                                    const BitVector& solution) {
  if (objective.size() != dims_)
    throw std::invalid_argument("archive: objective dimension mismatch");
  return dims_ == 2 ? insert_planar(objective, solution) : insert_linear(objective, solution);
}

InsertOutcome ParetoArchive::insert_planar(std::span<const std::int64_t> objective,
                                           const BitVector& solution) {
  const std::int64_t p0 = objective[0], p1 = objective[1];
  // The only candidate dominator is the entry with the smallest first
  // objective >= p0: along the front the second objective peaks there.
  auto it = by_first_.lower_bound(p0);
  if (it != by_first_.end()) {
    const std::int64_t e1 = entries_[it->second].objective[1];
    if (it->first == p0 && e1 == p1) {
      ++rejected_duplicate_;
      return InsertOutcome::Duplicate;
    }
    if (e1 >= p1) {
      ++rejected_dominated_;
      return InsertOutcome::Dominated;
    }
    // Same first objective but lower second: the incumbent loses.
    if (it->first == p0) {
      evict(it->second);
      it = by_first_.erase(it);
    }
  }
  // Entries dominated by the newcomer sit just below p0 with second <= p1.
  while (it != by_first_.begin()) {
    auto prev = std::prev(it);
    if (entries_[prev->second].objective[1] > p1) break;
    evict(prev->second);
    by_first_.erase(prev);
  }
  by_first_.emplace(p0, entries_.size());
  entries_.push_back({ObjectiveVector(objective.begin(), objective.end()), solution});
  ++added_;
  return InsertOutcome::Added;
}

InsertOutcome ParetoArchive::insert_linear(std::span<const std::int64_t> objective,
                                           const BitVector& solution) {
  for (const auto& e : entries_) {
    if (std::equal(objective.begin(), objective.end(), e.objective.begin())) {
      ++rejected_duplicate_;
      return InsertOutcome::Duplicate;
    }
    if (dominates(e.objective, objective)) {
      ++rejected_dominated_;
      return InsertOutcome::Dominated;
    }
  }
  // Newcomer survives; evict everything it dominates.
  std::erase_if(entries_, [&](const Entry& e) { return dominates(objective, e.objective); });
  entries_.push_back({ObjectiveVector(objective.begin(), objective.end()), solution});
  ++added_;
  return InsertOutcome::Added;
}

// Swap-pop from the entry store, redirecting the index slot of whichever
// entry got moved into the hole.
void ParetoArchive::evict(std::size_t pos) {
  const std::size_t last = entries_.size() - 1;
  if (pos != last) {
    entries_[pos] = std::move(entries_[last]);
    by_first_[entries_[pos].objective[0]] = pos;
  }
  entries_.pop_back();
}

void ParetoArchive::merge_from(const ParetoArchive& other) {
  for (const auto& e : other.entries_) insert(e.objective, e.solution);
}

std::vector<ObjectiveVector> ParetoArchive::front() const {
  std::vector<ObjectiveVector> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.objective);
  std::sort(out.begin(), out.end());
  return out;
}

void write_front(const ParetoArchive& archive, std::ostream& out) {
  for (const auto& objv : archive.front()) {
    for (std::size_t i = 0; i < objv.size(); ++i) out << (i ? "\t" : "") << objv[i];
    out << "\n";
  }
}

void write_front(const ParetoArchive& archive, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_front(archive, out);
  if (!out) throw std::runtime_error("write failed on " + path.string());
}

std::vector<ObjectiveVector> read_front(std::istream& in, const std::string& name) {
  std::vector<ObjectiveVector> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t dims = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ObjectiveVector v;
    std::int64_t x;
    while (ls >> x) v.push_back(x);
    if (!ls.eof())
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": malformed value");
    if (v.empty()) continue;
    if (dims == 0) dims = v.size();
    if (v.size() != dims)
      throw std::runtime_error(name + ":" + std::to_string(lineno) +
                               ": inconsistent column count");
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ObjectiveVector> read_front(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_front(in, path.string());
}

}  // namespace hamball
