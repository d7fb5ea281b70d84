#include "hamball/moves.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hamball {

namespace {

// Grows connected sets from each root, admitting only vertices greater than
// the root and excluding anything already in the set or its neighborhood, so
// every connected subset is emitted exactly once with no dedup table.
class SubsetEnumerator {
 public:
  SubsetEnumerator(const CoOccurrenceGraph& g, std::uint32_t radius,
                   std::vector<std::vector<std::uint32_t>>& out)
      : g_(g), radius_(radius), out_(out), blocked_(g.num_vars(), 0) {}

  void run() {
    for (std::uint32_t root = 0; root < g_.num_vars(); ++root) {
      root_ = root;
      set_.assign(1, root);
      emit();
      if (radius_ == 1) continue;
      blocked_[root] = 1;
      std::vector<std::uint32_t> ext;
      std::vector<std::uint32_t> marked{root};
      for (std::uint32_t u : g_.neighbors(root)) {
        if (u > root) {
          blocked_[u] = 1;
          marked.push_back(u);
          ext.push_back(u);
        }
      }
      extend(ext);
      for (std::uint32_t u : marked) blocked_[u] = 0;
    }
  }

 private:
  void extend(const std::vector<std::uint32_t>& ext) {
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const std::uint32_t w = ext[i];
      set_.push_back(w);
      emit();
      if (set_.size() < radius_) {
        std::vector<std::uint32_t> next(ext.begin() + i + 1, ext.end());
        std::vector<std::uint32_t> newly;
        for (std::uint32_t u : g_.neighbors(w)) {
          if (u > root_ && !blocked_[u]) {
            blocked_[u] = 1;
            newly.push_back(u);
            next.push_back(u);
          }
        }
        extend(next);
        for (std::uint32_t u : newly) blocked_[u] = 0;
      }
      set_.pop_back();
    }
  }

  void emit() {
    auto vars = set_;
    std::sort(vars.begin(), vars.end());
    out_.push_back(std::move(vars));
  }

  const CoOccurrenceGraph& g_;
  std::size_t radius_;
  std::vector<std::vector<std::uint32_t>>& out_;
  std::vector<char> blocked_;
  std::vector<std::uint32_t> set_;
  std::uint32_t root_ = 0;
};

}  // namespace

std::vector<std::vector<std::uint32_t>> enumerate_connected_subsets(
    const CoOccurrenceGraph& g, std::uint32_t radius) {
  if (radius == 0) throw std::invalid_argument("moves: radius must be at least 1");
  std::vector<std::vector<std::uint32_t>> out;
  SubsetEnumerator(g, radius, out).run();
  return out;
}

std::vector<std::vector<std::uint32_t>> decompose_move(std::span<const std::uint32_t> vars,
                                                       const CoOccurrenceGraph& g) {
  std::vector<std::vector<std::uint32_t>> components;
  std::vector<std::uint32_t> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < sorted.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp;
    seen[s] = 1;
    stack.assign(1, sorted[s]);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::uint32_t u : g.neighbors(v)) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), u);
        if (it != sorted.end() && *it == u) {
          const auto j = static_cast<std::size_t>(it - sorted.begin());
          if (!seen[j]) {
            seen[j] = 1;
            stack.push_back(u);
          }
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

MoveIndex::MoveIndex(const VectorMkLandscape& f, const CoOccurrenceGraph& g,
                     std::uint32_t radius)
    : radius_(radius) {
  if (g.num_vars() != f.num_vars())
    throw std::invalid_argument("moves: graph and landscape disagree on n");

  const auto subsets = enumerate_connected_subsets(g, radius);
  const auto num_moves = static_cast<std::uint32_t>(subsets.size());

  move_off_.assign(num_moves + 1, 0);
  for (std::uint32_t m = 0; m < num_moves; ++m)
    move_off_[m + 1] = move_off_[m] + subsets[m].size();
  var_pool_.resize(move_off_.back());
  for (std::uint32_t m = 0; m < num_moves; ++m)
    std::copy(subsets[m].begin(), subsets[m].end(), var_pool_.begin() + move_off_[m]);

  // var -> moves containing it.
  const std::uint32_t n = f.num_vars();
  vm_off_.assign(n + 1, 0);
  for (std::uint32_t v : var_pool_) ++vm_off_[v + 1];
  for (std::uint32_t v = 0; v < n; ++v) vm_off_[v + 1] += vm_off_[v];
  vm_pool_.resize(var_pool_.size());
  {
    std::vector<std::uint64_t> cursor(vm_off_.begin(), vm_off_.end() - 1);
    for (std::uint32_t m = 0; m < num_moves; ++m)
      for (std::uint32_t v : move_vars(m)) vm_pool_[cursor[v]++] = m;
  }

  // subfunction -> overlapping moves with the projection of the overlap onto
  // the mask's table-index bits. Union over the mask's variables, deduped
  // with an epoch stamp, sorted by move id for locality.
  const auto num_subs = f.num_subfunctions();
  sub_off_.assign(num_subs + 1, 0);
  std::vector<std::uint32_t> stamp(num_moves, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> touched;
  for (std::size_t s = 0; s < num_subs; ++s) {
    ++epoch;
    touched.clear();
    for (std::uint32_t v : f.subfunction(s).mask)
      for (std::uint32_t m : moves_of_var(v))
        if (stamp[m] != epoch) {
          stamp[m] = epoch;
          touched.push_back(m);
        }
    sub_off_[s + 1] = sub_off_[s] + touched.size();
    max_sub_incidence_ = std::max(max_sub_incidence_, touched.size());
  }
  sub_pool_.resize(sub_off_.back());
  epoch = 0;
  std::fill(stamp.begin(), stamp.end(), 0);
  for (std::size_t s = 0; s < num_subs; ++s) {
    ++epoch;
    touched.clear();
    const auto& mask = f.subfunction(s).mask;
    for (std::uint32_t v : mask)
      for (std::uint32_t m : moves_of_var(v))
        if (stamp[m] != epoch) {
          stamp[m] = epoch;
          touched.push_back(m);
        }
    std::sort(touched.begin(), touched.end());
    auto* dst = sub_pool_.data() + sub_off_[s];
    for (std::uint32_t m : touched) {
      std::uint32_t proj = 0;
      const auto vars = move_vars(m);
      std::size_t a = 0, b = 0;
      while (a < mask.size() && b < vars.size()) {
        if (mask[a] == vars[b]) {
          proj |= 1u << a;
          ++a;
          ++b;
        } else if (mask[a] < vars[b]) {
          ++a;
        } else {
          ++b;
        }
      }
      assert(proj != 0);
      *dst++ = Touch{m, proj};
    }
  }
}

}  // namespace hamball
