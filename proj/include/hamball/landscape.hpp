#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "hamball/bits.hpp"

namespace hamball {

using ObjectiveVector = std::vector<std::int64_t>;

// One k-bounded term of an objective component. The table holds the value for
// every assignment of the masked variables: bit j of the table index is the
// value of variable mask[j].
struct Subfunction {
  std::uint32_t objective = 0;
  std::vector<std::uint32_t> mask;   // sorted, unique, |mask| <= k
  std::vector<std::int32_t> table;   // length 2^|mask|, entries in [0, q)

  bool operator==(const Subfunction&) const = default;
};

// Table index of x's projection onto the subfunction mask.
inline std::uint32_t table_index(const Subfunction& sub, const BitVector& x) {
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < sub.mask.size(); ++j)
    idx |= static_cast<std::uint32_t>(x.get(sub.mask[j])) << j;
  return idx;
}

// A d-objective function over bit strings where each component is a sum of
// k-bounded subfunctions with integer values in [0, q). Immutable after
// construction and safe to share across concurrent climbs.
class VectorMkLandscape {
 public:
  class Builder {
   public:
    Builder(std::uint32_t n, std::uint32_t d, std::uint32_t k, std::int32_t q);

    Builder& add(std::uint32_t objective, std::vector<std::uint32_t> mask,
                 std::vector<std::int32_t> table);

    VectorMkLandscape build();

   private:
    std::uint32_t n_, d_, k_;
    std::int32_t q_;
    std::vector<Subfunction> subs_;
  };

  std::uint32_t num_vars() const { return n_; }
  std::uint32_t num_objectives() const { return d_; }
  std::uint32_t epistasis_bound() const { return k_; }
  std::int32_t value_bound() const { return q_; }

  std::size_t num_subfunctions() const { return subs_.size(); }
  const Subfunction& subfunction(std::size_t id) const { return subs_[id]; }
  std::span<const Subfunction> subfunctions() const { return subs_; }

  // Flat views of the same data, kept in contiguous pools so the score
  // update's per-subfunction lookups do not chase per-struct allocations.
  std::span<const std::int32_t> sub_table(std::size_t id) const {
    return {table_pool_.data() + table_off_[id], table_off_[id + 1] - table_off_[id]};
  }
  std::span<const std::uint32_t> sub_mask(std::size_t id) const {
    return {mask_pool_.data() + mask_off_[id], mask_off_[id + 1] - mask_off_[id]};
  }
  const std::int32_t* sub_table_ptr(std::size_t id) const {
    return table_pool_.data() + table_off_[id];
  }
  const std::uint32_t* sub_mask_ptr(std::size_t id) const {
    return mask_pool_.data() + mask_off_[id];
  }
  std::uint32_t sub_objective(std::size_t id) const { return sub_obj_[id]; }

  // Per-objective subfunction counts m_i and (i, l) -> flat id addressing.
  std::uint32_t subfunction_count(std::uint32_t objective) const {
    return obj_offsets_[objective + 1] - obj_offsets_[objective];
  }
  std::size_t subfunction_id(std::uint32_t objective, std::uint32_t local) const;

  // Subfunctions whose mask contains the given variable.
  std::span<const std::uint32_t> subfunctions_of_var(std::uint32_t var) const {
    return {var_subs_.data() + var_off_[var], var_off_[var + 1] - var_off_[var]};
  }

  // Maximum number of subfunctions any single variable appears in (c).
  std::uint32_t max_occurrence() const { return max_occurrence_; }

  // Largest possible value of component i: m_i * (q - 1).
  std::int64_t objective_upper_bound(std::uint32_t objective) const {
    return static_cast<std::int64_t>(subfunction_count(objective)) * (q_ - 1);
  }

  ObjectiveVector evaluate(const BitVector& x) const;
  std::int64_t evaluate_sub(std::uint32_t objective, std::uint32_t local,
                            const BitVector& x) const;

  // Adjacent MNKq model: m_i = N for every objective and subfunction l of any
  // objective depends on variables {l, l+1, ..., l+K} mod N, so k = K+1 and
  // every variable appears in exactly d*(K+1) subfunctions.
  static VectorMkLandscape generate_adjacent_mnk(std::uint32_t n, std::uint32_t K,
                                                 std::uint32_t d, std::int32_t q,
                                                 std::uint64_t seed);

  // Random interaction model: subfunction l depends on variable l plus K
  // others drawn uniformly. No constant-occurrence guarantee, so the
  // constant-time update bounds do not apply; provided for experimentation.
  static VectorMkLandscape generate_random_mnk(std::uint32_t n, std::uint32_t K,
                                               std::uint32_t d, std::int32_t q,
                                               std::uint64_t seed);

  bool operator==(const VectorMkLandscape& other) const {
    return n_ == other.n_ && d_ == other.d_ && k_ == other.k_ && q_ == other.q_ &&
           subs_ == other.subs_;
  }

 private:
  VectorMkLandscape() = default;
  friend class Builder;

  std::uint32_t n_ = 0, d_ = 0, k_ = 0;
  std::int32_t q_ = 0;
  std::vector<Subfunction> subs_;          // grouped by objective
  std::vector<std::uint32_t> obj_offsets_; // size d+1
  std::vector<std::uint32_t> var_subs_;    // var -> subfunction ids (CSR)
  std::vector<std::uint32_t> var_off_;
  std::vector<std::int32_t> table_pool_;   // flat mirrors of subs_
  std::vector<std::uint64_t> table_off_;
  std::vector<std::uint32_t> mask_pool_;
  std::vector<std::uint64_t> mask_off_;
  std::vector<std::uint32_t> sub_obj_;
  std::uint32_t max_occurrence_ = 0;
};

// Graph on variables with an edge wherever two variables appear together in
// some subfunction mask.
class CoOccurrenceGraph {
 public:
  explicit CoOccurrenceGraph(const VectorMkLandscape& f);
  CoOccurrenceGraph(std::uint32_t n,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(off_.size() - 1); }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {adj_.data() + off_[v], off_[v + 1] - off_[v]};
  }

  bool has_edge(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t max_degree() const { return max_degree_; }

 private:
  void finish(std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs, std::uint32_t n);

  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> off_;
  std::uint32_t max_degree_ = 0;
};

// Text instance format, one subfunction per line; round-trips bit-exactly.
void save_instance(const VectorMkLandscape& f, std::ostream& out);
void save_instance(const VectorMkLandscape& f, const std::filesystem::path& path);
VectorMkLandscape load_instance(std::istream& in, const std::string& name = "<stream>");
VectorMkLandscape load_instance(const std::filesystem::path& path);

}  // namespace hamball
