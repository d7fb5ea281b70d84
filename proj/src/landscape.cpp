#include "hamball/landscape.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hamball/rng.hpp"

namespace hamball {

namespace {

std::string bad(const std::string& what) { return "landscape: " + what; }

}  // namespace

VectorMkLandscape::Builder::Builder(std::uint32_t n, std::uint32_t d, std::uint32_t k,
                                    std::int32_t q)
    : n_(n), d_(d), k_(k), q_(q) {
  if (n == 0) throw std::invalid_argument(bad("n must be positive"));
  if (d == 0) throw std::invalid_argument(bad("d must be positive"));
  if (k == 0) throw std::invalid_argument(bad("k must be positive"));
  if (k > 30) throw std::invalid_argument(bad("k too large for dense tables"));
  if (q < 2) throw std::invalid_argument(bad("q must be at least 2"));
}

VectorMkLandscape::Builder& VectorMkLandscape::Builder::add(std::uint32_t objective,
                                                            std::vector<std::uint32_t> mask,
                                                            std::vector<std::int32_t> table) {
  if (objective >= d_) throw std::invalid_argument(bad("objective index out of range"));
  if (mask.size() > k_) throw std::invalid_argument(bad("mask larger than epistasis bound k"));
  if (!std::is_sorted(mask.begin(), mask.end()) ||
      std::adjacent_find(mask.begin(), mask.end()) != mask.end())
    throw std::invalid_argument(bad("mask must be sorted and duplicate-free"));
  if (!mask.empty() && mask.back() >= n_)
    throw std::invalid_argument(bad("mask variable out of range"));
  if (table.size() != (std::size_t{1} << mask.size()))
    throw std::invalid_argument(bad("table length must be 2^|mask|"));
  for (std::int32_t v : table)
    if (v < 0 || v >= q_) throw std::invalid_argument(bad("table entry outside [0, q)"));
  subs_.push_back({objective, std::move(mask), std::move(table)});
  return *this;
}

VectorMkLandscape VectorMkLandscape::Builder::build() {
  VectorMkLandscape f;
  f.n_ = n_;
  f.d_ = d_;
  f.k_ = k_;
  f.q_ = q_;

  // Group by objective, preserving insertion order within each.
  f.obj_offsets_.assign(d_ + 1, 0);
  for (const auto& s : subs_) ++f.obj_offsets_[s.objective + 1];
  for (std::size_t i = 1; i <= d_; ++i) f.obj_offsets_[i] += f.obj_offsets_[i - 1];
  f.subs_.resize(subs_.size());
  {
    std::vector<std::uint32_t> cursor(f.obj_offsets_.begin(), f.obj_offsets_.end() - 1);
    for (auto& s : subs_) f.subs_[cursor[s.objective]++] = std::move(s);
  }

  // var -> subfunction incidence (CSR), and the occurrence bound c.
  std::vector<std::uint32_t> counts(n_, 0);
  for (const auto& s : f.subs_)
    for (std::uint32_t v : s.mask) ++counts[v];
  for (std::uint32_t v = 0; v < n_; ++v)
    if (counts[v] == 0)
      throw std::invalid_argument(bad("variable " + std::to_string(v) +
                                      " appears in no subfunction"));
  f.max_occurrence_ = *std::max_element(counts.begin(), counts.end());
  f.var_off_.assign(n_ + 1, 0);
  for (std::uint32_t v = 0; v < n_; ++v) f.var_off_[v + 1] = f.var_off_[v] + counts[v];
  f.var_subs_.resize(f.var_off_.back());
  std::vector<std::uint32_t> cursor(f.var_off_.begin(), f.var_off_.end() - 1);
  for (std::uint32_t id = 0; id < f.subs_.size(); ++id)
    for (std::uint32_t v : f.subs_[id].mask) f.var_subs_[cursor[v]++] = id;

  // Contiguous mirrors for the hot evaluation paths.
  f.table_off_.assign(f.subs_.size() + 1, 0);
  f.mask_off_.assign(f.subs_.size() + 1, 0);
  f.sub_obj_.resize(f.subs_.size());
  for (std::size_t id = 0; id < f.subs_.size(); ++id) {
    f.table_off_[id + 1] = f.table_off_[id] + f.subs_[id].table.size();
    f.mask_off_[id + 1] = f.mask_off_[id] + f.subs_[id].mask.size();
    f.sub_obj_[id] = f.subs_[id].objective;
  }
  f.table_pool_.reserve(f.table_off_.back());
  f.mask_pool_.reserve(f.mask_off_.back());
  for (const auto& s : f.subs_) {
    f.table_pool_.insert(f.table_pool_.end(), s.table.begin(), s.table.end());
    f.mask_pool_.insert(f.mask_pool_.end(), s.mask.begin(), s.mask.end());
  }

  return f;
}

std::size_t VectorMkLandscape::subfunction_id(std::uint32_t objective,
                                              std::uint32_t local) const {
  if (objective >= d_ || local >= subfunction_count(objective))
    throw std::invalid_argument(bad("subfunction index out of range"));
  return obj_offsets_[objective] + local;
}

ObjectiveVector VectorMkLandscape::evaluate(const BitVector& x) const {
  if (x.size() != n_) throw std::invalid_argument(bad("solution length mismatch"));
  ObjectiveVector out(d_, 0);
  for (const auto& s : subs_) out[s.objective] += s.table[table_index(s, x)];
  return out;
}

std::int64_t VectorMkLandscape::evaluate_sub(std::uint32_t objective, std::uint32_t local,
                                             const BitVector& x) const {
  if (x.size() != n_) throw std::invalid_argument(bad("solution length mismatch"));
  const Subfunction& s = subs_[subfunction_id(objective, local)];
  return s.table[table_index(s, x)];
}

VectorMkLandscape VectorMkLandscape::generate_adjacent_mnk(std::uint32_t n, std::uint32_t K,
                                                           std::uint32_t d, std::int32_t q,
                                                           std::uint64_t seed) {
  if (n <= K) throw std::invalid_argument(bad("adjacent model needs N > K"));
  Builder b(n, d, K + 1, q);
  Rng rng = make_rng(seed);
  const std::size_t table_len = std::size_t{1} << (K + 1);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t l = 0; l < n; ++l) {
      std::vector<std::uint32_t> mask(K + 1);
      for (std::uint32_t j = 0; j <= K; ++j) mask[j] = (l + j) % n;
      std::sort(mask.begin(), mask.end());
      std::vector<std::int32_t> table(table_len);
      for (auto& t : table)
        t = static_cast<std::int32_t>(uniform_below(rng, static_cast<std::uint64_t>(q)));
      b.add(i, std::move(mask), std::move(table));
    }
  }
  return b.build();
}

VectorMkLandscape VectorMkLandscape::generate_random_mnk(std::uint32_t n, std::uint32_t K,
                                                         std::uint32_t d, std::int32_t q,
                                                         std::uint64_t seed) {
  if (n <= K) throw std::invalid_argument(bad("random model needs N > K"));
  Builder b(n, d, K + 1, q);
  Rng rng = make_rng(seed);
  const std::size_t table_len = std::size_t{1} << (K + 1);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t l = 0; l < n; ++l) {
      // Anchor variable l plus K distinct others.
      std::vector<std::uint32_t> mask{l};
      while (mask.size() < K + 1) {
        auto v = static_cast<std::uint32_t>(uniform_below(rng, n));
        if (std::find(mask.begin(), mask.end(), v) == mask.end()) mask.push_back(v);
      }
      std::sort(mask.begin(), mask.end());
      std::vector<std::int32_t> table(table_len);
      for (auto& t : table)
        t = static_cast<std::int32_t>(uniform_below(rng, static_cast<std::uint64_t>(q)));
      b.add(i, std::move(mask), std::move(table));
    }
  }
  return b.build();
}

CoOccurrenceGraph::CoOccurrenceGraph(const VectorMkLandscape& f) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& s : f.subfunctions())
    for (std::size_t a = 0; a < s.mask.size(); ++a)
      for (std::size_t b = a + 1; b < s.mask.size(); ++b) {
        pairs.emplace_back(s.mask[a], s.mask[b]);
        pairs.emplace_back(s.mask[b], s.mask[a]);
      }
  finish(pairs, f.num_vars());
}

CoOccurrenceGraph::CoOccurrenceGraph(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::invalid_argument("graph: edge endpoint out of range");
    if (a == b) continue;
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
  }
  finish(pairs, n);
}

void CoOccurrenceGraph::finish(std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                               std::uint32_t n) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  off_.assign(n + 1, 0);
  adj_.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ++off_[pairs[i].first + 1];
    adj_[i] = pairs[i].second;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    off_[v + 1] += off_[v];
    max_degree_ = std::max(max_degree_, off_[v + 1] - off_[v]);
  }
}

bool CoOccurrenceGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  auto ns = neighbors(a);
  return std::binary_search(ns.begin(), ns.end(), b);
}

void save_instance(const VectorMkLandscape& f, std::ostream& out) {
  out << "vmk 1\n";
  out << "n " << f.num_vars() << "\n";
  out << "d " << f.num_objectives() << "\n";
  out << "k " << f.epistasis_bound() << "\n";
  out << "q " << f.value_bound() << "\n";
  out << "m";
  for (std::uint32_t i = 0; i < f.num_objectives(); ++i) out << ' ' << f.subfunction_count(i);
  out << "\n";
  for (const auto& s : f.subfunctions()) {
    out << "s " << s.objective << ' ' << s.mask.size();
    for (std::uint32_t v : s.mask) out << ' ' << v;
    out << " :";
    for (std::int32_t t : s.table) out << ' ' << t;
    out << "\n";
  }
}

void save_instance(const VectorMkLandscape& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save_instance(f, out);
  if (!out) throw std::runtime_error("write failed on " + path.string());
}

namespace {

class InstanceParser {
 public:
  InstanceParser(std::istream& in, const std::string& name) : in_(in), name_(name) {}

  VectorMkLandscape parse() {
    expect_header("vmk", "1");
    const auto n = parse_uint(header_value("n"));
    const auto d = parse_uint(header_value("d"));
    const auto k = parse_uint(header_value("k"));
    const auto q = parse_int(header_value("q"));

    next_line();
    std::istringstream m_line(line_);
    std::string tag;
    m_line >> tag;
    if (tag != "m") fail("expected 'm' line");
    std::vector<std::uint64_t> m(d);
    for (auto& mi : m)
      if (!(m_line >> mi)) fail("'m' line needs one count per objective");

    VectorMkLandscape::Builder builder = make_builder(n, d, k, q);
    std::vector<std::uint64_t> seen(d, 0);
    while (next_line_opt()) {
      std::istringstream ls(line_);
      ls >> tag;
      if (tag != "s") fail("expected 's' line");
      std::uint32_t obj = 0, msize = 0;
      if (!(ls >> obj >> msize)) fail("subfunction header must be 's <obj> <mask size>'");
      std::vector<std::uint32_t> mask(msize);
      for (auto& v : mask)
        if (!(ls >> v)) fail("mask shorter than its declared size");
      std::string colon;
      if (!(ls >> colon) || colon != ":") fail("expected ':' between mask and table");
      if (msize > 30) fail("mask size too large");
      std::vector<std::int32_t> table;
      table.reserve(std::size_t{1} << msize);
      std::int64_t t = 0;
      while (ls >> t) {
        if (t < std::numeric_limits<std::int32_t>::min() ||
            t > std::numeric_limits<std::int32_t>::max())
          fail("table entry out of integer range");
        table.push_back(static_cast<std::int32_t>(t));
      }
      if (!ls.eof()) fail("malformed table entry");
      if (table.size() != (std::size_t{1} << msize))
        fail("table has " + std::to_string(table.size()) + " entries, expected " +
             std::to_string(std::size_t{1} << msize));
      if (obj < d) ++seen[obj];
      try {
        builder.add(obj, std::move(mask), std::move(table));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    for (std::uint32_t i = 0; i < d; ++i)
      if (seen[i] != m[i])
        fail_nol("objective " + std::to_string(i) + " has " + std::to_string(seen[i]) +
                 " subfunctions, header says " + std::to_string(m[i]));
    try {
      return builder.build();
    } catch (const std::invalid_argument& e) {
      fail_nol(e.what());
    }
    throw std::logic_error("unreachable");
  }

 private:
  VectorMkLandscape::Builder make_builder(std::uint64_t n, std::uint64_t d, std::uint64_t k,
                                          std::int64_t q) {
    try {
      return VectorMkLandscape::Builder(
          static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d),
          static_cast<std::uint32_t>(k), static_cast<std::int32_t>(q));
    } catch (const std::invalid_argument& e) {
      fail_nol(e.what());
    }
    throw std::logic_error("unreachable");
  }

  void expect_header(const std::string& key, const std::string& value) {
    next_line();
    std::istringstream ls(line_);
    std::string k, v;
    ls >> k >> v;
    if (k != key || v != value) fail("expected '" + key + " " + value + "'");
  }

  std::string header_value(const std::string& key) {
    next_line();
    std::istringstream ls(line_);
    std::string k, v;
    ls >> k >> v;
    if (k != key || v.empty()) fail("expected '" + key + " <value>'");
    return v;
  }

  std::uint64_t parse_uint(const std::string& s) {
    try {
      if (!s.empty() && s[0] == '-') fail("value must be non-negative");
      return std::stoull(s);
    } catch (const std::exception&) {
      fail("'" + s + "' is not an unsigned integer");
    }
    return 0;
  }

  std::int64_t parse_int(const std::string& s) {
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
      fail("'" + s + "' is not an integer");
    }
    return 0;
  }

  void next_line() {
    if (!next_line_opt()) fail_nol("unexpected end of file");
  }

  bool next_line_opt() {
    while (std::getline(in_, line_)) {
      ++lineno_;
      const auto pos = line_.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line_[pos] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(name_ + ":" + std::to_string(lineno_) + ": " + msg);
  }
  [[noreturn]] void fail_nol(const std::string& msg) {
    throw std::runtime_error(name_ + ": " + msg);
  }

  std::istream& in_;
  std::string name_;
  std::string line_;
  std::size_t lineno_ = 0;
};

}  // namespace

VectorMkLandscape load_instance(std::istream& in, const std::string& name) {
  return InstanceParser(in, name).parse();
}

VectorMkLandscape load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_instance(in, path.string());
}

}  // namespace hamball
