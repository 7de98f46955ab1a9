#include "homforge/homology.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>

#include "homforge/lattice.hpp"

namespace homforge {

namespace {

struct PrimePower {
  long p;
  int exp;  // v_p of the group order
};

std::vector<PrimePower> prime_powers(long n) {
  std::vector<PrimePower> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

int valuation(uint64_t v, uint64_t p) {
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

uint64_t inverse_mod(uint64_t a, uint64_t m) {
  long long t = 0, nt = 1, r = static_cast<long long>(m),
            nr = static_cast<long long>(a % m);
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::logic_error("element not invertible mod m");
  t %= static_cast<long long>(m);
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<uint64_t>(t);
}

// sparse vector over Z/m: (row, value) sorted by row, values in [1, m)
using MVec = std::vector<std::pair<int64_t, uint32_t>>;

void mvec_scale(MVec& a, uint64_t t, uint64_t m) {
  MVec out;
  out.reserve(a.size());
  for (const auto& [r, v] : a) {
    uint64_t w = v * t % m;
    if (w != 0) out.emplace_back(r, static_cast<uint32_t>(w));
  }
  a = std::move(out);
}

// Column echelon over Z/p^k, one stored column per pivot row, pivot values
// normalized to exactly p^v. Howell closure: whenever a column with pivot
// valuation v > 0 enters, its p^(k-v) multiple is folded in too, which is
// what makes greedy leading-entry reduction a complete membership test.
//
// Columns reduce through a dense scratch buffer with a bitset of live rows,
// and node columns are packed (row, value) arrays, so the degree-4 streams
// of mid-size groups (hundreds of thousands of columns) stay affordable.
class ModPkEchelon {
 public:
  ModPkEchelon(uint64_t p, int k, int64_t dim) : p_(p), k_(k), dim_(dim) {
    m_ = 1;
    for (int i = 0; i < k; ++i) m_ *= p;
    if (m_ > 65535) throw std::length_error("prime power modulus too large");
    nodes_.resize(static_cast<size_t>(dim));
    buf_.assign(static_cast<size_t>(dim), 0);
    bits_.assign(static_cast<size_t>(dim + 63) / 64, 0);
  }

  uint64_t modulus() const { return m_; }

  void add_column(const MVec& v) {
    std::vector<Col> work;
    work.push_back(to_col(v));
    while (!work.empty()) {
      Col c = std::move(work.back());
      work.pop_back();
      reduce_add(c, work);
    }
  }

  bool contains(const MVec& v) const {
    scatter(to_col(v));
    int64_t r = next_bit(0);
    while (r < dim_) {
      uint32_t val = buf_[r];
      if (val == 0) {
        clear_bit(r);
        r = next_bit(r + 1);
        continue;
      }
      const Node& node = nodes_[r];
      if (node.val < 0 || valuation(val, p_) < node.val) {
        wipe_from(r);
        return false;
      }
      axpy_node(node, (val / ipow(node.val)) % m_);
      clear_bit(r);
      buf_[r] = 0;
      r = next_bit(r + 1);
    }
    return true;
  }

  // least j with p^j * v in the span; always <= k since p^k * v = 0
  int order_exponent(MVec v) const {
    for (int j = 0; j <= k_; ++j) {
      if (contains(v)) return j;
      mvec_scale(v, p_, m_);
    }
    throw std::logic_error("order exponent exceeded the modulus");
  }

  size_t node_count() const {
    size_t n = 0;
    for (const auto& node : nodes_)
      if (node.val >= 0) ++n;
    return n;
  }

  // visits the live node columns; together they generate the column span
  template <class F>
  void for_each_node(F f) const {
    for (const auto& node : nodes_)
      if (node.val >= 0) f(node.rows, node.vals);
  }
  size_t entry_count() const {
    size_t n = 0;
    for (const auto& node : nodes_) n += node.rows.size();
    return n;
  }

 private:
  struct Node {
    std::vector<int32_t> rows;  // rows[0] is the pivot row, value exactly p^val
    std::vector<uint16_t> vals;
    int val = -1;  // -1: no pivot on this row yet
  };
  struct Col {
    std::vector<int32_t> rows;
    std::vector<uint16_t> vals;
  };

  Col to_col(const MVec& v) const {
    Col c;
    c.rows.reserve(v.size());
    c.vals.reserve(v.size());
    for (const auto& [r, val] : v) {
      c.rows.push_back(static_cast<int32_t>(r));
      c.vals.push_back(static_cast<uint16_t>(val));
    }
    return c;
  }

  void scatter(const Col& c) const {
    for (size_t i = 0; i < c.rows.size(); ++i) {
      buf_[c.rows[i]] = c.vals[i];
      set_bit(c.rows[i]);
    }
  }

  // buf -= t * node over live rows; node rows all sit at or below its pivot
  void axpy_node(const Node& node, uint64_t t) const {
    uint64_t tn = m_ - t % m_;
    for (size_t i = 0; i < node.rows.size(); ++i) {
      int32_t r = node.rows[i];
      buf_[r] = static_cast<uint32_t>((buf_[r] + tn * node.vals[i]) % m_);
      set_bit(r);
    }
  }

  void reduce_add(Col& c, std::vector<Col>& work) {
    scatter(c);
    int64_t r = next_bit(0);
    while (r < dim_) {
      uint32_t val = buf_[r];
      if (val == 0) {
        clear_bit(r);
        r = next_bit(r + 1);
        continue;
      }
      Node& node = nodes_[r];
      int vv = valuation(val, p_);
      if (node.val < 0) {
        install(r, vv, val, work);
        return;
      }
      if (vv < node.val) {
        // finer pivot: current remainder displaces the node, which then
        // re-enters the reduction through the buffer
        Col old{std::move(node.rows), std::move(node.vals)};
        install(r, vv, val, work);
        scatter(old);
        r = next_bit(r);
        continue;
      }
      axpy_node(node, (val / ipow(node.val)) % m_);
      clear_bit(r);
      buf_[r] = 0;
      r = next_bit(r + 1);
    }
  }

  // gathers the live buffer from row r on into a fresh normalized node and
  // queues its Howell closure column
  void install(int64_t r, int vv, uint32_t val, std::vector<Col>& work) {
    uint64_t inv = inverse_mod(val / ipow(vv), m_);
    Node& node = nodes_[r];
    node.val = vv;
    node.rows.clear();
    node.vals.clear();
    for (int64_t i = r; i < dim_; i = next_bit(i + 1)) {
      uint32_t bv = buf_[i];
      if (bv != 0) {
        node.rows.push_back(static_cast<int32_t>(i));
        node.vals.push_back(static_cast<uint16_t>(bv * inv % m_));
      }
      buf_[i] = 0;
      clear_bit(i);
    }
    if (vv > 0) {
      uint64_t s = ipow(k_ - vv);
      Col closure;
      for (size_t i = 0; i < node.rows.size(); ++i) {
        uint64_t w = node.vals[i] * s % m_;
        if (w != 0) {
          closure.rows.push_back(node.rows[i]);
          closure.vals.push_back(static_cast<uint16_t>(w));
        }
      }
      if (!closure.rows.empty()) work.push_back(std::move(closure));
    }
  }

  void wipe_from(int64_t r) const {
    for (int64_t i = r; i < dim_; i = next_bit(i + 1)) {
      buf_[i] = 0;
      clear_bit(i);
    }
  }

  void set_bit(int64_t i) const { bits_[i >> 6] |= 1ULL << (i & 63); }
  void clear_bit(int64_t i) const { bits_[i >> 6] &= ~(1ULL << (i & 63)); }
  int64_t next_bit(int64_t from) const {
    if (from >= dim_) return dim_;
    size_t w = static_cast<size_t>(from) >> 6;
    uint64_t cur = bits_[w] & (~0ULL << (from & 63));
    while (cur == 0) {
      if (++w >= bits_.size()) return dim_;
      cur = bits_[w];
    }
    return static_cast<int64_t>(w << 6) + std::countr_zero(cur);
  }

  uint64_t ipow(int e) const {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= p_;
    return r;
  }

  uint64_t p_, m_;
  int k_;
  int64_t dim_;
  std::vector<Node> nodes_;
  mutable std::vector<uint32_t> buf_;   // dense reduction scratch
  mutable std::vector<uint64_t> bits_;  // live rows of the scratch
};

// Smith reduction over Z/p^k, pivot valuations only. Eliminating with a
// pivot of minimal remaining valuation keeps every step exact (fill keeps
// valuation >= the pivot's), so the pivots come out as the local Smith
// diagonal without any gcd chasing. Candidates sit in one bucket per
// valuation and strata are drained in increasing order; fills created while
// stratum v is active never fall below v, so a popped entry only needs a
// recheck against its current value.
class ModPkSnf {
 public:
  ModPkSnf(uint64_t p, int k) : p_(p), k_(k), buckets_(k) {
    m_ = 1;
    for (int i = 0; i < k; ++i) m_ *= p;
  }

  uint64_t modulus() const { return m_; }

  void add_column(int64_t col_id, const MVec& v) {
    for (const auto& [r, val] : v) {
      rows_[r][col_id] = val;
      cols_[col_id].insert(r);
      buckets_[valuation(val, p_)].emplace_back(r, col_id);
    }
  }

  // consumes the matrix; result is sorted ascending
  std::vector<int> pivot_valuations() {
    std::vector<int> vals;
    for (int v = 0; v < k_; ++v) {
      auto& bucket = buckets_[v];
      while (!bucket.empty()) {
        auto [r, c] = bucket.back();
        bucket.pop_back();
        auto rit = rows_.find(r);
        if (rit == rows_.end()) continue;
        auto eit = rit->second.find(c);
        if (eit == rit->second.end()) continue;
        int cur = valuation(eit->second, p_);
        if (cur != v) {
          // the entry moved up a stratum since it was queued
          buckets_[cur].emplace_back(r, c);
          continue;
        }
        vals.push_back(v);
        eliminate(r, c, v);
      }
    }
    rows_.clear();
    cols_.clear();
    std::sort(vals.begin(), vals.end());
    return vals;
  }

 private:
  void eliminate(int64_t pr, int64_t pc, int pval) {
    uint64_t unit_inv = inverse_mod(rows_[pr][pc] / ipow(pval), m_);
    std::vector<int64_t> targets(cols_[pc].begin(), cols_[pc].end());
    for (int64_t r : targets) {
      if (r == pr) continue;
      uint64_t t = rows_[r][pc] / ipow(pval) % m_ * unit_inv % m_;
      auto& row = rows_[r];
      for (const auto& [c, pv] : rows_[pr]) {
        auto it = row.find(c);
        uint64_t cur = it == row.end() ? 0 : it->second;
        uint64_t nv = (cur + m_ - t * pv % m_) % m_;
        if (nv == 0) {
          if (it != row.end()) {
            row.erase(it);
            cols_[c].erase(r);
          }
        } else {
          row[c] = static_cast<uint32_t>(nv);
          cols_[c].insert(r);
          buckets_[valuation(nv, p_)].emplace_back(r, c);
        }
      }
      if (row.empty()) rows_.erase(r);
    }
    // the pivot column is now a singleton, so removing the pivot row is
    // also the column clearing step
    for (const auto& [c, v] : rows_[pr]) cols_[c].erase(pr);
    rows_.erase(pr);
    cols_.erase(pc);
  }

  uint64_t ipow(int e) const {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= p_;
    return r;
  }

  uint64_t p_, m_;
  int k_;
  std::map<int64_t, std::map<int64_t, uint32_t>> rows_;
  std::map<int64_t, std::set<int64_t>> cols_;
  // pivot candidates by valuation; entries are revalidated when popped
  std::vector<std::vector<std::pair<int64_t, int64_t>>> buckets_;
};

// signed face rows of one degree-n cell; identity-carrying faces drop out
std::map<unsigned long long, long> boundary_rows(const FiniteGroup& g,
                                                 const CellIndexer& row_ix,
                                                 const std::vector<int>& cell) {
  std::map<unsigned long long, long> out;
  int n = static_cast<int>(cell.size());
  int id = g.id();
  auto emit = [&](const std::vector<int>& face, long sgn) {
    for (int e : face)
      if (e == id) return;
    unsigned long long key = row_ix.index_of(face);
    long& slot = out[key];
    slot += sgn;
    if (slot == 0) out.erase(key);
  };
  std::vector<int> face(cell.begin() + 1, cell.end());
  emit(face, 1);
  for (int i = 1; i < n; ++i) {
    face.assign(cell.begin(), cell.end());
    face[i - 1] = g.mul(cell[i - 1], cell[i]);
    face.erase(face.begin() + i);
    emit(face, i % 2 == 0 ? 1 : -1);
  }
  face.assign(cell.begin(), cell.end() - 1);
  emit(face, n % 2 == 0 ? 1 : -1);
  return out;
}

MVec rows_to_mvec(const std::map<unsigned long long, long>& rows, uint64_t m) {
  MVec v;
  for (const auto& [r, c] : rows) {
    long long red = c % static_cast<long long>(m);
    if (red < 0) red += static_cast<long long>(m);
    if (red != 0)
      v.emplace_back(static_cast<int64_t>(r), static_cast<uint32_t>(red));
  }
  return v;
}

MVec chain_to_mvec(const BarChain& z, const CellIndexer& ix, uint64_t m) {
  MVec v;
  for (const auto& [cell, k] : z.terms()) {
    unsigned long long red = mpz_fdiv_ui(k.get_mpz_t(), m);
    if (red != 0)
      v.emplace_back(static_cast<int64_t>(ix.index_of(cell)),
                     static_cast<uint32_t>(red));
  }
  std::sort(v.begin(), v.end());
  return v;
}

struct EchelonKey {
  long uid;
  int degree;
  uint64_t modulus;
  auto operator<=>(const EchelonKey&) const = default;
};

// Echelon plus a cursor into the column stream. Membership in a partial
// span already certifies membership in the full image, so positive queries
// can stop feeding columns early; only negative answers and order
// computations must drain the stream.
struct StreamedEchelon {
  ModPkEchelon ech;
  unsigned long long consumed = 0;
  StreamedEchelon(uint64_t p, int k, int64_t dim) : ech(p, k, dim) {}
};

std::map<EchelonKey, std::unique_ptr<StreamedEchelon>>& echelon_cache() {
  static std::map<EchelonKey, std::unique_ptr<StreamedEchelon>> cache;
  return cache;
}

std::map<std::pair<long, int>, std::unique_ptr<LatticeBasis>>&
exact_basis_cache() {
  static std::map<std::pair<long, int>, std::unique_ptr<LatticeBasis>> cache;
  return cache;
}

StreamedEchelon& boundary_echelon_entry(const FiniteGroup& g, int d, long p,
                                        int k) {
  uint64_t m = 1;
  for (int i = 0; i < k; ++i) m *= static_cast<uint64_t>(p);
  EchelonKey key{g.uid(), d, m};
  auto& cache = echelon_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto se = std::make_unique<StreamedEchelon>(
      p, k, static_cast<int64_t>(CellIndexer(g, d - 1).count()));
  return *cache.emplace(key, std::move(se)).first->second;
}

void feed_echelon(const FiniteGroup& g, int d, StreamedEchelon& se,
                  unsigned long long target) {
  if (se.consumed >= target) return;
  CellIndexer cols(g, d), rows(g, d - 1);
  for (unsigned long long j = se.consumed; j < target; ++j) {
    auto col =
        rows_to_mvec(boundary_rows(g, rows, cols.cell_at(j)), se.ech.modulus());
    if (!col.empty()) se.ech.add_column(col);
  }
  se.consumed = target;
}

bool streamed_contains(const FiniteGroup& g, int d, StreamedEchelon& se,
                       const MVec& zbar) {
  unsigned long long total = CellIndexer(g, d).count();
  if (se.ech.contains(zbar)) return true;
  unsigned long long batch = 65536;
  while (se.consumed < total) {
    feed_echelon(g, d, se, std::min(total, se.consumed + batch));
    if (se.ech.contains(zbar)) return true;
    batch *= 2;
  }
  return false;
}

// cached exact provenance basis of the degree-d boundary columns
LatticeBasis& exact_boundary_basis(const FiniteGroup& g, int d) {
  auto& cache = exact_basis_cache();
  auto key = std::make_pair(g.uid(), d);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  CellIndexer cols(g, d), rows(g, d - 1);
  auto basis = std::make_unique<LatticeBasis>(static_cast<int>(rows.count()),
                                              /*track_provenance=*/true);
  for (unsigned long long j = 0; j < cols.count(); ++j) {
    auto rowmap = boundary_rows(g, rows, cols.cell_at(j));
    SparseVec col;
    for (const auto& [r, c] : rowmap)
      col.emplace_back(static_cast<int32_t>(r), Int(c));
    if (!col.empty()) basis->add_generator(std::move(col), static_cast<int>(j));
  }
  return *cache.emplace(key, std::move(basis)).first->second;
}

std::vector<int> boundary_snf_valuations(const FiniteGroup& g, int d, long p,
                                         int k) {
  // first reduce the full column stream into the echelon: it generates the
  // same column span mod p^k with at most dim C_(d-1) columns, and the
  // local Smith valuations depend on the span alone
  StreamedEchelon& se = boundary_echelon_entry(g, d, p, k);
  feed_echelon(g, d, se, CellIndexer(g, d).count());
  ModPkSnf snf(p, k);
  int64_t col_id = 0;
  se.ech.for_each_node(
      [&](const std::vector<int32_t>& rows, const std::vector<uint16_t>& vals) {
        MVec v;
        v.reserve(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) v.emplace_back(rows[i], vals[i]);
        snf.add_column(col_id++, v);
      });
  return snf.pivot_valuations();
}

}  // namespace

HomologyReport homology(const FiniteGroup& g, int degree,
                        const HomologyOptions& opts) {
  if (degree < 0) throw std::invalid_argument("negative homology degree");
  if (degree > 3) throw std::invalid_argument("homology degree capped at 3");
  auto t0 = std::chrono::steady_clock::now();
  HomologyReport rep;
  rep.degree = degree;
  CellIndexer here(g, degree), above(g, degree + 1);
  rep.cells_here = here.count();
  rep.cells_above = above.count();
  if (rep.cells_above > opts.cell_cap)
    throw std::length_error("cell count exceeds the configured cap");

  std::vector<Int> factors;
  int rank_below = 0, rank_above = 0;
  bool first_prime = true;
  for (const auto& pp : prime_powers(g.size())) {
    // modulus p^(v_p(|G|)+1) is strictly finer than any invariant factor
    // of a bar boundary map, so valuations and ranks come out exact
    int k = pp.exp + 1;
    auto vals_above = boundary_snf_valuations(g, degree + 1, pp.p, k);
    int rb = 0;
    if (degree >= 1) {
      auto vals_below = boundary_snf_valuations(g, degree, pp.p, k);
      for (int v : vals_below)
        if (v > pp.exp)
          throw std::logic_error("invariant factor exceeds the group order");
      rb = static_cast<int>(vals_below.size());
    }
    for (int v : vals_above) {
      if (v > pp.exp)
        throw std::logic_error("invariant factor exceeds the group order");
      if (v > 0) {
        Int f = 1;
        for (int i = 0; i < v; ++i) f *= pp.p;
        factors.push_back(f);
      }
    }
    int ra = static_cast<int>(vals_above.size());
    if (first_prime) {
      rank_above = ra;
      rank_below = rb;
      first_prime = false;
    } else if (rank_above != ra || rank_below != rb) {
      throw std::logic_error("boundary ranks disagree across primes");
    }
  }
  rep.rank_below = rank_below;
  rep.rank_above = rank_above;
  int free_rank = static_cast<int>(rep.cells_here) - rank_below - rank_above;
  rep.invariants = normalize_cyclic_factors(std::move(factors), free_rank);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

BoundaryResult is_boundary(const BarChain& z, bool want_witness,
                           const HomologyOptions& opts) {
  const FiniteGroup& g = z.group();
  int deg = z.degree();
  if (!is_cycle(z))
    throw std::invalid_argument("boundary test requires a cycle");
  if (z.is_zero()) return {true, BarChain(g, deg + 1)};
  if (deg == 0) return {false, std::nullopt};  // d_1 vanishes identically

  CellIndexer above(g, deg + 1), here(g, deg);
  if (above.count() > opts.cell_cap)
    throw std::length_error("cell count exceeds the configured cap");

  // |G| annihilates positive homology, so membership mod p^(v_p(|G|)) for
  // every p dividing |G| already certifies integral membership
  for (const auto& pp : prime_powers(g.size())) {
    StreamedEchelon& se = boundary_echelon_entry(g, deg + 1, pp.p, pp.exp);
    MVec zbar = chain_to_mvec(z, here, se.ech.modulus());
    if (!streamed_contains(g, deg + 1, se, zbar)) return {false, std::nullopt};
  }

  BoundaryResult res{true, std::nullopt};
  if (want_witness && above.count() <= opts.witness_cell_cap) {
    LatticeBasis& basis = exact_boundary_basis(g, deg + 1);
    SparseVec target;
    for (const auto& [cell, k] : z.terms())
      target.emplace_back(static_cast<int32_t>(here.index_of(cell)), k);
    std::sort(target.begin(), target.end());
    auto expr = basis.express(target);
    if (!expr)
      throw std::logic_error(
          "modular boundary decision contradicts the exact lattice");
    BarChain w(g, deg + 1);
    for (const auto& [tag, coeff] : *expr)
      w.add(above.cell_at(static_cast<unsigned long long>(tag)), coeff);
    if (!(boundary(w) == z))
      throw std::logic_error("boundary witness failed verification");
    res.witness = std::move(w);
  }
  return res;
}

std::optional<Int> class_order(const BarChain& z, const HomologyOptions& opts) {
  const FiniteGroup& g = z.group();
  int deg = z.degree();
  if (!is_cycle(z)) throw std::invalid_argument("class order requires a cycle");
  if (z.is_zero()) return Int(1);
  if (deg == 0) return std::nullopt;  // classes in H_0 generate free summands

  CellIndexer above(g, deg + 1), here(g, deg);
  if (above.count() > opts.cell_cap)
    throw std::length_error("cell count exceeds the configured cap");

  // the order of a class is the product over p of the least power p^j
  // with p^j * z in the modular column span; unlike a plain membership
  // test this needs the whole column stream
  Int order = 1;
  for (const auto& pp : prime_powers(g.size())) {
    StreamedEchelon& se = boundary_echelon_entry(g, deg + 1, pp.p, pp.exp);
    feed_echelon(g, deg + 1, se, above.count());
    int j = se.ech.order_exponent(chain_to_mvec(z, here, se.ech.modulus()));
    for (int i = 0; i < j; ++i) order *= pp.p;
  }
  return order;
}

void clear_homology_cache() {
  echelon_cache().clear();
  exact_basis_cache().clear();
}

}  // namespace homforge
