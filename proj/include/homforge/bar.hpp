#ifndef HOMFORGE_BAR_HPP
#define HOMFORGE_BAR_HPP

#include <map>
#include <string>
#include <vector>

#include "homforge/group.hpp"
#include "homforge/integer.hpp"

namespace homforge {

// Element of the normalized bar complex of a finite group: an integer
// combination of degree-n cells [g1|...|gn] with no identity entries.
// Cells containing the identity are degenerate and normalize away to zero
// on insertion, which is what keeps degree-4 computations desk-sized.
class BarChain {
 public:
  BarChain(const FiniteGroup& g, int degree);
  static BarChain cell(const FiniteGroup& g, const std::vector<int>& tuple,
                       const Int& coeff = 1);

  const FiniteGroup& group() const { return *g_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Adds coeff * [tuple], validating entries and dropping degenerate cells
  // and cancelled terms.
  void add(const std::vector<int>& tuple, const Int& coeff);

  BarChain& operator+=(const BarChain& o);
  BarChain& operator-=(const BarChain& o);
  BarChain& operator*=(const Int& k);
  friend BarChain operator+(BarChain a, const BarChain& b) { return a += b; }
  friend BarChain operator-(BarChain a, const BarChain& b) { return a -= b; }
  friend BarChain operator*(const Int& k, BarChain a) { return a *= k; }

  // Equal when built over the same group object with identical terms.
  bool operator==(const BarChain& o) const;

  std::string to_string() const;

 private:
  const FiniteGroup* g_;
  int degree_;
  std::map<std::vector<int>, Int> terms_;
};

// d[g1|...|gn] = [g2|...|gn] + sum_i (-1)^i [g1|...|g_i g_{i+1}|...|gn]
//              + (-1)^n [g1|...|g_{n-1}]
BarChain boundary(const BarChain& c);

bool is_cycle(const BarChain& c);

// Alternating sum over all permutations of pairwise-commuting elements,
// sum_sigma sign(sigma) [g_sigma(1)|...|g_sigma(n)], for n <= 4.
BarChain c_symbol(const FiniteGroup& g, const std::vector<int>& elems);

// Cells map elementwise through the hom; degenerate images vanish.
BarChain pushforward(const GroupHom& f, const BarChain& c);

// Cells map through g -> w g w^-1.
BarChain conjugate_chain(const BarChain& c, int w);

// Chain homotopy between the identity and conjugation by w:
//   h[g1|...|gn] = sum_{i=0..n} (-1)^i [wg1w^-1|...|wg_iw^-1|w|g_{i+1}|...|gn]
// satisfies d(h c) + h(d c) = c - conjugate_chain(c, w); in particular
// d(h z) = z - conjugate_chain(z, w) for cycles z.
BarChain conjugation_homotopy(const BarChain& c, int w);

// Direct product with pair (a, b) indexed as a * |B| + b, consistent with
// the lexicographic indexing of FiniteAbelianGroup products.
struct ProductGroup {
  FiniteGroup group;
  int left_size = 0;
  int right_size = 0;

  int pair_index(int a, int b) const { return a * right_size + b; }
  std::pair<int, int> factors(int idx) const {
    return {idx / right_size, idx % right_size};
  }

  // Verified projection/inclusion homs; the argument must be the matching
  // factor group object (it becomes the hom's endpoint).
  GroupHom proj1(const FiniteGroup& left) const;
  GroupHom proj2(const FiniteGroup& right) const;
  GroupHom embed1(const FiniteGroup& left) const;
  GroupHom embed2(const FiniteGroup& right) const;
};

ProductGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                            int cap = 4096);

// Chain-level cross product: signed sum over all (m, n)-shuffles of the
// interleavings of a-cells (landed in the left factor) and b-cells (right
// factor). Degree adds; shuffles of cycles are cycles.
BarChain shuffle_product(const BarChain& a, const BarChain& b,
                         const ProductGroup& p);

// Deterministic dense indexing of degree-n cells over non-identity element
// tuples: mixed radix over the (|G|-1) non-identity elements in index order.
class CellIndexer {
 public:
  CellIndexer(const FiniteGroup& g, int degree);

  unsigned long long count() const { return count_; }
  unsigned long long index_of(const std::vector<int>& cell) const;
  std::vector<int> cell_at(unsigned long long idx) const;

 private:
  int degree_;
  int symbols_;
  std::vector<int> rank_;    // element -> position among non-identity
  std::vector<int> unrank_;  // position -> element
  unsigned long long count_;
};

}  // namespace homforge

#endif
