#ifndef HOMFORGE_LATTICE_HPP
#define HOMFORGE_LATTICE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "homforge/sparse.hpp"

namespace homforge {

// Echelon basis of the integer lattice spanned by a stream of generator
// columns. Columns are folded in one at a time; the working set never grows
// past one basis column per pivot row, which is what makes very wide
// boundary matrices tractable.
//
// With provenance enabled, every basis column remembers an expression of
// itself as an integer combination of the original generators (by tag), so
// membership tests can return witnesses and zero reductions yield kernel
// vectors. The invariant maintained throughout is
//     column == sum_t prov[t] * generator_t
// and all updates are unimodular two-column moves, so emitted kernel vectors
// form an integral basis of the kernel.
class LatticeBasis {
 public:
  explicit LatticeBasis(int dim, bool track_provenance = false);

  // Folds one generator in. Returns true when the rank grew. When the
  // column reduces to zero and kernel_out is non-null, the provenance
  // combination (a kernel vector over tags) is stored there.
  bool add_generator(SparseVec v, int tag, SparseVec* kernel_out = nullptr);

  int dim() const { return dim_; }
  int rank() const { return rank_; }

  bool contains(const SparseVec& v) const;

  // Expression of v as integer combination of the original generators,
  // as (tag, coefficient) pairs. Requires provenance.
  std::optional<SparseVec> express(const SparseVec& v) const;

  // Smallest k >= 1 with k*v in the lattice; nullopt when v is not even in
  // the rational span. Exact: coordinates in an echelon basis are unique,
  // so k is the lcm of their denominators.
  std::optional<Int> denominator_order(const SparseVec& v) const;

  std::vector<int32_t> pivot_rows() const;
  // Basis columns ordered by pivot row. Same lattice as the generators.
  SparseIntMatrix basis_matrix() const;

  size_t basis_entry_count() const;

 private:
  struct Node {
    SparseVec v;     // column; v.front() sits on the pivot row, value > 0
    SparseVec prov;  // tag -> coefficient, only kept when tracking
  };
  int dim_;
  int rank_;
  bool track_prov_;
  std::vector<std::unique_ptr<Node>> by_row_;
};

// Same reduction mod a word-sized prime. Used to refute lattice membership
// cheaply (an integer solution would survive reduction mod p) and to pick
// column subsets that already span the full rank.
class ModPBasis {
 public:
  using Vec = std::vector<std::pair<int32_t, uint32_t>>;

  ModPBasis(int dim, uint32_t p);

  bool add_generator(Vec v);  // true when rank grew
  bool contains(Vec v) const;

  int rank() const { return rank_; }
  uint32_t prime() const { return p_; }

  Vec reduce_int_vec(const SparseVec& v) const;

 private:
  void reduce(Vec& v, bool stop_at_missing_pivot) const;
  int dim_;
  uint32_t p_;
  int rank_;
  std::vector<Vec> by_row_;  // empty vec = no pivot; pivot value scaled to 1
};

}  // namespace homforge

#endif
