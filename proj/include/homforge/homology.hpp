#ifndef HOMFORGE_HOMOLOGY_HPP
#define HOMFORGE_HOMOLOGY_HPP

#include <optional>

#include "homforge/abelian.hpp"
#include "homforge/bar.hpp"

namespace homforge {

struct HomologyOptions {
  // Largest boundary matrix (column count) any query may assemble.
  unsigned long long cell_cap = 1000000;
  // Largest column count for which exact integer witnesses are solved.
  unsigned long long witness_cell_cap = 200000;
};

struct HomologyReport {
  int degree = 0;
  AbelianInvariants invariants;
  unsigned long long cells_here = 0;   // dim C_n
  unsigned long long cells_above = 0;  // dim C_{n+1}
  int rank_below = 0;                  // rank of d_n over Q
  int rank_above = 0;                  // rank of d_{n+1} over Q
  double seconds = 0.0;
};

// Invariants of ker d_n / im d_{n+1} for the normalized bar complex,
// n <= 3. The free rank comes from the exact ranks of the two boundary
// maps; torsion comes from the invariant factors of d_{n+1}.
//
// All arithmetic runs modulo prime powers p^(v_p(|G|)+1): every nonzero
// invariant factor of a bar boundary matrix divides exp(H), which divides
// |G|, so these moduli already determine the factors and ranks exactly.
HomologyReport homology(const FiniteGroup& g, int degree,
                        const HomologyOptions& opts = {});

struct BoundaryResult {
  bool boundary = false;
  // Present when requested and the degree+1 cell count is within
  // witness_cell_cap; always satisfies boundary(*witness) == z.
  std::optional<BarChain> witness;
};

// Exact decision of z in im d_{n+1}, for cycles z. Since |G| annihilates
// positive homology, a cycle is a boundary iff it reduces into the column
// span of d_{n+1} modulo p^(v_p(|G|)) for every prime p dividing |G|; each
// reduction is decided against a cached Howell-form echelon, so no
// unbounded integer arithmetic is ever needed for the decision itself.
BoundaryResult is_boundary(const BarChain& z, bool want_witness = false,
                           const HomologyOptions& opts = {});

// Smallest k >= 1 with k*z a boundary; nullopt when no multiple is (only
// possible in degree 0). Computed per prime as the least j with p^j * z in
// the modular column span.
std::optional<Int> class_order(const BarChain& z,
                               const HomologyOptions& opts = {});

// Drops all cached echelons and exact bases (tests and long-lived tools).
void clear_homology_cache();

}  // namespace homforge

#endif
