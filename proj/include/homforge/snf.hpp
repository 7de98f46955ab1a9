#ifndef HOMFORGE_SNF_HPP
#define HOMFORGE_SNF_HPP

#include <optional>
#include <vector>

#include "homforge/abelian.hpp"
#include "homforge/sparse.hpp"

namespace homforge {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 1.
struct SNFResult {
  SparseIntMatrix D;
  std::optional<SparseIntMatrix> U;  // rows x rows
  std::optional<SparseIntMatrix> V;  // cols x cols

  // Nonzero diagonal entries of D in order (1s included).
  std::vector<Int> invariant_factors() const;
  int rank() const { return static_cast<int>(invariant_factors().size()); }
};

struct SnfOptions {
  bool want_transforms = true;
};

// Elimination order: pivot of minimal absolute value, among those the one
// whose row+column carry the fewest nonzeros, ties broken by lowest
// (row, col). Deterministic for a given input. When transforms are
// requested the factorization U*A*V = D is re-multiplied and checked before
// returning.
SNFResult snf(const SparseIntMatrix& A, const SnfOptions& = {});

// Isomorphism type of Z^rows / (column span of A).
AbelianInvariants cokernel_invariants(const SparseIntMatrix& A);

// One integer solution of A x = b, if any.
std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& A,
                                              const std::vector<Int>& b);

// Columns form an integral basis of { x : A x = 0 }.
SparseIntMatrix kernel_basis(const SparseIntMatrix& A);

// Fraction-free (Bareiss) determinant; square matrices only.
Int determinant(const SparseIntMatrix& A);

}  // namespace homforge

#endif
