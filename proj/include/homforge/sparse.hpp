#ifndef HOMFORGE_SPARSE_HPP
#define HOMFORGE_SPARSE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "homforge/integer.hpp"

namespace homforge {

// Sparse column vector: (row, value) pairs sorted by row, values nonzero.
using SparseVec = std::vector<std::pair<int32_t, Int>>;

// result := a + c*b, merging sorted supports. c may be any integer; zero
// sums are dropped. result must not alias a or b.
void sparse_axpy(const SparseVec& a, const Int& c, const SparseVec& b,
                 SparseVec& result);

std::vector<Int> sparse_to_dense(const SparseVec& v, int dim);
SparseVec dense_to_sparse(const std::vector<Int>& v);

// Integer matrix stored column-major. Built column-by-column; this is the
// exchange type for boundary matrices, relation matrices and transforms.
class SparseIntMatrix {
 public:
  SparseIntMatrix() : rows_(0), cols_(0) {}
  SparseIntMatrix(int rows, int cols);

  static SparseIntMatrix identity(int n);
  static SparseIntMatrix from_rows(
      const std::vector<std::vector<Int>>& dense_rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, Int v);
  Int get(int r, int c) const;

  const SparseVec& column(int c) const;
  void set_column(int c, SparseVec v);
  void append_column(SparseVec v);

  size_t nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }

  SparseIntMatrix transposed() const;
  SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
  std::vector<Int> apply(const std::vector<Int>& x) const;

  bool operator==(const SparseIntMatrix& rhs) const;

  // Text exchange format: first line "rows cols", then one "r c value" line
  // per nonzero entry in column-major order.
  std::string to_triplet_text() const;
  static SparseIntMatrix parse_triplet_text(const std::string& text);

 private:
  void check_cell(int r, int c) const;
  int rows_, cols_;
  std::vector<SparseVec> columns_;
};

}  // namespace homforge

#endif
