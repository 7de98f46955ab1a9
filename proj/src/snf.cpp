#include "homforge/snf.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "homforge/lattice.hpp"

namespace homforge {

std::vector<Int> SNFResult::invariant_factors() const {
  std::vector<Int> f;
  int n = std::min(D.rows(), D.cols());
  for (int i = 0; i < n; ++i) {
    Int d = D.get(i, i);
    if (d != 0) f.push_back(d);
  }
  return f;
}

namespace {

// Row-major elimination workspace. Row and column operations are expressed
// as unimodular 2x2 moves so the transform bookkeeping (U for row moves,
// V^T for column moves) rides along through one code path.
class Eliminator {
 public:
  Eliminator(const SparseIntMatrix& A, bool track)
      : rows_(A.rows()), cols_(A.cols()), track_(track), row_(A.rows()),
        col_rows_(A.cols()) {
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : A.column(c)) {
        row_[r][c] = v;
        col_rows_[c].insert(r);
      }
    if (track_) {
      u_.resize(rows_);
      for (int i = 0; i < rows_; ++i) u_[i][i] = 1;
      vt_.resize(cols_);
      for (int i = 0; i < cols_; ++i) vt_[i][i] = 1;
    }
  }

  // (row a, row b) <- [[x, y], [z, w]] * (row a, row b), det(x w - y z) = +-1
  void row_move(int a, int b, const Int& x, const Int& y, const Int& z,
                const Int& w) {
    apply_move(row_[a], row_[b], x, y, z, w, &col_rows_, a, b);
    if (track_) apply_move(u_[a], u_[b], x, y, z, w, nullptr, a, b);
  }

  void col_move(int a, int b, const Int& x, const Int& y, const Int& z,
                const Int& w) {
    // columns of the matrix are rows of the transposed view; realize the
    // move entry-wise across every row that touches column a or b
    std::set<int32_t> touched = col_rows_[a];
    touched.insert(col_rows_[b].begin(), col_rows_[b].end());
    for (int32_t r : touched) {
      Int va = value(row_[r], a), vb = value(row_[r], b);
      put(r, a, x * va + y * vb);
      put(r, b, z * va + w * vb);
    }
    if (track_) apply_move(vt_[a], vt_[b], x, y, z, w, nullptr, a, b);
  }

  void row_negate(int a) {
    for (auto& [c, v] : row_[a]) v = -v;
    if (track_)
      for (auto& [c, v] : u_[a]) v = -v;
  }

  void row_swap(int a, int b) { row_move(a, b, 0, 1, 1, 0); }
  void col_swap(int a, int b) { col_move(a, b, 0, 1, 1, 0); }

  const std::map<int32_t, Int>& row(int r) const { return row_[r]; }
  const std::set<int32_t>& col(int c) const { return col_rows_[c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int at(int r, int c) const { return value(row_[r], c); }

  void set_entry(int r, int c, const Int& v) { put(r, c, v); }

  SparseIntMatrix matrix() const {
    SparseIntMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : row_[r]) m.set(r, c, v);
    return m;
  }

  SparseIntMatrix u_matrix() const { return rows_to_matrix(u_, rows_); }
  SparseIntMatrix v_matrix() const {
    // vt_ holds V^T row-major, i.e. V column-major
    SparseIntMatrix m(cols_, cols_);
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : vt_[c]) m.set(r, c, v);
    return m;
  }

  size_t entry_count() const {
    size_t n = 0;
    for (const auto& r : row_) n += r.size();
    return n;
  }

 private:
  static Int value(const std::map<int32_t, Int>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? Int(0) : it->second;
  }

  void put(int r, int c, Int v) {
    if (v == 0) {
      if (row_[r].erase(c)) col_rows_[c].erase(r);
    } else {
      row_[r][c] = std::move(v);
      col_rows_[c].insert(r);
    }
  }

  void apply_move(std::map<int32_t, Int>& ra, std::map<int32_t, Int>& rb,
                  const Int& x, const Int& y, const Int& z, const Int& w,
                  std::vector<std::set<int32_t>>* col_index, int a, int b) {
    std::map<int32_t, Int> na, nb;
    auto ia = ra.begin(), ib = rb.begin();
    auto emit = [&](int32_t k, const Int& va, const Int& vb) {
      Int ta = x * va + y * vb;
      Int tb = z * va + w * vb;
      const bool za = ta == 0, zb = tb == 0;
      if (!za) na.emplace_hint(na.end(), k, std::move(ta));
      if (!zb) nb.emplace_hint(nb.end(), k, std::move(tb));
      if (col_index != nullptr) {
        if (za)
          (*col_index)[k].erase(a);
        else
          (*col_index)[k].insert(a);
        if (zb)
          (*col_index)[k].erase(b);
        else
          (*col_index)[k].insert(b);
      }
    };
    const Int zero = 0;
    while (ia != ra.end() || ib != rb.end()) {
      if (ib == rb.end() || (ia != ra.end() && ia->first < ib->first)) {
        emit(ia->first, ia->second, zero);
        ++ia;
      } else if (ia == ra.end() || ib->first < ia->first) {
        emit(ib->first, zero, ib->second);
        ++ib;
      } else {
        emit(ia->first, ia->second, ib->second);
        ++ia;
        ++ib;
      }
    }
    ra = std::move(na);
    rb = std::move(nb);
  }

  static SparseIntMatrix rows_to_matrix(
      const std::vector<std::map<int32_t, Int>>& rows, int n) {
    SparseIntMatrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    return m;
  }

  int rows_, cols_;
  bool track_;
  std::vector<std::map<int32_t, Int>> row_;
  std::vector<std::set<int32_t>> col_rows_;
  std::vector<std::map<int32_t, Int>> u_;   // row transform
  std::vector<std::map<int32_t, Int>> vt_;  // column transform, transposed
};

struct PivotChoice {
  bool found = false;
  Int abs_val;
  size_t weight = 0;
  int r = -1, c = -1;
};

// Minimal |value|, then fewest nonzeros in row+column, then lowest (row,col).
// Entries already on finished diagonal positions are excluded by the caller
// restricting the scan to active rows.
PivotChoice choose_pivot(const Eliminator& e,
                         const std::vector<bool>& row_done,
                         const std::vector<bool>& col_done) {
  PivotChoice best;
  for (int r = 0; r < e.rows(); ++r) {
    if (row_done[r]) continue;
    for (const auto& [c, v] : e.row(r)) {
      if (col_done[c]) continue;
      Int a = abs(v);
      size_t wt = e.row(r).size() + e.col(c).size();
      bool better = false;
      if (!best.found) {
        better = true;
      } else if (a != best.abs_val) {
        better = a < best.abs_val;
      } else if (wt != best.weight) {
        better = wt < best.weight;
      }  // scan order is already lexicographic in (r, c)
      if (better) {
        best.found = true;
        best.abs_val = a;
        best.weight = wt;
        best.r = r;
        best.c = c;
        if (best.abs_val == 1 && best.weight <= 2) return best;
      }
    }
  }
  return best;
}

// Clears row r and column c down to the pivot entry, shrinking the pivot by
// gcd moves when a non-multiple shows up. Terminates because |pivot|
// strictly drops on every gcd move.
void clear_cross(Eliminator& e, int r, int c) {
  for (;;) {
    // column sweep
    for (;;) {
      const auto& col = e.col(c);
      int other = -1;
      for (int32_t rr : col)
        if (rr != r) {
          other = rr;
          break;
        }
      if (other < 0) break;
      Int p = e.at(r, c), a = e.at(other, c);
      if (divides(p, a)) {
        Int q = -exact_div(a, p);
        e.row_move(r, other, 1, 0, q, 1);
      } else {
        Int x, y;
        Int g = ext_gcd(p, a, x, y);
        e.row_move(r, other, x, y, -exact_div(a, g), exact_div(p, g));
      }
    }
    // row sweep; gcd moves here can refill the column, so loop until both
    // are singletons at once (each gcd move shrinks |pivot|, so this ends)
    for (;;) {
      const auto& row = e.row(r);
      int other = -1;
      for (const auto& [cc, v] : row)
        if (cc != c) {
          other = cc;
          break;
        }
      if (other < 0) break;
      Int p = e.at(r, c), a = e.at(r, other);
      if (divides(p, a)) {
        Int q = -exact_div(a, p);
        e.col_move(c, other, 1, 0, q, 1);
      } else {
        Int x, y;
        Int g = ext_gcd(p, a, x, y);
        e.col_move(c, other, x, y, -exact_div(a, g), exact_div(p, g));
      }
    }
    if (e.col(c).size() == 1 && e.row(r).size() == 1) return;
  }
}

}  // namespace

SNFResult snf(const SparseIntMatrix& A, const SnfOptions& opts) {
  Eliminator e(A, opts.want_transforms);
  std::vector<bool> row_done(A.rows(), false), col_done(A.cols(), false);
  std::vector<std::pair<int, int>> pivots;
  for (;;) {
    PivotChoice p = choose_pivot(e, row_done, col_done);
    if (!p.found) break;
    clear_cross(e, p.r, p.c);
    row_done[p.r] = true;
    col_done[p.c] = true;
    pivots.emplace_back(p.r, p.c);
  }
  // park pivot k at (k, k)
  for (size_t k = 0; k < pivots.size(); ++k) {
    auto [r, c] = pivots[k];
    int kk = static_cast<int>(k);
    if (r != kk) {
      e.row_swap(r, kk);
      for (auto& q : pivots)
        if (q.first == kk) q.first = r;
      pivots[k].first = kk;
    }
    if (c != kk) {
      e.col_swap(c, kk);
      for (auto& q : pivots)
        if (q.second == kk) q.second = c;
      pivots[k].second = kk;
    }
  }
  int rank = static_cast<int>(pivots.size());
  for (int i = 0; i < rank; ++i)
    if (e.at(i, i) < 0) e.row_negate(i);
  // enforce d_i | d_{i+1} by gcd/lcm exchanges on diagonal pairs
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < rank; ++i) {
      for (int j = i + 1; j < rank; ++j) {
        Int a = e.at(i, i), b = e.at(j, j);
        if (divides(a, b)) continue;
        changed = true;
        // [[a,0],[0,b]] -> row_i += row_j -> [[a,b],[0,b]]
        e.row_move(i, j, 1, 1, 0, 1);
        Int x, y;
        Int g = ext_gcd(a, b, x, y);
        e.col_move(i, j, x, y, -exact_div(b, g), exact_div(a, g));
        // now [[g,0],[y*b,lcm]]; clear the stray entry
        Int stray = e.at(j, i);
        e.row_move(i, j, 1, 0, -exact_div(stray, g), 1);
        if (e.at(i, i) < 0) e.row_negate(i);
        if (e.at(j, j) < 0) e.row_negate(j);
      }
    }
  }
  SNFResult res;
  res.D = e.matrix();
  if (opts.want_transforms) {
    res.U = e.u_matrix();
    res.V = e.v_matrix();
    SparseIntMatrix check = (*res.U) * A * (*res.V);
    if (!(check == res.D))
      throw std::logic_error("snf self-check failed: U*A*V != D");
  }
  return res;
}

AbelianInvariants cokernel_invariants(const SparseIntMatrix& A) {
  // Wide matrices get compressed to a lattice basis first; column moves do
  // not change the column span, so the cokernel is untouched.
  const SparseIntMatrix* work = &A;
  SparseIntMatrix compressed;
  if (A.cols() > A.rows() + 8) {
    LatticeBasis basis(A.rows());
    for (int c = 0; c < A.cols(); ++c) basis.add_generator(A.column(c), c);
    compressed = basis.basis_matrix();
    work = &compressed;
  }
  SNFResult s = snf(*work, {.want_transforms = false});
  std::vector<Int> factors = s.invariant_factors();
  int free_rank = A.rows() - static_cast<int>(factors.size());
  return normalize_cyclic_factors(std::move(factors), free_rank);
}

std::optional<std::vector<Int>> solve_integer(const SparseIntMatrix& A,
                                              const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != A.rows())
    throw std::invalid_argument("solve_integer: length mismatch");
  LatticeBasis basis(A.rows(), /*track_provenance=*/true);
  for (int c = 0; c < A.cols(); ++c) basis.add_generator(A.column(c), c);
  auto expr = basis.express(dense_to_sparse(b));
  if (!expr) return std::nullopt;
  std::vector<Int> x(A.cols(), 0);
  for (const auto& [tag, coeff] : *expr) x[tag] = coeff;
  return x;
}

SparseIntMatrix kernel_basis(const SparseIntMatrix& A) {
  LatticeBasis basis(A.rows(), /*track_provenance=*/true);
  std::vector<SparseVec> kernel;
  for (int c = 0; c < A.cols(); ++c) {
    SparseVec k;
    if (!basis.add_generator(A.column(c), c, &k)) kernel.push_back(std::move(k));
  }
  SparseIntMatrix K(A.cols(), static_cast<int>(kernel.size()));
  for (size_t i = 0; i < kernel.size(); ++i)
    K.set_column(static_cast<int>(i), std::move(kernel[i]));
  return K;
}

Int determinant(const SparseIntMatrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("determinant: square matrices only");
  int n = A.rows();
  if (n == 0) return 1;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
  for (int c = 0; c < n; ++c)
    for (const auto& [r, v] : A.column(c)) m[r][c] = v;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int sw = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          sw = r;
          break;
        }
      if (sw < 0) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(m[i][j], prev);  // Bareiss: division is exact
      }
    for (int i = k + 1; i < n; ++i) m[i][k] = 0;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace homforge
