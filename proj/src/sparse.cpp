#include "homforge/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace homforge {

void sparse_axpy(const SparseVec& a, const Int& c, const SparseVec& b,
                 SparseVec& result) {
  result.clear();
  result.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      result.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      Int v = c * b[j].second;
      if (v != 0) result.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      Int v = a[i].second;
      v += c * b[j].second;  // maps to mpz_addmul, no temporary
      if (v != 0) result.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) result.push_back(a[i]);
  for (; j < b.size(); ++j) {
    Int v = c * b[j].second;
    if (v != 0) result.emplace_back(b[j].first, std::move(v));
  }
}

std::vector<Int> sparse_to_dense(const SparseVec& v, int dim) {
  std::vector<Int> d(dim, 0);
  for (const auto& [r, x] : v) d.at(r) = x;
  return d;
}

SparseVec dense_to_sparse(const std::vector<Int>& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(static_cast<int32_t>(i), v[i]);
  return s;
}

SparseIntMatrix::SparseIntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), columns_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("matrix dimensions must be non-negative");
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
  SparseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.columns_[i].emplace_back(i, 1);
  return m;
}

SparseIntMatrix SparseIntMatrix::from_rows(
    const std::vector<std::vector<Int>>& dense_rows) {
  int r = static_cast<int>(dense_rows.size());
  int c = r == 0 ? 0 : static_cast<int>(dense_rows[0].size());
  SparseIntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(dense_rows[i].size()) != c)
      throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j)
      if (dense_rows[i][j] != 0) m.set(i, j, dense_rows[i][j]);
  }
  return m;
}

void SparseIntMatrix::check_cell(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
}

void SparseIntMatrix::set(int r, int c, Int v) {
  check_cell(r, c);
  SparseVec& col = columns_[c];
  auto it = std::lower_bound(
      col.begin(), col.end(), r,
      [](const auto& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    if (v == 0)
      col.erase(it);
    else
      it->second = std::move(v);
  } else if (v != 0) {
    col.insert(it, {static_cast<int32_t>(r), std::move(v)});
  }
}

Int SparseIntMatrix::get(int r, int c) const {
  check_cell(r, c);
  const SparseVec& col = columns_[c];
  auto it = std::lower_bound(
      col.begin(), col.end(), r,
      [](const auto& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

const SparseVec& SparseIntMatrix::column(int c) const {
  if (c < 0 || c >= cols_) throw std::out_of_range("column out of range");
  return columns_[c];
}

void SparseIntMatrix::set_column(int c, SparseVec v) {
  if (c < 0 || c >= cols_) throw std::out_of_range("column out of range");
  for (const auto& [r, x] : v)
    if (r < 0 || r >= rows_ || x == 0)
      throw std::invalid_argument("bad column content");
  columns_[c] = std::move(v);
}

void SparseIntMatrix::append_column(SparseVec v) {
  columns_.emplace_back();
  ++cols_;
  set_column(cols_ - 1, std::move(v));
}

size_t SparseIntMatrix::nonzero_count() const {
  size_t n = 0;
  for (const SparseVec& c : columns_) n += c.size();
  return n;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  SparseIntMatrix t(cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c])
      t.columns_[r].emplace_back(c, v);
  return t;  // per-column entries come out sorted because c increases
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("shape mismatch");
  SparseIntMatrix out(rows_, rhs.cols_);
  SparseVec acc, tmp;
  for (int c = 0; c < rhs.cols_; ++c) {
    acc.clear();
    for (const auto& [k, v] : rhs.columns_[c]) {
      sparse_axpy(acc, v, columns_[k], tmp);
      std::swap(acc, tmp);
    }
    out.columns_[c] = acc;
  }
  return out;
}

std::vector<Int> SparseIntMatrix::apply(const std::vector<Int>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("vector length mismatch");
  std::vector<Int> y(rows_, 0);
  for (int c = 0; c < cols_; ++c) {
    if (x[c] == 0) continue;
    for (const auto& [r, v] : columns_[c]) y[r] += v * x[c];
  }
  return y;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && columns_ == rhs.columns_;
}

std::string SparseIntMatrix::to_triplet_text() const {
  std::ostringstream os;
  os << rows_ << ' ' << cols_ << '\n';
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c])
      os << r << ' ' << c << ' ' << v.get_str() << '\n';
  return os.str();
}

SparseIntMatrix SparseIntMatrix::parse_triplet_text(const std::string& text) {
  std::istringstream is(text);
  int rows, cols;
  if (!(is >> rows >> cols))
    throw std::invalid_argument("triplet text: missing dimensions");
  SparseIntMatrix m(rows, cols);
  int r, c;
  std::string v;
  while (is >> r >> c >> v) m.set(r, c, Int(v));
  return m;
}

}  // namespace homforge
