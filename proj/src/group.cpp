#include "homforge/group.hpp"

#include <atomic>
#include <map>
#include <stdexcept>

#include "homforge/field.hpp"

namespace homforge {

FqMatrix FqMatrix::identity(int q, int n) {
  FqMatrix m{q, n, std::vector<int>(n * n, 0)};
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FqMatrix FqMatrix::diagonal(int q, const std::vector<int>& diag) {
  int n = static_cast<int>(diag.size());
  FqMatrix m{q, n, std::vector<int>(n * n, 0)};
  for (int i = 0; i < n; ++i) m.set(i, i, diag[i]);
  return m;
}

FqMatrix FqMatrix::permutation(int q, const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  FqMatrix m{q, n, std::vector<int>(n * n, 0)};
  for (int i = 0; i < n; ++i) m.set(i, perm[i], 1);
  return m;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (q != o.q || n != o.n)
    throw std::invalid_argument("matrix shape or field mismatch");
  const GaloisField& F = GaloisField::get(q);
  FqMatrix r{q, n, std::vector<int>(n * n, 0)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j)
        r.set(i, j, F.add(r.at(i, j), F.mul(aik, o.at(k, j))));
    }
  return r;
}

bool FqMatrix::invertible() const {
  const GaloisField& F = GaloisField::get(q);
  FqMatrix m = *this;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        int t = m.at(col, j);
        m.set(col, j, m.at(pivot, j));
        m.set(pivot, j, t);
      }
    int pv = F.inv(m.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      int f = F.mul(m.at(r, col), pv);
      if (f == 0) continue;
      for (int j = col; j < n; ++j)
        m.set(r, j, F.sub(m.at(r, j), F.mul(f, m.at(col, j))));
    }
  }
  return true;
}

std::string FqMatrix::to_string() const {
  const GaloisField& F = GaloisField::get(q);
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    s += i == 0 ? "[" : ",[";
    for (int j = 0; j < n; ++j) {
      if (j > 0) s += ",";
      s += F.to_string(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

namespace {
std::atomic<long> next_group_uid{1};
}

FiniteGroup::FiniteGroup(std::vector<int> mul_table,
                         std::vector<std::string> labels)
    : uid_(next_group_uid.fetch_add(1)), mul_(std::move(mul_table)),
      labels_(std::move(labels)) {
  size_t n = 0;
  while (n * n < mul_.size()) ++n;
  if (n * n != mul_.size())
    throw std::invalid_argument("multiplication table is not square");
  n_ = static_cast<int>(n);
  if (n_ == 0) throw std::invalid_argument("empty group");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("label count mismatch");
  for (int v : mul_)
    if (v < 0 || v >= n_)
      throw std::invalid_argument("table entry out of range");

  id_ = -1;
  for (int e = 0; e < n_; ++e) {
    bool ok = true;
    for (int x = 0; x < n_ && ok; ++x)
      ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      id_ = e;
      break;
    }
  }
  if (id_ < 0) throw std::invalid_argument("table has no identity");

  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == id_ && mul(b, a) == id_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0)
      throw std::invalid_argument("table element without inverse");
  }

  if (n_ <= 256) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("table is not associative");
  }

  abelian_ = true;
  for (int a = 0; a < n_ && abelian_; ++a)
    for (int b = a + 1; b < n_ && abelian_; ++b)
      abelian_ = mul(a, b) == mul(b, a);
}

int FiniteGroup::order_of(int a) const {
  int x = a, k = 1;
  while (x != id_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

void FiniteGroup::set_abelian_orders(std::vector<long> orders) {
  abelian_orders_ = std::move(orders);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> orders)
    : orders_(std::move(orders)) {
  size_ = 1;
  for (long m : orders_) {
    if (m < 1) throw std::invalid_argument("cyclic factor order must be >= 1");
    size_ *= m;
    if (size_ > 1000000)
      throw std::length_error("abelian group too large to index");
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(long n) {
  return FiniteAbelianGroup(std::vector<long>{n});
}

FiniteAbelianGroup FiniteAbelianGroup::product(const FiniteAbelianGroup& a,
                                               const FiniteAbelianGroup& b) {
  std::vector<long> orders = a.orders_;
  orders.insert(orders.end(), b.orders_.begin(), b.orders_.end());
  return FiniteAbelianGroup(std::move(orders));
}

std::vector<long> FiniteAbelianGroup::exponents(int idx) const {
  std::vector<long> e(orders_.size());
  for (size_t i = orders_.size(); i-- > 0;) {
    e[i] = idx % orders_[i];
    idx = static_cast<int>(idx / orders_[i]);
  }
  return e;
}

int FiniteAbelianGroup::index_of(const std::vector<long>& e) const {
  if (e.size() != orders_.size())
    throw std::invalid_argument("exponent vector length mismatch");
  long idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    long c = e[i] % orders_[i];
    if (c < 0) c += orders_[i];
    idx = idx * orders_[i] + c;
  }
  return static_cast<int>(idx);
}

int FiniteAbelianGroup::mul(int a, int b) const {
  auto ea = exponents(a), eb = exponents(b);
  for (size_t i = 0; i < ea.size(); ++i) ea[i] += eb[i];
  return index_of(ea);
}

int FiniteAbelianGroup::inv(int a) const {
  auto e = exponents(a);
  for (long& c : e) c = -c;
  return index_of(e);
}

std::string FiniteAbelianGroup::label(int idx) const {
  auto e = exponents(idx);
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

FiniteGroup FiniteAbelianGroup::cayley(int cap) const {
  if (size_ > cap) throw std::length_error("group order exceeds cap");
  int n = static_cast<int>(size_);
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = label(a);
    for (int b = 0; b < n; ++b) table[a * n + b] = mul(a, b);
  }
  FiniteGroup g(std::move(table), std::move(labels));
  g.set_abelian_orders(orders_);
  return g;
}

MatrixGroup from_matrix_generators(int q, const std::vector<FqMatrix>& gens,
                                   int cap) {
  if (gens.empty()) throw std::invalid_argument("no generators given");
  int n = gens.front().n;
  for (const auto& g : gens) {
    if (g.q != q || g.n != n)
      throw std::invalid_argument("generator shape or field mismatch");
    if (!g.invertible())
      throw std::invalid_argument("generator is not invertible");
  }
  std::vector<FqMatrix> elems{FqMatrix::identity(q, n)};
  std::map<std::vector<int>, int> index{{elems[0].e, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      FqMatrix m = elems[head] * g;
      if (index.emplace(m.e, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(m));
        if (static_cast<int>(elems.size()) > cap)
          throw std::length_error(
              "matrix group closure exceeds cap " + std::to_string(cap));
      }
    }
  }
  int order = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int a = 0; a < order; ++a) {
    labels[a] = elems[a].to_string();
    for (int b = 0; b < order; ++b) {
      FqMatrix m = elems[a] * elems[b];
      auto it = index.find(m.e);
      if (it == index.end())
        throw std::logic_error("closure was not closed under products");
      table[a * order + b] = it->second;
    }
  }
  return MatrixGroup{FiniteGroup(std::move(table), std::move(labels)),
                     std::move(elems), q};
}

MatrixGroup torus_swap_group(int q, int cap) {
  const GaloisField& F = GaloisField::get(q);
  int r = F.primitive_root();
  std::vector<FqMatrix> gens{
      FqMatrix::diagonal(q, {r, 1}),
      FqMatrix::diagonal(q, {1, r}),
      FqMatrix::permutation(q, {1, 0}),
  };
  return from_matrix_generators(q, gens, cap);
}

UnitGroup units_of_field(int q) {
  const GaloisField& F = GaloisField::get(q);
  UnitGroup u{FiniteAbelianGroup::cyclic(q - 1), q, F.primitive_root(), {}, {}};
  u.dlog.assign(q, -1);
  u.element.assign(q - 1, 0);
  int x = 1;
  for (int k = 0; k < q - 1; ++k) {
    u.element[k] = x;
    u.dlog[x] = k;
    x = F.mul(x, u.primitive_root);
  }
  if (x != 1) throw std::logic_error("primitive root order mismatch");
  for (int a = 1; a < q; ++a)
    if (u.dlog[a] < 0) throw std::logic_error("unit group is not cyclic");
  return u;
}

GroupHom::GroupHom(const FiniteGroup& src, const FiniteGroup& tgt,
                   std::vector<int> map)
    : src_(&src), tgt_(&tgt), map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != src.size())
    throw std::invalid_argument("image table length mismatch");
  for (int v : map_)
    if (v < 0 || v >= tgt.size())
      throw std::invalid_argument("image out of range");
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < src.size(); ++b)
      if (map_[src.mul(a, b)] != tgt.mul(map_[a], map_[b]))
        throw std::invalid_argument("image table is not a homomorphism");
}

GroupHom GroupHom::from_generator_images(
    const FiniteGroup& src, const FiniteGroup& tgt,
    const std::vector<std::pair<int, int>>& images) {
  std::vector<int> map(src.size(), -1);
  map[src.id()] = tgt.id();
  std::vector<int> queue{src.id()};
  for (size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (const auto& [g, img] : images) {
      int y = src.mul(x, g);
      int fy = tgt.mul(map[x], img);
      if (map[y] < 0) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        throw std::invalid_argument(
            "generator images are inconsistent on the closure");
      }
    }
  }
  for (int v : map)
    if (v < 0)
      throw std::invalid_argument("given elements do not generate the source");
  return GroupHom(src, tgt, std::move(map));
}

bool GroupHom::injective() const {
  std::vector<bool> seen(tgt_->size(), false);
  for (int v : map_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool GroupHom::surjective() const {
  std::vector<bool> seen(tgt_->size(), false);
  int count = 0;
  for (int v : map_)
    if (!seen[v]) {
      seen[v] = true;
      ++count;
    }
  return count == tgt_->size();
}

}  // namespace homforge
