#include "homforge/bar.hpp"

#include <algorithm>
#include <stdexcept>

namespace homforge {

BarChain::BarChain(const FiniteGroup& g, int degree)
    : g_(&g), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative chain degree");
}

BarChain BarChain::cell(const FiniteGroup& g, const std::vector<int>& tuple,
                        const Int& coeff) {
  BarChain c(g, static_cast<int>(tuple.size()));
  c.add(tuple, coeff);
  return c;
}

void BarChain::add(const std::vector<int>& tuple, const Int& coeff) {
  if (static_cast<int>(tuple.size()) != degree_)
    throw std::invalid_argument("cell length does not match chain degree");
  if (coeff == 0) return;
  for (int e : tuple) {
    if (e < 0 || e >= g_->size())
      throw std::invalid_argument("cell entry outside the group");
    if (e == g_->id()) return;  // degenerate cell, normalizes to zero
  }
  auto it = terms_.find(tuple);
  if (it == terms_.end()) {
    terms_.emplace(tuple, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

BarChain& BarChain::operator+=(const BarChain& o) {
  if (g_ != o.g_ || degree_ != o.degree_)
    throw std::invalid_argument("chain group or degree mismatch");
  for (const auto& [cell, k] : o.terms_) add(cell, k);
  return *this;
}

BarChain& BarChain::operator-=(const BarChain& o) {
  if (g_ != o.g_ || degree_ != o.degree_)
    throw std::invalid_argument("chain group or degree mismatch");
  for (const auto& [cell, k] : o.terms_) add(cell, -k);
  return *this;
}

BarChain& BarChain::operator*=(const Int& k) {
  if (k == 0) {
    terms_.clear();
  } else {
    for (auto& [cell, c] : terms_) c *= k;
  }
  return *this;
}

bool BarChain::operator==(const BarChain& o) const {
  return g_ == o.g_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string BarChain::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [cell, k] : terms_) {
    if (!s.empty()) s += " + ";
    s += k.get_str() + "*[";
    for (size_t i = 0; i < cell.size(); ++i) {
      if (i > 0) s += "|";
      s += g_->has_labels() ? g_->label(cell[i]) : std::to_string(cell[i]);
    }
    s += "]";
  }
  return s;
}

BarChain boundary(const BarChain& c) {
  if (c.degree() < 1)
    throw std::invalid_argument("boundary needs degree >= 1");
  const FiniteGroup& g = c.group();
  BarChain out(g, c.degree() - 1);
  for (const auto& [cell, k] : c.terms()) {
    int n = static_cast<int>(cell.size());
    std::vector<int> face(cell.begin() + 1, cell.end());
    out.add(face, k);
    for (int i = 1; i < n; ++i) {
      face.assign(cell.begin(), cell.end());
      face[i - 1] = g.mul(cell[i - 1], cell[i]);
      face.erase(face.begin() + i);
      out.add(face, i % 2 == 0 ? k : -k);
    }
    face.assign(cell.begin(), cell.end() - 1);
    out.add(face, n % 2 == 0 ? k : -k);
  }
  return out;
}

bool is_cycle(const BarChain& c) {
  if (c.degree() == 0) return true;
  return boundary(c).is_zero();
}

BarChain c_symbol(const FiniteGroup& g, const std::vector<int>& elems) {
  int n = static_cast<int>(elems.size());
  if (n < 1 || n > 4)
    throw std::invalid_argument("c-symbol arity must be between 1 and 4");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.commute(elems[i], elems[j]))
        throw std::invalid_argument("c-symbol entries must commute pairwise");
  BarChain out(g, n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::vector<int> cell(n);
    for (int i = 0; i < n; ++i) cell[i] = elems[perm[i]];
    out.add(cell, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

BarChain pushforward(const GroupHom& f, const BarChain& c) {
  if (&f.source() != &c.group())
    throw std::invalid_argument("chain does not live in the hom's source");
  BarChain out(f.target(), c.degree());
  for (const auto& [cell, k] : c.terms()) {
    std::vector<int> image(cell.size());
    for (size_t i = 0; i < cell.size(); ++i) image[i] = f(cell[i]);
    out.add(image, k);
  }
  return out;
}

BarChain conjugate_chain(const BarChain& c, int w) {
  const FiniteGroup& g = c.group();
  int wi = g.inv(w);
  BarChain out(g, c.degree());
  for (const auto& [cell, k] : c.terms()) {
    std::vector<int> image(cell.size());
    for (size_t i = 0; i < cell.size(); ++i)
      image[i] = g.mul(g.mul(w, cell[i]), wi);
    out.add(image, k);
  }
  return out;
}

BarChain conjugation_homotopy(const BarChain& c, int w) {
  const FiniteGroup& g = c.group();
  int wi = g.inv(w);
  BarChain out(g, c.degree() + 1);
  for (const auto& [cell, k] : c.terms()) {
    int n = static_cast<int>(cell.size());
    for (int i = 0; i <= n; ++i) {
      std::vector<int> lifted;
      lifted.reserve(n + 1);
      for (int j = 0; j < i; ++j)
        lifted.push_back(g.mul(g.mul(w, cell[j]), wi));
      lifted.push_back(w);
      for (int j = i; j < n; ++j) lifted.push_back(cell[j]);
      out.add(lifted, i % 2 == 0 ? k : -k);
    }
  }
  return out;
}

GroupHom ProductGroup::proj1(const FiniteGroup& left) const {
  if (left.size() != left_size)
    throw std::invalid_argument("projection target size mismatch");
  std::vector<int> map(group.size());
  for (int i = 0; i < group.size(); ++i) map[i] = factors(i).first;
  return GroupHom(group, left, std::move(map));
}

GroupHom ProductGroup::proj2(const FiniteGroup& right) const {
  if (right.size() != right_size)
    throw std::invalid_argument("projection target size mismatch");
  std::vector<int> map(group.size());
  for (int i = 0; i < group.size(); ++i) map[i] = factors(i).second;
  return GroupHom(group, right, std::move(map));
}

GroupHom ProductGroup::embed1(const FiniteGroup& left) const {
  if (left.size() != left_size)
    throw std::invalid_argument("inclusion source size mismatch");
  std::vector<int> map(left_size);
  int id2 = factors(group.id()).second;
  for (int a = 0; a < left_size; ++a) map[a] = pair_index(a, id2);
  return GroupHom(left, group, std::move(map));
}

GroupHom ProductGroup::embed2(const FiniteGroup& right) const {
  if (right.size() != right_size)
    throw std::invalid_argument("inclusion source size mismatch");
  std::vector<int> map(right_size);
  int id1 = factors(group.id()).first;
  for (int b = 0; b < right_size; ++b) map[b] = pair_index(id1, b);
  return GroupHom(right, group, std::move(map));
}

ProductGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                            int cap) {
  long size = static_cast<long>(a.size()) * b.size();
  if (size > cap) throw std::length_error("product group order exceeds cap");
  int n = static_cast<int>(size), nb = b.size();
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    int xa = x / nb, xb = x % nb;
    labels[x] = "(" + (a.has_labels() ? a.label(xa) : std::to_string(xa)) +
                "," + (b.has_labels() ? b.label(xb) : std::to_string(xb)) +
                ")";
    for (int y = 0; y < n; ++y)
      table[x * n + y] =
          a.mul(xa, y / nb) * nb + b.mul(xb, y % nb);
  }
  ProductGroup p{FiniteGroup(std::move(table), std::move(labels)), a.size(),
                 nb};
  if (a.abelian_orders() && b.abelian_orders()) {
    std::vector<long> orders = *a.abelian_orders();
    orders.insert(orders.end(), b.abelian_orders()->begin(),
                  b.abelian_orders()->end());
    p.group.set_abelian_orders(std::move(orders));
  }
  return p;
}

BarChain shuffle_product(const BarChain& a, const BarChain& b,
                         const ProductGroup& p) {
  if (a.group().size() != p.left_size || b.group().size() != p.right_size)
    throw std::invalid_argument("factors do not match the product group");
  int ida = a.group().id(), idb = b.group().id();
  int m = a.degree(), n = b.degree();
  BarChain out(p.group, m + n);
  // selector: 1 marks a position taken by an a-entry; iterate all
  // combinations in lexicographic order via next_permutation on the
  // reversed pattern
  std::vector<int> sel(m + n, 0);
  for (int i = 0; i < m; ++i) sel[i] = 1;
  std::sort(sel.begin(), sel.end());
  std::vector<std::vector<int>> shuffles;
  do {
    shuffles.push_back(sel);
  } while (std::next_permutation(sel.begin(), sel.end()));
  for (const auto& [ca, ka] : a.terms()) {
    for (const auto& [cb, kb] : b.terms()) {
      Int kab = ka * kb;
      for (const auto& s : shuffles) {
        // inversions: pairs (a-slot after b-slot) crossing the interleave
        int inversions = 0, seen_b = 0;
        std::vector<int> cell(m + n);
        int ia = 0, ib = 0;
        for (int pos = 0; pos < m + n; ++pos) {
          if (s[pos] == 1) {
            inversions += seen_b;
            cell[pos] = p.pair_index(ca[ia++], idb);
          } else {
            ++seen_b;
            cell[pos] = p.pair_index(ida, cb[ib++]);
          }
        }
        out.add(cell, inversions % 2 == 0 ? kab : -kab);
      }
    }
  }
  return out;
}

CellIndexer::CellIndexer(const FiniteGroup& g, int degree)
    : degree_(degree), symbols_(g.size() - 1) {
  if (degree < 0) throw std::invalid_argument("negative cell degree");
  rank_.assign(g.size(), -1);
  for (int e = 0; e < g.size(); ++e) {
    if (e == g.id()) continue;
    rank_[e] = static_cast<int>(unrank_.size());
    unrank_.push_back(e);
  }
  count_ = 1;
  for (int i = 0; i < degree_; ++i) count_ *= symbols_;
}

unsigned long long CellIndexer::index_of(const std::vector<int>& cell) const {
  if (static_cast<int>(cell.size()) != degree_)
    throw std::invalid_argument("cell length mismatch");
  unsigned long long idx = 0;
  for (int e : cell) {
    if (e < 0 || e >= static_cast<int>(rank_.size()) || rank_[e] < 0)
      throw std::invalid_argument("cell entry is degenerate or out of range");
    idx = idx * symbols_ + rank_[e];
  }
  return idx;
}

std::vector<int> CellIndexer::cell_at(unsigned long long idx) const {
  std::vector<int> cell(degree_);
  for (int i = degree_; i-- > 0;) {
    cell[i] = unrank_[idx % symbols_];
    idx /= symbols_;
  }
  return cell;
}

}  // namespace homforge
