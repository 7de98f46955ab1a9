#include "homforge/lattice.hpp"

#include <algorithm>

namespace homforge {

LatticeBasis::LatticeBasis(int dim, bool track_provenance)
    : dim_(dim), rank_(0), track_prov_(track_provenance), by_row_(dim) {}

namespace {

void negate(SparseVec& v) {
  for (auto& [r, x] : v) x = -x;
}

// dst := f * src with zero products dropped (f may be 0)
void scale_into(const SparseVec& src, const Int& f, SparseVec& dst) {
  dst.clear();
  if (f == 0) return;
  dst.reserve(src.size());
  for (const auto& [row, val] : src) dst.emplace_back(row, f * val);
}

}  // namespace

bool LatticeBasis::add_generator(SparseVec v, int tag,
                                 SparseVec* kernel_out) {
  SparseVec prov;
  if (track_prov_) prov.emplace_back(tag, 1);
  SparseVec scratch, scaled;
  while (!v.empty()) {
    int32_t r = v.front().first;
    if (r < 0 || r >= dim_) throw std::out_of_range("generator row");
    Node* node = by_row_[r].get();
    if (node == nullptr) {
      if (v.front().second < 0) {
        negate(v);
        negate(prov);
      }
      auto n = std::make_unique<Node>();
      n->v = std::move(v);
      n->prov = std::move(prov);
      by_row_[r] = std::move(n);
      ++rank_;
      return true;
    }
    const Int& p = node->v.front().second;
    const Int& a = v.front().second;
    if (divides(p, a)) {
      Int q = -exact_div(a, p);
      sparse_axpy(v, q, node->v, scratch);
      std::swap(v, scratch);
      if (track_prov_) {
        sparse_axpy(prov, q, node->prov, scratch);
        std::swap(prov, scratch);
      }
    } else {
      // Unimodular move on the pair (basis column, incoming column):
      //   new basis = x*old + y*v   has pivot value g = gcd(p, a) > 0
      //   new v     = (p/g)*v - (a/g)*old   drops out of row r entirely
      Int x, y;
      Int g = ext_gcd(p, a, x, y);
      Int pg = exact_div(p, g), ag = exact_div(a, g);
      Node fresh;
      scale_into(node->v, x, scaled);
      sparse_axpy(scaled, y, v, fresh.v);
      scale_into(v, pg, scaled);
      sparse_axpy(scaled, -ag, node->v, scratch);
      std::swap(v, scratch);
      if (track_prov_) {
        scale_into(node->prov, x, scaled);
        sparse_axpy(scaled, y, prov, fresh.prov);
        scale_into(prov, pg, scaled);
        sparse_axpy(scaled, -ag, node->prov, scratch);
        std::swap(prov, scratch);
      }
      *node = std::move(fresh);
    }
  }
  if (kernel_out != nullptr) {
    if (!track_prov_)
      throw std::logic_error("kernel vectors need provenance tracking");
    *kernel_out = std::move(prov);
  }
  return false;
}

bool LatticeBasis::contains(const SparseVec& v) const {
  SparseVec w = v, scratch;
  while (!w.empty()) {
    int32_t r = w.front().first;
    if (r < 0 || r >= dim_) throw std::out_of_range("vector row");
    const Node* node = by_row_[r].get();
    if (node == nullptr) return false;
    const Int& p = node->v.front().second;
    if (!divides(p, w.front().second)) return false;
    Int q = -exact_div(w.front().second, p);
    sparse_axpy(w, q, node->v, scratch);
    std::swap(w, scratch);
  }
  return true;
}

std::optional<SparseVec> LatticeBasis::express(const SparseVec& v) const {
  if (!track_prov_)
    throw std::logic_error("express needs provenance tracking");
  SparseVec w = v, acc, scratch;
  while (!w.empty()) {
    int32_t r = w.front().first;
    if (r < 0 || r >= dim_) throw std::out_of_range("vector row");
    const Node* node = by_row_[r].get();
    if (node == nullptr) return std::nullopt;
    const Int& p = node->v.front().second;
    if (!divides(p, w.front().second)) return std::nullopt;
    Int q = exact_div(w.front().second, p);
    sparse_axpy(w, -q, node->v, scratch);
    std::swap(w, scratch);
    sparse_axpy(acc, q, node->prov, scratch);
    std::swap(acc, scratch);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

std::optional<Int> LatticeBasis::denominator_order(const SparseVec& v) const {
  // Rational forward reduction against the echelon basis. The coordinate at
  // each pivot is forced, so the lcm of coordinate denominators is the
  // exact order of v in (Q-span of L) / L.
  std::vector<std::pair<int32_t, Rat>> w;
  w.reserve(v.size());
  for (const auto& [r, x] : v) w.emplace_back(r, Rat(x));
  Int denom_lcm = 1;
  while (!w.empty()) {
    int32_t r = w.front().first;
    if (r < 0 || r >= dim_) throw std::out_of_range("vector row");
    const Node* node = by_row_[r].get();
    if (node == nullptr) return std::nullopt;
    Rat q = w.front().second / Rat(node->v.front().second);
    denom_lcm = lcm(denom_lcm, Int(q.get_den()));
    // w -= q * node->v, merged over sorted supports
    std::vector<std::pair<int32_t, Rat>> out;
    out.reserve(w.size() + node->v.size());
    size_t i = 0, j = 0;
    const SparseVec& b = node->v;
    while (i < w.size() && j < b.size()) {
      if (w[i].first < b[j].first) {
        out.push_back(w[i++]);
      } else if (w[i].first > b[j].first) {
        Rat t = -q * Rat(b[j].second);
        if (t != 0) out.emplace_back(b[j].first, std::move(t));
        ++j;
      } else {
        Rat t = w[i].second - q * Rat(b[j].second);
        if (t != 0) out.emplace_back(w[i].first, std::move(t));
        ++i;
        ++j;
      }
    }
    for (; i < w.size(); ++i) out.push_back(w[i]);
    for (; j < b.size(); ++j) {
      Rat t = -q * Rat(b[j].second);
      if (t != 0) out.emplace_back(b[j].first, std::move(t));
    }
    w = std::move(out);
  }
  return denom_lcm;
}

std::vector<int32_t> LatticeBasis::pivot_rows() const {
  std::vector<int32_t> rows;
  rows.reserve(rank_);
  for (int32_t r = 0; r < dim_; ++r)
    if (by_row_[r] != nullptr) rows.push_back(r);
  return rows;
}

SparseIntMatrix LatticeBasis::basis_matrix() const {
  SparseIntMatrix m(dim_, rank_);
  int c = 0;
  for (int32_t r = 0; r < dim_; ++r)
    if (by_row_[r] != nullptr) m.set_column(c++, by_row_[r]->v);
  return m;
}

size_t LatticeBasis::basis_entry_count() const {
  size_t n = 0;
  for (const auto& node : by_row_)
    if (node) n += node->v.size() + node->prov.size();
  return n;
}

ModPBasis::ModPBasis(int dim, uint32_t p)
    : dim_(dim), p_(p), rank_(0), by_row_(dim) {}

namespace {

uint32_t modpow(uint64_t base, uint64_t e, uint64_t p) {
  uint64_t acc = 1;
  base %= p;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

uint32_t modinv(uint32_t a, uint32_t p) { return modpow(a, p - 2, p); }

}  // namespace

void ModPBasis::reduce(Vec& v, bool) const {
  Vec out;
  size_t guard = 0;
  while (!v.empty()) {
    if (++guard > static_cast<size_t>(dim_) + 1)
      throw std::logic_error("mod-p reduction did not terminate");
    int32_t r = v.front().first;
    const Vec& b = by_row_[r];
    if (b.empty()) return;  // pivotless leading row: irreducible remainder
    uint64_t q = p_ - v.front().second;  // pivot is scaled to 1
    out.clear();
    out.reserve(v.size() + b.size());
    size_t i = 0, j = 0;
    while (i < v.size() && j < b.size()) {
      if (v[i].first < b[j].first) {
        out.push_back(v[i++]);
      } else if (v[i].first > b[j].first) {
        uint32_t t = static_cast<uint32_t>(q * b[j].second % p_);
        if (t != 0) out.emplace_back(b[j].first, t);
        ++j;
      } else {
        uint32_t t =
            static_cast<uint32_t>((v[i].second + q * b[j].second) % p_);
        if (t != 0) out.emplace_back(v[i].first, t);
        ++i;
        ++j;
      }
    }
    for (; i < v.size(); ++i) out.push_back(v[i]);
    for (; j < b.size(); ++j) {
      uint32_t t = static_cast<uint32_t>(q * b[j].second % p_);
      if (t != 0) out.emplace_back(b[j].first, t);
    }
    std::swap(v, out);
  }
}

bool ModPBasis::add_generator(Vec v) {
  reduce(v, true);
  if (v.empty()) return false;
  uint64_t inv = modinv(v.front().second, p_);
  for (auto& [r, x] : v) x = static_cast<uint32_t>(inv * x % p_);
  int32_t r = v.front().first;
  by_row_[r] = std::move(v);
  ++rank_;
  return true;
}

bool ModPBasis::contains(Vec v) const {
  reduce(v, true);
  return v.empty();
}

ModPBasis::Vec ModPBasis::reduce_int_vec(const SparseVec& v) const {
  Vec out;
  out.reserve(v.size());
  for (const auto& [r, x] : v) {
    Int m = x % p_;
    if (m < 0) m += p_;
    uint32_t u = static_cast<uint32_t>(m.get_ui());
    if (u != 0) out.emplace_back(r, u);
  }
  return out;
}

}  // namespace homforge
