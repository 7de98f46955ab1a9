#include "homforge/field.hpp"

#include <map>
#include <stdexcept>

namespace homforge {

namespace {

using Poly = std::vector<int>;  // ascending-degree coefficients mod p

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

// remainder of f modulo monic g, coefficients mod p
Poly poly_mod(Poly f, const Poly& g, int p) {
  f = trim(std::move(f));
  while (f.size() >= g.size()) {
    int lead = f.back();
    size_t shift = f.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) {
      int& c = f[shift + i];
      c = (c - lead * g[i]) % p;
      if (c < 0) c += p;
    }
    f = trim(std::move(f));
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(std::move(r));
}

Poly index_to_poly(int idx, int p) {
  Poly f;
  while (idx > 0) {
    f.push_back(idx % p);
    idx /= p;
  }
  return f;
}

int poly_to_index(const Poly& f, int p) {
  int idx = 0;
  for (size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
  return idx;
}

// trial division by every monic polynomial of degree 1..deg/2
bool is_irreducible(const Poly& g, int p) {
  int deg = static_cast<int>(g.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;  // p^d lower coefficient choices
    for (int k = 0; k < count; ++k) {
      Poly cand = index_to_poly(k, p);
      cand.resize(d + 1, 0);
      cand[d] = 1;
      if (poly_mod(g, cand, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

GaloisField::GaloisField(int p, int degree, std::vector<int> modulus)
    : p_(p), degree_(degree), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < degree_; ++i) q_ *= p_;
  if (degree_ > 1) {
    if (static_cast<int>(modulus_.size()) != degree_ + 1 ||
        modulus_.back() != 1)
      throw std::logic_error("field modulus must be monic of full degree");
    if (!is_irreducible(modulus_, p_))
      throw std::logic_error("field modulus is reducible");
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    Poly fa = index_to_poly(a, p_);
    {
      Poly n = fa;
      for (int& c : n) c = (p_ - c) % p_;
      neg_[a] = poly_to_index(trim(std::move(n)), p_);
    }
    for (int b = 0; b < q_; ++b) {
      Poly fb = index_to_poly(b, p_);
      Poly s(std::max(fa.size(), fb.size()), 0);
      for (size_t i = 0; i < fa.size(); ++i) s[i] = fa[i];
      for (size_t i = 0; i < fb.size(); ++i) s[i] = (s[i] + fb[i]) % p_;
      add_[a * q_ + b] = poly_to_index(trim(std::move(s)), p_);
      Poly m = degree_ > 1 ? poly_mod(poly_mul(fa, fb, p_), modulus_, p_)
                           : trim(poly_mul(fa, fb, p_));
      mul_[a * q_ + b] = poly_to_index(m, p_);
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
  for (int a = 1; a < q_; ++a)
    if (inv_[a] == 0) throw std::logic_error("field element without inverse");
  primitive_root_ = 0;
  for (int a = 1; a < q_ && primitive_root_ == 0; ++a) {
    int x = a, order = 1;
    while (x != 1) {
      x = mul_[x * q_ + a];
      ++order;
    }
    if (order == q_ - 1) primitive_root_ = a;
  }
  if (q_ > 2 && primitive_root_ == 0)
    throw std::logic_error("no primitive root found");
  if (q_ == 2) primitive_root_ = 1;
}

const std::vector<int>& GaloisField::supported() {
  static const std::vector<int> qs{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27};
  return qs;
}

bool GaloisField::is_supported(int q) {
  for (int s : supported())
    if (s == q) return true;
  return false;
}

const GaloisField& GaloisField::get(int q) {
  static const std::map<int, GaloisField>& registry = *[] {
    auto* m = new std::map<int, GaloisField>;
    auto put = [m](int p, int deg, std::vector<int> mod) {
      GaloisField f(p, deg, std::move(mod));
      int q = f.q();
      m->emplace(q, std::move(f));
    };
    for (int p : {2, 3, 5, 7, 11, 13}) put(p, 1, {});
    put(2, 2, {1, 1, 1});     // x^2+x+1
    put(2, 3, {1, 1, 0, 1});  // x^3+x+1
    put(2, 4, {1, 1, 0, 0, 1});
    put(3, 2, {1, 0, 1});     // x^2+1
    put(3, 3, {1, 2, 0, 1});  // x^3+2x+1
    put(5, 2, {2, 0, 1});     // x^2+2
    return m;
  }();
  auto it = registry.find(q);
  if (it == registry.end())
    throw std::invalid_argument("unsupported field size " + std::to_string(q));
  return it->second;
}

int GaloisField::inv(int a) const {
  if (a == 0) throw std::domain_error("division by zero in F_q");
  return inv_[a];
}

int GaloisField::pow(int a, long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = 1;
  int base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int GaloisField::from_int(long n) const {
  long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);
}

std::string GaloisField::to_string(int a) const {
  if (degree_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  Poly f = index_to_poly(a, p_);
  std::string s;
  for (size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(f[i]);
    } else {
      if (f[i] != 1) s += std::to_string(f[i]);
      s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace homforge
