#include "homforge/wedge.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "homforge/lattice.hpp"

namespace homforge {

namespace {

// sorts indices in place, returns the permutation sign, 0 on a repeat
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    int v = idx[i];
    size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      sign = -sign;
    }
    idx[j] = v;
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

void check_same_lattice(const WedgeClass& a, const WedgeClass& b) {
  if (!(a.lattice() == b.lattice()) || a.degree() != b.degree())
    throw std::invalid_argument("wedge classes live in different lattices");
}

}  // namespace

UnitLattice::UnitLattice(std::vector<std::string> unit_names, int slots)
    : names_(std::move(unit_names)), slots_(slots) {
  if (slots_ < 1) throw std::invalid_argument("lattice needs >= 1 slot");
  if (names_.empty()) throw std::invalid_argument("lattice needs units");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    // digits may not lead (words use a leading 1 for the trivial unit)
    if (n.empty() || std::isdigit(static_cast<unsigned char>(n[0])))
      throw std::invalid_argument("bad unit name: '" + n + "'");
    for (char ch : n)
      if (ch == '^' || ch == '-' || ch == '+' ||
          std::isspace(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("bad unit name: '" + n + "'");
    if (!seen.insert(n).second)
      throw std::invalid_argument("duplicate unit name: " + n);
  }
}

int UnitLattice::unit_index(const std::string& name) const {
  for (int u = 0; u < unit_count(); ++u)
    if (names_[u] == name) return u;
  throw std::invalid_argument("unknown unit: " + name);
}

int UnitLattice::basis_index(int unit, int slot) const {
  if (unit < 0 || unit >= unit_count() || slot < 1 || slot > slots_)
    throw std::out_of_range("basis index out of range");
  return unit * slots_ + (slot - 1);
}

int UnitLattice::basis_index(const std::string& unit, int slot) const {
  return basis_index(unit_index(unit), slot);
}

int UnitLattice::basis_unit(int index) const {
  if (index < 0 || index >= rank()) throw std::out_of_range("basis index");
  return index / slots_;
}

int UnitLattice::basis_slot(int index) const {
  if (index < 0 || index >= rank()) throw std::out_of_range("basis index");
  return index % slots_ + 1;
}

std::string UnitLattice::basis_name(int index) const {
  return "e(" + names_[basis_unit(index)] + "," +
         std::to_string(basis_slot(index)) + ")";
}

bool LatticeVector::is_zero() const {
  for (long c : coeffs)
    if (c != 0) return false;
  return true;
}

std::string LatticeVector::to_string() const {
  std::string s;
  for (int i = 0; i < lattice.rank(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(coeffs[i]) + "*" + lattice.basis_name(i);
  }
  return s.empty() ? "0" : s;
}

LatticeVector zero_vector(const UnitLattice& l) {
  return {l, std::vector<long>(l.rank(), 0)};
}

LatticeVector basis_vector(const UnitLattice& l, const std::string& unit,
                           int slot) {
  LatticeVector v = zero_vector(l);
  v.coeffs[l.basis_index(unit, slot)] = 1;
  return v;
}

LatticeVector operator+(LatticeVector a, const LatticeVector& b) {
  if (!(a.lattice == b.lattice))
    throw std::invalid_argument("vectors live in different lattices");
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

LatticeVector operator-(LatticeVector a, const LatticeVector& b) {
  if (!(a.lattice == b.lattice))
    throw std::invalid_argument("vectors live in different lattices");
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
  return a;
}

LatticeVector operator*(long k, LatticeVector a) {
  for (long& c : a.coeffs) c *= k;
  return a;
}

std::vector<long> parse_unit_word(const UnitLattice& l,
                                  const std::string& word) {
  std::vector<long> exps(l.unit_count(), 0);
  if (word.empty()) throw std::invalid_argument("empty unit word");
  size_t pos = 0;
  while (pos < word.size()) {
    int best = -1;
    size_t best_len = 0;
    if (word[pos] == '1') best_len = 1;  // the trivial unit, contributes 0
    for (int u = 0; u < l.unit_count(); ++u) {
      const std::string& name = l.unit_names()[u];
      if (name.size() > best_len &&
          word.compare(pos, name.size(), name) == 0) {
        best = u;
        best_len = name.size();
      }
    }
    if (best_len == 0)
      throw std::invalid_argument("unknown unit in word '" + word + "' at '" +
                                  word.substr(pos) + "'");
    pos += best_len;
    long e = 1;
    if (pos < word.size() && word[pos] == '^') {
      ++pos;
      size_t start = pos;
      if (pos < word.size() && word[pos] == '-') ++pos;
      while (pos < word.size() &&
             std::isdigit(static_cast<unsigned char>(word[pos])))
        ++pos;
      if (pos == start || (word[start] == '-' && pos == start + 1))
        throw std::invalid_argument("bad exponent in word: " + word);
      e = std::stol(word.substr(start, pos - start));
    }
    if (best >= 0) exps[best] += e;
  }
  return exps;
}

LatticeVector diag_vector(const UnitLattice& l,
                          const std::vector<std::string>& slot_words) {
  if (static_cast<int>(slot_words.size()) != l.slots())
    throw std::invalid_argument("diag needs one word per slot");
  LatticeVector v = zero_vector(l);
  for (int s = 1; s <= l.slots(); ++s) {
    std::vector<long> exps = parse_unit_word(l, slot_words[s - 1]);
    for (int u = 0; u < l.unit_count(); ++u)
      v.coeffs[l.basis_index(u, s)] += exps[u];
  }
  return v;
}

WedgeClass::WedgeClass(UnitLattice lattice, int degree)
    : lattice_(std::move(lattice)), degree_(degree) {
  if (degree_ != 2 && degree_ != 3)
    throw std::invalid_argument("wedge degree must be 2 or 3");
}

void WedgeClass::add_monomial(std::vector<int> indices, const Int& coeff) {
  if (static_cast<int>(indices.size()) != degree_)
    throw std::invalid_argument("monomial arity does not match the degree");
  for (int i : indices)
    if (i < 0 || i >= lattice_.rank())
      throw std::out_of_range("monomial index outside the lattice");
  if (coeff == 0) return;
  int sign = sort_with_sign(indices);
  if (sign == 0) return;
  Int& slot = terms_[indices];
  slot += sign > 0 ? coeff : -coeff;
  if (slot == 0) terms_.erase(indices);
}

Int WedgeClass::coeff(std::vector<int> indices) const {
  int sign = sort_with_sign(indices);
  if (sign == 0) return 0;
  auto it = terms_.find(indices);
  if (it == terms_.end()) return 0;
  return sign > 0 ? it->second : -it->second;
}

WedgeClass& WedgeClass::operator+=(const WedgeClass& o) {
  check_same_lattice(*this, o);
  for (const auto& [mono, k] : o.terms_) {
    Int& slot = terms_[mono];
    slot += k;
    if (slot == 0) terms_.erase(mono);
  }
  return *this;
}

WedgeClass& WedgeClass::operator-=(const WedgeClass& o) {
  check_same_lattice(*this, o);
  for (const auto& [mono, k] : o.terms_) {
    Int& slot = terms_[mono];
    slot -= k;
    if (slot == 0) terms_.erase(mono);
  }
  return *this;
}

WedgeClass& WedgeClass::operator*=(const Int& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= k;
  return *this;
}

bool WedgeClass::operator==(const WedgeClass& o) const {
  return lattice_ == o.lattice_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string WedgeClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [mono, k] : terms_) {
    if (!s.empty()) s += " + ";
    s += k.get_str() + "*";
    for (size_t i = 0; i < mono.size(); ++i) {
      if (i > 0) s += "^";
      s += lattice_.basis_name(mono[i]);
    }
  }
  return s;
}

namespace {

WedgeClass expand_wedge(const std::vector<const LatticeVector*>& vs) {
  const UnitLattice& l = vs[0]->lattice;
  for (const auto* v : vs)
    if (!(v->lattice == l))
      throw std::invalid_argument("vectors live in different lattices");
  WedgeClass out(l, static_cast<int>(vs.size()));
  std::vector<std::vector<int>> support(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) {
    for (int b = 0; b < l.rank(); ++b)
      if (vs[i]->coeffs[b] != 0) support[i].push_back(b);
    if (support[i].empty()) return out;
  }
  std::vector<int> pick(vs.size(), 0);
  std::vector<int> mono(vs.size());
  while (true) {
    Int coeff = 1;
    for (size_t i = 0; i < vs.size(); ++i) {
      mono[i] = support[i][pick[i]];
      coeff *= vs[i]->coeffs[mono[i]];
    }
    out.add_monomial(mono, coeff);
    size_t i = 0;
    while (i < vs.size() && ++pick[i] == static_cast<int>(support[i].size()))
      pick[i++] = 0;
    if (i == vs.size()) break;
  }
  return out;
}

}  // namespace

WedgeClass wedge(const LatticeVector& v1, const LatticeVector& v2) {
  if (v1.is_zero() || v2.is_zero()) return WedgeClass(v1.lattice, 2);
  return expand_wedge({&v1, &v2});
}

WedgeClass wedge(const LatticeVector& v1, const LatticeVector& v2,
                 const LatticeVector& v3) {
  if (v1.is_zero() || v2.is_zero() || v3.is_zero())
    return WedgeClass(v1.lattice, 3);
  return expand_wedge({&v1, &v2, &v3});
}

WedgeClass apply_slot_permutation(const WedgeClass& w,
                                  const std::vector<int>& perm) {
  const UnitLattice& l = w.lattice();
  if (static_cast<int>(perm.size()) != l.slots())
    throw std::invalid_argument("permutation size does not match the slots");
  std::vector<bool> hit(l.slots(), false);
  for (int img : perm) {
    if (img < 1 || img > l.slots() || hit[img - 1])
      throw std::invalid_argument("not a permutation of the slots");
    hit[img - 1] = true;
  }
  WedgeClass out(l, w.degree());
  std::vector<int> mono(w.degree());
  for (const auto& [src, k] : w.terms()) {
    for (size_t i = 0; i < src.size(); ++i)
      mono[i] =
          l.basis_index(l.basis_unit(src[i]), perm[l.basis_slot(src[i]) - 1]);
    out.add_monomial(mono, k);
  }
  return out;
}

namespace {

// normalized image of a monomial under a slot map, returns the sort sign
int slot_image(const UnitLattice& l, const std::vector<int>& mono,
               const std::vector<int>& perm, std::vector<int>& out) {
  out.resize(mono.size());
  for (size_t i = 0; i < mono.size(); ++i)
    out[i] = l.basis_index(l.basis_unit(mono[i]),
                           perm[l.basis_slot(mono[i]) - 1]);
  return sort_with_sign(out);
}

// The relation sublattice m - sigma(m) over the monomial orbits touched by
// one class, as generator columns indexed by orbit monomial. The slot
// action permutes orbits, so relations outside the touched orbits can never
// contribute to a membership certificate and are safe to omit.
struct RelationSystem {
  std::vector<std::vector<int>> perms;           // 1-based slot maps
  std::map<std::vector<int>, int> row_of;        // orbit monomial -> row
  std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>>
      sources;                                   // tag -> (monomial, perm)
  LatticeBasis relations;
  SparseVec target;

  RelationSystem(const WedgeClass& diff, bool track)
      : relations(orbit_rows(diff), track) {
    const UnitLattice& l = diff.lattice();
    std::vector<int> scratch;
    int tag = 0;
    for (const auto& [mono, r] : row_of) {
      for (const auto& perm : perms) {
        int sign = slot_image(l, mono, perm, scratch);
        SparseVec rel;
        int r2 = row_of.at(scratch);
        if (r2 == r) {
          // sigma fixes the monomial up to sign; only sign -1 relates it
          if (sign == -1) rel.emplace_back(r, 2);
        } else if (r < r2) {
          rel.emplace_back(r, 1);
          rel.emplace_back(r2, -sign);
        } else {
          rel.emplace_back(r2, -sign);
          rel.emplace_back(r, 1);
        }
        if (rel.empty()) continue;
        if (track) sources.emplace_back(&mono, &perm);
        relations.add_generator(std::move(rel), tag++);
      }
    }
    for (const auto& [mono, k] : diff.terms())
      target.emplace_back(row_of.at(mono), k);
    std::sort(target.begin(), target.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }

 private:
  // fills perms and row_of, returns the row count; one pass over the full
  // permutation group closes each orbit
  int orbit_rows(const WedgeClass& diff) {
    const UnitLattice& l = diff.lattice();
    std::vector<int> p(l.slots());
    for (int s = 0; s < l.slots(); ++s) p[s] = s + 1;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<int> scratch;
    for (const auto& [mono, k] : diff.terms())
      for (const auto& perm : perms) {
        slot_image(l, mono, perm, scratch);
        row_of.emplace(scratch, 0);
      }
    int rows = 0;
    for (auto& [mono, r] : row_of) r = rows++;
    return rows;
  }
};

}  // namespace

bool coinvariant_equal(const WedgeClass& a, const WedgeClass& b) {
  check_same_lattice(a, b);
  WedgeClass diff = a - b;
  if (diff.is_zero()) return true;
  RelationSystem sys(diff, false);
  return sys.relations.contains(sys.target);
}

namespace {

// the word placed at one slot, e.g. word_at_slot("ab", 2) = e(a,2) + e(b,2)
LatticeVector word_at_slot(const UnitLattice& l, const std::string& word,
                           int slot) {
  std::vector<long> exps = parse_unit_word(l, word);
  LatticeVector v = zero_vector(l);
  for (int u = 0; u < l.unit_count(); ++u)
    v.coeffs[l.basis_index(u, slot)] = exps[u];
  return v;
}

}  // namespace

WedgeClass l_class(const UnitLattice& l, const std::string& a,
                   const std::string& b, const std::string& c) {
  if (l.slots() != 2)
    throw std::invalid_argument("l_class needs a two-slot lattice");
  return wedge(word_at_slot(l, a, 1), word_at_slot(l, b, 2),
               word_at_slot(l, c, 1) - word_at_slot(l, c, 2));
}

WedgeClass iota_class(const UnitLattice& l, const std::string& a,
                      const std::string& b) {
  if (l.slots() != 2)
    throw std::invalid_argument("iota_class needs a two-slot lattice");
  return wedge(word_at_slot(l, a, 1),
               word_at_slot(l, b, 1) - word_at_slot(l, b, 2));
}

WedgeClass phi_class(const UnitLattice& l, const std::string& a,
                     const std::string& b, const std::string& c) {
  if (l.slots() != 2)
    throw std::invalid_argument("phi_class needs a two-slot lattice");
  return wedge(word_at_slot(l, a, 1) + word_at_slot(l, a, 2),
               word_at_slot(l, b, 1),
               word_at_slot(l, c, 1) - word_at_slot(l, c, 2));
}

WedgeClass psi_class(const UnitLattice& l, const std::string& a,
                     const std::string& b, const std::string& c) {
  if (l.slots() != 3)
    throw std::invalid_argument("psi_class needs a three-slot lattice");
  return wedge(word_at_slot(l, a, 1), word_at_slot(l, b, 2),
               word_at_slot(l, c, 2) - word_at_slot(l, c, 3));
}

WedgeClass embed(const WedgeClass& w, const UnitLattice& target) {
  const UnitLattice& src = w.lattice();
  if (target.unit_names() != src.unit_names())
    throw std::invalid_argument("embedding needs identical unit names");
  if (target.slots() < src.slots())
    throw std::invalid_argument("embedding cannot drop slots");
  WedgeClass out(target, w.degree());
  std::vector<int> mono(w.degree());
  for (const auto& [cell, k] : w.terms()) {
    for (size_t i = 0; i < cell.size(); ++i)
      mono[i] =
          target.basis_index(src.basis_unit(cell[i]), src.basis_slot(cell[i]));
    out.add_monomial(mono, k);
  }
  return out;
}

WedgeClass substitute(const WedgeClass& w,
                      const std::map<std::string, std::string>& words,
                      const UnitLattice& target) {
  const UnitLattice& src = w.lattice();
  if (target.slots() != src.slots())
    throw std::invalid_argument("substitution must preserve the slot count");
  // image of each source unit as exponents over the target units
  std::vector<std::vector<long>> img(src.unit_count());
  for (int u = 0; u < src.unit_count(); ++u) {
    auto it = words.find(src.unit_names()[u]);
    img[u] = parse_unit_word(target,
                             it == words.end() ? src.unit_names()[u]
                                               : it->second);
  }
  WedgeClass out(target, w.degree());
  for (const auto& [mono, k] : w.terms()) {
    std::vector<LatticeVector> legs;
    legs.reserve(mono.size());
    for (int bi : mono) {
      LatticeVector v = zero_vector(target);
      int s = src.basis_slot(bi);
      const auto& e = img[src.basis_unit(bi)];
      for (int tu = 0; tu < target.unit_count(); ++tu)
        v.coeffs[target.basis_index(tu, s)] = e[tu];
      legs.push_back(std::move(v));
    }
    bool zero = false;
    for (const auto& v : legs) zero = zero || v.is_zero();
    if (zero) continue;
    std::vector<const LatticeVector*> ptrs;
    for (const auto& v : legs) ptrs.push_back(&v);
    WedgeClass piece = expand_wedge(ptrs);
    piece *= k;
    out += piece;
  }
  return out;
}

std::string WedgeIdentityReport::to_string() const {
  std::string s = name + "\n";
  s += "  combination: " + combination.to_string() + "\n";
  s += "  coinvariantly zero: ";
  s += holds ? "yes" : "NO";
  return s;
}

WedgeIdentityReport verify_gl2_kernel_identity() {
  UnitLattice l({"a", "b", "c"}, 2);
  WedgeClass comb = phi_class(l, "a", "b", "c");
  comb += phi_class(l, "b", "a", "c");
  comb += Int(2) * l_class(l, "a", "b", "c");
  bool holds = coinvariant_equal(comb, WedgeClass(l, 3));
  return {"phi(a,b,c) + phi(b,a,c) + 2*l(a,b,c) on two slots",
          std::move(comb), holds};
}

WedgeIdentityReport verify_gl3_embedding_identity() {
  UnitLattice l2({"a", "b", "c"}, 2);
  UnitLattice l3({"a", "b", "c"}, 3);
  WedgeClass comb = embed(l_class(l2, "a", "b", "c"), l3);
  comb += psi_class(l3, "a", "b", "c");
  comb += psi_class(l3, "b", "a", "c");
  bool holds = coinvariant_equal(comb, WedgeClass(l3, 3));
  return {"embed(l(a,b,c)) + psi(a,b,c) + psi(b,a,c) on three slots",
          std::move(comb), holds};
}

namespace {

// turns basis vectors into ambient diagonal elements and slot maps into
// ambient permutation elements, memoizing the lookups
struct Realizer {
  const UnitLattice& l;
  const MatrixGroup& amb;
  const std::map<std::string, int>& scal;
  std::map<std::vector<int>, int> index_of;  // matrix entries -> element
  std::vector<int> cached;

  Realizer(const UnitLattice& lattice,
           const std::map<std::string, int>& scalar_of_unit,
           const MatrixGroup& ambient)
      : l(lattice), amb(ambient), scal(scalar_of_unit),
        cached(lattice.rank(), -1) {
    if (amb.elements.empty())
      throw std::invalid_argument("ambient group carries no matrix labels");
    if (amb.elements[0].n != l.slots())
      throw std::invalid_argument(
          "ambient matrix size differs from the slots");
    for (size_t i = 0; i < amb.elements.size(); ++i)
      index_of.emplace(amb.elements[i].e, static_cast<int>(i));
  }

  int diagonal(int bi) {
    if (cached[bi] >= 0) return cached[bi];
    const std::string& name = l.unit_names()[l.basis_unit(bi)];
    auto it = scal.find(name);
    if (it == scal.end())
      throw std::invalid_argument("unit " + name + " has no scalar assigned");
    int x = it->second;
    if (x <= 0 || x >= amb.q)
      throw std::invalid_argument("scalar for unit " + name +
                                  " is not a field unit");
    std::vector<int> diag(l.slots(), 1);
    diag[l.basis_slot(bi) - 1] = x;
    auto jt = index_of.find(FqMatrix::diagonal(amb.q, diag).e);
    if (jt == index_of.end())
      throw std::invalid_argument("diagonal for " + l.basis_name(bi) +
                                  " is not an ambient element");
    return cached[bi] = jt->second;
  }

  BarChain monomial_symbol(const std::vector<int>& mono) {
    std::vector<int> gs(mono.size());
    for (size_t i = 0; i < mono.size(); ++i) gs[i] = diagonal(mono[i]);
    return c_symbol(amb.group, gs);
  }

  // conjugation by the returned element moves the value at slot s to slot
  // perm[s-1], matching apply_slot_permutation
  int slot_permutation(const std::vector<int>& perm) {
    std::vector<int> rho(perm.size());
    for (size_t s = 0; s < perm.size(); ++s) rho[perm[s] - 1] = s;
    auto it = index_of.find(FqMatrix::permutation(amb.q, rho).e);
    if (it == index_of.end())
      throw std::invalid_argument(
          "ambient group lacks a needed slot permutation");
    return it->second;
  }
};

}  // namespace

BarChain compile_to_bar(const WedgeClass& w,
                        const std::map<std::string, int>& scalar_of_unit,
                        const MatrixGroup& ambient) {
  Realizer real(w.lattice(), scalar_of_unit, ambient);
  BarChain out(ambient.group, w.degree());
  for (const auto& [mono, k] : w.terms()) out += k * real.monomial_symbol(mono);
  return out;
}

std::optional<BarChain> coinvariant_boundary_witness(
    const WedgeClass& a, const WedgeClass& b,
    const std::map<std::string, int>& scalar_of_unit,
    const MatrixGroup& ambient) {
  check_same_lattice(a, b);
  Realizer real(a.lattice(), scalar_of_unit, ambient);
  WedgeClass diff = a - b;
  BarChain h(ambient.group, a.degree() + 1);
  if (diff.is_zero()) return h;

  RelationSystem sys(diff, true);
  std::optional<SparseVec> expr = sys.relations.express(sys.target);
  if (!expr) return std::nullopt;
  for (const auto& [tag, coef] : *expr) {
    const auto& [mono, perm] = sys.sources[tag];
    // d(homotopy) = symbol - conjugate = compiled (mono - sigma mono)
    BarChain piece =
        conjugation_homotopy(real.monomial_symbol(*mono),
                             real.slot_permutation(*perm));
    piece *= coef;
    h += piece;
  }
  if (!(boundary(h) ==
        compile_to_bar(diff, scalar_of_unit, ambient)))
    throw std::logic_error("homotopy witness failed its own check");
  return h;
}

}  // namespace homforge
