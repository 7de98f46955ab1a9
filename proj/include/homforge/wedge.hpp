#ifndef HOMFORGE_WEDGE_HPP
#define HOMFORGE_WEDGE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homforge/bar.hpp"
#include "homforge/group.hpp"
#include "homforge/integer.hpp"

namespace homforge {

// Free abelian group on symbols e(u, s): formal unit u sitting at diagonal
// slot s of a torus with a fixed slot count. Basis order is unit-major: all
// slots of the first declared unit, then the second, and so on. Slots are
// 1-based to match the diagonal positions they stand for.
class UnitLattice {
 public:
  UnitLattice(std::vector<std::string> unit_names, int slots);

  int slots() const { return slots_; }
  int unit_count() const { return static_cast<int>(names_.size()); }
  int rank() const { return unit_count() * slots_; }
  const std::vector<std::string>& unit_names() const { return names_; }

  int unit_index(const std::string& name) const;  // throws on unknown names
  int basis_index(int unit, int slot) const;
  int basis_index(const std::string& unit, int slot) const;
  int basis_unit(int index) const;
  int basis_slot(int index) const;
  std::string basis_name(int index) const;  // "e(a,2)"

  bool operator==(const UnitLattice&) const = default;

 private:
  std::vector<std::string> names_;
  int slots_;
};

// Lattice element as dense exponents over the basis.
struct LatticeVector {
  UnitLattice lattice;
  std::vector<long> coeffs;

  bool is_zero() const;
  std::string to_string() const;
};

LatticeVector zero_vector(const UnitLattice& l);
LatticeVector basis_vector(const UnitLattice& l, const std::string& unit,
                           int slot);
LatticeVector operator+(LatticeVector a, const LatticeVector& b);
LatticeVector operator-(LatticeVector a, const LatticeVector& b);
LatticeVector operator*(long k, LatticeVector a);

// Multiplicative word in the declared unit names: "1", or a concatenation
// of names each with an optional ^exponent, e.g. "a", "c^-1", "ab^2".
// Longest declared name wins when names share a prefix. Returns the
// exponent of every unit.
std::vector<long> parse_unit_word(const UnitLattice& l,
                                  const std::string& word);

// diag(w_1, ..., w_slots): every slot word contributes its exponents at
// that slot, so diag(c, c^-1) reads as e(c,1) - e(c,2) and diag(ab, b) as
// e(a,1) + e(b,1) + e(b,2).
LatticeVector diag_vector(const UnitLattice& l,
                          const std::vector<std::string>& slot_words);

// Integer combination of strictly increasing wedge monomials over the
// lattice basis, degree 2 or 3. Monomials normalize on insertion: repeated
// indices vanish, out-of-order indices sort with the permutation sign.
class WedgeClass {
 public:
  WedgeClass(UnitLattice lattice, int degree);

  const UnitLattice& lattice() const { return lattice_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_monomial(std::vector<int> indices, const Int& coeff);
  // signed coefficient after normalizing the given index order
  Int coeff(std::vector<int> indices) const;

  WedgeClass& operator+=(const WedgeClass& o);
  WedgeClass& operator-=(const WedgeClass& o);
  WedgeClass& operator*=(const Int& k);
  friend WedgeClass operator+(WedgeClass a, const WedgeClass& b) {
    return a += b;
  }
  friend WedgeClass operator-(WedgeClass a, const WedgeClass& b) {
    return a -= b;
  }
  friend WedgeClass operator*(const Int& k, WedgeClass a) { return a *= k; }

  // Equal when lattice, degree and terms all agree.
  bool operator==(const WedgeClass& o) const;

  std::string to_string() const;

 private:
  UnitLattice lattice_;
  int degree_;
  std::map<std::vector<int>, Int> terms_;
};

WedgeClass wedge(const LatticeVector& v1, const LatticeVector& v2);
WedgeClass wedge(const LatticeVector& v1, const LatticeVector& v2,
                 const LatticeVector& v3);

// Relabels slot s as perm[s-1] on every leg; perm must be a permutation of
// 1..slots. Monomials re-sort with signs.
WedgeClass apply_slot_permutation(const WedgeClass& w,
                                  const std::vector<int>& perm);

// Equality in the coinvariants of the full slot-permutation action: decides
// whether a - b lies in the sublattice spanned by m - sigma(m) over the
// involved monomial orbits. Exact integer membership, so "true" is a proof;
// "false" only says this calculus cannot identify the two classes.
bool coinvariant_equal(const WedgeClass& a, const WedgeClass& b);

// Named classes built from diagonal words. Arguments are unit words, so
// specializations like b = a or c = 1 are spelled directly. The first three
// need a two-slot lattice, psi_class a three-slot one.
//
//   l_class     diag(a,1)   ^ diag(1,b)   ^ diag(c,c^-1)
//   iota_class  diag(a,1)   ^ diag(b,b^-1)                (degree 2)
//   phi_class   diag(a,a)   ^ diag(b,1)   ^ diag(c,c^-1)
//   psi_class   diag(a,1,1) ^ diag(1,b,1) ^ diag(1,c,c^-1)
WedgeClass l_class(const UnitLattice& l, const std::string& a,
                   const std::string& b, const std::string& c);
WedgeClass iota_class(const UnitLattice& l, const std::string& a,
                      const std::string& b);
WedgeClass phi_class(const UnitLattice& l, const std::string& a,
                     const std::string& b, const std::string& c);
WedgeClass psi_class(const UnitLattice& l, const std::string& a,
                     const std::string& b, const std::string& c);

// Slot-preserving map into a lattice with the same unit names and at least
// as many slots.
WedgeClass embed(const WedgeClass& w, const UnitLattice& target);

// Applies the lattice map e(u, s) -> (word for u, same slot s) through
// every monomial. Units missing from the map keep their own name; every
// image word must parse in the target lattice, which needs the same slot
// count.
WedgeClass substitute(const WedgeClass& w,
                      const std::map<std::string, std::string>& words,
                      const UnitLattice& target);

struct WedgeIdentityReport {
  std::string name;
  WedgeClass combination;  // should die in the coinvariants
  bool holds = false;

  std::string to_string() const;
};

// phi(a,b,c) + phi(b,a,c) + 2*l(a,b,c) vanishes in two-slot coinvariants.
WedgeIdentityReport verify_gl2_kernel_identity();
// embed(l(a,b,c)) + psi(a,b,c) + psi(b,a,c) vanishes in three-slot ones.
WedgeIdentityReport verify_gl3_embedding_identity();

// Realizes a wedge class as a chain over a matrix group: each unit becomes
// the field scalar scalar_of_unit[u], e(u, s) becomes the diagonal matrix
// with that scalar at slot s and ones elsewhere, and each monomial becomes
// the alternating symbol of its commuting diagonals. The result references
// ambient.group, which must outlive it. Throws when a needed unit has no
// scalar, a scalar is not invertible, a diagonal is missing from the
// ambient group, or the slot counts disagree.
BarChain compile_to_bar(const WedgeClass& w,
                        const std::map<std::string, int>& scalar_of_unit,
                        const MatrixGroup& ambient);

// Constructive form of the coinvariance bridge: when a and b are equal in
// the coinvariants, expresses their difference over the monomial relations
// and routes every relation through the conjugation homotopy of its slot
// permutation, yielding h with
//     boundary(h) == compile_to_bar(a) - compile_to_bar(b)
// exactly. Returns nullopt when the calculus cannot equate a and b. The
// ambient group must contain the permutation matrices of the slots it
// touches. The result references ambient.group.
std::optional<BarChain> coinvariant_boundary_witness(
    const WedgeClass& a, const WedgeClass& b,
    const std::map<std::string, int>& scalar_of_unit,
    const MatrixGroup& ambient);

}  // namespace homforge

#endif
