#ifndef HOMFORGE_MILNOR_HPP
#define HOMFORGE_MILNOR_HPP

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "homforge/abelian.hpp"
#include "homforge/bar.hpp"
#include "homforge/group.hpp"
#include "homforge/sparse.hpp"
#include "homforge/wedge.hpp"

namespace homforge {

// Symbol modules of a small finite field in discrete log coordinates.
//
// U = F_q* is cyclic of order n = q-1, so every tensor power of U is again
// cyclic: a(x)b has normal form dlog(a)*dlog(b) mod n. The degree two
// module divides U(x)U by the subgroup generated by a(x)(1-a) over all
// a outside {0,1}; in normal form that subgroup is generated by the
// enumerated products dlog(a)*dlog(1-a), so the quotient is Z/modulus with
// modulus = gcd(n, those products), computed from the smith form of the
// one-row presentation.
struct K2Model {
  int q = 0;
  long n = 0;                         // |F_q*|
  long modulus = 1;                   // carrier is Z/modulus; 1 means trivial
  AbelianInvariants invariants;
  std::vector<long> relation_values;  // distinct sorted dlog products
  std::vector<int> dlog;              // field index -> exponent, dlog[0] = -1

  // {a,b} for canonical field indices; both must be units.
  long reduce(int a, int b) const;
  bool trivial() const { return modulus == 1; }
  std::string to_string() const;
};

K2Model k2_model(int q);

// Degree three: U(x)U(x)U modulo Steinberg relations in adjacent slots
// only, a(x)(1-a)(x)c and c(x)a(x)(1-a). Antisymmetry of the symbol is
// never imposed; whatever antisymmetry holds has to come out of this
// subgroup.
struct K3Model {
  int q = 0;
  long n = 0;
  long modulus = 1;
  AbelianInvariants invariants;
  std::vector<long> relation_values;
  std::vector<int> dlog;

  long reduce(int a, int b, int c) const;
  bool trivial() const { return modulus == 1; }
  std::string to_string() const;
};

K3Model k3_model(int q);

// Four-term sequence
//
//   U(x)U(x)U --d0--> U(x)U(x)K1 --d1--> U(x)K2 --d2--> K3
//
// presented generator by generator: every term is spanned by the (q-1)^3
// dlog triples, and a reduction row collapses a formal triple into the
// cyclic normal form of its term. The maps are the integer matrices
//
//   d0: a(x)b(x)c    ->  b(x)c(x){a} + a(x)c(x){b} + a(x)b(x){c}
//   d1: a(x)b(x){c}  ->  a(x){b,c} + b(x){a,c}
//   d2: a(x){b,c}    ->  {a,b,c}
//
// d2 is the identity on generators; its content sits in the reduction.
struct DeltaComplex {
  int q = 0;
  long n = 0;
  long gens = 0;                 // n^3
  SparseIntMatrix d0, d1, d2;    // gens x gens each
  long term1_modulus = 1;        // U(x)U(x)K1 = Z/n
  long term2_modulus = 1;        // U(x)K2
  long term3_modulus = 1;        // K3
  std::vector<long> reduce1, reduce2, reduce3;  // generator -> normal form
  std::vector<int> dlog;

  // generator number of a dlog exponent triple
  long index(long e1, long e2, long e3) const;
};

DeltaComplex delta_complex(int q);

// Reduced images of a single tensor under each map, in the normal form of
// its target. Arguments are canonical field indices and must be units.
long delta0(const DeltaComplex& dc, int a, int b, int c);
long delta1(const DeltaComplex& dc, int a, int b, int c);
long delta2(const DeltaComplex& dc, int a, int b, int c);

// Composes the generator matrices and reduces every column of d1*d0 in
// U(x)K2 and of d2*d1 in K3. Full matrices, no sampling.
struct ComplexReport {
  int q = 0;
  long generators = 0;
  bool d1_after_d0_zero = false;
  bool d2_after_d1_zero = false;
  bool pass = false;
  std::string to_string() const;
};

ComplexReport verify_complex(int q);

// ker(d2) and im(d1) inside U(x)K2, each a cyclic subgroup pinned down by
// the smith form of a one-row relation matrix. For a finite field the
// carrier itself vanishes and the comparison is vacuous; the report says
// so instead of dressing it up.
struct ExactnessReport {
  int q = 0;
  AbelianInvariants k2;
  long carrier_order = 1;  // |U(x)K2|
  long kernel_order = 1;
  long image_order = 1;
  bool equal = false;
  bool carrier_trivial = false;
  std::string to_string() const;
};

ExactnessReport exactness_report(int q);

// Multiplication by two on the K2 carrier, checked pointwise for
// bijectivity.
bool two_divisibility_check(int q);

// Hand-specified symbol table over formal unit names: a stand-in degree
// two module for exercising the builder's side condition, which no small
// finite field can violate. symbol(u, v) looks the ordered pair up and
// falls back to the negated reverse; absent pairs are zero.
struct SyntheticK2 {
  std::vector<std::string> units;
  long modulus = 1;
  std::vector<std::tuple<std::string, std::string, long>> symbols;

  long symbol(const std::string& u, const std::string& v) const;
};

// Result of a kernel element request. On acceptance, symbolic holds
// sum_t l(a_t, b_t, c_t) over one fresh 2-slot lattice whose units are
// a1,b1,c1,a2,... in triple order; entries equal to the field identity
// enter as the trivial word and drop out of the class. On rejection the
// nonzero residue of the side condition is listed instead.
struct KernelElementReport {
  bool accepted = false;
  long residue_modulus = 1;
  std::vector<std::pair<std::string, long>> residue;    // nonzero components
  std::optional<WedgeClass> symbolic;
  std::vector<std::pair<std::string, int>> assignment;  // unit -> field index
  std::optional<BarChain> compiled;
  std::string to_string() const;
};

// Builds sum_t l(a_t, b_t, c_t) from field unit triples, provided the side
// condition sum_t a_t(x){b_t,c_t} + b_t(x){a_t,c_t} = 0 holds in U(x)K2.
// When ambient is given the class is also compiled there; the group must
// outlive the report.
KernelElementReport kernel_element(
    int q, const std::vector<std::array<int, 3>>& triples,
    const MatrixGroup* ambient = nullptr);

// Same side condition against a supplied symbol table; triples name formal
// units. No compilation on this path.
KernelElementReport kernel_element(
    const SyntheticK2& k2,
    const std::vector<std::array<std::string, 3>>& triples);

}  // namespace homforge

#endif
