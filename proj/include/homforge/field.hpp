#ifndef HOMFORGE_FIELD_HPP
#define HOMFORGE_FIELD_HPP

#include <string>
#include <vector>

namespace homforge {

// Arithmetic in F_q for q in {2,3,4,5,7,8,9,11,13,16,25,27}.
//
// Elements are canonical indices in [0, q): write the element as a
// polynomial over F_p modulo the fixed modulus below, then read the
// coefficient vector as a base-p numeral (coefficient of x^i is digit i).
// Prime fields reduce to plain residues. The moduli are pinned so indices,
// and everything derived from them, never drift between runs:
//
//   F4 = F2[x]/(x^2+x+1)    F8 = F2[x]/(x^3+x+1)    F16 = F2[x]/(x^4+x+1)
//   F9 = F3[x]/(x^2+1)      F25 = F5[x]/(x^2+2)     F27 = F3[x]/(x^3+2x+1)
class GaloisField {
 public:
  // Shared registry instance; throws std::invalid_argument for other q.
  static const GaloisField& get(int q);
  static const std::vector<int>& supported();
  static bool is_supported(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int degree() const { return degree_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const;  // throws on 0
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long e) const;

  // n mod p embedded via the prime subfield
  int from_int(long n) const;

  // Smallest canonical index generating the unit group.
  int primitive_root() const { return primitive_root_; }

  // "0", "1", "x+1", "2x^2+x", ... (plain residue for prime fields)
  std::string to_string(int a) const;

 private:
  GaloisField(int p, int degree, std::vector<int> modulus);

  int q_, p_, degree_;
  std::vector<int> modulus_;  // ascending-degree coefficients, monic
  std::vector<int> add_, mul_, neg_, inv_;
  int primitive_root_;
};

}  // namespace homforge

#endif
