#ifndef HOMFORGE_ABELIAN_HPP
#define HOMFORGE_ABELIAN_HPP

#include <string>
#include <vector>

#include "homforge/integer.hpp"

namespace homforge {

// Isomorphism type of a finitely generated abelian group, kept in invariant
// factor form: torsion d_1 | d_2 | ... | d_k (all > 1) plus a free rank.
struct AbelianInvariants {
  std::vector<Int> torsion;
  int free_rank = 0;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }

  // Order of the torsion part; only meaningful when is_finite().
  Int order() const;

  // e.g. "0", "Z", "Z/2 + Z/4", "Z/6 + Z^2"
  std::string to_string() const;

  bool operator==(const AbelianInvariants&) const = default;
};

// Builds the invariant factor form of  Z^free_rank + sum_i Z/orders[i].
// Factors equal to 1 are dropped, 0 counts as a free summand. Works by
// gcd/lcm exchanges, so factor sizes never need to be factored into primes.
AbelianInvariants normalize_cyclic_factors(std::vector<Int> orders,
                                           int free_rank = 0);

AbelianInvariants direct_sum(const AbelianInvariants& a,
                             const AbelianInvariants& b);

// a (x) b.  Uses Z/m (x) Z/n = Z/gcd(m,n) and Z (x) M = M summand-wise.
AbelianInvariants tensor_product(const AbelianInvariants& a,
                                 const AbelianInvariants& b);

// Tor_1(a, b) = sum of Z/gcd over pairs of torsion factors; free parts die.
AbelianInvariants tor_product(const AbelianInvariants& a,
                              const AbelianInvariants& b);

}  // namespace homforge

#endif
