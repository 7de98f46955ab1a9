#ifndef HOMFORGE_INTEGER_HPP
#define HOMFORGE_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homforge {

// All exact arithmetic runs on GMP integers/rationals. Desk-scale inputs keep
// values small most of the time, but normal-form pivoting can blow entries up
// transiently, so fixed-width integers are not an option in the kernels.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a,b) together with x, y such that a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Quotient of an exact division; throws if the division leaves a remainder.
inline Int exact_div(const Int& a, const Int& d) {
  if (!divides(d, a)) throw std::domain_error("exact_div: not divisible");
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline int64_t to_int64(const Int& a) {
  if (!a.fits_slong_p())
    throw std::overflow_error("integer does not fit in 64 bits: " +
                              a.get_str());
  return static_cast<int64_t>(a.get_si());
}

}  // namespace homforge

#endif
