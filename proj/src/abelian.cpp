#include "homforge/abelian.hpp"

#include <algorithm>

namespace homforge {

Int AbelianInvariants::order() const {
  Int p = 1;
  for (const Int& d : torsion) p *= d;
  return p;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (const Int& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  if (free_rank == 1) {
    if (!s.empty()) s += " + ";
    s += "Z";
  } else if (free_rank > 1) {
    if (!s.empty()) s += " + ";
    s += "Z^" + std::to_string(free_rank);
  }
  return s;
}

AbelianInvariants normalize_cyclic_factors(std::vector<Int> orders,
                                           int free_rank) {
  std::vector<Int> t;
  for (Int& d : orders) {
    if (d < 0) d = -d;
    if (d == 0) {
      ++free_rank;
    } else if (d > 1) {
      t.push_back(d);
    }
  }
  // Repeated gcd/lcm exchanges sort the factors into a divisibility chain.
  // Each exchange preserves the product and strictly shrinks the earlier
  // factor when it fires, so the sweep terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < t.size(); ++i) {
      for (size_t j = i + 1; j < t.size(); ++j) {
        if (!divides(t[i], t[j])) {
          Int g = gcd(t[i], t[j]);
          Int l = t[i] / g * t[j];
          t[i] = g;
          t[j] = l;
          changed = true;
        }
      }
    }
  }
  t.erase(std::remove(t.begin(), t.end(), Int(1)), t.end());
  std::sort(t.begin(), t.end());
  return AbelianInvariants{std::move(t), free_rank};
}

AbelianInvariants direct_sum(const AbelianInvariants& a,
                             const AbelianInvariants& b) {
  std::vector<Int> all = a.torsion;
  all.insert(all.end(), b.torsion.begin(), b.torsion.end());
  return normalize_cyclic_factors(std::move(all), a.free_rank + b.free_rank);
}

AbelianInvariants tensor_product(const AbelianInvariants& a,
                                 const AbelianInvariants& b) {
  std::vector<Int> parts;
  for (const Int& s : a.torsion)
    for (const Int& t : b.torsion) parts.push_back(gcd(s, t));
  // Z^r (x) Z/t and Z/s (x) Z^r' contribute copies of the torsion factors.
  for (int i = 0; i < b.free_rank; ++i)
    parts.insert(parts.end(), a.torsion.begin(), a.torsion.end());
  for (int i = 0; i < a.free_rank; ++i)
    parts.insert(parts.end(), b.torsion.begin(), b.torsion.end());
  return normalize_cyclic_factors(std::move(parts),
                                  a.free_rank * b.free_rank);
}

AbelianInvariants tor_product(const AbelianInvariants& a,
                              const AbelianInvariants& b) {
  std::vector<Int> parts;
  for (const Int& s : a.torsion)
    for (const Int& t : b.torsion) parts.push_back(gcd(s, t));
  return normalize_cyclic_factors(std::move(parts), 0);
}

}  // namespace homforge
