#include "homforge/milnor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "homforge/field.hpp"
#include "homforge/snf.hpp"

namespace homforge {

namespace {

long mod_pos(long v, long m) { return ((v % m) + m) % m; }

// first invariant factor of the one-row presentation [m | vals], i.e.
// gcd(m, vals), but read off a smith form so the subgroup bookkeeping in
// the callers all runs through the same machinery
long row_invariant(long m, const std::vector<long>& vals) {
  SparseIntMatrix rel(1, 1 + static_cast<int>(vals.size()));
  rel.set(0, 0, Int(m));
  for (size_t i = 0; i < vals.size(); ++i)
    rel.set(0, 1 + static_cast<int>(i), Int(vals[i]));
  auto factors = snf(rel, {.want_transforms = false}).invariant_factors();
  return factors.empty() ? 0 : to_int64(factors[0]);
}

AbelianInvariants one_row_cokernel(long m, const std::vector<long>& vals) {
  SparseIntMatrix rel(1, 1 + static_cast<int>(vals.size()));
  rel.set(0, 0, Int(m));
  for (size_t i = 0; i < vals.size(); ++i)
    rel.set(0, 1 + static_cast<int>(i), Int(vals[i]));
  return cokernel_invariants(rel);
}

int check_unit(int q, int a, const std::vector<int>& dlog) {
  if (a <= 0 || a >= q)
    throw std::invalid_argument("not a unit of F" + std::to_string(q) + ": " +
                                std::to_string(a));
  return dlog[a];
}

// dlog products of the degree two Steinberg generators a (x) (1-a)
std::vector<long> steinberg_pairs(const GaloisField& f, const UnitGroup& u) {
  std::set<long> vals;
  long n = f.q() - 1;
  for (int a = 2; a < f.q(); ++a) {
    int b = f.sub(1, a);  // nonzero because a != 1
    vals.insert(mod_pos(static_cast<long>(u.dlog[a]) * u.dlog[b], n));
  }
  return {vals.begin(), vals.end()};
}

long model_modulus(const AbelianInvariants& inv) {
  return inv.is_trivial() ? 1 : to_int64(inv.order());
}

std::string join_values(const std::vector<long>& vals) {
  std::ostringstream os;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ",";
    os << vals[i];
  }
  return os.str();
}

}  // namespace

long K2Model::reduce(int a, int b) const {
  long da = check_unit(q, a, dlog), db = check_unit(q, b, dlog);
  return mod_pos(da * db, modulus);
}

std::string K2Model::to_string() const {
  std::ostringstream os;
  os << "k2(F" << q << "): Z/" << n << " mod {" << join_values(relation_values)
     << "} = " << invariants.to_string();
  return os.str();
}

K2Model k2_model(int q) {
  const GaloisField& f = GaloisField::get(q);
  UnitGroup u = units_of_field(q);
  K2Model m;
  m.q = q;
  m.n = q - 1;
  m.dlog = u.dlog;
  m.relation_values = steinberg_pairs(f, u);
  m.invariants = one_row_cokernel(m.n, m.relation_values);
  m.modulus = model_modulus(m.invariants);
  return m;
}

long K3Model::reduce(int a, int b, int c) const {
  long da = check_unit(q, a, dlog), db = check_unit(q, b, dlog),
       dc = check_unit(q, c, dlog);
  return mod_pos(da * db * dc, modulus);
}

std::string K3Model::to_string() const {
  std::ostringstream os;
  os << "k3(F" << q << "): Z/" << n << " mod {" << join_values(relation_values)
     << "} = " << invariants.to_string();
  return os.str();
}

K3Model k3_model(int q) {
  const GaloisField& f = GaloisField::get(q);
  UnitGroup u = units_of_field(q);
  K3Model m;
  m.q = q;
  m.n = q - 1;
  m.dlog = u.dlog;
  // a (x) (1-a) (x) c and c (x) a (x) (1-a); in the commutative normal
  // form both adjacent positions contribute the same dlog products
  std::set<long> vals;
  for (long s : steinberg_pairs(f, u))
    for (int c = 1; c < q; ++c) vals.insert(mod_pos(s * u.dlog[c], m.n));
  m.relation_values.assign(vals.begin(), vals.end());
  m.invariants = one_row_cokernel(m.n, m.relation_values);
  m.modulus = model_modulus(m.invariants);
  return m;
}

long DeltaComplex::index(long e1, long e2, long e3) const {
  return (e1 * n + e2) * n + e3;
}

DeltaComplex delta_complex(int q) {
  UnitGroup u = units_of_field(q);
  K2Model k2 = k2_model(q);
  K3Model k3 = k3_model(q);

  DeltaComplex dc;
  dc.q = q;
  dc.n = q - 1;
  dc.gens = dc.n * dc.n * dc.n;
  dc.dlog = u.dlog;
  dc.term1_modulus = dc.n;
  dc.term2_modulus = k2.modulus;
  dc.term3_modulus = k3.modulus;

  int g = static_cast<int>(dc.gens);
  dc.reduce1.resize(g);
  dc.reduce2.resize(g);
  dc.reduce3.resize(g);
  dc.d0 = SparseIntMatrix(g, g);
  dc.d1 = SparseIntMatrix(g, g);
  dc.d2 = SparseIntMatrix::identity(g);

  for (long e1 = 0; e1 < dc.n; ++e1)
    for (long e2 = 0; e2 < dc.n; ++e2)
      for (long e3 = 0; e3 < dc.n; ++e3) {
        int col = static_cast<int>(dc.index(e1, e2, e3));
        long p = e1 * e2 * e3;
        dc.reduce1[col] = mod_pos(p, dc.term1_modulus);
        dc.reduce2[col] = mod_pos(p, dc.term2_modulus);
        dc.reduce3[col] = mod_pos(p, dc.term3_modulus);

        // b(x)c(x){a} + a(x)c(x){b} + a(x)b(x){c}
        std::map<long, long> img0;
        img0[dc.index(e2, e3, e1)] += 1;
        img0[dc.index(e1, e3, e2)] += 1;
        img0[dc.index(e1, e2, e3)] += 1;
        SparseVec v0;
        for (const auto& [r, k] : img0)
          v0.emplace_back(static_cast<int32_t>(r), Int(k));
        dc.d0.set_column(col, std::move(v0));

        // a(x){b,c} + b(x){a,c}
        std::map<long, long> img1;
        img1[dc.index(e1, e2, e3)] += 1;
        img1[dc.index(e2, e1, e3)] += 1;
        SparseVec v1;
        for (const auto& [r, k] : img1)
          v1.emplace_back(static_cast<int32_t>(r), Int(k));
        dc.d1.set_column(col, std::move(v1));
      }
  return dc;
}

namespace {

long triple_product(const DeltaComplex& dc, int a, int b, int c) {
  long da = check_unit(dc.q, a, dc.dlog), db = check_unit(dc.q, b, dc.dlog),
       e = check_unit(dc.q, c, dc.dlog);
  return da * db * e;
}

bool reduces_to_zero(const SparseIntMatrix& m, const std::vector<long>& red,
                     long modulus) {
  for (int c = 0; c < m.cols(); ++c) {
    long acc = 0;
    for (const auto& [r, v] : m.column(c)) acc += to_int64(v) * red[r];
    if (mod_pos(acc, modulus) != 0) return false;
  }
  return true;
}

}  // namespace

long delta0(const DeltaComplex& dc, int a, int b, int c) {
  return mod_pos(3 * triple_product(dc, a, b, c), dc.term1_modulus);
}

long delta1(const DeltaComplex& dc, int a, int b, int c) {
  return mod_pos(2 * triple_product(dc, a, b, c), dc.term2_modulus);
}

long delta2(const DeltaComplex& dc, int a, int b, int c) {
  return mod_pos(triple_product(dc, a, b, c), dc.term3_modulus);
}

std::string ComplexReport::to_string() const {
  std::ostringstream os;
  os << "delta complex over F" << q << ": " << generators
     << " generators, d1*d0 -> 0 " << (d1_after_d0_zero ? "yes" : "NO")
     << ", d2*d1 -> 0 " << (d2_after_d1_zero ? "yes" : "NO");
  return os.str();
}

ComplexReport verify_complex(int q) {
  DeltaComplex dc = delta_complex(q);
  ComplexReport r;
  r.q = q;
  r.generators = dc.gens;
  r.d1_after_d0_zero = reduces_to_zero(dc.d1 * dc.d0, dc.reduce2,
                                       dc.term2_modulus);
  r.d2_after_d1_zero = reduces_to_zero(dc.d2 * dc.d1, dc.reduce3,
                                       dc.term3_modulus);
  r.pass = r.d1_after_d0_zero && r.d2_after_d1_zero;
  return r;
}

std::string ExactnessReport::to_string() const {
  std::ostringstream os;
  os << "exactness at U(x)K2 over F" << q << ": carrier order "
     << carrier_order << (carrier_trivial ? " (trivial)" : "")
     << ", ker(d2) order " << kernel_order << ", im(d1) order " << image_order
     << (equal ? ", equal" : ", DIFFERENT");
  return os.str();
}

ExactnessReport exactness_report(int q) {
  K2Model k2 = k2_model(q);
  K3Model k3 = k3_model(q);
  long m2 = k2.modulus, m3 = k3.modulus;
  // the degree three relation values contain the degree two ones (take the
  // extra slot at the generator), so the target modulus divides the source
  if (m2 % m3 != 0)
    throw std::logic_error("degree three modulus does not divide degree two");

  ExactnessReport r;
  r.q = q;
  r.k2 = k2.invariants;
  r.carrier_order = m2;
  r.carrier_trivial = (m2 == 1);

  // im(d1): the subgroup of Z/m2 generated by the reduced images 2p over
  // every dlog triple; a one-row smith form yields its index
  long n = q - 1;
  std::set<long> images;
  for (long e1 = 0; e1 < n; ++e1)
    for (long e2 = 0; e2 < n; ++e2)
      for (long e3 = 0; e3 < n; ++e3)
        images.insert(mod_pos(2 * e1 * e2 * e3, m2));
  long image_gen = row_invariant(m2, {images.begin(), images.end()});
  r.image_order = m2 / image_gen;

  // ker(d2): x mod m2 dies in Z/m3 exactly when m3 divides x
  long kernel_gen = row_invariant(m2, {m3});
  r.kernel_order = m2 / kernel_gen;

  // cyclic subgroups of a cyclic group coincide iff their orders do
  r.equal = (r.kernel_order == r.image_order);
  return r;
}

bool two_divisibility_check(int q) {
  K2Model m = k2_model(q);
  std::vector<char> hit(m.modulus, 0);
  for (long x = 0; x < m.modulus; ++x) hit[mod_pos(2 * x, m.modulus)] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

long SyntheticK2::symbol(const std::string& u, const std::string& v) const {
  for (const auto& [x, y, val] : symbols) {
    if (x == u && y == v) return mod_pos(val, modulus);
    if (x == v && y == u) return mod_pos(-val, modulus);
  }
  return 0;
}

std::string KernelElementReport::to_string() const {
  std::ostringstream os;
  if (!accepted) {
    os << "rejected: residue";
    for (const auto& [unit, val] : residue) os << " " << unit << ":" << val;
    os << " (mod " << residue_modulus << ")";
    return os.str();
  }
  os << "accepted: " << (symbolic ? symbolic->terms().size() : 0)
     << " wedge terms";
  if (!assignment.empty()) {
    os << " over";
    for (const auto& [unit, val] : assignment)
      os << " " << unit << "=" << val;
  }
  if (compiled) os << ", compiled " << compiled->term_count() << " cells";
  return os.str();
}

namespace {

constexpr const char* kRoles[3] = {"a", "b", "c"};

KernelElementReport build_accepted(
    const std::vector<std::array<std::string, 3>>& words,
    std::vector<std::pair<std::string, int>> assignment,
    const MatrixGroup* ambient) {
  KernelElementReport rep;
  rep.accepted = true;
  rep.assignment = std::move(assignment);

  std::vector<std::string> names;
  for (const auto& w : words)
    for (const auto& u : w)
      if (u != "1") names.push_back(u);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.empty()) names.push_back("a1");  // lattice of the zero class

  UnitLattice lat(names, 2);
  WedgeClass sym(lat, 3);
  for (const auto& w : words) sym += l_class(lat, w[0], w[1], w[2]);
  rep.symbolic = sym;

  if (ambient) {
    std::map<std::string, int> scal(rep.assignment.begin(),
                                    rep.assignment.end());
    rep.compiled = compile_to_bar(sym, scal, *ambient);
  }
  return rep;
}

}  // namespace

KernelElementReport kernel_element(
    int q, const std::vector<std::array<int, 3>>& triples,
    const MatrixGroup* ambient) {
  if (triples.empty()) throw std::invalid_argument("no triples given");
  if (ambient && ambient->q != q)
    throw std::invalid_argument("ambient group lives over a different field");
  K2Model k2 = k2_model(q);

  long res = 0;
  for (const auto& t : triples) {
    long da = check_unit(q, t[0], k2.dlog), db = check_unit(q, t[1], k2.dlog);
    res += da * k2.reduce(t[1], t[2]) + db * k2.reduce(t[0], t[2]);
  }
  res = mod_pos(res, k2.modulus);

  if (res != 0) {
    KernelElementReport rep;
    rep.residue_modulus = k2.modulus;
    rep.residue = {{"g", res}};  // coordinates at the primitive root
    return rep;
  }

  std::vector<std::array<std::string, 3>> words(triples.size());
  std::vector<std::pair<std::string, int>> assignment;
  for (size_t t = 0; t < triples.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      if (triples[t][i] == 1) {
        words[t][i] = "1";
      } else {
        words[t][i] = kRoles[i] + std::to_string(t + 1);
        assignment.emplace_back(words[t][i], triples[t][i]);
      }
    }

  KernelElementReport rep =
      build_accepted(words, std::move(assignment), ambient);
  rep.residue_modulus = k2.modulus;
  return rep;
}

KernelElementReport kernel_element(
    const SyntheticK2& k2,
    const std::vector<std::array<std::string, 3>>& triples) {
  if (triples.empty()) throw std::invalid_argument("no triples given");
  if (k2.modulus < 1) throw std::invalid_argument("bad carrier modulus");
  if (k2.units.empty()) throw std::invalid_argument("no units declared");

  std::set<std::string> declared(k2.units.begin(), k2.units.end());
  for (const auto& t : triples)
    for (const auto& u : t)
      if (u != "1" && !declared.count(u))
        throw std::invalid_argument("undeclared unit: " + u);

  std::map<std::string, long> res;
  for (const auto& t : triples) {
    if (t[0] != "1") res[t[0]] += k2.symbol(t[1], t[2]);
    if (t[1] != "1") res[t[1]] += k2.symbol(t[0], t[2]);
  }

  KernelElementReport rep;
  rep.residue_modulus = k2.modulus;
  for (const auto& u : k2.units) {
    auto it = res.find(u);
    if (it == res.end()) continue;
    long v = mod_pos(it->second, k2.modulus);
    if (v != 0) rep.residue.emplace_back(u, v);
  }
  if (!rep.residue.empty()) return rep;

  long modulus = rep.residue_modulus;
  rep = build_accepted(triples, {}, nullptr);
  rep.residue_modulus = modulus;
  return rep;
}

}  // namespace homforge
