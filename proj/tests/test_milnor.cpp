#include <array>
#include <random>
#include <vector>

#include "doctest.h"
#include "homforge/field.hpp"
#include "homforge/homology.hpp"
#include "homforge/milnor.hpp"

using namespace homforge;

namespace {

const std::vector<int> kFields = {2, 3, 4, 5, 7, 8, 9};

std::vector<long> vals(std::initializer_list<long> v) { return v; }

}  // namespace

TEST_SUITE("milnor") {

TEST_CASE("degree two symbols vanish for small fields") {
  for (int q : kFields) {
    CAPTURE(q);
    K2Model m = k2_model(q);
    CHECK(m.n == q - 1);
    CHECK(m.trivial());
    CHECK(m.invariants.is_trivial());
    CHECK(m.modulus == 1);
  }

  // frozen relation values, independent of the primitive root choice
  CHECK(k2_model(2).relation_values.empty());
  CHECK(k2_model(3).relation_values == vals({1}));
  CHECK(k2_model(4).relation_values == vals({2}));
  CHECK(k2_model(5).relation_values == vals({1, 2}));

  // the q = 4 relation generates a subgroup of index 1 in Z/3: the lone
  // product 2 is coprime to 3, so the single Steinberg pair already spans
  K2Model f4 = k2_model(4);
  CHECK(f4.n == 3);
  CHECK(f4.reduce(2, 3) == 0);  // everything dies in the quotient
  CHECK_THROWS_AS(f4.reduce(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(f4.reduce(2, 4), std::invalid_argument);
}

TEST_CASE("degree three symbols vanish and scale the pair relations") {
  for (int q : kFields) {
    CAPTURE(q);
    K3Model m = k3_model(q);
    CHECK(m.trivial());
    CHECK(m.invariants.is_trivial());
  }

  // adjacent relations are the pair products scaled by every third dlog
  K3Model f4 = k3_model(4);
  CHECK(f4.relation_values == vals({0, 1, 2}));
  CHECK(f4.reduce(2, 3, 2) == 0);
  CHECK_THROWS_AS(f4.reduce(2, 3, 0), std::invalid_argument);
}

TEST_CASE("generator matrices compose to zero after reduction") {
  for (int q : kFields) {
    CAPTURE(q);
    ComplexReport r = verify_complex(q);
    long n = q - 1;
    CHECK(r.generators == n * n * n);
    CHECK(r.d1_after_d0_zero);
    CHECK(r.d2_after_d1_zero);
    CHECK(r.pass);
  }

  DeltaComplex dc = delta_complex(5);
  CHECK(dc.d2 == SparseIntMatrix::identity(static_cast<int>(dc.gens)));

  // repeated tensor slots merge into doubled and tripled entries
  int c11 = static_cast<int>(dc.index(1, 1, 2));
  CHECK(dc.d1.get(c11, c11) == 2);
  int c111 = static_cast<int>(dc.index(1, 1, 1));
  CHECK(dc.d0.get(c111, c111) == 3);
}

TEST_CASE("tensor maps are additive in every slot") {
  std::mt19937 rng(11);
  for (int q : {5, 9}) {
    CAPTURE(q);
    const GaloisField& f = GaloisField::get(q);
    DeltaComplex dc = delta_complex(q);
    std::uniform_int_distribution<int> unit(1, q - 1);
    for (int trial = 0; trial < 40; ++trial) {
      int x = unit(rng), y = unit(rng), z = unit(rng), w = unit(rng);
      CAPTURE(trial);
      // the first map lands in Z/(q-1), where additivity has real content
      CHECK(delta0(dc, f.mul(x, w), y, z) ==
            (delta0(dc, x, y, z) + delta0(dc, w, y, z)) % dc.term1_modulus);
      CHECK(delta0(dc, x, f.mul(y, w), z) ==
            (delta0(dc, x, y, z) + delta0(dc, x, w, z)) % dc.term1_modulus);
      CHECK(delta0(dc, x, y, f.mul(z, w)) ==
            (delta0(dc, x, y, z) + delta0(dc, x, y, w)) % dc.term1_modulus);
      CHECK(delta1(dc, f.mul(x, w), y, z) ==
            (delta1(dc, x, y, z) + delta1(dc, w, y, z)) % dc.term2_modulus);
      CHECK(delta2(dc, x, f.mul(y, w), z) ==
            (delta2(dc, x, y, z) + delta2(dc, x, w, z)) % dc.term3_modulus);
    }
  }

  // a worked value: 3 * dlog(g) * dlog(g^2) * dlog(g) = 6 = 2 mod 4
  UnitGroup u = units_of_field(5);
  DeltaComplex dc5 = delta_complex(5);
  CHECK(delta0(dc5, u.element[1], u.element[2], u.element[1]) == 2);
  CHECK_THROWS_AS(delta0(dc5, 0, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(delta1(dc5, 2, 5, 3), std::invalid_argument);
}

TEST_CASE("symbol antisymmetry falls out of the relations") {
  // never imposed on the degree three model, so it must reduce to zero
  for (int q : kFields) {
    CAPTURE(q);
    K3Model m = k3_model(q);
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        for (int c = 1; c < q; ++c)
          CHECK((m.reduce(a, b, c) + m.reduce(b, a, c)) % m.modulus == 0);
  }
}

TEST_CASE("exactness reports are honest about trivial carriers") {
  for (int q : kFields) {
    CAPTURE(q);
    ExactnessReport r = exactness_report(q);
    CHECK(r.carrier_order == 1);
    CHECK(r.carrier_trivial);
    CHECK(r.kernel_order == 1);
    CHECK(r.image_order == 1);
    CHECK(r.equal);
    CHECK(r.to_string().find("trivial") != std::string::npos);
  }
}

TEST_CASE("doubling is invertible on the degree two carrier") {
  for (int q : kFields) {
    CAPTURE(q);
    CHECK(two_divisibility_check(q));
  }
}

TEST_CASE("kernel elements from field triples") {
  KernelElementReport rep = kernel_element(5, {{{2, 3, 2}}});
  CHECK(rep.accepted);
  CHECK(rep.residue.empty());
  REQUIRE(rep.symbolic.has_value());
  CHECK(rep.symbolic->terms().size() == 2);
  const std::vector<std::pair<std::string, int>> want_assignment = {
      {"a1", 2}, {"b1", 3}, {"c1", 2}};
  CHECK(rep.assignment == want_assignment);
  CHECK(!rep.compiled.has_value());

  // identity entries drop their legs: diag(1,1) contributes nothing
  KernelElementReport deg = kernel_element(5, {{{2, 3, 1}}});
  CHECK(deg.accepted);
  REQUIRE(deg.symbolic.has_value());
  CHECK(deg.symbolic->is_zero());
  CHECK(kernel_element(5, {{{1, 1, 1}}}).symbolic->is_zero());

  // two triples stack into one class over distinct unit names
  KernelElementReport two = kernel_element(5, {{{2, 3, 2}, {3, 4, 2}}});
  CHECK(two.accepted);
  CHECK(two.symbolic->terms().size() == 4);
  CHECK(two.assignment.size() == 6);

  CHECK_THROWS_AS(kernel_element(5, {}), std::invalid_argument);
  CHECK_THROWS_AS(kernel_element(5, {{{0, 2, 3}}}), std::invalid_argument);
  CHECK_THROWS_AS(kernel_element(5, {{{2, 3, 5}}}), std::invalid_argument);
}

TEST_CASE("kernel elements compile into the swap torus") {
  MatrixGroup amb = torus_swap_group(5);
  CHECK(amb.group.size() == 32);

  KernelElementReport rep = kernel_element(5, {{{2, 3, 2}}}, &amb);
  CHECK(rep.accepted);
  REQUIRE(rep.compiled.has_value());
  CHECK(!rep.compiled->is_zero());
  CHECK(rep.compiled->degree() == 3);
  CHECK(is_cycle(*rep.compiled));

  MatrixGroup amb4 = torus_swap_group(4);
  CHECK_THROWS_AS(kernel_element(5, {{{2, 3, 2}}}, &amb4),
                  std::invalid_argument);
}

TEST_CASE("kernel elements respect a synthetic obstruction") {
  SyntheticK2 table;
  table.units = {"a", "b", "c"};
  table.modulus = 2;
  table.symbols = {{"b", "c", 1}};

  CHECK(table.symbol("b", "c") == 1);
  CHECK(table.symbol("c", "b") == 1);  // -1 mod 2
  CHECK(table.symbol("a", "b") == 0);

  // a (x) {b,c} survives, so the side condition fails with residue at a
  KernelElementReport bad = kernel_element(table, {{{"a", "b", "c"}}});
  CHECK(!bad.accepted);
  CHECK(bad.residue_modulus == 2);
  const std::vector<std::pair<std::string, long>> want_residue = {{"a", 1}};
  CHECK(bad.residue == want_residue);
  CHECK(!bad.symbolic.has_value());
  CHECK(bad.to_string().find("rejected") != std::string::npos);

  // the reversed pair cancels the obstruction mod 2 and the sum passes
  KernelElementReport ok =
      kernel_element(table, {{{"a", "b", "c"}, {"a", "c", "b"}}});
  CHECK(ok.accepted);
  REQUIRE(ok.symbolic.has_value());
  CHECK(!ok.symbolic->is_zero());

  SyntheticK2 zero = table;
  zero.symbols = {};
  CHECK(kernel_element(zero, {{{"a", "b", "c"}}}).accepted);

  CHECK_THROWS_AS(kernel_element(table, {{{"a", "b", "d"}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernel_element(table, {}), std::invalid_argument);
  SyntheticK2 broken = table;
  broken.modulus = 0;
  CHECK_THROWS_AS(kernel_element(broken, {{{"a", "b", "c"}}}),
                  std::invalid_argument);
}

TEST_CASE("accepted elements obey the compiled doubling identity") {
  MatrixGroup amb = torus_swap_group(5);
  KernelElementReport rep = kernel_element(5, {{{2, 3, 2}}}, &amb);
  REQUIRE(rep.symbolic.has_value());

  const UnitLattice& lat = rep.symbolic->lattice();
  WedgeClass sum_phi = phi_class(lat, "a1", "b1", "c1") +
                       phi_class(lat, "b1", "a1", "c1");
  WedgeClass doubled = Int(2) * *rep.symbolic;
  WedgeClass negated = Int(-1) * sum_phi;

  CHECK(coinvariant_equal(doubled, negated));

  std::map<std::string, int> scal(rep.assignment.begin(),
                                  rep.assignment.end());
  auto h = coinvariant_boundary_witness(doubled, negated, scal, amb);
  REQUIRE(h.has_value());
  CHECK(boundary(*h) == compile_to_bar(doubled, scal, amb) -
                            compile_to_bar(negated, scal, amb));
}

}  // TEST_SUITE
