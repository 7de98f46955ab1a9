#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "homforge/field.hpp"
#include "homforge/group.hpp"

using namespace homforge;

namespace {

int find_elem(const MatrixGroup& mg, const FqMatrix& m) {
  for (size_t i = 0; i < mg.elements.size(); ++i)
    if (mg.elements[i] == m) return static_cast<int>(i);
  return -1;
}

long gl2_order(long q) { return (q * q - 1) * (q * q - q); }

}  // namespace

TEST_SUITE_BEGIN("groups");

TEST_CASE("field axioms hold exhaustively for every supported size") {
  for (int q : GaloisField::supported()) {
    const GaloisField& F = GaloisField::get(q);
    CHECK(F.q() == q);
    for (int a = 0; a < q; ++a) {
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
    // freshman's dream detects a wrong modulus immediately
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        CHECK(F.pow(F.add(a, b), F.p()) ==
              F.add(F.pow(a, F.p()), F.pow(b, F.p())));
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
  }
  CHECK_THROWS_AS(GaloisField::get(6), std::invalid_argument);
  CHECK_THROWS_AS(GaloisField::get(32), std::invalid_argument);
  CHECK_FALSE(GaloisField::is_supported(10));
  CHECK(GaloisField::is_supported(27));
}

TEST_CASE("small field arithmetic values") {
  const GaloisField& F5 = GaloisField::get(5);
  CHECK(F5.add(2, 4) == 1);
  CHECK(F5.mul(2, 4) == 3);
  CHECK(F5.inv(2) == 3);
  CHECK(F5.primitive_root() == 2);
  CHECK(F5.pow(2, 1) == 2);
  CHECK(F5.pow(2, 2) == 4);
  CHECK(F5.pow(2, 3) == 3);
  CHECK(F5.pow(2, 4) == 1);
  CHECK(F5.from_int(-3) == 2);

  // F9 = F3[x]/(x^2+1): index 3 is x, and x^2 = -1 = 2
  const GaloisField& F9 = GaloisField::get(9);
  CHECK(F9.mul(3, 3) == 2);
  CHECK(F9.to_string(3) == "x");
  CHECK(F9.to_string(5) == "x+2");
  // x has order 4, so the smallest generator is x+1 (index 4), order 8
  CHECK(F9.primitive_root() == 4);
  int x = F9.primitive_root();
  int ord = 1, y = x;
  while (y != 1) {
    y = F9.mul(y, x);
    ++ord;
  }
  CHECK(ord == 8);

  // F4 = F2[x]/(x^2+x+1): x * (x+1) = x^2+x = 1
  const GaloisField& F4 = GaloisField::get(4);
  CHECK(F4.mul(2, 3) == 1);
}

TEST_CASE("primitive roots generate the full unit group") {
  for (int q : GaloisField::supported()) {
    const GaloisField& F = GaloisField::get(q);
    int r = F.primitive_root();
    if (q == 2) {
      CHECK(r == 1);
      continue;
    }
    std::vector<bool> seen(q, false);
    int x = 1;
    for (int k = 0; k < q - 1; ++k) {
      CHECK_FALSE(seen[x]);
      seen[x] = true;
      x = F.mul(x, r);
    }
    CHECK(x == 1);
  }
}

TEST_CASE("unit groups carry exact discrete logarithms") {
  auto u5 = units_of_field(5);
  CHECK(u5.group.size() == 4);
  CHECK(u5.primitive_root == 2);
  CHECK(u5.dlog[1] == 0);
  CHECK(u5.dlog[2] == 1);
  CHECK(u5.dlog[4] == 2);
  CHECK(u5.dlog[3] == 3);

  CHECK(units_of_field(2).group.size() == 1);
  CHECK(units_of_field(9).group.size() == 8);

  for (int q : {4, 5, 9, 13, 27}) {
    const GaloisField& F = GaloisField::get(q);
    auto u = units_of_field(q);
    for (int a = 1; a < q; ++a) {
      CHECK(u.element[u.dlog[a]] == a);
      for (int b = 1; b < q; ++b)
        CHECK(u.dlog[F.mul(a, b)] == (u.dlog[a] + u.dlog[b]) % (q - 1));
    }
  }
}

TEST_CASE("abelian groups index by lexicographic exponent vectors") {
  CHECK(FiniteAbelianGroup::cyclic(1).size() == 1);
  auto c2 = FiniteAbelianGroup::cyclic(2);
  auto c4 = FiniteAbelianGroup::cyclic(4);
  CHECK(FiniteAbelianGroup::product(c2, c2).size() == 4);

  auto g = FiniteAbelianGroup::product(c2, c4);
  CHECK(g.orders() == std::vector<long>{2, 4});
  CHECK(g.size() == 8);
  CHECK(g.index_of({1, 0}) == 4);
  CHECK(g.exponents(5) == std::vector<long>{1, 1});
  CHECK(g.label(5) == "(1,1)");
  CHECK(g.mul(g.index_of({1, 3}), g.index_of({1, 2})) == g.index_of({0, 1}));
  CHECK(g.inv(g.index_of({1, 3})) == g.index_of({1, 1}));
  CHECK(g.index_of({-1, 5}) == g.index_of({1, 1}));
  CHECK(g.id() == 0);

  CHECK_THROWS_AS(FiniteAbelianGroup::cyclic(0), std::invalid_argument);
}

TEST_CASE("cayley tables of abelian groups keep their structure") {
  auto g = FiniteAbelianGroup::product(FiniteAbelianGroup::cyclic(2),
                                       FiniteAbelianGroup::cyclic(4))
               .cayley();
  CHECK(g.size() == 8);
  CHECK(g.is_abelian());
  CHECK(g.id() == 0);
  REQUIRE(g.abelian_orders().has_value());
  CHECK(*g.abelian_orders() == std::vector<long>{2, 4});
  CHECK(g.label(0) == "(0,0)");
  CHECK(g.order_of(g.size() - 1) == 4);  // (1,3)
}

TEST_CASE("bad multiplication tables are rejected") {
  // no identity
  CHECK_THROWS_AS(FiniteGroup({0, 0, 0, 0}), std::invalid_argument);
  // not associative but has identity and inverses: built by corrupting Z/3
  std::vector<int> t{0, 1, 2, 1, 2, 0, 2, 0, 1};
  t[1 * 3 + 1] = 0;  // now 1*1 = 0 = 1*2, breaks associativity/inverses
  CHECK_THROWS_AS(FiniteGroup{t}, std::invalid_argument);
  // wrong shape
  CHECK_THROWS_AS(FiniteGroup({0, 1, 2}), std::invalid_argument);
}

TEST_CASE("matrix closure of the trivial generator set") {
  auto mg = from_matrix_generators(2, {FqMatrix::identity(2, 2)});
  CHECK(mg.group.size() == 1);
  CHECK(mg.group.id() == 0);
}

TEST_CASE("the two standard generators close to the full GL2(F2)") {
  FqMatrix shear{2, 2, {1, 1, 0, 1}};
  FqMatrix swap = FqMatrix::permutation(2, {1, 0});
  auto mg = from_matrix_generators(2, {shear, swap});
  CHECK(mg.group.size() == 6);
  CHECK(mg.group.size() == gl2_order(2));
  CHECK_FALSE(mg.group.is_abelian());
  CHECK(mg.group.order_of(find_elem(mg, shear)) == 2);
  CHECK(mg.group.order_of(find_elem(mg, shear * swap)) == 3);

  // the label map is a faithful matrix representation
  for (int a = 0; a < mg.group.size(); ++a)
    for (int b = 0; b < mg.group.size(); ++b) {
      FqMatrix prod = mg.elements[a] * mg.elements[b];
      CHECK(find_elem(mg, prod) == mg.group.mul(a, b));
    }

  // deterministic reconstruction
  auto mg2 = from_matrix_generators(2, {shear, swap});
  CHECK(mg2.group.size() == mg.group.size());
  for (int i = 0; i < mg.group.size(); ++i)
    CHECK(mg.group.label(i) == mg2.group.label(i));
}

TEST_CASE("torus plus swap inside GL2(F5) has order 32") {
  auto mg = torus_swap_group(5);
  CHECK(mg.group.size() == 32);
  CHECK_FALSE(mg.group.is_abelian());
  CHECK(find_elem(mg, FqMatrix::diagonal(5, {2, 1})) >= 0);
  CHECK(find_elem(mg, FqMatrix::permutation(5, {1, 0})) >= 0);
  CHECK(gl2_order(5) % mg.group.size() == 0);
  for (int a = 0; a < mg.group.size(); ++a)
    for (int b = 0; b < mg.group.size(); ++b) {
      FqMatrix prod = mg.elements[a] * mg.elements[b];
      CHECK(find_elem(mg, prod) == mg.group.mul(a, b));
    }
}

TEST_CASE("closure failures are reported") {
  FqMatrix shear{2, 2, {1, 1, 0, 1}};
  FqMatrix swap = FqMatrix::permutation(2, {1, 0});
  CHECK_THROWS_AS(from_matrix_generators(2, {shear, swap}, 4),
                  std::length_error);
  FqMatrix singular{2, 2, {1, 1, 1, 1}};
  CHECK_THROWS_AS(from_matrix_generators(2, {singular}),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_matrix_generators(2, {}), std::invalid_argument);
}

TEST_CASE("homomorphisms verify and extend correctly") {
  auto c2 = FiniteAbelianGroup::cyclic(2).cayley();
  auto c4 = FiniteAbelianGroup::cyclic(4).cayley();
  auto v4 = FiniteAbelianGroup::product(FiniteAbelianGroup::cyclic(2),
                                        FiniteAbelianGroup::cyclic(2))
                .cayley();

  // first projection (Z/2)^2 -> Z/2 kills the second factor
  GroupHom p1(v4, c2, {0, 0, 1, 1});
  CHECK(p1(2) == 1);
  CHECK(p1.surjective());
  CHECK_FALSE(p1.injective());

  // identity hom
  GroupHom idh(c4, c4, {0, 1, 2, 3});
  CHECK(idh.injective());
  CHECK(idh.surjective());

  // Z/2 -> Z/4 sending the generator to an order 4 element is not a hom
  CHECK_THROWS_AS(GroupHom::from_generator_images(c2, c4, {{1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GroupHom(c2, c4, {0, 1}), std::invalid_argument);
  // 2 in Z/4 does not generate
  CHECK_THROWS_AS(GroupHom::from_generator_images(c4, c4, {{2, 2}}),
                  std::invalid_argument);
  // but g -> g^3 is an automorphism of Z/4
  auto cube = GroupHom::from_generator_images(c4, c4, {{1, 3}});
  CHECK(cube.table() == std::vector<int>{0, 3, 2, 1});
}

TEST_CASE("the diagonal torus embeds in the torus plus swap group") {
  auto big = torus_swap_group(5);
  auto torus = from_matrix_generators(
      5, {FqMatrix::diagonal(5, {2, 1}), FqMatrix::diagonal(5, {1, 2})});
  CHECK(torus.group.size() == 16);
  CHECK(torus.group.is_abelian());

  std::vector<std::pair<int, int>> images;
  for (const auto& gen :
       {FqMatrix::diagonal(5, {2, 1}), FqMatrix::diagonal(5, {1, 2})})
    images.emplace_back(find_elem(torus, gen), find_elem(big, gen));
  auto inc = GroupHom::from_generator_images(torus.group, big.group, images);
  CHECK(inc.injective());
  CHECK_FALSE(inc.surjective());
  for (int x = 0; x < torus.group.size(); ++x)
    CHECK(torus.group.order_of(x) == big.group.order_of(inc(x)));
}

TEST_SUITE_END();
