#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "homforge/bar.hpp"
#include "homforge/group.hpp"

using namespace homforge;

namespace {

// entries are drawn from [1, n); all groups built here put the identity at
// index 0, which the callers assert once per case
BarChain random_chain(const FiniteGroup& g, int degree, std::mt19937_64& rng,
                      int terms = 4) {
  BarChain c(g, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> cell(degree);
    for (int i = 0; i < degree; ++i)
      cell[i] = 1 + static_cast<int>(rng() % (g.size() - 1));
    c.add(cell, static_cast<long>(rng() % 7) - 3);
  }
  return c;
}

MatrixGroup make_gl2_f2() {
  FqMatrix shear = FqMatrix::identity(2, 2);
  shear.set(0, 1, 1);
  FqMatrix swap = FqMatrix::permutation(2, {1, 0});
  return from_matrix_generators(2, {shear, swap});
}

}  // namespace

TEST_SUITE("bar") {
  TEST_CASE("chains normalize degenerate cells and cancel terms") {
    auto g = FiniteAbelianGroup::cyclic(5).cayley();
    REQUIRE(g.id() == 0);

    BarChain c(g, 2);
    c.add({1, 0}, 3);  // contains the identity, drops out
    CHECK(c.is_zero());
    c.add({1, 2}, 2);
    c.add({1, 2}, -2);
    CHECK(c.is_zero());
    c.add({1, 2}, 1);
    c.add({2, 1}, 4);
    CHECK(c.term_count() == 2);
    c *= 3;
    CHECK(c.terms().at({2, 1}) == 12);

    CHECK_THROWS_AS(c.add({1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(c.add({1, 7}, 1), std::invalid_argument);
    BarChain other(g, 3);
    CHECK_THROWS_AS(c += other, std::invalid_argument);

    BarChain empty = BarChain::cell(g, {}, 5);
    CHECK(empty.degree() == 0);
    CHECK(empty.terms().at({}) == 5);
    CHECK_THROWS_AS(boundary(empty), std::invalid_argument);
  }

  TEST_CASE("boundary matches hand expansions") {
    auto g = FiniteAbelianGroup::cyclic(5).cayley();

    // degree 1 boundaries vanish identically
    CHECK(boundary(BarChain::cell(g, {3})).is_zero());

    // d[1|2] = [2] - [3] + [1]
    BarChain d12 = boundary(BarChain::cell(g, {1, 2}));
    BarChain want(g, 1);
    want.add({2}, 1);
    want.add({3}, -1);
    want.add({1}, 1);
    CHECK(d12 == want);

    // d[2|3] = [3] + [2]: the merged face hits the identity
    BarChain d23 = boundary(BarChain::cell(g, {2, 3}));
    BarChain want23(g, 1);
    want23.add({3}, 1);
    want23.add({2}, 1);
    CHECK(d23 == want23);

    // d[1|1|2] = [1|2] - [2|2] + [1|3] - [1|1]
    BarChain d112 = boundary(BarChain::cell(g, {1, 1, 2}));
    BarChain want112(g, 2);
    want112.add({1, 2}, 1);
    want112.add({2, 2}, -1);
    want112.add({1, 3}, 1);
    want112.add({1, 1}, -1);
    CHECK(d112 == want112);
  }

  TEST_CASE("boundary of boundary vanishes") {
    auto c6 = FiniteAbelianGroup::cyclic(6).cayley();
    auto gl2 = make_gl2_f2();
    std::mt19937_64 rng(20260814);
    for (int trial = 0; trial < 30; ++trial) {
      const FiniteGroup& g = trial % 2 == 0 ? c6 : gl2.group;
      REQUIRE(g.id() == 0);
      int degree = 2 + static_cast<int>(rng() % 3);
      BarChain c = random_chain(g, degree, rng);
      CHECK(boundary(boundary(c)).is_zero());
    }
  }

  TEST_CASE("c symbols expand with alternating signs") {
    auto g = FiniteAbelianGroup({4, 4}).cayley();
    REQUIRE(g.id() == 0);

    CHECK(c_symbol(g, {3}) == BarChain::cell(g, {3}));

    BarChain c2 = c_symbol(g, {1, 4});
    BarChain want(g, 2);
    want.add({1, 4}, 1);
    want.add({4, 1}, -1);
    CHECK(c2 == want);

    // repeated arguments cancel pairwise
    CHECK(c_symbol(g, {3, 3}).is_zero());
    // identity arguments only produce degenerate cells
    CHECK(c_symbol(g, {0, 1, 4}).is_zero());

    CHECK(c_symbol(g, {1, 4, 5}).term_count() == 6);
    CHECK(c_symbol(g, {1, 4, 5, 2}).term_count() == 24);

    CHECK_THROWS_AS(c_symbol(g, {}), std::invalid_argument);
    CHECK_THROWS_AS(c_symbol(g, {1, 2, 3, 4, 5}), std::invalid_argument);

    auto gl2 = make_gl2_f2();
    int a = -1, b = -1;
    for (int i = 0; i < gl2.group.size() && (a < 0 || b < 0); ++i)
      for (int j = i + 1; j < gl2.group.size(); ++j)
        if (!gl2.group.commute(i, j)) {
          a = i;
          b = j;
          break;
        }
    REQUIRE(a >= 0);
    CHECK_THROWS_AS(c_symbol(gl2.group, {a, b}), std::invalid_argument);
  }

  TEST_CASE("c symbols of commuting tuples are cycles") {
    auto g = FiniteAbelianGroup({2, 6}).cayley();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      int arity = 2 + static_cast<int>(rng() % 3);
      std::vector<int> elems(arity);
      for (int& e : elems) e = 1 + static_cast<int>(rng() % (g.size() - 1));
      CHECK(is_cycle(c_symbol(g, elems)));
    }
  }

  TEST_CASE("permuting c symbol arguments multiplies by the sign") {
    auto g = FiniteAbelianGroup({4, 4}).cayley();
    std::vector<int> base = {1, 4, 6};
    BarChain c = c_symbol(g, base);

    const std::vector<std::pair<std::vector<int>, int>> perms = {
        {{0, 1, 2}, 1},  {{1, 0, 2}, -1}, {{0, 2, 1}, -1},
        {{2, 1, 0}, -1}, {{1, 2, 0}, 1},  {{2, 0, 1}, 1},
    };
    for (const auto& [p, sign] : perms) {
      std::vector<int> permuted = {base[p[0]], base[p[1]], base[p[2]]};
      CHECK(c_symbol(g, permuted) == Int(sign) * c);
    }

    // one odd and one even rearrangement in arity 4
    BarChain c4 = c_symbol(g, {1, 4, 6, 9});
    CHECK(c_symbol(g, {4, 1, 6, 9}) == Int(-1) * c4);
    CHECK(c_symbol(g, {4, 1, 9, 6}) == c4);
  }

  TEST_CASE("pushforward is linear and commutes with the boundary") {
    auto a = FiniteAbelianGroup::cyclic(4).cayley();
    auto b = FiniteAbelianGroup::cyclic(3).cayley();
    auto p = direct_product(a, b);
    GroupHom pr1 = p.proj1(a);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 15; ++trial) {
      BarChain c = random_chain(p.group, 2 + static_cast<int>(rng() % 2), rng);
      BarChain d = random_chain(p.group, c.degree(), rng);
      CHECK(pushforward(pr1, c + d) ==
            pushforward(pr1, c) + pushforward(pr1, d));
      CHECK(pushforward(pr1, boundary(c)) == boundary(pushforward(pr1, c)));
    }

    // identity map fixes chains; composite through an inclusion degenerates
    std::vector<int> idmap(a.size());
    for (int i = 0; i < a.size(); ++i) idmap[i] = i;
    GroupHom ida(a, a, std::move(idmap));
    BarChain c = random_chain(a, 3, rng);
    CHECK(pushforward(ida, c) == c);

    // projecting the other factor away kills cells from the first
    GroupHom pr2 = p.proj2(b);
    BarChain left = pushforward(p.embed1(a), random_chain(a, 2, rng));
    CHECK(pushforward(pr2, left).is_zero());
  }

  TEST_CASE("conjugation homotopy telescopes to identity minus conjugate") {
    auto gl2 = make_gl2_f2();
    const FiniteGroup& g = gl2.group;
    REQUIRE(g.id() == 0);
    std::mt19937_64 rng(20260814);

    for (int trial = 0; trial < 40; ++trial) {
      int degree = 1 + static_cast<int>(rng() % 3);
      int w = 1 + static_cast<int>(rng() % (g.size() - 1));
      BarChain c = random_chain(g, degree, rng);
      BarChain lhs = boundary(conjugation_homotopy(c, w));
      lhs += conjugation_homotopy(boundary(c), w);
      CHECK(lhs == c - conjugate_chain(c, w));
    }

    // for cycles the homotopy is an explicit boundary witness
    auto t = FiniteAbelianGroup({4, 4}).cayley();
    BarChain z = c_symbol(t, {1, 4, 6});
    REQUIRE(is_cycle(z));
    int w = 5;
    CHECK(boundary(conjugation_homotopy(z, w)) == z - conjugate_chain(z, w));
    // conjugation in an abelian group fixes every chain
    CHECK(conjugate_chain(z, w) == z);
  }

  TEST_CASE("shuffle product interleaves cells with crossing signs") {
    auto a = FiniteAbelianGroup::cyclic(4).cayley();
    auto b = FiniteAbelianGroup::cyclic(3).cayley();
    auto p = direct_product(a, b);

    // [g] x [h] = [(g,e)|(e,h)] - [(e,h)|(g,e)]
    int ga = 1, hb = 2;
    int gp = p.pair_index(ga, b.id()), hp = p.pair_index(a.id(), hb);
    BarChain prod =
        shuffle_product(BarChain::cell(a, {ga}), BarChain::cell(b, {hb}), p);
    BarChain want(p.group, 2);
    want.add({gp, hp}, 1);
    want.add({hp, gp}, -1);
    CHECK(prod == want);
    CHECK(prod == c_symbol(p.group, {gp, hp}));

    // the empty cell is a unit on either side
    BarChain unit_a = BarChain::cell(a, {}, 1);
    BarChain cb(b, 2);
    cb.add({1, 2}, 3);
    cb.add({2, 2}, -1);
    CHECK(shuffle_product(unit_a, cb, p) == pushforward(p.embed2(b), cb));
    BarChain unit_b = BarChain::cell(b, {}, 1);
    BarChain ca(a, 2);
    ca.add({1, 3}, 2);
    CHECK(shuffle_product(ca, unit_b, p) == pushforward(p.embed1(a), ca));

    // shuffles of c symbols concatenate
    BarChain lhs = shuffle_product(c_symbol(a, {1, 2}), c_symbol(b, {1}), p);
    BarChain rhs = c_symbol(p.group, {p.pair_index(1, b.id()),
                                      p.pair_index(2, b.id()),
                                      p.pair_index(a.id(), 1)});
    CHECK(lhs == rhs);
  }

  TEST_CASE("shuffle product satisfies the Leibniz rule") {
    auto a = FiniteAbelianGroup::cyclic(4).cayley();
    auto b = FiniteAbelianGroup::cyclic(3).cayley();
    auto p = direct_product(a, b);
    std::mt19937_64 rng(99);

    for (int trial = 0; trial < 20; ++trial) {
      int m = 1 + static_cast<int>(rng() % 2);
      int n = 1 + static_cast<int>(rng() % 2);
      BarChain ca = random_chain(a, m, rng, 3);
      BarChain cb = random_chain(b, n, rng, 3);
      BarChain lhs = boundary(shuffle_product(ca, cb, p));
      BarChain rhs = shuffle_product(boundary(ca), cb, p);
      BarChain mixed = shuffle_product(ca, boundary(cb), p);
      if (m % 2 == 1) mixed *= -1;
      rhs += mixed;
      CHECK(lhs == rhs);
    }

    // hence products of cycles are cycles
    BarChain za = c_symbol(a, {1, 2});
    BarChain zb = BarChain::cell(b, {2});
    CHECK(is_cycle(shuffle_product(za, zb, p)));
  }

  TEST_CASE("cell indexing round trips") {
    auto g = FiniteAbelianGroup::cyclic(6).cayley();
    CellIndexer ix(g, 3);
    CHECK(ix.count() == 125);
    for (unsigned long long i = 0; i < ix.count(); ++i) {
      std::vector<int> cell = ix.cell_at(i);
      CHECK(cell.size() == 3);
      for (int e : cell) CHECK(e != g.id());
      CHECK(ix.index_of(cell) == i);
    }
    CHECK(ix.cell_at(0) == std::vector<int>{1, 1, 1});
    CHECK(ix.cell_at(1) == std::vector<int>{1, 1, 2});

    CellIndexer deg0(g, 0);
    CHECK(deg0.count() == 1);
    CHECK(deg0.cell_at(0).empty());
    CHECK(deg0.index_of({}) == 0);
  }
}
