#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "homforge/bar.hpp"
#include "homforge/group.hpp"
#include "homforge/homology.hpp"
#include "homforge/lattice.hpp"
#include "homforge/snf.hpp"

using namespace homforge;

namespace {

AbelianInvariants inv(std::vector<long> torsion, int free_rank = 0) {
  std::vector<Int> t(torsion.begin(), torsion.end());
  return AbelianInvariants{std::move(t), free_rank};
}

SparseIntMatrix boundary_matrix(const FiniteGroup& g, int d) {
  CellIndexer cols(g, d), rows(g, d - 1);
  SparseIntMatrix m(static_cast<int>(rows.count()),
                    static_cast<int>(cols.count()));
  for (unsigned long long j = 0; j < cols.count(); ++j) {
    BarChain db = boundary(BarChain::cell(g, cols.cell_at(j)));
    SparseVec col;
    for (const auto& [cell, k] : db.terms())
      col.emplace_back(static_cast<int32_t>(rows.index_of(cell)), k);
    std::sort(col.begin(), col.end());
    m.set_column(static_cast<int>(j), std::move(col));
  }
  return m;
}

// independent route: express the image of d_{n+1} in an integral basis of
// ker d_n, then read the quotient off a plain integer Smith reduction
AbelianInvariants homology_via_integer_snf(const FiniteGroup& g, int n) {
  CellIndexer here(g, n), above(g, n + 1);
  SparseIntMatrix dn1 = boundary_matrix(g, n + 1);

  SparseIntMatrix kernel;
  if (n == 0) {
    kernel = SparseIntMatrix::identity(static_cast<int>(here.count()));
  } else {
    kernel = kernel_basis(boundary_matrix(g, n));
  }
  LatticeBasis kb(static_cast<int>(here.count()), /*track_provenance=*/true);
  for (int c = 0; c < kernel.cols(); ++c)
    kb.add_generator(kernel.column(c), c);

  SparseIntMatrix rel(kernel.cols(), dn1.cols());
  for (int c = 0; c < dn1.cols(); ++c) {
    if (dn1.column(c).empty()) continue;
    auto expr = kb.express(dn1.column(c));
    REQUIRE(expr.has_value());  // boundaries are cycles
    SparseVec col = *expr;
    std::sort(col.begin(), col.end());
    rel.set_column(c, std::move(col));
  }
  return cokernel_invariants(rel);
}

// exact integer membership of a chain in the image of the next boundary map
bool boundary_by_lattice(const BarChain& z) {
  const FiniteGroup& g = z.group();
  int d = z.degree() + 1;
  CellIndexer here(g, z.degree());
  SparseIntMatrix dn1 = boundary_matrix(g, d);
  LatticeBasis basis(static_cast<int>(here.count()));
  for (int c = 0; c < dn1.cols(); ++c)
    if (!dn1.column(c).empty()) basis.add_generator(dn1.column(c), c);
  SparseVec target;
  for (const auto& [cell, k] : z.terms())
    target.emplace_back(static_cast<int32_t>(here.index_of(cell)), k);
  std::sort(target.begin(), target.end());
  return basis.contains(target);
}

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

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("cyclic groups repeat Z, Z/n, 0, Z/n") {
    for (long n = 2; n <= 6; ++n) {
      CAPTURE(n);
      auto g = FiniteAbelianGroup::cyclic(n).cayley();
      CHECK(homology(g, 0).invariants == inv({}, 1));
      CHECK(homology(g, 1).invariants == inv({n}));
      CHECK(homology(g, 2).invariants == inv({}));
      CHECK(homology(g, 3).invariants == inv({n}));
    }
  }

  TEST_CASE("trivial group has no higher homology") {
    auto g = FiniteAbelianGroup::cyclic(1).cayley();
    CHECK(homology(g, 0).invariants == inv({}, 1));
    for (int d = 1; d <= 3; ++d) {
      auto rep = homology(g, d);
      CHECK(rep.invariants == inv({}));
      CHECK(rep.cells_here == 0);
    }
  }

  TEST_CASE("klein four group") {
    auto g = FiniteAbelianGroup({2, 2}).cayley();
    CHECK(homology(g, 1).invariants == inv({2, 2}));
    CHECK(homology(g, 2).invariants == inv({2}));
    CHECK(homology(g, 3).invariants == inv({2, 2, 2}));
  }

  TEST_CASE("product of cyclic groups matches the closed form") {
    // H3(Z/m x Z/n) = Z/m + Z/n + Z/gcd(m,n)
    auto g = FiniteAbelianGroup({2, 4}).cayley();
    auto rep = homology(g, 3);
    CHECK(rep.invariants == inv({2, 2, 4}));
    CHECK(homology(g, 2).invariants == inv({2}));
    CHECK(homology(g, 1).invariants == inv({2, 4}));
  }

  TEST_CASE("modular reduction agrees with exact integer reduction") {
    std::vector<FiniteGroup> groups;
    groups.push_back(FiniteAbelianGroup::cyclic(4).cayley());
    groups.push_back(FiniteAbelianGroup::cyclic(6).cayley());
    groups.push_back(FiniteAbelianGroup({2, 2}).cayley());
    for (const auto& g : groups) {
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(g.size());
        CAPTURE(n);
        CHECK(homology(g, n).invariants == homology_via_integer_snf(g, n));
      }
    }
    // degree 3 on the smallest two, where the degree-4 matrix stays tiny
    CHECK(homology(groups[0], 3).invariants ==
          homology_via_integer_snf(groups[0], 3));
    CHECK(homology(groups[2], 3).invariants ==
          homology_via_integer_snf(groups[2], 3));
  }

  TEST_CASE("nonabelian sanity: the symmetric group on three letters") {
    auto gl2 = from_matrix_generators(
        2, {[] {
              FqMatrix m = FqMatrix::identity(2, 2);
              m.set(0, 1, 1);
              return m;
            }(),
            FqMatrix::permutation(2, {1, 0})});
    const FiniteGroup& g = gl2.group;
    REQUIRE(g.size() == 6);
    CHECK(homology(g, 1).invariants == inv({2}));
    CHECK(homology(g, 2).invariants == inv({}));
    CHECK(homology(g, 3).invariants == inv({6}));
    CHECK(homology(g, 2).invariants == homology_via_integer_snf(g, 2));
  }

  TEST_CASE("boundary decisions match exact lattice membership") {
    std::mt19937_64 rng(20260814);

    // degree 1 in Z/6: every chain is a cycle
    auto c6 = FiniteAbelianGroup::cyclic(6).cayley();
    for (int trial = 0; trial < 25; ++trial) {
      BarChain z = random_chain(c6, 1, rng);
      CHECK(is_boundary(z).boundary == boundary_by_lattice(z));
    }

    // degree 2 in the klein four group, where H2 = Z/2 gives real negatives:
    // sample integer combinations of an exact kernel basis of d_2
    auto k4 = FiniteAbelianGroup({2, 2}).cayley();
    SparseIntMatrix kb = kernel_basis(boundary_matrix(k4, 2));
    CellIndexer cells2(k4, 2);
    int seen_true = 0, seen_false = 0;
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Int> coeffs(kb.cols());
      for (auto& c : coeffs) c = static_cast<long>(rng() % 5) - 2;
      std::vector<Int> dense = kb.apply(coeffs);
      BarChain z(k4, 2);
      for (size_t r = 0; r < dense.size(); ++r)
        if (dense[r] != 0)
          z.add(cells2.cell_at(r), dense[r]);
      REQUIRE(is_cycle(z));
      bool fast = is_boundary(z).boundary;
      bool exact = boundary_by_lattice(z);
      CHECK(fast == exact);
      (exact ? seen_true : seen_false)++;
    }
    CHECK(seen_true > 0);
    CHECK(seen_false > 0);
  }

  TEST_CASE("boundary witnesses substitute back") {
    auto c4 = FiniteAbelianGroup::cyclic(4).cayley();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      BarChain z = boundary(random_chain(c4, 3, rng));
      auto res = is_boundary(z, /*want_witness=*/true);
      CHECK(res.boundary);
      REQUIRE(res.witness.has_value());
      CHECK(boundary(*res.witness) == z);
    }

    auto c6 = FiniteAbelianGroup::cyclic(6).cayley();
    BarChain six = BarChain::cell(c6, {1}, 6);
    auto res = is_boundary(six, true);
    CHECK(res.boundary);
    REQUIRE(res.witness.has_value());
    CHECK(boundary(*res.witness) == six);

    BarChain zero(c6, 2);
    auto rz = is_boundary(zero, true);
    CHECK(rz.boundary);
    REQUIRE(rz.witness.has_value());
    CHECK(rz.witness->is_zero());

    // a generator of H1 is not a boundary
    CHECK_FALSE(is_boundary(BarChain::cell(c6, {1})).boundary);
  }

  TEST_CASE("non cycles are rejected") {
    auto c4 = FiniteAbelianGroup::cyclic(4).cayley();
    BarChain notcycle = BarChain::cell(c4, {1, 2});
    REQUIRE_FALSE(is_cycle(notcycle));
    CHECK_THROWS_AS(is_boundary(notcycle), std::invalid_argument);
    CHECK_THROWS_AS(class_order(notcycle), std::invalid_argument);
  }

  TEST_CASE("class orders track the known group structure") {
    auto c6 = FiniteAbelianGroup::cyclic(6).cayley();
    CHECK(class_order(BarChain::cell(c6, {1})) == Int(6));
    CHECK(class_order(BarChain::cell(c6, {2})) == Int(3));
    CHECK(class_order(BarChain::cell(c6, {3})) == Int(2));
    CHECK(class_order(BarChain::cell(c6, {1}, 2)) == Int(3));

    // H2(Z/m x Z/n) = Z/gcd, generated by the commuting-pair symbol
    auto g24 = FiniteAbelianGroup({2, 4}).cayley();
    CHECK(class_order(c_symbol(g24, {4, 1})) == Int(2));
    auto g33 = FiniteAbelianGroup({3, 3}).cayley();
    CHECK(class_order(c_symbol(g33, {3, 1})) == Int(3));
    auto g44 = FiniteAbelianGroup({4, 4}).cayley();
    CHECK(class_order(c_symbol(g44, {4, 1})) == Int(4));

    // degree zero: only the zero class has finite order
    auto c2 = FiniteAbelianGroup::cyclic(2).cayley();
    CHECK(class_order(BarChain(c2, 0)) == Int(1));
    CHECK(class_order(BarChain::cell(c2, {}, 3)) == std::nullopt);
    CHECK_FALSE(is_boundary(BarChain::cell(c2, {}, 3)).boundary);
    CHECK(is_boundary(BarChain(c2, 0)).boundary);
  }

  TEST_CASE("multiples by the class order become boundaries") {
    auto g = FiniteAbelianGroup({2, 4}).cayley();
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
      BarChain z =
          boundary(random_chain(g, 3, rng)) + c_symbol(g, {4, 1});
      REQUIRE(is_cycle(z));
      auto ord = class_order(z);
      REQUIRE(ord.has_value());
      Int o = *ord;
      CHECK(is_boundary(o * z).boundary);
      if (o > 1) {
        CHECK_FALSE(is_boundary(z).boundary);
        Int half = o / 2;
        if (half > 0 && o % 2 == 0) CHECK_FALSE(is_boundary(half * z).boundary);
      }
    }
  }

  TEST_CASE("caps are enforced") {
    auto c6 = FiniteAbelianGroup::cyclic(6).cayley();
    HomologyOptions tight;
    tight.cell_cap = 10;
    CHECK_THROWS_AS(homology(c6, 3, tight), std::length_error);
    BarChain z = BarChain::cell(c6, {1});
    CHECK_THROWS_AS(is_boundary(z, false, tight), std::length_error);
    CHECK_THROWS_AS(homology(c6, 4), std::invalid_argument);
    CHECK_THROWS_AS(homology(c6, -1), std::invalid_argument);
  }

  TEST_CASE("report bookkeeping is consistent") {
    auto g = FiniteAbelianGroup::cyclic(5).cayley();
    auto rep = homology(g, 2);
    CHECK(rep.degree == 2);
    CHECK(rep.cells_here == 16);
    CHECK(rep.cells_above == 64);
    // dim ker = cells - rank_below; free rank zero for finite homology
    CHECK(rep.invariants.is_finite());
    CHECK(static_cast<int>(rep.cells_here) ==
          rep.rank_below + rep.rank_above);
    CHECK(rep.seconds >= 0.0);
  }
}
