#ifndef HOMFORGE_GROUP_HPP
#define HOMFORGE_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

namespace homforge {

// Square matrix over F_q; entries are canonical field indices, row-major.
struct FqMatrix {
  int q = 0;
  int n = 0;
  std::vector<int> e;

  static FqMatrix identity(int q, int n);
  static FqMatrix diagonal(int q, const std::vector<int>& diag);
  // entry (i, perm[i]) = 1: right multiplication permutes columns by perm
  static FqMatrix permutation(int q, const std::vector<int>& perm);

  int at(int r, int c) const { return e[r * n + c]; }
  void set(int r, int c, int v) { e[r * n + c] = v; }
  FqMatrix operator*(const FqMatrix& o) const;
  bool operator==(const FqMatrix&) const = default;
  bool invertible() const;
  std::string to_string() const;
};

// Finite group as an explicit Cayley table. Identity and inverses are
// recovered from the table; the full axiom set is verified on construction
// for order <= 256 (associativity is cubic in the order).
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<int> mul_table,
                       std::vector<std::string> labels = {});

  int size() const { return n_; }
  int id() const { return id_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }
  int order_of(int a) const;
  bool is_abelian() const { return abelian_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int i) const { return labels_[i]; }

  // Cyclic factor orders, present when built from a FiniteAbelianGroup.
  const std::optional<std::vector<long>>& abelian_orders() const {
    return abelian_orders_;
  }
  void set_abelian_orders(std::vector<long> orders);

  // Distinct per constructed instance; caches key derived data on it.
  long uid() const { return uid_; }

 private:
  long uid_;
  int n_;
  int id_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  bool abelian_;
  std::optional<std::vector<long>> abelian_orders_;
};

// Z/m1 x ... x Z/mr with elements as exponent vectors. The element index is
// the mixed-radix encoding with the first coordinate most significant, so
// index order is lexicographic order of exponent vectors.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<long> orders);
  static FiniteAbelianGroup cyclic(long n);
  static FiniteAbelianGroup product(const FiniteAbelianGroup& a,
                                    const FiniteAbelianGroup& b);

  long size() const { return size_; }
  const std::vector<long>& orders() const { return orders_; }

  int mul(int a, int b) const;
  int inv(int a) const;
  int id() const { return 0; }

  std::vector<long> exponents(int idx) const;
  int index_of(const std::vector<long>& e) const;
  std::string label(int idx) const;  // "(1,0)"

  // Explicit Cayley table carrying the factor orders and labels along.
  FiniteGroup cayley(int cap = 4096) const;

 private:
  std::vector<long> orders_;
  long size_;
};

// Matrix-generated subgroup together with its faithful matrix labels,
// index-aligned with the group elements.
struct MatrixGroup {
  FiniteGroup group;
  std::vector<FqMatrix> elements;
  int q = 0;
};

// Breadth-first closure of the span of gens inside GL_n(F_q). Element 0 is
// the identity; discovery order is deterministic in the generator order.
// Throws std::length_error when the closure exceeds cap.
MatrixGroup from_matrix_generators(int q, const std::vector<FqMatrix>& gens,
                                   int cap = 4096);

// Subgroup of GL_2(F_q) generated by diag(r,1), diag(1,r) and the swap
// matrix, r a primitive root: the full diagonal torus extended by the
// coordinate swap. Order 2*(q-1)^2.
MatrixGroup torus_swap_group(int q, int cap = 4096);

// F_q* as a cyclic group of order q-1 with exact discrete logarithms.
struct UnitGroup {
  FiniteAbelianGroup group;       // Z/(q-1)
  int q = 0;
  int primitive_root = 0;         // canonical field index
  std::vector<int> dlog;          // field index -> exponent; dlog[0] = -1
  std::vector<int> element;       // exponent -> field index
};

UnitGroup units_of_field(int q);

// Homomorphism given by its full image table; the law f(xy) = f(x)f(y) is
// verified exhaustively on construction. Holds non-owning pointers, so the
// groups must outlive the hom.
class GroupHom {
 public:
  GroupHom(const FiniteGroup& src, const FiniteGroup& tgt,
           std::vector<int> map);

  // Extends generator -> image assignments by breadth-first search over the
  // source, then verifies. Throws when the generators do not generate or
  // the assignment is inconsistent.
  static GroupHom from_generator_images(
      const FiniteGroup& src, const FiniteGroup& tgt,
      const std::vector<std::pair<int, int>>& images);

  int operator()(int x) const { return map_[x]; }
  const FiniteGroup& source() const { return *src_; }
  const FiniteGroup& target() const { return *tgt_; }
  const std::vector<int>& table() const { return map_; }

  bool injective() const;
  bool surjective() const;

 private:
  const FiniteGroup* src_;
  const FiniteGroup* tgt_;
  std::vector<int> map_;
};

}  // namespace homforge

#endif
