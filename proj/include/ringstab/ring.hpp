#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringstab {

/// Element code of a finite ring; valid codes are 0..order-1.
using elem = std::uint16_t;

struct RingstabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FiniteRing;
using Ring = std::shared_ptr<const FiniteRing>;

/// Finite associative ring with identity, represented by dense operation
/// tables over element codes.  Immutable after construction; every factory
/// verifies the ring axioms (exhaustively for order <= 64, by seeded sampling
/// of >= 1e5 triples above that) and precomputes negation, the unit group
/// (two-sided inverses found by exhaustive search) and commutativity.
class FiniteRing {
public:
  static constexpr unsigned default_order_cap = 256;
  static constexpr elem no_inverse = 0xFFFF;

  /// Integers mod m, codes = residues.
  static Ring zmod(unsigned m, unsigned order_cap = default_order_cap);
  /// base[x]/(x^k); code = sum of coeff_i * |base|^i.
  static Ring trunc_poly(const Ring& base, unsigned k,
                         unsigned order_cap = default_order_cap);
  /// k-by-k matrices over base; code = row-major base-|base| digits.
  static Ring matrix_ring(unsigned k, const Ring& base,
                          unsigned order_cap = default_order_cap);
  /// Upper triangular k-by-k matrices over base; code digits run over the
  /// upper coordinates row-major: (0,0),(0,1),..,(0,k-1),(1,1),..
  static Ring upper_triangular(unsigned k, const Ring& base,
                               unsigned order_cap = default_order_cap);
  /// Direct product; code = mixed-radix over the parts, part 0 least
  /// significant. Operations are componentwise.
  static Ring product(const std::vector<Ring>& parts,
                      unsigned order_cap = default_order_cap);
  /// Explicit add/mul tables (row-major, order*order entries each).  Zero and
  /// one are located by search; any axiom violation is reported with a
  /// witness triple.
  static Ring from_tables(unsigned order, std::vector<elem> add,
                          std::vector<elem> mul,
                          std::string tag = "explicit_table",
                          unsigned order_cap = default_order_cap);

  unsigned order() const { return order_; }
  elem zero() const { return zero_; }
  elem one() const { return one_; }
  elem add(elem a, elem b) const { return add_[std::size_t(a) * order_ + b]; }
  elem mul(elem a, elem b) const { return mul_[std::size_t(a) * order_ + b]; }
  elem neg(elem a) const { return neg_[a]; }
  elem sub(elem a, elem b) const { return add(a, neg(b)); }
  bool is_unit(elem a) const { return inv_[a] != no_inverse; }
  /// Two-sided inverse; throws on a non-unit.
  elem inv(elem a) const;
  const std::vector<elem>& unit_list() const { return units_; }
  bool commutative() const { return commutative_; }
  const std::string& family() const { return family_; }

private:
  FiniteRing() = default;
  static Ring finish(unsigned order, std::vector<elem> add,
                     std::vector<elem> mul, std::string family,
                     unsigned order_cap);

  unsigned order_ = 0;
  std::vector<elem> add_, mul_;
  elem zero_ = 0, one_ = 0;
  std::vector<elem> neg_, inv_;
  std::vector<elem> units_;
  bool commutative_ = false;
  std::string family_;
};

/// Two-sided ideal, stored as an explicit member set plus membership mask.
struct Ideal {
  Ring ring;
  std::vector<elem> members;     // sorted
  std::vector<char> mask;        // size order()
  std::vector<elem> generators;

  bool contains(elem e) const { return mask[e] != 0; }
  std::size_t size() const { return members.size(); }
  bool is_zero() const { return members.size() == 1; }
  bool is_full() const { return members.size() == ring->order(); }
};

bool same_ideal(const Ideal& a, const Ideal& b);

/// Smallest two-sided ideal containing gens.
Ideal ideal_generated(const Ring& r, const std::vector<elem>& gens);
Ideal zero_ideal(const Ring& r);
Ideal full_ideal(const Ring& r);
/// Ideal generated by all products ab, a in lhs, b in rhs.
Ideal ideal_product(const Ideal& lhs, const Ideal& rhs);
Ideal ideal_sum(const Ideal& lhs, const Ideal& rhs);
/// Every two-sided ideal, sorted by (size, members).  Intended for small
/// rings; walks the ideal lattice by adding one generator at a time.
std::vector<Ideal> all_ideals(const Ring& r);

/// Elements commuting with everything; verified to form a subring.
std::vector<elem> center_elements(const Ring& r);

/// { r | 1 - s*r is a unit for all s }.  Verified to be a two-sided ideal
/// whose quotient has trivial radical.
Ideal jacobson_radical(const Ring& r);

/// { r | r*a = a*r = 0 for all a in ideal }.  Verified to be a two-sided
/// ideal.
Ideal annihilator(const Ideal& ideal);

/// Ring homomorphism given by its value table.
struct RingHom {
  Ring source, target;
  std::vector<elem> map;

  elem operator()(elem e) const { return map[e]; }
  /// Exhaustively checks additivity, multiplicativity and unit preservation.
  void verify() const;
};

struct QuotientRing {
  Ring ring;
  RingHom proj;
};

/// Quotient by a proper ideal; coset representatives are the minimum codes,
/// quotient codes index the sorted representative list.  The projection is
/// verified surjective with kernel exactly the ideal.
QuotientRing quotient_ring(const Ring& r, const Ideal& ideal);

std::string elem_list_str(const std::vector<elem>& v);

}  // namespace ringstab
