#pragma once

#include <optional>

#include "ringstab/ring.hpp"

namespace ringstab {

/// Square matrix over a finite ring, row-major entries.
class Mat {
public:
  Mat() = default;
  Mat(Ring r, unsigned n)
      : ring_(std::move(r)), n_(n), e_(std::size_t(n) * n, ring_->zero()) {
    if (n < 2 || n > 16) throw RingstabError("Mat: dimension out of range");
  }

  static Mat identity(const Ring& r, unsigned n);
  /// Standard matrix unit e_ij (0-based indices).
  static Mat unit(const Ring& r, unsigned n, unsigned i, unsigned j);
  static Mat scalar(const Ring& r, unsigned n, elem c);
  static Mat diag(const Ring& r, unsigned n, const std::vector<elem>& d);
  /// 1 + r*e_ij, i != j.
  static Mat transvection(const Ring& r, unsigned n, unsigned i, unsigned j,
                          elem v);

  const Ring& ring() const { return ring_; }
  unsigned dim() const { return n_; }
  elem at(unsigned i, unsigned j) const { return e_[std::size_t(i) * n_ + j]; }
  void set(unsigned i, unsigned j, elem v) { e_[std::size_t(i) * n_ + j] = v; }
  const std::vector<elem>& entries() const { return e_; }
  elem* data() { return e_.data(); }
  const elem* data() const { return e_.data(); }

  bool operator==(const Mat& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

private:
  Ring ring_;
  unsigned n_ = 0;
  std::vector<elem> e_;
};

/// c = a*b on raw row-major buffers; c must not alias a or b.
void mul_into(const FiniteRing& r, unsigned n, const elem* a, const elem* b,
              elem* c);

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_neg(const Mat& a);
/// c*a (every entry multiplied by c on the left).
Mat scale_left(elem c, const Mat& a);
Mat scale_right(const Mat& a, elem c);

bool is_identity(const Mat& m);

struct Transvection {
  unsigned i, j;  // 0-based, i != j
  elem r;
};

/// Recognizes 1 + r*e_ij with r != 0; identity and everything else yield
/// nullopt.
std::optional<Transvection> as_transvection(const Mat& m);

/// Invertible matrix carrying its certified two-sided inverse.
struct GroupElement {
  Mat mat, inv;
};

GroupElement ge_identity(const Ring& r, unsigned n);
GroupElement ge_transvection(const Ring& r, unsigned n, unsigned i, unsigned j,
                             elem v);
/// Diagonal of units.
GroupElement ge_diag(const Ring& r, unsigned n, const std::vector<elem>& d);
GroupElement ge_mul(const GroupElement& a, const GroupElement& b);
GroupElement ge_inverse(const GroupElement& a);

/// Invertibility over a finite ring via the power sequence: m is invertible
/// iff some power m^p equals the identity (then m^{p-1} is the two-sided
/// inverse); otherwise the sequence cycles without passing through 1.
std::optional<GroupElement> try_invert(const Mat& m);

/// a^b = b a b^{-1}.
Mat conj(const Mat& a, const GroupElement& b);
GroupElement ge_conj(const GroupElement& a, const GroupElement& b);
/// [a,b] = a b a^{-1} b^{-1}.
Mat comm(const GroupElement& a, const GroupElement& b);
GroupElement ge_comm(const GroupElement& a, const GroupElement& b);

/// Closed form for the commutator of two transvections t_ik(x), t_lj(y)
/// (first = 1+x*e_ik, second = 1+y*e_lj).  Rejects opposite pairs
/// ((l,j) == (k,i)) whose commutator is not a transvection in general.
Mat transvection_comm_closed_form(const Ring& r, unsigned n,
                                  const Transvection& first,
                                  const Transvection& second);

/// Product of the three conjugated triple commutators
/// [a^-1,b,c]^a * [c^-1,a,b]^c * [b^-1,c,a]^b  (left-nested triple
/// commutators); equals the identity for any invertible a, b, c.
Mat hall_witness_product(const GroupElement& a, const GroupElement& b,
                         const GroupElement& c);

enum class FactorKind { transvection, diagonal, block };

struct Factor {
  FactorKind kind;
  Mat mat;
  std::string role;
  std::optional<Transvection> tv;
};

/// Ordered factorization certificate: target == product of factors.
struct FactorWord {
  Mat target;
  std::vector<Factor> factors;

  Mat product() const;
  bool check() const { return product() == target; }
};

/// Auto-tags a factor as transvection / diagonal / block.
Factor make_factor(Mat m, std::string role);

/// Factorization of 1+ab for a^2 = b^2 = 0 with 1+ab invertible:
///   1+ab = (1+b(1-g)) * [1-b, 1+a] * (1+(1-g)a) * (1+ba),  g = (1+ab)^-1.
/// The inverse g is certified two-sided before use; the returned word is
/// verified against its target.
FactorWord square_zero_pair_factorization(const Mat& a, const Mat& b);

/// diag(x, x^-1) as a product of six 2x2 transvections.
FactorWord diag_unit_pair_word(const Ring& r, elem x);

/// Embeds a 2x2 factor word into rows/cols (i,j) of the n-by-n identity.
FactorWord embed_2x2_word(const FactorWord& w, unsigned n, unsigned i,
                          unsigned j);

/// Splits a row unipotent 1 + sum_t u_t e_{l,t} (u_l = 0) into commuting
/// transvection factors t_{l,t}(u_t).
std::vector<Factor> row_unipotent_factors(const Mat& u, unsigned l,
                                          const std::string& role);
std::vector<Factor> col_unipotent_factors(const Mat& u, unsigned l,
                                          const std::string& role);

}  // namespace ringstab
