#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "ringstab/mat.hpp"

namespace ringstab {

/// Thrown when an enumeration or closure would exceed its configured cap.
struct CapExceeded : RingstabError {
  using RingstabError::RingstabError;
};

/// Fixed-width byte encoding of matrices over one (ring, n) pair; also packs
/// small matrices into bit codes for dense membership bitmaps.
class MatCodec {
public:
  MatCodec(Ring r, unsigned n);

  const Ring& ring() const { return ring_; }
  unsigned dim() const { return n_; }
  std::string key(const elem* entries) const;
  std::string key(const Mat& m) const { return key(m.data()); }
  Mat decode(const std::string& k) const;
  void decode_into(const std::string& k, Mat& out) const;

  unsigned total_bits() const { return total_bits_; }
  bool can_pack() const { return total_bits_ <= 64; }
  std::uint64_t pack(const elem* entries) const;

private:
  Ring ring_;
  unsigned n_, count_, bytes_per_, bits_per_, total_bits_;
};

/// Matrix membership set: dense bitmap over packed codes when the code space
/// is small, hash set of byte keys otherwise.
class MatSet {
public:
  static constexpr unsigned default_dense_bits = 28;

  explicit MatSet(std::shared_ptr<const MatCodec> codec,
                  unsigned dense_bits_cap = default_dense_bits);

  bool insert(const elem* entries);
  bool contains(const elem* entries) const;
  bool contains(const Mat& m) const { return contains(m.data()); }
  std::size_t size() const { return count_; }
  const MatCodec& codec() const { return *codec_; }

private:
  std::shared_ptr<const MatCodec> codec_;
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::string> keys_;
  std::size_t count_ = 0;
};

/// Enumerated subgroup: insertion-ordered member keys (identity first) plus a
/// membership set.  complete=false means a cap stopped the closure; any
/// downstream certifier must reject such a result.
struct SubgroupClosure {
  Ring ring;
  unsigned n = 0;
  std::vector<GroupElement> generators;
  std::vector<std::string> members;
  std::vector<std::string> member_invs;  // parallel to members; may be empty
  std::shared_ptr<MatSet> set;
  std::shared_ptr<const MatCodec> codec;
  bool complete = true;
  std::size_t cap = 0;

  std::size_t size() const { return members.size(); }
  bool contains(const Mat& m) const { return set->contains(m); }
  Mat member(std::size_t i) const { return codec->decode(members[i]); }
  Mat member_inv(std::size_t i) const { return codec->decode(member_invs[i]); }
  bool tracks_inverses() const { return !member_invs.empty(); }
  /// Keys in canonical (bytewise = numeric row-major) order, for export.
  std::vector<std::string> sorted_keys() const;
};

bool set_equal(const SubgroupClosure& a, const SubgroupClosure& b);
bool is_subset(const SubgroupClosure& a, const SubgroupClosure& b);

constexpr std::size_t default_closure_cap = std::size_t(1) << 22;

/// BFS closure of the generated subgroup. Throws nothing on cap overflow:
/// returns complete=false instead.
SubgroupClosure closure_of(const Ring& r, unsigned n,
                           const std::vector<GroupElement>& gens,
                           std::size_t cap = default_closure_cap,
                           bool track_inv = false);

/// All transvections 1 + v*e_ij, v != 0, as certified group elements.
std::vector<GroupElement> transvection_gens(const Ring& r, unsigned n);
/// Transvections with parameter restricted to an ideal (excluding 0).
std::vector<GroupElement> transvection_gens(const Ring& r, unsigned n,
                                            const Ideal& ideal);

/// E(n,R): subgroup generated by all transvections.
SubgroupClosure elementary_group(const Ring& r, unsigned n,
                                 std::size_t cap = default_closure_cap);

/// E(n,I) as the normal closure of the ideal transvections inside E(n,R),
/// computed as a conjugation-stable fixed point (conjugating the generator
/// list by the elementary generators until stable).
SubgroupClosure relative_elementary_normal_closure(
    const Ring& r, unsigned n, const Ideal& ideal,
    std::size_t cap = default_closure_cap);

/// E(n,I) from the conjugated generator family
/// t_ji(v) t_ij(a) t_ji(-v), a in I\{0}, v in R, over all ordered pairs.
SubgroupClosure relative_elementary_conjugated(
    const Ring& r, unsigned n, const Ideal& ideal,
    std::size_t cap = default_closure_cap);

/// Full enumeration of the invertible n-by-n matrices, odometer order, with
/// certified inverses.  Throws CapExceeded if |R|^(n^2) > candidate_cap.
struct GroupEnum {
  Ring ring;
  unsigned n = 0;
  std::shared_ptr<const MatCodec> codec;
  std::shared_ptr<MatSet> set;
  std::vector<std::string> members, invs;

  std::size_t size() const { return members.size(); }
  Mat member(std::size_t i) const { return codec->decode(members[i]); }
  Mat member_inv(std::size_t i) const { return codec->decode(invs[i]); }
  bool contains(const Mat& m) const { return set->contains(m); }
};

GroupEnum enumerate_invertibles(const Ring& r, unsigned n,
                                std::size_t candidate_cap = default_closure_cap);

/// Exact center of the enumerated group: candidates are first filtered by
/// commutation with every transvection, then checked against every member.
/// Returns sorted keys.
std::vector<std::string> group_center_keys(const GroupEnum& g);

/// Membership tests for the congruence subgroups of one ideal, backed by the
/// quotient ring: kernel = matrices reducing to the identity mod I, center
/// preimage = matrices reducing into the center of the invertible group of
/// the quotient (computed by brute-force centralizer, not assumed scalar).
class CongruenceTester {
public:
  CongruenceTester(Ring r, unsigned n, Ideal ideal,
                   std::size_t enum_cap = default_closure_cap);

  const Ideal& ideal() const { return ideal_; }
  bool in_kernel(const Mat& g) const;
  bool in_center_preimage(const Mat& g) const;

private:
  Ring ring_;
  unsigned n_;
  Ideal ideal_;
  bool full_ = false;  // I = R: every invertible matrix passes both tests
  QuotientRing q_;
  std::shared_ptr<const MatCodec> qcodec_;
  std::unordered_set<std::string> qcenter_;
};

/// C_I and C(n,I) materialized as explicit subgroups by filtering the full
/// enumeration through a tester.
struct CongruencePair {
  Ideal ideal;
  SubgroupClosure kernel;       // C_I
  SubgroupClosure center_pre;   // C(n,I)
};

CongruencePair congruence_pair(const GroupEnum& g, const CongruenceTester& t);

/// View of an element list with inverses (sources for commutators and
/// conjugation), without copying.
struct ElementListView {
  const MatCodec* codec = nullptr;
  const std::vector<std::string>* keys = nullptr;
  const std::vector<std::string>* inv_keys = nullptr;

  std::size_t size() const { return keys ? keys->size() : 0; }
};

ElementListView view_of(const SubgroupClosure& s);
ElementListView view_of(const GroupEnum& g);

/// Subgroup generated by all commutators [a,b], a from sources, b from
/// b_gens, stabilized under conjugation by both source sets (fixed point),
/// so the result is the true commutator subgroup generated by the inputs.
SubgroupClosure commutator_subgroup(const Ring& r, unsigned n,
                                    const ElementListView& a_sources,
                                    const std::vector<GroupElement>& b_gens,
                                    std::size_t cap = default_closure_cap);

/// Invariant-closure probe over every invertible matrix: for each g outside
/// the center, build the smallest subgroup containing g invariant under
/// conjugation by the elementary generators, stopping at the first
/// non-identity transvection.  Verdicts are constant on conjugation orbits,
/// so the probe deduplicates by orbit while covering every element.
struct ProbeReport {
  std::size_t group_size = 0;
  std::size_t orbit_count = 0;
  std::size_t central_count = 0;
  std::size_t transvection_count = 0;
  std::size_t counterexample_count = 0;
  bool sampled = false;
  std::size_t sample_size = 0;
  bool incomplete = false;  // some closure hit its cap: result unverified
  std::vector<std::string> counterexample_keys;
  /// transvection-free closures (member key lists), inputs for the
  /// invariant-subgroup lemma checks
  std::vector<std::vector<std::string>> quiet_closures;

  bool partially_normal() const {
    return counterexample_keys.empty() && !incomplete;
  }
};

ProbeReport partial_normality_probe(const GroupEnum& g,
                                    std::size_t closure_cap = default_closure_cap);
/// Convenience wrapper: enumerates invertibles if feasible, otherwise probes
/// a seeded sample of invertible matrices (sampling recorded in the report).
ProbeReport partial_normality_probe(const Ring& r, unsigned n,
                                    std::size_t enum_cap = default_closure_cap,
                                    std::size_t closure_cap =
                                        default_closure_cap,
                                    std::uint64_t seed = 0,
                                    std::size_t sample_target = 64);

/// Conclusion checks on every transvection-free invariant closure: zero
/// divisor entries force congruence membership, unimodular-relation rows
/// force congruence membership, one-sided invertible entries and standard
/// column splittings force centrality.
struct LemmaCheckViolation {
  std::string check;
  std::string witness;
};

struct LemmaSuiteReport {
  std::size_t closures_checked = 0;
  std::size_t elements_checked = 0;
  std::size_t checks_run = 0;
  std::vector<LemmaCheckViolation> violations;

  bool ok() const { return violations.empty(); }
};

LemmaSuiteReport invariant_subgroup_checks(
    const GroupEnum& g, const std::vector<std::vector<std::string>>& quiet,
    std::size_t enum_cap = default_closure_cap);

}  // namespace ringstab
