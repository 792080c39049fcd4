#pragma once

#include <optional>

#include "ringstab/subgroup.hpp"

namespace ringstab {

// ---------------------------------------------------------------------------
// admissible coefficient subgroup attached to an invertible matrix
// ---------------------------------------------------------------------------

/// For fixed (i, j), i != j, the additive subgroup of coefficients r for
/// which some coordinate row x (with x_l = 0 and x_k pinned to
/// r * g^{-1}(j,k)) keeps both 1 + alpha and 1 + alpha - x_k g(k,i)
/// invertible, alpha = sum_s x_s g(s,i).  Ranges over all ordered pin pairs
/// (k, l) and all free coordinates.
struct AdmissibleSet {
  std::vector<elem> raw;      // coefficients admitted directly, sorted
  std::vector<elem> members;  // additive closure of raw, sorted
  bool full = false;          // members == whole ring
};

AdmissibleSet admissible_coefficients(const Ring& r, unsigned n, const Mat& g,
                                      const Mat& g_inv, unsigned i,
                                      unsigned j);

bool is_pair_stable(const Ring& r, unsigned n, const Mat& g, const Mat& g_inv,
                    unsigned i, unsigned j);

/// pair-stable for every ordered pair (i, j), i != j
bool is_element_stable(const Ring& r, unsigned n, const Mat& g,
                       const Mat& g_inv);

struct StabilityScan {
  bool all_stable = true;
  std::size_t checked = 0;
  std::size_t sampled = 0;  // 0 when the scan was exhaustive
  std::string first_failure_key;
  unsigned fail_i = 0, fail_j = 0;
};

StabilityScan scan_element_stability(const GroupEnum& gl);
StabilityScan scan_element_stability_sampled(const Ring& r, unsigned n,
                                             std::uint64_t seed,
                                             std::size_t samples);

// ---------------------------------------------------------------------------
// explicit factorization of a conjugated transvection
// ---------------------------------------------------------------------------

/// t_ij(r c^2)^g written as a product of certified transvections (plus an
/// embedded diagonal-pair word when the two pinned coordinates differ).
struct ConjugationDecomposition {
  unsigned i = 0, j = 0;
  unsigned k = 0, l = 0;       // pinned coordinate / zero coordinate
  elem r = 0, c = 0, alpha = 0;
  std::vector<elem> v0;        // chosen coordinate row x_1..x_n
  bool variant_ok = false;     // 1 + (alpha - x_k g(k,i)) c^2 also a unit
  FactorWord word;             // multiplies to t_ij(r c^2)^g

  ConjugationDecomposition(const Ring& rg, unsigned n)
      : word{Mat::identity(rg, n), {}} {}
};

/// Searches deterministically (k, l ascending, free coordinates by odometer)
/// for an admissible row and emits the factorization; c must be central.
/// Returns nothing when no row keeps the required elements invertible.
std::optional<ConjugationDecomposition> decompose_conjugated_transvection(
    const Ring& rg, unsigned n, const GroupElement& g, unsigned i, unsigned j,
    elem r, elem c);

/// Joint decomposition of t_ij(r c^2)^g and t_ij(r c^2)^{g'} for g' = g h^-1,
/// sharing the witness indices (k, l) and the free coordinates (row entries
/// then differ only through the pinned coordinate, which follows each
/// inverse).  Both rows must satisfy both invertibility conditions
/// (variant_ok on each side).  The commutator field holds
/// [h, t_ij(r c^2)]^{g'} = g' h t h^-1 t^-1 g'^-1, and product_identity
/// records the verified identity  commutator == target * target'^-1.
struct CentralPairDecomposition {
  ConjugationDecomposition first, second;  // for g and for g' = g h^-1
  Mat commutator;
  bool product_identity = false;
  elem alpha_diff = 0;  // alpha - alpha'

  CentralPairDecomposition(const Ring& rg, unsigned n)
      : first(rg, n), second(rg, n), commutator(rg, n) {}
};

std::optional<CentralPairDecomposition> decompose_central_pair(
    const Ring& rg, unsigned n, const GroupElement& g, const GroupElement& h,
    unsigned i, unsigned j, elem r, elem c);

// ---------------------------------------------------------------------------
// pivot cleanup for a matrix with a radical entry
// ---------------------------------------------------------------------------

/// Clears row i and column j of g (except the pivot position (i, j)) by
/// explicit transvection words: reduced = left * g * right with
/// left = e1 * e and right = e2.
struct PivotReduction {
  unsigned i = 0, j = 0;
  elem alpha = 0;              // -(1 + g_ij - g^{-1}_ji g_ij)^{-1}
  FactorWord e_word, e1_word, e2_word;
  Mat reduced;
  bool cleared = false;        // row/column claim verified

  PivotReduction(const Ring& r, unsigned n)
      : e_word{Mat::identity(r, n), {}},
        e1_word{Mat::identity(r, n), {}},
        e2_word{Mat::identity(r, n), {}},
        reduced(r, n) {}
};

/// Fails (returns nothing) when 1 + g_ij - g^{-1}_ji g_ij is not a unit;
/// that element is automatically a unit whenever g_ij lies in the radical.
std::optional<PivotReduction> radical_pivot_reduction(const Ring& r,
                                                      unsigned n,
                                                      const GroupElement& g,
                                                      unsigned i, unsigned j);

// ---------------------------------------------------------------------------
// unimodular vectors and rank stability
// ---------------------------------------------------------------------------

/// left unimodularity: 1 lies in the additive span of R v_1, ..., R v_m
bool is_unimodular(const Ring& r, const std::vector<elem>& v);

/// every unimodular length-n vector shortens: some s_2..s_n make
/// (v_2 + s_2 v_1, ..., v_n + s_n v_1) unimodular
bool stable_rank_condition(const Ring& r, unsigned n);

/// first unimodular length-n vector (odometer order) with no shortening,
/// if one exists
std::optional<std::vector<elem>> stable_rank_counterexample(const Ring& r,
                                                            unsigned n);

/// completion of a unimodular pair (v, e): s with e + s v a unit
struct PairCompletion {
  elem s = 0;
  elem unit = 0;
  bool via_idempotent = false;  // s = (1-e) alpha from a unimodular witness
};

std::optional<PairCompletion> complete_unimodular_pair(const Ring& r, elem v,
                                                       elem e);

/// last-column cleanup of an invertible matrix through rank stability:
/// g1 = e2 * (e1 g e1^{-1}) has zero (1, n) entry, and so does
/// g2 = (e1 g e1^{-1}) t (e1 g e1^{-1})^{-1} t^{-1} conjugated by e2,
/// t = t_n2(1).
struct LastColumnReduction {
  std::vector<elem> k_coeffs;  // index p holds k_{p+1}; entry 0 unused
  std::vector<elem> s_coeffs;  // index p holds s_{p+1}; each in g_1n R
  GroupElement e1, e2;
  Mat g1, g2;
  bool ok = false;
  LastColumnReduction(const Ring& r, unsigned n)
      : e1(ge_identity(r, n)), e2(ge_identity(r, n)), g1(r, n), g2(r, n) {}
};

std::optional<LastColumnReduction> reduce_last_column(const Ring& r,
                                                      unsigned n,
                                                      const GroupElement& g);

// ---------------------------------------------------------------------------
// elementwise ring predicates
// ---------------------------------------------------------------------------

/// partner a' with a a' a == a (smallest code)
std::optional<elem> regular_partner(const Ring& r, elem a);
bool is_von_neumann_regular(const Ring& r);

/// partner a' with (1 + a'a)(1 - a' + aa') == 0 (smallest code)
std::optional<elem> nearly_local_partner(const Ring& r, elem a);
bool is_nearly_local(const Ring& r);

/// smallest m >= 1 with a^m = a^{m+1} a' for some a' in the closed subring
/// generated by {1, a}; e = a^m a'^m is the certified idempotent with
/// e a^m = a^m
struct PowerIdempotent {
  unsigned m = 0;
  elem partner = 0;
  elem idempotent = 0;
};

std::optional<PowerIdempotent> power_idempotent(const Ring& r, elem a);

// ---------------------------------------------------------------------------
// iterated commutator chain against a relative elementary subgroup
// ---------------------------------------------------------------------------

struct CommutatorChainResult {
  std::vector<std::size_t> chain_sizes;  // |[S,E]|, |[[S,E],E]|, ...
  unsigned matched_at = 0;   // first depth equal to the target, 0 = none
  bool target_contained = true;  // target inside every computed level
  bool stalled = false;      // chain repeated without reaching the target
};

/// Repeatedly commutates sources with the full elementary generator set and
/// compares each level against target (expected: the relative elementary
/// subgroup of the same ideal).
CommutatorChainResult commutator_chain(const SubgroupClosure& sources,
                                       const SubgroupClosure& target,
                                       unsigned max_depth, std::size_t cap);

/// every group element conjugates every generator of sub back into sub
bool normal_under_group(const GroupEnum& gl, const SubgroupClosure& sub,
                        const std::vector<GroupElement>& sub_gens);

}  // namespace ringstab
