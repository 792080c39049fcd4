#include "ringstab/stability.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ringstab {

namespace {

bool unit_one_plus(const Ring& r, elem x) {
  return r->is_unit(r->add(r->one(), x));
}

// odometer step over `slots` base-|R| digits; returns false on wraparound
bool step(const Ring& r, std::vector<elem>& digits) {
  std::size_t pos = 0;
  while (pos < digits.size() && ++digits[pos] == r->order())
    digits[pos++] = 0;
  return pos < digits.size();
}

std::vector<elem> additive_closure(const Ring& r,
                                   const std::vector<elem>& seed) {
  std::vector<char> in(r->order(), 0);
  std::vector<elem> work;
  auto admit = [&](elem x) {
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  };
  admit(r->zero());
  for (elem v : seed) admit(v);
  for (std::size_t a = 0; a < work.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b)
      admit(r->add(work[a], work[b]));
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace

AdmissibleSet admissible_coefficients(const Ring& r, unsigned n, const Mat& g,
                                      const Mat& g_inv, unsigned i,
                                      unsigned j) {
  if (i == j || i >= n || j >= n)
    throw RingstabError("admissible_coefficients: need i != j inside range");
  AdmissibleSet out;
  std::vector<elem> col_i(n);
  for (unsigned s = 0; s < n; ++s) col_i[s] = g.at(s, i);

  for (elem cand = 0; cand < r->order(); ++cand) {
    bool admitted = false;
    for (unsigned k = 0; k < n && !admitted; ++k) {
      elem pin = r->mul(cand, g_inv.at(j, k));
      for (unsigned l = 0; l < n && !admitted; ++l) {
        if (k == l && pin != r->zero()) continue;
        std::vector<unsigned> free_pos;
        for (unsigned s = 0; s < n; ++s)
          if (s != k && s != l) free_pos.push_back(s);
        std::vector<elem> x(n, r->zero());
        x[k] = pin;
        x[l] = r->zero();  // k == l only when pin is already zero
        std::vector<elem> digits(free_pos.size(), 0);
        do {
          for (std::size_t t = 0; t < free_pos.size(); ++t)
            x[free_pos[t]] = digits[t];
          elem alpha = r->zero();
          for (unsigned s = 0; s < n; ++s)
            alpha = r->add(alpha, r->mul(x[s], col_i[s]));
          if (unit_one_plus(r, alpha) &&
              unit_one_plus(r, r->sub(alpha, r->mul(x[k], g.at(k, i))))) {
            admitted = true;
            break;
          }
        } while (step(r, digits));
      }
    }
    if (admitted) out.raw.push_back(cand);
  }
  out.members = additive_closure(r, out.raw);
  out.full = out.members.size() == r->order();
  return out;
}

bool is_pair_stable(const Ring& r, unsigned n, const Mat& g, const Mat& g_inv,
                    unsigned i, unsigned j) {
  return admissible_coefficients(r, n, g, g_inv, i, j).full;
}

bool is_element_stable(const Ring& r, unsigned n, const Mat& g,
                       const Mat& g_inv) {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (i != j && !is_pair_stable(r, n, g, g_inv, i, j)) return false;
  return true;
}

namespace {

bool scan_one(const Ring& r, unsigned n, const Mat& g, const Mat& gi,
              StabilityScan& out, const std::string& key) {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!is_pair_stable(r, n, g, gi, i, j)) {
        if (out.all_stable) {
          out.first_failure_key = key;
          out.fail_i = i;
          out.fail_j = j;
        }
        out.all_stable = false;
        return false;
      }
    }
  return true;
}

}  // namespace

StabilityScan scan_element_stability(const GroupEnum& gl) {
  StabilityScan out;
  Mat g(gl.ring, gl.n), gi(gl.ring, gl.n);
  for (std::size_t idx = 0; idx < gl.members.size(); ++idx) {
    gl.codec->decode_into(gl.members[idx], g);
    gl.codec->decode_into(gl.invs[idx], gi);
    ++out.checked;
    scan_one(gl.ring, gl.n, g, gi, out, gl.members[idx]);
  }
  return out;
}

StabilityScan scan_element_stability_sampled(const Ring& r, unsigned n,
                                             std::uint64_t seed,
                                             std::size_t samples) {
  StabilityScan out;
  out.sampled = samples;
  std::mt19937_64 rng(seed);
  MatCodec codec(r, n);
  Mat m(r, n);
  while (out.checked < samples) {
    for (unsigned i = 0; i < n * n; ++i)
      m.data()[i] = elem(rng() % r->order());
    auto ge = try_invert(m);
    if (!ge) continue;
    ++out.checked;
    scan_one(r, n, ge->mat, ge->inv, out, codec.key(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct HalfExpansion {
  std::vector<Factor> factors;  // single transvections; times diag = 1+Uc^2V0
  elem alpha = 0;
};

/// Expands 1 + U c^2 V0 (row V0 = x, x[zero_pos] = 0) as T * d where T is a
/// product of single transvections and d = 1 + alpha c^2 e_{zz}.
HalfExpansion expand_half(const Ring& r, unsigned n,
                          const std::vector<elem>& u,
                          const std::vector<elem>& x, unsigned z, elem c,
                          const std::string& tag) {
  if (x[z] != r->zero())
    throw RingstabError("expand_half: pinned-zero coordinate not zero");
  elem c2 = r->mul(c, c);
  Mat a(r, n), b(r, n);
  for (unsigned s = 0; s < n; ++s) {
    if (s != z) a.set(s, z, r->mul(u[s], c));
    b.set(z, s, r->mul(x[s], c));
  }
  elem alpha = r->zero();
  for (unsigned s = 0; s < n; ++s)
    alpha = r->add(alpha, r->mul(x[s], u[s]));

  Mat id = Mat::identity(r, n);
  Mat ab = mat_mul(a, b);
  auto gamma = try_invert(mat_add(id, ab));
  if (!gamma)
    throw RingstabError("expand_half: 1+ab unexpectedly singular");
  Mat one_minus_gamma = mat_sub(id, gamma->inv);

  HalfExpansion out;
  out.alpha = alpha;
  auto push_row = [&](const Mat& m, const std::string& role) {
    for (Factor& f : row_unipotent_factors(m, z, role))
      out.factors.push_back(std::move(f));
  };
  auto push_col = [&](const Mat& m, const std::string& role) {
    for (Factor& f : col_unipotent_factors(m, z, role))
      out.factors.push_back(std::move(f));
  };
  push_row(mat_add(id, mat_mul(b, one_minus_gamma)), tag + ":1+b(1-g)");
  push_row(mat_sub(id, b), tag + ":1-b");
  push_col(mat_add(id, a), tag + ":1+a");
  push_row(mat_add(id, b), tag + ":1+b");
  push_col(mat_sub(id, a), tag + ":1-a");
  push_col(mat_add(id, mat_mul(one_minus_gamma, a)), tag + ":1+(1-g)a");
  // final row factor 1 + d_z u_z c b, entries (1+alpha c^2) u_z x_t c^2
  elem dval = r->add(r->one(), r->mul(alpha, c2));
  Mat tail(r, n);
  for (unsigned t = 0; t < n; ++t)
    tail.set(z, t, r->mul(dval, r->mul(r->mul(u[z], x[t]), c2)));
  push_row(mat_add(id, tail), tag + ":1+d.u.cb");

  // exact check: product * (1 + alpha c^2 e_zz) == 1 + U c^2 V0
  Mat prod = id;
  for (const Factor& f : out.factors) prod = mat_mul(prod, f.mat);
  Mat d = id;
  d.set(z, z, dval);
  Mat lhs = mat_mul(prod, d);
  Mat rhs = id;
  for (unsigned s = 0; s < n; ++s)
    for (unsigned t = 0; t < n; ++t)
      rhs.set(s, t, r->add(rhs.at(s, t), r->mul(r->mul(u[s], x[t]), c2)));
  if (lhs != rhs)
    throw RingstabError("expand_half: factor word does not reproduce target");
  return out;
}

}  // namespace

namespace {

/// Builds the factorization for one explicit coordinate row x with
/// x[l] == 0 and x[k] == r g^{-1}(j,k); nothing when 1 + alpha c^2 is not a
/// unit.
std::optional<ConjugationDecomposition> decompose_with_row(
    const Ring& rg, unsigned n, const GroupElement& g, unsigned i, unsigned j,
    elem r, elem c, unsigned k, unsigned l, const std::vector<elem>& x) {
  const Mat& G = g.mat;
  const Mat& Gi = g.inv;
  elem c2 = rg->mul(c, c);
  std::vector<elem> u(n);
  for (unsigned s = 0; s < n; ++s) u[s] = G.at(s, i);

  elem alpha = rg->zero();
  for (unsigned s = 0; s < n; ++s)
    alpha = rg->add(alpha, rg->mul(x[s], u[s]));
  if (!unit_one_plus(rg, rg->mul(alpha, c2))) return std::nullopt;

  ConjugationDecomposition out(rg, n);
  out.i = i;
  out.j = j;
  out.k = k;
  out.l = l;
  out.r = r;
  out.c = c;
  out.alpha = alpha;
  out.v0 = x;
  out.variant_ok = unit_one_plus(
      rg, rg->mul(rg->sub(alpha, rg->mul(x[k], G.at(k, i))), c2));

  // first half around l
  HalfExpansion first = expand_half(rg, n, u, x, l, c, "V0");
  // second half around k with row -W, w_s = r g^{-1}(j,s) - x_s
  std::vector<elem> neg_w(n);
  for (unsigned s = 0; s < n; ++s)
    neg_w[s] = rg->sub(x[s], rg->mul(r, Gi.at(j, s)));
  HalfExpansion second = expand_half(rg, n, u, neg_w, k, c, "-W");
  if (second.alpha != alpha)
    throw RingstabError("decompose: half expansions disagree on alpha");

  elem dval = rg->add(rg->one(), rg->mul(alpha, c2));
  elem dinv = rg->inv(dval);
  // d_l d_k^{-1}: trivial when the pinned coordinates coincide
  auto scale = [&](unsigned p) {
    if (l == k) return rg->one();
    return p == l ? dval : (p == k ? dinv : rg->one());
  };
  auto scale_inv = [&](unsigned p) {
    if (l == k) return rg->one();
    return p == l ? dinv : (p == k ? dval : rg->one());
  };

  FactorWord word{conj(Mat::transvection(rg, n, i, j, rg->mul(r, c2)), g),
                  {}};
  for (Factor& f : first.factors) word.factors.push_back(std::move(f));
  // (T_k(-W)^{-1}) conjugated by d_l d_k^{-1}: reversed inverted
  // transvections, entries rescaled by the diagonal
  for (auto it = second.factors.rbegin(); it != second.factors.rend(); ++it) {
    if (!it->tv)
      throw RingstabError("decompose: half factor is not a transvection");
    const Transvection& tv = *it->tv;
    elem entry =
        rg->mul(rg->mul(scale(tv.i), rg->neg(tv.r)), scale_inv(tv.j));
    if (entry == rg->zero()) continue;
    word.factors.push_back(make_factor(
        Mat::transvection(rg, n, tv.i, tv.j, entry), it->role + ":inv^d"));
  }
  if (l != k && dval != rg->one()) {
    FactorWord dw = embed_2x2_word(diag_unit_pair_word(rg, dval), n, l, k);
    for (Factor& f : dw.factors) word.factors.push_back(std::move(f));
  }
  out.word = std::move(word);
  if (!out.word.check())
    throw RingstabError("decompose: assembled word missed its target");
  return out;
}

void require_central(const Ring& rg, elem c) {
  for (elem s = 0; s < rg->order(); ++s)
    if (rg->mul(c, s) != rg->mul(s, c))
      throw RingstabError("decompose: c is not central");
}

}  // namespace

std::optional<ConjugationDecomposition> decompose_conjugated_transvection(
    const Ring& rg, unsigned n, const GroupElement& g, unsigned i, unsigned j,
    elem r, elem c) {
  if (i == j || i >= n || j >= n)
    throw RingstabError("decompose: need i != j inside range");
  require_central(rg, c);

  const Mat& Gi = g.inv;
  // deterministic search for an admissible coordinate row
  for (unsigned k = 0; k < n; ++k) {
    elem pin = rg->mul(r, Gi.at(j, k));
    for (unsigned l = 0; l < n; ++l) {
      if (k == l && pin != rg->zero()) continue;
      std::vector<unsigned> free_pos;
      for (unsigned s = 0; s < n; ++s)
        if (s != k && s != l) free_pos.push_back(s);
      std::vector<elem> x(n, rg->zero());
      x[k] = pin;
      x[l] = rg->zero();
      std::vector<elem> digits(free_pos.size(), 0);
      do {
        for (std::size_t t = 0; t < free_pos.size(); ++t)
          x[free_pos[t]] = digits[t];
        if (auto out = decompose_with_row(rg, n, g, i, j, r, c, k, l, x))
          return out;
      } while (step(rg, digits));
    }
  }
  return std::nullopt;
}

std::optional<CentralPairDecomposition> decompose_central_pair(
    const Ring& rg, unsigned n, const GroupElement& g, const GroupElement& h,
    unsigned i, unsigned j, elem r, elem c) {
  if (i == j || i >= n || j >= n)
    throw RingstabError("decompose: need i != j inside range");
  require_central(rg, c);

  GroupElement gp = ge_mul(g, ge_inverse(h));  // g' = g h^-1
  elem c2 = rg->mul(c, c);

  for (unsigned k = 0; k < n; ++k) {
    elem pin = rg->mul(r, g.inv.at(j, k));
    elem pin2 = rg->mul(r, gp.inv.at(j, k));
    for (unsigned l = 0; l < n; ++l) {
      if (k == l && (pin != rg->zero() || pin2 != rg->zero())) continue;
      std::vector<unsigned> free_pos;
      for (unsigned s = 0; s < n; ++s)
        if (s != k && s != l) free_pos.push_back(s);
      std::vector<elem> x(n, rg->zero()), x2(n, rg->zero());
      x[k] = pin;
      x2[k] = pin2;
      x[l] = x2[l] = rg->zero();
      std::vector<elem> digits(free_pos.size(), 0);
      do {
        for (std::size_t t = 0; t < free_pos.size(); ++t)
          x[free_pos[t]] = x2[free_pos[t]] = digits[t];
        auto a = decompose_with_row(rg, n, g, i, j, r, c, k, l, x);
        if (!a || !a->variant_ok) continue;
        auto b = decompose_with_row(rg, n, gp, i, j, r, c, k, l, x2);
        if (!b || !b->variant_ok) continue;

        CentralPairDecomposition out(rg, n);
        out.alpha_diff = rg->sub(a->alpha, b->alpha);
        out.first = std::move(*a);
        out.second = std::move(*b);
        GroupElement t = ge_transvection(rg, n, i, j, rg->mul(r, c2));
        out.commutator = conj(comm(h, t), gp);
        Mat expected =
            mat_mul(out.first.word.target,
                    conj(Mat::transvection(rg, n, i, j,
                                           rg->neg(rg->mul(r, c2))),
                         gp));
        out.product_identity = out.commutator == expected;
        return out;
      } while (step(rg, digits));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<PivotReduction> radical_pivot_reduction(const Ring& r,
                                                      unsigned n,
                                                      const GroupElement& g,
                                                      unsigned i, unsigned j) {
  if (i >= n || j >= n) throw RingstabError("pivot reduction: bad indices");
  const Mat& G = g.mat;
  const Mat& Gi = g.inv;
  elem gij = G.at(i, j);
  elem wi = Gi.at(j, i);
  elem denom = r->add(r->one(), r->sub(gij, r->mul(wi, gij)));
  if (!r->is_unit(denom)) return std::nullopt;

  PivotReduction out(r, n);
  out.i = i;
  out.j = j;
  out.alpha = r->neg(r->inv(denom));

  Mat id = Mat::identity(r, n);
  auto build = [&](FactorWord& w, auto&& entries) {
    Mat prod = id;
    for (auto [a, b, v] : entries()) {
      if (v == r->zero()) continue;
      Mat t = Mat::transvection(r, n, a, b, v);
      w.factors.push_back(make_factor(t, "t"));
      prod = mat_mul(prod, t);
    }
    w.target = prod;
    return prod;
  };
  using Entry = std::tuple<unsigned, unsigned, elem>;

  Mat e = build(out.e_word, [&] {
    std::vector<Entry> v;
    for (unsigned s = 0; s < n; ++s)
      if (s != i) v.push_back({i, s, Gi.at(j, s)});
    return v;
  });
  Mat e1 = build(out.e1_word, [&] {
    std::vector<Entry> v;
    for (unsigned s = 0; s < n; ++s)
      if (s != i) v.push_back({s, i, r->mul(G.at(s, j), out.alpha)});
    return v;
  });
  elem lead = r->mul(out.alpha, r->sub(r->one(), wi));
  Mat e2 = build(out.e2_word, [&] {
    std::vector<Entry> v;
    for (unsigned t = 0; t < n; ++t)
      if (t != j) v.push_back({j, t, r->mul(lead, G.at(i, t))});
    return v;
  });

  out.reduced = mat_mul(mat_mul(e1, mat_mul(e, G)), e2);
  out.cleared = true;
  for (unsigned s = 0; s < n && out.cleared; ++s) {
    if (s != j && out.reduced.at(i, s) != r->zero()) out.cleared = false;
    if (s != i && out.reduced.at(s, j) != r->zero()) out.cleared = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_unimodular(const Ring& r, const std::vector<elem>& v) {
  if (v.empty()) return false;
  std::vector<elem> seed;
  for (elem vi : v)
    for (elem t = 0; t < r->order(); ++t) seed.push_back(r->mul(t, vi));
  std::vector<elem> span = additive_closure(r, seed);
  return std::binary_search(span.begin(), span.end(), r->one());
}

namespace {

bool shortened_ok(const Ring& r, unsigned n, const std::vector<elem>& v,
                  std::map<std::vector<elem>, bool>& memo) {
  std::vector<elem> s(n - 1, 0);
  std::vector<elem> w(n - 1);
  do {
    for (unsigned p = 1; p < n; ++p)
      w[p - 1] = r->add(v[p], r->mul(s[p - 1], v[0]));
    auto it = memo.find(w);
    if (it == memo.end()) it = memo.emplace(w, is_unimodular(r, w)).first;
    if (it->second) return true;
  } while (step(r, s));
  return false;
}

}  // namespace

std::optional<std::vector<elem>> stable_rank_counterexample(const Ring& r,
                                                            unsigned n) {
  if (n < 2) throw RingstabError("stable rank: need n >= 2");
  std::map<std::vector<elem>, bool> memo;
  std::vector<elem> v(n, 0);
  do {
    if (!is_unimodular(r, v)) continue;
    if (!shortened_ok(r, n, v, memo)) return v;
  } while (step(r, v));
  return std::nullopt;
}

bool stable_rank_condition(const Ring& r, unsigned n) {
  return !stable_rank_counterexample(r, n).has_value();
}

std::optional<PairCompletion> complete_unimodular_pair(const Ring& r, elem v,
                                                       elem e) {
  // witness of unimodularity: alpha v + beta e = 1
  for (elem alpha = 0; alpha < r->order(); ++alpha)
    for (elem beta = 0; beta < r->order(); ++beta) {
      if (r->add(r->mul(alpha, v), r->mul(beta, e)) != r->one()) continue;
      if (r->mul(e, e) == e) {
        PairCompletion out;
        out.s = r->mul(r->sub(r->one(), e), alpha);
        out.unit = r->add(e, r->mul(out.s, v));
        out.via_idempotent = true;
        if (r->is_unit(out.unit)) return out;
      }
      // fall back to direct search
      for (elem s = 0; s < r->order(); ++s) {
        elem u = r->add(e, r->mul(s, v));
        if (r->is_unit(u)) return PairCompletion{s, u, false};
      }
      return std::nullopt;  // unimodular pair with no completion
    }
  return std::nullopt;  // pair is not unimodular
}

std::optional<LastColumnReduction> reduce_last_column(const Ring& r,
                                                      unsigned n,
                                                      const GroupElement& g) {
  if (n < 2) throw RingstabError("column reduction: need n >= 2");
  const Mat& G = g.mat;
  elem head = G.at(0, n - 1);
  std::vector<elem> k(n, 0);  // k[p] used for rows 1..n-1
  std::vector<elem> shortened(n - 1);
  std::map<std::vector<elem>, bool> memo;
  std::vector<elem> digits(n - 1, 0);
  bool found = false;
  do {
    for (unsigned p = 1; p < n; ++p) {
      k[p] = digits[p - 1];
      shortened[p - 1] = r->add(G.at(p, n - 1), r->mul(k[p], head));
    }
    auto it = memo.find(shortened);
    if (it == memo.end())
      it = memo.emplace(shortened, is_unimodular(r, shortened)).first;
    if (it->second) {
      found = true;
      break;
    }
  } while (step(r, digits));
  if (!found) return std::nullopt;

  // witness sum t_p * shortened_p = 1, then s_p = -head * t_p
  std::vector<elem> t(n - 1, 0);
  bool have_witness = false;
  do {
    elem sum = r->zero();
    for (unsigned p = 0; p + 1 < n; ++p)
      sum = r->add(sum, r->mul(t[p], shortened[p]));
    if (sum == r->one()) {
      have_witness = true;
      break;
    }
  } while (step(r, t));
  if (!have_witness)
    throw RingstabError("column reduction: unimodular vector lost its witness");

  LastColumnReduction out(r, n);
  for (unsigned p = 1; p < n; ++p) {
    out.k_coeffs.push_back(k[p]);
    out.s_coeffs.push_back(r->neg(r->mul(head, t[p - 1])));
  }
  GroupElement e1 = ge_identity(r, n), e2 = ge_identity(r, n);
  for (unsigned p = 1; p < n; ++p) {
    if (k[p] != r->zero())
      e1 = ge_mul(e1, ge_transvection(r, n, p, 0, k[p]));
    if (out.s_coeffs[p - 1] != r->zero())
      e2 = ge_mul(e2, ge_transvection(r, n, 0, p, out.s_coeffs[p - 1]));
  }
  GroupElement h = ge_conj(g, e1);
  out.e1 = e1;
  out.e2 = e2;
  out.g1 = mat_mul(e2.mat, h.mat);
  out.ok = out.g1.at(0, n - 1) == r->zero();
  if (n >= 3) {
    GroupElement tnv = ge_transvection(r, n, n - 1, 1, r->one());
    Mat g2 = mat_mul(mat_mul(e2.mat, comm(h, tnv)), e2.inv);
    out.g2 = g2;
    out.ok = out.ok && g2.at(0, n - 1) == r->zero();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<elem> regular_partner(const Ring& r, elem a) {
  for (elem p = 0; p < r->order(); ++p)
    if (r->mul(r->mul(a, p), a) == a) return p;
  return std::nullopt;
}

bool is_von_neumann_regular(const Ring& r) {
  for (elem a = 0; a < r->order(); ++a)
    if (!regular_partner(r, a)) return false;
  return true;
}

std::optional<elem> nearly_local_partner(const Ring& r, elem a) {
  for (elem p = 0; p < r->order(); ++p) {
    elem left = r->add(r->one(), r->mul(p, a));
    elem right = r->add(r->sub(r->one(), p), r->mul(a, p));
    if (r->mul(left, right) == r->zero()) return p;
  }
  return std::nullopt;
}

bool is_nearly_local(const Ring& r) {
  for (elem a = 0; a < r->order(); ++a)
    if (!nearly_local_partner(r, a)) return false;
  return true;
}

std::optional<PowerIdempotent> power_idempotent(const Ring& r, elem a) {
  // closed subring generated by {1, a}
  std::vector<char> in(r->order(), 0);
  std::vector<elem> sub;
  auto admit = [&](elem x) {
    if (!in[x]) {
      in[x] = 1;
      sub.push_back(x);
    }
  };
  admit(r->zero());
  admit(r->one());
  admit(a);
  for (std::size_t p = 0; p < sub.size(); ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      admit(r->add(sub[p], sub[q]));
      admit(r->mul(sub[p], sub[q]));
      admit(r->mul(sub[q], sub[p]));
    }
  std::sort(sub.begin(), sub.end());

  auto power = [&](elem base, unsigned m) {
    elem acc = r->one();
    for (unsigned t = 0; t < m; ++t) acc = r->mul(acc, base);
    return acc;
  };
  elem am = a;
  for (unsigned m = 1; m <= r->order(); ++m) {
    elem am1 = r->mul(am, a);
    for (elem p : sub) {
      if (r->mul(am1, p) != am) continue;
      elem e = r->mul(am, power(p, m));
      if (r->mul(e, e) == e && r->mul(e, am) == am)
        return PowerIdempotent{m, p, e};
    }
    am = am1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CommutatorChainResult commutator_chain(const SubgroupClosure& sources,
                                       const SubgroupClosure& target,
                                       unsigned max_depth, std::size_t cap) {
  CommutatorChainResult out;
  const Ring& r = sources.ring;
  unsigned n = sources.n;
  std::vector<GroupElement> tgens = transvection_gens(r, n);
  SubgroupClosure hold = sources;  // level 0
  for (unsigned depth = 1; depth <= max_depth; ++depth) {
    SubgroupClosure next =
        commutator_subgroup(r, n, view_of(hold), tgens, cap);
    out.chain_sizes.push_back(next.size());
    if (!next.complete) {
      out.stalled = true;
      break;
    }
    if (!is_subset(target, next)) out.target_contained = false;
    if (set_equal(next, target)) {
      out.matched_at = depth;
      break;
    }
    if (depth > 1 && set_equal(next, hold)) {
      out.stalled = true;  // fixed point reached away from the target
      break;
    }
    hold = std::move(next);
  }
  return out;
}

bool normal_under_group(const GroupEnum& gl, const SubgroupClosure& sub,
                        const std::vector<GroupElement>& sub_gens) {
  Mat m(gl.ring, gl.n), mi(gl.ring, gl.n);
  Mat t1(gl.ring, gl.n), t2(gl.ring, gl.n);
  for (std::size_t idx = 0; idx < gl.members.size(); ++idx) {
    gl.codec->decode_into(gl.members[idx], m);
    gl.codec->decode_into(gl.invs[idx], mi);
    for (const GroupElement& t : sub_gens) {
      mul_into(*gl.ring, gl.n, m.data(), t.mat.data(), t1.data());
      mul_into(*gl.ring, gl.n, t1.data(), mi.data(), t2.data());
      if (!sub.set->contains(t2.data())) return false;
    }
  }
  return true;
}

}  // namespace ringstab
