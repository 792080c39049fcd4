#include "ringstab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

#include "ringstab/stability.hpp"

namespace ringstab {

namespace {

constexpr std::size_t kWitnessCap = 8;

std::uint64_t mix_seed(std::uint64_t base, const std::string& tag) {
  std::uint64_t h = base ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return h;
}

/// Deterministic RNG wrapper; uses raw engine output so results do not
/// depend on the standard library's distribution implementations.
struct Rand {
  std::mt19937_64 eng;
  explicit Rand(std::uint64_t s) : eng(s) {}
  unsigned below(unsigned m) { return static_cast<unsigned>(eng() % m); }
  elem element(const Ring& r) { return static_cast<elem>(below(r->order())); }
  elem among(const std::vector<elem>& v) {
    return v[below(static_cast<unsigned>(v.size()))];
  }
};

Mat random_mat(Rand& rng, const Ring& r, unsigned n) {
  Mat m(r, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) m.set(i, j, rng.element(r));
  return m;
}

std::optional<GroupElement> random_invertible(Rand& rng, const Ring& r,
                                              unsigned n, unsigned tries) {
  for (unsigned t = 0; t < tries; ++t) {
    if (auto ge = try_invert(random_mat(rng, r, n))) return ge;
  }
  return std::nullopt;
}

/// 1 + (matrix over I), invertible.  Always succeeds quickly when I lies in
/// the radical; otherwise relies on rejection.
std::optional<GroupElement> random_kernel_element(Rand& rng, const Ring& r,
                                                 unsigned n, const Ideal& I,
                                                 unsigned tries) {
  for (unsigned t = 0; t < tries; ++t) {
    Mat m = Mat::identity(r, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        m.set(i, j, r->add(m.at(i, j), rng.among(I.members)));
    if (auto ge = try_invert(m)) return ge;
  }
  return std::nullopt;
}

std::string ideal_label(const Ideal& I) {
  if (I.is_zero()) return "0";
  if (I.is_full()) return "R";
  return "(" + elem_list_str(I.generators) + ")";
}

std::string num(std::size_t v) { return std::to_string(v); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

void add_witness(CheckResult& c, const Mat& m) {
  if (c.witnesses.size() < kWitnessCap) c.witnesses.push_back(encode_matrix(m));
}

void set_fail(CheckResult& c, const std::string& why) {
  c.status = Status::fail;
  if (c.detail.empty()) c.detail = why;
}

void set_unverified(CheckResult& c, const std::string& why) {
  if (c.status == Status::fail) return;
  c.status = Status::unverified;
  if (c.detail.empty()) c.detail = why;
}

bool entries_in_ideal(const Mat& a, const Mat& b, const Ideal& I) {
  const Ring& r = a.ring();
  unsigned n = a.dim();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (!I.contains(r->sub(a.at(i, j), b.at(i, j)))) return false;
  return true;
}

/// c I = { c x : x in I } for central c; equals the ideal generated by the
/// scaled generators.
Ideal scaled_ideal(const Ring& r, const Ideal& I, elem c) {
  if (I.is_zero() || c == r->zero()) return zero_ideal(r);
  std::vector<elem> gens;
  const std::vector<elem>& src =
      I.generators.empty() ? I.members : I.generators;
  for (elem g : src) {
    elem s = r->mul(c, g);
    if (s != r->zero()) gens.push_back(s);
  }
  if (gens.empty()) return zero_ideal(r);
  return ideal_generated(r, gens);
}

// -------------------------------------------------------------------------
// per-ring lazy caches shared by every suite of one run
// -------------------------------------------------------------------------

struct RingCtx {
  Ring r;
  std::string name;
  unsigned n;
  std::size_t cap;
  std::uint64_t seed;

  RingCtx(Ring ring, std::string nm, unsigned dim, std::size_t budget,
          std::uint64_t sd)
      : r(std::move(ring)),
        name(std::move(nm)),
        n(dim),
        cap(budget),
        seed(sd) {}

  const std::vector<Ideal>& ideals() {
    if (!ideals_) ideals_ = all_ideals(r);
    return *ideals_;
  }
  const Ideal& radical() {
    if (!radical_) radical_ = jacobson_radical(r);
    return *radical_;
  }
  const std::vector<elem>& center() {
    if (!center_) center_ = center_elements(r);
    return *center_;
  }
  const std::vector<GroupElement>& tgens() {
    if (!tgens_) tgens_ = transvection_gens(r, n);
    return *tgens_;
  }
  /// Full invertible-matrix enumeration, or nullptr when |R|^(n^2) exceeds
  /// the cap; the reason is kept for report details.
  const GroupEnum* gl() {
    if (!gl_tried_) {
      gl_tried_ = true;
      try {
        gl_ = enumerate_invertibles(r, n, cap);
      } catch (const CapExceeded& e) {
        gl_note_ = e.what();
      }
    }
    return gl_ ? &*gl_ : nullptr;
  }
  const std::string& gl_note() const { return gl_note_; }

  /// Relative elementary subgroup E(n,I) (normal closure construction).
  const SubgroupClosure& rel_elem(const Ideal& I) {
    auto it = rel_.find(I.members);
    if (it == rel_.end())
      it = rel_
               .emplace(I.members,
                        relative_elementary_normal_closure(r, n, I, cap))
               .first;
    return it->second;
  }
  /// Plain subgroup generated by the I-transvections (no normal closure).
  const SubgroupClosure& plain_elem(const Ideal& I) {
    if (I.is_full()) return rel_elem(I);  // all transvections generate E(n,R)
    auto it = plain_.find(I.members);
    if (it == plain_.end())
      it = plain_
               .emplace(I.members,
                        closure_of(r, n, transvection_gens(r, n, I), cap,
                                   /*track_inv=*/true))
               .first;
    return it->second;
  }
  const SubgroupClosure& egroup() { return rel_elem(full_ideal(r)); }

  const ProbeReport& probe() {
    if (!probe_) {
      if (const GroupEnum* g = gl())
        probe_ = partial_normality_probe(*g, cap);
      else
        probe_ = partial_normality_probe(r, n, cap, cap, seed, 64);
    }
    return *probe_;
  }

 private:
  std::optional<std::vector<Ideal>> ideals_;
  std::optional<Ideal> radical_;
  std::optional<std::vector<elem>> center_;
  std::optional<std::vector<GroupElement>> tgens_;
  bool gl_tried_ = false;
  std::optional<GroupEnum> gl_;
  std::string gl_note_;
  std::map<std::vector<elem>, SubgroupClosure> rel_, plain_;
  std::optional<ProbeReport> probe_;
};

std::vector<Ideal> select_ideals(RingCtx& ctx, const SuiteOptions& opt) {
  if (opt.ideal_gens) {
    for (elem g : *opt.ideal_gens)
      if (g >= ctx.r->order())
        throw RingstabError("--ideal: element code " + std::to_string(g) +
                            " out of range for ring " + ctx.name + " (order " +
                            std::to_string(ctx.r->order()) + ")");
    return {ideal_generated(ctx.r, *opt.ideal_gens)};
  }
  return ctx.ideals();
}

SuiteResult make_result(const char* suite, const RingCtx& ctx) {
  SuiteResult out;
  out.suite = suite;
  out.ring_name = ctx.name;
  out.ring_descriptor = ctx.r->family();
  out.n = ctx.n;
  return out;
}

Status probe_status(const ProbeReport& p, std::string& note) {
  if (p.counterexample_count > 0) {
    note = "found an invariant closure without transvections outside the "
           "center";
    return Status::fail;
  }
  if (p.incomplete) {
    note = "a closure hit its cap";
    return Status::unverified;
  }
  if (p.sampled) {
    note = "clean, but only on a sample of " + num(p.sample_size) +
           " elements";
    return Status::unverified;
  }
  note = "every noncentral invariant closure reaches a transvection";
  return Status::pass;
}

void fill_probe_data(CheckResult& c, const ProbeReport& p, const Ring& r,
                     unsigned n) {
  c.data["group_size"] = num(p.group_size);
  c.data["orbits"] = num(p.orbit_count);
  c.data["central"] = num(p.central_count);
  c.data["reached_transvection"] = num(p.transvection_count);
  c.data["counterexamples"] = num(p.counterexample_count);
  c.data["sampled"] = bool_str(p.sampled);
  if (p.sampled) c.data["sample_size"] = num(p.sample_size);
  c.data["quiet_closures"] = num(p.quiet_closures.size());
  if (!p.counterexample_keys.empty()) {
    MatCodec codec(r, n);
    for (const std::string& k : p.counterexample_keys) {
      if (c.witnesses.size() >= kWitnessCap) break;
      c.witnesses.push_back(encode_matrix(codec.decode(k)));
    }
  }
}

// -------------------------------------------------------------------------
// axioms
// -------------------------------------------------------------------------

SuiteResult suite_axioms(RingCtx& ctx, const SuiteOptions&) {
  SuiteResult out = make_result("axioms", ctx);
  const Ring& r = ctx.r;
  const unsigned q = r->order();

  {
    CheckResult c;
    c.name = "additive_abelian_group";
    for (elem a = 0; a < q && c.status == Status::pass; ++a) {
      if (r->add(r->zero(), a) != a || r->add(a, r->zero()) != a)
        set_fail(c, "zero is not neutral at " + num(a));
      if (r->add(a, r->neg(a)) != r->zero())
        set_fail(c, "negation fails at " + num(a));
      for (elem b = 0; b < q && c.status == Status::pass; ++b) {
        if (r->add(a, b) != r->add(b, a))
          set_fail(c, "addition not commutative at (" + num(a) + "," + num(b) +
                          ")");
        for (elem d = 0; d < q; ++d)
          if (r->add(r->add(a, b), d) != r->add(a, r->add(b, d))) {
            set_fail(c, "addition not associative at (" + num(a) + "," +
                            num(b) + "," + num(d) + ")");
            break;
          }
      }
    }
    if (c.status == Status::pass)
      c.detail = "identity, inverses, commutativity, associativity over " +
                 num(q) + " elements";
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "multiplicative_monoid";
    for (elem a = 0; a < q && c.status == Status::pass; ++a) {
      if (r->mul(r->one(), a) != a || r->mul(a, r->one()) != a)
        set_fail(c, "one is not neutral at " + num(a));
      for (elem b = 0; b < q && c.status == Status::pass; ++b)
        for (elem d = 0; d < q; ++d)
          if (r->mul(r->mul(a, b), d) != r->mul(a, r->mul(b, d))) {
            set_fail(c, "multiplication not associative at (" + num(a) + "," +
                            num(b) + "," + num(d) + ")");
            break;
          }
    }
    if (c.status == Status::pass)
      c.detail = "identity and associativity over " + num(q) + " elements";
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "distributive_laws";
    for (elem a = 0; a < q && c.status == Status::pass; ++a)
      for (elem b = 0; b < q && c.status == Status::pass; ++b)
        for (elem d = 0; d < q; ++d) {
          if (r->mul(a, r->add(b, d)) != r->add(r->mul(a, b), r->mul(a, d)) ||
              r->mul(r->add(a, b), d) != r->add(r->mul(a, d), r->mul(b, d))) {
            set_fail(c, "distributivity fails at (" + num(a) + "," + num(b) +
                            "," + num(d) + ")");
            break;
          }
        }
    if (c.status == Status::pass)
      c.detail = "both laws over all " + num(std::size_t(q) * q * q) +
                 " triples";
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "unit_group";
    const std::vector<elem>& units = r->unit_list();
    std::vector<char> is_u(q, 0);
    for (elem u : units) is_u[u] = 1;
    for (elem u : units) {
      elem v = r->inv(u);
      if (r->mul(u, v) != r->one() || r->mul(v, u) != r->one())
        set_fail(c, "stored inverse wrong for unit " + num(u));
      if (!is_u[v]) set_fail(c, "inverse of a unit not listed as a unit");
    }
    for (elem a = 0; a < q && c.status == Status::pass; ++a) {
      bool invertible = false;
      for (elem b = 0; b < q; ++b)
        if (r->mul(a, b) == r->one() && r->mul(b, a) == r->one()) {
          invertible = true;
          break;
        }
      if (invertible != (is_u[a] != 0))
        set_fail(c, "unit detection disagrees at " + num(a));
    }
    for (elem u : units)
      for (elem v : units)
        if (!is_u[r->mul(u, v)]) {
          set_fail(c, "unit product " + num(u) + "*" + num(v) + " not a unit");
          break;
        }
    if (c.status == Status::pass)
      c.detail = num(units.size()) + " two-sided units, closed under product";
    c.data["unit_count"] = num(units.size());
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "center_subring";
    const std::vector<elem>& z = ctx.center();
    std::vector<char> in_z(q, 0);
    for (elem e : z) in_z[e] = 1;
    if (!in_z[r->zero()] || !in_z[r->one()])
      set_fail(c, "center misses 0 or 1");
    for (elem a : z) {
      for (elem b = 0; b < q; ++b)
        if (r->mul(a, b) != r->mul(b, a)) {
          set_fail(c, num(a) + " listed central but does not commute with " +
                          num(b));
          break;
        }
      for (elem b : z)
        if (!in_z[r->add(a, b)] || !in_z[r->mul(a, b)]) {
          set_fail(c, "center not closed at (" + num(a) + "," + num(b) + ")");
          break;
        }
    }
    if (c.status == Status::pass)
      c.detail = num(z.size()) + " central elements form a subring";
    c.data["center_size"] = num(z.size());
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "radical_ideal";
    const Ideal& J = ctx.radical();
    for (elem j : J.members) {
      for (elem s = 0; s < q; ++s)
        if (!r->is_unit(r->sub(r->one(), r->mul(s, j))) ||
            !r->is_unit(r->sub(r->one(), r->mul(j, s)))) {
          set_fail(c, "1 - s*" + num(j) + " is not a unit");
          break;
        }
    }
    for (elem a = 0; a < q && c.status == Status::pass; ++a) {
      if (J.contains(a)) continue;
      bool quasiregular = true;
      for (elem s = 0; s < q; ++s)
        if (!r->is_unit(r->sub(r->one(), r->mul(s, a)))) {
          quasiregular = false;
          break;
        }
      if (quasiregular)
        set_fail(c, num(a) + " is quasi-regular but not in the radical");
    }
    if (c.status == Status::pass)
      c.detail = "radical {" + elem_list_str(J.members) +
                 "} matches the quasi-regularity test";
    c.data["radical_size"] = num(J.size());
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// identities (matrix-level commutator formulas and diagonal words)
// -------------------------------------------------------------------------

SuiteResult suite_identities(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("identities", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  const unsigned q = r->order();

  if (n >= 3) {
    CheckResult c;
    c.name = "transvection_commutator_closed_form";
    std::size_t count = 0;
    for (unsigned i = 0; i < n && c.status == Status::pass; ++i)
      for (unsigned k = 0; k < n && c.status == Status::pass; ++k) {
        if (i == k) continue;
        for (unsigned l = 0; l < n && c.status == Status::pass; ++l)
          for (unsigned j = 0; j < n && c.status == Status::pass; ++j) {
            if (l == j) continue;
            if (l == k && j == i) continue;  // opposite pattern: no closed form
            for (elem x = 0; x < q && c.status == Status::pass; ++x)
              for (elem y = 0; y < q; ++y) {
                Mat closed = transvection_comm_closed_form(
                    r, n, Transvection{i, k, x}, Transvection{l, j, y});
                Mat direct = comm(ge_transvection(r, n, i, k, x),
                                  ge_transvection(r, n, l, j, y));
                ++count;
                if (closed != direct) {
                  set_fail(c, "mismatch for [1+x*e(" + num(i + 1) + "," +
                                  num(k + 1) + "), 1+y*e(" + num(l + 1) + "," +
                                  num(j + 1) + ")] at x=" + num(x) +
                                  " y=" + num(y));
                  add_witness(c, direct);
                  add_witness(c, closed);
                  break;
                }
              }
          }
      }
    if (c.status == Status::pass)
      c.detail = num(count) + " pairs, all non-opposite index patterns";
    c.data["instances"] = num(count);
    out.checks.push_back(std::move(c));
  }

  if (n >= 3) {
    CheckResult c;
    c.name = "triple_commutator_identity";
    Rand rng(mix_seed(opt.seed, ctx.name + "/identities/hall"));
    std::size_t target = 200, done = 0, attempts = 0;
    while (done < target && attempts < 40 * target) {
      ++attempts;
      auto a = random_invertible(rng, r, n, 64);
      auto b = random_invertible(rng, r, n, 64);
      auto cc = random_invertible(rng, r, n, 64);
      if (!a || !b || !cc) continue;
      Mat w = hall_witness_product(*a, *b, *cc);
      ++done;
      if (!is_identity(w)) {
        set_fail(c, "conjugated triple-commutator product is not the "
                    "identity");
        add_witness(c, a->mat);
        add_witness(c, b->mat);
        add_witness(c, cc->mat);
        add_witness(c, w);
        break;
      }
    }
    if (c.status == Status::pass) {
      if (done < target)
        set_unverified(c, "only " + num(done) + " invertible triples found");
      else
        c.detail = num(done) + " random invertible triples";
    }
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "diagonal_unit_word";
    std::size_t count = 0;
    for (elem u : r->unit_list()) {
      FactorWord w = diag_unit_pair_word(r, u);
      ++count;
      if (!w.check() ||
          w.target != Mat::diag(r, 2, {u, r->inv(u)})) {
        set_fail(c, "2x2 word fails for unit " + num(u));
        add_witness(c, w.target);
        break;
      }
      if (n >= 3) {
        for (unsigned i = 0; i < n && c.status == Status::pass; ++i)
          for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            FactorWord e = embed_2x2_word(w, n, i, j);
            std::vector<elem> d(n, r->one());
            d[i] = u;
            d[j] = r->inv(u);
            if (!e.check() || e.target != Mat::diag(r, n, d)) {
              set_fail(c, "embedded word fails for unit " + num(u) + " at (" +
                              num(i + 1) + "," + num(j + 1) + ")");
              add_witness(c, e.target);
              break;
            }
          }
      }
    }
    if (c.status == Status::pass)
      c.detail = num(count) + " units, six-transvection words verified" +
                 (n >= 3 ? " plus all embeddings" : "");
    c.data["units"] = num(count);
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// lemma1: dual construction of the relative elementary subgroup
// -------------------------------------------------------------------------

SuiteResult suite_lemma1(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("lemma1", ctx);
  for (const Ideal& I : select_ideals(ctx, opt)) {
    CheckResult c;
    c.name = "dual_generation[" + ideal_label(I) + "]";
    c.data["ideal_members"] = elem_list_str(I.members);
    const SubgroupClosure& a = ctx.rel_elem(I);
    SubgroupClosure b = relative_elementary_conjugated(ctx.r, ctx.n, I, ctx.cap);
    c.data["size_normal_closure"] = num(a.size());
    c.data["size_conjugated_family"] = num(b.size());
    if (!a.complete || !b.complete) {
      set_unverified(c, "closure hit the cap (" + num(ctx.cap) + ")");
    } else if (!set_equal(a, b)) {
      set_fail(c, "the two constructions disagree");
      std::vector<std::string> ka = a.sorted_keys(), kb = b.sorted_keys();
      std::vector<std::string> diff;
      std::set_symmetric_difference(ka.begin(), ka.end(), kb.begin(), kb.end(),
                                    std::back_inserter(diff));
      for (const std::string& k : diff) {
        if (c.witnesses.size() >= kWitnessCap) break;
        c.witnesses.push_back(encode_matrix(a.codec->decode(k)));
      }
    } else {
      c.detail = "|E(n,I)| = " + num(a.size()) + " from both constructions";
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// corollary1: E(n,IJ) inside [E_I, E_J]; E(n,I^2) inside <E_I>
// -------------------------------------------------------------------------

SuiteResult suite_corollary1(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("corollary1", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  std::vector<Ideal> ideals = select_ideals(ctx, opt);
  auto codec = std::make_shared<MatCodec>(r, n);

  for (std::size_t ia = 0; ia < ideals.size(); ++ia)
    for (std::size_t ib = ia; ib < ideals.size(); ++ib) {
      const Ideal& I = ideals[ia];
      const Ideal& J = ideals[ib];
      CheckResult c;
      c.name = "product_ideal_commutator[" + ideal_label(I) + "," +
               ideal_label(J) + "]";
      Ideal IJ = ideal_generated(
          r, [&] {  // generators of I*J + J*I so the pair order is immaterial
            std::vector<elem> g;
            for (elem x : I.members)
              for (elem y : J.members) {
                if (elem p = r->mul(x, y); p != r->zero()) g.push_back(p);
                if (elem p = r->mul(y, x); p != r->zero()) g.push_back(p);
              }
            return g;
          }());
      c.data["product_ideal"] = elem_list_str(IJ.members);
      const SubgroupClosure& target = ctx.rel_elem(IJ);
      std::vector<GroupElement> agens = transvection_gens(r, n, I);
      std::vector<std::string> akeys, ainvs;
      akeys.reserve(agens.size());
      for (const GroupElement& g : agens) {
        akeys.push_back(codec->key(g.mat));
        ainvs.push_back(codec->key(g.inv));
      }
      ElementListView av{codec.get(), &akeys, &ainvs};
      SubgroupClosure com =
          commutator_subgroup(r, n, av, transvection_gens(r, n, J), ctx.cap);
      c.data["size_relative"] = num(target.size());
      c.data["size_commutator"] = num(com.size());
      if (!target.complete || !com.complete) {
        set_unverified(c, "closure hit the cap (" + num(ctx.cap) + ")");
      } else if (!is_subset(target, com)) {
        set_fail(c, "E(n,IJ) escapes the commutator subgroup");
      } else {
        c.detail = "|E(n,IJ)| = " + num(target.size()) +
                   " inside |[E_I,E_J]| = " + num(com.size());
      }
      out.checks.push_back(std::move(c));
    }

  for (const Ideal& I : ideals) {
    CheckResult c;
    c.name = "square_ideal_plain[" + ideal_label(I) + "]";
    Ideal I2 = ideal_product(I, I);
    c.data["square_ideal"] = elem_list_str(I2.members);
    const SubgroupClosure& target = ctx.rel_elem(I2);
    const SubgroupClosure& plain = ctx.plain_elem(I);
    c.data["size_relative"] = num(target.size());
    c.data["size_plain"] = num(plain.size());
    if (!target.complete || !plain.complete) {
      set_unverified(c, "closure hit the cap (" + num(ctx.cap) + ")");
    } else if (!is_subset(target, plain)) {
      set_fail(c, "E(n,I^2) escapes the plain transvection subgroup");
    } else {
      c.detail = "|E(n,I^2)| = " + num(target.size()) + " inside |<E_I>| = " +
                 num(plain.size());
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// lemma6: unit symmetry of 1+ab and the square-zero factorization
// -------------------------------------------------------------------------

SuiteResult suite_lemma6(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("lemma6", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  const unsigned q = r->order();

  {
    CheckResult c;
    c.name = "unit_symmetry";
    for (elem a = 0; a < q && c.status == Status::pass; ++a)
      for (elem b = 0; b < q; ++b)
        if (r->is_unit(r->add(r->one(), r->mul(a, b))) !=
            r->is_unit(r->add(r->one(), r->mul(b, a)))) {
          set_fail(c, "1+ab and 1+ba disagree at a=" + num(a) +
                          " b=" + num(b));
          break;
        }
    if (c.status == Status::pass)
      c.detail = "1+ab invertible iff 1+ba invertible, all " +
                 num(std::size_t(q) * q) + " pairs";
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "single_entry_pairs";
    std::size_t done = 0, skipped = 0;
    for (unsigned i = 0; i < n && c.status == Status::pass; ++i)
      for (unsigned k = 0; k < n && c.status == Status::pass; ++k)
        for (unsigned l = 0; l < n && c.status == Status::pass; ++l)
          for (unsigned j = 0; j < n && c.status == Status::pass; ++j)
            for (elem x = 0; x < q && c.status == Status::pass; ++x)
              for (elem y = 0; y < q; ++y) {
                Mat a = scale_left(x, Mat::unit(r, n, i, k));
                Mat b = mat_neg(scale_left(y, Mat::unit(r, n, l, j)));
                Mat zero(r, n);
                if (mat_mul(a, a) != zero || mat_mul(b, b) != zero) {
                  ++skipped;
                  continue;
                }
                Mat one_ab = mat_add(Mat::identity(r, n), mat_mul(a, b));
                if (!try_invert(one_ab)) {
                  ++skipped;
                  continue;
                }
                FactorWord w = square_zero_pair_factorization(a, b);
                ++done;
                if (!w.check() || w.target != one_ab) {
                  set_fail(c, "factorization fails for the single-entry pair");
                  add_witness(c, a);
                  add_witness(c, b);
                  break;
                }
              }
    if (c.status == Status::pass)
      c.detail = num(done) + " admissible pairs, " + num(skipped) +
                 " filtered out";
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "random_square_zero_pairs";
    Rand rng(mix_seed(opt.seed, ctx.name + "/lemma6/random"));
    const std::size_t target = 10000;
    std::size_t done = 0, attempts = 0;
    const std::size_t limit = 80 * target;
    auto draw_nilpotent = [&]() -> std::optional<Mat> {
      // outer product u v^T with v.u = 0 squares to zero
      for (unsigned t = 0; t < 64; ++t) {
        std::vector<elem> u(n), v(n);
        for (unsigned s = 0; s < n; ++s) u[s] = rng.element(r);
        for (unsigned s = 0; s < n; ++s) v[s] = rng.element(r);
        elem dot = r->zero();
        for (unsigned s = 0; s < n; ++s)
          dot = r->add(dot, r->mul(v[s], u[s]));
        if (dot != r->zero()) continue;
        Mat m(r, n);
        for (unsigned a = 0; a < n; ++a)
          for (unsigned b = 0; b < n; ++b) m.set(a, b, r->mul(u[a], v[b]));
        if (mat_mul(m, m) != Mat(r, n)) continue;
        return m;
      }
      return std::nullopt;
    };
    while (done < target && attempts < limit && c.status == Status::pass) {
      ++attempts;
      auto a = draw_nilpotent();
      auto b = draw_nilpotent();
      if (!a || !b) continue;
      Mat one_ab = mat_add(Mat::identity(r, n), mat_mul(*a, *b));
      if (!try_invert(one_ab)) continue;
      FactorWord w = square_zero_pair_factorization(*a, *b);
      ++done;
      if (!w.check() || w.target != one_ab) {
        set_fail(c, "factorization fails for a sampled square-zero pair");
        add_witness(c, *a);
        add_witness(c, *b);
      }
    }
    if (c.status == Status::pass) {
      if (done < target)
        set_unverified(c, "only " + num(done) + " pairs reached in " +
                              num(attempts) + " attempts");
      else
        c.detail = num(done) + " sampled pairs (" + num(attempts) +
                   " attempts)";
    }
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// lemma7: conjugated-transvection words and the central-pair commutator
// -------------------------------------------------------------------------

SuiteResult suite_lemma7(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("lemma7", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  std::vector<elem> central_nonzero;
  for (elem e : ctx.center())
    if (e != r->zero()) central_nonzero.push_back(e);

  {
    CheckResult word_check;
    word_check.name = "conjugated_word_instances";
    CheckResult coeff_check;
    coeff_check.name = "scaled_coefficient_factors";
    Rand rng(mix_seed(opt.seed, ctx.name + "/lemma7/words"));
    const std::size_t target = 1000;
    std::size_t done = 0, attempts = 0, inadmissible = 0;
    std::size_t split_factors = 0;
    while (done < target && attempts < 80 * target) {
      ++attempts;
      auto g = random_invertible(rng, r, n, 64);
      if (!g) continue;
      unsigned i = rng.below(n);
      unsigned j = (i + 1 + rng.below(n - 1)) % n;
      elem rr = rng.element(r);
      elem c = central_nonzero[rng.below(
          static_cast<unsigned>(central_nonzero.size()))];
      auto dec = decompose_conjugated_transvection(r, n, *g, i, j, rr, c);
      if (!dec) {
        ++inadmissible;
        continue;
      }
      ++done;
      elem rc2 = r->mul(rr, r->mul(c, c));
      Mat expected = conj(Mat::transvection(r, n, i, j, rc2), *g);
      if (!dec->word.check() || dec->word.target != expected) {
        set_fail(word_check, "word does not multiply to the conjugated "
                             "transvection");
        add_witness(word_check, g->mat);
        add_witness(word_check, expected);
        break;
      }
      // every transvection factor coming from the two unipotent halves must
      // carry a coefficient in cR
      std::vector<char> cmask(r->order(), 0);
      for (elem x = 0; x < r->order(); ++x) cmask[r->mul(c, x)] = 1;
      for (const Factor& f : dec->word.factors) {
        bool from_split = f.role.rfind("V0:", 0) == 0 ||
                          f.role.rfind("-W:", 0) == 0;
        if (!from_split) continue;
        ++split_factors;
        if (!f.tv || !cmask[f.tv->r]) {
          set_fail(coeff_check,
                   "split factor " + f.role + " has coefficient outside cR");
          add_witness(coeff_check, f.mat);
          break;
        }
      }
      if (coeff_check.status == Status::fail) break;
    }
    if (word_check.status == Status::pass) {
      if (done < target)
        set_unverified(word_check,
                       "only " + num(done) + " admissible instances in " +
                           num(attempts) + " attempts");
      else
        word_check.detail = num(done) + " admissible instances (" +
                            num(inadmissible) + " rejected rows)";
    }
    word_check.data["instances"] = num(done);
    word_check.data["inadmissible"] = num(inadmissible);
    if (coeff_check.status == Status::pass) {
      if (done < target)
        set_unverified(coeff_check, "instance shortfall, see "
                                    "conjugated_word_instances");
      else
        coeff_check.detail = num(split_factors) +
                             " unipotent-split factors, all in cR";
    }
    coeff_check.data["factors"] = num(split_factors);
    out.checks.push_back(std::move(word_check));
    out.checks.push_back(std::move(coeff_check));
  }

  {
    CheckResult c;
    c.name = "radical_coefficient_membership";
    const Ideal& J = ctx.radical();
    if (J.is_zero()) {
      c.detail = "radical is zero; conjugates of t(0) are trivially inside";
      c.data["instances"] = "0";
    } else {
      Rand rng(mix_seed(opt.seed, ctx.name + "/lemma7/radical"));
      const SubgroupClosure& ej = ctx.rel_elem(J);
      if (!ej.complete) {
        set_unverified(c, "E(n,J) closure hit the cap");
      } else {
        const std::size_t target = 200;
        std::size_t done = 0, attempts = 0, skipped_variant = 0;
        while (done < target && attempts < 200 * target) {
          ++attempts;
          auto g = random_invertible(rng, r, n, 64);
          if (!g) continue;
          unsigned i = rng.below(n);
          unsigned j = (i + 1 + rng.below(n - 1)) % n;
          elem rr = rng.among(J.members);
          elem cc = central_nonzero[rng.below(
              static_cast<unsigned>(central_nonzero.size()))];
          auto dec = decompose_conjugated_transvection(r, n, *g, i, j, rr, cc);
          if (!dec) continue;
          if (!dec->variant_ok) {
            ++skipped_variant;
            continue;
          }
          ++done;
          if (!ej.contains(dec->word.target)) {
            set_fail(c, "conjugated radical transvection escapes E(n,J)");
            add_witness(c, g->mat);
            add_witness(c, dec->word.target);
            break;
          }
        }
        if (c.status == Status::pass) {
          if (done < target)
            set_unverified(c, "only " + num(done) + " instances with both "
                                                    "invertibility conditions");
          else
            c.detail = num(done) + " radical instances inside E(n,J) (" +
                       num(skipped_variant) + " lacked the second condition)";
        }
        c.data["instances"] = num(done);
      }
    }
    out.checks.push_back(std::move(c));
  }

  for (const Ideal& I : select_ideals(ctx, opt)) {
    CheckResult c;
    c.name = "central_pair_commutator[" + ideal_label(I) + "]";
    c.data["ideal_members"] = elem_list_str(I.members);
    Rand rng(mix_seed(opt.seed,
                      ctx.name + "/lemma7/pair/" + ideal_label(I)));
    const Ideal& J = ctx.radical();
    const std::size_t target = 24;
    std::size_t done = 0, attempts = 0, radical_done = 0;
    bool capped = false;
    while (done < target && attempts < 400 * target &&
           c.status == Status::pass && !capped) {
      ++attempts;
      auto g = random_invertible(rng, r, n, 64);
      auto h = random_kernel_element(rng, r, n, I, 64);
      if (!g || !h) continue;
      unsigned i = rng.below(n);
      unsigned j = (i + 1 + rng.below(n - 1)) % n;
      bool force_radical = !J.is_zero() && (done % 2 == 1);
      elem rr = force_radical ? rng.among(J.members) : rng.element(r);
      elem cc = central_nonzero[rng.below(
          static_cast<unsigned>(central_nonzero.size()))];
      auto pd = decompose_central_pair(r, n, *g, *h, i, j, rr, cc);
      if (!pd) continue;
      ++done;
      if (!pd->product_identity) {
        set_fail(c, "commutator does not match the two-word product");
        add_witness(c, g->mat);
        add_witness(c, h->mat);
        break;
      }
      if (!I.contains(pd->alpha_diff)) {
        set_fail(c, "row sums differ outside I");
        break;
      }
      elem c2 = r->mul(cc, cc);
      // diagonal correction belongs to E(n, c^2 I)
      Ideal Icc = scaled_ideal(r, I, c2);
      const SubgroupClosure& ecc = ctx.rel_elem(Icc);
      if (!ecc.complete) {
        capped = true;
        set_unverified(c, "E(n,c^2 I) closure hit the cap");
        break;
      }
      elem dval = r->add(r->one(), r->mul(pd->first.alpha, c2));
      elem dpval = r->add(r->one(), r->mul(pd->second.alpha, c2));
      Mat delta = Mat::identity(r, n);
      delta.set(pd->first.l, pd->first.l, r->mul(dval, r->inv(dpval)));
      delta.set(pd->first.k, pd->first.k, r->mul(r->inv(dval), dpval));
      if (!ecc.contains(delta)) {
        set_fail(c, "diagonal correction escapes E(n,c^2 I)");
        add_witness(c, delta);
        break;
      }
      // the commutator itself lies in E(n, cI)
      Ideal Ic = scaled_ideal(r, I, cc);
      const SubgroupClosure& ec = ctx.rel_elem(Ic);
      if (!ec.complete) {
        capped = true;
        set_unverified(c, "E(n,c I) closure hit the cap");
        break;
      }
      if (!ec.contains(pd->commutator)) {
        set_fail(c, "commutator escapes E(n,c I)");
        add_witness(c, pd->commutator);
        break;
      }
      // transvection halves agree entrywise mod cI
      auto split_product = [&](const ConjugationDecomposition& d) {
        Mat acc = Mat::identity(r, n);
        for (const Factor& f : d.word.factors)
          if (f.role.rfind("V0:", 0) == 0 || f.role.rfind("-W:", 0) == 0)
            acc = mat_mul(acc, f.mat);
        return acc;
      };
      if (!entries_in_ideal(split_product(pd->first),
                            split_product(pd->second), Ic)) {
        set_fail(c, "transvection halves differ outside cI");
        break;
      }
      if (force_radical) {
        const SubgroupClosure& ej = ctx.rel_elem(J);
        if (!ej.complete) {
          capped = true;
          set_unverified(c, "E(n,J) closure hit the cap");
          break;
        }
        if (!ej.contains(pd->commutator)) {
          set_fail(c, "radical-coefficient commutator escapes E(n,J)");
          add_witness(c, pd->commutator);
          break;
        }
        ++radical_done;
      }
    }
    if (c.status == Status::pass) {
      if (done < target)
        set_unverified(c, "only " + num(done) + " joint instances in " +
                              num(attempts) + " attempts");
      else
        c.detail = num(done) + " joint instances (" + num(radical_done) +
                   " with radical coefficient)";
    }
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// theorem2: radical-pivot cleanup and its congruence consequences
// -------------------------------------------------------------------------

bool reduction_verified(const Ring& r, const PivotReduction& pr,
                        const GroupElement& g) {
  if (!pr.cleared) return false;
  if (!pr.e_word.check() || !pr.e1_word.check() || !pr.e2_word.check())
    return false;
  Mat left = mat_mul(pr.e1_word.target, pr.e_word.target);
  Mat red = mat_mul(mat_mul(left, g.mat), pr.e2_word.target);
  (void)r;
  return red == pr.reduced;
}

SuiteResult suite_theorem2(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("theorem2", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  const Ideal& J = ctx.radical();

  {
    CheckResult c;
    c.name = "radical_pivot_zero_pattern";
    std::size_t instances = 0, matrices = 0;
    if (const GroupEnum* gl = ctx.gl()) {
      Mat m(r, n), mi(r, n);
      for (std::size_t idx = 0;
           idx < gl->size() && c.status == Status::pass; ++idx) {
        gl->codec->decode_into(gl->members[idx], m);
        gl->codec->decode_into(gl->invs[idx], mi);
        GroupElement ge{m, mi};
        bool used = false;
        for (unsigned i = 0; i < n && c.status == Status::pass; ++i)
          for (unsigned j = 0; j < n; ++j) {
            if (!J.contains(m.at(i, j))) continue;
            used = true;
            auto pr = radical_pivot_reduction(r, n, ge, i, j);
            ++instances;
            if (!pr || !reduction_verified(r, *pr, ge)) {
              set_fail(c, "pivot cleanup failed at (" + num(i + 1) + "," +
                              num(j + 1) + ")");
              add_witness(c, m);
              break;
            }
          }
        if (used) ++matrices;
      }
      if (c.status == Status::pass)
        c.detail = num(instances) + " pivots over " + num(matrices) +
                   " matrices, exhaustive";
      c.data["exhaustive"] = "true";
    } else {
      Rand rng(mix_seed(opt.seed, ctx.name + "/theorem2/pattern"));
      const std::size_t target = 10000;
      std::size_t attempts = 0;
      while (instances < target && attempts < 40 * target &&
             c.status == Status::pass) {
        ++attempts;
        auto g = random_invertible(rng, r, n, 64);
        if (!g) continue;
        for (unsigned i = 0; i < n && c.status == Status::pass; ++i)
          for (unsigned j = 0; j < n; ++j) {
            if (instances >= target) break;
            if (!J.contains(g->mat.at(i, j))) continue;
            auto pr = radical_pivot_reduction(r, n, *g, i, j);
            ++instances;
            if (!pr || !reduction_verified(r, *pr, *g)) {
              set_fail(c, "pivot cleanup failed at (" + num(i + 1) + "," +
                              num(j + 1) + ")");
              add_witness(c, g->mat);
              break;
            }
          }
      }
      if (c.status == Status::pass) {
        if (instances < target)
          set_unverified(c, "only " + num(instances) + " sampled pivots");
        else
          c.detail = num(instances) + " sampled pivots, fixed seed";
      }
      c.data["exhaustive"] = "false";
    }
    c.data["instances"] = num(instances);
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "congruence_pivot_words";
    std::size_t done = 0, ideals_used = 0;
    for (const Ideal& I : select_ideals(ctx, opt)) {
      if (I.is_zero()) continue;
      bool inside_radical = true;
      for (elem e : I.members)
        if (!J.contains(e)) {
          inside_radical = false;
          break;
        }
      if (!inside_radical) continue;
      ++ideals_used;
      std::optional<CongruenceTester> tester;
      try {
        tester.emplace(r, n, I, ctx.cap);
      } catch (const CapExceeded&) {
        set_unverified(c, "congruence tester for " + ideal_label(I) +
                              " exceeds the cap");
        continue;
      }
      const SubgroupClosure& ei = ctx.rel_elem(I);
      if (!ei.complete) {
        set_unverified(c, "E(n,I) closure hit the cap");
        continue;
      }
      Rand rng(mix_seed(opt.seed,
                        ctx.name + "/theorem2/congruence/" + ideal_label(I)));
      std::vector<elem> central_units;
      for (elem u : r->unit_list()) {
        bool central = true;
        for (elem b = 0; b < r->order(); ++b)
          if (r->mul(u, b) != r->mul(b, u)) {
            central = false;
            break;
          }
        if (central) central_units.push_back(u);
      }
      std::size_t local = 0, attempts = 0;
      while (local < 24 && attempts < 2000 && c.status == Status::pass) {
        ++attempts;
        auto k = random_kernel_element(rng, r, n, I, 64);
        if (!k) continue;
        elem u = central_units[rng.below(
            static_cast<unsigned>(central_units.size()))];
        GroupElement g = ge_mul(
            GroupElement{Mat::scalar(r, n, u), Mat::scalar(r, n, r->inv(u))},
            *k);
        unsigned i = rng.below(n);
        unsigned j = (i + 1 + rng.below(n - 1)) % n;
        auto pr = radical_pivot_reduction(r, n, g, i, j);
        if (!pr || !reduction_verified(r, *pr, g)) {
          set_fail(c, "pivot cleanup failed for a congruence element");
          add_witness(c, g.mat);
          break;
        }
        GroupElement e0 = ge_mul(
            ge_mul(ge_transvection(r, n, j, i, r->one()),
                   ge_transvection(r, n, i, j, r->neg(r->one()))),
            ge_transvection(r, n, j, i, r->one()));
        Mat combo = mat_mul(
            mat_mul(e0.mat, pr->e1_word.target),
            mat_mul(pr->e_word.target, pr->e2_word.target));
        if (!ei.contains(combo)) {
          set_fail(c, "e0*e1*e*e2 escapes E(n,I) for " + ideal_label(I));
          add_witness(c, g.mat);
          add_witness(c, combo);
          break;
        }
        Mat shifted = mat_mul(e0.mat, pr->reduced);
        if (!tester->in_center_preimage(shifted)) {
          set_fail(c, "e0*g1 leaves the congruence preimage for " +
                          ideal_label(I));
          add_witness(c, g.mat);
          add_witness(c, shifted);
          break;
        }
        if (auto sg = try_invert(shifted);
            !sg || !is_element_stable(r, n, sg->mat, sg->inv)) {
          set_fail(c, "e0*g1 is not a stable matrix");
          add_witness(c, shifted);
          break;
        }
        ++local;
        ++done;
      }
    }
    if (c.status == Status::pass) {
      if (ideals_used == 0)
        c.detail = "no nonzero ideal inside the radical; vacuous";
      else
        c.detail = num(done) + " instances over " + num(ideals_used) +
                   " radical ideals";
    }
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "diagonal_pivot_words";
    std::size_t done = 0;
    const GroupEnum* gl = ctx.gl();
    for (const Ideal& I : select_ideals(ctx, opt)) {
      if (c.status != Status::pass) break;
      std::optional<CongruenceTester> tester;
      try {
        tester.emplace(r, n, I, ctx.cap);
      } catch (const CapExceeded&) {
        continue;  // handled by gl-gating below
      }
      const SubgroupClosure& plain = ctx.plain_elem(I);
      if (!plain.complete) {
        set_unverified(c, "plain closure hit the cap");
        break;
      }
      std::size_t local = 0;
      auto run_instance = [&](const GroupElement& g) {
        for (unsigned i = 0; i < n; ++i) {
          if (!J.contains(g.mat.at(i, i))) continue;
          auto pr = radical_pivot_reduction(r, n, g, i, i);
          if (!pr || !reduction_verified(r, *pr, g)) {
            set_fail(c, "diagonal pivot cleanup failed");
            add_witness(c, g.mat);
            return;
          }
          if (!plain.contains(pr->e_word.target) ||
              !plain.contains(pr->e1_word.target) ||
              !plain.contains(pr->e2_word.target)) {
            set_fail(c, "cleanup words escape <E_I> for " + ideal_label(I));
            add_witness(c, g.mat);
            return;
          }
          if (!tester->in_center_preimage(pr->reduced)) {
            set_fail(c, "reduced matrix leaves the congruence preimage");
            add_witness(c, pr->reduced);
            return;
          }
          if (auto rg = try_invert(pr->reduced);
              !rg || !is_element_stable(r, n, rg->mat, rg->inv)) {
            set_fail(c, "reduced matrix is not stable");
            add_witness(c, pr->reduced);
            return;
          }
          ++local;
          ++done;
          return;  // one diagonal pivot per element is enough
        }
      };
      if (gl) {
        Mat m(r, n), mi(r, n);
        for (std::size_t idx = 0;
             idx < gl->size() && local < 24 && c.status == Status::pass;
             ++idx) {
          gl->codec->decode_into(gl->members[idx], m);
          if (!tester->in_center_preimage(m)) continue;
          bool has_radical_diag = false;
          for (unsigned i = 0; i < n; ++i)
            if (J.contains(m.at(i, i))) {
              has_radical_diag = true;
              break;
            }
          if (!has_radical_diag) continue;
          gl->codec->decode_into(gl->invs[idx], mi);
          run_instance(GroupElement{m, mi});
        }
      } else {
        Rand rng(mix_seed(opt.seed, ctx.name + "/theorem2/diagonal/" +
                                        ideal_label(I)));
        std::size_t attempts = 0;
        while (local < 24 && attempts < 800 && c.status == Status::pass) {
          ++attempts;
          auto g = random_invertible(rng, r, n, 64);
          if (!g || !tester->in_center_preimage(g->mat)) continue;
          run_instance(*g);
        }
      }
    }
    if (c.status == Status::pass)
      c.detail = done ? num(done) + " diagonal-pivot instances"
                      : "no congruence element carries a radical diagonal "
                        "entry; vacuous";
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "commutator_inclusions";
    const GroupEnum* gl = ctx.gl();
    if (!gl) {
      set_unverified(c, ctx.gl_note());
    } else {
      const SubgroupClosure& ej = ctx.rel_elem(J);
      CongruenceTester tj(r, n, J, ctx.cap);
      std::vector<std::string> jkeys, jinvs;
      Mat m(r, n);
      for (std::size_t idx = 0; idx < gl->size(); ++idx) {
        gl->codec->decode_into(gl->members[idx], m);
        if (tj.in_center_preimage(m)) {
          jkeys.push_back(gl->members[idx]);
          jinvs.push_back(gl->invs[idx]);
        }
      }
      std::size_t pairs = 0;
      for (const Ideal& I : select_ideals(ctx, opt)) {
        if (c.status != Status::pass) break;
        CongruenceTester ti(r, n, I, ctx.cap);
        std::vector<std::string> xkeys, xinvs;
        for (std::size_t idx = 0; idx < jkeys.size(); ++idx) {
          gl->codec->decode_into(jkeys[idx], m);
          if (ti.in_center_preimage(m)) {
            xkeys.push_back(jkeys[idx]);
            xinvs.push_back(jinvs[idx]);
          }
        }
        ElementListView xv{gl->codec.get(), &xkeys, &xinvs};
        SubgroupClosure com = commutator_subgroup(
            r, n, xv, transvection_gens(r, n, J), ctx.cap);
        if (!com.complete) {
          set_unverified(c, "commutator closure hit the cap");
          break;
        }
        const SubgroupClosure& ei = ctx.rel_elem(I);
        Mat e(r, n);
        for (const std::string& k : com.members) {
          com.codec->decode_into(k, e);
          if (!ei.contains(e) || !ej.contains(e)) {
            set_fail(c, "[C_J n C_I, E(n,J)] escapes E(n,I) n E(n,J) at I=" +
                            ideal_label(I));
            add_witness(c, e);
            break;
          }
        }
        ++pairs;
      }
      if (c.status == Status::pass)
        c.detail = "|C(n,J)| = " + num(jkeys.size()) + ", verified over " +
                   num(pairs) + " ideals";
    }
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "radical_commutator_inclusions";
    // sampled form of [C(n,I) n C(n,J), E(n,J)] inside E(n,I) n E(n,J):
    // witnesses u * (1 + M) with central unit u and M over I n J lie in both
    // congruence subgroups by construction, so no full enumeration is needed
    const SubgroupClosure& ej = ctx.rel_elem(J);
    if (J.is_zero()) {
      c.detail = "radical is zero, E(n,J) is trivial; vacuous";
      c.data["instances"] = "0";
    } else if (!ej.complete || !ej.tracks_inverses()) {
      set_unverified(c, "E(n,J) closure unavailable at this cap");
    } else {
      std::vector<char> central_mask(r->order(), 0);
      for (elem z : ctx.center()) central_mask[z] = 1;
      std::vector<elem> central_units;
      for (elem u : r->unit_list())
        if (central_mask[u]) central_units.push_back(u);
      std::size_t done = 0, pair_checks = 0;
      for (const Ideal& I : select_ideals(ctx, opt)) {
        if (c.status != Status::pass) break;
        std::vector<elem> kmembers;
        for (elem e : I.members)
          if (J.contains(e)) kmembers.push_back(e);
        Ideal K = ideal_generated(r, kmembers);  // I n J (already an ideal)
        const SubgroupClosure& ei = ctx.rel_elem(I);
        if (!ei.complete) {
          set_unverified(c, "E(n,I) closure hit the cap");
          break;
        }
        Rand rng(mix_seed(opt.seed, ctx.name + "/theorem2/inclusion/" +
                                        ideal_label(I)));
        for (unsigned t = 0; t < 6 && c.status == Status::pass; ++t) {
          auto kmat = random_kernel_element(rng, r, n, K, 64);
          if (!kmat) break;
          elem u = central_units[rng.below(
              static_cast<unsigned>(central_units.size()))];
          GroupElement g = ge_mul(
              GroupElement{Mat::scalar(r, n, u), Mat::scalar(r, n, r->inv(u))},
              *kmat);
          ++done;
          Mat e(r, n), einv(r, n);
          for (std::size_t idx = 0; idx < ej.size(); ++idx) {
            ej.codec->decode_into(ej.members[idx], e);
            ej.codec->decode_into(ej.member_invs[idx], einv);
            Mat cm = mat_mul(mat_mul(g.mat, e), mat_mul(g.inv, einv));
            ++pair_checks;
            if (!ei.contains(cm) || !ej.contains(cm)) {
              set_fail(c, "commutator escapes E(n,I) n E(n,J) at I=" +
                              ideal_label(I));
              add_witness(c, g.mat);
              add_witness(c, cm);
              break;
            }
          }
        }
      }
      if (c.status == Status::pass) {
        if (done == 0)
          set_unverified(c, "no congruence witnesses sampled");
        else
          c.detail = num(done) + " congruence elements, " + num(pair_checks) +
                     " commutators against all of E(n,J)";
      }
      c.data["instances"] = num(done);
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// stable-rank
// -------------------------------------------------------------------------

SuiteResult suite_stable_rank(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("stable-rank", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;

  {
    CheckResult c;
    c.name = "stable_rank_one";
    if (stable_rank_condition(r, 2)) {
      c.detail = "every unimodular pair shortens";
    } else {
      set_fail(c, "unimodular pair without shortening");
      if (auto w = stable_rank_counterexample(r, 2))
        c.data["counterexample"] = elem_list_str(*w);
    }
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "unimodular_shortening";
    if (stable_rank_condition(r, n)) {
      c.detail = "every unimodular length-" + num(n) + " vector shortens";
    } else {
      set_fail(c, "unimodular vector without shortening");
      if (auto w = stable_rank_counterexample(r, n))
        c.data["counterexample"] = elem_list_str(*w);
    }
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "idempotent_pair_completion";
    std::size_t done = 0, via = 0;
    for (elem e = 0; e < r->order() && c.status == Status::pass; ++e) {
      if (r->mul(e, e) != e) continue;
      for (elem v = 0; v < r->order(); ++v) {
        if (!is_unimodular(r, {v, e})) continue;
        auto pc = complete_unimodular_pair(r, v, e);
        ++done;
        if (!pc || !r->is_unit(pc->unit) ||
            pc->unit != r->add(e, r->mul(pc->s, v))) {
          set_fail(c, "no completion for the pair (v=" + num(v) +
                          ", e=" + num(e) + ")");
          break;
        }
        if (pc->via_idempotent) ++via;
      }
    }
    if (c.status == Status::pass)
      c.detail = num(done) + " unimodular pairs with idempotent second "
                             "entry (" +
                 num(via) + " via the idempotent witness)";
    c.data["instances"] = num(done);
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "last_column_reduction";
    Rand rng(mix_seed(opt.seed, ctx.name + "/stable-rank/column"));
    std::size_t done = 0, attempts = 0;
    const std::size_t target = 100;
    while (done < target && attempts < 40 * target &&
           c.status == Status::pass) {
      ++attempts;
      auto g = random_invertible(rng, r, n, 64);
      if (!g) continue;
      auto lr = reduce_last_column(r, n, *g);
      ++done;
      if (!lr || !lr->ok) {
        set_fail(c, "no last-column reduction for a sampled matrix");
        add_witness(c, g->mat);
        break;
      }
      if (lr->g1.at(0, n - 1) != r->zero() ||
          lr->g2.at(0, n - 1) != r->zero()) {
        set_fail(c, "corner entry not cleared");
        add_witness(c, g->mat);
        break;
      }
      elem head = g->mat.at(0, n - 1);
      std::vector<char> in_hr(r->order(), 0);
      for (elem x = 0; x < r->order(); ++x) in_hr[r->mul(head, x)] = 1;
      for (std::size_t p = 1; p < lr->s_coeffs.size(); ++p)
        if (!in_hr[lr->s_coeffs[p]]) {
          set_fail(c, "shift coefficient outside g_1n R");
          add_witness(c, g->mat);
          break;
        }
    }
    if (c.status == Status::pass) {
      if (done < target)
        set_unverified(c, "only " + num(done) + " invertible samples");
      else
        c.detail = num(done) + " sampled matrices reduced";
    }
    c.data["instances"] = num(done);
    // congruence variant: for g in the kernel of reduction mod I the shift
    // coefficients land in I automatically
    for (const Ideal& I : ctx.ideals()) {
      if (I.is_zero() || I.is_full() || c.status == Status::fail) continue;
      Rand rng2(mix_seed(opt.seed, ctx.name + "/stable-rank/kernel/" +
                                       ideal_label(I)));
      for (unsigned t = 0; t < 10; ++t) {
        auto g = random_kernel_element(rng2, r, n, I, 64);
        if (!g) break;
        auto lr = reduce_last_column(r, n, *g);
        if (!lr || !lr->ok) continue;
        for (std::size_t p = 1; p < lr->s_coeffs.size(); ++p)
          if (!I.contains(lr->s_coeffs[p])) {
            set_fail(c, "kernel element shift coefficient outside " +
                            ideal_label(I));
            add_witness(c, g->mat);
            break;
          }
      }
    }
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// predicates
// -------------------------------------------------------------------------

SuiteResult suite_predicates(RingCtx& ctx, const SuiteOptions&) {
  SuiteResult out = make_result("predicates", ctx);
  const Ring& r = ctx.r;
  const unsigned q = r->order();

  CheckResult table;
  table.name = "predicate_table";

  {
    CheckResult c;
    c.name = "regular_partner_scan";
    std::size_t regular = 0;
    elem first_missing = 0;
    bool all = true;
    for (elem a = 0; a < q; ++a) {
      if (auto p = regular_partner(r, a)) {
        if (r->mul(r->mul(a, *p), a) != a) {
          set_fail(c, "partner identity fails at " + num(a));
          break;
        }
        ++regular;
      } else if (all) {
        all = false;
        first_missing = a;
      }
    }
    if (all != is_von_neumann_regular(r))
      set_fail(c, "scan disagrees with the aggregate predicate");
    if (c.status == Status::pass) {
      c.detail = num(regular) + "/" + num(q) + " elements have a regular "
                                               "partner";
      if (!all) c.data["first_non_regular"] = num(first_missing);
    }
    table.data["von_neumann_regular"] = bool_str(all);
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "nearly_local_scan";
    std::size_t covered = 0;
    bool all = true;
    for (elem a = 0; a < q; ++a) {
      if (auto p = nearly_local_partner(r, a)) {
        elem lhs = r->mul(r->add(r->one(), r->mul(*p, a)),
                          r->add(r->sub(r->one(), *p), r->mul(a, *p)));
        if (lhs != r->zero()) {
          set_fail(c, "partner identity fails at " + num(a));
          break;
        }
        ++covered;
      } else {
        all = false;
        if (c.data.find("first_uncovered") == c.data.end())
          c.data["first_uncovered"] = num(a);
      }
    }
    if (all != is_nearly_local(r))
      set_fail(c, "scan disagrees with the aggregate predicate");
    if (c.status == Status::pass)
      c.detail = num(covered) + "/" + num(q) + " elements have a partner";
    table.data["nearly_local"] = bool_str(all);
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "power_idempotent_scan";
    unsigned max_m = 0;
    for (elem a = 0; a < q; ++a) {
      auto pi = power_idempotent(r, a);
      if (!pi) {
        set_fail(c, "no power idempotent for " + num(a));
        break;
      }
      elem e = pi->idempotent;
      elem am = r->one();
      for (unsigned t = 0; t < pi->m; ++t) am = r->mul(am, a);
      if (r->mul(e, e) != e || r->mul(e, am) != am) {
        set_fail(c, "certified idempotent wrong for " + num(a));
        break;
      }
      max_m = std::max(max_m, pi->m);
    }
    if (c.status == Status::pass)
      c.detail = "every element certifies, largest exponent " + num(max_m);
    table.data["power_idempotents"] = bool_str(c.status == Status::pass);
    table.data["max_power_exponent"] = num(max_m);
    out.checks.push_back(std::move(c));
  }

  table.data["commutative"] = bool_str(r->commutative());
  table.data["order"] = num(q);
  table.data["unit_count"] = num(r->unit_list().size());
  table.data["center_size"] = num(ctx.center().size());
  table.data["ideal_count"] = num(ctx.ideals().size());
  table.data["radical"] = elem_list_str(ctx.radical().members);
  table.data["stable_rank_one"] = bool_str(stable_rank_condition(r, 2));
  table.detail = "descriptor " + r->family();
  out.checks.insert(out.checks.begin(), std::move(table));
  return out;
}

// -------------------------------------------------------------------------
// commutator: [C(n,I), E(n,R)] = E(n,I), E(n,I) normal in GL(n,R)
// -------------------------------------------------------------------------

SuiteResult suite_commutator(RingCtx& ctx, const SuiteOptions& opt) {
  SuiteResult out = make_result("commutator", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  const GroupEnum* gl = ctx.gl();
  for (const Ideal& I : select_ideals(ctx, opt)) {
    std::string lbl = ideal_label(I);
    CheckResult eq;
    eq.name = "commutator_equality[" + lbl + "]";
    CheckResult nm;
    nm.name = "relative_normality[" + lbl + "]";
    if (!gl) {
      set_unverified(eq, ctx.gl_note());
      set_unverified(nm, ctx.gl_note());
    } else {
      CongruenceTester tester(r, n, I, ctx.cap);
      CongruencePair pair_ = congruence_pair(*gl, tester);
      SubgroupClosure com = commutator_subgroup(
          r, n, view_of(pair_.center_pre), ctx.tgens(), ctx.cap);
      const SubgroupClosure& ei = ctx.rel_elem(I);
      eq.data["size_congruence_preimage"] = num(pair_.center_pre.size());
      eq.data["size_commutator"] = num(com.size());
      eq.data["size_relative"] = num(ei.size());
      if (!com.complete || !ei.complete) {
        set_unverified(eq, "closure hit the cap");
      } else if (!set_equal(com, ei)) {
        set_fail(eq, "[C(n,I), E(n,R)] differs from E(n,I)");
      } else {
        eq.detail = "|C(n,I)| = " + num(pair_.center_pre.size()) +
                    ", commutator equals E(n,I) of size " + num(ei.size());
      }
      if (!ei.complete) {
        set_unverified(nm, "closure hit the cap");
      } else if (!normal_under_group(*gl, ei, ei.generators)) {
        set_fail(nm, "E(n,I) is not invariant under some invertible matrix");
      } else {
        nm.detail = "conjugation by all " + num(gl->size()) +
                    " invertible matrices preserves E(n,I)";
      }
    }
    out.checks.push_back(std::move(eq));
    out.checks.push_back(std::move(nm));
  }
  return out;
}

// -------------------------------------------------------------------------
// normality-probe
// -------------------------------------------------------------------------

SuiteResult suite_normality_probe(RingCtx& ctx, const SuiteOptions&) {
  SuiteResult out = make_result("normality-probe", ctx);
  CheckResult c;
  c.name = "invariant_closure_probe";
  const ProbeReport& p = ctx.probe();
  std::string note;
  Status st = probe_status(p, note);
  fill_probe_data(c, p, ctx.r, ctx.n);
  if (st == Status::fail)
    set_fail(c, note);
  else if (st == Status::unverified)
    set_unverified(c, note);
  else
    c.detail = note;
  out.checks.push_back(std::move(c));
  return out;
}

// -------------------------------------------------------------------------
// lemma-suite: structural checks on transvection-free invariant closures
// -------------------------------------------------------------------------

SuiteResult suite_lemma_suite(RingCtx& ctx, const SuiteOptions&) {
  SuiteResult out = make_result("lemma-suite", ctx);
  CheckResult c;
  c.name = "invariant_closure_conclusions";
  const GroupEnum* gl = ctx.gl();
  if (!gl) {
    set_unverified(c, ctx.gl_note());
  } else {
    const ProbeReport& p = ctx.probe();
    LemmaSuiteReport rep = invariant_subgroup_checks(*gl, p.quiet_closures,
                                                     ctx.cap);
    c.data["closures"] = num(rep.closures_checked);
    c.data["elements"] = num(rep.elements_checked);
    c.data["checks"] = num(rep.checks_run);
    if (!rep.ok()) {
      set_fail(c, rep.violations.front().check + ": " +
                      rep.violations.front().witness);
    } else if (rep.closures_checked == 0) {
      c.detail = "no transvection-free invariant closures to check";
    } else {
      c.detail = num(rep.checks_run) + " conclusion checks over " +
                 num(rep.closures_checked) + " closures";
    }
  }
  out.checks.push_back(std::move(c));
  return out;
}

// -------------------------------------------------------------------------
// classify
// -------------------------------------------------------------------------

struct ClassifyOutcome {
  Status probe = Status::unverified;
  std::string probe_note;
  Status weak = Status::unverified;
  std::string weak_note;
  unsigned weak_k = 0;
  Status normality = Status::unverified;
  std::string verdict = "unverified";
  std::map<std::string, std::string> chain_data;
};

/// Shared classification core: the commutator chain per ideal, normality of
/// every relative elementary subgroup, and the invariant-closure probe.
ClassifyOutcome classify_core(RingCtx& ctx) {
  ClassifyOutcome o;
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;
  o.probe = probe_status(ctx.probe(), o.probe_note);

  const GroupEnum* gl = ctx.gl();
  if (!gl) {
    o.weak = Status::unverified;
    o.weak_note = ctx.gl_note();
    o.normality = Status::unverified;
  } else {
    bool all_matched = true, any_stall = false, depth_capped = false;
    bool normal_all = true, capped = false;
    for (const Ideal& I : ctx.ideals()) {
      std::string lbl = ideal_label(I);
      CongruenceTester tester(r, n, I, ctx.cap);
      CongruencePair pair_ = congruence_pair(*gl, tester);
      const SubgroupClosure& ei = ctx.rel_elem(I);
      if (!ei.complete) {
        capped = true;
        o.chain_data["I=" + lbl] = "capped";
        continue;
      }
      CommutatorChainResult chain =
          commutator_chain(pair_.center_pre, ei, 4, ctx.cap);
      std::ostringstream sizes;
      for (std::size_t d = 0; d < chain.chain_sizes.size(); ++d)
        sizes << (d ? "," : "") << chain.chain_sizes[d];
      if (chain.matched_at) {
        o.weak_k = std::max(o.weak_k, chain.matched_at);
        o.chain_data["I=" + lbl] =
            "k=" + num(chain.matched_at) + " sizes=" + sizes.str();
      } else if (chain.stalled && chain.chain_sizes.back() != 0) {
        any_stall = true;
        all_matched = false;
        o.chain_data["I=" + lbl] = "stalled sizes=" + sizes.str();
      } else {
        all_matched = false;
        if (!chain.stalled) depth_capped = true;
        o.chain_data["I=" + lbl] = "undecided sizes=" + sizes.str();
      }
      if (!chain.target_contained) {
        any_stall = true;  // the guaranteed inclusion failed: hard violation
        o.chain_data["I=" + lbl] += " target-escapes";
      }
      bool norm = normal_under_group(*gl, ei, ei.generators);
      if (!norm) normal_all = false;
      o.chain_data["normal[" + lbl + "]"] = bool_str(norm);
    }
    if (capped) {
      o.weak = Status::unverified;
      o.weak_note = "a relative elementary closure hit the cap";
    } else if (any_stall) {
      o.weak = Status::fail;
      o.weak_note = "a commutator chain stabilized away from E(n,I)";
    } else if (all_matched) {
      o.weak = Status::pass;
      o.weak_note = "every chain reaches E(n,I), common depth " +
                    num(o.weak_k);
    } else {
      o.weak = Status::unverified;
      o.weak_note = depth_capped ? "depth cap 4 reached" : "chain undecided";
    }
    o.normality = normal_all ? Status::pass : Status::fail;
  }

  if (o.probe == Status::fail || o.weak == Status::fail ||
      o.normality == Status::fail)
    o.verdict = "not stable";
  else if (o.probe == Status::pass && o.weak == Status::pass &&
           o.normality == Status::pass)
    o.verdict = "stable (probe)";
  else
    o.verdict = "unverified";
  return o;
}

SuiteResult suite_classify(RingCtx& ctx, const SuiteOptions&) {
  SuiteResult out = make_result("classify", ctx);
  const Ring& r = ctx.r;
  const unsigned n = ctx.n;

  {
    CheckResult c;
    c.name = "predicate_summary";
    c.data["commutative"] = bool_str(r->commutative());
    c.data["von_neumann_regular"] = bool_str(is_von_neumann_regular(r));
    c.data["nearly_local"] = bool_str(is_nearly_local(r));
    c.data["stable_rank_one"] = bool_str(stable_rank_condition(r, 2));
    c.data["radical"] = elem_list_str(ctx.radical().members);
    c.data["ideal_count"] = num(ctx.ideals().size());
    c.detail = "descriptor " + r->family();
    out.checks.push_back(std::move(c));
  }

  ClassifyOutcome core = classify_core(ctx);

  {
    CheckResult c;
    c.name = "commutator_formula";
    c.data = core.chain_data;
    if (core.weak == Status::fail)
      set_fail(c, core.weak_note);
    else if (core.weak == Status::unverified)
      set_unverified(c, core.weak_note);
    else
      c.detail = core.weak_note;
    if (core.normality == Status::fail)
      set_fail(c, "some E(n,I) is not normal in the full invertible group");
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "weak_commutator_length";
    c.data["k"] = core.weak == Status::pass ? num(core.weak_k) : "unknown";
    if (core.weak == Status::fail)
      set_fail(c, core.weak_note);
    else if (core.weak == Status::unverified)
      set_unverified(c, core.weak_note);
    else
      c.detail = "length " + num(core.weak_k) + " (searched up to 4)";
    out.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.name = "partial_normality";
    fill_probe_data(c, ctx.probe(), r, n);
    if (core.probe == Status::fail)
      set_fail(c, core.probe_note);
    else if (core.probe == Status::unverified)
      set_unverified(c, core.probe_note);
    else
      c.detail = core.probe_note;
    out.checks.push_back(std::move(c));
  }

  Status quotients = Status::pass;
  {
    CheckResult c;
    c.name = "quotient_partial_normality";
    std::size_t count = 0;
    for (const Ideal& I : ctx.ideals()) {
      if (I.is_zero() || I.is_full()) continue;  // the zero quotient is the
                                                 // ring itself, covered above
      QuotientRing Q = quotient_ring(r, I);
      RingCtx qctx(Q.ring, ctx.name + "/" + ideal_label(I), n, ctx.cap,
                   ctx.seed);
      std::string note;
      Status st = probe_status(qctx.probe(), note);
      c.data["I=" + ideal_label(I)] =
          status_name(st) + " (order " + num(Q.ring->order()) + ")";
      quotients = st == Status::fail || quotients == Status::fail
                      ? Status::fail
                  : st == Status::unverified ? Status::unverified
                                             : quotients;
      ++count;
    }
    if (quotients == Status::fail)
      set_fail(c, "a proper quotient fails the probe");
    else if (quotients == Status::unverified)
      set_unverified(c, "a proper quotient probe is only sampled or capped");
    else
      c.detail = count ? num(count) + " proper quotients, all probes clean"
                       : "no proper nonzero ideals";
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "element_stability";
    const GroupEnum* gl = ctx.gl();
    StabilityScan scan;
    if (gl && gl->size() <= 20000) {
      scan = scan_element_stability(*gl);
      c.data["exhaustive"] = "true";
    } else {
      scan = scan_element_stability_sampled(r, n, ctx.seed, 1000);
      c.data["exhaustive"] = "false";
    }
    c.data["checked"] = num(scan.checked);
    if (scan.all_stable) {
      c.detail = num(scan.checked) + " elements, every coefficient set is "
                                     "the full ring" +
                 (scan.sampled ? " (sampled)" : "");
    } else if (r->commutative()) {
      set_fail(c, "a commutative ring produced a non-stable element at pair "
                  "(" +
                      num(scan.fail_i + 1) + "," + num(scan.fail_j + 1) + ")");
      MatCodec codec(r, n);
      c.witnesses.push_back(encode_matrix(codec.decode(
          scan.first_failure_key)));
    } else {
      c.detail = "non-stable element found (possible for a noncommutative "
                 "ring)";
      c.data["first_failure"] = scan.first_failure_key;
    }
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "radical_quotient_implications";
    const Ideal& J = ctx.radical();
    auto impl_row = [](Status hyp, Status concl) {
      std::string row = "hyp=" + status_name(hyp) +
                        " concl=" + status_name(concl);
      if (hyp == Status::pass && concl == Status::fail)
        return row + " VIOLATED";
      if (hyp == Status::pass && concl == Status::pass) return row + " ok";
      return row + " vacuous";
    };
    bool violated = false;
    if (J.is_zero()) {
      c.data["radical_zero"] = "true";
      c.detail = "radical is zero; the radical quotient is the ring itself";
    } else {
      QuotientRing Q = quotient_ring(r, J);
      RingCtx qctx(Q.ring, ctx.name + "/J", n, ctx.cap, ctx.seed);
      ClassifyOutcome qcore = classify_core(qctx);
      c.data["radical_quotient_order"] = num(Q.ring->order());
      c.data["radical_quotient_verdict"] = qcore.verdict;
      // partial normality transfers from the radical quotient to the ring
      c.data["partial_normality_transfer"] = impl_row(qcore.probe, core.probe);
      if (qcore.probe == Status::pass && core.probe == Status::fail)
        violated = true;
      // stability transfers from the radical quotient to the ring
      Status qs = qcore.verdict == "stable (probe)" ? Status::pass
                  : qcore.verdict == "not stable"   ? Status::fail
                                                    : Status::unverified;
      Status rs = core.verdict == "stable (probe)" ? Status::pass
                  : core.verdict == "not stable"   ? Status::fail
                                                   : Status::unverified;
      c.data["stability_transfer"] = impl_row(qs, rs);
      if (qs == Status::pass && rs == Status::fail) violated = true;
      // quotient-of-quotient partial normality under a normal radical
      // quotient cannot be certified directly (full normality is not
      // enumerable); record the probe-level surrogate only
      c.data["quotient_probes"] = status_name(quotients);
    }
    if (violated)
      set_fail(c, "computed data contradicts a transfer implication");
    else if (c.detail.empty())
      c.detail = "no transfer implication violated";
    out.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "verdict";
    std::string verdict = core.verdict;
    if (verdict == "stable (probe)" && quotients == Status::fail)
      verdict = "not stable";
    else if (verdict == "stable (probe)" && quotients != Status::pass)
      verdict = "unverified";
    c.data["verdict"] = verdict;
    c.data["weak_length"] =
        core.weak == Status::pass ? num(core.weak_k) : "unknown";
    c.data["probe"] = status_name(core.probe);
    c.data["normality"] = status_name(core.normality);
    c.data["quotient_probes"] = status_name(quotients);
    if (verdict == "not stable")
      set_fail(c, "commutator formula, normality or a probe failed");
    else if (verdict == "unverified")
      set_unverified(c, "caps or sampling prevent a full certificate");
    else
      c.detail = "commutator chain, normality and every probe verified";
    out.checks.push_back(std::move(c));
  }
  return out;
}

// -------------------------------------------------------------------------
// dispatch
// -------------------------------------------------------------------------

using SuiteFn = SuiteResult (*)(RingCtx&, const SuiteOptions&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

const SuiteEntry kSuites[] = {
    {"axioms", suite_axioms},
    {"identities", suite_identities},
    {"lemma1", suite_lemma1},
    {"corollary1", suite_corollary1},
    {"lemma6", suite_lemma6},
    {"lemma7", suite_lemma7},
    {"theorem2", suite_theorem2},
    {"stable-rank", suite_stable_rank},
    {"predicates", suite_predicates},
    {"commutator", suite_commutator},
    {"normality-probe", suite_normality_probe},
    {"lemma-suite", suite_lemma_suite},
    {"classify", suite_classify},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const SuiteEntry& e : kSuites) v.push_back(e.name);
    return v;
  }();
  return names;
}

bool is_suite_name(const std::string& name) {
  if (name == "all") return true;
  for (const SuiteEntry& e : kSuites)
    if (name == e.name) return true;
  return false;
}

std::string tool_version() { return "1.0.0"; }

Report run_suite(const SpecFile& spec, const std::string& suite,
                 const SuiteOptions& opt, Timings* timings) {
  if (!is_suite_name(suite)) {
    std::string known;
    for (const std::string& s : suite_names()) known += " " + s;
    throw RingstabError("unknown suite '" + suite + "'; known:" + known +
                        " all");
  }
  if (spec.rings.empty())
    throw RingstabError(spec.origin + ": no rings declared");

  std::vector<const SuiteEntry*> chosen;
  for (const SuiteEntry& e : kSuites)
    if (suite == "all" || suite == e.name) chosen.push_back(&e);

  std::vector<RingCtx> ctxs;
  ctxs.reserve(spec.rings.size());
  for (const RingDecl& decl : spec.rings) {
    unsigned n = opt.n_override ? opt.n_override : decl.n;
    std::size_t cap = opt.cap_override ? opt.cap_override : decl.cap;
    if (n < 2 || n > 8)
      throw RingstabError("ring " + decl.name + ": n = " + std::to_string(n) +
                          " out of the supported range 2..8");
    if (n == 2)
      for (const SuiteEntry* e : chosen)
        if (std::string(e->name) != "identities")
          throw RingstabError("n = 2 is allowed only for the identities "
                              "suite (ring " +
                              decl.name + ")");
    ctxs.emplace_back(decl.ring, decl.name, n, cap, opt.seed);
  }

  Report rep;
  rep.version = tool_version();
  for (const SuiteEntry* e : chosen)
    for (RingCtx& ctx : ctxs) {
      auto start = std::chrono::steady_clock::now();
      rep.suites.push_back(e->fn(ctx, opt));
      if (timings) {
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        timings->emplace_back(std::string(e->name) + " " + ctx.name, secs);
      }
    }
  return rep;
}

}  // namespace ringstab
