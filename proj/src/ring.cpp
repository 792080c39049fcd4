#include "ringstab/ring.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace ringstab {

namespace {

std::string triple_str(elem a, elem b, elem c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

// Checks one axiom instance; returns a complaint or empty.
struct TableView {
  unsigned order;
  const std::vector<elem>* add;
  const std::vector<elem>* mul;
  elem a(elem x, elem y) const { return (*add)[std::size_t(x) * order + y]; }
  elem m(elem x, elem y) const { return (*mul)[std::size_t(x) * order + y]; }
};

std::string check_triple(const TableView& t, elem x, elem y, elem z) {
  if (t.a(t.a(x, y), z) != t.a(x, t.a(y, z)))
    return "additive associativity fails at " + triple_str(x, y, z);
  if (t.m(t.m(x, y), z) != t.m(x, t.m(y, z)))
    return "multiplicative associativity fails at " + triple_str(x, y, z);
  if (t.m(x, t.a(y, z)) != t.a(t.m(x, y), t.m(x, z)))
    return "left distributivity fails at " + triple_str(x, y, z);
  if (t.m(t.a(x, y), z) != t.a(t.m(x, z), t.m(y, z)))
    return "right distributivity fails at " + triple_str(x, y, z);
  return {};
}

}  // namespace

Ring FiniteRing::finish(unsigned order, std::vector<elem> add,
                        std::vector<elem> mul, std::string family,
                        unsigned order_cap) {
  if (order < 2)
    throw RingstabError(family + ": ring order must be at least 2");
  if (order > order_cap)
    throw RingstabError(family + ": order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(order_cap));
  if (order_cap > 65535)
    throw RingstabError("order cap beyond element code range");
  if (add.size() != std::size_t(order) * order ||
      mul.size() != std::size_t(order) * order)
    throw RingstabError(family + ": operation tables are not order*order");
  for (elem v : add)
    if (v >= order) throw RingstabError(family + ": add table entry out of range");
  for (elem v : mul)
    if (v >= order) throw RingstabError(family + ": mul table entry out of range");

  TableView t{order, &add, &mul};

  // Locate zero: the unique additive identity.
  elem zero = no_inverse;
  for (elem z = 0; z < order; ++z) {
    bool ok = true;
    for (elem x = 0; x < order && ok; ++x)
      ok = t.a(x, z) == x && t.a(z, x) == x;
    if (ok) { zero = z; break; }
  }
  if (zero == no_inverse)
    throw RingstabError(family + ": no additive identity in table");

  // Commutativity of addition and additive inverses.
  std::vector<elem> neg(order, no_inverse);
  for (elem x = 0; x < order; ++x) {
    for (elem y = 0; y < order; ++y) {
      if (t.a(x, y) != t.a(y, x))
        throw RingstabError(family + ": addition not commutative at (" +
                            std::to_string(x) + "," + std::to_string(y) + ")");
      if (t.a(x, y) == zero) neg[x] = y;
    }
    if (neg[x] == no_inverse)
      throw RingstabError(family + ": element " + std::to_string(x) +
                          " has no additive inverse");
  }

  // Locate one: the unique two-sided multiplicative identity.
  elem one = no_inverse;
  for (elem u = 0; u < order; ++u) {
    bool ok = true;
    for (elem x = 0; x < order && ok; ++x)
      ok = t.m(x, u) == x && t.m(u, x) == x;
    if (ok) { one = u; break; }
  }
  if (one == no_inverse)
    throw RingstabError(family + ": no multiplicative identity in table");
  if (one == zero)
    throw RingstabError(family + ": zero equals one (trivial ring rejected)");

  // Associativity and distributivity: exhaustive up to order 64, seeded
  // sampling (1e5 triples) above.
  if (order <= 64) {
    for (elem x = 0; x < order; ++x)
      for (elem y = 0; y < order; ++y)
        for (elem z = 0; z < order; ++z) {
          std::string bad = check_triple(t, x, y, z);
          if (!bad.empty()) throw RingstabError(family + ": " + bad);
        }
  } else {
    std::mt19937_64 rng(0xA11CEull);
    for (int it = 0; it < 100000; ++it) {
      elem x = elem(rng() % order), y = elem(rng() % order),
           z = elem(rng() % order);
      std::string bad = check_triple(t, x, y, z);
      if (!bad.empty()) throw RingstabError(family + ": " + bad);
    }
  }

  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->order_ = order;
  ring->add_ = std::move(add);
  ring->mul_ = std::move(mul);
  ring->zero_ = zero;
  ring->one_ = one;
  ring->neg_ = std::move(neg);
  ring->family_ = std::move(family);

  // Units: exhaustive two-sided inverse search.
  ring->inv_.assign(order, no_inverse);
  for (elem x = 0; x < order; ++x)
    for (elem y = 0; y < order; ++y)
      if (ring->mul(x, y) == one && ring->mul(y, x) == one) {
        ring->inv_[x] = y;
        break;
      }
  for (elem x = 0; x < order; ++x)
    if (ring->inv_[x] != no_inverse) ring->units_.push_back(x);

  ring->commutative_ = true;
  for (elem x = 0; x < order && ring->commutative_; ++x)
    for (elem y = 0; y < x && ring->commutative_; ++y)
      if (ring->mul(x, y) != ring->mul(y, x)) ring->commutative_ = false;

  return ring;
}

elem FiniteRing::inv(elem a) const {
  if (inv_[a] == no_inverse)
    throw RingstabError(family_ + ": element " + std::to_string(a) +
                        " is not a unit");
  return inv_[a];
}

Ring FiniteRing::zmod(unsigned m, unsigned order_cap) {
  if (m < 2) throw RingstabError("zmod: modulus must be at least 2");
  std::vector<elem> add(std::size_t(m) * m), mul(std::size_t(m) * m);
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) {
      add[std::size_t(a) * m + b] = elem((a + b) % m);
      mul[std::size_t(a) * m + b] = elem((a * b) % m);
    }
  return finish(m, std::move(add), std::move(mul),
                "zmod(" + std::to_string(m) + ")", order_cap);
}

Ring FiniteRing::trunc_poly(const Ring& base, unsigned k, unsigned order_cap) {
  if (k < 2) throw RingstabError("trunc_poly: truncation degree must be >= 2");
  unsigned q = base->order();
  std::uint64_t ord = 1;
  for (unsigned i = 0; i < k; ++i) {
    ord *= q;
    if (ord > order_cap)
      throw RingstabError("trunc_poly: order exceeds cap");
  }
  unsigned order = unsigned(ord);
  auto digits = [&](unsigned code, std::vector<elem>& d) {
    for (unsigned i = 0; i < k; ++i) { d[i] = elem(code % q); code /= q; }
  };
  std::vector<elem> da(k), db(k), dc(k);
  std::vector<elem> add(std::size_t(order) * order), mul(std::size_t(order) * order);
  for (unsigned a = 0; a < order; ++a) {
    digits(a, da);
    for (unsigned b = 0; b < order; ++b) {
      digits(b, db);
      unsigned s = 0;
      for (unsigned i = k; i-- > 0;) s = s * q + base->add(da[i], db[i]);
      add[std::size_t(a) * order + b] = elem(s);
      for (unsigned i = 0; i < k; ++i) dc[i] = base->zero();
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; i + j < k; ++j)
          dc[i + j] = base->add(dc[i + j], base->mul(da[i], db[j]));
      unsigned p = 0;
      for (unsigned i = k; i-- > 0;) p = p * q + dc[i];
      mul[std::size_t(a) * order + b] = elem(p);
    }
  }
  return finish(order, std::move(add), std::move(mul),
                "trunc_poly(" + base->family() + "," + std::to_string(k) + ")",
                order_cap);
}

namespace {

// Shared builder for matrix-shaped rings: coords lists the (row,col) pairs
// that may be nonzero, in code-digit order.
Ring build_matrix_like(unsigned k, const Ring& base,
                       const std::vector<std::pair<unsigned, unsigned>>& coords,
                       const std::string& family, unsigned order_cap) {
  unsigned q = base->order();
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    ord *= q;
    if (ord > order_cap) throw RingstabError(family + ": order exceeds cap");
  }
  unsigned order = unsigned(ord);
  // position of each coordinate pair in the digit list, or -1 if forced zero
  std::vector<int> pos(k * k, -1);
  for (std::size_t d = 0; d < coords.size(); ++d)
    pos[coords[d].first * k + coords[d].second] = int(d);

  auto entry = [&](const std::vector<elem>& dig, unsigned i, unsigned j) {
    int p = pos[i * k + j];
    return p < 0 ? base->zero() : dig[std::size_t(p)];
  };
  auto digits = [&](unsigned code, std::vector<elem>& d) {
    for (std::size_t i = 0; i < coords.size(); ++i) { d[i] = elem(code % q); code /= q; }
  };
  std::vector<elem> da(coords.size()), db(coords.size());
  std::vector<elem> add(std::size_t(order) * order), mul(std::size_t(order) * order);
  for (unsigned a = 0; a < order; ++a) {
    digits(a, da);
    for (unsigned b = 0; b < order; ++b) {
      digits(b, db);
      unsigned s = 0, p = 0;
      for (std::size_t d = coords.size(); d-- > 0;)
        s = s * q + base->add(da[d], db[d]);
      add[std::size_t(a) * order + b] = elem(s);
      for (std::size_t d = coords.size(); d-- > 0;) {
        auto [i, j] = coords[d];
        elem acc = base->zero();
        for (unsigned t = 0; t < k; ++t)
          acc = base->add(acc, base->mul(entry(da, i, t), entry(db, t, j)));
        p = p * q + acc;
      }
      mul[std::size_t(a) * order + b] = elem(p);
    }
  }
  return FiniteRing::from_tables(order, std::move(add), std::move(mul), family,
                                 order_cap);
}

}  // namespace

Ring FiniteRing::matrix_ring(unsigned k, const Ring& base, unsigned order_cap) {
  if (k < 1) throw RingstabError("matrix_ring: size must be >= 1");
  std::vector<std::pair<unsigned, unsigned>> coords;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) coords.emplace_back(i, j);
  return build_matrix_like(k, base, coords,
                           "matrix(" + std::to_string(k) + "," + base->family() + ")",
                           order_cap);
}

Ring FiniteRing::upper_triangular(unsigned k, const Ring& base,
                                  unsigned order_cap) {
  if (k < 2) throw RingstabError("upper_triangular: size must be >= 2");
  std::vector<std::pair<unsigned, unsigned>> coords;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i; j < k; ++j) coords.emplace_back(i, j);
  return build_matrix_like(
      k, base, coords,
      "upper_triangular(" + std::to_string(k) + "," + base->family() + ")",
      order_cap);
}

Ring FiniteRing::product(const std::vector<Ring>& parts, unsigned order_cap) {
  if (parts.size() < 2)
    throw RingstabError("product: need at least two factors");
  std::uint64_t ord = 1;
  for (const Ring& p : parts) {
    ord *= p->order();
    if (ord > order_cap) throw RingstabError("product: order exceeds cap");
  }
  unsigned order = unsigned(ord);
  auto digits = [&](unsigned code, std::vector<elem>& d) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      d[i] = elem(code % parts[i]->order());
      code /= parts[i]->order();
    }
  };
  std::vector<elem> da(parts.size()), db(parts.size());
  std::vector<elem> add(std::size_t(order) * order), mul(std::size_t(order) * order);
  for (unsigned a = 0; a < order; ++a) {
    digits(a, da);
    for (unsigned b = 0; b < order; ++b) {
      digits(b, db);
      unsigned s = 0, p = 0;
      for (std::size_t i = parts.size(); i-- > 0;) {
        s = s * parts[i]->order() + parts[i]->add(da[i], db[i]);
        p = p * parts[i]->order() + parts[i]->mul(da[i], db[i]);
      }
      add[std::size_t(a) * order + b] = elem(s);
      mul[std::size_t(a) * order + b] = elem(p);
    }
  }
  std::string family = "product(";
  for (std::size_t i = 0; i < parts.size(); ++i)
    family += (i ? "," : "") + parts[i]->family();
  family += ")";
  return finish(order, std::move(add), std::move(mul), std::move(family),
                order_cap);
}

Ring FiniteRing::from_tables(unsigned order, std::vector<elem> add,
                             std::vector<elem> mul, std::string tag,
                             unsigned order_cap) {
  return finish(order, std::move(add), std::move(mul), std::move(tag),
                order_cap);
}

bool same_ideal(const Ideal& a, const Ideal& b) {
  return a.ring == b.ring && a.members == b.members;
}

namespace {

Ideal make_ideal(const Ring& r, std::vector<char> mask,
                 std::vector<elem> generators) {
  Ideal ideal;
  ideal.ring = r;
  ideal.mask = std::move(mask);
  ideal.generators = std::move(generators);
  for (elem e = 0; e < r->order(); ++e)
    if (ideal.mask[e]) ideal.members.push_back(e);
  return ideal;
}

// Verifies the two-sided ideal conditions on a member mask.
void verify_ideal_mask(const Ring& r, const std::vector<char>& mask,
                       const std::string& what) {
  if (!mask[r->zero()]) throw RingstabError(what + ": missing zero");
  for (elem a = 0; a < r->order(); ++a) {
    if (!mask[a]) continue;
    if (!mask[r->neg(a)])
      throw RingstabError(what + ": not closed under negation");
    for (elem b = 0; b < r->order(); ++b) {
      if (mask[b] && !mask[r->add(a, b)])
        throw RingstabError(what + ": not closed under addition");
      if (!mask[r->mul(a, b)] || !mask[r->mul(b, a)])
        throw RingstabError(what + ": not closed under ring multiplication");
    }
  }
}

}  // namespace

Ideal ideal_generated(const Ring& r, const std::vector<elem>& gens) {
  unsigned order = r->order();
  std::vector<char> mask(order, 0);
  mask[r->zero()] = 1;
  // seed with all two-sided multiples s*g*t
  for (elem g : gens) {
    if (g >= order) throw RingstabError("ideal_generated: code out of range");
    for (elem s = 0; s < order; ++s) {
      elem sg = r->mul(s, g);
      for (elem t = 0; t < order; ++t) mask[r->mul(sg, t)] = 1;
    }
  }
  // additive closure
  bool grew = true;
  while (grew) {
    grew = false;
    for (elem a = 0; a < order; ++a) {
      if (!mask[a]) continue;
      for (elem b = 0; b < order; ++b) {
        if (!mask[b]) continue;
        elem s = r->add(a, b);
        if (!mask[s]) { mask[s] = 1; grew = true; }
      }
    }
  }
  verify_ideal_mask(r, mask, "ideal_generated");
  return make_ideal(r, std::move(mask), gens);
}

Ideal zero_ideal(const Ring& r) { return ideal_generated(r, {}); }

Ideal full_ideal(const Ring& r) { return ideal_generated(r, {r->one()}); }

Ideal ideal_product(const Ideal& lhs, const Ideal& rhs) {
  if (lhs.ring != rhs.ring)
    throw RingstabError("ideal_product: mismatched rings");
  std::vector<elem> gens;
  for (elem a : lhs.members)
    for (elem b : rhs.members) gens.push_back(lhs.ring->mul(a, b));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return ideal_generated(lhs.ring, gens);
}

Ideal ideal_sum(const Ideal& lhs, const Ideal& rhs) {
  if (lhs.ring != rhs.ring) throw RingstabError("ideal_sum: mismatched rings");
  std::vector<elem> gens = lhs.members;
  gens.insert(gens.end(), rhs.members.begin(), rhs.members.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return ideal_generated(lhs.ring, gens);
}

std::vector<Ideal> all_ideals(const Ring& r) {
  std::vector<Ideal> out;
  std::set<std::vector<elem>> seen;
  std::vector<Ideal> queue{zero_ideal(r)};
  seen.insert(queue[0].members);
  while (!queue.empty()) {
    Ideal cur = std::move(queue.back());
    queue.pop_back();
    for (elem x = 0; x < r->order(); ++x) {
      if (cur.contains(x)) continue;
      std::vector<elem> gens = cur.generators;
      gens.push_back(x);
      Ideal next = ideal_generated(r, gens);
      if (seen.insert(next.members).second) queue.push_back(next);
    }
    out.push_back(std::move(cur));
  }
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
    if (a.members.size() != b.members.size())
      return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

std::vector<elem> center_elements(const Ring& r) {
  std::vector<elem> out;
  for (elem c = 0; c < r->order(); ++c) {
    bool central = true;
    for (elem x = 0; x < r->order() && central; ++x)
      central = r->mul(c, x) == r->mul(x, c);
    if (central) out.push_back(c);
  }
  // subring check
  std::vector<char> mask(r->order(), 0);
  for (elem c : out) mask[c] = 1;
  if (!mask[r->zero()] || !mask[r->one()])
    throw RingstabError("center: missing 0 or 1");
  for (elem a : out)
    for (elem b : out)
      if (!mask[r->add(a, b)] || !mask[r->mul(a, b)] || !mask[r->neg(a)])
        throw RingstabError("center: not a subring");
  return out;
}

namespace {

std::vector<char> radical_mask(const Ring& r) {
  std::vector<char> mask(r->order(), 0);
  for (elem x = 0; x < r->order(); ++x) {
    bool in = true;
    for (elem s = 0; s < r->order() && in; ++s)
      in = r->is_unit(r->sub(r->one(), r->mul(s, x)));
    mask[x] = in ? 1 : 0;
  }
  return mask;
}

}  // namespace

Ideal jacobson_radical(const Ring& r) {
  std::vector<char> mask = radical_mask(r);
  verify_ideal_mask(r, mask, "jacobson_radical");
  Ideal rad = make_ideal(r, std::move(mask), {});
  rad.generators = rad.members;
  // the quotient must have trivial radical
  if (!rad.is_full()) {
    QuotientRing q = quotient_ring(r, rad);
    std::vector<char> qmask = radical_mask(q.ring);
    for (elem e = 0; e < q.ring->order(); ++e)
      if (qmask[e] && e != q.ring->zero())
        throw RingstabError("jacobson_radical: quotient radical not trivial");
  }
  return rad;
}

Ideal annihilator(const Ideal& ideal) {
  const Ring& r = ideal.ring;
  std::vector<char> mask(r->order(), 0);
  for (elem x = 0; x < r->order(); ++x) {
    bool in = true;
    for (elem a : ideal.members) {
      if (r->mul(x, a) != r->zero() || r->mul(a, x) != r->zero()) {
        in = false;
        break;
      }
    }
    mask[x] = in ? 1 : 0;
  }
  verify_ideal_mask(r, mask, "annihilator");
  Ideal ann = make_ideal(r, std::move(mask), {});
  ann.generators = ann.members;
  return ann;
}

void RingHom::verify() const {
  if (map.size() != source->order())
    throw RingstabError("hom: value table size mismatch");
  for (elem v : map)
    if (v >= target->order())
      throw RingstabError("hom: value out of range");
  if (map[source->one()] != target->one())
    throw RingstabError("hom: does not preserve 1");
  for (elem a = 0; a < source->order(); ++a)
    for (elem b = 0; b < source->order(); ++b) {
      if (map[source->add(a, b)] != target->add(map[a], map[b]))
        throw RingstabError("hom: not additive at (" + std::to_string(a) +
                            "," + std::to_string(b) + ")");
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw RingstabError("hom: not multiplicative at (" +
                            std::to_string(a) + "," + std::to_string(b) + ")");
    }
}

QuotientRing quotient_ring(const Ring& r, const Ideal& ideal) {
  if (ideal.ring != r) throw RingstabError("quotient_ring: mismatched ring");
  if (ideal.is_full())
    throw RingstabError("quotient_ring: ideal is the whole ring");
  unsigned order = r->order();
  // minimum-code representative of each coset
  std::vector<elem> rep(order);
  for (elem x = 0; x < order; ++x) {
    elem best = x;
    for (elem m : ideal.members) best = std::min(best, r->add(x, m));
    rep[x] = best;
  }
  std::vector<elem> reps;
  for (elem x = 0; x < order; ++x)
    if (rep[x] == x) reps.push_back(x);
  std::vector<elem> index(order, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) index[reps[i]] = elem(i);

  unsigned qorder = unsigned(reps.size());
  std::vector<elem> add(std::size_t(qorder) * qorder),
      mul(std::size_t(qorder) * qorder);
  for (unsigned a = 0; a < qorder; ++a)
    for (unsigned b = 0; b < qorder; ++b) {
      add[std::size_t(a) * qorder + b] = index[rep[r->add(reps[a], reps[b])]];
      mul[std::size_t(a) * qorder + b] = index[rep[r->mul(reps[a], reps[b])]];
    }
  QuotientRing q;
  q.ring = FiniteRing::from_tables(
      qorder, std::move(add), std::move(mul),
      "quotient(" + r->family() + ",[" + elem_list_str(ideal.generators) + "])");
  q.proj.source = r;
  q.proj.target = q.ring;
  q.proj.map.resize(order);
  for (elem x = 0; x < order; ++x) q.proj.map[x] = index[rep[x]];
  q.proj.verify();
  // kernel must be exactly the ideal
  for (elem x = 0; x < order; ++x) {
    bool in_ker = q.proj.map[x] == q.ring->zero();
    if (in_ker != (ideal.contains(x) != 0))
      throw RingstabError("quotient_ring: kernel mismatch at " +
                          std::to_string(x));
  }
  return q;
}

std::string elem_list_str(const std::vector<elem>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace ringstab
