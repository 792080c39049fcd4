#include "ringstab/mat.hpp"

#include <unordered_set>

namespace ringstab {

Mat Mat::identity(const Ring& r, unsigned n) {
  Mat m(r, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, r->one());
  return m;
}

Mat Mat::unit(const Ring& r, unsigned n, unsigned i, unsigned j) {
  Mat m(r, n);
  m.set(i, j, r->one());
  return m;
}

Mat Mat::scalar(const Ring& r, unsigned n, elem c) {
  Mat m(r, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

Mat Mat::diag(const Ring& r, unsigned n, const std::vector<elem>& d) {
  if (d.size() != n) throw RingstabError("diag: wrong length");
  Mat m(r, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, d[i]);
  return m;
}

Mat Mat::transvection(const Ring& r, unsigned n, unsigned i, unsigned j,
                      elem v) {
  if (i == j) throw RingstabError("transvection: indices must differ");
  if (i >= n || j >= n) throw RingstabError("transvection: index out of range");
  Mat m = identity(r, n);
  m.set(i, j, v);
  return m;
}

void mul_into(const FiniteRing& r, unsigned n, const elem* a, const elem* b,
              elem* c) {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      elem acc = r.zero();
      for (unsigned k = 0; k < n; ++k)
        acc = r.add(acc, r.mul(a[i * n + k], b[k * n + j]));
      c[i * n + j] = acc;
    }
}

namespace {

void check_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.ring() != b.ring() || a.dim() != b.dim())
    throw RingstabError(std::string(what) + ": shape or ring mismatch");
}

}  // namespace

Mat mat_add(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "mat_add");
  Mat c(a.ring(), a.dim());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    c.data()[k] = a.ring()->add(a.data()[k], b.data()[k]);
  return c;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "mat_sub");
  Mat c(a.ring(), a.dim());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    c.data()[k] = a.ring()->sub(a.data()[k], b.data()[k]);
  return c;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "mat_mul");
  Mat c(a.ring(), a.dim());
  mul_into(*a.ring(), a.dim(), a.data(), b.data(), c.data());
  return c;
}

Mat mat_neg(const Mat& a) {
  Mat c(a.ring(), a.dim());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    c.data()[k] = a.ring()->neg(a.data()[k]);
  return c;
}

Mat scale_left(elem c, const Mat& a) {
  Mat out(a.ring(), a.dim());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    out.data()[k] = a.ring()->mul(c, a.data()[k]);
  return out;
}

Mat scale_right(const Mat& a, elem c) {
  Mat out(a.ring(), a.dim());
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    out.data()[k] = a.ring()->mul(a.data()[k], c);
  return out;
}

bool is_identity(const Mat& m) {
  const Ring& r = m.ring();
  for (unsigned i = 0; i < m.dim(); ++i)
    for (unsigned j = 0; j < m.dim(); ++j)
      if (m.at(i, j) != (i == j ? r->one() : r->zero())) return false;
  return true;
}

std::optional<Transvection> as_transvection(const Mat& m) {
  const Ring& r = m.ring();
  std::optional<Transvection> found;
  for (unsigned i = 0; i < m.dim(); ++i)
    for (unsigned j = 0; j < m.dim(); ++j) {
      elem v = m.at(i, j);
      if (i == j) {
        if (v != r->one()) return std::nullopt;
      } else if (v != r->zero()) {
        if (found) return std::nullopt;  // two off-diagonal entries
        found = Transvection{i, j, v};
      }
    }
  return found;
}

GroupElement ge_identity(const Ring& r, unsigned n) {
  return {Mat::identity(r, n), Mat::identity(r, n)};
}

GroupElement ge_transvection(const Ring& r, unsigned n, unsigned i, unsigned j,
                             elem v) {
  return {Mat::transvection(r, n, i, j, v),
          Mat::transvection(r, n, i, j, r->neg(v))};
}

GroupElement ge_diag(const Ring& r, unsigned n, const std::vector<elem>& d) {
  std::vector<elem> di(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) di[k] = r->inv(d[k]);
  return {Mat::diag(r, n, d), Mat::diag(r, n, di)};
}

GroupElement ge_mul(const GroupElement& a, const GroupElement& b) {
  return {mat_mul(a.mat, b.mat), mat_mul(b.inv, a.inv)};
}

GroupElement ge_inverse(const GroupElement& a) { return {a.inv, a.mat}; }

std::optional<GroupElement> try_invert(const Mat& m) {
  const Ring& r = m.ring();
  unsigned n = m.dim();
  Mat id = Mat::identity(r, n);
  if (m == id) return GroupElement{id, id};
  std::unordered_set<std::string> seen;
  auto key = [n](const Mat& x) {
    return std::string(reinterpret_cast<const char*>(x.data()),
                       std::size_t(n) * n * sizeof(elem));
  };
  Mat prev = id, cur = m;
  while (true) {
    if (cur == id) {
      // two-sided by construction: prev = m^{p-1}, m*prev = prev*m = m^p = 1
      return GroupElement{m, prev};
    }
    if (!seen.insert(key(cur)).second) return std::nullopt;  // cycle without 1
    Mat next = mat_mul(cur, m);
    prev = std::move(cur);
    cur = std::move(next);
  }
}

Mat conj(const Mat& a, const GroupElement& b) {
  return mat_mul(mat_mul(b.mat, a), b.inv);
}

GroupElement ge_conj(const GroupElement& a, const GroupElement& b) {
  return {mat_mul(mat_mul(b.mat, a.mat), b.inv),
          mat_mul(mat_mul(b.mat, a.inv), b.inv)};
}

Mat comm(const GroupElement& a, const GroupElement& b) {
  return mat_mul(mat_mul(a.mat, b.mat), mat_mul(a.inv, b.inv));
}

GroupElement ge_comm(const GroupElement& a, const GroupElement& b) {
  return {mat_mul(mat_mul(a.mat, b.mat), mat_mul(a.inv, b.inv)),
          mat_mul(mat_mul(b.mat, a.mat), mat_mul(b.inv, a.inv))};
}

Mat transvection_comm_closed_form(const Ring& r, unsigned n,
                                  const Transvection& first,
                                  const Transvection& second) {
  unsigned i = first.i, k = first.j, l = second.i, j = second.j;
  if (i == k || l == j)
    throw RingstabError("closed form: inputs must be transvections (i != k)");
  if (l == k && j == i)
    throw RingstabError("closed form: opposite pair rejected");
  if (i != j) {
    elem v = (k == l) ? r->mul(first.r, second.r) : r->zero();
    if (v == r->zero()) return Mat::identity(r, n);
    return Mat::transvection(r, n, i, j, v);
  }
  // i == j forces l != k here
  elem v = r->neg(r->mul(second.r, first.r));
  if (v == r->zero()) return Mat::identity(r, n);
  return Mat::transvection(r, n, l, k, v);
}

namespace {

GroupElement triple_comm(const GroupElement& x, const GroupElement& y,
                         const GroupElement& z) {
  return ge_comm(ge_comm(x, y), z);
}

}  // namespace

Mat hall_witness_product(const GroupElement& a, const GroupElement& b,
                         const GroupElement& c) {
  GroupElement t1 = ge_conj(triple_comm(ge_inverse(a), b, c), a);
  GroupElement t2 = ge_conj(triple_comm(ge_inverse(c), a, b), c);
  GroupElement t3 = ge_conj(triple_comm(ge_inverse(b), c, a), b);
  return mat_mul(mat_mul(t1.mat, t2.mat), t3.mat);
}

Mat FactorWord::product() const {
  Mat acc = Mat::identity(target.ring(), target.dim());
  for (const Factor& f : factors) acc = mat_mul(acc, f.mat);
  return acc;
}

Factor make_factor(Mat m, std::string role) {
  Factor f;
  f.tv = as_transvection(m);
  if (f.tv) {
    f.kind = FactorKind::transvection;
  } else {
    bool diag = true;
    for (unsigned i = 0; i < m.dim() && diag; ++i)
      for (unsigned j = 0; j < m.dim() && diag; ++j)
        if (i != j && m.at(i, j) != m.ring()->zero()) diag = false;
    f.kind = diag ? FactorKind::diagonal : FactorKind::block;
  }
  f.mat = std::move(m);
  f.role = std::move(role);
  return f;
}

FactorWord square_zero_pair_factorization(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "square_zero_pair_factorization");
  const Ring& r = a.ring();
  unsigned n = a.dim();
  Mat zero(r, n);
  if (mat_mul(a, a) != zero || mat_mul(b, b) != zero)
    throw RingstabError("square_zero_pair_factorization: a^2 or b^2 nonzero");
  Mat id = Mat::identity(r, n);
  Mat one_ab = mat_add(id, mat_mul(a, b));
  auto inv = try_invert(one_ab);
  if (!inv)
    throw RingstabError("square_zero_pair_factorization: 1+ab not invertible");
  Mat g = inv->inv;
  // certify the inverse two-sided before using it
  if (mat_mul(one_ab, g) != id || mat_mul(g, one_ab) != id)
    throw RingstabError("square_zero_pair_factorization: bad inverse");
  Mat one_minus_g = mat_sub(id, g);

  // [1-b, 1+a]; with b^2 = a^2 = 0 the inverses are 1+b and 1-a
  GroupElement gb{mat_sub(id, b), mat_add(id, b)};
  GroupElement ga{mat_add(id, a), mat_sub(id, a)};

  FactorWord w;
  w.target = one_ab;
  w.factors.push_back(
      make_factor(mat_add(id, mat_mul(b, one_minus_g)), "1+b(1-g)"));
  w.factors.push_back(make_factor(comm(gb, ga), "[1-b,1+a]"));
  w.factors.push_back(
      make_factor(mat_add(id, mat_mul(one_minus_g, a)), "1+(1-g)a"));
  w.factors.push_back(make_factor(mat_add(id, mat_mul(b, a)), "1+ba"));
  if (!w.check())
    throw RingstabError("square_zero_pair_factorization: product mismatch");
  return w;
}

FactorWord diag_unit_pair_word(const Ring& r, elem x) {
  elem xi = r->inv(x);
  FactorWord w;
  w.target = Mat::diag(r, 2, {x, xi});
  auto tv = [&](unsigned i, unsigned j, elem v, const char* role) {
    w.factors.push_back(make_factor(Mat::transvection(r, 2, i, j, v), role));
  };
  tv(0, 1, x, "t12(x)");
  tv(1, 0, r->neg(xi), "t21(-x^-1)");
  tv(0, 1, x, "t12(x)");
  tv(0, 1, r->neg(r->one()), "t12(-1)");
  tv(1, 0, r->one(), "t21(1)");
  tv(0, 1, r->neg(r->one()), "t12(-1)");
  if (!w.check()) throw RingstabError("diag_unit_pair_word: product mismatch");
  return w;
}

FactorWord embed_2x2_word(const FactorWord& w, unsigned n, unsigned i,
                          unsigned j) {
  if (i == j || i >= n || j >= n)
    throw RingstabError("embed_2x2_word: bad target indices");
  const Ring& r = w.target.ring();
  auto embed = [&](const Mat& m) {
    Mat out = Mat::identity(r, n);
    unsigned rows[2] = {i, j};
    for (unsigned a = 0; a < 2; ++a)
      for (unsigned b = 0; b < 2; ++b) out.set(rows[a], rows[b], m.at(a, b));
    return out;
  };
  FactorWord out;
  out.target = embed(w.target);
  for (const Factor& f : w.factors)
    out.factors.push_back(make_factor(embed(f.mat), f.role));
  if (!out.check()) throw RingstabError("embed_2x2_word: product mismatch");
  return out;
}

std::vector<Factor> row_unipotent_factors(const Mat& u, unsigned l,
                                          const std::string& role) {
  const Ring& r = u.ring();
  unsigned n = u.dim();
  Mat rebuilt = Mat::identity(r, n);
  std::vector<Factor> out;
  for (unsigned t = 0; t < n; ++t) {
    if (t == l) continue;
    elem v = u.at(l, t);
    if (v == r->zero()) continue;
    out.push_back(make_factor(Mat::transvection(r, n, l, t, v),
                              role + "[" + std::to_string(t) + "]"));
    rebuilt.set(l, t, v);
  }
  if (rebuilt != u)
    throw RingstabError("row_unipotent_factors: not a row unipotent");
  return out;
}

std::vector<Factor> col_unipotent_factors(const Mat& u, unsigned l,
                                          const std::string& role) {
  const Ring& r = u.ring();
  unsigned n = u.dim();
  Mat rebuilt = Mat::identity(r, n);
  std::vector<Factor> out;
  for (unsigned t = 0; t < n; ++t) {
    if (t == l) continue;
    elem v = u.at(t, l);
    if (v == r->zero()) continue;
    out.push_back(make_factor(Mat::transvection(r, n, t, l, v),
                              role + "[" + std::to_string(t) + "]"));
    rebuilt.set(t, l, v);
  }
  if (rebuilt != u)
    throw RingstabError("col_unipotent_factors: not a column unipotent");
  return out;
}

}  // namespace ringstab
