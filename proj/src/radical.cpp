#include "dgforge/radical.hpp"

#include <random>

namespace dgforge {

template <class K> Subspace<K> underlying_radical(const FdDga<K>& a) {
  const int n = a.dim();
  if (n == 0) return Subspace<K>(0);
  if (!a.field().is_rational() && a.field().prime <= static_cast<std::uint32_t>(n))
    throw Error(Errc::field_too_small, "trace form radical needs p > dim A = " + std::to_string(n));
  std::vector<K> tr(n, a.lit(0));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (auto& [i, x] : a.product(l, k))
        if (i == k) tr[l] += x;
  Mat<K> form = Mat<K>::Constant(n, n, a.lit(0));  // form(j, i) = tr(L_{e_i e_j})
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (auto& [l, x] : a.product(i, j)) form(j, i) += x * tr[l];
  Subspace<K> j = Subspace<K>::from_columns(null_space<K>(form));
  if (!is_graded(a, j)) throw Error(Errc::non_graded_radical, "radical of the underlying algebra is not graded");
  if (!is_two_sided_ideal(a, j)) throw Error(Errc::invariant_violation, "trace form kernel is not an ideal");
  return j;
}

template <class K> DgIdeals<K> dg_ideals(const FdDga<K>& a) {
  DgIdeals<K> out;
  out.radical = underlying_radical(a);
  Mat<K> d = a.differential_matrix();
  out.plus = sum(out.radical, image<K>(d, out.radical));
  out.minus = intersect(out.radical, preimage<K>(d, out.radical));
  return out;
}

template <class K> Subspace<K> ideal_power(const FdDga<K>& a, const Subspace<K>& ideal, int n) {
  Subspace<K> p = Subspace<K>::whole(a.dim());
  for (int i = 0; i < n; ++i) p = product_space(a, p, ideal);
  return p;
}

template <class K> int nilpotency_index(const FdDga<K>& a, const Subspace<K>& ideal) {
  Subspace<K> p = Subspace<K>::whole(a.dim());
  for (int i = 0; i <= a.dim() + 1; ++i) {
    if (p.empty()) return i;
    p = product_space(a, p, ideal);
  }
  return -1;
}

namespace {

// Rows: equations mu(p) = 1 and (e_a x 1) p - p (1 x e_a) = 0 on the degree zero pairs.
template <class K> std::pair<Mat<K>, Mat<K>> separability_system(const FdDga<K>& a, std::vector<int>& pairs) {
  const int n = a.dim();
  pairs.clear();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.degree(i) + a.degree(j) == 0) pairs.push_back(i * n + j);
  const Index nv = static_cast<Index>(pairs.size()), nn = static_cast<Index>(n) * n;
  Mat<K> m = Mat<K>::Constant(n + n * nn, nv, a.lit(0));
  Mat<K> rhs = Mat<K>::Constant(n + n * nn, 1, a.lit(0));
  rhs(a.unit(), 0) = a.lit(1);
  for (Index v = 0; v < nv; ++v) {
    int i = pairs[v] / n, j = pairs[v] % n;
    for (auto& [k, x] : a.product(i, j)) m(k, v) += x;
    for (int e = 0; e < n; ++e) {
      Index base = n + static_cast<Index>(e) * nn;
      for (auto& [k, x] : a.product(e, i)) m(base + k * n + j, v) += x;
      for (auto& [k, x] : a.product(j, e)) m(base + i * n + k, v) -= x;
    }
  }
  return {m, rhs};
}

template <class K> Vec<K> degree_zero_part(const FdDga<K>& a, const Vec<K>& p) {
  const int n = a.dim();
  Vec<K> q = p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.degree(i) + a.degree(j) != 0) q(i * n + j) = a.lit(0);
  return q;
}

}  // namespace

template <class K> bool is_separability_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& p) {
  const int n = a.dim();
  if (n == 0) return p.coeffs.size() == 0;
  if (p.coeffs.size() != static_cast<Index>(n) * n) return false;
  Vec<K> mu = a.zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!is_zero(p.coeffs(i * n + j))) add_to(mu, a.product(i, j), p.coeffs(i * n + j));
  if (mu != a.unit_vector()) return false;
  for (int e = 0; e < n; ++e) {
    Vec<K> lhs = Vec<K>::Constant(static_cast<Index>(n) * n, a.lit(0)), rhs = lhs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const K& c = p.coeffs(i * n + j);
        if (is_zero(c)) continue;
        for (auto& [k, x] : a.product(e, i)) lhs(k * n + j) += c * x;
        for (auto& [k, x] : a.product(j, e)) rhs(i * n + k) += c * x;
      }
    if (lhs != rhs) return false;
  }
  return true;
}

template <class K> std::optional<SeparabilityIdempotent<K>> is_separable(const FdDga<K>& a) {
  const int n = a.dim();
  if (n == 0) return SeparabilityIdempotent<K>{Vec<K>(0)};
  std::vector<int> pairs;
  auto [m, rhs] = separability_system(a, pairs);
  auto x = solve<K>(m, rhs);
  if (!x) return std::nullopt;
  SeparabilityIdempotent<K> p{Vec<K>::Constant(static_cast<Index>(n) * n, a.lit(0))};
  for (std::size_t v = 0; v < pairs.size(); ++v) p.coeffs(pairs[v]) = (*x)(static_cast<Index>(v), 0);
  if (!is_separability_idempotent(a, p)) throw Error(Errc::invariant_violation, "separability solve is inconsistent");
  return p;
}

template <class K>
SeparabilityIdempotent<K> opposite_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& p) {
  const int n = a.dim();
  SeparabilityIdempotent<K> q{Vec<K>::Constant(static_cast<Index>(n) * n, a.lit(0))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q.coeffs(j * n + i) = a.lit(koszul_sign(a.degree(i), a.degree(j))) * p.coeffs(i * n + j);
  if (!is_separability_idempotent(opposite_dga(a), q))
    throw Error(Errc::invariant_violation, "opposite separability idempotent fails");
  return q;
}

template <class K>
SeparabilityIdempotent<K> tensor_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& pa_in,
                                            const FdDga<K>& b, const SeparabilityIdempotent<K>& pb_in) {
  auto c = tensor_dga(a, b);
  if (c.is_zero_ring()) return {Vec<K>(0)};
  Vec<K> pa = degree_zero_part(a, pa_in.coeffs), pb = degree_zero_part(b, pb_in.coeffs);
  const int na = a.dim(), nb = b.dim(), nc = c.dim();
  SeparabilityIdempotent<K> p{Vec<K>::Constant(static_cast<Index>(nc) * nc, a.lit(0))};
  for (int i = 0; i < na; ++i)
    for (int i2 = 0; i2 < na; ++i2) {
      const K& x = pa(i * na + i2);
      if (is_zero(x)) continue;
      for (int j = 0; j < nb; ++j)
        for (int j2 = 0; j2 < nb; ++j2) {
          const K& y = pb(j * nb + j2);
          if (is_zero(y)) continue;
          int c1 = i * nb + j, c2 = i2 * nb + j2;
          p.coeffs(static_cast<Index>(c1) * nc + c2) += a.lit(koszul_sign(b.degree(j), a.degree(i2))) * x * y;
        }
    }
  if (!is_separability_idempotent(c, p))
    throw Error(Errc::invariant_violation, "tensor of separability idempotents fails the identities");
  return p;
}

template <class K> FiltrationWitness<K> radical_filtration(const DgModule<K>& m) {
  auto ideals = dg_ideals(m.algebra());
  FiltrationWitness<K> w;
  Subspace<K> cur = Subspace<K>::whole(m.dim());
  for (int step = 0; step <= m.dim() + 1; ++step) {
    w.chain.push_back(cur);
    if (cur.empty()) break;
    Subspace<K> next(m.dim());
    {
      std::vector<Vec<K>> vs;
      for (Index r = 0; r < cur.dim(); ++r)
        for (Index j = 0; j < ideals.minus.dim(); ++j) vs.push_back(m.act(cur.vector(r), ideals.minus.vector(j)));
      if (!vs.empty()) {
        Mat<K> cols(m.dim(), static_cast<Index>(vs.size()));
        for (std::size_t k = 0; k < vs.size(); ++k) cols.col(static_cast<Index>(k)) = vs[k];
        next = Subspace<K>::from_columns(cols);
      }
    }
    if (next == cur) throw Error(Errc::invariant_violation, "radical filtration does not terminate");
    auto [sub, incl] = submodule(m, cur);
    Mat<K> rows(next.dim(), cur.dim());
    for (Index r = 0; r < next.dim(); ++r) rows.row(r) = cur.coordinates(next.vector(r)).transpose();
    auto factor = quotient_module(sub, Subspace<K>::from_rows(rows)).first;
    for (int i = 0; i < factor.dim(); ++i)
      for (Index j = 0; j < ideals.minus.dim(); ++j)
        if (!is_zero_matrix<K>(factor.act(factor.basis_vector(i), ideals.minus.vector(j))))
          throw Error(Errc::invariant_violation, "filtration factor is not killed by J_-");
    w.factors.push_back(std::move(factor));
    cur = next;
  }
  return w;
}

template <class K> DgModule<K> diagonal_bimodule(DgaPtr<K> a, DgaPtr<K> env) {
  if (!env)
    env = share(enveloping(*a));
  const int n = a->dim();
  if (env->dim() != n * n) throw Error(Errc::precondition_failed, "diagonal_bimodule: wrong enveloping algebra");
  std::vector<Combination<K>> action(static_cast<std::size_t>(n) * n * n), diff(n);
  for (int m = 0; m < n; ++m) {
    diff[m] = a->differential(m);
    for (int i = 0; i < n; ++i) {
      Vec<K> im = a->zero();
      add_to(im, a->product(i, m), a->lit(koszul_sign(a->degree(i), a->degree(m))));
      for (int j = 0; j < n; ++j) {
        Vec<K> imj = a->multiply(im, a->basis_vector(j));
        action[static_cast<std::size_t>(m) * n * n + i * n + j] = to_combination<K>(imj);
      }
    }
  }
  return DgModule<K>(std::move(env), a->basis(), std::move(action), std::move(diff));
}

template <class K> FiltrationWitness<K> bimodule_filtration(const FdDga<K>& a) {
  auto ap = share(a);
  auto ideals = dg_ideals(a);
  auto diag = diagonal_bimodule(ap);
  FiltrationWitness<K> w;
  Subspace<K> cur = Subspace<K>::whole(a.dim());
  for (int step = 0; step <= a.dim() + 1; ++step) {
    w.chain.push_back(cur);
    if (cur.empty()) break;
    Subspace<K> next = product_space(a, cur, ideals.minus);
    if (next == cur) throw Error(Errc::invariant_violation, "powers of J_- do not terminate");
    auto [sub, incl] = submodule(diag, cur);
    Mat<K> rows(next.dim(), cur.dim());
    for (Index r = 0; r < next.dim(); ++r) rows.row(r) = cur.coordinates(next.vector(r)).transpose();
    auto factor = quotient_module(sub, Subspace<K>::from_rows(rows)).first;
    const int n = a.dim();
    for (Index j = 0; j < ideals.minus.dim(); ++j) {
      Vec<K> jv = ideals.minus.vector(j);
      Vec<K> left = Vec<K>::Constant(static_cast<Index>(n) * n, a.lit(0)), right = left;
      for (int k = 0; k < n; ++k) {
        left(k * n + a.unit()) = jv(k);
        right(a.unit() * n + k) = jv(k);
      }
      for (int i = 0; i < factor.dim(); ++i)
        if (!is_zero_matrix<K>(factor.act(factor.basis_vector(i), left)) ||
            !is_zero_matrix<K>(factor.act(factor.basis_vector(i), right)))
          throw Error(Errc::invariant_violation, "bimodule factor is not killed by J_-");
    }
    w.factors.push_back(std::move(factor));
    cur = next;
  }
  return w;
}

namespace {

// Roots in the base field of a monic polynomial c[0] + c[1] t + ... + t^n.
std::vector<Rational> field_roots(const std::vector<Rational>& c) {
  using mpz_int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
  mpz_int l = 1;
  for (auto& x : c) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  std::vector<mpz_int> z;
  for (auto& x : c) z.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
  std::vector<Rational> roots;
  std::size_t lo = 0;
  while (lo < z.size() && z[lo] == 0) ++lo;
  if (lo > 0) roots.push_back(Rational(0));
  if (lo >= z.size() - 1) return roots;
  auto divisors = [](mpz_int v) -> std::optional<std::vector<mpz_int>> {
    if (v < 0) v = -v;
    if (v > mpz_int(1000000000000LL)) return std::nullopt;
    std::vector<mpz_int> out;
    for (mpz_int d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        out.push_back(d);
        if (d * d != v) out.push_back(v / d);
      }
    return out;
  };
  auto ps = divisors(z[lo]), qs = divisors(z.back());
  if (!ps || !qs) return roots;
  auto eval = [&](const Rational& r) {
    Rational acc = 0;
    for (std::size_t i = z.size(); i-- > 0;) acc = acc * r + Rational(z[i]);
    return acc;
  };
  std::vector<Rational> cand;
  for (auto& p : *ps)
    for (auto& q : *qs) {
      cand.push_back(Rational(p, q));
      cand.push_back(Rational(-p, q));
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (auto& r : cand)
    if (eval(r) == 0) roots.push_back(r);
  return roots;
}

std::vector<Fp> field_roots(const std::vector<Fp>& c) {
  std::vector<Fp> roots;
  std::uint32_t p = 0;
  for (auto& x : c) p = std::max(p, x.modulus());
  if (p == 0 || p > 200000) return roots;
  for (std::uint32_t r = 0; r < p; ++r) {
    Fp x(p, r), acc(p, 0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

// Splits e in S (zero differential, semisimple) using x in eSe; returns f with f^2 = f, f != 0, e.
template <class K> std::optional<Vec<K>> split_with(const FdDga<K>& s, const Vec<K>& e, const Vec<K>& x) {
  std::vector<Vec<K>> pw{e, x};
  std::vector<K> coeffs;  // minimal polynomial, monic
  for (int k = 1; k <= s.dim() + 1; ++k) {
    Mat<K> prev(s.dim(), k);
    for (int i = 0; i < k; ++i) prev.col(i) = pw[i];
    auto sol = solve<K>(prev, Mat<K>(pw[k]));
    if (sol) {
      for (int i = 0; i < k; ++i) coeffs.push_back(-(*sol)(i, 0));
      coeffs.push_back(s.lit(1));
      break;
    }
    pw.push_back(s.multiply(pw.back(), x));
  }
  if (coeffs.size() < 3) return std::nullopt;
  for (const K& r : field_roots(coeffs)) {
    // q = m / (t - r) by synthetic division
    std::size_t deg = coeffs.size() - 1;
    std::vector<K> q(deg, s.lit(0));
    K carry = s.lit(0);
    for (std::size_t i = deg; i-- > 0;) {
      carry = coeffs[i + 1] + carry * r;
      q[i] = carry;
    }
    K qr = s.lit(0);
    for (std::size_t i = q.size(); i-- > 0;) qr = qr * r + q[i];
    if (is_zero(qr)) continue;
    Vec<K> f = s.zero();
    for (std::size_t i = q.size(); i-- > 0;) f = Vec<K>(s.multiply(f, x)) + q[i] * e;
    f = f / qr;
    if (s.multiply(f, f) != f || is_zero_matrix<K>(f) || f == e) continue;
    return f;
  }
  return std::nullopt;
}

}  // namespace

template <class K> IdempotentSet<K> primitive_idempotents(const FdDga<K>& a) {
  IdempotentSet<K> out;
  if (a.is_zero_ring()) return out;
  IdempotentSet<K> fallback{{a.unit_vector()}, false};
  Subspace<K> j;
  try {
    j = underlying_radical(a);
  } catch (const Error&) {
    return fallback;
  }
  auto [s, pi] = quotient_dga(a, j, QuotientDifferential::drop);
  auto section_opt = solve<K>(pi.matrix, Mat<K>(Mat<K>::Identity(s.dim(), s.dim()) * a.lit(1)));
  if (!section_opt) return fallback;
  const Mat<K>& section = *section_opt;

  std::vector<int> zero_deg = s.indices_in_degree(0);
  std::vector<Vec<K>> done, todo{s.unit_vector()};
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> coef(-2, 2);
  while (!todo.empty()) {
    Vec<K> e = todo.back();
    todo.pop_back();
    std::optional<Vec<K>> f;
    std::vector<Vec<K>> cands;
    for (int b : zero_deg) cands.push_back(s.multiply(s.multiply(e, s.basis_vector(b)), e));
    for (int t = 0; t < 4; ++t) {
      Vec<K> y = s.zero();
      for (int b : zero_deg) y(b) = a.lit(coef(rng));
      cands.push_back(s.multiply(s.multiply(e, y), e));
    }
    for (auto& x : cands) {
      f = split_with(s, e, x);
      if (f) break;
    }
    if (!f) {
      done.push_back(e);
      continue;
    }
    todo.push_back(Vec<K>(e - *f));
    todo.push_back(*f);
  }
  // Lift one at a time inside the corner orthogonal to the ones already lifted.
  Vec<K> one = a.unit_vector(), used = a.zero();
  for (std::size_t k = 0; k + 1 < done.size(); ++k) {
    Vec<K> c = one - used;
    Vec<K> x = a.multiply(a.multiply(c, Vec<K>(section * done[k])), c);
    bool ok = false;
    for (int it = 0; it < 64; ++it) {
      Vec<K> x2 = a.multiply(x, x);
      if (x2 == x) {
        ok = true;
        break;
      }
      x = a.lit(3) * x2 - a.lit(2) * a.multiply(x2, x);
    }
    if (!ok) return fallback;
    out.idempotents.push_back(x);
    used += x;
  }
  out.idempotents.push_back(one - used);
  for (auto& e : out.idempotents) {
    if (!is_zero_matrix<K>(a.d(e)) || a.multiply(e, e) != e) return fallback;
  }
  for (std::size_t p = 0; p < out.idempotents.size(); ++p)
    for (std::size_t q = 0; q < out.idempotents.size(); ++q)
      if (p != q && !is_zero_matrix<K>(a.multiply(out.idempotents[p], out.idempotents[q]))) return fallback;
  return out;
}

template <class K> std::vector<DgModule<K>> simple_modules(DgaPtr<K> a) {
  std::vector<DgModule<K>> out;
  auto ideals = dg_ideals(*a);
  auto reg = regular_module(a);
  for (auto& e : primitive_idempotents(*a).idempotents) {
    Subspace<K> ea = Subspace<K>::from_columns(a->left_multiplication(e));
    auto [sub, incl] = submodule(reg, ea);
    Subspace<K> ej = image<K>(a->left_multiplication(e), ideals.minus);
    Mat<K> rows(ej.dim(), ea.dim());
    for (Index r = 0; r < ej.dim(); ++r) rows.row(r) = ea.coordinates(ej.vector(r)).transpose();
    out.push_back(quotient_module(sub, Subspace<K>::from_rows(rows)).first);
  }
  return out;
}

#define DGFORGE_INSTANTIATE(K)                                                                                  \
  template Subspace<K> underlying_radical<K>(const FdDga<K>&);                                                  \
  template DgIdeals<K> dg_ideals<K>(const FdDga<K>&);                                                           \
  template Subspace<K> ideal_power<K>(const FdDga<K>&, const Subspace<K>&, int);                                \
  template int nilpotency_index<K>(const FdDga<K>&, const Subspace<K>&);                                        \
  template bool is_separability_idempotent<K>(const FdDga<K>&, const SeparabilityIdempotent<K>&);               \
  template std::optional<SeparabilityIdempotent<K>> is_separable<K>(const FdDga<K>&);                           \
  template SeparabilityIdempotent<K> opposite_idempotent<K>(const FdDga<K>&, const SeparabilityIdempotent<K>&); \
  template SeparabilityIdempotent<K> tensor_idempotent<K>(const FdDga<K>&, const SeparabilityIdempotent<K>&,    \
                                                          const FdDga<K>&, const SeparabilityIdempotent<K>&);   \
  template FiltrationWitness<K> radical_filtration<K>(const DgModule<K>&);                                      \
  template DgModule<K> diagonal_bimodule<K>(DgaPtr<K>, DgaPtr<K>);                                              \
  template FiltrationWitness<K> bimodule_filtration<K>(const FdDga<K>&);                                        \
  template IdempotentSet<K> primitive_idempotents<K>(const FdDga<K>&);                                          \
  template std::vector<DgModule<K>> simple_modules<K>(DgaPtr<K>);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
