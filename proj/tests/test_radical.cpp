#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgforge/radical.hpp"

using namespace dgforge;
using Q = Rational;

namespace {

FdDga<Q> B(const char* name) { return builtin_example<Q>(name); }

Subspace<Q> span_of(const FdDga<Q>& a, std::vector<const char*> names) {
  Mat<Q> rows = Mat<Q>::Zero(static_cast<Index>(names.size()), a.dim());
  for (std::size_t r = 0; r < names.size(); ++r) rows(static_cast<Index>(r), *a.index_of(names[r])) = 1;
  return Subspace<Q>::from_rows(rows);
}

bool nilpotent(const Mat<Q>& m) {
  Mat<Q> p = m;
  for (Index i = 0; i < m.rows(); ++i) p = p * m;
  return is_zero_matrix<Q>(p);
}

// J is the largest nil ideal: every x y with x in J is nilpotent, and A/J has no radical.
void check_radical_oracle(const FdDga<Q>& a, const Subspace<Q>& j) {
  REQUIRE(is_two_sided_ideal(a, j));
  for (Index r = 0; r < j.dim(); ++r)
    for (int b = 0; b < a.dim(); ++b)
      REQUIRE(nilpotent(a.left_multiplication(a.multiply(j.vector(r), a.basis_vector(b)))));
  auto q = quotient_dga(a, j, QuotientDifferential::drop).first;
  REQUIRE(underlying_radical(q).empty());
}

std::vector<FdDga<Q>> corpus() {
  std::vector<FdDga<Q>> algs;
  for (auto& n : builtin_names()) algs.push_back(B(n.c_str()));
  return algs;
}

std::vector<FdDga<Q>> random_tensor_products(int count) {
  auto algs = corpus();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, algs.size() - 1);
  std::vector<FdDga<Q>> out;
  for (int i = 0; i < count; ++i) out.push_back(tensor_dga(algs[pick(rng)], algs[pick(rng)]));
  return out;
}

Vec<Q> pair_vec(const FdDga<Q>& a, std::vector<std::tuple<const char*, const char*, long>> terms) {
  Vec<Q> v = Vec<Q>::Zero(static_cast<Index>(a.dim()) * a.dim());
  for (auto& [x, y, c] : terms) v(*a.index_of(x) * a.dim() + *a.index_of(y)) += Q(c);
  return v;
}

}  // namespace

TEST_CASE("underlying radical examples") {
  REQUIRE(underlying_radical(B("point")).empty());
  auto d = B("dual_numbers");
  REQUIRE(underlying_radical(d) == span_of(d, {"x"}));
  auto t2 = B("a2_path");
  REQUIRE(underlying_radical(t2) == span_of(t2, {"e12"}));
  for (auto& a : corpus()) check_radical_oracle(a, underlying_radical(a));
  for (auto& a : random_tensor_products(6)) check_radical_oracle(a, underlying_radical(a));
  REQUIRE(underlying_radical(matrix_algebra<Q>(2)).empty());
}

TEST_CASE("small prime fields are rejected") {
  auto l = builtin_example<Fp>("local_square_zero_2", FieldSpec::prime_field(3));
  REQUIRE_THROWS_AS(underlying_radical(l), Error);
  try {
    underlying_radical(l);
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::field_too_small);
  }
  auto l5 = builtin_example<Fp>("local_square_zero_2", FieldSpec::prime_field(5));
  REQUIRE(underlying_radical(l5).dim() == 2);
}

TEST_CASE("dg ideals") {
  auto d = B("dual_numbers");
  auto id = dg_ideals(d);
  REQUIRE(id.minus == span_of(d, {"x"}));
  REQUIRE(id.plus == span_of(d, {"x"}));
  auto acy = B("acyclic");
  auto ia = dg_ideals(acy);
  REQUIRE(ia.minus.empty());
  REQUIRE(ia.plus == Subspace<Q>::whole(2));
  auto x = B("dual_numbers_deg1");
  REQUIRE(dg_ideals(x).minus == span_of(x, {"x"}));
  REQUIRE(dg_ideals(x).plus == span_of(x, {"x"}));

  auto algs = corpus();
  for (auto& t : random_tensor_products(10)) algs.push_back(t);
  for (auto& a : algs) {
    auto i = dg_ideals(a);
    REQUIRE(i.radical.contains(i.minus));
    REQUIRE(i.plus.contains(i.radical));
    for (auto* s : {&i.minus, &i.plus}) {
      REQUIRE(is_d_closed(a, *s));
      REQUIRE(is_two_sided_ideal(a, *s));
    }
    REQUIRE(cohomology_of_complex(subcomplex(a, i.minus)).compact() ==
            cohomology_of_complex(subcomplex(a, i.plus)).compact());
    int nil = nilpotency_index(a, i.radical);
    REQUIRE(nil >= 0);
    REQUIRE(nil <= a.dim() + 1);
  }
}

TEST_CASE("quotients by the dg ideals") {
  auto d = B("dual_numbers");
  REQUIRE(quotient_dga(d, dg_ideals(d).minus).first.dim() == 1);
  auto acy = B("acyclic");
  REQUIRE(quotient_dga(acy, dg_ideals(acy).plus).first.is_zero_ring());
  auto l = B("local_square_zero_2");
  REQUIRE(quotient_dga(l, dg_ideals(l).minus).first.dim() == 1);
  REQUIRE(ideal_power(l, dg_ideals(l).radical, 2).empty());
}

TEST_CASE("separability") {
  auto k = B("point");
  auto pk = is_separable(k);
  REQUIRE(pk);
  REQUIRE(pk->coeffs == pair_vec(k, {{"1", "1", 1}}));

  // k x k with e2 = 1 - e1: p = e1|e1 + e2|e2 = 1|1 - 1|e1 - e1|1 + 2 e1|e1
  auto kk = split_semisimple<Q>(2);
  auto pkk = is_separable(kk);
  REQUIRE(pkk);
  REQUIRE(pkk->coeffs == pair_vec(kk, {{"1", "1", 1}, {"1", "e1", -1}, {"e1", "1", -1}, {"e1", "e1", 2}}));

  REQUIRE_FALSE(is_separable(B("dual_numbers")));
  REQUIRE_FALSE(is_separable(B("a2_path")));

  for (auto a : {matrix_algebra<Q>(2), matrix_algebra<Q>(2, {0, 1}), split_semisimple<Q>(3), k, kk}) {
    auto p = is_separable(a);
    REQUIRE(p);
    REQUIRE(is_separability_idempotent(a, *p));
    auto q = opposite_idempotent(a, *p);
    REQUIRE(is_separability_idempotent(opposite_dga(a), q));
    auto t = tensor_idempotent(a, *p, a, *p);
    REQUIRE(is_separability_idempotent(tensor_dga(a, a), t));
  }
  // (k x k) (x) (k x k): four diagonal terms, no signs
  auto t = tensor_idempotent(kk, *pkk, kk, *pkk);
  auto kk2 = tensor_dga(kk, kk);
  REQUIRE(is_separability_idempotent(kk2, t));
  REQUIRE(t.coeffs == is_separable(kk2)->coeffs);

  // Graded matrices: odd E12, E21 exercise the signs.
  auto g = matrix_algebra<Q>(2, {0, 1});
  auto pg = is_separable(g);
  auto gg = tensor_dga(g, g);
  auto tg = tensor_idempotent(g, *pg, g, *pg);
  REQUIRE(is_separability_idempotent(gg, tg));
  // Without the sign the same formula is not central.
  SeparabilityIdempotent<Q> unsigned_p{Vec<Q>::Zero(tg.coeffs.size())};
  const int n = g.dim(), nc = gg.dim();
  for (int i = 0; i < n; ++i)
    for (int i2 = 0; i2 < n; ++i2)
      for (int j = 0; j < n; ++j)
        for (int j2 = 0; j2 < n; ++j2)
          unsigned_p.coeffs(static_cast<Index>(i * n + j) * nc + i2 * n + j2) +=
              pg->coeffs(i * n + i2) * pg->coeffs(j * n + j2);
  REQUIRE_FALSE(is_separability_idempotent(gg, unsigned_p));
}

TEST_CASE("semisimple quotients have separable enveloping algebras") {
  for (auto& a : corpus()) {
    auto s = quotient_dga(a, dg_ideals(a).plus).first;
    auto p = is_separable(s);
    if (!p) continue;
    auto e = enveloping(s);
    REQUIRE(is_separable(e));
    REQUIRE(underlying_radical(e).empty());
  }
}

TEST_CASE("radical filtrations") {
  auto d = share(B("dual_numbers"));
  auto fd = radical_filtration(regular_module(d));
  REQUIRE(fd.chain.size() == 3);
  REQUIRE(fd.factors.size() == 2);
  REQUIRE(fd.factors[0].dim() == 1);
  REQUIRE(fd.factors[1].dim() == 1);
  auto fk = radical_filtration(cyclic_quotient(d, dg_ideals(*d).minus));
  REQUIRE(fk.factors.size() == 1);
  auto l = share(B("local_square_zero_2"));
  auto fl = radical_filtration(regular_module(l));
  REQUIRE(fl.factors.size() == 2);
  REQUIRE(fl.factors[0].dim() == 1);
  REQUIRE(fl.factors[1].dim() == 2);
  for (auto& n : builtin_names()) {
    auto a = share(B(n.c_str()));
    for (std::uint64_t s = 0; s < 3; ++s) {
      auto w = radical_filtration(random_module(a, s, 3));
      REQUIRE(w.chain.back().empty());
      for (auto& f : w.factors) REQUIRE(validate_module(f).empty());
    }
  }
}

TEST_CASE("bimodule filtrations") {
  auto k = B("point");
  REQUIRE(bimodule_filtration(k).factors.size() == 1);
  auto d = B("dual_numbers");
  REQUIRE(bimodule_filtration(d).factors.size() == 2);
  auto dd = tensor_dga(d, d);
  auto w = bimodule_filtration(dd);
  REQUIRE(static_cast<int>(w.factors.size()) == nilpotency_index(dd, dg_ideals(dd).minus));
  REQUIRE(w.factors.size() == 3);
  auto diag = diagonal_bimodule(share(d));
  REQUIRE(validate_module(diag).empty());
  REQUIRE(validate_module(diagonal_bimodule(share(B("dual_numbers_deg1")))).empty());
  REQUIRE(validate_module(diagonal_bimodule(share(B("acyclic")))).empty());
  REQUIRE(validate_module(diagonal_bimodule(share(matrix_algebra<Q>(2, {0, 1})))).empty());
}

TEST_CASE("primitive idempotents and simple modules") {
  auto check = [](const FdDga<Q>& a, std::size_t count) {
    auto s = primitive_idempotents(a);
    REQUIRE(s.split);
    REQUIRE(s.idempotents.size() == count);
    Vec<Q> total = a.zero();
    for (auto& e : s.idempotents) {
      REQUIRE(a.multiply(e, e) == e);
      REQUIRE(is_zero_matrix<Q>(a.d(e)));
      total += e;
    }
    REQUIRE(total == a.unit_vector());
  };
  check(B("a2_path"), 2);
  check(matrix_algebra<Q>(2), 2);
  check(matrix_algebra<Q>(2, {0, 1}), 2);
  check(split_semisimple<Q>(3), 3);
  check(B("dual_numbers"), 1);
  check(tensor_dga(B("a2_path"), B("a2_path")), 4);
  REQUIRE(primitive_idempotents(FdDga<Q>::zero_ring(FieldSpec::rational())).idempotents.empty());

  auto simples = simple_modules(share(B("a2_path")));
  REQUIRE(simples.size() == 2);
  for (auto& s : simples) {
    REQUIRE(s.dim() == 1);
    REQUIRE(validate_module(s).empty());
  }
}
