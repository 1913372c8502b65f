#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "dgforge/linalg.hpp"

using namespace dgforge;

namespace {

template <class K> Mat<K> random_matrix(std::mt19937_64& rng, Index r, Index c, const FieldSpec& f, int density = 2) {
  std::uniform_int_distribution<int> val(-3, 3), keep(0, density);
  Mat<K> m = Mat<K>::Zero(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      if (keep(rng) == 0) m(i, j) = scalar<K>(f, val(rng));
  return m;
}

// Rank via floating point full-pivot LU on small integer matrices.
Index float_rank(const Mat<Rational>& m) {
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).convert_to<double>();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  lu.setThreshold(1e-9);
  return lu.rank();
}

}  // namespace

TEST_CASE("rref of a small matrix") {
  Mat<Rational> m(2, 3);
  m << 0, 2, 4, 1, 1, 1;
  auto e = rref<Rational>(m);
  REQUIRE(e.rank() == 2);
  REQUIRE(e.pivots == std::vector<Index>{0, 1});
  Mat<Rational> expect(2, 3);
  expect << 1, 0, -1, 0, 1, 2;
  REQUIRE(e.form == expect);
}

TEST_CASE("solve reports inconsistency and zeroes free variables") {
  Mat<Rational> a(2, 2);
  a << 1, 1, 2, 2;
  Mat<Rational> b(2, 1);
  b << 1, 3;
  REQUIRE_FALSE(solve<Rational>(a, b).has_value());
  b << 1, 2;
  auto x = solve<Rational>(a, b);
  REQUIRE(x.has_value());
  REQUIRE((*x)(0, 0) == 1);
  REQUIRE((*x)(1, 0) == 0);
}

TEST_CASE("rank agrees with a floating point oracle") {
  std::mt19937_64 rng(7);
  auto f = FieldSpec::rational();
  for (int t = 0; t < 60; ++t) {
    Index r = 1 + rng() % 7, c = 1 + rng() % 7;
    auto m = random_matrix<Rational>(rng, r, c, f);
    REQUIRE(rank<Rational>(m) == float_rank(m));
  }
}

TEMPLATE_TEST_CASE("kernel, solve and subspace identities", "", Rational, Fp) {
  using K = TestType;
  FieldSpec f = std::is_same_v<K, Rational> ? FieldSpec::rational() : FieldSpec::prime_field(7);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    Index r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto a = random_matrix<K>(rng, r, c, f);
    auto n = null_space<K>(a);
    REQUIRE(n.cols() + rank<K>(a) == c);
    if (n.cols() > 0) REQUIRE(is_zero_matrix<K>(Mat<K>(a * n)));

    Mat<K> x0 = random_matrix<K>(rng, c, 1, f, 0);
    Mat<K> b = a * x0;
    auto x = solve<K>(a, b);
    REQUIRE(x.has_value());
    REQUIRE(Mat<K>(a * *x) == b);

    auto u = Subspace<K>::from_rows(random_matrix<K>(rng, 1 + rng() % 4, c, f));
    auto v = Subspace<K>::from_rows(random_matrix<K>(rng, 1 + rng() % 4, c, f));
    auto s = sum(u, v), i = intersect(u, v);
    REQUIRE(s.dim() + i.dim() == u.dim() + v.dim());
    REQUIRE(s.contains(u));
    REQUIRE(u.contains(i));
    REQUIRE(v.contains(i));
    REQUIRE(sum(u, complement(u)).dim() == c);

    auto pre = preimage<K>(a.transpose(), u);
    for (Index k = 0; k < pre.dim(); ++k) REQUIRE(u.contains(Vec<K>(a.transpose() * pre.vector(k))));
    // everything mapping into u lies in the preimage
    for (Index k = 0; k < n.cols(); ++k) REQUIRE(preimage<K>(a, Subspace<K>(r)).contains(Vec<K>(n.col(k))));
  }
}

TEST_CASE("prime field arithmetic") {
  Fp a(7, 3), b(7, 5);
  REQUIRE((a * b).value() == 1);
  REQUIRE((a / b * b) == a);
  REQUIRE((a - b).value() == 5);
  REQUIRE(Fp(0) == Fp(7, 0));
  REQUIRE((Fp(1) / a) * a == Fp(1));
  REQUIRE_THROWS_AS(Fp(7, 1) + Fp(5, 1), std::domain_error);
  REQUIRE(ScalarTraits<Fp>::parse(FieldSpec::prime_field(7), "1/3") * Fp(7, 3) == Fp(7, 1));
  REQUIRE(ScalarTraits<Rational>::parse(FieldSpec::rational(), "-4/6") == Rational(-2, 3));
}
