#include "dgforge/linalg.hpp"

#include <cstdlib>

namespace dgforge {

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (p < 2) throw Error(Errc::invalid_input, "field characteristic must be a prime");
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw Error(Errc::invalid_input, std::to_string(p) + " is not prime");
  FieldSpec f;
  f.prime = p;
  return f;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "Q") return rational();
  std::string digits;
  if (text.rfind("Fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F')
    digits = text.substr(1);
  else
    throw Error(Errc::invalid_input, "unknown field '" + text + "'");
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
      digits.size() > 9)
    throw Error(Errc::invalid_input, "bad prime in field '" + text + "'");
  return prime_field(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string to_string(const Rational& x) { return x.str(); }
std::string to_string(const Fp& x) { return std::to_string(x.value()); }

namespace {

bool parse_integer(const std::string& s, std::string& digits, bool& negative) {
  std::size_t i = 0;
  negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  digits = s.substr(i);
  return !digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

Rational ScalarTraits<Rational>::parse(const FieldSpec&, const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash), den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  std::string dn, dd;
  bool nn, nd;
  if (!parse_integer(num, dn, nn) || !parse_integer(den, dd, nd) || nd)
    throw Error(Errc::invalid_input, "bad rational '" + text + "'");
  boost::multiprecision::mpz_int n(dn), d(dd);
  if (d == 0) throw Error(Errc::invalid_input, "zero denominator in '" + text + "'");
  Rational r(n, d);
  return nn ? Rational(-r) : r;
}

Fp ScalarTraits<Fp>::parse(const FieldSpec& f, const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash), den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  std::string dn, dd;
  bool nn, nd;
  if (!parse_integer(num, dn, nn) || !parse_integer(den, dd, nd) || nd)
    throw Error(Errc::invalid_input, "bad field element '" + text + "'");
  auto mod = [&](const std::string& digits) {
    std::int64_t r = 0;
    for (char c : digits) r = (r * 10 + (c - '0')) % f.prime;
    return r;
  };
  Fp n(f.prime, mod(dn)), d(f.prime, mod(dd));
  if (d.is_zero()) throw Error(Errc::invalid_input, "denominator vanishes mod p in '" + text + "'");
  Fp r = n / d;
  return nn ? -r : r;
}

template <class K> Echelon<K> rref(Mat<K> m) {
  Echelon<K> e;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  std::vector<Index> nz;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    nz.clear();
    K inv = K(1) / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (!is_zero(m(r, j))) {
        m(r, j) = m(r, j) * inv;
        nz.push_back(j);
      }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (Index j : nz) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.form = std::move(m);
  return e;
}

template <class K> Index rank(const Mat<K>& m) {
  if (m.rows() > m.cols()) return rref<K>(m.transpose()).rank();
  return rref<K>(m).rank();
}

template <class K> std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) throw Error(Errc::dimension_mismatch, "solve: row counts differ");
  Mat<K> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto e = rref<K>(std::move(aug));
  Mat<K> x = Mat<K>::Zero(a.cols(), b.cols());
  Index ra = 0;
  while (ra < e.rank() && e.pivots[ra] < a.cols()) ++ra;
  if (ra < e.rank()) return std::nullopt;
  for (Index i = 0; i < ra; ++i) x.row(e.pivots[i]) = e.form.block(i, a.cols(), 1, b.cols());
  return x;
}

template <class K> Mat<K> null_space(const Mat<K>& a) {
  auto e = rref<K>(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Index nfree = a.cols() - e.rank();
  Mat<K> n = Mat<K>::Zero(a.cols(), nfree);
  Index k = 0;
  for (Index f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    n(f, k) = K(1);
    for (Index i = 0; i < e.rank(); ++i)
      if (!is_zero(e.form(i, f))) n(e.pivots[i], k) = -e.form(i, f);
    ++k;
  }
  return n;
}

template <class K> Mat<K> inverse(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::dimension_mismatch, "inverse of a non-square matrix");
  auto x = solve<K>(a, Mat<K>::Identity(a.rows(), a.rows()));
  if (!x || rank<K>(a) != a.rows()) throw Error(Errc::invariant_violation, "matrix is singular");
  return *x;
}

template <class K> Subspace<K> Subspace<K>::from_rows(const Mat<K>& rows) {
  Subspace s(rows.cols());
  auto e = rref<K>(rows);
  s.basis_ = e.form.topRows(e.rank());
  s.pivots_ = e.pivots;
  return s;
}

template <class K> Vec<K> Subspace<K>::reduce(const Vec<K>& v) const {
  if (v.size() != ambient_) throw Error(Errc::dimension_mismatch, "vector length differs from ambient");
  Vec<K> w = v;
  for (Index i = 0; i < dim(); ++i) {
    const K& c = w(pivots_[i]);
    if (is_zero(c)) continue;
    K f = c;
    for (Index j = pivots_[i]; j < ambient_; ++j)
      if (!is_zero(basis_(i, j))) w(j) -= f * basis_(i, j);
  }
  return w;
}

template <class K> bool Subspace<K>::contains(const Vec<K>& v) const {
  Vec<K> w = reduce(v);
  for (Index j = 0; j < w.size(); ++j)
    if (!is_zero(w(j))) return false;
  return true;
}

template <class K> bool Subspace<K>::contains(const Subspace& other) const {
  for (Index i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

template <class K> Vec<K> Subspace<K>::coordinates(const Vec<K>& v) const {
  Vec<K> c(dim());
  for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[i]);
  return c;
}

template <class K> Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(Errc::dimension_mismatch, "sum of subspaces");
  Mat<K> rows(a.dim() + b.dim(), a.ambient_dim());
  rows << a.basis(), b.basis();
  return Subspace<K>::from_rows(rows);
}

template <class K> Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(Errc::dimension_mismatch, "intersection of subspaces");
  if (a.empty() || b.empty()) return Subspace<K>(a.ambient_dim());
  Mat<K> m(a.ambient_dim(), a.dim() + b.dim());
  m << a.basis().transpose(), -b.basis().transpose();
  Mat<K> n = null_space<K>(m);
  Mat<K> vecs = a.basis().transpose() * n.topRows(a.dim());
  return Subspace<K>::from_columns(vecs);
}

template <class K> Subspace<K> preimage(const Mat<K>& map, const Subspace<K>& target) {
  if (map.rows() != target.ambient_dim()) throw Error(Errc::dimension_mismatch, "preimage");
  // w lies in the target iff w minus its pivot-coordinate combination vanishes.
  Mat<K> proj = Mat<K>::Identity(map.rows(), map.rows());
  for (Index i = 0; i < target.dim(); ++i)
    for (Index j = 0; j < map.rows(); ++j) proj(j, target.pivots()[i]) -= target.basis()(i, j);
  return Subspace<K>::from_columns(null_space<K>(proj * map));
}

template <class K> Subspace<K> complement(const Subspace<K>& a) {
  std::vector<bool> is_pivot(a.ambient_dim(), false);
  for (Index p : a.pivots()) is_pivot[p] = true;
  Mat<K> rows = Mat<K>::Zero(a.ambient_dim() - a.dim(), a.ambient_dim());
  Index k = 0;
  for (Index c = 0; c < a.ambient_dim(); ++c)
    if (!is_pivot[c]) rows(k++, c) = K(1);
  return Subspace<K>::from_rows(rows);
}

template <class K> Subspace<K> image(const Mat<K>& map, const Subspace<K>& source) {
  if (map.cols() != source.ambient_dim()) throw Error(Errc::dimension_mismatch, "image");
  if (source.empty()) return Subspace<K>(map.rows());
  return Subspace<K>::from_columns(map * source.basis().transpose());
}

#define DGFORGE_INSTANTIATE(K)                                                  \
  template struct Echelon<K>;                                                   \
  template class Subspace<K>;                                                   \
  template Echelon<K> rref<K>(Mat<K>);                                          \
  template Index rank<K>(const Mat<K>&);                                        \
  template std::optional<Mat<K>> solve<K>(const Mat<K>&, const Mat<K>&);        \
  template Mat<K> null_space<K>(const Mat<K>&);                                 \
  template Mat<K> inverse<K>(const Mat<K>&);                                    \
  template Subspace<K> sum<K>(const Subspace<K>&, const Subspace<K>&);          \
  template Subspace<K> intersect<K>(const Subspace<K>&, const Subspace<K>&);    \
  template Subspace<K> preimage<K>(const Mat<K>&, const Subspace<K>&);          \
  template Subspace<K> complement<K>(const Subspace<K>&);                       \
  template Subspace<K> image<K>(const Mat<K>&, const Subspace<K>&);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
