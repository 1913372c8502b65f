#include "dgforge/dga.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace dgforge {

namespace {

template <class K> Combination<K> normalized(Combination<K> c, int n) {
  std::map<int, K> acc;
  for (auto& [i, x] : c) {
    if (i < 0 || i >= n) throw Error(Errc::invalid_input, "basis index out of range in structure table");
    auto it = acc.find(i);
    if (it == acc.end())
      acc.emplace(i, x);
    else
      it->second += x;
  }
  Combination<K> out;
  for (auto& [i, x] : acc)
    if (!is_zero(x)) out.emplace_back(i, x);
  return out;
}

template <class K> Vec<K> comb_vec(const FdDga<K>& a, const Combination<K>& c) {
  Vec<K> v = a.zero();
  add_to(v, c, a.lit(1));
  return v;
}

}  // namespace

template <class K>
FdDga<K>::FdDga(FieldSpec field, std::vector<BasisElement> basis, int unit, std::vector<Combination<K>> mul,
                std::vector<Combination<K>> diff)
    : field_(field), basis_(std::move(basis)), unit_(unit), mul_(std::move(mul)), diff_(std::move(diff)) {
  const int n = dim();
  if (n == 0) {
    unit_ = -1;
    mul_.clear();
    diff_.clear();
    return;
  }
  if (unit_ < 0 || unit_ >= n) throw Error(Errc::invalid_input, "unit index out of range");
  if (static_cast<int>(mul_.size()) != n * n || static_cast<int>(diff_.size()) != n)
    throw Error(Errc::dimension_mismatch, "structure tables do not match the basis size");
  std::set<std::string> names;
  for (auto& b : basis_)
    if (!names.insert(b.name).second) throw Error(Errc::invalid_input, "duplicate basis name '" + b.name + "'");
  for (auto& c : mul_) c = normalized(std::move(c), n);
  for (auto& c : diff_) c = normalized(std::move(c), n);
}

template <class K> std::optional<int> FdDga<K>::index_of(std::string_view name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

template <class K> Vec<K> FdDga<K>::multiply(const Vec<K>& x, const Vec<K>& y) const {
  Vec<K> out = zero();
  for (int i = 0; i < dim(); ++i) {
    if (is_zero(x(i))) continue;
    for (int j = 0; j < dim(); ++j) {
      if (is_zero(y(j))) continue;
      add_to(out, product(i, j), K(x(i) * y(j)));
    }
  }
  return out;
}

template <class K> Vec<K> FdDga<K>::d(const Vec<K>& x) const {
  Vec<K> out = zero();
  for (int i = 0; i < dim(); ++i)
    if (!is_zero(x(i))) add_to(out, diff_[i], x(i));
  return out;
}

template <class K> Mat<K> FdDga<K>::left_multiplication(const Vec<K>& x) const {
  Mat<K> m = Mat<K>::Constant(dim(), dim(), lit(0));
  for (int j = 0; j < dim(); ++j) m.col(j) = multiply(x, basis_vector(j));
  return m;
}

template <class K> Mat<K> FdDga<K>::right_multiplication(const Vec<K>& x) const {
  Mat<K> m = Mat<K>::Constant(dim(), dim(), lit(0));
  for (int j = 0; j < dim(); ++j) m.col(j) = multiply(basis_vector(j), x);
  return m;
}

template <class K> Mat<K> FdDga<K>::differential_matrix() const {
  Mat<K> m = Mat<K>::Constant(dim(), dim(), lit(0));
  for (int j = 0; j < dim(); ++j)
    for (auto& [i, x] : diff_[j]) m(i, j) = x;
  return m;
}

template <class K> std::vector<int> FdDga<K>::degrees() const {
  std::set<int> s;
  for (auto& b : basis_) s.insert(b.degree);
  return {s.begin(), s.end()};
}

template <class K> std::vector<int> FdDga<K>::indices_in_degree(int n) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].degree == n) out.push_back(i);
  return out;
}

template <class K> int FdDga<K>::min_degree() const {
  auto d = degrees();
  return d.empty() ? 0 : d.front();
}

template <class K> int FdDga<K>::max_degree() const {
  auto d = degrees();
  return d.empty() ? 0 : d.back();
}

template <class K> std::optional<int> FdDga<K>::degree_of(const Vec<K>& v) const {
  std::optional<int> deg;
  for (int i = 0; i < dim(); ++i) {
    if (is_zero(v(i))) continue;
    if (deg && *deg != degree(i)) return std::nullopt;
    deg = degree(i);
  }
  return deg;
}

template <class K> Complex<K> FdDga<K>::underlying_complex() const {
  Complex<K> c;
  for (int n : degrees()) c.dims[n] = static_cast<Index>(indices_in_degree(n).size());
  for (int n : degrees()) {
    auto src = indices_in_degree(n), dst = indices_in_degree(n + 1);
    if (dst.empty()) continue;
    Mat<K> m = Mat<K>::Constant(dst.size(), src.size(), lit(0));
    for (std::size_t j = 0; j < src.size(); ++j)
      for (auto& [i, x] : diff_[src[j]]) {
        auto it = std::find(dst.begin(), dst.end(), i);
        if (it == dst.end()) throw Error(Errc::invariant_violation, "differential does not raise degree by one");
        m(it - dst.begin(), j) = x;
      }
    c.d[n] = m;
  }
  return c;
}

template <class K> CohomologyTable FdDga<K>::cohomology() const { return cohomology_of_complex(underlying_complex()); }

template <class K> std::vector<Violation> validate_dga(const FdDga<K>& a) {
  std::vector<Violation> out;
  const int n = a.dim();
  if (n == 0) return out;
  const int u = a.unit();
  if (a.degree(u) != 0) out.push_back({"unit", {u}, "unit is not in degree 0"});
  for (int i = 0; i < n; ++i) {
    Combination<K> ei{{i, a.lit(1)}};
    if (a.product(u, i) != ei || a.product(i, u) != ei)
      out.push_back({"unit", {i}, "1 * " + a.name(i) + " or " + a.name(i) + " * 1 differs from " + a.name(i)});
    for (auto& [k, x] : a.differential(i))
      if (a.degree(k) != a.degree(i) + 1) {
        out.push_back({"differential degree", {i}, "d(" + a.name(i) + ") has a term of the wrong degree"});
        break;
      }
    for (int j = 0; j < n; ++j)
      for (auto& [k, x] : a.product(i, j))
        if (a.degree(k) != a.degree(i) + a.degree(j)) {
          out.push_back({"degree", {i, j}, a.name(i) + " * " + a.name(j) + " is not homogeneous of degree " +
                                                 std::to_string(a.degree(i) + a.degree(j))});
          break;
        }
  }
  for (int i = 0; i < n; ++i) {
    Vec<K> dd = a.d(comb_vec(a, a.differential(i)));
    if (!is_zero_matrix<K>(dd)) out.push_back({"d^2 = 0", {i}, "d(d(" + a.name(i) + ")) != 0"});
  }
  // sparse accumulation: most products of basis elements vanish
  std::map<int, K> lhs, rhs;
  auto acc = [](std::map<int, K>& m, const Combination<K>& c, const K& f) {
    for (auto& [k, x] : c) {
      auto [it, fresh] = m.try_emplace(k, f * x);
      if (!fresh) it->second += f * x;
    }
  };
  auto equal = [](const std::map<int, K>& x, const std::map<int, K>& y) {
    auto nonzero = [](const std::map<int, K>& m, const std::map<int, K>& o) {
      for (auto& [k, v] : m) {
        auto it = o.find(k);
        if (it == o.end() ? !is_zero(v) : !(it->second == v)) return false;
      }
      return true;
    };
    return nonzero(x, y) && nonzero(y, x);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ij = a.product(i, j);
      for (int k = 0; k < n; ++k) {
        lhs.clear();
        rhs.clear();
        for (auto& [p, x] : ij) acc(lhs, a.product(p, k), x);
        for (auto& [q, y] : a.product(j, k)) acc(rhs, a.product(i, q), y);
        if (!equal(lhs, rhs))
          out.push_back({"associativity", {i, j, k},
                         "(" + a.name(i) + " " + a.name(j) + ") " + a.name(k) + " != " + a.name(i) + " (" +
                             a.name(j) + " " + a.name(k) + ")"});
      }
      lhs.clear();
      rhs.clear();
      for (auto& [p, x] : ij) acc(lhs, a.differential(p), x);
      for (auto& [p, x] : a.differential(i)) acc(rhs, a.product(p, j), x);
      const K s = a.lit(parity_sign(a.degree(i)));
      for (auto& [q, y] : a.differential(j)) acc(rhs, a.product(i, q), s * y);
      if (!equal(lhs, rhs))
        out.push_back({"Leibniz", {i, j}, "d(" + a.name(i) + " " + a.name(j) + ") fails the Leibniz rule"});
    }
  return out;
}

template <class K> FdDga<K> opposite_dga(const FdDga<K>& a) {
  const int n = a.dim();
  std::vector<Combination<K>> mul(n * n), diff(n);
  for (int i = 0; i < n; ++i) {
    diff[i] = a.differential(i);
    for (int j = 0; j < n; ++j) {
      K s = a.lit(koszul_sign(a.degree(i), a.degree(j)));
      for (auto& [k, x] : a.product(j, i)) mul[i * n + j].emplace_back(k, s * x);
    }
  }
  return FdDga<K>(a.field(), a.basis(), a.unit(), std::move(mul), std::move(diff));
}

template <class K> FdDga<K> tensor_dga(const FdDga<K>& a, const FdDga<K>& b) {
  if (!(a.field() == b.field())) throw Error(Errc::invalid_input, "tensor of algebras over different fields");
  if (a.is_zero_ring() || b.is_zero_ring()) return FdDga<K>::zero_ring(a.field());
  const int na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<BasisElement> basis;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) basis.push_back({a.name(i) + "|" + b.name(j), a.degree(i) + b.degree(j)});
  std::vector<Combination<K>> mul(static_cast<std::size_t>(n) * n), diff(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      int p = i * nb + j;
      for (auto& [k, x] : a.differential(i)) diff[p].emplace_back(k * nb + j, x);
      K s = a.lit(parity_sign(a.degree(i)));
      for (auto& [l, y] : b.differential(j)) diff[p].emplace_back(i * nb + l, s * y);
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2) {
          int q = i2 * nb + j2;
          K sign = a.lit(koszul_sign(b.degree(j), a.degree(i2)));
          auto& dst = mul[static_cast<std::size_t>(p) * n + q];
          for (auto& [k, x] : a.product(i, i2))
            for (auto& [l, y] : b.product(j, j2)) dst.emplace_back(k * nb + l, sign * x * y);
        }
    }
  return FdDga<K>(a.field(), std::move(basis), a.unit() * nb + b.unit(), std::move(mul), std::move(diff));
}

template <class K> FdDga<K> enveloping(const FdDga<K>& a) { return tensor_dga(opposite_dga(a), a); }

template <class K> bool is_two_sided_ideal(const FdDga<K>& a, const Subspace<K>& s) {
  for (Index r = 0; r < s.dim(); ++r) {
    Vec<K> v = s.vector(r);
    for (int i = 0; i < a.dim(); ++i) {
      Vec<K> e = a.basis_vector(i);
      if (!s.contains(a.multiply(v, e)) || !s.contains(a.multiply(e, v))) return false;
    }
  }
  return true;
}

template <class K> bool is_d_closed(const FdDga<K>& a, const Subspace<K>& s) {
  for (Index r = 0; r < s.dim(); ++r)
    if (!s.contains(a.d(s.vector(r)))) return false;
  return true;
}

template <class K> bool is_graded(const FdDga<K>& a, const Subspace<K>& s) {
  for (Index r = 0; r < s.dim(); ++r)
    if (!a.degree_of(s.vector(r))) return false;
  return true;
}

template <class K> Subspace<K> product_space(const FdDga<K>& a, const Subspace<K>& s, const Subspace<K>& t) {
  std::vector<Vec<K>> vs;
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = 0; j < t.dim(); ++j) vs.push_back(a.multiply(s.vector(i), t.vector(j)));
  Mat<K> m = Mat<K>::Constant(a.dim(), static_cast<Index>(vs.size()), a.lit(0));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Index>(k)) = vs[k];
  return vs.empty() ? Subspace<K>(a.dim()) : Subspace<K>::from_columns(m);
}

template <class K> Complex<K> subcomplex(const FdDga<K>& a, const Subspace<K>& s) {
  std::map<int, std::vector<Index>> rows;
  for (Index r = 0; r < s.dim(); ++r) {
    auto deg = a.degree_of(s.vector(r));
    if (!deg) throw Error(Errc::precondition_failed, "subspace is not graded");
    rows[*deg].push_back(r);
  }
  Complex<K> c;
  for (int n : a.degrees()) c.dims[n] = rows.count(n) ? static_cast<Index>(rows[n].size()) : 0;
  for (auto& [n, src] : rows) {
    auto it = rows.find(n + 1);
    if (it == rows.end()) continue;
    auto& dst = it->second;
    Mat<K> m = Mat<K>::Constant(dst.size(), src.size(), a.lit(0));
    for (std::size_t j = 0; j < src.size(); ++j) {
      Vec<K> dv = a.d(s.vector(src[j]));
      if (!s.contains(dv)) throw Error(Errc::precondition_failed, "subspace is not d-closed");
      Vec<K> coords = s.coordinates(dv);
      for (std::size_t i = 0; i < dst.size(); ++i) m(i, j) = coords(dst[i]);
    }
    c.d[n] = m;
  }
  return c;
}

template <class K>
std::pair<FdDga<K>, DgaMorphism<K>> quotient_dga(const FdDga<K>& a, const Subspace<K>& ideal,
                                                 QuotientDifferential mode) {
  if (ideal.ambient_dim() != a.dim()) throw Error(Errc::dimension_mismatch, "ideal lives in another algebra");
  if (!is_graded(a, ideal)) throw Error(Errc::precondition_failed, "ideal is not graded");
  if (!is_two_sided_ideal(a, ideal)) throw Error(Errc::precondition_failed, "subspace is not a two-sided ideal");
  const bool keep = mode == QuotientDifferential::keep;
  if (keep && !is_d_closed(a, ideal)) throw Error(Errc::precondition_failed, "ideal is not d-closed");

  std::vector<bool> is_pivot(a.dim(), false);
  for (Index p : ideal.pivots()) is_pivot[p] = true;
  std::vector<int> q;
  for (int i = 0; i < a.dim(); ++i)
    if (!is_pivot[i]) q.push_back(i);
  const int m = static_cast<int>(q.size());
  if (m == 0) return {FdDga<K>::zero_ring(a.field()), DgaMorphism<K>{Mat<K>(0, a.dim())}};

  // Old quotient coordinates: entries of the reduced vector at the columns q.
  auto old_coords = [&](const Vec<K>& v) {
    Vec<K> r = ideal.reduce(v), out(m);
    for (int k = 0; k < m; ++k) out(k) = r(q[k]);
    return out;
  };
  Vec<K> u = old_coords(a.unit_vector());
  int c = -1;
  for (int k = 0; k < m; ++k)
    if (!is_zero(u(k))) {
      c = k;
      break;
    }
  // New basis: q with slot c replaced by the image of 1 (lifted by 1 itself).
  std::vector<Vec<K>> lifts;
  std::vector<BasisElement> basis;
  for (int k = 0; k < m; ++k) {
    if (k == c) {
      lifts.push_back(a.unit_vector());
      basis.push_back({a.name(a.unit()), 0});
    } else {
      lifts.push_back(a.basis_vector(q[k]));
      basis.push_back(a.basis()[q[k]]);
    }
  }
  auto coords = [&](const Vec<K>& v) {
    Vec<K> w = old_coords(v);
    Vec<K> out = w;
    K t = w(c) / u(c);
    for (int k = 0; k < m; ++k) out(k) = k == c ? t : K(w(k) - u(k) * t);
    return out;
  };
  std::vector<Combination<K>> mul(static_cast<std::size_t>(m) * m), diff(m);
  for (int i = 0; i < m; ++i) {
    if (keep) diff[i] = to_combination<K>(coords(a.d(lifts[i])));
    for (int j = 0; j < m; ++j) mul[static_cast<std::size_t>(i) * m + j] = to_combination<K>(coords(a.multiply(lifts[i], lifts[j])));
  }
  DgaMorphism<K> pi{Mat<K>::Constant(m, a.dim(), a.lit(0))};
  for (int i = 0; i < a.dim(); ++i) pi.matrix.col(i) = coords(a.basis_vector(i));
  return {FdDga<K>(a.field(), std::move(basis), c, std::move(mul), std::move(diff)), std::move(pi)};
}

namespace {

/** Row echelon form over sparse vectors that remembers each row as a combination of the inserted vectors. */
template <class K> class SparseEchelon {
 public:
  using Sparse = std::map<Index, K>;

  /** Reduce v; returns the residual and adds the used combination of inserted vectors to coords. */
  Sparse reduce(Sparse v, std::map<int, K>& coords) const {
    for (auto it = v.begin(); it != v.end();) {
      auto r = pivot_.find(it->first);
      if (r == pivot_.end() || is_zero(it->second)) {
        ++it;
        continue;
      }
      const K f = it->second;
      const Index at = it->first;
      const auto& row = rows_[r->second];
      for (auto& [k, x] : row.entries) add(v, k, -(f * x));
      for (auto& [k, x] : row.combo) add(coords, k, f * x);
      it = v.upper_bound(at);
    }
    for (auto it = v.begin(); it != v.end();) it = is_zero(it->second) ? v.erase(it) : std::next(it);
    return v;
  }

  /** Insert v as vector number id; false if it was dependent. */
  bool insert(const Sparse& v, int id, const K& one) {
    std::map<int, K> coords;
    Sparse res = reduce(v, coords);
    if (res.empty()) return false;
    Row row;
    const K lead = res.begin()->second;
    const K inv = one / lead;
    for (auto& [k, x] : res) row.entries[k] = x * inv;
    for (auto& [k, x] : coords) row.combo[k] = -(x * inv);
    row.combo[id] = inv;
    pivot_[res.begin()->first] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

 private:
  struct Row {
    Sparse entries;
    std::map<int, K> combo;
  };
  template <class Key> static void add(std::map<Key, K>& m, Key k, const K& x) {
    auto [it, fresh] = m.try_emplace(k, x);
    if (!fresh) it->second += x;
  }
  std::vector<Row> rows_;
  std::map<Index, int> pivot_;
};

template <class K> std::map<Index, K> sparse_flat(const Mat<K>& x) {
  std::map<Index, K> v;
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i)
      if (!is_zero(x(i, j))) v.emplace(j * x.rows() + i, x(i, j));
  return v;
}

}  // namespace

template <class K>
FdDga<K> algebra_from_matrices(FieldSpec field, const std::vector<Mat<K>>& mats, const std::vector<int>& degrees,
                               const std::vector<std::string>& names,
                               const std::function<Mat<K>(const Mat<K>&, int)>& diff, const std::string& unit_name,
                               std::vector<Mat<K>>* chosen_out) {
  if (mats.empty()) return FdDga<K>::zero_ring(field);
  const Index size = mats.front().rows();
  if (size == 0) return FdDga<K>::zero_ring(field);
  const K one = scalar<K>(field, 1);
  std::vector<Mat<K>> chosen{Mat<K>::Identity(size, size) * one};
  std::vector<BasisElement> basis{{unit_name, 0}};
  SparseEchelon<K> span;
  span.insert(sparse_flat(chosen.front()), 0, one);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (!span.insert(sparse_flat(mats[i]), static_cast<int>(chosen.size()), one)) continue;
    chosen.push_back(mats[i]);
    basis.push_back({names[i], degrees[i]});
  }
  const int n = static_cast<int>(chosen.size());
  auto coords = [&](const std::map<Index, K>& v) {
    std::map<int, K> c;
    if (!span.reduce(v, c).empty()) throw Error(Errc::invariant_violation, "matrix family is not closed");
    Combination<K> out;
    for (auto& [k, x] : c)
      if (!is_zero(x)) out.emplace_back(k, x);
    return out;
  };
  // entries by row for sparse products
  std::vector<std::vector<std::vector<std::pair<Index, K>>>> by_row(n, std::vector<std::vector<std::pair<Index, K>>>(size));
  std::vector<std::vector<std::tuple<Index, Index, K>>> entries(n);
  for (int i = 0; i < n; ++i)
    for (Index c = 0; c < size; ++c)
      for (Index r = 0; r < size; ++r)
        if (!is_zero(chosen[i](r, c))) {
          by_row[i][r].emplace_back(c, chosen[i](r, c));
          entries[i].emplace_back(r, c, chosen[i](r, c));
        }
  std::vector<Combination<K>> mul(static_cast<std::size_t>(n) * n), dtab(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::map<Index, K> prod;
      for (auto& [r, c, x] : entries[i])
        for (auto& [c2, y] : by_row[j][c]) {
          auto [it, fresh] = prod.try_emplace(c2 * size + r, x * y);
          if (!fresh) it->second += x * y;
        }
      mul[static_cast<std::size_t>(i) * n + j] = coords(prod);
    }
    if (diff) dtab[i] = coords(sparse_flat<K>(diff(chosen[i], basis[i].degree)));
  }
  if (chosen_out) *chosen_out = chosen;
  return FdDga<K>(field, std::move(basis), 0, std::move(mul), std::move(dtab));
}

namespace {

template <class K> struct TableBuilder {
  FieldSpec field;
  std::vector<BasisElement> basis;
  std::vector<Combination<K>> mul, diff;

  TableBuilder(FieldSpec f, std::vector<BasisElement> b) : field(f), basis(std::move(b)) {
    const int n = static_cast<int>(basis.size());
    mul.resize(static_cast<std::size_t>(n) * n);
    diff.resize(n);
    for (int i = 0; i < n; ++i) {
      mul[i] = {{i, scalar<K>(f, 1)}};
      mul[static_cast<std::size_t>(i) * n] = {{i, scalar<K>(f, 1)}};
    }
  }
  void set(int i, int j, int k, long c = 1) { mul[i * basis.size() + j] = {{k, scalar<K>(field, c)}}; }
  FdDga<K> build() { return FdDga<K>(field, basis, 0, mul, diff); }
};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"point", "dual_numbers", "dual_numbers_deg1",
                                              "acyclic", "a2_path", "local_square_zero_2"};
  return names;
}

template <class K> FdDga<K> builtin_example(std::string_view name, FieldSpec field) {
  if (!ScalarTraits<K>::accepts(field)) throw Error(Errc::invalid_input, "field does not match scalar type");
  if (name == "point") return TableBuilder<K>(field, {{"1", 0}}).build();
  if (name == "dual_numbers") return TableBuilder<K>(field, {{"1", 0}, {"x", 0}}).build();
  if (name == "dual_numbers_deg1") return TableBuilder<K>(field, {{"1", 0}, {"x", 1}}).build();
  if (name == "acyclic") {
    TableBuilder<K> t(field, {{"1", 0}, {"e", -1}});
    t.diff[1] = {{0, scalar<K>(field, 1)}};
    return t.build();
  }
  if (name == "a2_path") {
    TableBuilder<K> t(field, {{"1", 0}, {"e11", 0}, {"e12", 0}});
    t.set(1, 1, 1);
    t.set(1, 2, 2);
    return t.build();
  }
  if (name == "local_square_zero_2") return TableBuilder<K>(field, {{"1", 0}, {"x", 0}, {"y", 0}}).build();
  throw Error(Errc::invalid_input, "unknown builtin algebra '" + std::string(name) + "'");
}

template <class K> FdDga<K> split_semisimple(int n, FieldSpec field) {
  std::vector<Mat<K>> mats;
  std::vector<int> degs;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    Mat<K> e = Mat<K>::Constant(n, n, scalar<K>(field, 0));
    e(i, i) = scalar<K>(field, 1);
    mats.push_back(e);
    degs.push_back(0);
    names.push_back("e" + std::to_string(i + 1));
  }
  return algebra_from_matrices<K>(field, mats, degs, names);
}

template <class K> FdDga<K> matrix_algebra(int n, const std::vector<int>& degrees, FieldSpec field) {
  std::vector<Mat<K>> mats;
  std::vector<int> degs;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat<K> e = Mat<K>::Constant(n, n, scalar<K>(field, 0));
      e(i, j) = scalar<K>(field, 1);
      mats.push_back(e);
      degs.push_back(degrees.empty() ? 0 : degrees[i] - degrees[j]);
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return algebra_from_matrices<K>(field, mats, degs, names);
}

#define DGFORGE_INSTANTIATE(K)                                                                                \
  template class FdDga<K>;                                                                                    \
  template std::vector<Violation> validate_dga<K>(const FdDga<K>&);                                           \
  template FdDga<K> opposite_dga<K>(const FdDga<K>&);                                                         \
  template FdDga<K> tensor_dga<K>(const FdDga<K>&, const FdDga<K>&);                                          \
  template FdDga<K> enveloping<K>(const FdDga<K>&);                                                           \
  template std::pair<FdDga<K>, DgaMorphism<K>> quotient_dga<K>(const FdDga<K>&, const Subspace<K>&,           \
                                                               QuotientDifferential);                         \
  template bool is_two_sided_ideal<K>(const FdDga<K>&, const Subspace<K>&);                                   \
  template bool is_d_closed<K>(const FdDga<K>&, const Subspace<K>&);                                          \
  template bool is_graded<K>(const FdDga<K>&, const Subspace<K>&);                                            \
  template Subspace<K> product_space<K>(const FdDga<K>&, const Subspace<K>&, const Subspace<K>&);             \
  template Complex<K> subcomplex<K>(const FdDga<K>&, const Subspace<K>&);                                     \
  template FdDga<K> algebra_from_matrices<K>(FieldSpec, const std::vector<Mat<K>>&, const std::vector<int>&, \
                                             const std::vector<std::string>&,                                 \
                                             const std::function<Mat<K>(const Mat<K>&, int)>&,                \
                                             const std::string&, std::vector<Mat<K>>*);                       \
  template FdDga<K> builtin_example<K>(std::string_view, FieldSpec);                                          \
  template FdDga<K> split_semisimple<K>(int, FieldSpec);                                                      \
  template FdDga<K> matrix_algebra<K>(int, const std::vector<int>&, FieldSpec);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
