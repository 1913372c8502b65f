#include "dgforge/module.hpp"

#include <map>
#include <random>
#include <set>

namespace dgforge {

namespace {

template <class K> Vec<K> mvec(const DgModule<K>& m, const Combination<K>& c) {
  Vec<K> v = m.zero_vector();
  add_to(v, c, m.lit(1));
  return v;
}

template <class K> void require_same_algebra(const FdDga<K>& a, const FdDga<K>& b, const char* what) {
  if (&a != &b && !(a == b)) throw Error(Errc::precondition_failed, std::string(what) + ": algebras differ");
}

template <class K> Combination<K> scaled(const Combination<K>& c, const K& s) {
  Combination<K> out;
  for (auto& [i, x] : c) out.emplace_back(i, s * x);
  return out;
}

template <class K> Combination<K> offset(const Combination<K>& c, int off, const K& s) {
  Combination<K> out;
  for (auto& [i, x] : c) out.emplace_back(i + off, s * x);
  return out;
}

}  // namespace

template <class K>
DgModule<K>::DgModule(DgaPtr<K> algebra, std::vector<BasisElement> basis, std::vector<Combination<K>> action,
                      std::vector<Combination<K>> diff)
    : algebra_(std::move(algebra)), basis_(std::move(basis)), action_(std::move(action)), diff_(std::move(diff)) {
  if (!algebra_) throw Error(Errc::invalid_input, "module without an algebra");
  const int n = dim(), na = algebra_->dim();
  if (n == 0) {
    action_.clear();
    diff_.clear();
    return;
  }
  if (static_cast<int>(action_.size()) != n * na || static_cast<int>(diff_.size()) != n)
    throw Error(Errc::dimension_mismatch, "module tables do not match the basis size");
  auto norm = [n](Combination<K>& c) {
    std::map<int, K> acc;
    for (auto& [i, x] : c) {
      if (i < 0 || i >= n) throw Error(Errc::invalid_input, "module basis index out of range");
      auto it = acc.find(i);
      if (it == acc.end())
        acc.emplace(i, x);
      else
        it->second += x;
    }
    c.clear();
    for (auto& [i, x] : acc)
      if (!is_zero(x)) c.emplace_back(i, x);
  };
  for (auto& c : action_) norm(c);
  for (auto& c : diff_) norm(c);
}

template <class K> Vec<K> DgModule<K>::act_basis(const Vec<K>& m, int a) const {
  Vec<K> out = zero_vector();
  for (int i = 0; i < dim(); ++i)
    if (!is_zero(m(i))) add_to(out, action(i, a), m(i));
  return out;
}

template <class K> Vec<K> DgModule<K>::act(const Vec<K>& m, const Vec<K>& a) const {
  Vec<K> out = zero_vector();
  for (int j = 0; j < algebra_->dim(); ++j)
    if (!is_zero(a(j))) out += a(j) * act_basis(m, j);
  return out;
}

template <class K> Vec<K> DgModule<K>::d(const Vec<K>& m) const {
  Vec<K> out = zero_vector();
  for (int i = 0; i < dim(); ++i)
    if (!is_zero(m(i))) add_to(out, diff_[i], m(i));
  return out;
}

template <class K> Mat<K> DgModule<K>::action_matrix(const Vec<K>& a) const {
  Mat<K> r = Mat<K>::Constant(dim(), dim(), lit(0));
  for (int j = 0; j < dim(); ++j) r.col(j) = act(basis_vector(j), a);
  return r;
}

template <class K> Mat<K> DgModule<K>::differential_matrix() const {
  Mat<K> r = Mat<K>::Constant(dim(), dim(), lit(0));
  for (int j = 0; j < dim(); ++j)
    for (auto& [i, x] : diff_[j]) r(i, j) = x;
  return r;
}

template <class K> std::vector<int> DgModule<K>::degrees() const {
  std::set<int> s;
  for (auto& b : basis_) s.insert(b.degree);
  return {s.begin(), s.end()};
}

template <class K> std::vector<int> DgModule<K>::indices_in_degree(int n) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].degree == n) out.push_back(i);
  return out;
}

template <class K> std::optional<int> DgModule<K>::degree_of(const Vec<K>& v) const {
  std::optional<int> deg;
  for (int i = 0; i < dim(); ++i) {
    if (is_zero(v(i))) continue;
    if (deg && *deg != degree(i)) return std::nullopt;
    deg = degree(i);
  }
  return deg;
}

template <class K> Complex<K> DgModule<K>::underlying_complex() const {
  Complex<K> c;
  std::map<int, std::vector<int>> idx;
  for (int i = 0; i < dim(); ++i) idx[degree(i)].push_back(i);
  for (auto& [n, v] : idx) c.dims[n] = static_cast<Index>(v.size());
  for (auto& [n, src] : idx) {
    auto it = idx.find(n + 1);
    if (it == idx.end()) continue;
    auto& dst = it->second;
    std::map<int, Index> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = static_cast<Index>(k);
    Mat<K> m = Mat<K>::Constant(dst.size(), src.size(), lit(0));
    for (std::size_t j = 0; j < src.size(); ++j)
      for (auto& [i, x] : diff_[src[j]]) {
        auto p = pos.find(i);
        if (p == pos.end()) throw Error(Errc::invariant_violation, "module differential does not raise degree by one");
        m(p->second, j) = x;
      }
    c.d[n] = m;
  }
  return c;
}

template <class K> std::vector<Violation> validate_module(const DgModule<K>& m) {
  std::vector<Violation> out;
  const auto& a = m.algebra();
  if (m.dim() == 0) return out;
  if (a.is_zero_ring()) {
    out.push_back({"unit", {}, "nonzero module over the zero ring"});
    return out;
  }
  const int na = a.dim();
  for (int i = 0; i < m.dim(); ++i) {
    if (m.action(i, a.unit()) != Combination<K>{{i, m.lit(1)}})
      out.push_back({"unit", {i}, m.name(i) + " * 1 != " + m.name(i)});
    for (auto& [k, x] : m.differential(i))
      if (m.degree(k) != m.degree(i) + 1) {
        out.push_back({"differential degree", {i}, "d(" + m.name(i) + ") has a term of the wrong degree"});
        break;
      }
    for (int j = 0; j < na; ++j)
      for (auto& [k, x] : m.action(i, j))
        if (m.degree(k) != m.degree(i) + a.degree(j)) {
          out.push_back({"degree", {i, j}, m.name(i) + " * " + a.name(j) + " has the wrong degree"});
          break;
        }
    if (!is_zero_matrix<K>(m.d(mvec(m, m.differential(i)))))
      out.push_back({"d^2 = 0", {i}, "d(d(" + m.name(i) + ")) != 0"});
  }
  for (int i = 0; i < m.dim(); ++i) {
    Vec<K> ei = m.basis_vector(i);
    for (int j = 0; j < na; ++j) {
      Vec<K> ij = mvec(m, m.action(i, j));
      for (int k = 0; k < na; ++k) {
        Vec<K> lhs = m.act_basis(ij, k);
        Vec<K> prod = a.zero();
        add_to(prod, a.product(j, k), a.lit(1));
        Vec<K> rhs = m.act(ei, prod);
        if (lhs != rhs)
          out.push_back({"associativity", {i, j, k},
                         "(" + m.name(i) + " " + a.name(j) + ") " + a.name(k) + " != " + m.name(i) + " (" + a.name(j) +
                             " " + a.name(k) + ")"});
      }
      Vec<K> da = a.zero();
      add_to(da, a.differential(j), a.lit(1));
      Vec<K> lhs = m.d(ij);
      Vec<K> rhs = m.act_basis(mvec(m, m.differential(i)), j) + m.lit(parity_sign(m.degree(i))) * m.act(ei, da);
      if (lhs != rhs) out.push_back({"Leibniz", {i, j}, "d(" + m.name(i) + " " + a.name(j) + ") fails the Leibniz rule"});
    }
  }
  return out;
}

template <class K> bool is_chain_map(const ModuleMap<K>& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  if (f.matrix.rows() != t.dim() || f.matrix.cols() != s.dim()) return false;
  for (int j = 0; j < s.dim(); ++j)
    for (int i = 0; i < t.dim(); ++i)
      if (!is_zero(f.matrix(i, j)) && t.degree(i) != s.degree(j) + f.degree) return false;
  Mat<K> lhs = t.differential_matrix() * f.matrix;
  Mat<K> rhs = f.matrix * s.differential_matrix() * s.lit(parity_sign(f.degree));
  if (lhs != rhs) return false;
  const auto& a = s.algebra();
  for (int j = 0; j < a.dim(); ++j) {
    Vec<K> e = a.basis_vector(j);
    if (Mat<K>(f.matrix * s.action_matrix(e)) != Mat<K>(t.action_matrix(e) * f.matrix)) return false;
  }
  return true;
}

template <class K> DgModule<K> shift(const DgModule<K>& m, int n) {
  std::vector<BasisElement> basis = m.basis();
  for (auto& b : basis) b.degree -= n;
  std::vector<Combination<K>> action, diff;
  for (int i = 0; i < m.dim(); ++i) {
    diff.push_back(scaled(m.differential(i), m.lit(parity_sign(n))));
    for (int a = 0; a < m.algebra().dim(); ++a) action.push_back(m.action(i, a));
  }
  return DgModule<K>(m.algebra_ptr(), std::move(basis), std::move(action), std::move(diff));
}

template <class K> DgModule<K> direct_sum(const DgModule<K>& x, const DgModule<K>& y) {
  require_same_algebra(x.algebra(), y.algebra(), "direct_sum");
  std::vector<BasisElement> basis;
  std::vector<Combination<K>> action, diff;
  const int na = x.algebra().dim(), off = x.dim();
  K one = x.lit(1);
  for (int i = 0; i < x.dim(); ++i) {
    basis.push_back(x.basis()[i]);
    diff.push_back(x.differential(i));
    for (int a = 0; a < na; ++a) action.push_back(x.action(i, a));
  }
  for (int i = 0; i < y.dim(); ++i) {
    basis.push_back(y.basis()[i]);
    diff.push_back(offset(y.differential(i), off, one));
    for (int a = 0; a < na; ++a) action.push_back(offset(y.action(i, a), off, one));
  }
  std::set<std::string> seen;
  bool clash = false;
  for (auto& b : basis) clash |= !seen.insert(b.name).second;
  if (clash) {
    for (int i = 0; i < x.dim(); ++i) basis[i].name = "a." + basis[i].name;
    for (int i = 0; i < y.dim(); ++i) basis[off + i].name = "b." + basis[off + i].name;
  }
  return DgModule<K>(x.algebra_ptr(), std::move(basis), std::move(action), std::move(diff));
}

template <class K> DgModule<K> cone(const ModuleMap<K>& f) {
  if (f.degree != 0 || !is_chain_map(f)) throw Error(Errc::precondition_failed, "cone needs a degree zero chain map");
  const auto& m = f.source;
  const auto& n = f.target;
  auto sm = shift(m, 1);
  DgModule<K> sum = direct_sum(sm, n);
  std::vector<BasisElement> basis = sum.basis();
  for (int i = 0; i < m.dim(); ++i) basis[i].name = "s" + m.name(i);
  for (int i = 0; i < n.dim(); ++i) basis[m.dim() + i].name = n.name(i);
  std::set<std::string> seen;
  for (auto& b : basis)
    if (!seen.insert(b.name).second) {
      basis = sum.basis();
      for (int i = 0; i < m.dim(); ++i) basis[i].name = "s" + basis[i].name;
      break;
    }
  std::vector<Combination<K>> action, diff;
  const int na = m.algebra().dim();
  for (int i = 0; i < sum.dim(); ++i) {
    Combination<K> di = sum.differential(i);
    if (i < m.dim())
      for (int k = 0; k < n.dim(); ++k)
        if (!is_zero(f.matrix(k, i))) di.emplace_back(m.dim() + k, f.matrix(k, i));
    diff.push_back(std::move(di));
    for (int a = 0; a < na; ++a) action.push_back(sum.action(i, a));
  }
  return DgModule<K>(m.algebra_ptr(), std::move(basis), std::move(action), std::move(diff));
}

template <class K> DgModule<K> rebind(const DgModule<K>& m, DgaPtr<K> algebra) {
  require_same_algebra(m.algebra(), *algebra, "rebind");
  std::vector<Combination<K>> action, diff;
  for (int i = 0; i < m.dim(); ++i) {
    diff.push_back(m.differential(i));
    for (int a = 0; a < algebra->dim(); ++a) action.push_back(m.action(i, a));
  }
  return DgModule<K>(std::move(algebra), m.basis(), std::move(action), std::move(diff));
}

template <class K> DgModule<K> k_dual(const DgModule<K>& m, DgaPtr<K> opposite) {
  const auto& a = m.algebra();
  if (!opposite)
    opposite = share(opposite_dga(a));
  else
    require_same_algebra(*opposite, opposite_dga(a), "k_dual");
  const int n = m.dim(), na = a.dim();
  std::vector<BasisElement> basis;
  for (auto& b : m.basis()) basis.push_back({b.name + "^", -b.degree});
  std::vector<Combination<K>> action(static_cast<std::size_t>(n) * na), diff(n);
  for (int mp = 0; mp < n; ++mp) {
    for (int j = 0; j < na; ++j) {
      K s = m.lit(koszul_sign(a.degree(j), m.degree(mp)));
      for (auto& [row, x] : m.action(mp, j)) action[static_cast<std::size_t>(row) * na + j].emplace_back(mp, s * x);
    }
    for (auto& [row, x] : m.differential(mp)) diff[row].emplace_back(mp, -m.lit(parity_sign(m.degree(row))) * x);
  }
  return DgModule<K>(std::move(opposite), std::move(basis), std::move(action), std::move(diff));
}

template <class K> DgModule<K> regular_module(DgaPtr<K> a) {
  const int n = a->dim();
  std::vector<Combination<K>> action, diff;
  for (int i = 0; i < n; ++i) {
    diff.push_back(a->differential(i));
    for (int j = 0; j < n; ++j) action.push_back(a->product(i, j));
  }
  auto basis = a->basis();
  return DgModule<K>(std::move(a), std::move(basis), std::move(action), std::move(diff));
}

template <class K> DgModule<K> free_module(DgaPtr<K> a, const std::vector<int>& degrees) {
  auto reg = regular_module(a);
  DgModule<K> out = DgModule<K>::zero(a);
  for (std::size_t g = 0; g < degrees.size(); ++g) {
    auto piece = shift(reg, -degrees[g]);
    std::vector<BasisElement> basis = piece.basis();
    for (auto& b : basis) b.name = "g" + std::to_string(g) + "." + b.name;
    piece = DgModule<K>(a, basis, [&] {
      std::vector<Combination<K>> act;
      for (int i = 0; i < piece.dim(); ++i)
        for (int j = 0; j < a->dim(); ++j) act.push_back(piece.action(i, j));
      return act;
    }(), [&] {
      std::vector<Combination<K>> d;
      for (int i = 0; i < piece.dim(); ++i) d.push_back(piece.differential(i));
      return d;
    }());
    out = direct_sum(out, piece);
  }
  return out;
}

template <class K> bool is_submodule(const DgModule<K>& m, const Subspace<K>& s) {
  for (Index r = 0; r < s.dim(); ++r) {
    Vec<K> v = s.vector(r);
    if (!m.degree_of(v)) return false;
    if (!s.contains(m.d(v))) return false;
    for (int a = 0; a < m.algebra().dim(); ++a)
      if (!s.contains(m.act_basis(v, a))) return false;
  }
  return true;
}

template <class K> std::pair<DgModule<K>, Mat<K>> submodule(const DgModule<K>& m, const Subspace<K>& s) {
  if (!is_submodule(m, s)) throw Error(Errc::precondition_failed, "subspace is not a graded dg submodule");
  const int n = static_cast<int>(s.dim()), na = m.algebra().dim();
  std::vector<BasisElement> basis;
  for (int r = 0; r < n; ++r) {
    Vec<K> v = s.vector(r);
    int nz = 0;
    for (int i = 0; i < m.dim(); ++i) nz += !is_zero(v(i));
    std::string name = nz == 1 ? m.name(static_cast<int>(s.pivots()[r])) : "v" + std::to_string(r);
    basis.push_back({name, *m.degree_of(v)});
  }
  std::vector<Combination<K>> action, diff;
  for (int r = 0; r < n; ++r) {
    Vec<K> v = s.vector(r);
    diff.push_back(to_combination<K>(s.coordinates(m.d(v))));
    for (int a = 0; a < na; ++a) action.push_back(to_combination<K>(s.coordinates(m.act_basis(v, a))));
  }
  Mat<K> incl = s.basis().transpose();
  return {DgModule<K>(m.algebra_ptr(), std::move(basis), std::move(action), std::move(diff)), incl};
}

template <class K> std::pair<DgModule<K>, Mat<K>> quotient_module(const DgModule<K>& m, const Subspace<K>& s) {
  if (!is_submodule(m, s)) throw Error(Errc::precondition_failed, "subspace is not a graded dg submodule");
  std::vector<bool> is_pivot(m.dim(), false);
  for (Index p : s.pivots()) is_pivot[p] = true;
  std::vector<int> q;
  for (int i = 0; i < m.dim(); ++i)
    if (!is_pivot[i]) q.push_back(i);
  const int nq = static_cast<int>(q.size()), na = m.algebra().dim();
  auto coords = [&](const Vec<K>& v) {
    Vec<K> r = s.reduce(v), out(nq);
    for (int k = 0; k < nq; ++k) out(k) = r(q[k]);
    return out;
  };
  std::vector<BasisElement> basis;
  std::vector<Combination<K>> action, diff;
  for (int k = 0; k < nq; ++k) {
    basis.push_back(m.basis()[q[k]]);
    Vec<K> e = m.basis_vector(q[k]);
    diff.push_back(to_combination<K>(coords(m.d(e))));
    for (int a = 0; a < na; ++a) action.push_back(to_combination<K>(coords(m.act_basis(e, a))));
  }
  Mat<K> proj = Mat<K>::Constant(nq, m.dim(), m.lit(0));
  for (int i = 0; i < m.dim(); ++i) proj.col(i) = coords(m.basis_vector(i));
  return {DgModule<K>(m.algebra_ptr(), std::move(basis), std::move(action), std::move(diff)), proj};
}

template <class K> DgModule<K> cyclic_quotient(DgaPtr<K> a, const Subspace<K>& ideal) {
  return quotient_module(regular_module(std::move(a)), ideal).first;
}

template <class K> Subspace<K> module_times(const DgModule<K>& m, const Subspace<K>& ideal) {
  std::vector<Vec<K>> vs;
  for (int i = 0; i < m.dim(); ++i)
    for (Index r = 0; r < ideal.dim(); ++r) vs.push_back(m.act(m.basis_vector(i), ideal.vector(r)));
  if (vs.empty()) return Subspace<K>(m.dim());
  Mat<K> cols(m.dim(), static_cast<Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) cols.col(static_cast<Index>(k)) = vs[k];
  return Subspace<K>::from_columns(cols);
}

template <class K> Subspace<K> generated_submodule(const DgModule<K>& m, const Subspace<K>& s) {
  std::vector<Vec<K>> vs;
  for (Index r = 0; r < s.dim(); ++r)
    for (int a = 0; a < m.algebra().dim(); ++a) vs.push_back(m.act_basis(s.vector(r), a));
  if (vs.empty()) return Subspace<K>(m.dim());
  Mat<K> cols(m.dim(), static_cast<Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) cols.col(static_cast<Index>(k)) = vs[k];
  return Subspace<K>::from_columns(cols);
}

template <class K> Mat<K> HomComplex<K>::map(int n, const Vec<K>& coords) const {
  const auto& b = maps.at(n);
  Mat<K> out = b.front() * coords(0);
  for (std::size_t i = 1; i < b.size(); ++i) out += b[i] * coords(static_cast<Index>(i));
  return out;
}

template <class K> HomComplex<K> strict_hom(const DgModule<K>& m, const DgModule<K>& n) {
  require_same_algebra(m.algebra(), n.algebra(), "strict_hom");
  HomComplex<K> h;
  if (m.dim() == 0 || n.dim() == 0) return h;
  const auto& a = m.algebra();
  const int na = a.dim();
  auto md = m.degrees(), nd = n.degrees();
  int lo = nd.front() - md.back(), hi = nd.back() - md.front();

  struct Layout {
    std::vector<std::pair<int, int>> vars;  // (source basis, target basis)
    std::map<std::pair<int, int>, Index> pos;
    Subspace<K> space;
  };
  std::map<int, Layout> layouts;
  for (int deg = lo; deg <= hi; ++deg) {
    Layout L;
    for (int i = 0; i < m.dim(); ++i)
      for (int k = 0; k < n.dim(); ++k)
        if (n.degree(k) == m.degree(i) + deg) {
          L.pos[{i, k}] = static_cast<Index>(L.vars.size());
          L.vars.push_back({i, k});
        }
    const Index nv = static_cast<Index>(L.vars.size());
    if (nv == 0) continue;
    // Equations f(e_i a) - f(e_i) a = 0, one block of n.dim() rows per (i, a).
    std::vector<Vec<K>> rows;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < na; ++j) {
        Mat<K> block = Mat<K>::Constant(n.dim(), nv, m.lit(0));
        for (auto& [i2, x] : m.action(i, j))
          for (int k = 0; k < n.dim(); ++k) {
            auto p = L.pos.find({i2, k});
            if (p != L.pos.end()) block(k, p->second) += x;
          }
        for (int k = 0; k < n.dim(); ++k) {
          auto p = L.pos.find({i, k});
          if (p == L.pos.end()) continue;
          for (auto& [k2, y] : n.action(k, j)) block(k2, p->second) -= y;
        }
        for (int k = 0; k < n.dim(); ++k)
          if (!is_zero_matrix<K>(Mat<K>(block.row(k)))) rows.push_back(block.row(k).transpose());
      }
    Mat<K> eq = Mat<K>::Constant(static_cast<Index>(rows.size()), nv, m.lit(0));
    for (std::size_t r = 0; r < rows.size(); ++r) eq.row(static_cast<Index>(r)) = rows[r].transpose();
    Mat<K> ker = rows.empty() ? Mat<K>(Mat<K>::Identity(nv, nv) * m.lit(1)) : null_space<K>(eq);
    if (ker.cols() == 0) continue;
    L.space = Subspace<K>::from_columns(ker);
    std::vector<Mat<K>> basis;
    for (Index r = 0; r < L.space.dim(); ++r) {
      Mat<K> f = Mat<K>::Constant(n.dim(), m.dim(), m.lit(0));
      for (Index v = 0; v < nv; ++v) f(L.vars[v].second, L.vars[v].first) = L.space.basis()(r, v);
      basis.push_back(f);
    }
    h.complex.dims[deg] = L.space.dim();
    h.maps[deg] = std::move(basis);
    layouts.emplace(deg, std::move(L));
  }
  Mat<K> dm = m.differential_matrix(), dn = n.differential_matrix();
  for (auto& [deg, L] : layouts) {
    auto next = layouts.find(deg + 1);
    if (next == layouts.end()) continue;
    const auto& L2 = next->second;
    Mat<K> d = Mat<K>::Constant(L2.space.dim(), L.space.dim(), m.lit(0));
    for (Index c = 0; c < L.space.dim(); ++c) {
      const Mat<K>& f = h.maps[deg][c];
      Mat<K> df = dn * f - m.lit(parity_sign(deg)) * (f * dm);
      Vec<K> flat(static_cast<Index>(L2.vars.size()));
      for (std::size_t v = 0; v < L2.vars.size(); ++v) flat(static_cast<Index>(v)) = df(L2.vars[v].second, L2.vars[v].first);
      if (!L2.space.contains(flat)) throw Error(Errc::invariant_violation, "Hom differential leaves the A-linear maps");
      d.col(c) = L2.space.coordinates(flat);
    }
    h.complex.d[deg] = d;
  }
  return h;
}

template <class K> std::vector<Mat<K>> chain_maps(const DgModule<K>& m, const DgModule<K>& n) {
  auto h = strict_hom(m, n);
  std::vector<Mat<K>> out;
  auto it = h.maps.find(0);
  if (it == h.maps.end()) return out;
  Subspace<K> z = cocycles(h.complex, 0);
  for (Index r = 0; r < z.dim(); ++r) out.push_back(h.map(0, z.vector(r)));
  return out;
}

template <class K> Complex<K> strict_tensor(const DgModule<K>& m, const DgModule<K>& n) {
  require_same_algebra(n.algebra(), opposite_dga(m.algebra()), "strict_tensor");
  const auto& a = m.algebra();
  std::map<int, std::vector<std::pair<int, int>>> pairs;
  std::map<std::pair<int, int>, Index> pos;
  for (int i = 0; i < m.dim(); ++i)
    for (int k = 0; k < n.dim(); ++k) {
      int t = m.degree(i) + n.degree(k);
      pos[{i, k}] = static_cast<Index>(pairs[t].size());
      pairs[t].push_back({i, k});
    }
  auto vec_in = [&](int t) { return Vec<K>::Constant(static_cast<Index>(pairs[t].size()), m.lit(0)); };
  std::map<int, std::vector<Vec<K>>> rel;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < n.dim(); ++k) {
        int t = m.degree(i) + a.degree(j) + n.degree(k);
        if (!pairs.count(t)) continue;
        Vec<K> v = vec_in(t);
        for (auto& [i2, x] : m.action(i, j)) v(pos[{i2, k}]) += x;
        K s = m.lit(koszul_sign(a.degree(j), n.degree(k)));
        for (auto& [k2, y] : n.action(k, j)) v(pos[{i, k2}]) -= s * y;
        if (!is_zero_matrix<K>(v)) rel[t].push_back(v);
      }
  std::map<int, Subspace<K>> relsp;
  std::map<int, std::vector<Index>> keep;
  Complex<K> c;
  for (auto& [t, ps] : pairs) {
    const Index dim = static_cast<Index>(ps.size());
    Subspace<K> r(dim);
    if (!rel[t].empty()) {
      Mat<K> cols(dim, static_cast<Index>(rel[t].size()));
      for (std::size_t q = 0; q < rel[t].size(); ++q) cols.col(static_cast<Index>(q)) = rel[t][q];
      r = Subspace<K>::from_columns(cols);
    }
    std::vector<bool> piv(dim, false);
    for (Index p : r.pivots()) piv[p] = true;
    for (Index q = 0; q < dim; ++q)
      if (!piv[q]) keep[t].push_back(q);
    relsp.emplace(t, std::move(r));
    c.dims[t] = static_cast<Index>(keep[t].size());
  }
  for (auto& [t, ps] : pairs) {
    if (!pairs.count(t + 1)) continue;
    auto& src = keep[t];
    auto& dst = keep[t + 1];
    Mat<K> d = Mat<K>::Constant(static_cast<Index>(dst.size()), static_cast<Index>(src.size()), m.lit(0));
    for (std::size_t col = 0; col < src.size(); ++col) {
      auto [i, k] = ps[src[col]];
      Vec<K> v = vec_in(t + 1);
      for (auto& [i2, x] : m.differential(i)) v(pos[{i2, k}]) += x;
      K s = m.lit(parity_sign(m.degree(i)));
      for (auto& [k2, y] : n.differential(k)) v(pos[{i, k2}]) += s * y;
      Vec<K> red = relsp.at(t + 1).reduce(v);
      for (std::size_t row = 0; row < dst.size(); ++row) d(static_cast<Index>(row), static_cast<Index>(col)) = red(dst[row]);
    }
    c.d[t] = d;
  }
  return c;
}

template <class K> DgModule<K> side_swap(const DgModule<K>& m, DgaPtr<K> opposite) {
  const auto& a = m.algebra();
  if (!opposite)
    opposite = share(opposite_dga(a));
  else
    require_same_algebra(*opposite, opposite_dga(a), "side_swap");
  std::vector<Combination<K>> action, diff;
  for (int i = 0; i < m.dim(); ++i) {
    diff.push_back(m.differential(i));
    for (int j = 0; j < a.dim(); ++j) action.push_back(m.action(i, j));
  }
  DgModule<K> out(std::move(opposite), m.basis(), std::move(action), std::move(diff));
  auto v = validate_module(out);
  if (!v.empty())
    throw Error(Errc::precondition_failed, "side_swap: the algebra is not graded commutative (" + v.front().axiom + ")");
  return out;
}

template <class K>
std::optional<Mat<K>> find_isomorphism(const DgModule<K>& m, const DgModule<K>& n, std::uint64_t seed, int tries) {
  if (m.dim() != n.dim()) return std::nullopt;
  if (!(m.algebra() == n.algebra())) return std::nullopt;
  for (int deg : m.degrees())
    if (m.indices_in_degree(deg).size() != n.indices_in_degree(deg).size()) return std::nullopt;
  if (m.dim() == 0) return Mat<K>(0, 0);
  if (m == n) return Mat<K>(Mat<K>::Identity(m.dim(), m.dim()) * m.lit(1));
  auto basis = chain_maps(m, n);
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < tries; ++t) {
    Mat<K> f = Mat<K>::Constant(n.dim(), m.dim(), m.lit(0));
    for (auto& b : basis) f += b * m.lit(t == 0 && basis.size() == 1 ? 1 : coef(rng));
    if (rank<K>(f) == m.dim()) return f;
  }
  return std::nullopt;
}

#define DGFORGE_INSTANTIATE(K)                                                                              \
  template class DgModule<K>;                                                                               \
  template struct HomComplex<K>;                                                                            \
  template std::vector<Violation> validate_module<K>(const DgModule<K>&);                                   \
  template bool is_chain_map<K>(const ModuleMap<K>&);                                                       \
  template DgModule<K> shift<K>(const DgModule<K>&, int);                                                   \
  template DgModule<K> cone<K>(const ModuleMap<K>&);                                                        \
  template DgModule<K> direct_sum<K>(const DgModule<K>&, const DgModule<K>&);                               \
  template DgModule<K> rebind<K>(const DgModule<K>&, DgaPtr<K>);                                            \
  template DgModule<K> k_dual<K>(const DgModule<K>&, DgaPtr<K>);                                            \
  template DgModule<K> regular_module<K>(DgaPtr<K>);                                                        \
  template DgModule<K> free_module<K>(DgaPtr<K>, const std::vector<int>&);                                  \
  template std::pair<DgModule<K>, Mat<K>> submodule<K>(const DgModule<K>&, const Subspace<K>&);             \
  template std::pair<DgModule<K>, Mat<K>> quotient_module<K>(const DgModule<K>&, const Subspace<K>&);       \
  template DgModule<K> cyclic_quotient<K>(DgaPtr<K>, const Subspace<K>&);                                   \
  template bool is_submodule<K>(const DgModule<K>&, const Subspace<K>&);                                    \
  template Subspace<K> module_times<K>(const DgModule<K>&, const Subspace<K>&);                             \
  template Subspace<K> generated_submodule<K>(const DgModule<K>&, const Subspace<K>&);                      \
  template HomComplex<K> strict_hom<K>(const DgModule<K>&, const DgModule<K>&);                             \
  template std::vector<Mat<K>> chain_maps<K>(const DgModule<K>&, const DgModule<K>&);                       \
  template Complex<K> strict_tensor<K>(const DgModule<K>&, const DgModule<K>&);                             \
  template DgModule<K> side_swap<K>(const DgModule<K>&, DgaPtr<K>);                                         \
  template std::optional<Mat<K>> find_isomorphism<K>(const DgModule<K>&, const DgModule<K>&, std::uint64_t, int);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
