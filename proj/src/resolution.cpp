#include "dgforge/resolution.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace dgforge {

template <class K> std::shared_ptr<const ProjectiveTypes<K>> projective_types(DgaPtr<K> a) {
  auto out = std::make_shared<ProjectiveTypes<K>>();
  out->algebra = a;
  if (a->is_zero_ring()) return out;
  auto idem = primitive_idempotents(*a);
  out->split = idem.split;
  auto reg = regular_module(a);
  for (auto& e : idem.idempotents) {
    Subspace<K> space = Subspace<K>::from_columns(a->left_multiplication(e));
    auto sub = submodule(reg, space).first;
    out->types.push_back({e, std::move(sub), std::move(space)});
  }
  return out;
}

template <class K> std::vector<int> Semifree<K>::offsets() const {
  std::vector<int> off;
  int at = 0;
  for (auto& g : gens_) {
    off.push_back(at);
    at += types_->types[g.type].module.dim();
  }
  return off;
}

template <class K> int Semifree<K>::materialized_dim() const {
  int at = 0;
  for (auto& g : gens_) at += types_->types[g.type].module.dim();
  return at;
}

template <class K> DgModule<K> Semifree<K>::materialize() const {
  const auto& a = algebra();
  const int na = a.dim();
  auto off = offsets();
  std::vector<BasisElement> basis;
  std::vector<Combination<K>> action, diff;
  for (int i = 0; i < size(); ++i) {
    const auto& g = gens_[i];
    const auto& p = types_->types[g.type].module;
    for (int r = 0; r < p.dim(); ++r) {
      basis.push_back({"g" + std::to_string(i) + "." + p.name(r), g.degree + p.degree(r)});
      for (int b = 0; b < na; ++b) {
        Combination<K> c;
        for (auto& [q, x] : p.action(r, b)) c.emplace_back(off[i] + q, x);
        action.push_back(std::move(c));
      }
      Vec<K> v = types_->types[g.type].space.vector(r);
      Combination<K> c;
      K sign = a.lit(parity_sign(g.degree));
      for (auto& [q, x] : p.differential(r)) c.emplace_back(off[i] + q, sign * x);
      for (auto& [j, cj] : g.diff) {
        Vec<K> coords = types_->coordinates(gens_[j].type, a.multiply(cj, v));
        for (Index q = 0; q < coords.size(); ++q)
          if (!is_zero(coords(q))) c.emplace_back(off[j] + static_cast<int>(q), coords(q));
      }
      diff.push_back(std::move(c));
    }
  }
  return DgModule<K>(types_->algebra, std::move(basis), std::move(action), std::move(diff));
}

template <class K> Vec<K> Semifree<K>::element(int i, const Vec<K>& a) const {
  auto off = offsets();
  Vec<K> v = Vec<K>::Constant(materialized_dim(), algebra().lit(0));
  Vec<K> c = types_->coordinates(gens_[i].type, a);
  v.segment(off[i], c.size()) = c;
  return v;
}

template <class K> std::vector<std::pair<int, Vec<K>>> Semifree<K>::decompose(const Vec<K>& v) const {
  auto off = offsets();
  std::vector<std::pair<int, Vec<K>>> out;
  for (int i = 0; i < size(); ++i) {
    int n = types_->types[gens_[i].type].module.dim();
    Vec<K> c = v.segment(off[i], n);
    if (is_zero_matrix<K>(c)) continue;
    out.emplace_back(i, types_->element(gens_[i].type, c));
  }
  return out;
}

template <class K> bool is_ordinary(const FdDga<K>& a) {
  for (int i = 0; i < a.dim(); ++i)
    if (a.degree(i) != 0 || !a.differential(i).empty()) return false;
  return true;
}

namespace {

template <class K> Mat<K> eps_matrix(const Semifree<K>& p, const std::vector<Vec<K>>& eps, const DgModule<K>& target) {
  Mat<K> e = Mat<K>::Constant(target.dim(), p.materialized_dim(), target.lit(0));
  auto off = p.offsets();
  for (int i = 0; i < p.size(); ++i) {
    const auto& sp = p.types().types[p.generator(i).type].space;
    for (Index r = 0; r < sp.dim(); ++r) e.col(off[i] + r) = target.act(eps[i], sp.vector(r));
  }
  return e;
}

template <class K> Vec<K> lift(const DgModule<K>& m, int n, const Vec<K>& local) {
  Vec<K> v = m.zero_vector();
  auto idx = m.indices_in_degree(n);
  for (std::size_t k = 0; k < idx.size(); ++k) v(idx[k]) = local(static_cast<Index>(k));
  return v;
}

template <class K> Subspace<K> span_columns(Index ambient, const std::vector<Vec<K>>& vs) {
  if (vs.empty()) return Subspace<K>(ambient);
  Mat<K> cols(ambient, static_cast<Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) cols.col(static_cast<Index>(k)) = vs[k];
  return Subspace<K>::from_columns(cols);
}

template <class K> struct Cover {
  Semifree<K> free;
  std::vector<Vec<K>> eps;
  DgModule<K> materialized;
  Mat<K> eps_mat;
};

// Semifree P with a surjective chain map onto m that is onto in cohomology.
template <class K>
Cover<K> build_cover(const DgModule<K>& m, const std::shared_ptr<const ProjectiveTypes<K>>& types, bool descending) {
  const auto& a = *types->algebra;
  Cover<K> cov{Semifree<K>(types), {}, {}, {}};
  std::vector<std::vector<Vec<K>>> cycles(types->count());
  for (int t = 0; t < types->count(); ++t) {
    const auto& p = types->types[t].module;
    auto c = p.underlying_complex();
    for (auto& [n, dim] : c.dims) {
      Subspace<K> z = cocycles(c, n);
      for (Index r = 0; r < z.dim(); ++r) cycles[t].push_back(types->element(t, lift(p, n, z.vector(r))));
    }
  }
  auto c = m.underlying_complex();
  Mat<K> dm = m.differential_matrix();
  Subspace<K> u = m.dim() ? image<K>(dm, Subspace<K>::whole(m.dim())) : Subspace<K>(0);
  std::vector<int> degs = m.degrees();
  if (descending) std::reverse(degs.begin(), degs.end());
  for (int n : degs) {
    Mat<K> reps = cohomology_representatives(c, n);
    for (Index k = 0; k < reps.cols(); ++k) {
      Vec<K> z = lift(m, n, Vec<K>(reps.col(k)));
      for (int t = 0; t < types->count(); ++t) {
        Vec<K> w = m.act(z, types->types[t].idempotent);
        if (u.contains(w)) continue;
        cov.free.add({t, n, 0, {}});
        cov.eps.push_back(w);
        std::vector<Vec<K>> vs;
        for (auto& zc : cycles[t]) vs.push_back(m.act(w, zc));
        u = sum(u, span_columns<K>(m.dim(), vs));
      }
    }
  }
  for (;;) {
    cov.materialized = cov.free.materialize();
    cov.eps_mat = eps_matrix(cov.free, cov.eps, m);
    Subspace<K> im = cov.eps_mat.cols() ? Subspace<K>::from_columns(cov.eps_mat) : Subspace<K>(m.dim());
    if (im.dim() == m.dim()) break;
    std::optional<std::pair<Vec<K>, int>> missing;
    for (int i = 0; i < m.dim() && !missing; ++i) {
      if (im.contains(m.basis_vector(i))) continue;
      for (int t = 0; t < types->count(); ++t) {
        Vec<K> w = m.act(m.basis_vector(i), types->types[t].idempotent);
        if (!im.contains(w)) {
          missing = {w, t};
          break;
        }
      }
    }
    if (!missing) throw Error(Errc::invariant_violation, "cover: idempotents do not sum to one");
    auto [w, t] = *missing;
    const int n = *m.degree_of(w);
    Vec<K> target = m.d(w);
    const auto& pm = cov.materialized;
    auto idx = pm.indices_in_degree(n + 1);
    std::optional<Vec<K>> y;
    if (is_zero_matrix<K>(target)) {
      y = pm.zero_vector();
    } else if (!idx.empty()) {
      const Index nv = static_cast<Index>(idx.size()), dp = pm.dim();
      Mat<K> sys = Mat<K>::Constant(2 * dp + m.dim(), nv, a.lit(0));
      Mat<K> rhs = Mat<K>::Constant(2 * dp + m.dim(), 1, a.lit(0));
      Mat<K> re = pm.action_matrix(types->types[t].idempotent), d = pm.differential_matrix();
      for (Index k = 0; k < nv; ++k) {
        sys.block(0, k, dp, 1) = re.col(idx[k]);
        sys(idx[k], k) -= a.lit(1);
        sys.block(dp, k, dp, 1) = d.col(idx[k]);
        sys.block(2 * dp, k, m.dim(), 1) = cov.eps_mat.col(idx[k]);
      }
      rhs.block(2 * dp, 0, m.dim(), 1) = target;
      if (auto sol = solve<K>(sys, rhs)) {
        Vec<K> v = pm.zero_vector();
        for (Index k = 0; k < nv; ++k) v(idx[k]) = (*sol)(k, 0);
        y = v;
      }
    }
    Generator<K> g{t, n, 0, {}};
    if (y) {
      g.diff = cov.free.decompose(*y);
    } else {
      int prev = cov.free.add({t, n + 1, 0, {}});
      cov.eps.push_back(target);
      g.diff = {{prev, types->types[t].idempotent}};
    }
    cov.free.add(std::move(g));
    cov.eps.push_back(w);
  }
  return cov;
}

template <class K> bool splits(const DgModule<K>& omega, const DgModule<K>& p, const Mat<K>& eps) {
  if (omega.dim() == 0) return true;
  auto h = strict_hom(omega, p);
  auto it = h.maps.find(0);
  if (it == h.maps.end()) return false;
  const Index n = omega.dim();
  Mat<K> sys(n * n, static_cast<Index>(it->second.size()));
  for (std::size_t k = 0; k < it->second.size(); ++k) {
    Mat<K> c = eps * it->second[k];
    sys.col(static_cast<Index>(k)) = Eigen::Map<Vec<K>>(c.data(), n * n);
  }
  Mat<K> id = Mat<K>::Identity(n, n) * omega.lit(1);
  Mat<K> rhs = Eigen::Map<Vec<K>>(id.data(), n * n);
  return solve<K>(sys, rhs).has_value();
}

template <class K> std::optional<int> single_degree(const DgModule<K>& m) {
  auto d = m.degrees();
  if (d.size() != 1) return std::nullopt;
  return d.front();
}

template <class K> std::optional<Vec<K>> inverse_coefficient(const FdDga<K>& a, const Vec<K>& c, const Vec<K>& ei,
                                                           const Vec<K>& ej) {
  const int n = a.dim();
  Mat<K> sys(2 * n, n), rhs(2 * n, 1);
  sys.topRows(n) = a.right_multiplication(c);
  sys.bottomRows(n) = a.left_multiplication(c);
  rhs.topRows(n) = ei;
  rhs.bottomRows(n) = ej;
  auto sol = solve<K>(sys, rhs);
  if (!sol) return std::nullopt;
  Vec<K> v = sol->col(0);
  return Vec<K>(a.multiply(a.multiply(ei, v), ej));
}

}  // namespace

template <class K> int TruncatedResolution<K>::tensor_error_top(int n_max) const {
  if (complete || cone_lo > cone_hi) return -unbounded_degree;
  if (algebra_top > 1) return unbounded_degree;
  return cone_hi + n_max;
}

template <class K> bool TruncatedResolution<K>::tensor_certified(int n, int n_min, int n_max) const {
  if (complete || n_min > n_max) return true;
  int top = tensor_error_top(n_max);
  return top < unbounded_degree && n >= top + 2;
}

template <class K> bool TruncatedResolution<K>::hom_certified(int n, int n_min, int n_max) const {
  if (complete || n_min > n_max) return true;
  if (algebra_top > 1) return false;
  return n <= n_min - cone_hi - 2;
}

template <class K> Mat<K> TruncatedResolution<K>::augmentation_matrix() const {
  return eps_matrix(total, augmentation, target);
}

template <class K> bool is_minimal(const Semifree<K>& f) {
  if (f.algebra().is_zero_ring()) return true;
  Subspace<K> j = underlying_radical(f.algebra());
  for (auto& g : f.generators())
    for (auto& [i, c] : g.diff)
      if (!j.contains(c)) return false;
  return true;
}

template <class K> void cancel_units(TruncatedResolution<K>& r) {
  auto& gens = r.total.generators();
  const auto& a = r.total.algebra();
  if (a.is_zero_ring()) return;
  const auto& types = r.total.types();
  Subspace<K> rad = underlying_radical(a);
  for (;;) {
    int gi = -1, gj = -1;
    Vec<K> v;
    for (int i = 0; i < static_cast<int>(gens.size()) && gi < 0; ++i)
      for (auto& [j, c] : gens[i].diff) {
        if (rad.contains(c)) continue;
        auto inv = inverse_coefficient(a, c, types.types[gens[i].type].idempotent, types.types[gens[j].type].idempotent);
        if (!inv) continue;
        gi = i;
        gj = j;
        v = *inv;
        break;
      }
    if (gi < 0) break;
    const int n = static_cast<int>(gens.size());
    for (int k = 0; k < n; ++k) {
      if (k == gi || k == gj) continue;
      auto& dk = gens[k].diff;
      std::map<int, Vec<K>> acc;
      Vec<K> cjk;
      for (auto& [l, c] : dk) {
        if (l == gj) cjk = c;
        else if (l != gi) acc[l] = c;
      }
      if (cjk.size()) {
        Vec<K> vc = a.multiply(v, cjk);
        for (auto& [l, cli] : gens[gi].diff) {
          if (l == gj) continue;
          Vec<K> term = a.multiply(cli, vc);
          auto it = acc.find(l);
          if (it == acc.end()) acc[l] = -term;
          else it->second -= term;
        }
        r.augmentation[k] -= r.target.act(r.augmentation[gi], vc);
      }
      dk.clear();
      for (auto& [l, c] : acc)
        if (!is_zero_matrix<K>(c)) dk.emplace_back(l, c);
    }
    // drop gi, gj and sort the rest so differentials point backwards
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (k != gi && k != gj) keep.push_back(k);
    std::map<int, std::vector<int>> users;
    std::map<int, int> pending;
    for (int k : keep) {
      pending[k] = 0;
      for (auto& [l, c] : gens[k].diff) {
        users[l].push_back(k);
        ++pending[k];
      }
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int k : keep)
      if (pending[k] == 0) ready.push(k);
    std::vector<int> order;
    while (!ready.empty()) {
      int k = ready.top();
      ready.pop();
      order.push_back(k);
      for (int u : users[k])
        if (--pending[u] == 0) ready.push(u);
    }
    if (order.size() != keep.size()) throw Error(Errc::invariant_violation, "cancellation produced a cyclic differential");
    std::map<int, int> pos;
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
    std::vector<Generator<K>> next;
    std::vector<Vec<K>> aug;
    for (int k : order) {
      Generator<K> g = gens[k];
      for (auto& [l, c] : g.diff) l = pos.at(l);
      std::sort(g.diff.begin(), g.diff.end(), [](auto& x, auto& y) { return x.first < y.first; });
      next.push_back(std::move(g));
      aug.push_back(r.augmentation[k]);
    }
    gens = std::move(next);
    r.augmentation = std::move(aug);
  }
}

template <class K> TruncatedResolution<K> resolve(const DgModule<K>& m, ResolveOptions opts) {
  if (opts.max_stages <= 0) throw Error(Errc::precondition_failed, "resolve: stage budget must be positive");
  auto ap = m.algebra_ptr();
  const auto& a = *ap;
  auto types = projective_types(ap);
  TruncatedResolution<K> r;
  r.target = m;
  r.total = Semifree<K>(types);
  r.syzygies.push_back(m);
  auto ha = a.cohomology();
  r.algebra_top = -unbounded_degree;
  for (auto& [n, e] : ha.entries)
    if (e.dim) r.algebra_top = std::max(r.algebra_top, n);

  bool descending = false;
  if (!a.is_zero_ring()) {
    Subspace<K> rad = underlying_radical(a);
    descending = rad.dim() > 0;
    for (Index i = 0; i < rad.dim(); ++i) descending = descending && *a.degree_of(rad.vector(i)) <= 0;
  }
  const bool ordinary = is_ordinary(a);

  std::vector<std::vector<int>> stage_gens;
  std::vector<DgModule<K>> covers;
  std::vector<Mat<K>> cover_eps;
  Semifree<K> prev_free;
  Mat<K> prev_incl;
  DgModule<K> omega = m;
  for (int s = 0; s < opts.max_stages; ++s) {
    if (omega.cohomology().total_dim() == 0) break;
    auto cov = build_cover(omega, types, descending);
    const int base = r.total.size();
    stage_gens.emplace_back();
    for (int k = 0; k < cov.free.size(); ++k) {
      Generator<K> g = cov.free.generator(k);
      g.stage = s;
      g.degree -= s;
      K sign = a.lit(parity_sign(s));
      for (auto& [j, c] : g.diff) {
        j += base;
        c = sign * c;
      }
      if (s > 0) {
        Vec<K> in_prev = prev_incl * cov.eps[k];
        for (auto& [j, c] : prev_free.decompose(in_prev)) g.diff.emplace_back(stage_gens[s - 1][j], c);
      }
      std::sort(g.diff.begin(), g.diff.end(), [](auto& x, auto& y) { return x.first < y.first; });
      stage_gens.back().push_back(r.total.add(std::move(g)));
      r.augmentation.push_back(s == 0 ? cov.eps[k] : m.zero_vector());
    }
    const auto& pm = cov.materialized;
    Mat<K> ker = cov.eps_mat.cols() ? null_space<K>(cov.eps_mat) : Mat<K>(0, 0);
    if (ker.cols() == 0) {
      omega = DgModule<K>::zero(ap);
      prev_incl = Mat<K>(pm.dim(), 0);
    } else {
      auto [sub, incl] = submodule(pm, Subspace<K>::from_columns(ker));
      omega = std::move(sub);
      prev_incl = std::move(incl);
    }
    prev_free = cov.free;
    covers.push_back(pm);
    cover_eps.push_back(cov.eps_mat);
    r.syzygies.push_back(omega);
    r.stages = s + 1;

    if (opts.detect_periodicity && ordinary && !r.periodic && omega.dim() > 0) {
      auto dn = single_degree(omega);
      for (int q = 0; q <= s && dn && !r.periodic; ++q) {
        const auto& old = r.syzygies[q];
        auto dq = single_degree(old);
        if (!dq || old.dim() != omega.dim()) continue;
        int k = *dq - *dn;
        if (!find_isomorphism(shift(old, k), omega)) continue;
        if (splits(old, covers[q], cover_eps[q])) continue;
        r.periodic = typename TruncatedResolution<K>::Periodicity{q, s + 1, k};
      }
    }
  }
  auto hc = omega.cohomology();
  r.complete = hc.total_dim() == 0;
  r.cone_lo = unbounded_degree;
  r.cone_hi = -unbounded_degree;
  for (auto& [n, e] : hc.entries)
    if (e.dim) {
      r.cone_lo = std::min(r.cone_lo, n - r.stages);
      r.cone_hi = std::max(r.cone_hi, n - r.stages);
    }

  r.final_stage.assign(r.stages, true);
  if (!r.complete && r.stages > 0) {
    const auto& last = covers.back();
    Subspace<K> pj = module_times(last, dg_ideals(a).radical);
    Subspace<K> om = prev_incl.cols() ? Subspace<K>::from_columns(prev_incl) : Subspace<K>(last.dim());
    r.final_stage.back() = pj.contains(om);
  }
  if (opts.minimize) cancel_units(r);
  r.minimal = is_minimal(r.total);
  return r;
}

template <class K> TruncatedResolution<K> resolve_minimal(const DgModule<K>& m, int max_stages) {
  ResolveOptions o;
  o.max_stages = max_stages;
  return resolve(m, o);
}

std::string BettiTable::to_string() const {
  std::ostringstream os;
  for (std::size_t s = 0; s < per_stage.size(); ++s) os << (s ? " " : "") << per_stage[s] << (final_stage[s] ? "" : "?");
  if (complete) os << " (complete)";
  return os.str();
}

template <class K> BettiTable betti_table(const TruncatedResolution<K>& r) {
  BettiTable b;
  b.per_stage.assign(r.stages, 0);
  b.final_stage = r.final_stage;
  b.complete = r.complete;
  for (auto& g : r.total.generators()) {
    ++b.entries[{g.stage, g.degree}];
    ++b.total_per_degree[g.degree];
    ++b.per_stage[g.stage];
  }
  // trailing stages emptied by cancellation are dropped when the resolution is complete
  if (r.complete)
    while (!b.per_stage.empty() && b.per_stage.back() == 0) {
      b.per_stage.pop_back();
      b.final_stage.pop_back();
    }
  return b;
}

#define DGFORGE_INSTANTIATE(K)                                                                       \
  template std::shared_ptr<const ProjectiveTypes<K>> projective_types<K>(DgaPtr<K>);                 \
  template class Semifree<K>;                                                                        \
  template struct TruncatedResolution<K>;                                                            \
  template TruncatedResolution<K> resolve<K>(const DgModule<K>&, ResolveOptions);                    \
  template TruncatedResolution<K> resolve_minimal<K>(const DgModule<K>&, int);                       \
  template void cancel_units<K>(TruncatedResolution<K>&);                                            \
  template bool is_minimal<K>(const Semifree<K>&);                                                   \
  template BettiTable betti_table<K>(const TruncatedResolution<K>&);                                 \
  template bool is_ordinary<K>(const FdDga<K>&);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
