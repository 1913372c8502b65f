#include "dgforge/derived.hpp"

#include <algorithm>
#include <functional>

namespace dgforge {

const char* status_name(Status s) {
  switch (s) {
    case Status::certified_yes: return "Certified-Yes";
    case Status::certified_no: return "Certified-No";
    case Status::inconclusive: return "Inconclusive-at-truncation";
  }
  return "?";
}

namespace {

/** Homogeneous components of an element of A, keyed by degree. */
template <class K> std::map<int, Vec<K>> components(const FdDga<K>& a, const Vec<K>& c) {
  std::map<int, Vec<K>> out;
  for (int i = 0; i < a.dim(); ++i) {
    if (is_zero(c(i))) continue;
    auto it = out.find(a.degree(i));
    if (it == out.end()) it = out.emplace(a.degree(i), a.zero()).first;
    it->second(i) = c(i);
  }
  return out;
}

inline std::vector<int> basis_degrees(const std::vector<BasisElement>& basis) {
  std::vector<int> out;
  for (auto& b : basis) out.push_back(b.degree);
  return out;
}

/** Image of a degree preserving projector, split by degree. */
template <class K> std::map<int, Subspace<K>> graded_image(const std::vector<int>& degrees, const Mat<K>& proj) {
  std::map<int, std::vector<Index>> by_degree;
  for (std::size_t i = 0; i < degrees.size(); ++i) by_degree[degrees[i]].push_back(static_cast<Index>(i));
  std::map<int, Subspace<K>> out;
  for (auto& [m, idx] : by_degree) {
    Mat<K> cols(proj.rows(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) cols.col(static_cast<Index>(k)) = proj.col(idx[k]);
    auto s = Subspace<K>::from_columns(cols);
    if (!s.empty()) out.emplace(m, std::move(s));
  }
  return out;
}

/** Pieces (generator, local degree) of a sum over generators, laid out by total degree. */
template <class K> struct Layout {
  struct Piece {
    int gen = 0;
    int local = 0;
    int degree = 0;
    Index offset = 0;
    const Subspace<K>* space = nullptr;
  };
  std::vector<Piece> pieces;
  std::map<std::pair<int, int>, int> lookup;
  std::map<int, Index> dims;

  const Piece* find(int gen, int local) const {
    auto it = lookup.find({gen, local});
    return it == lookup.end() ? nullptr : &pieces[it->second];
  }
};

template <class K>
Layout<K> make_layout(const Semifree<K>& f, const std::vector<std::map<int, Subspace<K>>>& images, bool hom,
                      int lo, int hi) {
  Layout<K> l;
  for (int i = 0; i < f.size(); ++i) {
    const auto& g = f.generator(i);
    for (auto& [m, s] : images[g.type]) {
      int n = hom ? m - g.degree : g.degree + m;
      if (n < lo || n > hi) continue;
      typename Layout<K>::Piece p{i, m, n, l.dims[n], &s};
      l.dims[n] += s.dim();
      l.lookup[{i, m}] = static_cast<int>(l.pieces.size());
      l.pieces.push_back(p);
    }
  }
  return l;
}

/**
 * Differential of a layout. image(piece, v, add) reports the image of the
 * basis vector v of a piece as calls add(gen, local, w).
 */
template <class K>
Complex<K> assemble(const Layout<K>& l, int lo, int hi, K zero,
                    const std::function<void(const typename Layout<K>::Piece&, const Vec<K>&,
                                             const std::function<void(int, int, const Vec<K>&)>&)>& image) {
  Complex<K> c;
  for (auto& [n, d] : l.dims)
    if (d) c.dims[n] = d;
  for (int n = lo; n < hi; ++n) {
    if (!c.dim(n) || !c.dim(n + 1)) continue;
    c.d[n] = Mat<K>::Constant(c.dim(n + 1), c.dim(n), zero);
  }
  for (auto& p : l.pieces) {
    if (p.degree >= hi || !c.d.count(p.degree)) continue;
    Mat<K>& d = c.d[p.degree];
    for (Index col = 0; col < p.space->dim(); ++col) {
      image(p, p.space->vector(col), [&](int gen, int local, const Vec<K>& w) {
        if (is_zero_matrix<K>(w)) return;
        const auto* q = l.find(gen, local);
        if (!q || q->degree != p.degree + 1)
          throw Error(Errc::invariant_violation, "differential leaves the generator summands");
        d.col(p.offset + col).segment(q->offset, q->space->dim()) += q->space->coordinates(w);
      });
    }
  }
  return c;
}

/** Generators whose differential uses g_i, with the coefficient. */
template <class K> std::vector<std::vector<std::pair<int, Vec<K>>>> users(const Semifree<K>& f) {
  std::vector<std::vector<std::pair<int, Vec<K>>>> out(f.size());
  for (int k = 0; k < f.size(); ++k)
    for (auto& [i, c] : f.generator(k).diff) out[i].emplace_back(k, c);
  return out;
}

template <class K> std::pair<int, int> support(const CohomologyTable& h) {
  int lo = unbounded_degree, hi = -unbounded_degree;
  for (auto& [n, e] : h.entries)
    if (e.dim) {
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  return {lo, hi};
}

/** Left action c n = (-1)^{|c||n|} n .op c of A on a right A^op-module. */
template <class K> Vec<K> left_act(const DgModule<K>& n, int c_degree, const Vec<K>& c, int v_degree, const Vec<K>& v) {
  return n.lit(koszul_sign(c_degree, v_degree)) * n.act(v, c);
}

template <class K>
Complex<K> tensor_with(const Semifree<K>& f, const DgModule<K>& n, int lo, int hi,
                       const std::function<Vec<K>(int, const Vec<K>&, int, const Vec<K>&)>& left) {
  const auto& a = f.algebra();
  std::vector<std::map<int, Subspace<K>>> images;
  for (auto& t : f.types().types) {
    Mat<K> proj(n.dim(), n.dim());
    for (int i = 0; i < n.dim(); ++i) proj.col(i) = left(0, t.idempotent, n.degree(i), n.basis_vector(i));
    images.push_back(graded_image<K>(basis_degrees(n.basis()), proj));
  }
  auto l = make_layout(f, images, false, lo, hi);
  return assemble<K>(l, lo, hi, a.lit(0), [&](const auto& p, const Vec<K>& v, const auto& add) {
    const auto& g = f.generator(p.gen);
    for (auto& [j, c] : g.diff)
      for (auto& [h, ch] : components(a, c)) add(j, p.local + h, left(h, ch, p.local, v));
    add(p.gen, p.local + 1, a.lit(parity_sign(g.degree)) * n.d(v));
  });
}

}  // namespace

template <class K> Complex<K> tensor_complex(const Semifree<K>& f, const DgModule<K>& n, DegreeWindow w) {
  return tensor_with<K>(f, n, w.lo - 1, w.hi + 1, [&](int hc, const Vec<K>& c, int hv, const Vec<K>& v) {
    return left_act(n, hc, c, hv, v);
  });
}

template <class K> Complex<K> hom_complex(const Semifree<K>& f, const DgModule<K>& n, DegreeWindow w) {
  const auto& a = f.algebra();
  const int lo = w.lo - 1, hi = w.hi + 1;
  std::vector<std::map<int, Subspace<K>>> images;
  for (auto& t : f.types().types) images.push_back(graded_image<K>(basis_degrees(n.basis()), n.action_matrix(t.idempotent)));
  auto l = make_layout(f, images, true, lo, hi);
  auto used = users(f);
  return assemble<K>(l, lo, hi, a.lit(0), [&](const auto& p, const Vec<K>& v, const auto& add) {
    add(p.gen, p.local + 1, n.d(v));
    K s = -a.lit(parity_sign(p.degree));
    for (auto& [k, c] : used[p.gen])
      for (auto& [h, ch] : components(a, c)) add(k, p.local + h, s * n.act(v, ch));
  });
}

namespace {

template <class K> CohomologyTable window_table(const Complex<K>& c, DegreeWindow w) {
  auto full = cohomology_of_complex(c);
  CohomologyTable t;
  for (int n = w.lo; n <= w.hi; ++n) t.entries[n] = {full.dim(n), true};
  return t;
}

}  // namespace

template <class K> CohomologyTable tensor_table(const TruncatedResolution<K>& r, const DgModule<K>& n, DegreeWindow w) {
  auto t = window_table(tensor_complex(r.total, n, w), w);
  auto [nmin, nmax] = support<K>(n.cohomology());
  for (auto& [d, e] : t.entries) e.certified = r.tensor_certified(d, nmin, nmax);
  return t;
}

template <class K> CohomologyTable hom_table(const TruncatedResolution<K>& r, const DgModule<K>& n, DegreeWindow w) {
  auto t = window_table(hom_complex(r.total, n, w), w);
  auto [nmin, nmax] = support<K>(n.cohomology());
  for (auto& [d, e] : t.entries) e.certified = r.hom_certified(d, nmin, nmax);
  return t;
}

template <class K> CohomologyTable derived_tensor(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                                  int max_stages) {
  return tensor_table(resolve_minimal(m, max_stages), n, w);
}

template <class K> CohomologyTable derived_hom(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                               int max_stages) {
  return hom_table(resolve_minimal(m, max_stages), n, w);
}

template <class K> DgModule<K> semisimple_top(DgaPtr<K> a) {
  if (a->is_zero_ring()) return DgModule<K>::zero(a);
  auto minus = dg_ideals(*a).minus;
  return cyclic_quotient(std::move(a), minus);
}

template <class K> void require_separable_top(const FdDga<K>& a) {
  if (a.is_zero_ring()) return;
  auto top = quotient_dga(a, dg_ideals(a).plus).first;
  if (!is_separable(top)) throw Error(Errc::precondition_failed, "A/J_+ is not separable");
}

namespace {

template <class K> DgaPtr<K> opposite_of(const DgModule<K>& m) { return share(opposite_dga(m.algebra())); }

template <class K> bool has_zero_differential(const FdDga<K>& a) {
  for (int i = 0; i < a.dim(); ++i)
    if (!a.differential(i).empty()) return false;
  return true;
}

std::string window_text(DegreeWindow w) { return std::to_string(w.lo) + ":" + std::to_string(w.hi); }

}  // namespace

template <class K> Verdict ext_tor_duality_check(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                                 int max_stages) {
  auto r = resolve_minimal(m, max_stages);
  auto hom = hom_table(r, k_dual(n, m.algebra_ptr()), w);
  auto tensor = tensor_table(r, n, DegreeWindow{-w.hi, -w.lo});
  Verdict v;
  v.window = w;
  v.betti = betti_table(r);
  int compared = 0;
  for (int i = w.lo; i <= w.hi; ++i) {
    if (!hom.certified(i) || !tensor.certified(-i)) continue;
    ++compared;
    if (hom.dim(i) != tensor.dim(-i)) {
      v.status = Status::certified_no;
      v.reason = "dimensions differ in degree " + std::to_string(i);
    }
  }
  if (v.reason.empty()) {
    v.status = compared ? Status::certified_yes : Status::inconclusive;
    v.reason = std::to_string(compared) + " certified degrees agree";
  }
  v.tables = {{"RHom(M, N^dual)", hom}, {"M (x)^L N", tensor}};
  return v;
}

template <class K> Verdict nakayama_witness(const DgModule<K>& m, int max_stages, DegreeWindow w) {
  const auto& a = m.algebra();
  require_separable_top(a);
  auto r = resolve_minimal(m, max_stages);
  Verdict v;
  v.window = w;
  v.betti = betti_table(r);
  if (m.cohomology().total_dim() == 0) {
    v.status = Status::certified_yes;
    v.reason = "H(M) = 0 and the minimal resolution has no generators";
    return v;
  }
  // Cancelling unit pairs can empty stage 0; the bottom layer is then made of later cycle generators.
  const Generator<K>* first = nullptr;
  for (auto& g : r.total.generators())
    if (g.diff.empty()) {
      first = &g;
      break;
    }
  if (!first) throw Error(Errc::invariant_violation, "H(M) != 0 but the minimal resolution has no generators");
  auto tensor = tensor_table(r, semisimple_top(opposite_of(m)), w);
  v.tables = {{"M (x)^L A/J_-", tensor}};
  std::string gen = "cycle generator of stage " + std::to_string(first->stage) + " in degree " + std::to_string(first->degree);
  for (auto& [n, e] : tensor.entries)
    if (e.dim && e.certified) {
      v.status = Status::certified_no;
      v.reason = gen + "; certified class of M (x)^L A/J_- in degree " + std::to_string(n);
      return v;
    }
  if (has_zero_differential(a) && r.minimal && r.final_stage[first->stage]) {
    // minimal with d_A = 0: F (x) A/J has zero differential, so the generator is a class
    v.status = Status::certified_no;
    v.reason = gen + "; it spans a class of M (x)^L A/J_- in degree " + std::to_string(first->degree);
    return v;
  }
  v.status = Status::inconclusive;
  v.reason = gen + "; no certified class of M (x)^L A/J_- in window " + window_text(w);
  return v;
}

namespace {

template <class K> void perfection_verdict(Verdict& v, const TruncatedResolution<K>& r) {
  v.betti = betti_table(r);
  if (r.complete) {
    int length = static_cast<int>(v.betti->per_stage.size());
    v.status = Status::certified_yes;
    v.reason = "minimal resolution terminates after " + std::to_string(length) + " stage" + (length == 1 ? "" : "s");
  } else if (r.periodic) {
    v.status = Status::certified_no;
    v.reason = "syzygy " + std::to_string(r.periodic->to) + " is isomorphic to syzygy " +
               std::to_string(r.periodic->from) + " shifted by " + std::to_string(r.periodic->shift);
  } else {
    v.status = Status::inconclusive;
    v.reason = "no termination or periodicity within " + std::to_string(r.stages) + " stages";
  }
}

}  // namespace

template <class K> Verdict perfection_check(const DgModule<K>& m, int max_stages) {
  require_separable_top(m.algebra());
  Verdict v;
  perfection_verdict(v, resolve_minimal(m, max_stages));
  return v;
}

template <class K> Verdict contradual_perfection_check(const DgModule<K>& m, DegreeWindow w, int max_stages) {
  require_separable_top(m.algebra());
  auto r = resolve_minimal(m, max_stages);
  auto top = semisimple_top(m.algebra_ptr());
  auto dual = k_dual(top, opposite_of(m));
  auto tensor = tensor_table(r, dual, DegreeWindow{-w.hi, -w.lo});
  CohomologyTable rhom;
  for (auto& [n, e] : tensor.entries) rhom.entries[-n] = e;
  auto direct = hom_table(r, top, w);
  for (int i = w.lo; i <= w.hi; ++i)
    if (rhom.certified(i) && direct.certified(i) && rhom.dim(i) != direct.dim(i))
      throw Error(Errc::invariant_violation, "RHom(M, A/J_-) disagrees with its dual description in degree " +
                                                 std::to_string(i));
  Verdict v;
  v.window = w;
  perfection_verdict(v, r);
  v.tables = {{"RHom(M, A/J_-)", rhom}};
  return v;
}

namespace {

/** One side of the Gorenstein test: RHom(A/J_-, A) over the given algebra. */
template <class K> Status gorenstein_side(DgaPtr<K> a, DegreeWindow w, int max_stages, Verdict& v,
                                          const std::string& label) {
  auto r = resolve_minimal(semisimple_top(a), max_stages);
  auto t = hom_table(r, regular_module(a), w);
  v.tables.emplace_back("RHom_" + label + "(A/J_-, A)", t);
  v.bettis.emplace_back(label, betti_table(r));
  if (r.complete) return Status::certified_yes;
  if (r.periodic && r.periodic->shift == 0 && is_ordinary(*a)) {
    // Ext^n = Ext^{n - (to - from)} past the period start, so zeros over one period persist
    bool zero = w.contains(r.periodic->to);
    for (int n = r.periodic->from + 1; n <= r.periodic->to && zero; ++n)
      zero = w.contains(n) && t.certified(n) && t.dim(n) == 0;
    if (zero) return Status::certified_yes;
  }
  return Status::inconclusive;
}

}  // namespace

template <class K> Verdict gorenstein_check(DgaPtr<K> a, DegreeWindow w, int max_stages) {
  require_separable_top(*a);
  Verdict v;
  v.window = w;
  auto left = gorenstein_side(a, w, max_stages, v, "A");
  auto right = gorenstein_side(share(opposite_dga(*a)), w, max_stages, v, "A^op");
  if (left == Status::certified_yes && right == Status::certified_yes) {
    v.status = Status::certified_yes;
    v.reason = "both RHom(A/J_-, A) are bounded with termination or periodicity certificates";
  } else {
    v.status = Status::inconclusive;
    v.reason = std::string("no finiteness certificate for ") +
               (left != Status::certified_yes ? "A" : "A^op") + " within " + std::to_string(max_stages) + " stages";
  }
  return v;
}

template <class K> DgModule<K> dual_algebra_module(DgaPtr<K> a) {
  auto reg_op = regular_module(share(opposite_dga(*a)));
  return k_dual(reg_op, std::move(a));
}

template <class K> Mat<K> dual_algebra_left_action(const FdDga<K>& a, const Vec<K>& c) {
  // (c phi)(x) = (-1)^{|c||phi| + |c||x|} phi(x c), phi = e_y^dual of degree -|y|
  Mat<K> out = Mat<K>::Constant(a.dim(), a.dim(), a.lit(0));
  for (auto& [h, ch] : components(a, c))
    for (int x = 0; x < a.dim(); ++x) {
      Vec<K> xc = a.multiply(a.basis_vector(x), ch);
      for (int y = 0; y < a.dim(); ++y)
        if (!is_zero(xc(y))) out(x, y) += a.lit(koszul_sign(h, -a.degree(y)) * koszul_sign(h, a.degree(x))) * xc(y);
    }
  return out;
}

template <class K> DgModule<K> dual_algebra_left_module(DgaPtr<K> a, DgaPtr<K> opposite) {
  if (!opposite) opposite = share(opposite_dga(*a));
  auto right = dual_algebra_module(a);
  const int n = a->dim();
  std::vector<Combination<K>> action(static_cast<std::size_t>(n) * n), diff;
  for (int j = 0; j < n; ++j) {
    Mat<K> l = dual_algebra_left_action(*a, a->basis_vector(j));
    for (int y = 0; y < n; ++y) {
      K s = a->lit(koszul_sign(a->degree(j), right.degree(y)));
      action[static_cast<std::size_t>(y) * n + j] = to_combination<K>(Vec<K>(s * l.col(y)));
    }
  }
  for (int y = 0; y < n; ++y) diff.push_back(right.differential(y));
  return DgModule<K>(std::move(opposite), right.basis(), std::move(action), std::move(diff));
}

namespace {

/** Generator summands of every degree with one global basis, for strictly finite results. */
template <class K> struct Pieces {
  struct Piece {
    int gen = 0;
    int local = 0;
    int degree = 0;
    Index offset = 0;
    const Subspace<K>* space = nullptr;
  };
  std::vector<Piece> list;
  std::map<std::pair<int, int>, int> lookup;
  Index dim = 0;
};

template <class K>
Pieces<K> make_pieces(const Semifree<K>& f, const std::vector<std::map<int, Subspace<K>>>& images, bool hom) {
  Pieces<K> ps;
  for (int i = 0; i < f.size(); ++i) {
    const auto& g = f.generator(i);
    for (auto& [m, s] : images[g.type]) {
      ps.lookup[{i, m}] = static_cast<int>(ps.list.size());
      ps.list.push_back({i, m, hom ? m - g.degree : g.degree + m, ps.dim, &s});
      ps.dim += s.dim();
    }
  }
  return ps;
}

template <class K> using Add = std::function<void(int, int, const Vec<K>&)>;

/** The module on the pieces with the given differential and action images. */
template <class K>
DgModule<K> assemble_module(DgaPtr<K> alg, const Pieces<K>& ps,
                            const std::function<void(const typename Pieces<K>::Piece&, const Vec<K>&, const Add<K>&)>& d,
                            const std::function<void(const typename Pieces<K>::Piece&, const Vec<K>&, int,
                                                     const Add<K>&)>& act) {
  const int na = alg->dim();
  std::vector<BasisElement> basis;
  std::vector<Combination<K>> action, diff;
  auto collect = [&](Vec<K>& out) -> Add<K> {
    return [&ps, &out](int gen, int local, const Vec<K>& w) {
      if (is_zero_matrix<K>(w)) return;
      auto it = ps.lookup.find({gen, local});
      if (it == ps.lookup.end()) throw Error(Errc::invariant_violation, "image leaves the generator summands");
      const auto& q = ps.list[it->second];
      out.segment(q.offset, q.space->dim()) += q.space->coordinates(w);
    };
  };
  for (auto& p : ps.list)
    for (Index c = 0; c < p.space->dim(); ++c) {
      Vec<K> v = p.space->vector(c);
      basis.push_back({"g" + std::to_string(p.gen) + "." + std::to_string(p.local) + "." + std::to_string(c), p.degree});
      Vec<K> dv = Vec<K>::Constant(ps.dim, alg->lit(0));
      d(p, v, collect(dv));
      diff.push_back(to_combination<K>(dv));
      for (int j = 0; j < na; ++j) {
        Vec<K> av = Vec<K>::Constant(ps.dim, alg->lit(0));
        act(p, v, j, collect(av));
        action.push_back(to_combination<K>(av));
      }
    }
  return DgModule<K>(std::move(alg), std::move(basis), std::move(action), std::move(diff));
}

template <class K> void require_complete(const TruncatedResolution<K>& r, const char* what) {
  if (!r.complete) throw Error(Errc::precondition_failed, std::string(what) + " needs a terminating resolution");
}

}  // namespace

template <class K> DgModule<K> serre_functor(const TruncatedResolution<K>& r) {
  require_complete(r, "serre_functor");
  const auto& f = r.total;
  const auto& a = f.algebra();
  auto ap = f.types().algebra;
  auto dual = dual_algebra_module(ap);
  std::vector<std::map<int, Subspace<K>>> images;
  for (auto& t : f.types().types) images.push_back(graded_image<K>(basis_degrees(dual.basis()), dual_algebra_left_action(a, t.idempotent)));
  auto ps = make_pieces(f, images, false);
  return assemble_module<K>(
      ap, ps,
      [&](const auto& p, const Vec<K>& v, const Add<K>& add) {
        const auto& g = f.generator(p.gen);
        for (auto& [j, c] : g.diff)
          for (auto& [h, ch] : components(a, c)) add(j, p.local + h, Vec<K>(dual_algebra_left_action(a, ch) * v));
        add(p.gen, p.local + 1, a.lit(parity_sign(g.degree)) * dual.d(v));
      },
      [&](const auto& p, const Vec<K>& v, int j, const Add<K>& add) {
        add(p.gen, p.local + a.degree(j), dual.act_basis(v, j));
      });
}

template <class K> DgModule<K> resolution_dual(const TruncatedResolution<K>& r, DgaPtr<K> opposite) {
  require_complete(r, "resolution_dual");
  const auto& f = r.total;
  const auto& a = f.algebra();
  if (!opposite) opposite = share(opposite_dga(a));
  auto reg = regular_module(f.types().algebra);
  std::vector<std::map<int, Subspace<K>>> images;
  for (auto& t : f.types().types) images.push_back(graded_image<K>(basis_degrees(reg.basis()), reg.action_matrix(t.idempotent)));
  auto ps = make_pieces(f, images, true);
  auto used = users(f);
  return assemble_module<K>(
      opposite, ps,
      [&](const auto& p, const Vec<K>& v, const Add<K>& add) {
        add(p.gen, p.local + 1, reg.d(v));
        K s = -a.lit(parity_sign(p.degree));
        for (auto& [k, c] : used[p.gen])
          for (auto& [h, ch] : components(a, c)) add(k, p.local + h, s * reg.act(v, ch));
      },
      [&](const auto& p, const Vec<K>& v, int j, const Add<K>& add) {
        // f .op a = (-1)^{|a||f|} a f
        add(p.gen, p.local + a.degree(j),
            a.lit(koszul_sign(a.degree(j), p.degree)) * a.multiply(a.basis_vector(j), v));
      });
}

template <class K> Verdict serre_duality_check(DgaPtr<K> a, const DgModule<K>& m, const DgModule<K>& n,
                                               DegreeWindow w, int max_stages) {
  auto g = gorenstein_check(a, w, max_stages);
  if (g.status != Status::certified_yes)
    throw Error(Errc::precondition_failed, "serre_duality_check needs a Gorenstein-certified algebra");
  auto rm = resolve_minimal(m, max_stages);
  auto rn = resolve_minimal(n, max_stages);
  require_complete(rm, "serre_duality_check (first module)");
  require_complete(rn, "serre_duality_check (second module)");
  auto lhs = hom_table(rm, n, w);
  auto rhs = hom_table(rn, serre_functor(rm), DegreeWindow{-w.hi, -w.lo});
  Verdict v;
  v.window = w;
  v.status = Status::certified_yes;
  for (int i = w.lo; i <= w.hi; ++i)
    if (lhs.dim(i) != rhs.dim(-i)) {
      v.status = Status::certified_no;
      v.reason = "dimensions differ in degree " + std::to_string(i);
    }
  if (v.reason.empty()) v.reason = "RHom(M, N) and RHom(N, M (x) A^dual) are dual on the window";
  v.tables = {{"RHom(M, N)", lhs}, {"RHom(N, M (x)^L A^dual)", rhs}};
  return v;
}

template <class K>
std::optional<std::vector<Vec<K>>> yoneda_product(const TruncatedResolution<K>& r, const std::vector<Vec<K>>& psi,
                                                  const std::vector<Vec<K>>& phi, int phi_degree) {
  const auto& f = r.total;
  const auto& a = f.algebra();
  const auto& top = r.target;
  auto fm = f.materialize();
  Mat<K> dm = fm.differential_matrix();
  Mat<K> eps = r.augmentation_matrix();
  auto off = f.offsets();
  const int q = phi_degree;
  // lift phi to phi~ : F -> F of degree q with eps phi~ = phi and d phi~ = (-1)^q phi~ d
  std::vector<Vec<K>> lift(f.size());
  for (int i = 0; i < f.size(); ++i) {
    const auto& g = f.generator(i);
    auto idx = fm.indices_in_degree(g.degree + q);
    Vec<K> rhs_d = fm.zero_vector();
    for (auto& [j, c] : g.diff) rhs_d += fm.act(lift[j], c);
    rhs_d *= a.lit(parity_sign(q));
    Mat<K> re = fm.action_matrix(f.types().types[g.type].idempotent) - Mat<K>::Identity(fm.dim(), fm.dim());
    const Index rows = 2 * fm.dim() + top.dim();
    Mat<K> sys = Mat<K>::Constant(rows, static_cast<Index>(idx.size()), a.lit(0));
    Vec<K> rhs = Vec<K>::Constant(rows, a.lit(0));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      sys.col(static_cast<Index>(k)) << dm.col(idx[k]), eps.col(idx[k]), re.col(idx[k]);
    }
    rhs << rhs_d, phi[i], Vec<K>::Constant(fm.dim(), a.lit(0));
    Vec<K> y = fm.zero_vector();
    if (!idx.empty()) {
      auto sol = solve<K>(sys, Mat<K>(rhs));
      if (!sol) return std::nullopt;
      for (std::size_t k = 0; k < idx.size(); ++k) y(idx[k]) = (*sol)(static_cast<Index>(k), 0);
    } else if (!is_zero_matrix<K>(rhs)) {
      return std::nullopt;
    }
    lift[i] = std::move(y);
  }
  std::vector<Vec<K>> out;
  for (int i = 0; i < f.size(); ++i) {
    Vec<K> v = top.zero_vector();
    for (auto& [j, c] : f.decompose(lift[i])) v += top.act(psi[j], c);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

template <class K> bool same(const std::vector<Vec<K>>& x, const std::vector<Vec<K>>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

template <class K> FdDga<K> endomorphism_dga(const DgModule<K>& m) {
  auto hom = strict_hom(m, m);
  std::vector<Mat<K>> mats;
  std::vector<int> degs;
  std::vector<std::string> names;
  for (auto& [n, maps] : hom.maps)
    for (std::size_t k = 0; k < maps.size(); ++k) {
      mats.push_back(maps[k]);
      degs.push_back(n);
      names.push_back("f" + std::to_string(n) + "_" + std::to_string(k));
    }
  Mat<K> dm = m.differential_matrix();
  auto e = algebra_from_matrices<K>(m.algebra().field(), mats, degs, names, [&](const Mat<K>& f, int n) {
    return Mat<K>(dm * f - m.lit(parity_sign(n)) * f * dm);
  }, "id");
  if (auto bad = validate_dga(e); !bad.empty())
    throw Error(Errc::invariant_violation, "endomorphism algebra fails " + bad.front().axiom);
  return e;
}

}  // namespace

template <class K> KoszulDual<K> koszul_dual(DgaPtr<K> a, KoszulOptions opts) {
  require_separable_top(*a);
  KoszulDual<K> out;
  auto top = semisimple_top(a);
  out.resolution = resolve_minimal(top, opts.max_stages);
  const auto& r = out.resolution;
  const auto& f = r.total;
  out.ext = hom_table(r, top, opts.window);
  out.certified_per_stage.assign(r.stages, 0);
  const bool flat = has_zero_differential(*a) && r.minimal;
  if (flat) {
    // the Hom differential vanishes: each generator carries dim (A/J) e_t classes
    for (auto& g : f.generators()) {
      if (!r.final_stage[g.stage]) continue;
      Mat<K> proj = top.action_matrix(f.types().types[g.type].idempotent);
      for (auto& [m, sp] : graded_image<K>(basis_degrees(top.basis()), proj)) {
        out.certified[m - g.degree] += static_cast<int>(sp.dim());
        out.certified_per_stage[g.stage] += static_cast<int>(sp.dim());
      }
    }
  } else {
    for (auto& [n, e] : out.ext.entries)
      if (e.certified && e.dim) out.certified[n] = static_cast<int>(e.dim);
    out.note = "nonzero differential: certified classes read off the window";
  }

  // powers of the stage one class when every stage is a single generator with a one dimensional top
  bool single = flat && top.dim() == 1 && r.stages >= 2;
  std::vector<int> stage_gen(r.stages, -1);
  for (int i = 0; i < f.size() && single; ++i) {
    int s = f.generator(i).stage;
    if (stage_gen[s] != -1) single = false;
    stage_gen[s] = i;
  }
  for (int s = 0; s < r.stages && single; ++s) single = stage_gen[s] != -1 && r.final_stage[s];
  if (single) {
    auto cls = [&](int s) {
      std::vector<Vec<K>> v(f.size(), top.zero_vector());
      v[stage_gen[s]] = top.basis_vector(0);
      return v;
    };
    auto deg = [&](int s) { return -f.generator(stage_gen[s]).degree; };
    std::vector<std::vector<Vec<K>>> power{cls(0), cls(1)};
    out.products_computed = true;
    out.power_nonzero = {true, true};
    for (int n = 2; n < r.stages; ++n) {
      auto p = yoneda_product(r, power[1], power[n - 1], deg(n - 1));
      if (!p) {
        out.products_computed = false;
        break;
      }
      const auto& v = (*p)[stage_gen[n]];
      bool only = !is_zero_matrix<K>(v);
      for (int i = 0; i < f.size(); ++i)
        if (i != stage_gen[n] && !is_zero_matrix<K>((*p)[i])) only = false;
      out.power_nonzero.push_back(only);
      power.push_back(*p);
    }
    out.power_law = out.products_computed;
    for (int i = 1; i < static_cast<int>(power.size()) && out.power_law; ++i)
      for (int j = 1; i + j < static_cast<int>(power.size()) && out.power_law; ++j) {
        auto p = yoneda_product(r, power[i], power[j], deg(j));
        out.power_law = p && same(*p, power[i + j]);
      }
  } else if (out.note.empty()) {
    out.note = "products are only tabulated for one generator per stage over a one dimensional top";
  }
  if (f.materialized_dim() <= opts.endomorphism_limit)
    out.endomorphisms = endomorphism_dga(f.materialize());
  else
    out.note += (out.note.empty() ? "" : "; ") + std::string("endomorphism algebra skipped (resolution too large)");
  return out;
}

namespace {

template <class K> using BarTerm = std::map<std::vector<int>, K>;

}  // namespace

template <class K> Complex<K> hochschild_complex(const FdDga<K>& a, int max_length) {
  Complex<K> c;
  if (a.is_zero_ring()) return c;
  const int u = a.unit();
  std::vector<int> bar;  // basis of A / k 1
  for (int i = 0; i < a.dim(); ++i)
    if (i != u) bar.push_back(i);
  auto degree = [&](const std::vector<int>& w) {
    int d = a.degree(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) d += a.degree(w[i]) - 1;
    return d;
  };
  std::map<int, std::vector<std::vector<int>>> words;
  std::map<std::vector<int>, Index> where;
  long total = 0;
  std::vector<std::vector<int>> layer;
  for (int x = 0; x < a.dim(); ++x) layer.push_back({x});
  for (int n = 0; n <= max_length; ++n) {
    total += static_cast<long>(layer.size());
    if (total > 200000) throw Error(Errc::too_large, "bar complex exceeds 200000 chains");
    for (auto& w : layer) {
      int d = degree(w);
      where[w] = static_cast<Index>(words[d].size());
      words[d].push_back(w);
    }
    if (n == max_length || bar.empty()) break;
    std::vector<std::vector<int>> next;
    for (auto& w : layer)
      for (int b : bar) {
        auto v = w;
        v.push_back(b);
        next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  auto push = [&](BarTerm<K>& out, std::vector<int> w, const K& x) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i] == u) return;
    auto it = out.find(w);
    if (it == out.end())
      out.emplace(std::move(w), x);
    else
      it->second += x;
  };
  auto boundary = [&](const std::vector<int>& w) {
    BarTerm<K> out;
    const int n = static_cast<int>(w.size()) - 1;
    std::vector<int> eps(n + 1);
    eps[0] = a.degree(w[0]);
    for (int i = 1; i <= n; ++i) eps[i] = eps[i - 1] + a.degree(w[i]) - 1;
    // internal differential
    for (auto& [x, cx] : a.differential(w[0])) {
      auto v = w;
      v[0] = x;
      push(out, v, cx);
    }
    for (int i = 1; i <= n; ++i)
      for (auto& [x, cx] : a.differential(w[i])) {
        auto v = w;
        v[i] = x;
        push(out, v, -a.lit(parity_sign(eps[i - 1])) * cx);
      }
    // bar differential
    for (int i = 0; i < n; ++i)
      for (auto& [x, cx] : a.product(w[i], w[i + 1])) {
        std::vector<int> v(w.begin(), w.begin() + i);
        v.push_back(x);
        v.insert(v.end(), w.begin() + i + 2, w.end());
        push(out, v, a.lit(parity_sign(eps[i])) * cx);
      }
    if (n >= 1) {
      const int an = a.degree(w[n]);
      K s = -a.lit(parity_sign(eps[n - 1]) * koszul_sign(an, eps[n - 1]));
      for (auto& [x, cx] : a.product(w[n], w[0])) {
        std::vector<int> v{x};
        v.insert(v.end(), w.begin() + 1, w.begin() + n);
        push(out, v, s * cx);
      }
    }
    return out;
  };
  for (auto& [d, ws] : words) c.dims[d] = static_cast<Index>(ws.size());
  for (auto& [d, ws] : words) {
    if (!c.dims.count(d + 1)) continue;
    Mat<K> m = Mat<K>::Constant(c.dim(d + 1), c.dim(d), a.lit(0));
    for (std::size_t k = 0; k < ws.size(); ++k)
      for (auto& [v, x] : boundary(ws[k])) {
        if (is_zero(x)) continue;
        auto it = where.find(v);
        if (it == where.end()) continue;  // longer than the truncation cannot occur: the bar differential shortens
        m(it->second, static_cast<Index>(k)) += x;
      }
    c.d[d] = std::move(m);
  }
  return c;
}

template <class K> CohomologyTable hochschild_homology(const FdDga<K>& a, int max_length, DegreeWindow w) {
  auto full = cohomology_of_complex(hochschild_complex(a, max_length));
  int lo_a = 0, hi_a = 0, lo_bar = unbounded_degree, hi_bar = -unbounded_degree;
  if (!a.is_zero_ring()) {
    lo_a = a.min_degree();
    hi_a = a.max_degree();
    for (int i = 0; i < a.dim(); ++i)
      if (i != a.unit()) {
        lo_bar = std::min(lo_bar, a.degree(i) - 1);
        hi_bar = std::max(hi_bar, a.degree(i) - 1);
      }
  }
  auto reachable = [&](int t) {
    if (a.is_zero_ring() || lo_bar > hi_bar) return false;
    const int span = 4 * (std::abs(t) + std::abs(lo_a) + std::abs(hi_a) + 2);
    for (int n = max_length + 1; n <= max_length + 1 + span; ++n)
      if (lo_a + n * lo_bar <= t && t <= hi_a + n * hi_bar) return true;
    return false;
  };
  CohomologyTable t;
  for (int n = w.lo; n <= w.hi; ++n) t.entries[n] = {full.dim(n), !reachable(n) && !reachable(n - 1)};
  return t;
}

template <class K> Verdict smoothness_check(DgaPtr<K> a, int max_stages) {
  auto env = share(enveloping(*a));
  return perfection_check(diagonal_bimodule(a, env), max_stages);
}

namespace {

template <class K> Vec<K> flatten(const Mat<K>& m) { return Eigen::Map<const Vec<K>>(m.data(), m.size()); }

template <class K> Mat<K> unflatten(const Vec<K>& v, Index rows, Index cols) {
  return Eigen::Map<const Mat<K>>(v.data(), rows, cols);
}

/** Hom_A(M, Q) as a right module over E = End(M) under composition. */
template <class K> std::pair<DgModule<K>, std::vector<Mat<K>>> hom_module(const DgModule<K>& m, const DgModule<K>& q,
                                                                         DgaPtr<K> e,
                                                                         const std::vector<Mat<K>>& e_maps) {
  auto hom = strict_hom(m, q);
  std::map<int, Subspace<K>> spaces;
  std::vector<BasisElement> basis;
  std::vector<Mat<K>> maps;
  std::map<int, Index> start;
  for (auto& [n, ms] : hom.maps) {
    Mat<K> rows(static_cast<Index>(ms.size()), q.dim() * m.dim());
    for (std::size_t k = 0; k < ms.size(); ++k) rows.row(static_cast<Index>(k)) = flatten(ms[k]).transpose();
    auto s = Subspace<K>::from_rows(rows);
    start[n] = static_cast<Index>(maps.size());
    for (Index k = 0; k < s.dim(); ++k) {
      maps.push_back(unflatten(s.vector(k), q.dim(), m.dim()));
      basis.push_back({"h" + std::to_string(n) + "_" + std::to_string(k), n});
    }
    spaces.emplace(n, std::move(s));
  }
  auto coords = [&](const Mat<K>& f, int n) {
    Vec<K> out = Vec<K>::Constant(static_cast<Index>(maps.size()), m.lit(0));
    if (is_zero_matrix<K>(f)) return out;
    auto it = spaces.find(n);
    if (it == spaces.end() || !it->second.contains(flatten(f)))
      throw Error(Errc::invariant_violation, "composite leaves the Hom space");
    out.segment(start[n], it->second.dim()) = it->second.coordinates(flatten(f));
    return out;
  };
  Mat<K> dm = m.differential_matrix(), dq = q.differential_matrix();
  std::vector<Combination<K>> action, diff;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const int n = basis[k].degree;
    diff.push_back(to_combination<K>(coords(dq * maps[k] - m.lit(parity_sign(n)) * maps[k] * dm, n + 1)));
    for (int b = 0; b < e->dim(); ++b) action.push_back(to_combination<K>(coords(maps[k] * e_maps[b], n + e->degree(b))));
  }
  return {DgModule<K>(std::move(e), std::move(basis), std::move(action), std::move(diff)), maps};
}

}  // namespace

template <class K> Auslander<K> auslander_dga(DgaPtr<K> a) {
  if (a->is_zero_ring()) throw Error(Errc::precondition_failed, "auslander_dga of the zero ring");
  Auslander<K> out;
  auto j = dg_ideals(*a).radical;
  out.nilpotency = std::max(1, nilpotency_index(*a, j));
  const int n = out.nilpotency;
  Mat<K> d = a->differential_matrix();
  for (int i = 1; i <= n; ++i) {
    auto ji = ideal_power(*a, j, i);
    out.ideals.push_back(intersect(ji, preimage(d, ji)));
  }
  std::vector<DgModule<K>> quotients;
  for (int i = 1; i < n; ++i) quotients.push_back(cyclic_quotient(a, out.ideals[i - 1]));
  quotients.push_back(regular_module(a));
  out.generator = quotients.front();
  for (std::size_t i = 1; i < quotients.size(); ++i) out.generator = direct_sum(out.generator, quotients[i]);

  const auto& m = out.generator;
  auto hom = strict_hom(m, m);
  std::vector<Mat<K>> mats;
  std::vector<int> degs;
  std::vector<std::string> names;
  for (auto& [deg, maps] : hom.maps)
    for (std::size_t k = 0; k < maps.size(); ++k) {
      mats.push_back(maps[k]);
      degs.push_back(deg);
      names.push_back("f" + std::to_string(deg) + "_" + std::to_string(k));
    }
  Mat<K> dm = m.differential_matrix();
  auto e = algebra_from_matrices<K>(
      a->field(), mats, degs, names,
      [&](const Mat<K>& f, int deg) { return Mat<K>(dm * f - m.lit(parity_sign(deg)) * f * dm); }, "id",
      &out.basis_maps);
  if (auto bad = validate_dga(e); !bad.empty())
    throw Error(Errc::invariant_violation, "Auslander algebra fails " + bad.front().axiom);
  out.algebra = share(std::move(e));
  for (auto& q : quotients) {
    auto [p, maps] = hom_module(m, q, out.algebra, out.basis_maps);
    out.projectives.push_back(std::move(p));
    out.projective_maps.push_back(std::move(maps));
  }
  return out;
}

template <class K> DgModule<K> keylemma_witness(DgaPtr<K> a, DgaPtr<K> opposite) {
  if (!opposite) opposite = share(opposite_dga(*a));
  auto aus = auslander_dga(a);
  const auto& p = aus.projectives.back();
  const auto& maps = aus.projective_maps.back();
  auto jm = dg_ideals(*aus.algebra).minus;
  auto [s, proj] = quotient_module(p, module_times(p, jm));
  // lift each basis vector of S to P, act by L_a and project back
  Mat<K> lifts = *solve<K>(proj, Mat<K>::Identity(s.dim(), s.dim()));
  const int na = a->dim();
  std::vector<Combination<K>> action(static_cast<std::size_t>(s.dim()) * na), diff;
  // P_N coordinates of a map, degree by degree
  std::map<int, std::vector<int>> by_degree;
  for (int k = 0; k < p.dim(); ++k) by_degree[p.degree(k)].push_back(k);
  auto coords = [&](const Mat<K>& f, int n) {
    Vec<K> v = Vec<K>::Constant(p.dim(), a->lit(0));
    if (is_zero_matrix<K>(f) || !by_degree.count(n)) return v;
    const auto& idx = by_degree[n];
    Mat<K> cols(f.size(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) cols.col(static_cast<Index>(k)) = flatten(maps[idx[k]]);
    auto sol = solve<K>(cols, Mat<K>(flatten(f)));
    if (!sol) throw Error(Errc::invariant_violation, "L_a f leaves Hom(M, A)");
    for (std::size_t k = 0; k < idx.size(); ++k) v(idx[k]) = (*sol)(static_cast<Index>(k), 0);
    return v;
  };
  for (int k = 0; k < s.dim(); ++k) {
    Vec<K> lift = lifts.col(k);
    for (int j = 0; j < na; ++j) {
      Vec<K> img = Vec<K>::Constant(p.dim(), a->lit(0));
      for (int b = 0; b < p.dim(); ++b) {
        if (is_zero(lift(b))) continue;
        // f .op a = (-1)^{|a||f|} L_a f
        Mat<K> la = a->left_multiplication(a->basis_vector(j)) * maps[b];
        img += lift(b) * a->lit(koszul_sign(a->degree(j), p.degree(b))) * coords(la, p.degree(b) + a->degree(j));
      }
      action[static_cast<std::size_t>(k) * na + j] = to_combination<K>(Vec<K>(proj * img));
    }
    diff.push_back(s.differential(k));
  }
  DgModule<K> out(std::move(opposite), s.basis(), std::move(action), std::move(diff));
  if (auto bad = validate_module(out); !bad.empty())
    throw Error(Errc::invariant_violation, "key lemma module fails " + bad.front().axiom);
  return out;
}

#define DGFORGE_INSTANTIATE(K)                                                                                     \
  template Complex<K> tensor_complex<K>(const Semifree<K>&, const DgModule<K>&, DegreeWindow);                   \
  template Complex<K> hom_complex<K>(const Semifree<K>&, const DgModule<K>&, DegreeWindow);                      \
  template CohomologyTable tensor_table<K>(const TruncatedResolution<K>&, const DgModule<K>&, DegreeWindow);     \
  template CohomologyTable hom_table<K>(const TruncatedResolution<K>&, const DgModule<K>&, DegreeWindow);        \
  template CohomologyTable derived_tensor<K>(const DgModule<K>&, const DgModule<K>&, DegreeWindow, int);         \
  template CohomologyTable derived_hom<K>(const DgModule<K>&, const DgModule<K>&, DegreeWindow, int);            \
  template DgModule<K> semisimple_top<K>(DgaPtr<K>);                                                             \
  template void require_separable_top<K>(const FdDga<K>&);                                                       \
  template Verdict ext_tor_duality_check<K>(const DgModule<K>&, const DgModule<K>&, DegreeWindow, int);          \
  template Verdict nakayama_witness<K>(const DgModule<K>&, int, DegreeWindow);                                   \
  template Verdict perfection_check<K>(const DgModule<K>&, int);                                                 \
  template Verdict contradual_perfection_check<K>(const DgModule<K>&, DegreeWindow, int);                        \
  template Verdict gorenstein_check<K>(DgaPtr<K>, DegreeWindow, int);                                            \
  template DgModule<K> dual_algebra_module<K>(DgaPtr<K>);                                                        \
  template Mat<K> dual_algebra_left_action<K>(const FdDga<K>&, const Vec<K>&);                                   \
  template DgModule<K> dual_algebra_left_module<K>(DgaPtr<K>, DgaPtr<K>);                                        \
  template DgModule<K> serre_functor<K>(const TruncatedResolution<K>&);                                          \
  template Verdict serre_duality_check<K>(DgaPtr<K>, const DgModule<K>&, const DgModule<K>&, DegreeWindow, int); \
  template DgModule<K> resolution_dual<K>(const TruncatedResolution<K>&, DgaPtr<K>);                             \
  template KoszulDual<K> koszul_dual<K>(DgaPtr<K>, KoszulOptions);                                               \
  template std::optional<std::vector<Vec<K>>> yoneda_product<K>(const TruncatedResolution<K>&,                    \
                                                                const std::vector<Vec<K>>&,                      \
                                                                const std::vector<Vec<K>>&, int);                \
  template Complex<K> hochschild_complex<K>(const FdDga<K>&, int);                                               \
  template CohomologyTable hochschild_homology<K>(const FdDga<K>&, int, DegreeWindow);                           \
  template Verdict smoothness_check<K>(DgaPtr<K>, int);                                                          \
  template Auslander<K> auslander_dga<K>(DgaPtr<K>);                                                             \
  template DgModule<K> keylemma_witness<K>(DgaPtr<K>, DgaPtr<K>);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
