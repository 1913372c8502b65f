#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dgforge/dga.hpp"

namespace dgforge {

/**
 * Strictly finite dimensional right dg module. Structure constants are
 * stored sparsely: action(m, a) is e_m . e_a, differential(m) is d e_m.
 * The Leibniz rule reads d(m a) = d(m) a + (-1)^{|m|} m d(a).
 */
template <class K> class DgModule {
 public:
  DgModule() = default;
  DgModule(DgaPtr<K> algebra, std::vector<BasisElement> basis, std::vector<Combination<K>> action,
           std::vector<Combination<K>> diff);

  static DgModule zero(DgaPtr<K> algebra) { return DgModule(std::move(algebra), {}, {}, {}); }

  const FdDga<K>& algebra() const { return *algebra_; }
  const DgaPtr<K>& algebra_ptr() const { return algebra_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  const std::string& name(int i) const { return basis_[i].name; }

  const Combination<K>& action(int m, int a) const { return action_[static_cast<std::size_t>(m) * algebra_->dim() + a]; }
  const Combination<K>& differential(int m) const { return diff_[m]; }

  K lit(long v) const { return scalar<K>(algebra_->field(), v); }
  Vec<K> zero_vector() const { return Vec<K>::Constant(dim(), lit(0)); }
  Vec<K> basis_vector(int i) const {
    Vec<K> v = zero_vector();
    v(i) = lit(1);
    return v;
  }

  Vec<K> act(const Vec<K>& m, const Vec<K>& a) const;
  Vec<K> act_basis(const Vec<K>& m, int a) const;
  Vec<K> d(const Vec<K>& m) const;
  /** Matrix of m -> m a. */
  Mat<K> action_matrix(const Vec<K>& a) const;
  Mat<K> differential_matrix() const;

  std::vector<int> degrees() const;
  std::vector<int> indices_in_degree(int n) const;
  std::optional<int> degree_of(const Vec<K>& v) const;

  Complex<K> underlying_complex() const;
  CohomologyTable cohomology() const { return cohomology_of_complex(underlying_complex()); }

  /** Same tables over algebras with equal structure constants. */
  friend bool operator==(const DgModule& a, const DgModule& b) {
    return (a.algebra_ == b.algebra_ || *a.algebra_ == *b.algebra_) && a.basis_ == b.basis_ &&
           a.action_ == b.action_ && a.diff_ == b.diff_;
  }

 private:
  DgaPtr<K> algebra_;
  std::vector<BasisElement> basis_;
  std::vector<Combination<K>> action_;
  std::vector<Combination<K>> diff_;
};

/** A homogeneous linear map; matrix is target.dim() x source.dim(). */
template <class K> struct ModuleMap {
  DgModule<K> source;
  DgModule<K> target;
  int degree = 0;
  Mat<K> matrix;
};

template <class K> std::vector<Violation> validate_module(const DgModule<K>& m);
/** Checks d f = (-1)^{deg} f d and A-linearity f(m a) = f(m) a. */
template <class K> bool is_chain_map(const ModuleMap<K>& f);

/** Sigma^n M: degrees lowered by n, differential times (-1)^n, same action. */
template <class K> DgModule<K> shift(const DgModule<K>& m, int n);
/** Cone of a degree zero chain map f: M -> N, on Sigma M + N with d(m, n) = (-d m, f m + d n). */
template <class K> DgModule<K> cone(const ModuleMap<K>& f);
template <class K> DgModule<K> direct_sum(const DgModule<K>& a, const DgModule<K>& b);
/** Replace the algebra by one with identical tables. */
template <class K> DgModule<K> rebind(const DgModule<K>& m, DgaPtr<K> algebra);

/**
 * k-linear dual as a right module over the opposite algebra:
 * (phi . a)(m) = (-1)^{|a||m|} phi(m a) and d phi = -(-1)^{|phi|} phi d.
 */
template <class K> DgModule<K> k_dual(const DgModule<K>& m, DgaPtr<K> opposite = nullptr);

/** The right regular module A_A. */
template <class K> DgModule<K> regular_module(DgaPtr<K> a);
/** Sum of shift(A, -g) over the given generator degrees. */
template <class K> DgModule<K> free_module(DgaPtr<K> a, const std::vector<int>& degrees);

/** Sub dg module spanned by a closed graded subspace, with its inclusion matrix. */
template <class K> std::pair<DgModule<K>, Mat<K>> submodule(const DgModule<K>& m, const Subspace<K>& s);
/** Quotient by a closed graded subspace, with the projection matrix. */
template <class K> std::pair<DgModule<K>, Mat<K>> quotient_module(const DgModule<K>& m, const Subspace<K>& s);
/** Right module A / I for a d-closed two-sided ideal I. */
template <class K> DgModule<K> cyclic_quotient(DgaPtr<K> a, const Subspace<K>& ideal);
template <class K> bool is_submodule(const DgModule<K>& m, const Subspace<K>& s);
/** span{ m j : m in M, j in I }. */
template <class K> Subspace<K> module_times(const DgModule<K>& m, const Subspace<K>& ideal);
/** span{ v a : v in S, a in A }. */
template <class K> Subspace<K> generated_submodule(const DgModule<K>& m, const Subspace<K>& s);

/** Strict Hom complex Hom_A(M, N) with d f = d_N f - (-1)^{|f|} f d_M. */
template <class K> struct HomComplex {
  std::map<int, std::vector<Mat<K>>> maps;  // basis of Hom^n; maps are N.dim() x M.dim()
  Complex<K> complex;
  /** Map with the given coordinates in degree n. */
  Mat<K> map(int n, const Vec<K>& coords) const;
};

template <class K> HomComplex<K> strict_hom(const DgModule<K>& m, const DgModule<K>& n);
/** Basis of degree zero chain maps M -> N (cocycles of the strict Hom complex). */
template <class K> std::vector<Mat<K>> chain_maps(const DgModule<K>& m, const DgModule<K>& n);

/**
 * Strict tensor M (x)_A N where N is a right module over A^op, read as a left
 * A-module by a n = (-1)^{|a||n|} n .op a.
 */
template <class K> Complex<K> strict_tensor(const DgModule<K>& m, const DgModule<K>& n);

/**
 * Regard M as a module over A^op. Going to a left A^op-module and back via
 * the identity A = A^op costs the sign (-1)^{|m||a|} twice, so the action
 * table is unchanged. Only defined when A is graded commutative; throws
 * precondition_failed otherwise. Applying it twice is the identity.
 */
template <class K> DgModule<K> side_swap(const DgModule<K>& m, DgaPtr<K> opposite = nullptr);

/** Invertible degree zero chain map M -> N found among random cocycles, if any. */
template <class K> std::optional<Mat<K>> find_isomorphism(const DgModule<K>& m, const DgModule<K>& n,
                                                          std::uint64_t seed = 0, int tries = 6);

/**
 * Deterministic pseudo-random module: iterated cones of shifts of A and A/J_-
 * along random chain maps, budget pieces in all (budget 1 is a single shift).
 */
template <class K> DgModule<K> random_module(DgaPtr<K> a, std::uint64_t seed, int budget = 3);

}  // namespace dgforge
