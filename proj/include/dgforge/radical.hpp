#pragma once

#include <optional>
#include <vector>

#include "dgforge/module.hpp"

namespace dgforge {

/**
 * Jacobson radical of the underlying graded algebra, as the kernel of the
 * trace form (x, y) -> tr(L_{xy}). Needs characteristic 0 or p > dim A.
 */
template <class K> Subspace<K> underlying_radical(const FdDga<K>& a);

/** J_+ = J + d(J) and J_- = {r in J : d r in J}, both d-closed two-sided ideals. */
template <class K> struct DgIdeals {
  Subspace<K> radical;
  Subspace<K> plus;
  Subspace<K> minus;
};

template <class K> DgIdeals<K> dg_ideals(const FdDga<K>& a);

/** I^n as a subspace (I^0 = A). */
template <class K> Subspace<K> ideal_power(const FdDga<K>& a, const Subspace<K>& ideal, int n);

/** Smallest n with I^n = 0, or -1 if I is not nilpotent. */
template <class K> int nilpotency_index(const FdDga<K>& a, const Subspace<K>& ideal);

/** Degree zero element of A (x) A (index i * dim + j) with mu(p) = 1 and a p = p a. */
template <class K> struct SeparabilityIdempotent {
  Vec<K> coeffs;
};

template <class K> bool is_separability_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& p);
template <class K> std::optional<SeparabilityIdempotent<K>> is_separable(const FdDga<K>& a);
/** Idempotent for A^op: sum (-1)^{|a||b|} b (x) a. */
template <class K> SeparabilityIdempotent<K> opposite_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& p);
/**
 * Idempotent for the graded tensor product: sum (-1)^{|b||a'|} (a x b) (x) (a' x b')
 * over p_A = sum a (x) a' and p_B = sum b (x) b', after keeping only the degree zero parts.
 */
template <class K> SeparabilityIdempotent<K> tensor_idempotent(const FdDga<K>& a, const SeparabilityIdempotent<K>& pa,
                                                             const FdDga<K>& b, const SeparabilityIdempotent<K>& pb);

template <class K> struct FiltrationWitness {
  std::vector<Subspace<K>> chain;  // decreasing, first is everything, last is zero
  std::vector<DgModule<K>> factors;
};

/** M > M J_- > M J_-^2 > ... > 0 with factors killed by J_-. */
template <class K> FiltrationWitness<K> radical_filtration(const DgModule<K>& m);

/** A as a right module over A^op (x) A: m . (a (x) b) = (-1)^{|a||m|} a m b. */
template <class K> DgModule<K> diagonal_bimodule(DgaPtr<K> a, DgaPtr<K> env = nullptr);

/** A > J_- > J_-^2 > ... > 0 as A-bimodules, factors as modules over the enveloping algebra. */
template <class K> FiltrationWitness<K> bimodule_filtration(const FdDga<K>& a);

/**
 * Complete set of orthogonal idempotents of A that are degree zero cycles
 * and primitive modulo J as far as rational eigenvalues can split them.
 * split is false when the search fell back to {1}.
 */
template <class K> struct IdempotentSet {
  std::vector<Vec<K>> idempotents;
  bool split = true;
};

template <class K> IdempotentSet<K> primitive_idempotents(const FdDga<K>& a);

/** e A / e J_- for each idempotent of primitive_idempotents. */
template <class K> std::vector<DgModule<K>> simple_modules(DgaPtr<K> a);

}  // namespace dgforge
