#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgforge/complex.hpp"

namespace dgforge {

struct BasisElement {
  std::string name;
  int degree = 0;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/** Sparse linear combination of basis indices, sorted by index, no zero coefficients. */
template <class K> using Combination = std::vector<std::pair<int, K>>;

template <class K> Combination<K> to_combination(const Vec<K>& v) {
  Combination<K> c;
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) c.emplace_back(static_cast<int>(i), v(i));
  return c;
}

template <class K> void add_to(Vec<K>& v, const Combination<K>& c, const K& f) {
  for (auto& [i, x] : c) v(i) += f * x;
}

/**
 * Finite dimensional cohomologically graded dg algebra given by structure
 * constants. The unit is one of the basis elements; the zero ring has an
 * empty basis and unit -1.
 */
template <class K> class FdDga {
 public:
  FdDga() = default;
  FdDga(FieldSpec field, std::vector<BasisElement> basis, int unit,
        std::vector<Combination<K>> mul, std::vector<Combination<K>> diff);

  static FdDga zero_ring(FieldSpec field) { return FdDga(field, {}, -1, {}, {}); }

  const FieldSpec& field() const { return field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool is_zero_ring() const { return basis_.empty(); }
  int unit() const { return unit_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  const std::string& name(int i) const { return basis_[i].name; }
  std::optional<int> index_of(std::string_view name) const;

  const Combination<K>& product(int i, int j) const { return mul_[i * dim() + j]; }
  const Combination<K>& differential(int i) const { return diff_[i]; }

  K lit(long v) const { return scalar<K>(field_, v); }
  Vec<K> zero() const { return Vec<K>::Constant(dim(), lit(0)); }
  Vec<K> basis_vector(int i) const {
    Vec<K> v = zero();
    v(i) = lit(1);
    return v;
  }
  Vec<K> unit_vector() const { return is_zero_ring() ? zero() : basis_vector(unit_); }

  Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const;
  Vec<K> d(const Vec<K>& x) const;
  /** Matrix of y -> x y. */
  Mat<K> left_multiplication(const Vec<K>& x) const;
  /** Matrix of y -> y x. */
  Mat<K> right_multiplication(const Vec<K>& x) const;
  Mat<K> differential_matrix() const;

  std::vector<int> degrees() const;
  std::vector<int> indices_in_degree(int n) const;
  int min_degree() const;
  int max_degree() const;
  /** Degree of a nonzero homogeneous vector, nullopt otherwise. */
  std::optional<int> degree_of(const Vec<K>& v) const;

  Complex<K> underlying_complex() const;
  CohomologyTable cohomology() const;

  friend bool operator==(const FdDga& a, const FdDga& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_ && a.unit_ == b.unit_ && a.mul_ == b.mul_ &&
           a.diff_ == b.diff_;
  }

 private:
  FieldSpec field_;
  std::vector<BasisElement> basis_;
  int unit_ = -1;
  std::vector<Combination<K>> mul_;
  std::vector<Combination<K>> diff_;
};

template <class K> using DgaPtr = std::shared_ptr<const FdDga<K>>;

template <class K> DgaPtr<K> share(FdDga<K> a) { return std::make_shared<const FdDga<K>>(std::move(a)); }

struct Violation {
  std::string axiom;
  std::vector<int> witness;  // basis indices
  std::string detail;
};

/** Every violated axiom with a witness; empty means A is a valid dga. */
template <class K> std::vector<Violation> validate_dga(const FdDga<K>& a);

/** Same basis, product a .op b = (-1)^{|a||b|} b a, same differential. */
template <class K> FdDga<K> opposite_dga(const FdDga<K>& a);

/**
 * Graded tensor product on pairs (i, j) indexed i * dim B + j, with
 * (a x b)(a' x b') = (-1)^{|b||a'|} aa' x bb' and
 * d(a x b) = da x b + (-1)^{|a|} a x db.
 */
template <class K> FdDga<K> tensor_dga(const FdDga<K>& a, const FdDga<K>& b);

/** A^op tensor A. */
template <class K> FdDga<K> enveloping(const FdDga<K>& a);

/** d-closed two-sided graded ideal, stored as a subspace of A. */
template <class K> struct DgIdeal {
  Subspace<K> space;
};

template <class K> struct DgaMorphism {
  Mat<K> matrix;  // columns are images of the source basis
};

enum class QuotientDifferential { keep, drop };

/**
 * Quotient by a graded two-sided ideal. The quotient basis consists of the
 * non-pivot basis elements, except that the image of 1 replaces one of them
 * when it is not already a basis element. With drop, the ideal need not be
 * d-closed and the quotient gets zero differential.
 */
template <class K> std::pair<FdDga<K>, DgaMorphism<K>> quotient_dga(
    const FdDga<K>& a, const Subspace<K>& ideal, QuotientDifferential mode = QuotientDifferential::keep);

template <class K> bool is_two_sided_ideal(const FdDga<K>& a, const Subspace<K>& s);
template <class K> bool is_d_closed(const FdDga<K>& a, const Subspace<K>& s);
template <class K> bool is_graded(const FdDga<K>& a, const Subspace<K>& s);

/** Subspace spanned by all products x y with x in s, y in t. */
template <class K> Subspace<K> product_space(const FdDga<K>& a, const Subspace<K>& s, const Subspace<K>& t);

/** Complex of a d-closed graded subspace with the restricted differential. */
template <class K> Complex<K> subcomplex(const FdDga<K>& a, const Subspace<K>& s);

/**
 * Algebra spanned by square matrices closed under composition, e.g. an
 * endomorphism algebra. The identity must lie in the span and becomes basis
 * element 0. Matrices must be homogeneous of the given degrees; the
 * differential, if given, maps a matrix to its derivative. chosen_out receives
 * the matrix of each basis element.
 */
template <class K> FdDga<K> algebra_from_matrices(FieldSpec field, const std::vector<Mat<K>>& mats,
                                                  const std::vector<int>& degrees,
                                                  const std::vector<std::string>& names,
                                                  const std::function<Mat<K>(const Mat<K>&, int)>& diff = {},
                                                  const std::string& unit_name = "1",
                                                  std::vector<Mat<K>>* chosen_out = nullptr);

/** The built in example algebras by name. */
template <class K> FdDga<K> builtin_example(std::string_view name, FieldSpec field = FieldSpec::rational());
const std::vector<std::string>& builtin_names();

/** k^n with basis 1, e1, ..., e(n-1) (the last idempotent is 1 minus the others). */
template <class K> FdDga<K> split_semisimple(int n, FieldSpec field = FieldSpec::rational());
/** n x n matrices graded by |E_ij| = degrees[i] - degrees[j]. */
template <class K> FdDga<K> matrix_algebra(int n, const std::vector<int>& degrees = {},
                                           FieldSpec field = FieldSpec::rational());

}  // namespace dgforge
