#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "dgforge/error.hpp"
#include "dgforge/scalar.hpp"

namespace dgforge {

using Index = Eigen::Index;

template <class K> using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K> using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K> struct Echelon {
  Mat<K> form;
  std::vector<Index> pivots;  // pivot column of each nonzero row, increasing
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/**
 * Reduced row echelon form. Pivots are chosen as the first column with a
 * nonzero entry and, within it, the topmost available row, so the result
 * depends only on the input.
 */
template <class K> Echelon<K> rref(Mat<K> m);

template <class K> Index rank(const Mat<K>& m);

/**
 * Solve a x = b for every column of b. Free variables are set to zero.
 * Returns nullopt if some column is inconsistent.
 */
template <class K> std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b);

/** Basis of ker a, one vector per column, in the order of the free columns. */
template <class K> Mat<K> null_space(const Mat<K>& a);

/** Inverse of a square matrix; throws invariant_violation if singular. */
template <class K> Mat<K> inverse(const Mat<K>& a);

template <class K> bool is_zero_matrix(const Mat<K>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, j))) return false;
  return true;
}

/**
 * A subspace of K^n stored by the reduced row echelon form of a spanning set.
 * Two subspaces are equal exactly when their stored bases are.
 */
template <class K> class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace from_rows(const Mat<K>& rows);
  static Subspace from_columns(const Mat<K>& cols) { return from_rows(cols.transpose()); }
  static Subspace whole(Index n) { return from_rows(Mat<K>::Identity(n, n)); }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool empty() const { return dim() == 0; }

  /** Rows form the reduced echelon basis. */
  const Mat<K>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  Vec<K> vector(Index i) const { return basis_.row(i).transpose(); }

  /** v minus its component along the basis; zero at every pivot column. */
  Vec<K> reduce(const Vec<K>& v) const;
  bool contains(const Vec<K>& v) const;
  bool contains(const Subspace& other) const;
  /** Coordinates of a vector known to lie in the subspace. */
  Vec<K> coordinates(const Vec<K>& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  Index ambient_ = 0;
  Mat<K> basis_;
  std::vector<Index> pivots_;
};

template <class K> Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b);
template <class K> Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b);
/** {v : map * v in target}. */
template <class K> Subspace<K> preimage(const Mat<K>& map, const Subspace<K>& target);
/** Span of the standard basis vectors at the non-pivot columns. */
template <class K> Subspace<K> complement(const Subspace<K>& a);
/** Image of a subspace under a linear map. */
template <class K> Subspace<K> image(const Mat<K>& map, const Subspace<K>& source);

}  // namespace dgforge
