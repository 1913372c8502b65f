#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "dgforge/radical.hpp"

namespace dgforge {

/** The summands e_t A used as building blocks, one per primitive idempotent. */
template <class K> struct ProjectiveType {
  Vec<K> idempotent;
  DgModule<K> module;  // e_t A as a submodule of A_A
  Subspace<K> space;   // e_t A inside A
};

template <class K> struct ProjectiveTypes {
  DgaPtr<K> algebra;
  std::vector<ProjectiveType<K>> types;
  bool split = true;

  int count() const { return static_cast<int>(types.size()); }
  /** Coordinates in types[t].module of an element of e_t A. */
  Vec<K> coordinates(int t, const Vec<K>& a) const { return types[t].space.coordinates(a); }
  /** The element of A with the given coordinates in types[t].module. */
  Vec<K> element(int t, const Vec<K>& coords) const { return types[t].space.basis().transpose() * coords; }
};

template <class K> std::shared_ptr<const ProjectiveTypes<K>> projective_types(DgaPtr<K> a);

/**
 * Generator of a semifree module: an element g with g = g e_t spanning a copy
 * of e_t A shifted to start in the given degree. d g = sum_j g_j c_j with
 * c_j in e_{t_j} A e_t and j earlier in the list.
 */
template <class K> struct Generator {
  int type = 0;
  int degree = 0;
  int stage = 0;
  std::vector<std::pair<int, Vec<K>>> diff;
};

template <class K> class Semifree {
 public:
  Semifree() = default;
  explicit Semifree(std::shared_ptr<const ProjectiveTypes<K>> types) : types_(std::move(types)) {}

  const ProjectiveTypes<K>& types() const { return *types_; }
  const std::shared_ptr<const ProjectiveTypes<K>>& types_ptr() const { return types_; }
  const FdDga<K>& algebra() const { return *types_->algebra; }
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator<K>& generator(int i) const { return gens_[i]; }
  std::vector<Generator<K>>& generators() { return gens_; }
  const std::vector<Generator<K>>& generators() const { return gens_; }
  int add(Generator<K> g) {
    gens_.push_back(std::move(g));
    return size() - 1;
  }

  /** Start of each generator's block in the materialized basis. */
  std::vector<int> offsets() const;
  int materialized_dim() const;
  /** Underlying strictly finite module; generator blocks in list order. */
  DgModule<K> materialize() const;
  /** g_i a as a materialized vector, a in e_t A. */
  Vec<K> element(int i, const Vec<K>& a) const;
  /** Inverse of element on sums: the A-coefficient of each generator. */
  std::vector<std::pair<int, Vec<K>>> decompose(const Vec<K>& v) const;

 private:
  std::shared_ptr<const ProjectiveTypes<K>> types_;
  std::vector<Generator<K>> gens_;
};

struct DegreeWindow {
  int lo = -8;
  int hi = 8;
  bool contains(int n) const { return lo <= n && n <= hi; }
};

constexpr int unbounded_degree = std::numeric_limits<int>::max() / 4;

/**
 * Truncated resolution of a module M. Stage s generators cover the s-th
 * syzygy; in the total module a stage s generator of internal degree n sits
 * in degree n - s. The cone of the augmentation is Sigma^S of the last
 * syzygy, so its cohomology is supported in cone_support.
 */
template <class K> struct TruncatedResolution {
  DgModule<K> target;
  Semifree<K> total;
  std::vector<Vec<K>> augmentation;  // per generator, in target coordinates
  int stages = 0;                    // number of stages built
  bool complete = false;             // the last syzygy is acyclic
  bool minimal = false;
  std::vector<bool> final_stage;     // stage counts that more stages cannot change
  int cone_lo = 0, cone_hi = -1;     // cohomological support of the cone (empty when lo > hi)
  int algebra_top = 0;               // top degree of H(A)
  std::vector<DgModule<K>> syzygies;  // Omega_0 = M, ..., Omega_S
  struct Periodicity {
    int from = 0, to = 0, shift = 0;
  };
  std::optional<Periodicity> periodic;

  /** Largest degree the cone of the truncation can reach after tensoring with a module topping out at n_max. */
  int tensor_error_top(int n_max) const;
  bool tensor_certified(int n, int n_min, int n_max) const;
  bool hom_certified(int n, int n_min, int n_max) const;
  Mat<K> augmentation_matrix() const;
};

struct ResolveOptions {
  int max_stages = 8;
  bool minimize = true;
  bool detect_periodicity = true;
};

template <class K> TruncatedResolution<K> resolve(const DgModule<K>& m, ResolveOptions opts = {});
/** Resolution with minimize = true. */
template <class K> TruncatedResolution<K> resolve_minimal(const DgModule<K>& m, int max_stages);

/** Cancel generator pairs joined by an invertible coefficient until none is left. */
template <class K> void cancel_units(TruncatedResolution<K>& r);
/** All differential coefficients lie in the radical. */
template <class K> bool is_minimal(const Semifree<K>& f);

struct BettiTable {
  std::map<std::pair<int, int>, int> entries;  // (stage, total degree) -> count
  std::map<int, int> total_per_degree;
  std::vector<int> per_stage;
  std::vector<bool> final_stage;
  bool complete = false;
  std::string to_string() const;
  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

template <class K> BettiTable betti_table(const TruncatedResolution<K>& r);

/** Whether A sits in degree zero with zero differential. */
template <class K> bool is_ordinary(const FdDga<K>& a);

}  // namespace dgforge
