#pragma once

#include <map>
#include <string>

#include "dgforge/linalg.hpp"

namespace dgforge {

/** Bounded cochain complex of finite dimensional spaces; d(n) maps C^n to C^{n+1}. */
template <class K> struct Complex {
  std::map<int, Index> dims;
  std::map<int, Mat<K>> d;

  Index dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  Mat<K> differential(int n) const {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    return Mat<K>::Zero(dim(n + 1), dim(n));
  }
};

struct CohomologyEntry {
  Index dim = 0;
  bool certified = true;
  friend bool operator==(const CohomologyEntry&, const CohomologyEntry&) = default;
};

struct CohomologyTable {
  std::map<int, CohomologyEntry> entries;

  Index dim(int n) const {
    auto it = entries.find(n);
    return it == entries.end() ? 0 : it->second.dim;
  }
  bool certified(int n) const {
    auto it = entries.find(n);
    return it == entries.end() || it->second.certified;
  }
  Index total_dim() const {
    Index t = 0;
    for (auto& [n, e] : entries) t += e.dim;
    return t;
  }
  /** Drop zero entries that are certified; keeps uncertified zeros visible. */
  CohomologyTable compact() const {
    CohomologyTable t;
    for (auto& [n, e] : entries)
      if (e.dim != 0 || !e.certified) t.entries[n] = e;
    return t;
  }
  std::string to_string() const;
  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

/** Dimensions of cohomology; throws not_a_complex if some d(n+1) d(n) is nonzero. */
template <class K> CohomologyTable cohomology_of_complex(const Complex<K>& c);

/** Cocycles representing a basis of H^n, one per column. */
template <class K> Mat<K> cohomology_representatives(const Complex<K>& c, int n);

/** Cocycles and coboundaries in degree n as subspaces of C^n. */
template <class K> Subspace<K> cocycles(const Complex<K>& c, int n);
template <class K> Subspace<K> coboundaries(const Complex<K>& c, int n);

}  // namespace dgforge
