#include "dgforge/complex.hpp"

#include <set>
#include <sstream>

namespace dgforge {

std::string CohomologyTable::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [n, e] : entries) {
    if (!first) os << ' ';
    first = false;
    os << n << ':' << e.dim << (e.certified ? "" : "?");
  }
  return os.str();
}

template <class K> CohomologyTable cohomology_of_complex(const Complex<K>& c) {
  std::set<int> degs;
  for (auto& [n, k] : c.dims) degs.insert(n);
  for (auto& [n, m] : c.d) {
    if (m.rows() != c.dim(n + 1) || m.cols() != c.dim(n))
      throw Error(Errc::dimension_mismatch, "differential in degree " + std::to_string(n) + " has wrong shape");
    auto next = c.d.find(n + 1);
    if (next != c.d.end() && m.rows() > 0 && m.cols() > 0 && next->second.rows() > 0) {
      Mat<K> sq = next->second * m;
      if (!is_zero_matrix<K>(sq))
        throw Error(Errc::not_a_complex, "d^2 != 0 starting in degree " + std::to_string(n));
    }
  }
  std::map<int, Index> ranks;
  for (auto& [n, m] : c.d) ranks[n] = (m.rows() && m.cols()) ? rank<K>(m) : 0;
  CohomologyTable t;
  for (int n : degs) {
    Index r_out = ranks.count(n) ? ranks[n] : 0;
    Index r_in = ranks.count(n - 1) ? ranks[n - 1] : 0;
    t.entries[n] = {c.dim(n) - r_out - r_in, true};
  }
  return t;
}

template <class K> Subspace<K> cocycles(const Complex<K>& c, int n) {
  Index dim = c.dim(n);
  if (dim == 0) return Subspace<K>(0);
  Mat<K> dn = c.differential(n);
  if (dn.rows() == 0) return Subspace<K>::whole(dim);
  return Subspace<K>::from_columns(null_space<K>(dn));
}

template <class K> Subspace<K> coboundaries(const Complex<K>& c, int n) {
  Index dim = c.dim(n);
  Mat<K> dp = c.differential(n - 1);
  if (dim == 0 || dp.cols() == 0) return Subspace<K>(dim);
  return Subspace<K>::from_columns(dp);
}

template <class K> Mat<K> cohomology_representatives(const Complex<K>& c, int n) {
  Subspace<K> z = cocycles(c, n), b = coboundaries(c, n);
  Index dim = c.dim(n);
  std::vector<Vec<K>> chosen;
  Subspace<K> span = b;
  for (Index i = 0; i < z.dim(); ++i) {
    Vec<K> v = z.vector(i);
    if (span.contains(v)) continue;
    chosen.push_back(v);
    Mat<K> row = v.transpose();
    span = sum(span, Subspace<K>::from_rows(row));
  }
  Mat<K> out(dim, static_cast<Index>(chosen.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) out.col(static_cast<Index>(i)) = chosen[i];
  return out;
}

#define DGFORGE_INSTANTIATE(K)                                                \
  template struct Complex<K>;                                                 \
  template CohomologyTable cohomology_of_complex<K>(const Complex<K>&);       \
  template Mat<K> cohomology_representatives<K>(const Complex<K>&, int);      \
  template Subspace<K> cocycles<K>(const Complex<K>&, int);                   \
  template Subspace<K> coboundaries<K>(const Complex<K>&, int);

DGFORGE_INSTANTIATE(Rational)
DGFORGE_INSTANTIATE(Fp)

}  // namespace dgforge
