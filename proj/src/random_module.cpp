#include <random>

#include "dgforge/module.hpp"
#include "dgforge/radical.hpp"

namespace dgforge {

template <class K> DgModule<K> random_module(DgaPtr<K> a, std::uint64_t seed, int budget) {
  if (a->is_zero_ring()) return DgModule<K>::zero(a);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> shift_dist(-2, 2), coef(-2, 2), coin(0, 1);
  auto reg = regular_module(a);
  auto simple = cyclic_quotient(a, dg_ideals(*a).minus);
  auto piece = [&]() { return shift(coin(rng) ? reg : simple, shift_dist(rng)); };

  DgModule<K> m = piece();
  for (int step = 1; step < budget; ++step) {
    DgModule<K> y = piece();
    bool into = coin(rng);
    const DgModule<K>& src = into ? y : m;
    const DgModule<K>& dst = into ? m : y;
    Mat<K> f = Mat<K>::Constant(dst.dim(), src.dim(), m.lit(0));
    for (auto& b : chain_maps(src, dst)) f += b * m.lit(coef(rng));
    m = cone(ModuleMap<K>{src, dst, 0, f});
  }
  return m;
}

template DgModule<Rational> random_module<Rational>(DgaPtr<Rational>, std::uint64_t, int);
template DgModule<Fp> random_module<Fp>(DgaPtr<Fp>, std::uint64_t, int);

}  // namespace dgforge
