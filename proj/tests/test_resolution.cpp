#include <catch2/catch_amalgamated.hpp>

#include "dgforge/resolution.hpp"

using namespace dgforge;
using Q = Rational;

namespace {

DgaPtr<Q> B(const char* name) { return share(builtin_example<Q>(name)); }
DgModule<Q> simple_of(const DgaPtr<Q>& a) { return cyclic_quotient(a, dg_ideals(*a).minus); }

std::map<int, Index> dims(const CohomologyTable& t) {
  std::map<int, Index> p;
  for (auto& [n, e] : t.entries)
    if (e.dim) p[n] = e.dim;
  return p;
}

// The augmentation is a chain map whose cone has the cohomology of Sigma^S Omega_S.
void check_resolution(const TruncatedResolution<Q>& r) {
  auto tot = r.total.materialize();
  REQUIRE(validate_module(tot).empty());
  ModuleMap<Q> eps{tot, r.target, 0, r.augmentation_matrix()};
  REQUIRE(is_chain_map(eps));
  auto c = cone(eps);
  REQUIRE(dims(c.cohomology()) == dims(shift(r.syzygies.back(), r.stages).cohomology()));
  for (int i = 0; i < r.total.size(); ++i)
    for (auto& [j, x] : r.total.generator(i).diff) REQUIRE(j < i);
}

}  // namespace

TEST_CASE("free module resolves in one stage") {
  for (auto& n : builtin_names()) {
    auto a = B(n.c_str());
    auto r = resolve_minimal(regular_module(a), 4);
    check_resolution(r);
    REQUIRE(r.complete);
    auto b = betti_table(r);
    if (n == "acyclic") {
      REQUIRE(r.total.size() == 0);
      continue;
    }
    INFO(n << " " << b.to_string());
    REQUIRE(r.minimal);
    if (n == "a2_path") {
      REQUIRE(b.per_stage == std::vector<int>{2});
    } else {
      REQUIRE(b.per_stage == std::vector<int>{1});
      REQUIRE(b.total_per_degree == std::map<int, int>{{0, 1}});
    }
  }
}

TEST_CASE("syzygy oracles") {
  auto d = B("dual_numbers");
  auto rd = resolve_minimal(simple_of(d), 6);
  check_resolution(rd);
  REQUIRE_FALSE(rd.complete);
  REQUIRE(betti_table(rd).per_stage == std::vector<int>(6, 1));
  REQUIRE(rd.periodic);
  REQUIRE(rd.periodic->to <= 2);

  auto l = B("local_square_zero_2");
  auto rl = resolve_minimal(simple_of(l), 4);
  check_resolution(rl);
  REQUIRE(betti_table(rl).per_stage == std::vector<int>{1, 2, 4, 8});
  REQUIRE_FALSE(rl.periodic);

  auto x = B("dual_numbers_deg1");
  auto rx = resolve_minimal(simple_of(x), 5);
  check_resolution(rx);
  auto bx = betti_table(rx);
  REQUIRE(bx.per_stage == std::vector<int>(5, 1));
  REQUIRE(bx.total_per_degree == std::map<int, int>{{0, 5}});

  auto t2 = B("a2_path");
  for (auto& s : simple_modules(t2)) {
    auto r = resolve_minimal(s, 6);
    check_resolution(r);
    REQUIRE(r.complete);
    REQUIRE(betti_table(r).per_stage.size() <= 2);
  }
}

TEST_CASE("random modules resolve minimally") {
  for (auto& n : builtin_names()) {
    auto a = B(n.c_str());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto m = random_module(a, seed, 3);
      INFO(n << " seed " << seed);
      auto raw = resolve(m, {3, false, false});
      check_resolution(raw);
      auto r = resolve_minimal(m, 3);
      check_resolution(r);
      REQUIRE(r.minimal);
      auto b = betti_table(r);
      int stage0 = b.per_stage.empty() ? 0 : b.per_stage[0];
      REQUIRE((stage0 == 0) == (m.cohomology().total_dim() == 0));
    }
  }
}
