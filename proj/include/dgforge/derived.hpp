#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgforge/resolution.hpp"

namespace dgforge {

enum class Status { certified_yes, certified_no, inconclusive };

const char* status_name(Status s);

/** Answer of a derived-level check together with the evidence it rests on. */
struct Verdict {
  Status status = Status::inconclusive;
  std::string reason;
  std::optional<BettiTable> betti;
  std::vector<std::pair<std::string, CohomologyTable>> tables;
  std::vector<std::pair<std::string, BettiTable>> bettis;
  DegreeWindow window;

  int exit_code() const { return status == Status::certified_yes ? 0 : status == Status::certified_no ? 1 : 2; }
};

/**
 * F (x)_A N for the resolution F of M and a right A^op-module N, on the
 * degrees of the window plus one on each side.
 */
template <class K> Complex<K> tensor_complex(const Semifree<K>& f, const DgModule<K>& n, DegreeWindow w);
/** Hom_A(F, N) on the degrees of the window plus one on each side. */
template <class K> Complex<K> hom_complex(const Semifree<K>& f, const DgModule<K>& n, DegreeWindow w);

/** Cohomology of F (x) N over the window; certified where the truncation cannot reach. */
template <class K> CohomologyTable tensor_table(const TruncatedResolution<K>& r, const DgModule<K>& n, DegreeWindow w);
template <class K> CohomologyTable hom_table(const TruncatedResolution<K>& r, const DgModule<K>& n, DegreeWindow w);

/** M (x)^L_A N with N a right A^op-module. */
template <class K> CohomologyTable derived_tensor(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                                  int max_stages);
template <class K> CohomologyTable derived_hom(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                               int max_stages);

/** A / J_- as a right A-module. */
template <class K> DgModule<K> semisimple_top(DgaPtr<K> a);

/** Throws precondition_failed unless A / J_+ is separable. */
template <class K> void require_separable_top(const FdDga<K>& a);

/** dim H^i RHom(M, N^dual) = dim H^{-i}(M (x)^L N) on degrees certified on both sides. */
template <class K> Verdict ext_tor_duality_check(const DgModule<K>& m, const DgModule<K>& n, DegreeWindow w,
                                                 int max_stages);

/**
 * Is M zero in the derived category? Yes when H(M) = 0; otherwise No with the
 * first generator of the minimal resolution and a certified nonzero class of
 * M (x)^L A/J_- as witness.
 */
template <class K> Verdict nakayama_witness(const DgModule<K>& m, int max_stages, DegreeWindow w = {});

/** Yes when the minimal resolution terminates, No when its syzygies are periodic. */
template <class K> Verdict perfection_check(const DgModule<K>& m, int max_stages);

/**
 * The same question asked through RHom(M, A/J_-), computed as the dual of
 * M (x)^L (A/J_-)^dual and compared against the direct Hom computation.
 */
template <class K> Verdict contradual_perfection_check(const DgModule<K>& m, DegreeWindow w, int max_stages);

/** Both RHom_A(A/J_-, A) and RHom_{A^op}(A/J_-, A) cohomologically finite. */
template <class K> Verdict gorenstein_check(DgaPtr<K> a, DegreeWindow w, int max_stages);

/** A^dual with right action (phi a)(x) = phi(a x). */
template <class K> DgModule<K> dual_algebra_module(DgaPtr<K> a);
/** The left action c phi on A^dual as a matrix. */
template <class K> Mat<K> dual_algebra_left_action(const FdDga<K>& a, const Vec<K>& c);
/** A^dual as a right module over A^op (its left A-structure). */
template <class K> DgModule<K> dual_algebra_left_module(DgaPtr<K> a, DgaPtr<K> opposite = nullptr);

/** F (x)_A A^dual as a strictly finite right A-module; needs a complete resolution. */
template <class K> DgModule<K> serre_functor(const TruncatedResolution<K>& r);

/** dim H^i RHom(M, N) = dim H^{-i} RHom(N, M (x)^L A^dual) for perfect M, N over Gorenstein A. */
template <class K> Verdict serre_duality_check(DgaPtr<K> a, const DgModule<K>& m, const DgModule<K>& n,
                                               DegreeWindow w, int max_stages);

/** Hom_A(F, A) as a right A^op-module; needs a complete resolution. */
template <class K> DgModule<K> resolution_dual(const TruncatedResolution<K>& r, DgaPtr<K> opposite = nullptr);

template <class K> struct KoszulDual {
  TruncatedResolution<K> resolution;
  CohomologyTable ext;              // RHom(A/J_-, A/J_-) over the window
  std::map<int, int> certified;     // per degree, classes from final stages
  std::vector<int> certified_per_stage;
  bool products_computed = false;
  /** t^n as a multiple of the stage n class, for n = 1, 2, ... while defined. */
  std::vector<bool> power_nonzero;
  bool power_law = false;           // t^i t^j = t^{i+j} on every certified pair
  std::optional<FdDga<K>> endomorphisms;
  std::string note;
};

struct KoszulOptions {
  int max_stages = 6;
  DegreeWindow window;
  int endomorphism_limit = 48;  // largest materialized resolution whose strict End is built
};

template <class K> KoszulDual<K> koszul_dual(DgaPtr<K> a, KoszulOptions opts = {});

/**
 * Yoneda product psi . phi of two Hom_A(F, A/J_-) cocycles given on
 * generators, through a lift of phi to an endomorphism of F. nullopt when the
 * lift runs past the truncation.
 */
template <class K> std::optional<std::vector<Vec<K>>> yoneda_product(const TruncatedResolution<K>& r,
                                                                    const std::vector<Vec<K>>& psi,
                                                                    const std::vector<Vec<K>>& phi, int phi_degree);

/** Normalized bar complex of A over the bar lengths 0..max_length. */
template <class K> Complex<K> hochschild_complex(const FdDga<K>& a, int max_length);
/** H^{-n} is HH_n; degrees no longer bar length can reach are certified. */
template <class K> CohomologyTable hochschild_homology(const FdDga<K>& a, int max_length, DegreeWindow w);

/** perfection_check of the diagonal bimodule over the enveloping algebra. */
template <class K> Verdict smoothness_check(DgaPtr<K> a, int max_stages);

template <class K> struct Auslander {
  int nilpotency = 0;
  std::vector<Subspace<K>> ideals;   // J_1, ..., J_N
  DgModule<K> generator;             // A/J_1 + ... + A/J_{N-1} + A
  DgaPtr<K> algebra;                 // End_A of the generator
  std::vector<Mat<K>> basis_maps;    // the map of each basis element of E
  std::vector<DgModule<K>> projectives;  // P_i = Hom_A(M, A/J_i), i = 1..N
  std::vector<std::vector<Mat<K>>> projective_maps;
};

template <class K> Auslander<K> auslander_dga(DgaPtr<K> a);

/** P_N (x)_E E/J(E)_- as a right A^op-module. */
template <class K> DgModule<K> keylemma_witness(DgaPtr<K> a, DgaPtr<K> opposite = nullptr);

}  // namespace dgforge
