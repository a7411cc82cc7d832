#pragma once

#include <optional>
#include <vector>

#include "pfmirror/bundle.hpp"
#include "pfmirror/exterior.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/mirror.hpp"

namespace pfm {

// ch_0..ch_n; ch_i carries (4π²)^{-i} symbolically.
struct ChernVector {
  std::vector<exterior::FormElement> ch;
  friend bool operator==(const ChernVector&, const ChernVector&) = default;
};

// Ω' = (1/4π² r) dxᵗAᵗdy
exterior::FormElement normalized_curvature(int r, const IntMatrix& A);

// Formal sums of (ch_i) of block data; ch_i(E) = (r/i!) Ω'^i.
ChernVector chern_character(int r, const IntMatrix& A);
ChernVector chern_character(const BundleData& bundle, const TorusData& torus);
ChernVector operator+(const ChernVector& a, const ChernVector& b);

struct ConeTarget {
  int t = 0;
  IntMatrix C;
};
ConeTarget cone_target(int r, const IntMatrix& A, int s, const IntMatrix& B);

struct ConeFlatness {
  bool pf = false;
  exterior::FormElement c2_form;  // (Ω'_r - Ω'_s)^2
  MinorsReport minors;
};

// Wedge-square vanishing and 2x2-minor vanishing are computed separately
// and must agree.
ConeFlatness cone_projectively_flat(int r, const IntMatrix& A, int s, const IntMatrix& B);

struct ChernChain {
  bool c0 = false;
  bool c1 = false;
  bool c2 = false;
  bool c2_prime = false;        // (rt - r²)X² + (st - s²)Y² = 2rs X∧Y
  bool c2_double_prime = false;  // (X - Y)² = 0
  bool c2_reduction_consistent = false;  // c2 ⟺ c2' ⟺ c2'' under c0, c1
};

// Equalities (ch) for i = 0, 1, 2 and their reductions, for target (t, C).
ChernChain chern_chain(int r, const IntMatrix& A, int s, const IntMatrix& B, int t, const IntMatrix& C);

struct CiFactorization {
  bool factorization_holds = false;  // expanded left side == (X - Y)² ∧ (double sum)
  bool matches_chern_difference = false;  // left side == t^{i-1}(rX^i + sY^i) - (rX + sY)^i
  exterior::FormElement left;
  exterior::FormElement right;
};

// Requires 3 <= i <= n (GuardError otherwise).
CiFactorization ci_factorization_check(int i, int r, int s, const IntMatrix& A, const IntMatrix& B);

struct Section5Report {
  PiComplex eta;
  bool cocycle_verified = false;  // (a)
  bool cone_target_ok = false;    // (b)
  bool chern_ok = false;          // (c)
  bool codim_one = false;         // (d)
  bool target_holomorphic = false;  // (e)
  CocycleReport cocycle;
  Theorem41Report mirror;
  [[nodiscard]] bool all() const {
    return cocycle_verified && cone_target_ok && chern_ok && codim_one && target_holomorphic;
  }
};

// The T² example with maps from E_(1,0,μ) and E_(1,1,ν) into E_(2,1,η,𝒲),
// η = μ + ν + π + πτ. `cocycle_override` replaces 𝒲.
Section5Report section5_fixture(const QComplex& tau, const PiComplex& mu, const PiComplex& nu,
                                const std::optional<CocycleSet>& cocycle_override = std::nullopt);

// V_1 = antidiag(1, 1), U_1 = diag(1, -1) over Q(ζ_2).
CocycleSet section5_cocycle();

}  // namespace pfm
