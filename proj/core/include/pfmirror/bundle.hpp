#pragma once

#include <optional>
#include <vector>

#include "pfmirror/exterior.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/matrix.hpp"
#include "pfmirror/scalar.hpp"
#include "pfmirror/torus.hpp"

namespace pfm {

// Discrete data (r, A, μ, 𝒰) of a projectively flat bundle. Row a_j of the
// transition phase is column j of A: a_j y = sum_i a_ij y_i.
struct BundleData {
  int r = 1;
  IntMatrix A;
  std::vector<PiComplex> mu;
  std::optional<CocycleSet> cocycle;

  [[nodiscard]] int n() const { return static_cast<int>(A.rows()); }
  // Throws on r < 1, non-square A, or wrong μ length.
  void check(int torus_n) const;
};

// Returns μ from μ = p + Tᵗq.
std::vector<PiComplex> mu_from_pq(const std::vector<PiLinear>& p, const std::vector<PiLinear>& q,
                                  const TorusData& torus);

struct HolomorphyReport {
  bool holomorphic = false;              // AT = (AT)ᵗ
  bool curvature02_symmetric = false;    // (0,2) coefficient symmetric
  CMatrix at_residual;                   // AT - (AT)ᵗ
  CMatrix curvature02_residual;          // M - Mᵗ, M = {T W}ᵗ Aᵗ W, W = (T - T̄)^{-1}
  bool exact = false;                    // decided on exact data
};

HolomorphyReport is_holomorphic(const BundleData& bundle, const TorusData& torus);
void require_holomorphic(const BundleData& bundle, const TorusData& torus);

struct MuSplit {
  std::vector<PiLinear> p;  // exact; empty when the torus is numeric
  std::vector<PiLinear> q;
  std::vector<double> p_numeric;
  std::vector<double> q_numeric;
};

MuSplit mu_split(const std::vector<PiComplex>& mu, const TorusData& torus);

// Hermitian form 𝓡(z, w) = zᵗ R w̄ with R = (1/4π)(Y^{-1})ᵗ A.
// The exact part stores 4πR, which is rational on rational tori.
struct PairingForm {
  std::optional<RatMatrix> four_pi_R;
  RMatrix R;

  [[nodiscard]] Complex evaluate(const CVector& z, const CVector& w) const;
};

// Both closed forms of R are computed and compared; throws
// PreconditionError when not holomorphic.
PairingForm curvature_R(const BundleData& bundle, const TorusData& torus);

// 𝓡(γ, γ') / π for lattice vectors, exact on rational tori.
QComplex pairing_over_pi(const PairingForm& form, const TorusData& torus, const LatticeVector& a,
                         const LatticeVector& b);
Complex pairing_value(const PairingForm& form, const TorusData& torus, const LatticeVector& a,
                      const LatticeVector& b);

struct GeneratorPairings {
  int n = 0;
  bool exact = false;
  // (j,k) entries; exact tables hold 𝓡/π.
  QCMatrix gamma_gamma, gammap_gammap, gamma_gammap, gammap_gamma;  // gammap_gamma(k,j) = 𝓡(γ'_k, γ_j)
  CMatrix gamma_gamma_num, gammap_gammap_num, gamma_gammap_num, gammap_gamma_num;
  bool r_real_symmetric = false;
  bool imaginary_parts_match = false;  // 0, 0, -π a_kj, +π a_kj
  double max_deviation = 0.0;          // numeric mode only
};

GeneratorPairings generator_pairings(const BundleData& bundle, const TorusData& torus);

// dy-coefficient of the local connection form: -(i/2πr)(A x + μ).
CVector connection_local_xy(const BundleData& bundle, const std::vector<double>& x);

struct CurvatureCheck {
  double max_abs_error = 0.0;
  // 2π times the expected curvature, -(i/r) dxᵗAᵗdy, as exact form.
  exterior::FormElement expected_times_2pi;
};

// Central-difference exterior derivative of the dy-coefficient field at x,
// compared with -(i/2πr) dxᵗAᵗdy.
CurvatureCheck connection_curvature_check(const BundleData& bundle, const std::vector<double>& x,
                                          double step = 1e-5);

}  // namespace pfm
