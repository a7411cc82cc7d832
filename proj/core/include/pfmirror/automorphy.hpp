#pragma once

#include <optional>
#include <vector>

#include "pfmirror/bundle.hpp"
#include "pfmirror/matrix.hpp"
#include "pfmirror/torus.hpp"

namespace pfm {

// 𝒜 = Wᵗ T̄ᵗ Aᵗ W with W = (T - T̄)^{-1}.
struct ScriptA {
  std::optional<QCMatrix> exact;
  CMatrix numeric;
  bool symmetric = false;
  bool t2 = false;  // (i/2π)(𝒜̄ - 𝒜) = R
  bool t5 = false;  // 𝒜T real
  bool t6 = false;  // 𝒜(T - T̄) = -2πi R T̄
};

ScriptA script_A(const BundleData& bundle, const TorusData& torus);

// Im 𝓡(a, b) / π = n_aᵗ A m_b - n_bᵗ A m_a for lattice vectors, valid on
// holomorphic data.
std::int64_t im_pairing_over_pi(const IntMatrix& A, const LatticeVector& a, const LatticeVector& b);

struct Theorem36Constants {
  std::vector<Complex> c;        // U(γ_j) = c_j V_j
  std::vector<Complex> c_prime;  // U(γ'_k) = c'_k U_k
  std::vector<Complex> c_exponent;        // (i/r)(Wᵗμ)_j
  std::vector<Complex> c_prime_exponent;  // (i/r)(μᵗ W T̄)_k
};

Theorem36Constants theorem36_constants(const BundleData& bundle, const TorusData& torus);

class FactorOfAutomorphy {
 public:
  // Needs a cocycle set valid for (r, A) with ω = e^{2πi/r}.
  FactorOfAutomorphy(BundleData bundle, TorusData torus);
  // Explicit generator matrices U(γ_1..γ_n), U(γ'_1..γ'_n).
  FactorOfAutomorphy(BundleData bundle, TorusData torus, std::vector<CMatrix> u_gamma,
                     std::vector<CMatrix> u_gamma_prime);

  [[nodiscard]] const BundleData& bundle() const { return bundle_; }
  [[nodiscard]] const TorusData& torus() const { return torus_; }
  [[nodiscard]] const PairingForm& pairing() const { return pairing_; }
  [[nodiscard]] const std::vector<CMatrix>& u_gamma() const { return u_gamma_; }
  [[nodiscard]] const std::vector<CMatrix>& u_gamma_prime() const { return u_gamma_prime_; }
  [[nodiscard]] int r() const { return bundle_.r; }

 private:
  BundleData bundle_;
  TorusData torus_;
  PairingForm pairing_;
  std::vector<CMatrix> u_gamma_;
  std::vector<CMatrix> u_gamma_prime_;
};

// U(γ) built one generator at a time in the order γ'_n..γ'_1, γ_n..γ_1 via
// U(γ + g) = U(γ) U(g) e^{(i/r) Im 𝓡(g, γ)}.
CMatrix semi_rep_extend(const FactorOfAutomorphy& foa, const LatticeVector& gamma);

// j(γ, z) = U(γ) exp{(1/r)𝓡(z, γ) + (1/2r)𝓡(γ, γ)}; the exponent alone is
// available for callers that must avoid overflow.
Complex automorphy_exponent(const FactorOfAutomorphy& foa, const LatticeVector& gamma, const CVector& z);
CMatrix automorphy_eval(const FactorOfAutomorphy& foa, const LatticeVector& gamma, const CVector& z);

// ||j(γ+γ', z) - j(γ', z+γ) j(γ, z)|| / ||j(γ+γ', z)||, evaluated with the
// common scalar factor exp of the left exponent divided out.
double cocycle_residual(const FactorOfAutomorphy& foa, const LatticeVector& g1,
                        const LatticeVector& g2, const CVector& z);

enum class PsiForm {
  corrected,   // conj(𝒜) in the z̄ z̄ term; satisfies the gauge equation
  as_printed,  // 𝒜 in the z̄ z̄ term; kept to demonstrate the failure
};

Complex psi_exponent(const BundleData& bundle, const TorusData& torus, const CVector& z,
                     PsiForm form = PsiForm::corrected);
Complex psi_eval(const BundleData& bundle, const TorusData& torus, const CVector& z,
                 PsiForm form = PsiForm::corrected);

struct GaugeReport {
  double t1_residual_max = 0.0;
  double t1_fd_residual_max = 0.0;  // finite-difference cross-check
  double conjugation_residual_max = 0.0;
  bool t2 = false;
  bool t5 = false;
  bool t6 = false;
  int samples = 0;
};

// Gauge equation ∇̃Ψ - Ψ∇ = 0 and the conjugation of the transition data
// into j(γ_j, ·), j(γ'_k, ·), at each point. Requires a cocycle set.
GaugeReport gauge_and_conjugation_check(const BundleData& bundle, const TorusData& torus,
                                        const std::vector<CVector>& points,
                                        PsiForm form = PsiForm::corrected, double fd_step = 1e-6);

double frobenius_norm(const CMatrix& m);

}  // namespace pfm
