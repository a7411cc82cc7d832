#include "pfmirror/automorphy.hpp"

#include "pfmirror/errors.hpp"

namespace pfm {

namespace {

constexpr Complex kImag(0.0, 1.0);

double rel_tol(double scale) { return 1e-12 * std::max(1.0, scale); }

CVector mu_numeric(const BundleData& bundle) {
  CVector mu;
  for (const auto& x : bundle.mu) mu.push_back(x.to_complex());
  return mu;
}

CVector conj_vec(const CVector& v) {
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
  return out;
}

Complex dot(const CVector& a, const CVector& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

CVector add(CVector a, const CVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

double frobenius_norm(const CMatrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

ScriptA script_A(const BundleData& bundle, const TorusData& torus) {
  const PairingForm form = curvature_R(bundle, torus);
  ScriptA out;
  if (torus.is_exact()) {
    const QCMatrix& T = torus.exact();
    const QCMatrix W = exact_t_minus_tbar_inverse(torus);
    const QCMatrix At = to_qc(bundle.A).transpose();
    const QCMatrix SA = W.transpose() * conj(T).transpose() * At * W;
    const QCMatrix R4 = to_qc(*form.four_pi_R);
    out.symmetric = is_symmetric(SA);
    // (i/2π)(𝒜̄ - 𝒜) = R  <=>  2i(𝒜̄ - 𝒜) = 4πR
    out.t2 = QComplex(0, 2) * (conj(SA) - SA) == R4;
    out.t5 = is_zero_matrix(imag_part(QCMatrix(SA * T)));
    // 𝒜(T - T̄) = -2πi R T̄ = -(i/2) (4πR) T̄
    out.t6 = SA * (T - conj(T)) == QComplex(Rational(0), Rational(-1, 2)) * (R4 * conj(T));
    out.numeric = to_complex(SA);
    out.exact = SA;
    return out;
  }
  const CMatrix& T = torus.numeric();
  const CMatrix W = t_minus_tbar_inverse(torus);
  const CMatrix SA = W.transpose() * conj(T).transpose() * to_complex(bundle.A).transpose() * W;
  const CMatrix R = to_complex(form.R);
  const double scale = max_abs(SA) * std::max(1.0, max_abs(T));
  out.symmetric = is_symmetric(SA, rel_tol(max_abs(SA)));
  out.t2 = is_zero_matrix(CMatrix(Complex(0.0, 1.0 / (2.0 * kPi)) * (conj(SA) - SA) - R),
                          rel_tol(max_abs(R)));
  out.t5 = is_zero_matrix(imag_part(CMatrix(SA * T)), rel_tol(scale));
  out.t6 = is_zero_matrix(CMatrix(SA * (T - conj(T)) + Complex(0.0, 2.0 * kPi) * (R * conj(T))),
                          rel_tol(scale));
  out.numeric = SA;
  return out;
}

std::int64_t im_pairing_over_pi(const IntMatrix& A, const LatticeVector& a, const LatticeVector& b) {
  const std::size_t n = A.rows();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) acc += a.n_prime[i] * A(i, k) * b.m[k] - b.n_prime[i] * A(i, k) * a.m[k];
  return acc;
}

Theorem36Constants theorem36_constants(const BundleData& bundle, const TorusData& torus) {
  require_holomorphic(bundle, torus);
  const int n = torus.n();
  const CMatrix W = t_minus_tbar_inverse(torus);
  const CVector mu = mu_numeric(bundle);
  const CVector wt_mu = W.transpose() * mu;
  // (μᵗ W T̄)_k = ((W T̄)ᵗ μ)_k
  const CVector mu_w_tbar = CMatrix(W * conj(torus.numeric())).transpose() * mu;
  Theorem36Constants out;
  const Complex factor = kImag / static_cast<double>(bundle.r);
  for (int j = 0; j < n; ++j) {
    out.c_exponent.push_back(factor * wt_mu[j]);
    out.c_prime_exponent.push_back(factor * mu_w_tbar[j]);
    out.c.push_back(std::exp(out.c_exponent.back()));
    out.c_prime.push_back(std::exp(out.c_prime_exponent.back()));
  }
  return out;
}

FactorOfAutomorphy::FactorOfAutomorphy(BundleData bundle, TorusData torus)
    : bundle_(std::move(bundle)), torus_(std::move(torus)) {
  pairing_ = curvature_R(bundle_, torus_);
  if (!bundle_.cocycle) throw PreconditionError("factor of automorphy needs a cocycle set");
  const CocycleReport rep = verify_cocycle(*bundle_.cocycle, bundle_.r, bundle_.A, 1);
  if (!rep.valid) {
    throw PreconditionError("cocycle set does not satisfy the relations with omega = exp(2 pi i / r)");
  }
  if (bundle_.cocycle->rank != bundle_.r) throw PreconditionError("cocycle rank must equal r");
  const Theorem36Constants k = theorem36_constants(bundle_, torus_);
  for (int j = 0; j < torus_.n(); ++j) {
    u_gamma_.push_back(k.c[j] * to_complex(bundle_.cocycle->V[j]));
    u_gamma_prime_.push_back(k.c_prime[j] * to_complex(bundle_.cocycle->U[j]));
  }
}

FactorOfAutomorphy::FactorOfAutomorphy(BundleData bundle, TorusData torus, std::vector<CMatrix> u_gamma,
                                       std::vector<CMatrix> u_gamma_prime)
    : bundle_(std::move(bundle)),
      torus_(std::move(torus)),
      u_gamma_(std::move(u_gamma)),
      u_gamma_prime_(std::move(u_gamma_prime)) {
  pairing_ = curvature_R(bundle_, torus_);
  const auto n = static_cast<std::size_t>(torus_.n());
  if (u_gamma_.size() != n || u_gamma_prime_.size() != n) {
    throw DimensionError("need one generator matrix per lattice generator");
  }
  for (const auto* family : {&u_gamma_, &u_gamma_prime_})
    for (const auto& m : *family)
      if (m.rows() != static_cast<std::size_t>(bundle_.r) || !m.square())
        throw DimensionError("generator matrices must be r x r");
}

CMatrix semi_rep_extend(const FactorOfAutomorphy& foa, const LatticeVector& gamma) {
  const int n = foa.torus().n();
  if (gamma.dimension() != n) throw DimensionError("lattice vector dimension mismatch");
  const auto r = static_cast<std::size_t>(foa.r());
  CMatrix U = CMatrix::identity(r, 1.0, 0.0);
  LatticeVector acc = LatticeVector::zero(n);
  const auto step = [&](const LatticeVector& gen, const CMatrix& u_gen, std::int64_t count) {
    if (count == 0) return;
    const LatticeVector g = count > 0 ? gen : -gen;
    CMatrix u = u_gen;
    if (count < 0) {
      auto inv = inverse(u_gen);
      if (!inv) throw PreconditionError("generator matrix is singular");
      u = *inv;
    }
    for (std::int64_t c = 0; c < std::abs(count); ++c) {
      const double phase = kPi * static_cast<double>(im_pairing_over_pi(foa.bundle().A, g, acc)) / foa.r();
      U = U * u;
      U *= std::polar(1.0, phase);
      acc = acc + g;
    }
  };
  for (int k = n; k >= 1; --k)
    step(LatticeVector::gamma_prime(n, k), foa.u_gamma_prime()[k - 1], gamma.n_prime[k - 1]);
  for (int j = n; j >= 1; --j) step(LatticeVector::gamma(n, j), foa.u_gamma()[j - 1], gamma.m[j - 1]);
  return U;
}

Complex automorphy_exponent(const FactorOfAutomorphy& foa, const LatticeVector& gamma, const CVector& z) {
  const CVector g = lattice_embed(gamma, foa.torus());
  const double r = foa.r();
  return foa.pairing().evaluate(z, g) / r + foa.pairing().evaluate(g, g) / (2.0 * r);
}

CMatrix automorphy_eval(const FactorOfAutomorphy& foa, const LatticeVector& gamma, const CVector& z) {
  CMatrix out = semi_rep_extend(foa, gamma);
  out *= std::exp(automorphy_exponent(foa, gamma, z));
  return out;
}

double cocycle_residual(const FactorOfAutomorphy& foa, const LatticeVector& g1, const LatticeVector& g2,
                        const CVector& z) {
  // Both sides are U·exp(e); dividing by exp(e_lhs) first keeps large lattice
  // vectors from overflowing while leaving the relative residual unchanged.
  const LatticeVector sum = g1 + g2;
  const CVector z_shift = add(z, lattice_embed(g1, foa.torus()));
  const Complex e_lhs = automorphy_exponent(foa, sum, z);
  const Complex e_rhs = automorphy_exponent(foa, g2, z_shift) + automorphy_exponent(foa, g1, z);
  const CMatrix lhs = semi_rep_extend(foa, sum);
  CMatrix rhs = semi_rep_extend(foa, g2) * semi_rep_extend(foa, g1);
  rhs *= std::exp(e_rhs - e_lhs);
  return frobenius_norm(CMatrix(lhs - rhs)) / std::max(frobenius_norm(lhs), 1e-300);
}

namespace {

struct PsiData {
  CMatrix SA;      // 𝒜
  CMatrix SA_bar;  // term used for z̄ᵗ(·)z̄
  CMatrix K;       // Wᵗ
  CMatrix W;
  CVector mu;
  double r = 1;
};

PsiData psi_data(const BundleData& bundle, const TorusData& torus, PsiForm form) {
  PsiData d;
  d.SA = script_A(bundle, torus).numeric;
  d.SA_bar = form == PsiForm::corrected ? conj(d.SA) : d.SA;
  d.W = t_minus_tbar_inverse(torus);
  d.K = d.W.transpose();
  d.mu = mu_numeric(bundle);
  d.r = bundle.r;
  return d;
}

Complex exponent(const PsiData& d, const CVector& z) {
  const CVector zb = conj_vec(z);
  const Complex c4 = kImag / (4.0 * kPi * d.r);
  const Complex c2 = kImag / (2.0 * kPi * d.r);
  return c4 * dot(z, d.SA * z) + c4 * dot(zb, d.SA_bar * zb) - c2 * dot(z, d.SA * zb) +
         c2 * dot(zb, d.K * d.mu);
}

}  // namespace

Complex psi_exponent(const BundleData& bundle, const TorusData& torus, const CVector& z, PsiForm form) {
  require_holomorphic(bundle, torus);
  if (static_cast<int>(z.size()) != torus.n()) throw DimensionError("point dimension mismatch");
  return exponent(psi_data(bundle, torus, form), z);
}

Complex psi_eval(const BundleData& bundle, const TorusData& torus, const CVector& z, PsiForm form) {
  return std::exp(psi_exponent(bundle, torus, z, form));
}

GaugeReport gauge_and_conjugation_check(const BundleData& bundle, const TorusData& torus,
                                        const std::vector<CVector>& points, PsiForm form, double fd_step) {
  if (!bundle.cocycle) throw PreconditionError("gauge check needs a cocycle set");
  const FactorOfAutomorphy foa(bundle, torus);
  const ScriptA sa = script_A(bundle, torus);
  const PsiData d = psi_data(bundle, torus, form);
  const int n = torus.n();
  const RMatrix& R = foa.pairing().R;
  const CVector k_mu = d.K * d.mu;
  const CMatrix Rc = to_complex(R);

  GaugeReport rep;
  rep.t2 = sa.t2;
  rep.t5 = sa.t5;
  rep.t6 = sa.t6;
  rep.samples = static_cast<int>(points.size());

  // Residual of dE + ω̃ - ω from given Wirtinger derivatives.
  const auto gauge_residual = [&](const CVector& z, const CVector& dE_dz, const CVector& dE_dzb) {
    const CVector zb = conj_vec(z);
    const RealCoords xy = zy_coords(z, torus);
    const CVector c = connection_local_xy(bundle, xy.x);
    const CVector kc = d.K * c;
    const CVector r_zb = Rc * zb;
    double num = 0.0, scale = 1.0;
    for (int l = 0; l < n; ++l) {
      const Complex tilde_dz = -r_zb[l] / d.r - kImag / (2.0 * kPi * d.r) * k_mu[l];
      const Complex res_dz = dE_dz[l] + tilde_dz - kc[l];
      const Complex res_dzb = dE_dzb[l] + kc[l];
      num = std::max({num, std::abs(res_dz), std::abs(res_dzb)});
      scale = std::max({scale, std::abs(dE_dz[l]), std::abs(dE_dzb[l]), std::abs(tilde_dz), std::abs(kc[l])});
    }
    return num / scale;
  };

  for (const CVector& z : points) {
    if (static_cast<int>(z.size()) != n) throw DimensionError("sample point dimension mismatch");
    const CVector zb = conj_vec(z);
    const Complex c2 = kImag / (2.0 * kPi * d.r);
    // ∂E/∂z = (i/2πr)(𝒜z - 𝒜z̄),  ∂E/∂z̄ = (i/2πr)(S z̄ - 𝒜z + Kμ), S = 𝒜̄ or 𝒜
    CVector dz(n), dzb(n);
    const CVector az = d.SA * z, azb = d.SA * zb, sbzb = d.SA_bar * zb;
    for (int l = 0; l < n; ++l) {
      dz[l] = c2 * (az[l] - azb[l]);
      dzb[l] = c2 * (sbzb[l] - az[l] + k_mu[l]);
    }
    rep.t1_residual_max = std::max(rep.t1_residual_max, gauge_residual(z, dz, dzb));

    CVector fdz(n), fdzb(n);
    for (int l = 0; l < n; ++l) {
      CVector zp = z, zm = z;
      zp[l] += fd_step;
      zm[l] -= fd_step;
      const Complex du = (exponent(d, zp) - exponent(d, zm)) / (2.0 * fd_step);
      zp = z;
      zm = z;
      zp[l] += Complex(0.0, fd_step);
      zm[l] -= Complex(0.0, fd_step);
      const Complex dv = (exponent(d, zp) - exponent(d, zm)) / (2.0 * fd_step);
      fdz[l] = 0.5 * (du - kImag * dv);
      fdzb[l] = 0.5 * (du + kImag * dv);
    }
    rep.t1_fd_residual_max = std::max(rep.t1_fd_residual_max, gauge_residual(z, fdz, fdzb));

    const Complex psi_z_inv = std::exp(-exponent(d, z));
    CVector diff(n);
    for (int i = 0; i < n; ++i) diff[i] = z[i] - zb[i];
    const CVector y_part = d.W * diff;
    for (int j = 1; j <= n; ++j) {
      // e^{(i/r) a_j y} with a_j y = Σ_i a_ij y_i, y = W(z - z̄)
      Complex ay = 0.0;
      for (int i = 0; i < n; ++i) ay += static_cast<double>(bundle.A(i, j - 1)) * y_part[i];
      const LatticeVector g = LatticeVector::gamma(n, j);
      const CVector zg = add(z, lattice_embed(g, torus));
      CMatrix lhs = to_complex(bundle.cocycle->V[j - 1]);
      lhs *= std::exp(exponent(d, zg)) * std::exp(kImag * ay / d.r) * psi_z_inv;
      const CMatrix rhs = automorphy_eval(foa, g, z);
      rep.conjugation_residual_max = std::max(
          rep.conjugation_residual_max, frobenius_norm(CMatrix(lhs - rhs)) / std::max(frobenius_norm(rhs), 1e-300));
    }
    for (int k = 1; k <= n; ++k) {
      const LatticeVector g = LatticeVector::gamma_prime(n, k);
      const CVector zg = add(z, lattice_embed(g, torus));
      CMatrix lhs = to_complex(bundle.cocycle->U[k - 1]);
      lhs *= std::exp(exponent(d, zg)) * psi_z_inv;
      const CMatrix rhs = automorphy_eval(foa, g, z);
      rep.conjugation_residual_max = std::max(
          rep.conjugation_residual_max, frobenius_norm(CMatrix(lhs - rhs)) / std::max(frobenius_norm(rhs), 1e-300));
    }
  }
  return rep;
}

}  // namespace pfm
