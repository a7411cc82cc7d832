#include "pfmirror/bundle.hpp"

#include "pfmirror/errors.hpp"

namespace pfm {

void BundleData::check(int torus_n) const {
  if (r < 1) throw InputError("rank r must be positive, got " + std::to_string(r));
  if (!A.square()) throw DimensionError("A must be square, got " + A.shape());
  if (n() != torus_n) {
    throw DimensionError("A is " + A.shape() + " but the torus has n = " + std::to_string(torus_n));
  }
  if (static_cast<int>(mu.size()) != torus_n) throw DimensionError("mu has the wrong length");
  if (cocycle) {
    cocycle->check_shapes();
    if (cocycle->n() != torus_n) throw DimensionError("cocycle set has the wrong number of matrices");
  }
}

namespace {

std::vector<PiLinear> rat_times(const RatMatrix& m, const std::vector<PiLinear>& v) {
  std::vector<PiLinear> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) out[i] += v[k] * m(i, k);
  return out;
}

double numeric_tolerance(const CMatrix& a, const CMatrix& b) {
  return kNumericTolerance * std::max(1.0, max_abs(a) * max_abs(b));
}

}  // namespace

std::vector<PiComplex> mu_from_pq(const std::vector<PiLinear>& p, const std::vector<PiLinear>& q,
                                  const TorusData& torus) {
  const int n = torus.n();
  if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n) {
    throw DimensionError("p and q must have length n");
  }
  const QCMatrix Tt = torus.exact().transpose();
  std::vector<PiComplex> mu(n);
  for (int i = 0; i < n; ++i) {
    PiComplex acc(p[i]);
    for (int k = 0; k < n; ++k) acc += Tt(i, k) * PiComplex(q[k]);
    mu[i] = acc;
  }
  return mu;
}

HolomorphyReport is_holomorphic(const BundleData& bundle, const TorusData& torus) {
  bundle.check(torus.n());
  HolomorphyReport rep;
  if (torus.is_exact()) {
    const QCMatrix& T = torus.exact();
    const QCMatrix A = to_qc(bundle.A);
    const QCMatrix AT = A * T;
    const QCMatrix at_res = AT - AT.transpose();
    const QCMatrix W = exact_t_minus_tbar_inverse(torus);
    const QCMatrix M = (T * W).transpose() * A.transpose() * W;
    const QCMatrix m_res = M - M.transpose();
    rep.exact = true;
    rep.holomorphic = is_zero_matrix(at_res);
    rep.curvature02_symmetric = is_zero_matrix(m_res);
    rep.at_residual = to_complex(at_res);
    rep.curvature02_residual = to_complex(m_res);
    return rep;
  }
  const CMatrix& T = torus.numeric();
  const CMatrix A = to_complex(bundle.A);
  const CMatrix AT = A * T;
  const CMatrix W = t_minus_tbar_inverse(torus);
  const CMatrix M = (T * W).transpose() * A.transpose() * W;
  rep.at_residual = AT - AT.transpose();
  rep.curvature02_residual = M - M.transpose();
  rep.holomorphic = is_zero_matrix(rep.at_residual, numeric_tolerance(A, T));
  rep.curvature02_symmetric =
      is_zero_matrix(rep.curvature02_residual, numeric_tolerance(A, W) * std::max(1.0, max_abs(T * W)));
  return rep;
}

void require_holomorphic(const BundleData& bundle, const TorusData& torus) {
  require_valid(torus);
  if (!is_holomorphic(bundle, torus).holomorphic) {
    throw PreconditionError("bundle is not holomorphic: AT is not symmetric");
  }
}

MuSplit mu_split(const std::vector<PiComplex>& mu, const TorusData& torus) {
  const int n = torus.n();
  if (static_cast<int>(mu.size()) != n) throw DimensionError("mu has the wrong length");
  MuSplit out;
  if (torus.is_exact()) {
    const QCMatrix Tt = torus.exact().transpose();
    auto inv = inverse(imag_part(Tt));
    if (!inv) throw PreconditionError("Im T is singular");
    std::vector<PiLinear> re(n), im(n);
    for (int i = 0; i < n; ++i) {
      re[i] = mu[i].re;
      im[i] = mu[i].im;
    }
    out.q = rat_times(*inv, im);
    const std::vector<PiLinear> shift = rat_times(real_part(Tt), out.q);
    out.p.resize(n);
    for (int i = 0; i < n; ++i) out.p[i] = re[i] - shift[i];
    for (int i = 0; i < n; ++i) {
      out.p_numeric.push_back(out.p[i].to_double());
      out.q_numeric.push_back(out.q[i].to_double());
    }
    return out;
  }
  const CMatrix Tt = torus.numeric().transpose();
  auto inv = inverse(imag_part(Tt));
  if (!inv) throw PreconditionError("Im T is singular");
  std::vector<double> re(n), im(n);
  for (int i = 0; i < n; ++i) {
    re[i] = mu[i].re.to_double();
    im[i] = mu[i].im.to_double();
  }
  out.q_numeric = *inv * im;
  const std::vector<double> shift = real_part(Tt) * out.q_numeric;
  for (int i = 0; i < n; ++i) out.p_numeric.push_back(re[i] - shift[i]);
  return out;
}

Complex PairingForm::evaluate(const CVector& z, const CVector& w) const {
  const std::size_t n = R.rows();
  if (z.size() != n || w.size() != n) throw DimensionError("pairing argument size mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += z[i] * R(i, j) * std::conj(w[j]);
  return acc;
}

PairingForm curvature_R(const BundleData& bundle, const TorusData& torus) {
  require_holomorphic(bundle, torus);
  PairingForm form;
  if (torus.is_exact()) {
    const QCMatrix W = exact_t_minus_tbar_inverse(torus);
    // 4πR = 4π (i/2π) Wᵗ A = 2i Wᵗ A
    const QCMatrix via_w = QComplex(0, 2) * (W.transpose() * to_qc(bundle.A));
    auto y_inv = inverse(imag_part(torus.exact()));
    if (!y_inv) throw PreconditionError("Im T is singular");
    const RatMatrix via_y = y_inv->transpose() * to_rat(bundle.A);
    if (!(via_w == to_qc(via_y))) throw std::logic_error("closed forms of R disagree");
    if (!is_symmetric(via_y)) throw std::logic_error("R is not symmetric on holomorphic data");
    form.four_pi_R = via_y;
    form.R = to_double(via_y);
    form.R *= 1.0 / (4.0 * kPi);
    return form;
  }
  const CMatrix W = t_minus_tbar_inverse(torus);
  CMatrix via_w = W.transpose() * to_complex(bundle.A);
  via_w *= Complex(0.0, 1.0 / (2.0 * kPi));
  auto y_inv = inverse(imag_part(torus.numeric()));
  if (!y_inv) throw PreconditionError("Im T is singular");
  RMatrix via_y = y_inv->transpose() * to_double(to_rat(bundle.A));
  via_y *= 1.0 / (4.0 * kPi);
  const double tol = 1e-10 * std::max(1.0, max_abs(via_y));
  if (!is_zero_matrix(CMatrix(via_w - to_complex(via_y)), tol)) {
    throw std::logic_error("closed forms of R disagree");
  }
  form.R = via_y;
  return form;
}

QComplex pairing_over_pi(const PairingForm& form, const TorusData& torus, const LatticeVector& a,
                         const LatticeVector& b) {
  if (!form.four_pi_R) throw PreconditionError("exact pairing needs an exact torus");
  const std::vector<QComplex> va = lattice_embed_over_2pi(a, torus);
  const std::vector<QComplex> vb = lattice_embed_over_2pi(b, torus);
  const RatMatrix& R4 = *form.four_pi_R;
  QComplex acc;
  for (std::size_t i = 0; i < va.size(); ++i)
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (R4(i, j) == 0) continue;
      acc += va[i] * QComplex(R4(i, j)) * vb[j].conj();
    }
  return acc;
}

Complex pairing_value(const PairingForm& form, const TorusData& torus, const LatticeVector& a,
                      const LatticeVector& b) {
  return form.evaluate(lattice_embed(a, torus), lattice_embed(b, torus));
}

GeneratorPairings generator_pairings(const BundleData& bundle, const TorusData& torus) {
  const PairingForm form = curvature_R(bundle, torus);
  const int n = torus.n();
  GeneratorPairings g;
  g.n = n;
  g.exact = form.four_pi_R.has_value();
  g.r_real_symmetric = g.exact ? is_symmetric(*form.four_pi_R)
                               : is_symmetric(form.R, 1e-12 * std::max(1.0, max_abs(form.R)));
  g.gamma_gamma_num = g.gammap_gammap_num = g.gamma_gammap_num = g.gammap_gamma_num = CMatrix(n, n);
  if (g.exact) {
    g.gamma_gamma = g.gammap_gammap = g.gamma_gammap = g.gammap_gamma = QCMatrix(n, n);
  }
  bool match = true;
  double dev = 0.0;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const LatticeVector gj = LatticeVector::gamma(n, j);
      const LatticeVector gk = LatticeVector::gamma(n, k);
      const LatticeVector pj = LatticeVector::gamma_prime(n, j);
      const LatticeVector pk = LatticeVector::gamma_prime(n, k);
      const Rational akj = bundle.A(k - 1, j - 1);
      const double akj_d = static_cast<double>(bundle.A(k - 1, j - 1));
      if (g.exact) {
        g.gamma_gamma(j - 1, k - 1) = pairing_over_pi(form, torus, gj, gk);
        g.gammap_gammap(j - 1, k - 1) = pairing_over_pi(form, torus, pj, pk);
        g.gamma_gammap(j - 1, k - 1) = pairing_over_pi(form, torus, gj, pk);
        g.gammap_gamma(k - 1, j - 1) = pairing_over_pi(form, torus, pk, gj);
        match = match && g.gamma_gamma(j - 1, k - 1).im == 0 &&
                g.gammap_gammap(j - 1, k - 1).im == 0 &&
                g.gamma_gammap(j - 1, k - 1).im == -akj && g.gammap_gamma(k - 1, j - 1).im == akj;
      }
      g.gamma_gamma_num(j - 1, k - 1) = pairing_value(form, torus, gj, gk);
      g.gammap_gammap_num(j - 1, k - 1) = pairing_value(form, torus, pj, pk);
      g.gamma_gammap_num(j - 1, k - 1) = pairing_value(form, torus, gj, pk);
      g.gammap_gamma_num(k - 1, j - 1) = pairing_value(form, torus, pk, gj);
      dev = std::max({dev, std::abs(g.gamma_gamma_num(j - 1, k - 1).imag()),
                      std::abs(g.gammap_gammap_num(j - 1, k - 1).imag()),
                      std::abs(g.gamma_gammap_num(j - 1, k - 1).imag() + kPi * akj_d),
                      std::abs(g.gammap_gamma_num(k - 1, j - 1).imag() - kPi * akj_d)});
    }
  }
  g.max_deviation = dev;
  if (!g.exact) {
    double scale = 1.0;
    for (const CMatrix* m : {&g.gamma_gamma_num, &g.gammap_gammap_num, &g.gamma_gammap_num})
      scale = std::max(scale, max_abs(*m));
    match = dev <= 1e-9 * scale;
  }
  g.imaginary_parts_match = match;
  return g;
}

CVector connection_local_xy(const BundleData& bundle, const std::vector<double>& x) {
  const int n = bundle.n();
  if (static_cast<int>(x.size()) != n || static_cast<int>(bundle.mu.size()) != n) {
    throw DimensionError("connection point has the wrong dimension");
  }
  const Complex factor(0.0, -1.0 / (2.0 * kPi * bundle.r));
  CVector c(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = bundle.mu[i].to_complex();
    for (int k = 0; k < n; ++k) acc += static_cast<double>(bundle.A(i, k)) * x[k];
    c[i] = factor * acc;
  }
  return c;
}

CurvatureCheck connection_curvature_check(const BundleData& bundle, const std::vector<double>& x,
                                          double step) {
  const int n = bundle.n();
  CurvatureCheck out;
  // Σ_{k,i} A_ik dx_k ^ dy_i = dxᵗ Aᵗ dy
  RatMatrix At = to_rat(bundle.A).transpose();
  out.expected_times_2pi =
      exterior::two_form_from_matrix(At, 1, 0) * QComplex(Rational(0), Rational(-1, bundle.r));
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    std::vector<double> xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    const CVector cp = connection_local_xy(bundle, xp);
    const CVector cm = connection_local_xy(bundle, xm);
    for (int i = 0; i < n; ++i) {
      // coefficient of dx_k ^ dy_i in d(Σ c_i dy_i), scaled by 2π
      const Complex fd = 2.0 * kPi * (cp[i] - cm[i]) / (2.0 * step);
      const Complex expected = out.expected_times_2pi.coefficient({k, n + i}).to_complex();
      err = std::max(err, std::abs(fd - expected));
    }
  }
  out.max_abs_error = err;
  return out;
}

}  // namespace pfm
