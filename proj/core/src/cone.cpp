#include "pfmirror/cone.hpp"

#include "pfmirror/errors.hpp"

namespace pfm {

using exterior::FormElement;

namespace {

Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational out = 1;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

Rational ipow(const Rational& base, int e) {
  Rational out = 1;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

// f^k with f^0 = 1 (a scalar of exponent 0).
FormElement power(const FormElement& f, int k) {
  if (k == 0) return FormElement::scalar(f.n(), QComplex(1));
  return exterior::wedge_power(f, k);
}

FormElement scaled(const FormElement& f, const Rational& s) { return f * QComplex(s); }

int require_same_n(const IntMatrix& A, const IntMatrix& B) {
  if (!A.square() || !B.square() || A.rows() != B.rows()) {
    throw DimensionError("A and B must be square of the same size, got " + A.shape() + " and " + B.shape());
  }
  return static_cast<int>(A.rows());
}

}  // namespace

FormElement normalized_curvature(int r, const IntMatrix& A) {
  if (r < 1) throw InputError("rank must be positive");
  if (!A.square()) throw DimensionError("A must be square");
  return exterior::two_form_from_matrix(to_rat(A).transpose(), Rational(1, r), 1);
}

ChernVector chern_character(int r, const IntMatrix& A) {
  const int n = static_cast<int>(A.rows());
  const FormElement omega = normalized_curvature(r, A);
  ChernVector out;
  out.ch.push_back(FormElement::scalar(n, QComplex(r)));
  Rational factorial = 1;
  for (int i = 1; i <= n; ++i) {
    factorial *= i;
    FormElement term = scaled(exterior::wedge_power(omega, i), Rational(r) / factorial);
    out.ch.push_back(std::move(term));
  }
  return out;
}

ChernVector chern_character(const BundleData& bundle, const TorusData& torus) {
  require_holomorphic(bundle, torus);
  return chern_character(bundle.r, bundle.A);
}

ChernVector operator+(const ChernVector& a, const ChernVector& b) {
  if (a.ch.size() != b.ch.size()) throw DimensionError("Chern vectors of different length");
  ChernVector out;
  for (std::size_t i = 0; i < a.ch.size(); ++i) out.ch.push_back(a.ch[i] + b.ch[i]);
  return out;
}

ConeTarget cone_target(int r, const IntMatrix& A, int s, const IntMatrix& B) {
  require_same_n(A, B);
  if (r < 1 || s < 1) throw InputError("ranks must be positive");
  return {r + s, A + B};
}

ConeFlatness cone_projectively_flat(int r, const IntMatrix& A, int s, const IntMatrix& B) {
  require_same_n(A, B);
  ConeFlatness out;
  const FormElement diff = normalized_curvature(r, A) - normalized_curvature(s, B);
  out.c2_form = exterior::wedge_power(diff, 2);
  const RatMatrix alpha = to_rat(A) * Rational(1, r) - to_rat(B) * Rational(1, s);
  out.minors = minors_vanish(alpha);
  out.pf = out.c2_form.is_zero();
  if (out.pf != out.minors.vanish) throw std::logic_error("wedge square and minors disagree");
  return out;
}

ChernChain chern_chain(int r, const IntMatrix& A, int s, const IntMatrix& B, int t, const IntMatrix& C) {
  require_same_n(A, B);
  require_same_n(A, C);
  const FormElement X = normalized_curvature(r, A);
  const FormElement Y = normalized_curvature(s, B);
  const FormElement Z = normalized_curvature(t, C);
  const FormElement X2 = exterior::wedge_power(X, 2);
  const FormElement Y2 = exterior::wedge_power(Y, 2);
  const FormElement Z2 = exterior::wedge_power(Z, 2);
  ChernChain out;
  out.c0 = r + s == t;
  out.c1 = scaled(X, r) + scaled(Y, s) == scaled(Z, t);
  out.c2 = scaled(X2, Rational(r, 2)) + scaled(Y2, Rational(s, 2)) == scaled(Z2, Rational(t, 2));
  out.c2_prime = scaled(X2, Rational(r * t - r * r)) + scaled(Y2, Rational(s * t - s * s)) ==
                 scaled(exterior::wedge(X, Y), Rational(2 * r * s));
  out.c2_double_prime = exterior::wedge_power(X - Y, 2).is_zero();
  out.c2_reduction_consistent =
      !(out.c0 && out.c1) || (out.c2 == out.c2_prime && out.c2_prime == out.c2_double_prime);
  return out;
}

CiFactorization ci_factorization_check(int i, int r, int s, const IntMatrix& A, const IntMatrix& B) {
  const int n = require_same_n(A, B);
  if (i < 3 || i > n) {
    throw GuardError("ci factorization needs 3 <= i <= n, got i = " + std::to_string(i) + ", n = " +
                     std::to_string(n));
  }
  const FormElement X = normalized_curvature(r, A);
  const FormElement Y = normalized_curvature(s, B);
  const Rational R(r), S(s);

  Rational a1 = 0, a2 = 0;
  for (int k = 1; k <= i - 1; ++k) a1 += binom(i - 1, k) * ipow(R, i - 1 - k) * ipow(S, k);
  a1 *= R;
  for (int k = 0; k <= i - 2; ++k) a2 += binom(i - 1, k) * ipow(R, i - 1 - k) * ipow(S, k);
  a2 *= S;
  FormElement left = scaled(power(X, i), a1) + scaled(power(Y, i), a2);
  for (int k = 1; k <= i - 1; ++k) {
    const Rational c = binom(i, k) * ipow(R, i - k) * ipow(S, k);
    left -= scaled(exterior::wedge(power(X, i - k), power(Y, k)), c);
  }

  FormElement sum(n, i - 2);
  for (int l = 0; l <= i - 2; ++l) {
    Rational c = 0;
    for (int k = 1; k <= l; ++k) c += Rational(i - l - 1) * binom(i - 1, k - 1) * ipow(R, i - k) * ipow(S, k);
    for (int k = l + 1; k <= i - 1; ++k) c += Rational(l + 1) * binom(i - 1, k) * ipow(R, i - k) * ipow(S, k);
    sum += scaled(exterior::wedge(power(X, i - l - 2), power(Y, l)), c);
  }
  const FormElement right = exterior::wedge(exterior::wedge_power(X - Y, 2), sum);

  const Rational t = R + S;
  const FormElement chern_side = scaled(scaled(power(X, i), R) + scaled(power(Y, i), S), ipow(t, i - 1)) -
                                 power(scaled(X, R) + scaled(Y, S), i);

  CiFactorization out;
  out.factorization_holds = left == right;
  out.matches_chern_difference = left == chern_side;
  out.left = left;
  out.right = right;
  return out;
}

CocycleSet section5_cocycle() {
  CocycleSet set;
  set.rank = 2;
  set.order = 2;
  set.V.push_back(monomial_to_matrix({{1, 0}, {0, 0}}, 2));
  set.U.push_back(monomial_to_matrix({{0, 1}, {0, 1}}, 2));
  return set;
}

Section5Report section5_fixture(const QComplex& tau, const PiComplex& mu, const PiComplex& nu,
                                const std::optional<CocycleSet>& cocycle_override) {
  if (tau.im <= 0) throw InputError("tau must lie in the upper half plane, got " + format(tau));
  const TorusData torus(QCMatrix{{tau}});
  const IntMatrix zero{{0}};
  const IntMatrix one{{1}};

  Section5Report rep;
  // η = μ + ν + π + πτ
  rep.eta = mu + nu + PiComplex(PiLinear(0, 1)) + PiComplex(PiLinear(0, tau.re), PiLinear(0, tau.im));

  const CocycleSet w = cocycle_override.value_or(section5_cocycle());
  rep.cocycle = verify_cocycle(w, 2, one);
  rep.cocycle_verified = rep.cocycle.valid;

  const ConeTarget target = cone_target(1, zero, 1, one);
  rep.cone_target_ok = target.t == 2 && target.C == one;

  const ChernChain chain = chern_chain(1, zero, 1, one, 2, one);
  const BundleData e1{1, zero, {mu}, std::nullopt};
  const BundleData e2{1, one, {nu}, std::nullopt};
  const BundleData e3{2, one, {rep.eta}, w};
  const bool additive = chern_character(e1, torus) + chern_character(e2, torus) == chern_character(e3, torus);
  rep.chern_ok = chain.c0 && chain.c1 && chain.c2 && chain.c2_reduction_consistent && additive;

  const MuSplit s_mu = mu_split({mu}, torus);
  const MuSplit s_nu = mu_split({nu}, torus);
  const AffineLagrangian l1{1, zero, s_mu.p, s_mu.q};
  const AffineLagrangian l2{1, one, s_nu.p, s_nu.q};
  rep.mirror = theorem41_check(l1, l2, &torus);
  rep.codim_one = !rep.mirror.codim.empty && rep.mirror.codim.codim == 1 && rep.mirror.theorem_satisfied;

  rep.target_holomorphic = is_holomorphic(e3, torus).holomorphic;
  return rep;
}

}  // namespace pfm
