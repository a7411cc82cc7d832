#include "pfmirror/mirror.hpp"

#include <Eigen/SVD>
#include <numeric>

#include "pfmirror/errors.hpp"

namespace pfm {

SymplecticData symplectic_data(const TorusData& torus) {
  require_valid(torus);
  SymplecticData out;
  if (torus.is_exact()) {
    auto inv = inverse(torus.exact());
    if (!inv) throw PreconditionError("T is singular");
    const QCMatrix t = inv->transpose();
    out.omega_exact = imag_part(t);
    out.bfield_exact = real_part(t);
    out.omega = to_double(*out.omega_exact);
    out.bfield = to_double(*out.bfield_exact);
    return out;
  }
  auto inv = inverse(torus.numeric());
  if (!inv) throw PreconditionError("T is singular");
  const CMatrix t = inv->transpose();
  out.omega = imag_part(t);
  out.bfield = real_part(t);
  return out;
}

LagrangianCheck lagrangian_check(const IntMatrix& A, const TorusData& torus) {
  if (!A.square() || static_cast<int>(A.rows()) != torus.n()) {
    throw DimensionError("A is " + A.shape() + " but the torus has n = " + std::to_string(torus.n()));
  }
  const SymplecticData sd = symplectic_data(torus);
  LagrangianCheck out;
  if (torus.is_exact()) {
    const RatMatrix a = to_rat(A);
    out.lagrangian = is_symmetric(RatMatrix(*sd.omega_exact * a));
    out.flat_system = is_symmetric(RatMatrix(*sd.bfield_exact * a));
    out.at_symmetric = is_symmetric(QCMatrix(to_qc(A) * torus.exact()));
  } else {
    const RMatrix a = to_double(to_rat(A));
    const RMatrix wa = sd.omega * a;
    const RMatrix ba = sd.bfield * a;
    const CMatrix at = to_complex(A) * torus.numeric();
    out.lagrangian = is_symmetric(wa, 1e-12 * std::max(1.0, max_abs(wa)));
    out.flat_system = is_symmetric(ba, 1e-12 * std::max(1.0, max_abs(ba)));
    out.at_symmetric = is_symmetric(at, 1e-12 * std::max(1.0, max_abs(at)));
  }
  out.equivalent_to_AT_symmetric = (out.lagrangian && out.flat_system) == out.at_symmetric;
  return out;
}

void AffineLagrangian::check() const {
  if (r < 1) throw InputError("Lagrangian rank r must be positive");
  if (!A.square()) throw DimensionError("Lagrangian A must be square");
  if (static_cast<int>(p.size()) != n()) throw DimensionError("Lagrangian p has the wrong length");
  if (!q.empty() && static_cast<int>(q.size()) != n()) throw DimensionError("Lagrangian q has the wrong length");
}

AlphaBeta alpha_beta(const AffineLagrangian& first, const AffineLagrangian& second) {
  first.check();
  second.check();
  if (first.n() != second.n()) throw DimensionError("Lagrangians over different n");
  AlphaBeta out;
  const Rational inv_r(1, first.r);
  const Rational inv_s(1, second.r);
  out.alpha = to_rat(first.A) * inv_r - to_rat(second.A) * inv_s;
  for (int i = 0; i < first.n(); ++i) out.beta.push_back(second.p[i] * inv_s - first.p[i] * inv_r);
  return out;
}

MinorsReport minors_vanish(const RatMatrix& alpha) {
  MinorsReport out;
  const std::size_t rows = alpha.rows(), cols = alpha.cols();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t l = k + 1; l < cols; ++l)
          if (alpha(i, k) * alpha(j, l) - alpha(i, l) * alpha(j, k) != 0)
            out.nonzero.push_back({static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(k + 1),
                                   static_cast<int>(l + 1)});
  out.vanish = out.nonzero.empty();
  out.rank = rank(alpha);
  if (out.vanish != (out.rank <= 1)) throw std::logic_error("2x2 minors disagree with rank");
  return out;
}

namespace {

struct Solve {
  bool consistent = false;
  std::size_t rank = 0;
  std::vector<PiLinear> particular;
  RatMatrix kernel;
};

Solve solve_exact(const RatMatrix& alpha, const std::vector<PiLinear>& beta) {
  const std::size_t rows = alpha.rows(), n = alpha.cols();
  RatMatrix aug(rows, n + 2);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = alpha(i, j);
    aug(i, n) = beta[i].rat;
    aug(i, n + 1) = beta[i].pi;
  }
  const Echelon<Rational> e = reduced_row_echelon(aug);
  Solve s;
  s.consistent = true;
  std::vector<int> pivot_of_col(n, -1);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= n) {
      s.consistent = false;
    } else {
      pivot_of_col[e.pivots[i]] = static_cast<int>(i);
      ++s.rank;
    }
  }
  if (!s.consistent) return s;
  s.particular.assign(n, PiLinear{});
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_of_col[j] < 0) continue;
    const auto row = static_cast<std::size_t>(pivot_of_col[j]);
    s.particular[j] = PiLinear(e.reduced(row, n), e.reduced(row, n + 1));
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (pivot_of_col[j] < 0) free_cols.push_back(j);
  s.kernel = RatMatrix(n, free_cols.size(), Rational(0));
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    s.kernel(free_cols[f], f) = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0) s.kernel(j, f) = -e.reduced(static_cast<std::size_t>(pivot_of_col[j]), free_cols[f]);
  }
  return s;
}

IntersectionWitness make_witness(const RatMatrix& alpha, const std::vector<PiLinear>& beta, const Solve& s) {
  IntersectionWitness w;
  for (std::size_t i = 0; i < alpha.rows() && w.pivot_row == 0; ++i)
    for (std::size_t j = 0; j < alpha.cols(); ++j)
      if (alpha(i, j) != 0) {
        w.pivot_row = static_cast<int>(i + 1);
        w.pivot_col = static_cast<int>(j + 1);
        break;
      }
  if (w.pivot_row > 0) {
    const std::size_t i = w.pivot_row - 1, j = w.pivot_col - 1;
    const Rational a = alpha(i, j);
    for (std::size_t k = 0; k < alpha.cols(); ++k) w.row_coefficients.push_back(k == j ? Rational(0) : -alpha(i, k) / a);
    w.row_constant = beta[i] / a;
  }
  w.particular = s.particular;
  w.kernel = s.kernel;
  return w;
}

bool is_zero_alpha(const RatMatrix& alpha) { return is_zero_matrix(alpha); }

bool in_two_pi_z(const std::vector<PiLinear>& beta) {
  for (const auto& b : beta) {
    if (b.rat != 0) return false;
    const Rational half = b.pi / 2;
    if (denominator(half) != 1) return false;
  }
  return true;
}

// Integer rows N with N α = 0 spanning the left kernel, scaled to be integral.
std::vector<std::vector<BigInt>> left_kernel(const RatMatrix& alpha) {
  const Solve s = solve_exact(alpha.transpose(), std::vector<PiLinear>(alpha.cols()));
  std::vector<std::vector<BigInt>> out;
  for (std::size_t f = 0; f < s.kernel.cols(); ++f) {
    BigInt l = 1;
    for (std::size_t i = 0; i < s.kernel.rows(); ++i) l = lcm(l, BigInt(denominator(s.kernel(i, f))));
    std::vector<BigInt> row;
    for (std::size_t i = 0; i < s.kernel.rows(); ++i) {
      const Rational v = s.kernel(i, f) * Rational(l);
      row.push_back(numerator(v));
    }
    out.push_back(std::move(row));
  }
  return out;
}

IntersectionResult torus_mode(const RatMatrix& alpha, const std::vector<PiLinear>& beta,
                              const IntersectionOptions& o) {
  if (!o.first || !o.second) throw InputError("torus mode needs both Lagrangians");
  const AffineLagrangian& L1 = *o.first;
  const AffineLagrangian& L2 = *o.second;
  const int n = L1.n();
  const std::int64_t K = o.bound >= 0 ? o.bound : static_cast<std::int64_t>(L1.r) * L2.r;
  const std::size_t digits = 3 * static_cast<std::size_t>(n);
  long double count = 1;
  for (std::size_t d = 0; d < digits; ++d) count *= static_cast<long double>(2 * K + 1);
  if (count > static_cast<long double>(o.max_candidates)) {
    throw GuardError("torus mode would test " + std::to_string(static_cast<double>(count)) +
                     " shifts; lower the bound K");
  }

  IntersectionResult res;
  const std::vector<std::vector<BigInt>> N =
      is_zero_alpha(alpha) ? [&] {
        std::vector<std::vector<BigInt>> id(n, std::vector<BigInt>(n, 0));
        for (int i = 0; i < n; ++i) id[i][i] = 1;
        return id;
      }()
                           : left_kernel(alpha);
  // Rational part of β is never shifted.
  for (const auto& row : N) {
    Rational acc = 0;
    for (int i = 0; i < n; ++i) acc += Rational(row[i]) * beta[i].rat;
    if (acc != 0) {
      res.empty = true;
      res.note = "rational part of beta is outside the column space of alpha";
      return res;
    }
  }
  // π-coefficient of the shift: (2/s)B k' - (2/r)A k + 2m. Scale by r*s.
  const std::int64_t rs = static_cast<std::int64_t>(L1.r) * L2.r;
  // Per kernel row: integer coefficients on (k, k', m) and the target.
  struct Row {
    std::vector<BigInt> ck, ckp, cm;
    BigInt target_num;
    BigInt target_den;
  };
  std::vector<Row> rows;
  for (const auto& nrow : N) {
    Row row;
    row.ck.assign(n, 0);
    row.ckp.assign(n, 0);
    row.cm.assign(n, 0);
    Rational t = 0;
    for (int i = 0; i < n; ++i) t += Rational(nrow[i]) * beta[i].pi * rs;
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < n; ++i) {
        row.ck[c] += nrow[i] * (-2 * L2.r) * L1.A(i, c);
        row.ckp[c] += nrow[i] * (2 * L1.r) * L2.A(i, c);
      }
    for (int i = 0; i < n; ++i) row.cm[i] = nrow[i] * 2 * rs;
    row.target_num = numerator(t);
    row.target_den = denominator(t);
    rows.push_back(std::move(row));
  }
  std::vector<std::int64_t> v(digits, -K);  // k (n), k' (n), m (n)
  for (;;) {
    bool ok = true;
    for (const Row& row : rows) {
      BigInt acc = 0;
      for (int c = 0; c < n; ++c) acc += row.ck[c] * v[c] + row.ckp[c] * v[n + c] + row.cm[c] * v[2 * n + c];
      // N(β_pi + shift) = 0  <=>  acc * den = -num
      if (acc * row.target_den != -row.target_num) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<PiLinear> shifted = beta;
      for (int i = 0; i < n; ++i) {
        Rational sh = 2 * Rational(v[2 * n + i]);
        for (int c = 0; c < n; ++c) {
          sh += Rational(2 * L2.A(i, c) * v[n + c], L2.r);
          sh -= Rational(2 * L1.A(i, c) * v[c], L1.r);
        }
        shifted[i].pi += sh;
      }
      res.beta_used = shifted;
      const Solve s = solve_exact(alpha, shifted);
      if (!s.consistent) throw std::logic_error("torus-mode shift accepted an inconsistent system");
      res.empty = false;
      res.alpha_rank = s.rank;
      res.codim = static_cast<int>(s.rank);
      res.witness = make_witness(alpha, shifted, s);
      res.note = "torus mode: consistent after lattice shift";
      return res;
    }
    std::size_t pos = 0;
    while (pos < digits && ++v[pos] > K) v[pos++] = -K;
    if (pos == digits) break;
  }
  res.empty = true;
  res.note = "torus mode: no shift within bound makes the system consistent";
  return res;
}

std::size_t svd_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

IntersectionResult float_mode(const RatMatrix& alpha, const std::vector<PiLinear>& beta, double tol) {
  const auto rows = static_cast<Eigen::Index>(alpha.rows());
  const auto cols = static_cast<Eigen::Index>(alpha.cols());
  Eigen::MatrixXd a(rows, cols), ab(rows, cols + 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) ab(i, j) = a(i, j) = to_double(alpha(i, j));
    ab(i, cols) = beta[i].to_double();
  }
  IntersectionResult res;
  res.authoritative = false;
  res.alpha_rank = svd_rank(a, tol);
  if (res.alpha_rank == 0) {
    bool lattice = true;
    for (const auto& b : beta) {
      const double q = b.to_double() / (2.0 * kPi);
      if (std::abs(q - std::round(q)) > tol) lattice = false;
    }
    res.empty = !lattice;
    res.codim = lattice ? 0 : -1;
    res.note = "floating mode (non-authoritative)";
    return res;
  }
  const bool consistent = svd_rank(ab, tol) == res.alpha_rank;
  res.empty = !consistent;
  res.codim = consistent ? static_cast<int>(res.alpha_rank) : -1;
  res.note = "floating mode (non-authoritative)";
  return res;
}

}  // namespace

IntersectionResult intersection_codim(const RatMatrix& alpha, const std::vector<PiLinear>& beta,
                                      const IntersectionOptions& options) {
  if (!alpha.square() || alpha.rows() != beta.size()) throw DimensionError("alpha/beta size mismatch");
  const MinorsReport minors = minors_vanish(alpha);
  IntersectionResult res;
  switch (options.mode) {
    case IntersectionMode::floating:
      res = float_mode(alpha, beta, options.float_tolerance);
      break;
    case IntersectionMode::torus:
      res = torus_mode(alpha, beta, options);
      res.alpha_rank = minors.rank;
      break;
    case IntersectionMode::covering: {
      res.alpha_rank = minors.rank;
      res.beta_used = beta;
      if (is_zero_alpha(alpha)) {
        if (in_two_pi_z(beta)) {
          res.empty = false;
          res.codim = 0;
          res.note = "alpha = 0 and beta in 2 pi Z^n: the graphs coincide";
        } else {
          res.note = "alpha = 0 and beta not in 2 pi Z^n: parallel, disjoint graphs";
        }
        break;
      }
      const Solve s = solve_exact(alpha, beta);
      if (!s.consistent) {
        res.note = "rank(alpha | beta) > rank(alpha)";
        break;
      }
      res.empty = false;
      res.codim = static_cast<int>(s.rank);
      res.witness = make_witness(alpha, beta, s);
      res.note = "consistent: codim = rank(alpha)";
      break;
    }
  }
  res.minors_vanish = minors.vanish;
  return res;
}

bool witness_satisfies(const RatMatrix& alpha, const std::vector<PiLinear>& beta, const IntersectionWitness& w) {
  const std::size_t n = alpha.cols();
  if (w.particular.size() != n) return false;
  for (std::size_t i = 0; i < alpha.rows(); ++i) {
    PiLinear acc;
    for (std::size_t k = 0; k < n; ++k) acc += w.particular[k] * alpha(i, k);
    if (!(acc == beta[i])) return false;
  }
  if (!is_zero_matrix(RatMatrix(alpha * w.kernel))) return false;
  if (w.kernel.cols() + rank(alpha) != n) return false;
  // The pivot row reproduces x_j from the other coordinates.
  if (w.pivot_row > 0) {
    const std::size_t j = w.pivot_col - 1;
    PiLinear xj = w.row_constant;
    for (std::size_t k = 0; k < n; ++k) xj += w.particular[k] * w.row_coefficients[k];
    if (!(xj == w.particular[j])) return false;
  }
  return true;
}

Theorem41Report theorem41_check(const AffineLagrangian& first, const AffineLagrangian& second,
                                const TorusData* torus, const IntersectionOptions& options) {
  if (torus) {
    if (!lagrangian_check(first.A, *torus).lagrangian || !lagrangian_check(second.A, *torus).lagrangian) {
      throw PreconditionError("both graphs must be Lagrangian");
    }
  }
  const AlphaBeta ab = alpha_beta(first, second);
  IntersectionOptions opts = options;
  opts.first = &first;
  opts.second = &second;
  Theorem41Report rep;
  rep.codim = intersection_codim(ab.alpha, ab.beta, opts);
  rep.cone_pf_possible = rep.codim.minors_vanish;
  rep.theorem_satisfied = !rep.cone_pf_possible || rep.codim.empty || rep.codim.codim <= 1;
  rep.outside_hypothesis = rep.cone_pf_possible && !is_zero_alpha(ab.alpha) && rep.codim.empty;
  return rep;
}

}  // namespace pfm
