#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfmirror/matrix.hpp"

namespace pfm {

// Complex torus C^n / 2π(Z^n + T Z^n).
//
// The period matrix is always held in double precision; when every entry
// of T is a Gaussian rational the exact copy is kept too and all decisions
// (positivity, symmetry, rank) are made on it.
class TorusData {
 public:
  explicit TorusData(QCMatrix exact_T);
  explicit TorusData(CMatrix numeric_T);

  [[nodiscard]] int n() const { return static_cast<int>(numeric_.rows()); }
  [[nodiscard]] bool is_exact() const { return exact_.has_value(); }
  [[nodiscard]] const QCMatrix& exact() const;
  [[nodiscard]] const CMatrix& numeric() const { return numeric_; }

 private:
  std::optional<QCMatrix> exact_;
  CMatrix numeric_;
};

struct TorusValidation {
  bool im_positive_definite = false;
  bool nonsingular = false;
  // 1-based order of the first leading principal minor of (Im T + Im T^t)/2
  // that is not positive, with its value.
  std::optional<int> failing_minor_order;
  std::optional<std::string> failing_minor_value;
  std::string determinant;  // det T, formatted
  [[nodiscard]] bool valid() const { return im_positive_definite && nonsingular; }
};

// Numeric tolerance used when the torus is not exact.
inline constexpr double kNumericTolerance = 1e-12;

TorusValidation validate_torus(const TorusData& torus);
// Throws PreconditionError with the failing witness when invalid.
void require_valid(const TorusData& torus);

// γ = 2π m + 2π T n'.
struct LatticeVector {
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> n_prime;

  static LatticeVector zero(int n);
  static LatticeVector gamma(int n, int j);        // γ_j, 1-based
  static LatticeVector gamma_prime(int n, int k);  // γ'_k, 1-based
  [[nodiscard]] int dimension() const { return static_cast<int>(m.size()); }
  [[nodiscard]] bool is_zero() const;

  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
  friend LatticeVector operator-(const LatticeVector& a);
  friend LatticeVector operator*(std::int64_t s, const LatticeVector& a);
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

CVector lattice_embed(const LatticeVector& v, const TorusData& torus);
// Exact γ / 2π = m + T n'; requires an exact torus.
std::vector<QComplex> lattice_embed_over_2pi(const LatticeVector& v, const TorusData& torus);

struct RealCoords {
  std::vector<double> x;
  std::vector<double> y;
};
struct ExactRealCoords {
  std::vector<Rational> x;
  std::vector<Rational> y;
};

// z = x + T y with real x, y.
RealCoords zy_coords(const CVector& z, const TorusData& torus);
ExactRealCoords zy_coords(const std::vector<QComplex>& z, const TorusData& torus);
CVector z_from_xy(const std::vector<double>& x, const std::vector<double>& y,
                  const TorusData& torus);

// Common derived matrices.
CMatrix t_minus_tbar_inverse(const TorusData& torus);  // (T - T̄)^{-1}
QCMatrix exact_t_minus_tbar_inverse(const TorusData& torus);

}  // namespace pfm
