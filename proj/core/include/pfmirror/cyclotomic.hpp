#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pfmirror/matrix.hpp"
#include "pfmirror/scalar.hpp"

namespace pfm {

// Dense polynomial over Q, lowest degree first, no trailing zeros.
using RatPoly = std::vector<Rational>;

// r-th cyclotomic polynomial with integer coefficients, monic.
RatPoly cyclotomic_polynomial(int r);

// Q(ζ_r) = Q[x]/(Φ_r). Instances are interned per r.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int r);

  [[nodiscard]] int order() const { return r_; }
  [[nodiscard]] int degree() const { return static_cast<int>(phi_.size()) - 1; }
  [[nodiscard]] const RatPoly& modulus() const { return phi_; }
  // Reduced coefficients of ζ_r^k, any integer k.
  [[nodiscard]] const std::vector<Rational>& zeta_power(long long k) const;

  explicit CyclotomicField(int r);

 private:
  int r_;
  RatPoly phi_;
  std::vector<std::vector<Rational>> powers_;  // ζ^0..ζ^{r-1}
};

// Element of Q(ζ_r) in the power basis 1, ζ, …, ζ^{φ(r)-1}.
//
// A default or integer-constructed element is an unbound rational constant;
// it adopts the field of whatever it is combined with. This lets the generic
// matrix code write S(0) and S(1).
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long long v) : constant_(v) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(Rational v) : constant_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs);

  static Cyclotomic zeta_power(int r, long long k);
  static Cyclotomic zeta_power(const std::shared_ptr<const CyclotomicField>& field, long long k);

  [[nodiscard]] bool bound() const { return field_ != nullptr; }
  [[nodiscard]] const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  // Coefficients in the power basis; an unbound constant reports [c].
  [[nodiscard]] std::vector<Rational> coefficients() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] std::complex<double> to_complex() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] Cyclotomic inverse() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  friend Cyclotomic operator-(Cyclotomic a);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  void bind_to(const std::shared_ptr<const CyclotomicField>& f);
  void unify(const Cyclotomic& o);

  std::shared_ptr<const CyclotomicField> field_;
  Rational constant_;          // used while unbound
  std::vector<Rational> c_;    // length degree() while bound
};

using CycloMatrix = Matrix<Cyclotomic>;

template <>
struct FieldTraits<Cyclotomic> {
  static constexpr bool exact = true;
  static bool is_zero(const Cyclotomic& x, double /*tol*/ = 0) { return x.is_zero(); }
  static double magnitude(const Cyclotomic& x) { return std::abs(x.to_complex()); }
  static Cyclotomic zero_like(const Cyclotomic&) { return 0; }
  static Cyclotomic one_like(const Cyclotomic&) { return 1; }
  static Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }
};

CMatrix to_complex(const CycloMatrix& m);
CycloMatrix to_cyclo(const RatMatrix& m);

// Polynomial helpers shared with tests.
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
// Quotient and remainder of a by monic-or-not b.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);
void poly_trim(RatPoly& p);

}  // namespace pfm
