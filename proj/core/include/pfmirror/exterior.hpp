#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfmirror/matrix.hpp"
#include "pfmirror/scalar.hpp"

namespace pfm::exterior {

// Translation-invariant form on the real 2n-torus with exact coefficients.
//
// Generators are indexed 0..2n-1 as dx_1..dx_n, dy_1..dy_n. A basis
// monomial is stored as a bitmask; its canonical reading is the strictly
// increasing index tuple, so dy_1 ^ dx_1 is stored as -(dx_1 ^ dy_1).
//
// Every element also carries an integer `inv_4pi2_power` e: the represented
// form is (4 pi^2)^(-e) times the stored rational combination. Wedge adds
// the exponents; sums require equal exponents unless one side is zero.
class FormElement {
 public:
  using Mask = std::uint64_t;

  FormElement() = default;
  explicit FormElement(int n, int inv_4pi2_power = 0);

  static FormElement scalar(int n, const QComplex& c, int inv_4pi2_power = 0);
  // Single generator: index 0..n-1 is dx_{index+1}, n..2n-1 is dy_{index-n+1}.
  static FormElement generator(int n, int index);
  static FormElement dx(int n, int i) { return generator(n, i - 1); }  // 1-based
  static FormElement dy(int n, int j) { return generator(n, n + j - 1); }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int inv_4pi2_power() const { return power_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Mask, QComplex>& terms() const { return terms_; }
  // -1 for the zero element or mixed degrees.
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool homogeneous() const;

  // Coefficient of the wedge of the given generators, in the given order
  // (sign-adjusted against the canonical increasing order).
  [[nodiscard]] QComplex coefficient(const std::vector<int>& generators) const;
  void add_term(const std::vector<int>& generators, const QComplex& c);

  // Human-readable, e.g. "2*dx1^dy1 - dx2^dy2".
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] static std::vector<int> indices(Mask m);

  FormElement& operator+=(const FormElement& o);
  FormElement& operator-=(const FormElement& o);
  FormElement& operator*=(const QComplex& s);

  friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
  friend FormElement operator-(FormElement a, const FormElement& b) { return a -= b; }
  friend FormElement operator*(FormElement a, const QComplex& s) { return a *= s; }
  friend FormElement operator*(const QComplex& s, FormElement a) { return a *= s; }
  friend bool operator==(const FormElement& a, const FormElement& b);

 private:
  void check_compatible(const FormElement& o) const;
  void accumulate(Mask m, const QComplex& c);

  int n_ = 0;
  int power_ = 0;
  std::map<Mask, QComplex> terms_;

  friend FormElement wedge(const FormElement& a, const FormElement& b);
};

// Sign of moving the generators of `b` past those of `a` into increasing
// order; 0 when they share a generator.
int wedge_sign(FormElement::Mask a, FormElement::Mask b);

FormElement wedge(const FormElement& a, const FormElement& b);

// sum_{i,j} scale * M_ij dx_i ^ dy_j
FormElement two_form_from_matrix(const RatMatrix& m, const Rational& scale = 1,
                                 int inv_4pi2_power = 0);

// k-fold wedge of f with itself (k >= 1).
FormElement wedge_power(const FormElement& f, int k);

}  // namespace pfm::exterior
