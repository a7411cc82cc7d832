#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace pfm {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Exact parse of "7", "-3/4", "0.125", "2.5e-3". Throws InputError.
Rational parse_rational(std::string_view text);
// Every finite double is a dyadic rational; this returns it exactly.
Rational rational_from_double(double x);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Gaussian rational re + i*im.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(long long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] bool is_real() const { return im == 0; }
  [[nodiscard]] QComplex conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }
  [[nodiscard]] std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }

  QComplex& operator+=(const QComplex& o) { re += o.re; im += o.im; return *this; }
  QComplex& operator-=(const QComplex& o) { re -= o.re; im -= o.im; return *this; }
  QComplex& operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline const QComplex kI{Rational(0), Rational(1)};

// Real number rat + pi*π with rational parts. π is transcendental, so this
// is a faithful Q-vector-space model of Q + Qπ and equality is exact.
struct PiLinear {
  Rational rat;
  Rational pi;

  PiLinear() = default;
  PiLinear(long long v) : rat(v) {}  // NOLINT(google-explicit-constructor)
  PiLinear(Rational r) : rat(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  PiLinear(Rational r, Rational p) : rat(std::move(r)), pi(std::move(p)) {}

  [[nodiscard]] bool is_zero() const { return rat == 0 && pi == 0; }
  [[nodiscard]] bool is_rational() const { return pi == 0; }
  [[nodiscard]] double to_double() const {
    return pfm::to_double(rat) + pfm::to_double(pi) * kPi;
  }

  PiLinear& operator+=(const PiLinear& o) { rat += o.rat; pi += o.pi; return *this; }
  PiLinear& operator-=(const PiLinear& o) { rat -= o.rat; pi -= o.pi; return *this; }
  PiLinear& operator*=(const Rational& s) { rat *= s; pi *= s; return *this; }
  PiLinear& operator/=(const Rational& s) { rat /= s; pi /= s; return *this; }

  friend PiLinear operator+(PiLinear a, const PiLinear& b) { return a += b; }
  friend PiLinear operator-(PiLinear a, const PiLinear& b) { return a -= b; }
  friend PiLinear operator-(const PiLinear& a) { return {-a.rat, -a.pi}; }
  friend PiLinear operator*(PiLinear a, const Rational& s) { return a *= s; }
  friend PiLinear operator*(const Rational& s, PiLinear a) { return a *= s; }
  friend PiLinear operator/(PiLinear a, const Rational& s) { return a /= s; }
  friend bool operator==(const PiLinear& a, const PiLinear& b) {
    return a.rat == b.rat && a.pi == b.pi;
  }
};

// Complex number whose real and imaginary parts lie in Q + Qπ.
struct PiComplex {
  PiLinear re;
  PiLinear im;

  PiComplex() = default;
  PiComplex(long long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  PiComplex(PiLinear r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  PiComplex(PiLinear r, PiLinear i) : re(std::move(r)), im(std::move(i)) {}
  PiComplex(const QComplex& q) : re(q.re), im(q.im) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] bool pi_free() const { return re.pi == 0 && im.pi == 0; }
  [[nodiscard]] QComplex rational_part() const { return {re.rat, im.rat}; }
  [[nodiscard]] QComplex pi_part() const { return {re.pi, im.pi}; }
  [[nodiscard]] PiComplex conj() const { return {re, -im}; }
  [[nodiscard]] std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }

  PiComplex& operator+=(const PiComplex& o) { re += o.re; im += o.im; return *this; }
  PiComplex& operator-=(const PiComplex& o) { re -= o.re; im -= o.im; return *this; }

  friend PiComplex operator+(PiComplex a, const PiComplex& b) { return a += b; }
  friend PiComplex operator-(PiComplex a, const PiComplex& b) { return a -= b; }
  friend PiComplex operator-(const PiComplex& a) { return {-a.re, -a.im}; }
  friend PiComplex operator*(const QComplex& s, const PiComplex& a) {
    return {a.re * s.re - a.im * s.im, a.im * s.re + a.re * s.im};
  }
  friend PiComplex operator*(const PiComplex& a, const QComplex& s) { return s * a; }
  friend bool operator==(const PiComplex& a, const PiComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Parses sums of products of rationals, `pi`, and `i`, e.g. "1/2+3/2i",
// "pi", "2*pi", "-pi/3", "1+pi*i", "(1+i)/2". Products that would produce π²
// are rejected. Throws InputError.
PiComplex parse_number(std::string_view text);

// Round-trips through parse_number.
std::string format(const PiLinear& x);
std::string format(const QComplex& z);
std::string format(const PiComplex& z);

}  // namespace pfm
