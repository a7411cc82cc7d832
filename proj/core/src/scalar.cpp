#include "pfmirror/scalar.hpp"

#include <cctype>
#include <cmath>

#include "pfmirror/errors.hpp"

namespace pfm {

QComplex& QComplex::operator/=(const QComplex& o) {
  const Rational d = o.norm2();
  if (d == 0) throw std::domain_error("QComplex: division by zero");
  Rational r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite number");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // Scale the mantissa to a 53-bit integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational q(scaled);
  if (exponent > 0) {
    q *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    q /= Rational(BigInt(1) << -exponent);
  }
  return q;
}

std::string to_string(const Rational& q) { return q.str(); }

namespace {

class NumberParser {
 public:
  explicit NumberParser(std::string_view text) : text_(text) {}

  PiComplex parse() {
    PiComplex value = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse number '" + std::string(text_) + "': " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

  PiComplex expression() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    PiComplex value = term();
    if (negate) value = -value;
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        value += term();
      } else if (peek() == '-') {
        ++pos_;
        value -= term();
      } else {
        return value;
      }
    }
  }

  static PiComplex multiply(const PiComplex& a, const PiComplex& b) {
    if (a.pi_free()) return a.rational_part() * b;
    if (b.pi_free()) return b.rational_part() * a;
    throw InputError("product of two pi terms is not representable");
  }

  [[nodiscard]] bool factor_starts() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
           c == 'i' || c == 'I' || c == 'p' || c == '\xcf';
  }

  PiComplex term() {
    PiComplex value = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        value = multiply(value, factor());
      } else if (peek() == '/') {
        ++pos_;
        const PiComplex d = factor();
        if (!d.pi_free()) fail("division by a pi term");
        if (d.is_zero()) fail("division by zero");
        const QComplex inv = QComplex(1) / d.rational_part();
        value = inv * value;
      } else if (factor_starts()) {
        value = multiply(value, factor());
      } else {
        return value;
      }
    }
  }

  PiComplex factor() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      PiComplex inner = expression();
      skip_ws();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == 'i' || c == 'I') {
      ++pos_;
      return PiComplex(PiLinear(0), PiLinear(1));
    }
    if (text_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return PiComplex(PiLinear(Rational(0), Rational(1)));
    }
    if (text_.substr(pos_, 2) == "\xcf\x80") {  // UTF-8 π
      pos_ += 2;
      return PiComplex(PiLinear(Rational(0), Rational(1)));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return PiComplex(PiLinear(decimal()));
    fail("expected a number, 'pi', 'i' or '('");
  }

  Rational decimal() {
    BigInt digits = 0;
    long long scale = 0;
    bool any = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits = digits * 10 + (peek() - '0');
      ++pos_;
      any = true;
    }
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits = digits * 10 + (peek() - '0');
        ++scale;
        ++pos_;
        any = true;
      }
    }
    if (!any) fail("empty number");
    long long exponent = 0;
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      bool neg = false;
      if (peek() == '+' || peek() == '-') {
        neg = peek() == '-';
        ++pos_;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("bad exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        exponent = exponent * 10 + (peek() - '0');
        if (exponent > 4000) fail("exponent too large");
        ++pos_;
      }
      if (neg) exponent = -exponent;
    }
    const long long power = exponent - scale;
    Rational q(digits);
    BigInt ten = 1;
    for (long long k = 0; k < (power < 0 ? -power : power); ++k) ten *= 10;
    if (power >= 0) {
      q *= Rational(ten);
    } else {
      q /= Rational(ten);
    }
    return q;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PiComplex parse_number(std::string_view text) { return NumberParser(text).parse(); }

Rational parse_rational(std::string_view text) {
  const PiComplex v = parse_number(text);
  if (!v.pi_free() || v.im.rat != 0) {
    throw InputError("expected a rational number, got '" + std::string(text) + "'");
  }
  return v.re.rat;
}

std::string format(const PiLinear& x) {
  if (x.pi == 0) return to_string(x.rat);
  std::string pi_term;
  const Rational mag = x.pi < 0 ? Rational(-x.pi) : x.pi;
  pi_term = mag == 1 ? "pi" : to_string(mag) + "*pi";
  if (x.rat == 0) return x.pi < 0 ? "-" + pi_term : pi_term;
  return to_string(x.rat) + (x.pi < 0 ? "-" : "+") + pi_term;
}

std::string format(const QComplex& z) { return format(PiComplex(z)); }

std::string format(const PiComplex& z) {
  if (z.im.is_zero()) return format(z.re);
  std::string im;
  bool negative = false;
  if (z.im.pi == 0) {
    // Plain rational imaginary part: i, 2*i, 1/3*i
    negative = z.im.rat < 0;
    const Rational mag = negative ? Rational(-z.im.rat) : z.im.rat;
    im = mag == 1 ? "i" : to_string(mag) + "*i";
  } else {
    im = "(" + format(z.im) + ")*i";
  }
  if (z.re.is_zero()) return negative ? "-" + im : im;
  return format(z.re) + (negative ? "-" : "+") + im;
}

}  // namespace pfm
