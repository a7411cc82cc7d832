#include "pfmirror/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "pfmirror/errors.hpp"

namespace pfm {

void poly_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  RatPoly rem = a;
  poly_trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  RatPoly quot(rem.size() - b.size() + 1);
  const Rational lead = b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const Rational f = rem.back() / lead;
    quot[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] -= f * b[j];
    poly_trim(rem);
  }
  poly_trim(quot);
  return {quot, rem};
}

namespace {

RatPoly poly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  poly_trim(a);
  return a;
}

}  // namespace

RatPoly cyclotomic_polynomial(int r) {
  if (r < 1) throw InputError("cyclotomic order must be positive");
  // x^r - 1 = prod_{d | r} Φ_d
  RatPoly p(r + 1);
  p[0] = -1;
  p[r] = 1;
  for (int d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    auto [q, rem] = poly_divmod(p, cyclotomic_polynomial(d));
    if (!rem.empty()) throw std::logic_error("cyclotomic division left a remainder");
    p = std::move(q);
  }
  return p;
}

CyclotomicField::CyclotomicField(int r) : r_(r), phi_(cyclotomic_polynomial(r)) {
  const int deg = degree();
  powers_.reserve(r);
  RatPoly cur{Rational(1)};
  for (int k = 0; k < r; ++k) {
    RatPoly padded = cur;
    padded.resize(deg);
    powers_.push_back(std::move(padded));
    cur.insert(cur.begin(), Rational(0));
    cur = poly_divmod(cur, phi_).second;
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int r) {
  if (r < 1) throw InputError("cyclotomic order must be positive, got " + std::to_string(r));
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[r];
  if (!slot) slot = std::make_shared<const CyclotomicField>(r);
  return slot;
}

const std::vector<Rational>& CyclotomicField::zeta_power(long long k) const {
  long long idx = k % r_;
  if (idx < 0) idx += r_;
  return powers_[static_cast<std::size_t>(idx)];
}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)) {
  if (!field_) throw InputError("cyclotomic element needs a field");
  const int deg = field_->degree();
  if (static_cast<int>(coeffs.size()) > deg) {
    RatPoly p(coeffs.begin(), coeffs.end());
    coeffs = poly_divmod(p, field_->modulus()).second;
  }
  coeffs.resize(deg);
  c_ = std::move(coeffs);
}

Cyclotomic Cyclotomic::zeta_power(int r, long long k) {
  return zeta_power(CyclotomicField::get(r), k);
}

Cyclotomic Cyclotomic::zeta_power(const std::shared_ptr<const CyclotomicField>& field,
                                  long long k) {
  return Cyclotomic(field, field->zeta_power(k));
}

std::vector<Rational> Cyclotomic::coefficients() const {
  if (!field_) return {constant_};
  return c_;
}

bool Cyclotomic::is_zero() const {
  if (!field_) return constant_ == 0;
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const {
  if (!field_) return constant_ == 1;
  if (c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::complex<double> Cyclotomic::to_complex() const {
  if (!field_) return {to_double(constant_), 0.0};
  std::complex<double> acc = 0.0;
  const double step = 2.0 * kPi / field_->order();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    acc += to_double(c_[k]) * std::polar(1.0, step * static_cast<double>(k));
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  if (!field_) return pfm::to_string(constant_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << pfm::to_string(c_[k]);
    if (k == 1) os << "*z";
    if (k > 1) os << "*z^" << k;
  }
  if (first) return "0";
  return os.str();
}

void Cyclotomic::bind_to(const std::shared_ptr<const CyclotomicField>& f) {
  if (field_) return;
  field_ = f;
  c_.assign(f->degree(), Rational(0));
  if (!c_.empty()) c_[0] = constant_;
  constant_ = 0;
}

void Cyclotomic::unify(const Cyclotomic& o) {
  if (field_ && o.field_ && field_ != o.field_) {
    throw InputError("mixing elements of Q(zeta_" + std::to_string(field_->order()) +
                     ") and Q(zeta_" + std::to_string(o.field_->order()) + ")");
  }
  if (!field_ && o.field_) bind_to(o.field_);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  unify(o);
  if (!field_) {
    constant_ += o.constant_;
    return *this;
  }
  if (!o.field_) {
    if (!c_.empty()) c_[0] += o.constant_;
    return *this;
  }
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  unify(o);
  if (!field_) {
    constant_ *= o.constant_;
    return *this;
  }
  if (!o.field_) {
    for (auto& x : c_) x *= o.constant_;
    return *this;
  }
  RatPoly prod = poly_mul(RatPoly(c_.begin(), c_.end()), RatPoly(o.c_.begin(), o.c_.end()));
  prod = poly_divmod(prod, field_->modulus()).second;
  prod.resize(field_->degree());
  c_ = std::move(prod);
  return *this;
}

Cyclotomic operator-(Cyclotomic a) {
  a.constant_ = -a.constant_;
  for (auto& x : a.c_) x = -x;
  return a;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (!a.field_ && !b.field_) return a.constant_ == b.constant_;
  Cyclotomic x = a;
  x -= b;
  return x.is_zero();
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  if (!field_) return Cyclotomic(Rational(1) / constant_);
  // Extended Euclid on (Φ, a): track s with s*a ≡ rem (mod Φ).
  RatPoly r0 = field_->modulus();
  RatPoly r1(c_.begin(), c_.end());
  poly_trim(r1);
  RatPoly s0;
  RatPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = poly_divmod(r0, r1);
    RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("element shares a factor with the cyclotomic polynomial");
  const Rational inv = Rational(1) / r1[0];
  for (auto& x : s1) x *= inv;
  return Cyclotomic(field_, poly_divmod(s1, field_->modulus()).second);
}

CMatrix to_complex(const CycloMatrix& m) {
  return m.map([](const Cyclotomic& x) { return x.to_complex(); });
}

CycloMatrix to_cyclo(const RatMatrix& m) {
  return m.map([](const Rational& x) { return Cyclotomic(x); });
}

}  // namespace pfm
