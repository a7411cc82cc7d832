#include "pfmirror/exterior.hpp"

#include <bit>
#include <sstream>

#include "pfmirror/errors.hpp"

namespace pfm::exterior {

namespace {

constexpr int kMaxGenerators = 64;

}  // namespace

FormElement::FormElement(int n, int inv_4pi2_power) : n_(n), power_(inv_4pi2_power) {
  if (n < 1 || 2 * n > kMaxGenerators) {
    throw DimensionError("exterior algebra supports 1 <= n <= 32, got " + std::to_string(n));
  }
}

FormElement FormElement::scalar(int n, const QComplex& c, int inv_4pi2_power) {
  FormElement f(n, inv_4pi2_power);
  f.accumulate(0, c);
  return f;
}

FormElement FormElement::generator(int n, int index) {
  FormElement f(n);
  if (index < 0 || index >= 2 * n) {
    throw DimensionError("generator index " + std::to_string(index) + " out of range");
  }
  f.accumulate(Mask{1} << index, QComplex(1));
  return f;
}

int FormElement::degree() const {
  if (terms_.empty()) return -1;
  const int d = std::popcount(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) != d) return -1;
  return d;
}

bool FormElement::homogeneous() const { return terms_.empty() || degree() >= 0; }

std::vector<int> FormElement::indices(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

namespace {

// Canonical mask and permutation sign of an ordered generator list.
std::pair<FormElement::Mask, int> canonicalize(const std::vector<int>& gens, int n) {
  FormElement::Mask mask = 0;
  int sign = 1;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (gens[a] < 0 || gens[a] >= 2 * n) throw DimensionError("generator index out of range");
    const FormElement::Mask bit = FormElement::Mask{1} << gens[a];
    if ((mask & bit) != 0) return {0, 0};
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (gens[b] < gens[a]) sign = -sign;
    mask |= bit;
  }
  return {mask, sign};
}

}  // namespace

QComplex FormElement::coefficient(const std::vector<int>& generators) const {
  const auto [mask, sign] = canonicalize(generators, n_);
  if (sign == 0) return 0;
  const auto it = terms_.find(mask);
  if (it == terms_.end()) return 0;
  return sign > 0 ? it->second : -it->second;
}

void FormElement::add_term(const std::vector<int>& generators, const QComplex& c) {
  const auto [mask, sign] = canonicalize(generators, n_);
  if (sign == 0) return;
  accumulate(mask, sign > 0 ? c : -c);
}

void FormElement::accumulate(Mask m, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FormElement::check_compatible(const FormElement& o) const {
  if (n_ != o.n_) {
    throw DimensionError("forms over different n: " + std::to_string(n_) + " vs " +
                         std::to_string(o.n_));
  }
}

FormElement& FormElement::operator+=(const FormElement& o) {
  check_compatible(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) power_ = o.power_;
  if (power_ != o.power_) throw InputError("adding forms with different (4 pi^2) exponents");
  for (const auto& [m, c] : o.terms_) accumulate(m, c);
  return *this;
}

FormElement& FormElement::operator-=(const FormElement& o) {
  FormElement neg = o;
  neg *= QComplex(-1);
  return *this += neg;
}

FormElement& FormElement::operator*=(const QComplex& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

bool operator==(const FormElement& a, const FormElement& b) {
  if (a.n_ != b.n_) return false;
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.power_ == b.power_ && a.terms_ == b.terms_;
}

int wedge_sign(FormElement::Mask a, FormElement::Mask b) {
  if ((a & b) != 0) return 0;
  // Each generator of b passes every generator of a with a larger index.
  int swaps = 0;
  while (b != 0) {
    const int idx = std::countr_zero(b);
    swaps += std::popcount(a >> idx);
    b &= b - 1;
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

FormElement wedge(const FormElement& a, const FormElement& b) {
  a.check_compatible(b);
  FormElement out(a.n_, a.power_ + b.power_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      QComplex c = ca * cb;
      if (s < 0) c = -c;
      out.accumulate(ma | mb, c);
    }
  }
  return out;
}

FormElement two_form_from_matrix(const RatMatrix& m, const Rational& scale, int inv_4pi2_power) {
  if (!m.square()) throw DimensionError("two_form_from_matrix needs a square matrix");
  const int n = static_cast<int>(m.rows());
  FormElement f(n, inv_4pi2_power);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.add_term({i, n + j}, QComplex(scale * m(i, j)));
  return f;
}

FormElement wedge_power(const FormElement& f, int k) {
  if (k < 1) throw InputError("wedge_power needs k >= 1");
  FormElement acc = f;
  for (int step = 1; step < k; ++step) {
    if (acc.is_zero()) break;
    acc = wedge(acc, f);
  }
  if (acc.is_zero()) return FormElement(f.n(), f.inv_4pi2_power() * k);
  return acc;
}

std::string FormElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format(c) << ")";
    for (int idx : indices(m)) {
      os << (idx < n_ ? "*dx" : "*dy") << (idx < n_ ? idx + 1 : idx - n_ + 1);
    }
  }
  if (power_ != 0) os << "  [x (4pi^2)^" << -power_ << "]";
  return os.str();
}

}  // namespace pfm::exterior
