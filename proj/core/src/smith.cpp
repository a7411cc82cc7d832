#include "pfmirror/smith.hpp"

#include <limits>
#include <optional>

#include "pfmirror/errors.hpp"

namespace pfm {

namespace {

using BigMatrix = Matrix<BigInt>;

BigMatrix to_big(const IntMatrix& m) {
  return m.map([](std::int64_t x) { return BigInt(static_cast<long long>(x)); });
}

std::int64_t narrow(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw InputError("Smith normal form entry exceeds 64-bit range");
  }
  return x.convert_to<std::int64_t>();
}

IntMatrix to_int(const BigMatrix& m) { return m.map(narrow); }

void swap_rows(BigMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(BigMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row a -= f * row b
void add_row(BigMatrix& m, std::size_t a, std::size_t b, const BigInt& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= f * m(b, j);
}
void add_col(BigMatrix& m, std::size_t a, std::size_t b, const BigInt& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= f * m(i, b);
}
void negate_row(BigMatrix& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

BigMatrix big_identity(std::size_t n) {
  BigMatrix m(n, n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

// Nearest-integer quotient: remainders land in [-|b|/2, |b|/2], which
// shortens the Euclidean steps and keeps the transforms small.
BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates
  const BigInt rem = a - q * b;
  if (2 * abs(rem) > abs(b)) q += ((rem < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// P A Q = D with exact entries. Pinv and Qinv follow along so that callers
// needing the inverses never have to invert a large transform.
struct BigSmith {
  BigMatrix P, D, Q, Pinv, Qinv;
};

BigSmith big_smith(const IntMatrix& A) {
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();
  BigSmith s{big_identity(rows), to_big(A), big_identity(cols), big_identity(rows), big_identity(cols)};
  BigMatrix& D = s.D;

  // E applied on the left of P is undone on the right of Pinv, and the other
  // way round for Q.
  const auto rows_swap = [&](std::size_t a, std::size_t b) {
    swap_rows(D, a, b);
    swap_rows(s.P, a, b);
    swap_cols(s.Pinv, a, b);
  };
  const auto cols_swap = [&](std::size_t a, std::size_t b) {
    swap_cols(D, a, b);
    swap_cols(s.Q, a, b);
    swap_rows(s.Qinv, a, b);
  };
  const auto row_op = [&](std::size_t a, std::size_t b, const BigInt& f) {
    add_row(D, a, b, f);
    add_row(s.P, a, b, f);
    add_col(s.Pinv, b, a, -f);
  };
  const auto col_op = [&](std::size_t a, std::size_t b, const BigInt& f) {
    add_col(D, a, b, f);
    add_col(s.Q, a, b, f);
    add_row(s.Qinv, b, a, -f);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // Bring the smallest nonzero entry of the remaining block to (t,t).
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      rows_swap(t, best->first);
      cols_swap(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        row_op(i, t, round_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        col_op(j, t, round_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_op(t, *bad_row, BigInt(-1));
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(s.P, t);
      for (std::size_t i = 0; i < rows; ++i) s.Pinv(i, t) = -s.Pinv(i, t);
    }
  }
  return s;
}

IntMatrix reduce_mod(const BigMatrix& m, std::int64_t modulus) {
  const BigInt q(static_cast<long long>(modulus));
  return m.map([&](const BigInt& x) {
    BigInt r = x % q;
    if (r < 0) r += q;
    return r.convert_to<std::int64_t>();
  });
}

std::vector<std::int64_t> big_diagonal(const BigMatrix& D) {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(narrow(D(i, i)));
  return d;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const BigSmith s = big_smith(A);
  return {to_int(s.P), to_int(s.D), to_int(s.Q)};
}

std::vector<std::int64_t> smith_invariants(const IntMatrix& A) { return big_diagonal(big_smith(A).D); }

SmithInverseMod smith_inverse_transforms_mod(const IntMatrix& A, std::int64_t modulus) {
  if (modulus < 1) throw InputError("modulus must be positive");
  const BigSmith s = big_smith(A);
  return {big_diagonal(s.D), reduce_mod(s.Pinv, modulus), reduce_mod(s.Qinv, modulus)};
}

std::int64_t int_determinant(const IntMatrix& M) {
  const Rational d = determinant(to_rat(M));
  if (denominator(d) != 1) throw std::logic_error("integer determinant is not integral");
  return narrow(numerator(d));
}

IntMatrix unimodular_inverse(const IntMatrix& M) {
  auto inv = inverse(to_rat(M));
  if (!inv) throw PreconditionError("matrix is singular");
  IntMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const Rational& x = (*inv)(i, j);
      if (denominator(x) != 1) throw PreconditionError("matrix is not unimodular");
      out(i, j) = narrow(numerator(x));
    }
  return out;
}

}  // namespace pfm
