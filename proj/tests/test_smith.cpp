#include <doctest.h>

#include <numeric>

#include "pfmirror/errors.hpp"
#include "pfmirror/sampling.hpp"
#include "pfmirror/smith.hpp"

using namespace pfm;

namespace {
void check_form(const IntMatrix& A) {
  const SmithForm s = smith_normal_form(A);
  CHECK(s.P * A * s.Q == s.D);
  CHECK(std::abs(int_determinant(s.P)) == 1);
  CHECK(std::abs(int_determinant(s.Q)) == 1);
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (d[i] == 0) {
      CHECK(d[i + 1] == 0);
    } else {
      CHECK(d[i + 1] % d[i] == 0);
    }
  }
}

std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

// A = P^{-1} D Q^{-1} reduced mod m, plus the invariant factor chain.
void check_modular(const IntMatrix& A, std::int64_t m) {
  const SmithInverseMod s = smith_inverse_transforms_mod(A, m);
  CHECK(s.diagonal == smith_invariants(A));
  const std::size_t rows = A.rows(), cols = A.cols();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::int64_t acc = 0;
      for (std::size_t t = 0; t < s.diagonal.size(); ++t) {
        const std::int64_t term = mod(s.P_inv(i, t) * mod(s.diagonal[t], m), m) * s.Q_inv(t, j);
        acc = mod(acc + term, m);
      }
      CHECK(acc == mod(A(i, j), m));
    }
  }
}
}  // namespace

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::identity(3, 1, 0)).diagonal() == std::vector<std::int64_t>{1, 1, 1});
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).diagonal() == std::vector<std::int64_t>{2, 4});
  // d1 = gcd of entries = 1, d1 d2 = |det| = 2
  CHECK(smith_normal_form(IntMatrix{{1, 2}, {3, 4}}).diagonal() == std::vector<std::int64_t>{1, 2});
  CHECK(smith_normal_form(IntMatrix{{4, 0}, {0, 6}}).diagonal() == std::vector<std::int64_t>{2, 12});
  CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).diagonal() == std::vector<std::int64_t>{0, 0});
  CHECK(smith_normal_form(IntMatrix{{-3}}).diagonal() == std::vector<std::int64_t>{3});
}

TEST_CASE("Smith normal form invariants on random matrices") {
  Rng rng(7);
  int exact = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    const IntMatrix A = random_int_matrix(rng, n, t % 2 == 0 ? 3 : 40);
    const auto d = smith_invariants(A);
    std::int64_t prod = 1, g = 0;
    for (auto x : d) prod *= x;
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) g = std::gcd(g, A(i, j));
    CHECK(prod == std::abs(int_determinant(A)));
    CHECK(d[0] == g);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK((d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0));
    for (std::int64_t m : {2, 6, 12, 1000003}) check_modular(A, m);
    // The transforms themselves can outgrow 64 bits; that is reported, not wrapped.
    try {
      check_form(A);
      const SmithForm s = smith_normal_form(A);
      const SmithInverseMod r = smith_inverse_transforms_mod(A, 12);
      const IntMatrix Pinv = unimodular_inverse(s.P), Qinv = unimodular_inverse(s.Q);
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
          CHECK(r.P_inv(i, j) == mod(Pinv(i, j), 12));
          CHECK(r.Q_inv(i, j) == mod(Qinv(i, j), 12));
        }
      ++exact;
    } catch (const InputError&) {
    }
  }
  CHECK(exact >= 150);
  check_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}).diagonal() ==
        std::vector<std::int64_t>{2, 6, 12});
}

TEST_CASE("unimodular inverse") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix M = random_unimodular(rng, 1 + t % 4, 5);
    CHECK(M * unimodular_inverse(M) == IntMatrix::identity(M.rows(), 1, 0));
  }
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), PreconditionError);
}
