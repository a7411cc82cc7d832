#include "pfmirror/heisenberg.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <numeric>

#include "pfmirror/errors.hpp"
#include "pfmirror/smith.hpp"

namespace pfm {

void CocycleSet::check_shapes() const {
  if (rank < 1) throw DimensionError("cocycle rank must be positive");
  if (order < 1) throw DimensionError("cocycle field order must be positive");
  if (V.size() != U.size()) throw DimensionError("cocycle set needs as many V as U matrices");
  const auto check = [&](const CycloMatrix& m, const char* name, std::size_t idx) {
    if (m.rows() != static_cast<std::size_t>(rank) || m.cols() != static_cast<std::size_t>(rank)) {
      throw DimensionError(std::string(name) + std::to_string(idx + 1) + " is " + m.shape() +
                           ", expected " + std::to_string(rank) + "x" + std::to_string(rank));
    }
  };
  for (std::size_t i = 0; i < V.size(); ++i) check(V[i], "V", i);
  for (std::size_t i = 0; i < U.size(); ++i) check(U[i], "U", i);
}

namespace {

// Reads m as a monomial matrix with entries ζ^k, or nothing if it is not one.
std::optional<Monomial> as_monomial(const CycloMatrix& m, const std::vector<Cyclotomic>& powers) {
  const std::size_t d = m.rows();
  Monomial out{std::vector<int>(d, -1), std::vector<int>(d, 0)};
  std::vector<bool> row_used(d, false);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      const Cyclotomic& x = m(i, c);
      if (x.is_zero()) continue;
      if (out.perm[c] >= 0 || row_used[i]) return std::nullopt;
      const auto it = std::find(powers.begin(), powers.end(), x);
      if (it == powers.end()) return std::nullopt;
      out.perm[c] = static_cast<int>(i);
      out.phase[c] = static_cast<int>(it - powers.begin());
      row_used[i] = true;
    }
    if (out.perm[c] < 0) return std::nullopt;
  }
  return out;
}

// (a b) for monomials, phases mod r.
Monomial compose(const Monomial& a, const Monomial& b, int r) {
  Monomial out{std::vector<int>(b.perm.size()), std::vector<int>(b.perm.size())};
  for (std::size_t c = 0; c < b.perm.size(); ++c) {
    out.perm[c] = a.perm[b.perm[c]];
    out.phase[c] = (a.phase[b.perm[c]] + b.phase[c]) % r;
  }
  return out;
}

bool same(const Monomial& a, const Monomial& b) { return a.perm == b.perm && a.phase == b.phase; }

// Same relations as the dense check, on permutations and phases. Monomial
// matrices with unit entries are always invertible.
std::optional<CocycleReport> verify_monomial(const CocycleSet& set, int r, const IntMatrix& A, int omega_exponent) {
  const auto field = CyclotomicField::get(r);
  std::vector<Cyclotomic> powers;
  for (int k = 0; k < r; ++k) powers.push_back(Cyclotomic::zeta_power(field, k));
  std::vector<Monomial> V, U;
  for (const auto& m : set.V) {
    auto x = as_monomial(m, powers);
    if (!x) return std::nullopt;
    V.push_back(std::move(*x));
  }
  for (const auto& m : set.U) {
    auto x = as_monomial(m, powers);
    if (!x) return std::nullopt;
    U.push_back(std::move(*x));
  }
  const int n = set.n();
  CocycleReport rep;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j < k) {
        if (!same(compose(V[j], V[k], r), compose(V[k], V[j], r))) rep.violations.push_back({j + 1, k + 1, "VV"});
        if (!same(compose(U[j], U[k], r), compose(U[k], U[j], r))) rep.violations.push_back({j + 1, k + 1, "UU"});
      }
      Monomial lhs = compose(U[k], V[j], r);
      const std::int64_t shift = -static_cast<std::int64_t>(omega_exponent) * A(k, j);
      for (auto& ph : lhs.phase) ph = static_cast<int>(((ph + shift) % r + r) % r);
      if (!same(lhs, compose(V[j], U[k], r))) rep.violations.push_back({j + 1, k + 1, "UV"});
    }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

}  // namespace

CocycleReport verify_cocycle(const CocycleSet& set, int r, const IntMatrix& A, int omega_exponent) {
  set.check_shapes();
  const int n = set.n();
  if (!A.square() || static_cast<int>(A.rows()) != n) {
    throw DimensionError("A is " + A.shape() + " but the set has " + std::to_string(n) +
                         " generators of each kind");
  }
  if (set.order != r) {
    throw DimensionError("cocycle entries live in Q(zeta_" + std::to_string(set.order) +
                         "), expected order " + std::to_string(r));
  }
  const auto field = CyclotomicField::get(r);
  if (auto fast = verify_monomial(set, r, A, omega_exponent)) return *fast;
  CocycleReport rep;
  for (int j = 0; j < n; ++j) {
    if (determinant(set.V[j]).is_zero()) rep.violations.push_back({j + 1, j + 1, "invertible"});
    if (determinant(set.U[j]).is_zero()) rep.violations.push_back({j + 1, j + 1, "invertible"});
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j < k) {
        if (!(set.V[j] * set.V[k] == set.V[k] * set.V[j])) rep.violations.push_back({j + 1, k + 1, "VV"});
        if (!(set.U[j] * set.U[k] == set.U[k] * set.U[j])) rep.violations.push_back({j + 1, k + 1, "UU"});
      }
      // ω^{-a_kj} U_k V_j = V_j U_k
      const Cyclotomic phase =
          Cyclotomic::zeta_power(field, -static_cast<long long>(omega_exponent) * A(k, j));
      const CycloMatrix lhs = phase * (set.U[k] * set.V[j]);
      const CycloMatrix rhs = set.V[j] * set.U[k];
      if (!(lhs == rhs)) rep.violations.push_back({j + 1, k + 1, "UV"});
    }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t x = a % m;
  return x < 0 ? x + m : x;
}

std::vector<std::int64_t> block_orders(int r, const std::vector<std::int64_t>& d, int e) {
  std::vector<std::int64_t> k;
  for (auto di : d) {
    const std::int64_t g = std::gcd(pos_mod(static_cast<std::int64_t>(e) * di, r), static_cast<std::int64_t>(r));
    k.push_back(r / g);
  }
  return k;
}

}  // namespace

std::int64_t minimal_dimension(int r, const IntMatrix& A, int omega_exponent) {
  if (r < 1) throw InputError("r must be positive");
  if (!A.square()) throw DimensionError("A must be square");
  std::int64_t m = 1;
  for (auto k : block_orders(r, smith_invariants(A), omega_exponent)) {
    if (m > std::numeric_limits<std::int64_t>::max() / k) throw GuardError("minimal dimension overflows");
    m *= k;
  }
  return m;
}

CycloMatrix monomial_to_matrix(const Monomial& m, int r) {
  const auto field = CyclotomicField::get(r);
  const std::size_t d = m.perm.size();
  CycloMatrix out(d, d, Cyclotomic(field, {}));
  for (std::size_t c = 0; c < d; ++c) out(m.perm[c], c) = Cyclotomic::zeta_power(field, m.phase[c]);
  return out;
}

std::optional<CocycleSet> construct_standard(int r, const IntMatrix& A, int rank, int omega_exponent) {
  if (rank < 1) throw InputError("rank must be positive");
  const std::int64_t m = minimal_dimension(r, A, omega_exponent);
  if (rank % m != 0) return std::nullopt;
  const int n = static_cast<int>(A.rows());
  // Every block order divides r, so the inverse transforms are only needed mod r.
  const SmithInverseMod snf = smith_inverse_transforms_mod(A, r);
  const std::vector<std::int64_t> k = block_orders(r, snf.diagonal, omega_exponent);
  const IntMatrix& X = snf.Q_inv;                   // shift exponents
  const IntMatrix Y = snf.P_inv.transpose();        // clock exponents
  const std::int64_t pad = rank / m;

  // Mixed-radix digits of a block index; digit i has radix k[i].
  const auto digits = [&](std::int64_t idx) {
    std::vector<std::int64_t> t(n);
    for (int i = n - 1; i >= 0; --i) {
      t[i] = idx % k[i];
      idx /= k[i];
    }
    return t;
  };
  const auto index = [&](const std::vector<std::int64_t>& t) {
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * k[i] + t[i];
    return idx;
  };

  CocycleSet set;
  set.rank = rank;
  set.order = r;
  for (int j = 0; j < n; ++j) {
    Monomial v{std::vector<int>(rank), std::vector<int>(rank, 0)};
    Monomial u{std::vector<int>(rank), std::vector<int>(rank, 0)};
    for (std::int64_t b = 0; b < m; ++b) {
      std::vector<std::int64_t> t = digits(b);
      std::int64_t phase = 0;
      for (int i = 0; i < n; ++i) {
        const std::int64_t d_i = snf.diagonal[i];
        phase += pos_mod(omega_exponent * d_i, r) * pos_mod(Y(i, j), k[i]) % r * t[i];
        phase %= r;
      }
      std::vector<std::int64_t> shifted = t;
      for (int i = 0; i < n; ++i) shifted[i] = pos_mod(t[i] + X(i, j), k[i]);
      const std::int64_t target = index(shifted);
      for (std::int64_t s = 0; s < pad; ++s) {
        const auto col = static_cast<std::size_t>(b * pad + s);
        v.perm[col] = static_cast<int>(target * pad + s);
        u.perm[col] = static_cast<int>(col);
        u.phase[col] = static_cast<int>(phase);
      }
    }
    set.V.push_back(monomial_to_matrix(v, r));
    set.U.push_back(monomial_to_matrix(u, r));
  }
  if (n == 0) return set;
  if (!verify_cocycle(set, r, A, omega_exponent).valid) {
    throw std::logic_error("clock/shift construction failed verification");
  }
  return set;
}

}  // namespace pfm
