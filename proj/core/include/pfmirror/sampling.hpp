#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pfmirror/bundle.hpp"
#include "pfmirror/matrix.hpp"
#include "pfmirror/mirror.hpp"
#include "pfmirror/torus.hpp"

namespace pfm {

// mt19937_64 with distributions written out here so sequences are identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double uniform_real(double lo, double hi);
  bool coin() { return uniform_int(0, 1) == 1; }
  // p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

IntMatrix random_int_matrix(Rng& rng, int n, std::int64_t bound);
IntMatrix random_symmetric_int(Rng& rng, int n, std::int64_t bound);
// Product of a few elementary operations; entries stay small.
IntMatrix random_unimodular(Rng& rng, int n, int steps = 3);
RatMatrix random_rat_matrix(Rng& rng, int rows, int cols, std::int64_t num_bound, std::int64_t den_bound);

struct HolomorphicInstance {
  QCMatrix T;
  IntMatrix A;
  int seed_kind = 0;  // 0 scalar T, 1 diagonal, 2 triangular (non-symmetric T)
};

// AT symmetric and the symmetric part of Im T positive definite, by
// construction: seeds T0, A0 with A0 T0 symmetric, then A = M A0 M^{-1},
// T = M T0 Mᵗ for unimodular M.
HolomorphicInstance random_holomorphic(Rng& rng, int n);

// Valid torus with arbitrary integer A; AT is usually not symmetric.
HolomorphicInstance random_generic(Rng& rng, int n);

std::vector<PiComplex> random_mu(Rng& rng, int n, bool allow_pi = true);
LatticeVector random_lattice(Rng& rng, int n, std::int64_t bound);
// z = x + T y with x, y uniform in [-π, π].
CVector random_point(Rng& rng, const TorusData& torus);

struct LagrangianPair {
  AffineLagrangian first;
  AffineLagrangian second;
  QCMatrix T;  // torus on which both are Lagrangian
};

// α = A/r - B/s of rank <= 1 and αx̌ = β consistent (α = 0 uses β ∈ 2πZ^n).
LagrangianPair random_rank1_pair(Rng& rng, int n);

}  // namespace pfm
