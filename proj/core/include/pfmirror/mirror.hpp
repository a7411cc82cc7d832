#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pfmirror/matrix.hpp"
#include "pfmirror/scalar.hpp"
#include "pfmirror/torus.hpp"

namespace pfm {

// (T^{-1})ᵗ = B + iω.
struct SymplecticData {
  RMatrix omega;
  RMatrix bfield;
  std::optional<RatMatrix> omega_exact;
  std::optional<RatMatrix> bfield_exact;
};

SymplecticData symplectic_data(const TorusData& torus);

struct LagrangianCheck {
  bool lagrangian = false;   // ωA symmetric
  bool flat_system = false;  // BA symmetric
  bool at_symmetric = false;
  bool equivalent_to_AT_symmetric = false;  // (ωA ∧ BA symmetric) == AT symmetric
};

LagrangianCheck lagrangian_check(const IntMatrix& A, const TorusData& torus);

// Graph y̌ = (1/r)A x̌ + (1/r)p with holonomy q.
struct AffineLagrangian {
  int r = 1;
  IntMatrix A;
  std::vector<PiLinear> p;
  std::vector<PiLinear> q;
  [[nodiscard]] int n() const { return static_cast<int>(A.rows()); }
  void check() const;
};

struct AlphaBeta {
  RatMatrix alpha;            // A/r - B/s
  std::vector<PiLinear> beta;  // u/s - p/r
};

AlphaBeta alpha_beta(const AffineLagrangian& first, const AffineLagrangian& second);

struct MinorsReport {
  bool vanish = false;
  std::size_t rank = 0;
  // (i, j, k, l), 1-based, i<j, k<l, of each nonzero α_ik α_jl - α_il α_jk
  std::vector<std::array<int, 4>> nonzero;
};

// Every 2x2 minor of α vanishes; cross-checked against rank α <= 1.
MinorsReport minors_vanish(const RatMatrix& alpha);

enum class IntersectionMode { covering, torus, floating };

struct IntersectionOptions {
  IntersectionMode mode = IntersectionMode::covering;
  // Torus mode shifts β by (2π/s)Bk' - (2π/r)Ak + 2πm with entries in [-K, K].
  const AffineLagrangian* first = nullptr;
  const AffineLagrangian* second = nullptr;
  std::int64_t bound = -1;  // K; -1 means r*s
  std::uint64_t max_candidates = 5'000'000;
  double float_tolerance = 1e-9;
};

struct IntersectionWitness {
  // Lexicographically first nonzero α entry, 1-based, and the reduced row
  // x_j = Σ_{k≠j} coeff_k x_k + constant.
  int pivot_row = 0;
  int pivot_col = 0;
  std::vector<Rational> row_coefficients;
  PiLinear row_constant;
  std::vector<PiLinear> particular;  // αx = β
  RatMatrix kernel;                  // columns span ker α
};

struct IntersectionResult {
  bool empty = true;
  int codim = -1;  // valid when !empty
  std::size_t alpha_rank = 0;
  bool minors_vanish = false;
  bool authoritative = true;  // false for the floating mode
  std::optional<IntersectionWitness> witness;
  std::vector<PiLinear> beta_used;  // after the torus-mode shift
  std::string note;
};

IntersectionResult intersection_codim(const RatMatrix& alpha, const std::vector<PiLinear>& beta,
                                      const IntersectionOptions& options = {});

// Verifies α x = β for the witness (particular solution and kernel).
bool witness_satisfies(const RatMatrix& alpha, const std::vector<PiLinear>& beta,
                       const IntersectionWitness& w);

struct Theorem41Report {
  bool cone_pf_possible = false;
  IntersectionResult codim;
  bool theorem_satisfied = false;
  // minors vanish, α != 0, but αx̌ = β has no solution
  bool outside_hypothesis = false;
};

// When a torus is given, both Lagrangian conditions are checked first
// (PreconditionError otherwise).
Theorem41Report theorem41_check(const AffineLagrangian& first, const AffineLagrangian& second,
                                const TorusData* torus = nullptr,
                                const IntersectionOptions& options = {});

}  // namespace pfm
