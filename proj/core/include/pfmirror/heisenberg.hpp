#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfmirror/cyclotomic.hpp"
#include "pfmirror/matrix.hpp"

namespace pfm {

// Transition matrices V_1..V_n, U_1..U_n of a projectively flat bundle,
// with entries in Q(ζ_order).
struct CocycleSet {
  int rank = 0;
  int order = 1;
  std::vector<CycloMatrix> V;
  std::vector<CycloMatrix> U;

  [[nodiscard]] int n() const { return static_cast<int>(V.size()); }
  // Throws DimensionError on inconsistent shapes.
  void check_shapes() const;
};

struct CocycleViolation {
  int j = 0;  // 1-based
  int k = 0;
  std::string relation;  // "VV", "UU", "UV" or "invertible"
};

struct CocycleReport {
  bool valid = false;
  std::vector<CocycleViolation> violations;
};

// ω = ζ_r^omega_exponent. Checks V_jV_k = V_kV_j, U_jU_k = U_kU_j,
// ω^{-a_kj} U_k V_j = V_j U_k and invertibility.
CocycleReport verify_cocycle(const CocycleSet& set, int r, const IntMatrix& A,
                             int omega_exponent = 1);

// Smallest dimension m of a matrix solution; solutions of size d exist iff m | d.
std::int64_t minimal_dimension(int r, const IntMatrix& A, int omega_exponent = 1);

// Clock/shift realisation through the Smith normal form of A.
// nullopt when minimal_dimension does not divide rank.
std::optional<CocycleSet> construct_standard(int r, const IntMatrix& A, int rank,
                                             int omega_exponent = 1);

struct SearchLimits {
  int max_rank = 4;
  int max_n = 2;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SearchOutcome {
  std::optional<CocycleSet> found;  // empty means exhausted
  std::uint64_t nodes = 0;          // backtracking nodes visited
};

// Exhaustive search over monomial matrices with entries in {ζ_r^k}.
// Throws GuardError outside the limits.
SearchOutcome brute_force_search(int r, const IntMatrix& A, int rank, int omega_exponent = 1,
                                 const SearchLimits& limits = {});

// Monomial matrix σ with phases: column c has entry ζ^{phase[c]} in row perm[c].
struct Monomial {
  std::vector<int> perm;
  std::vector<int> phase;
};
CycloMatrix monomial_to_matrix(const Monomial& m, int r);

}  // namespace pfm
