#pragma once

#include "pfmirror/matrix.hpp"

namespace pfm {

struct SmithForm {
  IntMatrix P;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix Q;  // unimodular, cols x cols
  [[nodiscard]] std::vector<std::int64_t> diagonal() const;
};

// P * A * Q = D. Internally exact in arbitrary precision; throws InputError
// if a transform entry does not fit in 64 bits.
SmithForm smith_normal_form(const IntMatrix& A);

// The diagonal alone; only the invariant factors have to fit in 64 bits.
std::vector<std::int64_t> smith_invariants(const IntMatrix& A);

// P^{-1} and Q^{-1} of the same decomposition, entries reduced into [0, modulus).
// A = P^{-1} D Q^{-1}, so this also holds mod `modulus`.
struct SmithInverseMod {
  std::vector<std::int64_t> diagonal;
  IntMatrix P_inv;
  IntMatrix Q_inv;
};
SmithInverseMod smith_inverse_transforms_mod(const IntMatrix& A, std::int64_t modulus);

// Inverse of a unimodular integer matrix (exact). Throws PreconditionError
// if det != ±1.
IntMatrix unimodular_inverse(const IntMatrix& M);

std::int64_t int_determinant(const IntMatrix& M);

}  // namespace pfm
