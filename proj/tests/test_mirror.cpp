#include <doctest.h>

#include "pfmirror/errors.hpp"
#include "pfmirror/mirror.hpp"
#include "pfmirror/sampling.hpp"

using namespace pfm;

namespace {
std::vector<PiLinear> rats(std::initializer_list<Rational> v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("symplectic form and B-field from the period matrix") {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const TorusData t(random_holomorphic(rng, n).T);
    const SymplecticData s = symplectic_data(t);
    REQUIRE(s.omega_exact);
    const QCMatrix inv_t = inverse(t.exact())->transpose();
    CHECK(real_part(inv_t) == *s.bfield_exact);
    CHECK(imag_part(inv_t) == *s.omega_exact);
  }
}

TEST_CASE("Lagrangian and flat conditions together are AT symmetric") {
  Rng rng(13);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 + k % 2;
    const HolomorphicInstance inst = k % 2 ? random_holomorphic(rng, n) : random_generic(rng, n);
    const LagrangianCheck c = lagrangian_check(inst.A, TorusData(inst.T));
    CHECK(c.equivalent_to_AT_symmetric);
    if (k % 2) CHECK(c.lagrangian);
  }
  const TorusData square(QCMatrix{{kI, QComplex(0)}, {QComplex(0), kI}});
  CHECK_FALSE(lagrangian_check(IntMatrix{{0, 1}, {0, 0}}, square).lagrangian);
}

TEST_CASE("alpha and beta") {
  const AffineLagrangian l1{1, IntMatrix{{0}}, rats({Rational(1, 2)}), rats({0})};
  const AffineLagrangian l2{1, IntMatrix{{1}}, rats({2}), rats({0})};
  const AlphaBeta ab = alpha_beta(l1, l2);
  CHECK(ab.alpha == RatMatrix{{-1}});
  CHECK(ab.beta[0] == PiLinear(Rational(3, 2)));
}

TEST_CASE("minors") {
  CHECK(minors_vanish(RatMatrix{{1, 2}, {2, 4}}).vanish);
  const MinorsReport m = minors_vanish(RatMatrix{{1, 0}, {0, 1}});
  CHECK_FALSE(m.vanish);
  CHECK(m.rank == 2);
  REQUIRE(m.nonzero.size() == 1);
  CHECK(m.nonzero[0] == std::array<int, 4>{1, 2, 1, 2});
  CHECK(minors_vanish(RatMatrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}).vanish);
}

TEST_CASE("rank one consistent system has codimension one") {
  const RatMatrix alpha{{1, 2}, {2, 4}};
  const auto beta = rats({1, 2});
  const IntersectionResult r = intersection_codim(alpha, beta);
  CHECK_FALSE(r.empty);
  CHECK(r.codim == 1);
  REQUIRE(r.witness);
  CHECK(r.witness->pivot_row == 1);
  CHECK(r.witness->pivot_col == 1);
  CHECK(witness_satisfies(alpha, beta, *r.witness));

  const IntersectionResult f = intersection_codim(alpha, beta, {IntersectionMode::floating});
  CHECK_FALSE(f.authoritative);
  CHECK(f.codim == 1);
}

TEST_CASE("inconsistent rank one system is outside the hypothesis") {
  const AffineLagrangian l1{1, IntMatrix{{1, 0}, {0, 0}}, rats({0, 0}), rats({0, 0})};
  const AffineLagrangian l2{1, IntMatrix{{0, 0}, {0, 0}}, rats({0, 1}), rats({0, 0})};
  const Theorem41Report rep = theorem41_check(l1, l2);
  CHECK(rep.cone_pf_possible);
  CHECK(rep.codim.empty);
  CHECK(rep.outside_hypothesis);
  CHECK(rep.theorem_satisfied);
}

TEST_CASE("torus mode shifts beta by lattice vectors") {
  // β = (0, 2π): inconsistent on the covering space, codimension one on the torus.
  const AffineLagrangian l1{1, IntMatrix{{1, 0}, {0, 0}}, {PiLinear(0), PiLinear(0)}, rats({0, 0})};
  const AffineLagrangian l2{1, IntMatrix{{0, 0}, {0, 0}}, {PiLinear(0), PiLinear(0, 2)}, rats({0, 0})};
  CHECK(theorem41_check(l1, l2).codim.empty);
  IntersectionOptions opt;
  opt.mode = IntersectionMode::torus;
  const Theorem41Report t = theorem41_check(l1, l2, nullptr, opt);
  CHECK_FALSE(t.codim.empty);
  CHECK(t.codim.codim == 1);
}

TEST_CASE("alpha = 0 cases") {
  const RatMatrix zero{{0, 0}, {0, 0}};
  const IntersectionResult same = intersection_codim(zero, {PiLinear(0, 2), PiLinear(0, -4)});
  CHECK_FALSE(same.empty);
  CHECK(same.codim == 0);
  CHECK(intersection_codim(zero, {PiLinear(0, 1), PiLinear(0)}).empty);
  CHECK(intersection_codim(zero, {PiLinear(1), PiLinear(0)}).empty);
}

TEST_CASE("full rank alpha rules out a flat cone") {
  const AffineLagrangian l1{1, IntMatrix{{1, 0}, {0, 1}}, rats({0, 0}), rats({0, 0})};
  const AffineLagrangian l2{1, IntMatrix{{0, 0}, {0, 0}}, rats({0, 0}), rats({0, 0})};
  const Theorem41Report rep = theorem41_check(l1, l2);
  CHECK_FALSE(rep.cone_pf_possible);
  CHECK(rep.codim.codim == 2);
  CHECK(rep.theorem_satisfied);
}

TEST_CASE("non-Lagrangian input is refused when a torus is given") {
  const TorusData t(QCMatrix{{kI, QComplex(0)}, {QComplex(0), kI}});
  const AffineLagrangian l1{1, IntMatrix{{0, 1}, {0, 0}}, rats({0, 0}), rats({0, 0})};
  const AffineLagrangian l2{1, IntMatrix{{0, 0}, {0, 0}}, rats({0, 0}), rats({0, 0})};
  CHECK_THROWS_AS(theorem41_check(l1, l2, &t), PreconditionError);
}

TEST_CASE("random rank one pairs meet in codimension at most one") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const LagrangianPair p = random_rank1_pair(rng, 1 + k % 3);
    const TorusData t(p.T);
    const Theorem41Report rep = theorem41_check(p.first, p.second, &t);
    CHECK(rep.codim.minors_vanish);
    CHECK_FALSE(rep.codim.empty);
    CHECK(rep.codim.codim <= 1);
  }
}

TEST_CASE("torus mode guard") {
  const AffineLagrangian l1{1, IntMatrix{{1, 0}, {0, 0}}, rats({0, 0}), rats({0, 0})};
  const AffineLagrangian l2{1, IntMatrix{{0, 0}, {0, 0}}, rats({0, 1}), rats({0, 0})};
  IntersectionOptions opt;
  opt.mode = IntersectionMode::torus;
  opt.bound = 50;
  opt.max_candidates = 10;
  CHECK_THROWS_AS(theorem41_check(l1, l2, nullptr, opt), GuardError);
}
