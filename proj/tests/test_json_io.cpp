#include <doctest.h>

#include "pfmirror/errors.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/json_io.hpp"

using namespace pfm;
using nlohmann::json;

TEST_CASE("numbers") {
  CHECK(io::number_from_json(json(3)) == PiComplex(PiLinear(3)));
  CHECK(io::number_from_json(json(0.5)) == PiComplex(PiLinear(Rational(1, 2))));
  CHECK(io::number_from_json(json("2/3")) == PiComplex(PiLinear(Rational(2, 3))));
  CHECK(io::number_from_json(json{{"re", "1/2"}, {"im", -1}}) ==
        PiComplex(PiLinear(Rational(1, 2)), PiLinear(-1)));
  CHECK(io::rational_from_json(json("-7/14")) == Rational(-1, 2));
  CHECK_THROWS_AS(io::rational_from_json(json("pi")), InputError);
  CHECK_THROWS_AS(io::int_from_json(json(1.5)), InputError);
  CHECK_THROWS_AS(io::number_from_json(json::array()), InputError);
}

TEST_CASE("integer matrices") {
  CHECK(io::int_matrix_from_json(json::parse("[[1,2],[3,4]]")) == IntMatrix{{1, 2}, {3, 4}});
  CHECK(io::int_matrix_from_text("[[0,1],[-1,0]]") == IntMatrix{{0, 1}, {-1, 0}});
  CHECK_THROWS_AS(io::int_matrix_from_json(json::parse("[[1,2],[3]]")), InputError);
  CHECK_THROWS_AS(io::int_matrix_from_text("[[1,"), InputError);
}

TEST_CASE("torus and bundle documents") {
  const TorusData t = io::torus_from_json(json::parse(R"({"T": [["i", 0], [0, {"re": 0, "im": 2}]]})"));
  CHECK(t.n() == 2);
  const BundleData b = io::bundle_from_json(json::parse(R"({"r": 1, "A": [[0,0],[0,0]], "mu": ["1/2", 0]})"), t);
  CHECK(b.r == 1);
  CHECK(b.mu.size() == 2);
  CHECK_THROWS(io::bundle_from_json(json::parse(R"({"r": 1, "A": [[0]], "mu": [0]})"), t));
  CHECK_THROWS_AS(io::bundle_from_json(json::parse(R"({"A": [[0,0],[0,0]], "mu": [0,0]})"), t), InputError);
}

TEST_CASE("Lagrangian documents") {
  const AffineLagrangian l = io::lagrangian_from_json(json::parse(R"({"r": 2, "A": [[1]], "p": ["1/3"]})"));
  CHECK(l.r == 2);
  CHECK(l.p[0] == PiLinear(Rational(1, 3)));
  CHECK(l.q[0] == PiLinear(0));
  CHECK_THROWS(io::lagrangian_from_json(json::parse(R"({"r": 0, "A": [[1]], "p": [0]})")));
}

TEST_CASE("cocycle round trip") {
  const auto set = construct_standard(2, IntMatrix{{1}}, 2);
  REQUIRE(set);
  const json j = io::to_json(*set);
  const CocycleSet back = io::cocycle_from_json(j, 2);
  CHECK(back.rank == set->rank);
  CHECK(back.order == set->order);
  REQUIRE(back.V.size() == set->V.size());
  CHECK(back.V[0] == set->V[0]);
  CHECK(back.U[0] == set->U[0]);
  CHECK(io::to_json(back) == j);
}
