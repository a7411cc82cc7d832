#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pfm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("mindim output is exact") {
  const Outcome o = run({"heisenberg", "mindim", "--r", "2", "--A", "[[1,0],[0,1]]"});
  CHECK(o.code == 0);
  CHECK(o.out == "{\"m\":4,\"exists_at_rank_r\":false}\n");
}

TEST_CASE("valid torus passes, singular torus fails") {
  const Outcome ok = run({"validate", "-i", R"({"torus":{"T":[["i"]]}})"});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out).at("pass") == true);
  const Outcome bad = run({"validate", "-i", R"({"torus":{"T":[[{"re":1,"im":0}]]}})"});
  CHECK(bad.code == 1);
}

TEST_CASE("malformed input exits with 2") {
  CHECK(run({"validate", "-i", "{not json"}).code == 2);
  CHECK(run({"validate", "-i", R"({"nothing":1})"}).code == 2);
  CHECK(run({"validate", "-i", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"heisenberg", "mindim", "--r", "0", "--A", "[[1]]"}).code == 2);
}

TEST_CASE("automorphy refuses a non-holomorphic bundle") {
  const Outcome o = run({"automorphy", "-i",
                         R"({"torus":{"T":[["i",0],[0,"i"]]},"bundle":{"r":1,"A":[[0,1],[0,0]],"mu":[0,0]}})"});
  CHECK(o.code == 1);
  CHECK(nlohmann::json::parse(o.out).contains("precondition_failed"));
}

TEST_CASE("mirror intersect") {
  const std::string doc =
      R"({"first":{"r":1,"A":[[1,2],[2,4]],"p":[0,0]},"second":{"r":1,"A":[[0,0],[0,0]],"p":[1,2]}})";
  const Outcome o = run({"mirror", "intersect", "-i", doc});
  CHECK(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j.at("pass") == true);
  CHECK(run({"mirror", "intersect", "--mode", "sideways", "-i", doc}).code == 2);
}

TEST_CASE("worked example fixture") {
  const Outcome o = run({"fixture", "section5"});
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out).at("pass") == true);
  CHECK(run({"fixture", "section5", "--tau", "1"}).code == 2);
}

TEST_CASE("suite subsets are reproducible") {
  const Outcome a = run({"suite", "--only", "1,2,6"});
  const Outcome b = run({"suite", "--only", "1,2,6"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Outcome c = run({"suite", "--only", "2", "--seed", "5"});
  CHECK(c.code == 0);
  CHECK(c.out != run({"suite", "--only", "2", "--seed", "6"}).out);
}
