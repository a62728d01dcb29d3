#include <sstream>

#include "afftree/json_io.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace afftree;
using json_io::Json;

TEST_CASE("words as strings") {
  CHECK(json_io::word_to_string({0, 1, 1}, 2) == "011");
  CHECK(json_io::word_to_string({10, 3}, 12) == "10,3");
  CHECK(json_io::word_from_string("10,3", 12) == Word{10, 3});
  CHECK(json_io::word_from_string("", 2).empty());
  CHECK_THROWS_AS(json_io::word_from_string("012", 2), ParseError);
  CHECK_THROWS_AS(json_io::word_from_string("1,,2", 12), ParseError);
}

TEST_CASE("affine data round trip") {
  oracle::Rng rng(137);
  for (int d : {2, 3, 5}) {
    for (int k = 0; k < 30; ++k) {
      const AffineAutomorphism p(oracle::random_matrix(rng, d), oracle::random_epseq(rng, d));
      const auto text = json_io::to_json(p).dump();
      CHECK(json_io::affine_from_json(Json::parse(text)) == p);
      CHECK(json_io::matrix_from_json(json_io::to_json(p.matrix())) == p.matrix());
    }
  }
  const auto j = Json::parse(R"({"d":2,"A":{"d":3,"base_rows":[],"template_rows":["pre:1|per:0"]},"b":"pre:|per:0"})");
  CHECK_THROWS(json_io::affine_from_json(j));
  CHECK_THROWS(json_io::affine_from_json(Json::parse(R"({"d":2,"b":"pre:|per:0"})")));
}

TEST_CASE("machine round trip") {
  oracle::Rng rng(139);
  for (int k = 0; k < 30; ++k) {
    const auto m = oracle::random_machine(rng, oracle::uniform(rng, 2, 4), oracle::uniform(rng, 1, 5));
    CHECK(json_io::machine_from_json(json_io::to_json(m)) == m);
  }
  CHECK_THROWS(json_io::machine_from_json(Json::parse(R"j({"d":2,"states":[{"name":"a","sections":["b","a"],"perm":"()"}]})j")));
}

TEST_CASE("command line runs are deterministic") {
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int rc = cli::run(args, out, err);
    return std::pair{rc, out.str()};
  };
  const auto first = run({"detect-affine", "--element", "a*c"});
  CHECK(first.first == 0);
  CHECK(first == run({"detect-affine", "--element", "a*c"}));
  CHECK(run({"sh-test", "--element", "a*c"}).first == 1);
  CHECK(run({"sh-test", "--element", "q"}).first == 2);
  CHECK(run({"order", "--element", "a", "--format", "yaml"}).first == 2);
  CHECK(run({"pq-trace", "--p", "1", "--format", "text"}).second.find("trivial_by_dynamics: false") !=
        std::string::npos);
}
