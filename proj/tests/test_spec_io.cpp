#include "doctest.h"
#include "mono/spec_io.hpp"

using namespace mono;

namespace {

const char* kMinimal = R"({
  "rank": 2,
  "poles": [[0, 0]],
  "residues": [[[[0, 0], [1, 0]], [[0, 0], [0, 0]]]],
  "loops": {"g1": {"kind": "circle", "center": [0, 0], "radius": 1.0}}
})";

}  // namespace

TEST_CASE("a minimal spec parses") {
  const SystemSpec spec = parse_spec(kMinimal);
  CHECK(spec.rank == 2);
  CHECK(spec.form.poles().size() == 1);
  CHECK(spec.form.residues()[0](0, 1) == Complex(1, 0));
  CHECK(spec.loops.size() == 1);
  CHECK(spec.generator_order == std::vector<std::string>{"g1"});
  CHECK(spec.loop("g1").closed());
  CHECK_FALSE(spec.higgs.has_value());
  CHECK(spec.theta.empty());
}

TEST_CASE("duplicate poles are a schema error") {
  const char* text = R"({
    "rank": 1,
    "poles": [[1, 0], [1, 0]],
    "residues": [[[[1, 0]]], [[[1, 0]]]],
    "loops": {}
  })";
  try {
    parse_spec(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& err) {
    CHECK(std::string(err.what()).find("poles distinct") != std::string::npos);
  }
}

TEST_CASE("non-square residues are a schema error") {
  const char* text = R"({
    "rank": 2,
    "poles": [[0, 0]],
    "residues": [[[[0, 0], [1, 0], [2, 0]], [[0, 0], [0, 0], [0, 0]]]],
    "loops": {}
  })";
  try {
    parse_spec(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& err) {
    CHECK(std::string(err.what()).find("square of declared rank") !=
          std::string::npos);
  }
}

TEST_CASE("malformed json reports line and column") {
  try {
    parse_spec("{\n  \"rank\": 2,\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 3);
    CHECK(err.column >= 1);
  }
}

TEST_CASE("words must reference defined loops") {
  const char* text = R"({
    "rank": 1,
    "poles": [[0, 0]],
    "residues": [[[[1, 0]]]],
    "loops": {"g1": {"kind": "circle", "center": [0, 0], "radius": 1.0}},
    "words": {"w": [["nope", 1]]}
  })";
  CHECK_THROWS_AS(parse_spec(text), SchemaError);
}

TEST_CASE("generator lists must name defined loops") {
  const char* text = R"({
    "rank": 1,
    "poles": [[0, 0]],
    "residues": [[[[1, 0]]]],
    "loops": {"g1": {"kind": "circle", "center": [0, 0], "radius": 1.0}},
    "generators": ["g1", "g2"]
  })";
  CHECK_THROWS_AS(parse_spec(text), SchemaError);
}

TEST_CASE("word exponents are restricted to +-1") {
  const char* text = R"({
    "rank": 1,
    "poles": [[0, 0]],
    "residues": [[[[1, 0]]]],
    "loops": {"g1": {"kind": "circle", "center": [0, 0], "radius": 1.0}},
    "words": {"w": [["g1", 2]]}
  })";
  CHECK_THROWS_AS(parse_spec(text), SchemaError);
}

TEST_CASE("full spec with all blocks parses and resolves") {
  const char* text = R"({
    "rank": 2,
    "poles": [[0, 0], [1, 0]],
    "residues": [
      [[[0.1, 0], [0, 0]], [[0, 0], [-0.1, 0]]],
      [[[0, 0.2], [0, 0]], [[0, 0], [0, -0.2]]]
    ],
    "polynomial": [[[[0, 0], [0.5, 0]], [[0, 0], [0, 0]]]],
    "higgs": {
      "poles": [[0, 0]],
      "residues": [[[[0.3, 0], [0, 0]], [[0, 0], [-0.3, 0]]]]
    },
    "theta": [
      {"poles": [[0, 0]], "residues": [[1, 0]]},
      {"poles": [[1, 0]], "residues": [[0, 1]], "polynomial": [[0.1, 0]]}
    ],
    "algebra": {
      "generators": 2,
      "relations": [[[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]]
    },
    "loops": {
      "a": {"kind": "lasso", "base": [3, 0], "around": [0, 0], "radius": 0.4},
      "b": {"kind": "lasso", "base": [3, 0], "around": [1, 0], "radius": 0.4},
      "c": {"kind": "path", "segments": [
        {"kind": "line", "from": [3, 0], "to": [3, 1]},
        {"kind": "arc", "center": [3, 0], "radius": 1.0, "from_angle": 1.5707963267948966, "to_angle": 0},
        {"kind": "bezier", "points": [[4, 0], [4, -1], [2, -1], [3, 0]]}
      ]}
    },
    "generators": ["a", "b"],
    "words": {"w1": [["a", 1], ["b", -1]]}
  })";
  const SystemSpec spec = parse_spec(text);
  CHECK(spec.higgs.has_value());
  CHECK(spec.theta.size() == 2);
  CHECK(spec.relations.has_value());
  CHECK(spec.relations->relations().size() == 1);
  CHECK(spec.loops.size() == 3);
  CHECK(spec.generator_order == std::vector<std::string>{"a", "b"});
  const LoopWord w = spec.word("w1");
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0] == std::pair<int, int>{0, 1});
  CHECK(w.letters[1] == std::pair<int, int>{1, -1});
  CHECK(spec.loop("c").closed());
  CHECK(spec.generator_loops().size() == 2);
}
