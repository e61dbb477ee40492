#include "deltafan/catalog.hpp"
#include "deltafan/io.hpp"
#include "deltafan/triangulate.hpp"
#include "doctest.h"

using namespace deltafan;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

template <class T, class Parse>
void round_trips(const T& x, Parse parse) {
  const std::string text = io::to_json(x);
  const T back = parse(text);
  CHECK(back == x);
  CHECK(io::to_json(back) == text);
}

std::string power_of_ten(int n) { return "1" + std::string(n, '0'); }

}  // namespace

TEST_CASE("polytopes, fans, moves and certificates round-trip byte for byte") {
  for (const auto& p : {catalog::blowup_example(), catalog::cube(4), catalog::cross_polytope(3),
                        catalog::projective_simplex_dual(5)}) {
    round_trips(p, [](const std::string& t) { return io::parse_polytope(t); });
  }
  const auto ex = catalog::blowup_example();
  for (const auto& f : enumerate_delta_maximal(ex, 10)) {
    round_trips(f, [](const std::string& t) { return io::parse_fan(t); });
    for (const auto& m : find_flips(f)) round_trips(m, [](const std::string& t) { return io::parse_move(t); });
    round_trips(smoothness_certificate(f, ex), [](const std::string& t) { return io::parse_certificate(t); });
  }
  round_trips(mpcp(catalog::cube(4)), [](const std::string& t) { return io::parse_fan(t); });
}

TEST_CASE("a decoded move carries the sign partition of its coefficients") {
  const auto f = face_fan(catalog::blowup_example());
  const auto m = find_flips(f).front();
  const auto back = io::parse_move(io::to_json(m));
  CHECK(back.circuit.plus == m.circuit.plus);
  CHECK(back.circuit.minus == m.circuit.minus);
  CHECK(back.circuit.zero == m.circuit.zero);
  CHECK(flip(f, back) == flip(f, m));
}

TEST_CASE("integers are unbounded") {
  // 10^400 + 1 and 10^400 are coprime, so the ray is primitive.
  const std::string big = power_of_ten(400);
  const std::string text = "{\"dim\": 2, \"points\": [[" + big.substr(0, 400) + "1, " + big +
                           "], [0, 1], [-1, 0], [0, -1]], \"max_cones\": [[0, 1], [1, 2], [2, 3], [0, 3]]}";
  const auto f = io::parse_fan(text);
  const Integer expected(big);
  CHECK(f.points().back()[1] == expected);
  CHECK(f.points().back()[0] == expected + 1);
  round_trips(f, [](const std::string& t) { return io::parse_fan(t); });
  CHECK(io::to_json(f).find(big) != std::string::npos);

  // Long digit runs inside strings stay strings; long integers cannot be keys.
  const auto doc = io::parse_json("{\"s\": \"-12345678901234567890123\", \"n\": -12345678901234567890123}");
  CHECK(doc.find("s")->type == io::Json::Type::string);
  CHECK(doc.find("n")->type == io::Json::Type::number);
  CHECK(doc.find("n")->text == "-12345678901234567890123");
  CHECK_THROWS_AS(io::parse_json("{12345678901234567890123: 1}"), io::FormatError);
  CHECK_THROWS_AS(io::parse_json("[012345678901234567890123]"), io::FormatError);
}

TEST_CASE("syntax errors report line and column") {
  try {
    io::parse_polytope("{\n  \"dim\": 4,\n  \"vertices\": [[1, 0 0, 0]]\n}\n");
    FAIL("expected a FormatError");
  } catch (const io::FormatError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 22);
    CHECK(std::string(e.what()).find("line 3, column 22") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_fan(""), io::FormatError);
  CHECK_THROWS_AS(io::parse_fan("{} {}"), io::FormatError);
  try {
    io::parse_fan("{\"dim\": 2,\n \"dim\": 3}");
    FAIL("expected a FormatError");
  } catch (const io::FormatError& e) {
    CHECK(std::string(e.what()).find("duplicate field \"dim\"") != std::string::npos);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("schema errors report the JSON path") {
  auto path_of = [](const std::string& text) {
    try {
      io::parse_fan(text);
    } catch (const io::FormatError& e) {
      return e.path();
    }
    return std::string("no error");
  };
  CHECK(path_of(R"({"dim": 2, "points": [[1, 0], [0, 1.5]], "max_cones": []})") == "$.points[1][1]");
  CHECK(path_of(R"({"dim": 2, "points": [[1, 0], [0]], "max_cones": []})") == "$.points[1]");
  CHECK(path_of(R"({"dim": 2, "points": [], "max_cones": [[0, -1]]})") == "$.max_cones[0][1]");
  CHECK(path_of(R"({"dim": 2, "points": [], "max_cones": [], "extra": 1})") == "$.extra");
  CHECK(path_of(R"({"dim": 2, "points": []})") == "$");
  CHECK(path_of(R"({"dim": "2", "points": [], "max_cones": []})") == "$.dim");
  CHECK(path_of(R"({"dim": 0, "points": [], "max_cones": []})") == "$.dim");
  CHECK(path_of(R"([1, 2])") == "$");
  // Library-level rejections (a repeated ray) surface against the root.
  CHECK(path_of(R"({"dim": 2, "points": [[1, 0], [1, 0]], "max_cones": []})") == "$");

  try {
    io::parse_polytope("{\"dim\": 2, \"vertices\": [[1, 0], [2, 0], [3, 0]]}");
    FAIL("expected an error");
  } catch (const DegeneratePolytopeError&) {
  }
  try {
    io::parse_certificate(R"({"fan_id": "xyz", "smooth": true, "cones": []})");
    FAIL("expected an error");
  } catch (const io::FormatError& e) {
    CHECK(e.path() == "$.fan_id");
  }
}

TEST_CASE("fan_id is FNV-1a 64 of the canonical serialization") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  const auto fans = enumerate_delta_maximal(catalog::blowup_example(), 10);
  REQUIRE(fans.size() == 2);
  for (const auto& f : fans) CHECK(fan_id(f) == fnv1a(io::to_json(f)));
  CHECK(fan_id(fans[0]) != fan_id(fans[1]));
  CHECK(io::hex_id(0xabcULL) == "0000000000000abc");
}

TEST_CASE("the shipped polytope files parse to the catalog polytopes") {
  const std::string dir = DELTAFAN_DATA_DIR;
  CHECK(io::parse_polytope(io::read_file(dir + "/blowup.json")) == catalog::blowup_example());
  CHECK(io::parse_polytope(io::read_file(dir + "/cube4.json")) == catalog::cube(4));
  CHECK(io::parse_polytope(io::read_file(dir + "/cross4.json")) == catalog::cross_polytope(4));
  CHECK(io::parse_polytope(io::read_file(dir + "/simplex4.json")) == catalog::projective_simplex(4));
  CHECK(io::parse_polytope(io::read_file(dir + "/square_sum.json")) == catalog::square_sum());
  CHECK(io::parse_polytope(io::read_file(dir + "/p5_dual.json")) == catalog::projective_simplex_dual(5));
  CHECK_THROWS_AS(io::read_file(dir + "/missing.json"), std::runtime_error);
}
