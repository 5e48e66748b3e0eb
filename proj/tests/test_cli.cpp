#include <doctest.h>

#include <cstdio>

#include "qo/classifier.hpp"
#include "qo/mapdoc.hpp"
#include "qo_testutil.hpp"

using namespace qo;
using namespace qo::testutil;

TEST_CASE("map document round trip") {
  Rng rng(103);
  for (int i = 0; i < 40; ++i) {
    std::vector<QuadComponent> cs;
    int n = 1 + (int)(rng.next() % 5);
    for (int k = 0; k < n; ++k)
      cs.push_back(QuadComponent{rng.rational(9, 7), rng.rational(9, 7),
                                 rng.rational(9, 7), rng.rational(9, 7),
                                 rng.rational(9, 7), rng.rational(9, 7)});
    QuadMap F = QuadMap::make(rng.next() % 2 ? Field::C : Field::R, std::move(cs));
    CHECK(parse_map_document(serialize_map_document(F)) == F);
  }
}

TEST_CASE("map document errors carry positions") {
  CHECK_THROWS_AS((void)parse_map_document("not json"), MapDocError);
  CHECK_THROWS_AS((void)parse_map_document("{\"field\":\"Q\",\"components\":[[0,0,0,0,0,0]]}"),
                  MapDocError);
  try {
    (void)parse_map_document(
        "{\"field\":\"C\",\"components\":[[1,0,0,0,1,0],[0,0,1,1,0]]}");
    CHECK(false);
  } catch (const MapDocError& e) {
    CHECK(std::string(e.what()).find("components[1]") != std::string::npos);
  }
  try {
    (void)parse_map_document(
        "{\"field\":\"C\",\"components\":[[1,0,0,0,\"2/x\",0]]}");
    CHECK(false);
  } catch (const MapDocError& e) {
    CHECK(std::string(e.what()).find("components[0][4]") != std::string::npos);
  }
}

TEST_CASE("expression parser") {
  QuadMap F = parse_expr_map("x^2+y, y^2+x, xy", Field::C);
  CHECK(F == lookup(LabelId::F1).normal_form);
  QuadMap F2 = parse_expr_map("x^2+y, y^2+x, xy + (1/2)x + (1/2)y", Field::C);
  CHECK(F2 == lookup(LabelId::F2).normal_form);
  QuadMap F2b = parse_expr_map("x^2+y, y^2+x, xy + x/2 + y/2", Field::C);
  CHECK(F2b == lookup(LabelId::F2).normal_form);
  QuadMap M = parse_expr_map("2x y - 3/2, -x^2, 0", Field::R);
  CHECK(M.comps[0].b == Rational(2));
  CHECK(M.comps[0].g == Rational(-3, 2));
  CHECK(M.comps[1].a == Rational(-1));
  CHECK_THROWS_AS((void)parse_expr_map("x^3, y, 0", Field::C), MapDocError);
  CHECK_THROWS_AS((void)parse_expr_map("x +, y, 0", Field::C), MapDocError);
  CHECK_THROWS_AS((void)parse_expr_map("z, y, 0", Field::C), MapDocError);
}

TEST_CASE("classification json is byte-identical across runs") {
  QuadMap F = parse_expr_map("x^2+y, y^2+x, xy", Field::C);
  auto r1 = classification_json(F, classify(F, 5), false, 0.0);
  auto r2 = classification_json(F, classify(F, 5), false, 123.0);
  CHECK(r1 == r2);
  CHECK(r1.find("\"label\": \"F1\"") != std::string::npos);
  CHECK(r1.find("elapsed") == std::string::npos);
}

#ifdef QO_BINARY_PATH
namespace {

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(QO_BINARY_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("command line end to end") {
  auto [code, out] = run_cli("classify --expr \"x^2+y, y^2+x, xy\"");
  CHECK(code == 0);
  CHECK(out.find("\"F1\"") != std::string::npos);

  auto [code2, out2] = run_cli("classify --expr \"x^2-y^2, xy, 0\" --field R");
  CHECK(code2 == 0);
  CHECK(out2.find("\"F13'\"") != std::string::npos);

  auto [code3, out3] = run_cli("classify --expr \"x^^, y, 0\"");
  CHECK(code3 == 2);

  auto [code4, out4] = run_cli("poset --format dot");
  CHECK(code4 == 0);
  CHECK(out4.find("digraph") != std::string::npos);

  auto [code5, out5] = run_cli("witness --expr \"x^2+y, y^2+x, xy - 3/2x - 3/2y\"");
  CHECK(code5 == 0);
  CHECK(out5.find("\"exact\": true") != std::string::npos);

  auto [code6, out6] = run_cli("family --edge G2:G3");
  CHECK(code6 == 0);
  CHECK(out6.find("PASS") != std::string::npos);

  // byte-identical reruns
  auto [c7a, o7a] = run_cli("classify --seed 3 --expr \"x^2+y, y^2+x, 0\"");
  auto [c7b, o7b] = run_cli("classify --seed 3 --expr \"x^2+y, y^2+x, 0\"");
  CHECK(c7a == 0);
  CHECK(o7a == o7b);
}
#endif
