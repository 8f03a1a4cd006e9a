#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "relator/dsl.hpp"

using namespace relator;
using namespace relator::dsl;

static std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("RELATOR_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

TEST_CASE("the flagship document parses") {
  auto d = parse_file(fixture_path("example.rel"));
  CHECK(d.group->describe() == "free(3)");
  CHECK(d.letters == std::vector<std::string>{"e", "a"});
  CHECK(d.elems.size() == 3);
  REQUIRE(d.relators.size() == 1);
  const auto& R = d.relators[0].second;
  REQUIRE(R.size() == 4);
  CHECK(R.terms[0].sl == SignedLetter{"e", 1});
  CHECK(R.terms[0].h == d.group->identity());
  CHECK(R.terms[1].h == "g1");
  CHECK(R.terms[2].sl == SignedLetter{"e", -1});
  CHECK(R.terms[3].h == "g3");
  auto p = d.presentation();
  CHECK(p.alphabet == d.letters);
  CHECK(p.relators.size() == 1);
}

TEST_CASE("words and queries") {
  auto d = parse_file(fixture_path("commutator.rel"));
  REQUIRE(d.find_word("u") != nullptr);
  REQUIRE(d.find_word("v") != nullptr);
  CHECK(d.find_word("missing") == nullptr);
  auto q = d.parse_query("x y^-1");
  REQUIRE(q.size() == 2);
  CHECK(q[1].sl == SignedLetter{"y", -1});
  CHECK_THROWS_AS(d.parse_query("nope"), Error);
}

TEST_CASE("inline coefficient literals and leading coefficients") {
  auto d = parse_document(
      "group H = Z(6)\n"
      "letters x\n"
      "elem h = 2\n"
      "relator R = {h} x {4} x^-1\n");
  const auto& R = d.relators[0].second;
  REQUIRE(R.size() == 2);
  CHECK(R.terms[0].sl == SignedLetter{"x", 1});
  CHECK(R.terms[0].h == "4");
  // the leading {h} folds cyclically into the last slot
  CHECK(R.terms[1].h == "2");
}

TEST_CASE("unreduced skeletons are accepted by the grammar") {
  auto d = parse_document(
      "group H = Z(2)\n"
      "letters x\n"
      "relator R = x {1} x^-1\n");
  CHECK(d.relators[0].second.size() == 2);
}

TEST_CASE("free products in the group line") {
  auto d = parse_document(
      "group H = Z(2) * free(1)\n"
      "letters x\n"
      "elem a = 1:1\n"
      "elem b = 2:g1\n"
      "relator R = x {a} x {b}\n");
  CHECK(d.group_factors == std::vector<std::string>{"Z(2)", "free(1)"});
  CHECK(d.group->multiply(d.elems[0].second, d.elems[0].second) ==
        d.group->identity());
}

TEST_CASE("table groups load relative to the document") {
  auto d = parse_document(
      "group H = table S3.tbl\n"
      "letters x\n"
      "elem t = 1\n"
      "relator R = x x {t}\n",
      [](const std::string& name) { return slurp(fixture_path(name)); });
  CHECK(d.group->elements()->size() == 6);
  // 1 is the transposition swapping the first two points: an involution
  CHECK(d.group->multiply("1", "1") == d.group->identity());
  CHECK(parse_table(slurp(fixture_path("S3.tbl"))).size() == 6);
}

TEST_CASE("errors carry line and column") {
  try {
    parse_document("group H = trivial\nletters x\nrelator R = x {zz} \n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col > 1);
  }
  CHECK_THROWS_AS(parse_document("letters x\n"), ParseError);  // group first
  CHECK_THROWS_AS(parse_document("group H = trivial\nletters x, x\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document("group H = trivial\nletters x\nrelator R = x\n"
                     "relator R = x\n"),
      ParseError);
}

TEST_CASE("print then parse round-trips") {
  for (const auto& name : {"example.rel", "commutator.rel"}) {
    auto d = parse_file(fixture_path(name));
    std::string printed = print_document(d);
    auto d2 = parse_document(printed);
    CHECK(d2.letters == d.letters);
    CHECK(d2.group->describe() == d.group->describe());
    REQUIRE(d2.relators.size() == d.relators.size());
    for (size_t i = 0; i < d.relators.size(); ++i) {
      CHECK(d2.relators[i].first == d.relators[i].first);
      CHECK(d2.relators[i].second == d.relators[i].second);
    }
    CHECK(d2.words.size() == d.words.size());
    // printing is idempotent
    CHECK(print_document(d2) == printed);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  auto d = parse_document(
      "# leading comment\n"
      "group H = trivial  # trailing comment\n"
      "\n"
      "letters x\n"
      "relator R = x x  # square\n");
  CHECK(d.relators.size() == 1);
}
