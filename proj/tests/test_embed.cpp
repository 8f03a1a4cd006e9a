#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "relator/embed.hpp"
#include "support/corpus.hpp"

using namespace relator;
using namespace relator::embed;
using weights::MaxMinClass;

static RelativePresentation pres(CoeffGroupPtr H,
                                 std::vector<std::string> alphabet,
                                 const std::string& skeleton_text) {
  RelativePresentation p;
  p.group = std::move(H);
  p.alphabet = std::move(alphabet);
  RelativeRelator r;
  for (const auto& s : parse_word(skeleton_text).syllables)
    r.terms.push_back({s, p.group->identity()});
  p.relators.push_back(std::move(r));
  p.validate();
  return p;
}

static bool strong_under_one(const RelativePresentation& p) {
  auto rep = weights::classify(skeleton(p.relators[0]),
                               weights::constant_one(p.alphabet));
  auto c = weights::report_class(rep);
  return c && *c == MaxMinClass::StrongUniqueMaxMin;
}

TEST_CASE("identity pair verifies") {
  auto p = std::make_shared<RelativePresentation>(
      pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1"));
  auto pair = identity_pair(p);
  CHECK(verify_retraction(pair));
  CHECK(pair.roundtrip_verified);
}

TEST_CASE("stretch splits heavy letters and flips negative ones") {
  // theta = (x: 2, y: -1) is admissible and strict for x y y
  auto p = pres(make_cyclic_group(2), {"x", "y"}, "x y y");
  auto cert = weights::search_certificate(skeleton(p.relators[0]),
                                          MaxMinClass::UniqueMaxMin);
  REQUIRE(cert);
  auto st = stretch(p, *cert);
  CHECK(st.pair.roundtrip_verified);
  // every letter of the result has weight one: relator length = sum |theta|
  size_t expected = 0;
  for (const auto& s : skeleton(p.relators[0]).syllables)
    expected += (size_t)std::abs(cert->theta.values.at(s.letter));
  CHECK(skeleton(st.presentation.relators[0]).size() == expected);
  // split bookkeeping covers exactly the heavy letters
  for (const auto& [y, parts] : st.split)
    CHECK((int)parts.size() == std::abs(cert->theta.values.at(y)));
  for (const auto& x : st.flipped)
    CHECK(cert->theta.values.at(x) < 0);
  // the new skeleton still carries a unique max-min certificate under 1
  auto rep = weights::classify(skeleton(st.presentation.relators[0]),
                               weights::constant_one(st.presentation.alphabet));
  CHECK(weights::report_class(rep).has_value());
}

TEST_CASE("strengthen is a no-op on already strong input") {
  auto p = pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1");
  auto sg = strengthen(p);
  CHECK(!sg.changed);
  CHECK(sg.presentation.relators[0] == p.relators[0]);
}

TEST_CASE("strengthen separating extremes") {
  // a b^-1 c^-1 d under weight 1: max letters {a,b}, min letters {c,d},
  // disjoint, so unique-max-min but not strong.
  auto p = pres(make_cyclic_group(3), {"a", "b", "c", "d"}, "a b^-1 c^-1 d");
  auto rep0 = weights::classify(skeleton(p.relators[0]),
                                weights::constant_one(p.alphabet));
  REQUIRE(*weights::report_class(rep0) == MaxMinClass::UniqueMaxMin);
  auto sg = strengthen(p);
  CHECK(sg.changed);
  CHECK(!sg.e.empty());
  CHECK(sg.pair.roundtrip_verified);
  CHECK(strong_under_one(sg.presentation));
}

TEST_CASE("pipeline lands on a strong presentation with verified pair") {
  for (const auto& p : testsupport::mh_corpus(25, 2024)) {
    auto ts = to_strong(p);
    REQUIRE(ts.found);
    CHECK(ts.pair.roundtrip_verified);
    CHECK(strong_under_one(ts.presentation));
    CHECK(!ts.e.empty());
    // the designated letter really sits at both extremes
    auto rep = weights::classify(
        skeleton(ts.presentation.relators[0]),
        weights::constant_one(ts.presentation.alphabet));
    bool at_max = false, at_min = false;
    for (const auto& l : rep.letters_at_max) at_max |= l == ts.e;
    for (const auto& l : rep.letters_at_min) at_min |= l == ts.e;
    CHECK(at_max);
    CHECK(at_min);
  }
}

TEST_CASE("pipeline reports failure when no certificate exists") {
  auto p = pres(make_trivial_group(), {"x"}, "x x");
  auto ts = to_strong(p);
  CHECK(!ts.found);
}

TEST_CASE("corrupted pairs fail verification") {
  auto p = std::make_shared<RelativePresentation>(
      pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1"));
  auto pair = identity_pair(p);
  // redirect mu(x) to y: rho(mu(x)) = y != x
  pair.mu.images["x"] = fp_of_letter({"y", 1});
  CHECK(!verify_retraction(pair));
  CHECK(!pair.roundtrip_verified);
}
