#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "relator/core.hpp"
#include "support/corpus.hpp"

using namespace relator;

TEST_CASE("word parsing and reduction") {
  Word w = parse_word("x y^-1 y x^-1 z");
  CHECK(w.size() == 5);
  CHECK(to_string(free_reduce(w)) == "z");
  CHECK(to_string(parse_word("")) == "1");
  CHECK(free_reduce(parse_word("x x^-1")).empty());
  CHECK(is_cyclically_reduced(parse_word("x y")));
  CHECK(!is_cyclically_reduced(parse_word("x y x^-1")));
  CHECK(is_cyclically_reduced(parse_word("")));
  Word r = parse_word("x y^-1");
  CHECK(to_string(r.inverse()) == "y x^-1");
}

TEST_CASE("cyclic group arithmetic") {
  auto z5 = make_cyclic_group(5);
  CHECK(z5->identity() == "0");
  CHECK(z5->multiply("3", "4") == "2");
  CHECK(z5->inverse("2") == "3");
  CHECK(z5->elements()->size() == 5);
  CHECK(z5->pow("1", 7) == "2");
  CHECK(z5->pow("2", -1) == "3");
  CHECK(z5->parse("7") == "2");
  CHECK(z5->parse("-1") == "4");
  CHECK_THROWS_AS(z5->parse("bad"), Error);
}

TEST_CASE("infinite cyclic group") {
  auto z = make_infinite_cyclic_group();
  CHECK(z->multiply("3", "-5") == "-2");
  CHECK(z->inverse("4") == "-4");
  CHECK(!z->elements());
}

TEST_CASE("table group: S3") {
  auto s3 = make_table_group(testsupport::s3_table());
  auto elems = *s3->elements();
  CHECK(elems.size() == 6);
  // group axioms hold on the whole table
  for (const auto& a : elems) {
    CHECK(s3->multiply(a, s3->inverse(a)) == s3->identity());
    for (const auto& b : elems)
      CHECK(s3->contains(s3->multiply(a, b)));
  }
  // S3 is nonabelian
  bool commutes = true;
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (s3->multiply(a, b) != s3->multiply(b, a)) commutes = false;
  CHECK(!commutes);
}

TEST_CASE("table group rejects non-groups") {
  std::vector<std::vector<int>> bad{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(make_table_group(bad), Error);
}

TEST_CASE("free group elements") {
  auto f2 = make_free_group(2);
  Elem a = f2->parse("g1");
  Elem b = f2->parse("g2^-1");
  Elem ab = f2->multiply(a, b);
  CHECK(ab == "g1 g2^-1");
  CHECK(f2->multiply(ab, f2->inverse(ab)) == f2->identity());
  CHECK(f2->multiply("g1", "g1^-1") == f2->identity());
  CHECK(!f2->elements());
  CHECK(f2->generators().size() == 2);
}

TEST_CASE("free products flatten and drop trivial factors") {
  auto g = make_free_product({make_trivial_group(),
                              make_free_product({make_cyclic_group(2),
                                                 make_cyclic_group(3)}),
                              make_infinite_cyclic_group()});
  // trivial factor dropped, nested product flattened: components are
  // Z2, Z3, Z with 1-based indices
  Elem x = g->parse("1:1");   // Z2 generator
  Elem y = g->parse("2:2");   // Z3 element
  Elem z = g->parse("3:5");   // Z element
  Elem w = g->multiply(g->multiply(x, y), z);
  CHECK(g->multiply(w, g->inverse(w)) == g->identity());
  CHECK(g->multiply(x, x) == g->identity());
  CHECK(g->multiply(y, g->parse("2:1")) == g->identity());
  CHECK(g->multiply(z, g->parse("3:-5")) == g->identity());
  CHECK_THROWS_AS(g->parse("4:1"), Error);
}

TEST_CASE("presentation validation") {
  RelativePresentation p;
  p.group = make_trivial_group();
  p.alphabet = {"x", "x"};
  p.relators.push_back({{{{"x", 1}, p.group->identity()}}});
  CHECK_THROWS_AS(p.validate(), Error);
  p.alphabet = {"x"};
  CHECK_NOTHROW(p.validate());
  p.relators[0].terms[0].sl.letter = "y";
  CHECK_THROWS_AS(p.validate(), Error);
}

static RelativeRelator rel(const CoeffGroup& H, const std::string& skel,
                           const std::vector<std::string>& coeffs) {
  Word w = parse_word(skel);
  RelativeRelator r;
  for (size_t i = 0; i < w.size(); ++i)
    r.terms.push_back({w.syllables[i],
                       i < coeffs.size() && !coeffs[i].empty()
                           ? H.parse(coeffs[i])
                           : H.identity()});
  return r;
}

TEST_CASE("relator inverse and rotation") {
  auto z = make_infinite_cyclic_group();
  RelativeRelator r = rel(*z, "x y x^-1", {"2", "3", "-1"});
  RelativeRelator rr = relator_inverse(*z, relator_inverse(*z, r));
  CHECK(rr == r);
  CHECK(skeleton(relator_inverse(*z, r)) == skeleton(r).inverse());
  RelativeRelator rot = relator_rotate(r, 1);
  CHECK(rot.terms[0] == r.terms[1]);
  CHECK(rot.terms[2] == r.terms[0]);
  CHECK(relator_rotate(r, 3) == r);
}

TEST_CASE("relator power") {
  auto z = make_cyclic_group(4);
  RelativeRelator r = rel(*z, "x y", {"1", "2"});
  RelativeRelator r3 = power(*z, r, 3);
  CHECK(r3.size() == 6);
  CHECK(r3.terms[4] == r.terms[0]);
  CHECK_THROWS_AS(power(*z, r, 0), Error);
}

TEST_CASE("substitution carries coefficients cyclically") {
  auto z = make_infinite_cyclic_group();
  // S = y z y^-1 z^-1 with identity coefficients, R = x h
  RelativeRelator S = rel(*z, "y z y^-1 z^-1", {});
  RelativeRelator R = rel(*z, "x", {"1"});
  RelativeRelator out = substitute(*z, S, "z", R);
  CHECK(to_string(skeleton(out)) == "y x y^-1 x^-1");
  CHECK(out.terms[0].h == "0");
  CHECK(out.terms[1].h == "1");   // R's coefficient
  CHECK(out.terms[2].h == "-1");  // R^-1 pulls the inverse coefficient back
  CHECK(out.terms[3].h == "0");
}

TEST_CASE("restrict_alphabet drops unused letters") {
  RelativePresentation p;
  p.group = make_trivial_group();
  p.alphabet = {"x", "y", "z"};
  p.relators.push_back(rel(*p.group, "x y x^-1 y^-1", {}));
  auto res = restrict_alphabet(p);
  CHECK(res.restricted.alphabet == std::vector<std::string>{"x", "y"});
  CHECK(res.free_rank == 1);
  CHECK(res.dropped == std::vector<std::string>{"z"});
}

TEST_CASE("free product normal forms alternate and reduce") {
  auto z2 = make_cyclic_group(2);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    MixedWord w;
    int len = 1 + (int)(rng() % 8);
    for (int i = 0; i < len; ++i) {
      if (rng() % 3 == 0)
        w.push_back(MixedItem::of_coeff(rng() % 2 ? "1" : "0"));
      else
        w.push_back(MixedItem::of_letter(
            {std::string(1, (char)('a' + rng() % 2)), rng() % 2 ? 1 : -1}));
    }
    FreeProductElement e = fp_normalize(*z2, w);
    // alternation and nontriviality of every syllable
    for (size_t i = 0; i < e.syllables.size(); ++i) {
      if (i)
        CHECK(e.syllables[i].is_coeff != e.syllables[i - 1].is_coeff);
      if (e.syllables[i].is_coeff)
        CHECK(e.syllables[i].h != z2->identity());
      else {
        CHECK(!e.syllables[i].w.empty());
        CHECK(free_reduce(e.syllables[i].w) == e.syllables[i].w);
      }
    }
    // x x^-1 = 1
    CHECK(fp_mul(*z2, e, fp_inverse(*z2, e)).is_identity());
    // normalization is idempotent through mixed round trips
    CHECK(fp_normalize(*z2, fp_to_mixed(e)) == e);
  }
}

TEST_CASE("fp_mul is associative on samples") {
  auto s3 = make_table_group(testsupport::s3_table());
  std::mt19937 rng(11);
  auto rand_fp = [&]() {
    MixedWord w;
    int len = (int)(rng() % 6);
    for (int i = 0; i < len; ++i) {
      if (rng() % 2)
        w.push_back(MixedItem::of_coeff(std::to_string(rng() % 6)));
      else
        w.push_back(MixedItem::of_letter(
            {std::string(1, (char)('a' + rng() % 2)), rng() % 2 ? 1 : -1}));
    }
    return fp_normalize(*s3, w);
  };
  for (int trial = 0; trial < 100; ++trial) {
    auto a = rand_fp(), b = rand_fp(), c = rand_fp();
    CHECK(fp_mul(*s3, fp_mul(*s3, a, b), c) ==
          fp_mul(*s3, a, fp_mul(*s3, b, c)));
  }
}

TEST_CASE("hom verification") {
  auto p = std::make_shared<RelativePresentation>();
  p->group = make_cyclic_group(2);
  p->alphabet = {"x", "y"};
  p->relators.push_back(rel(*p->group, "x y x^-1 y^-1", {"1"}));

  HomomorphismData id = identity_hom(p);
  CHECK(verify_hom(id).pass);
  CHECK(id.verified);

  // x -> y x y^-1 maps the relator to a conjugate, not a cyclic rotation
  HomomorphismData bad = identity_hom(p);
  bad.images["x"] = fp_normalize(*p->group, {MixedItem::of_letter({"y", 1})});
  auto rep = verify_hom(bad);
  CHECK(!rep.pass);
}

TEST_CASE("apply_hom respects inverses and coefficients") {
  auto p = std::make_shared<RelativePresentation>();
  p->group = make_cyclic_group(3);
  p->alphabet = {"x"};
  p->relators.push_back(rel(*p->group, "x x x", {}));
  HomomorphismData id = identity_hom(p);
  MixedWord w{MixedItem::of_coeff("2"), MixedItem::of_letter({"x", -1})};
  auto img = apply_hom(id, w);
  CHECK(fp_to_string(img) == "[2] . x^-1");
  auto round = fp_mul(*p->group, img, fp_inverse(*p->group, img));
  CHECK(round.is_identity());
}
