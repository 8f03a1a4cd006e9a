#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relator/kernel.hpp"
#include "relator/quotients.hpp"
#include "support/corpus.hpp"

using namespace relator;
using namespace relator::quotients;

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

static MixedWord mw(const std::string& text) {
  return mixed_of(parse_word(text));
}

TEST_CASE("permutation arithmetic") {
  Perm a{1, 2, 0};  // (0 1 2)
  Perm b{1, 0, 2};  // (0 1)
  CHECK(perm_mul(a, perm_inverse(a)) == perm_identity(3));
  CHECK(perm_mul(a, b) == Perm{2, 1, 0});  // a(b(i))
  CHECK(perm_mul(b, a) == Perm{0, 2, 1});
  CHECK(perm_cycles(perm_identity(3)) == "()");
  CHECK(perm_cycles(a) == "(0 1 2)");
  CHECK(perm_cycles(Perm{1, 0, 3, 2}) == "(0 1)(2 3)");
}

TEST_CASE("default catalog") {
  auto trivial_only = default_catalog(*make_trivial_group(), 5);
  CHECK(trivial_only.size() == 1);
  CHECK(trivial_only[0].name == "trivial");

  auto z3 = make_cyclic_group(3);
  CHECK(default_catalog(*z3, 2).size() == 1);  // too small for the regular rep
  auto with_reg = default_catalog(*z3, 3);
  CHECK(with_reg.size() == 2);
  // the regular representation is injective and multiplicative
  const auto& reg = with_reg[1];
  CHECK(reg.map(z3->identity()) == perm_identity(3));
  CHECK(reg.map("1") != reg.map("2"));
  CHECK(perm_mul(reg.map("1"), reg.map("2")) == reg.map(z3->identity()));

  CHECK_THROWS_AS(default_catalog(*make_infinite_cyclic_group(), 4), Error);
}

TEST_CASE("x^2: the quotient search finds a transposition") {
  auto p = pres(make_trivial_group(), {"x"}, "x x");
  auto res = separate(p, mw("x"), 3);
  REQUIRE(res.found);
  CHECK(res.witness.degree == 2);
  CHECK(res.witness.letter_images.at("x") == Perm{1, 0});
  CHECK(reverify_witness(p, res.witness));
  auto q = mw("x");
  CHECK(reverify_witness(p, res.witness, &q));
}

TEST_CASE("commutator: words equal in Z^2 cannot be separated") {
  auto p = pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1");
  // x y and y x are equal in the group: every witness kills the difference
  MixedWord diff = mw("x y x^-1 y^-1");
  auto res = separate(p, diff, 4);
  CHECK(!res.found);
  CHECK(!res.partial);
  // but x is nontrivial and degree 2 already sees it
  auto rx = separate(p, mw("x"), 4);
  REQUIRE(rx.found);
  CHECK(rx.witness.degree == 2);
  CHECK(reverify_witness(p, rx.witness));
}

TEST_CASE("the ambient-group oracle short-circuits trivial queries") {
  auto p = pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1");
  auto d = kernel::decompose(p);
  kernel::GBar g(d, 3);
  auto oracle = [&](const MixedWord& a, const MixedWord& b) {
    return g.equal(a, b);
  };
  auto res = separate(p, mw("x y x^-1 y^-1"), 4, {}, oracle);
  CHECK(!res.found);
  CHECK(res.query_trivial);
  CHECK(res.nodes == 0);  // no enumeration ran

  auto rx = separate(p, mw("x"), 4, {}, oracle);
  CHECK(rx.found);
  CHECK(!rx.query_trivial);
}

TEST_CASE("separation is monotone in the degree bound") {
  auto p = pres(make_trivial_group(), {"x"}, "x x x");
  CHECK(!separate(p, mw("x"), 2).found);   // Z3 needs degree 3
  auto r3 = separate(p, mw("x"), 3);
  CHECK(r3.found);
  CHECK(r3.witness.degree == 3);
  CHECK(separate(p, mw("x"), 5).found);
}

TEST_CASE("budget exhaustion is reported, never silent") {
  auto p = pres(make_trivial_group(), {"x", "y", "z"}, "x y z x^-1 y^-1 z^-1");
  HomSearchOptions opts;
  opts.node_budget = 10;
  // the query is trivial, so no witness exists; the tiny budget cannot
  // finish ruling the degrees out and must say so
  auto res = separate(p, mixed_of(p.relators[0]), 5, opts);
  CHECK(!res.found);
  CHECK(res.partial);
}

TEST_CASE("coefficients ride along through the regular representation") {
  // relator x^2 h over Z3: in the quotient x^2 = h^-1
  auto z3 = make_cyclic_group(3);
  RelativePresentation p;
  p.group = z3;
  p.alphabet = {"x"};
  RelativeRelator r;
  r.terms = {{{"x", 1}, z3->identity()}, {{"x", 1}, z3->parse("1")}};
  p.relators = {r};
  p.validate();
  MixedWord q{MixedItem::of_coeff(z3->parse("1"))};
  auto res = separate(p, q, 4);
  REQUIRE(res.found);
  CHECK(res.witness.coeff_hom_name != "trivial");
  CHECK(reverify_witness(p, res.witness, &q));
  // the relator image really dies under the witness
  CHECK(witness_image(res.witness, *z3, mixed_of(p.relators[0])) ==
        perm_identity(res.witness.degree));
}

TEST_CASE("infinite coefficients need a supplied catalog") {
  RelativePresentation p;
  auto z = make_infinite_cyclic_group();
  p.group = z;
  p.alphabet = {"x"};
  RelativeRelator r;
  r.terms = {{{"x", 1}, z->parse("2")}};
  p.relators = {r};
  p.validate();
  CHECK_THROWS_AS(separate(p, mw("x"), 3), Error);

  // mapping Z onto Z2 resolves it
  HomSearchOptions opts;
  for (int d = 1; d <= 3; ++d) {
    CoeffHom hom;
    hom.name = "mod2";
    hom.degree = d;
    hom.map = [d](const Elem& e) {
      long long v = std::stoll(e);
      Perm out(d);
      for (int i = 0; i < d; ++i) out[i] = i;
      if (d >= 2 && ((v % 2) + 2) % 2 == 1) std::swap(out[0], out[1]);
      return out;
    };
    opts.catalog.push_back(hom);
  }
  MixedWord q{MixedItem::of_coeff(z->parse("1"))};
  auto res = separate(p, q, 3, opts);
  REQUIRE(res.found);
  CHECK(res.witness.coeff_hom_name == "mod2");
}

TEST_CASE("enumeration visits assignments deterministically") {
  auto p = pres(make_trivial_group(), {"x"}, "x x");
  std::vector<std::string> first, second;
  for (auto* out : {&first, &second}) {
    enumerate_homs(p, 2, {}, [&](const FiniteQuotientWitness& w) {
      out->push_back(perm_cycles(w.letter_images.at("x")));
      return true;
    });
  }
  CHECK(first == second);
  CHECK(first == std::vector<std::string>{"()", "(0 1)"});
}

TEST_CASE("conjugacy transfer through a retraction") {
  auto p = std::make_shared<RelativePresentation>(
      pres(make_trivial_group(), {"x", "y"}, "x y x^-1 y^-1"));
  auto d = kernel::decompose(*p);
  kernel::GBar g(d, 3);
  auto oracle = [&](const MixedWord& a, const MixedWord& b) {
    return g.equal(a, b);
  };
  auto pair = embed::identity_pair(p);
  // y x y^-1 = x in Z^2
  auto ok = transfer_conjugacy(pair, mw("y"), mw("x"), mw("x"), 1, 1, oracle);
  CHECK(ok.pass);
  // y x^2 y^-1 != x (powers differ)
  auto bad = transfer_conjugacy(pair, mw("y"), mw("x"), mw("x"), 2, 1, oracle);
  CHECK(!bad.pass);
  // conjugation by a product
  auto ok2 =
      transfer_conjugacy(pair, mw("x y"), mw("y"), mw("y"), 2, 2, oracle);
  CHECK(ok2.pass);
}
