#include "relator/embed.hpp"

#include <algorithm>
#include <set>

namespace relator::embed {

namespace {

const RelativeRelator& single_relator(const RelativePresentation& p) {
  if (p.relators.size() != 1)
    throw Error("embedding rewritings require a one-relator presentation");
  return p.relators[0];
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

FreeProductElement fp_of_word(const Word& w) {
  FreeProductElement e;
  if (w.empty()) return e;
  FPSyllable s;
  s.is_coeff = false;
  s.w = free_reduce(w);
  if (s.w.empty()) return e;
  e.syllables.push_back(std::move(s));
  return e;
}

}  // namespace

bool verify_retraction(RetractionPair& pair) {
  pair.roundtrip_verified = false;
  if (!pair.mu.source || !pair.rho.target) return false;
  const auto& small = *pair.mu.source;
  const CoeffGroup& H = *small.group;
  for (const auto& letter : small.alphabet) {
    FreeProductElement up = apply_hom(pair.mu, Word{{{letter, 1}}});
    FreeProductElement back = apply_hom(pair.rho, up);
    if (back != fp_of_letter({letter, 1})) return false;
  }
  for (const auto& h : H.generators()) {
    // mu nu = nu-hat: the section keeps coefficients in place
    FreeProductElement up = apply_hom(pair.mu, MixedWord{MixedItem::of_coeff(h)});
    if (up != fp_of_coeff(H, h)) return false;
    FreeProductElement back = apply_hom(pair.rho, up);
    if (back != fp_of_coeff(H, h)) return false;
  }
  pair.roundtrip_verified = true;
  return true;
}

RetractionPair identity_pair(std::shared_ptr<const RelativePresentation> p) {
  RetractionPair pair;
  pair.rho = identity_hom(p);
  pair.mu = identity_hom(p);
  verify_hom(pair.rho);
  verify_hom(pair.mu);
  verify_retraction(pair);
  return pair;
}

StretchResult stretch(const RelativePresentation& p,
                      const weights::MaxMinCertificate& cert) {
  if (!cert.verified) throw Error("stretch: certificate not verified");
  const RelativeRelator& R = single_relator(p);
  const CoeffGroup& H = *p.group;

  // positive form: theta(x) < 0 means x is replaced by x^-1 throughout
  std::set<std::string> flipped;
  std::map<std::string, int> t;  // positive weight, 1 for letters off-domain
  for (const auto& x : p.alphabet) {
    auto it = cert.theta.values.find(x);
    int v = it == cert.theta.values.end() ? 1 : it->second;
    if (v == 0) throw Error("stretch: certificate weight is not strict");
    if (v < 0) flipped.insert(x);
    t[x] = std::abs(v);
  }

  StretchResult out;
  out.flipped.assign(flipped.begin(), flipped.end());

  std::set<std::string> taken(p.alphabet.begin(), p.alphabet.end());
  std::map<std::string, std::vector<std::string>> split;
  RelativePresentation hat;
  hat.group = p.group;
  for (const auto& x : p.alphabet) {
    if (t[x] == 1) {
      hat.alphabet.push_back(x);
      continue;
    }
    std::vector<std::string> parts;
    for (int i = 1; i <= t[x]; ++i) {
      std::string name = fresh_name(x + "_" + std::to_string(i), taken);
      taken.insert(name);
      parts.push_back(name);
      hat.alphabet.push_back(name);
    }
    split[x] = parts;
  }
  out.split = split;

  // R-hat: each occurrence x^e becomes the positive-form expansion
  RelativeRelator rhat;
  for (const auto& term : R.terms) {
    const std::string& x = term.sl.letter;
    int eff = flipped.count(x) ? -term.sl.exp : term.sl.exp;
    std::vector<SignedLetter> body;
    if (!split.count(x)) {
      body.push_back({x, eff});
    } else {
      const auto& parts = split[x];
      if (eff == 1)
        for (const auto& nm : parts) body.push_back({nm, 1});
      else
        for (auto it = parts.rbegin(); it != parts.rend(); ++it)
          body.push_back({*it, -1});
    }
    for (size_t i = 0; i < body.size(); ++i)
      rhat.terms.push_back(
          {body[i], i + 1 == body.size() ? term.h : H.identity()});
  }
  // substitution can create cancelling pairs; store the reduced
  // conjugacy-normalized relator (same normal closure)
  hat.relators.push_back(relator_cyclic_reduce(H, rhat));
  hat.validate();
  out.presentation = hat;

  auto src = std::make_shared<RelativePresentation>(p);
  auto dst = std::make_shared<RelativePresentation>(hat);

  // mu: x -> (x_1 ... x_t)^{sign}
  HomomorphismData mu;
  mu.source = src;
  mu.target = dst;
  mu.target_letters = dst->alphabet;
  mu.target_group = p.group;
  for (const auto& x : p.alphabet) {
    Word w;
    if (!split.count(x)) {
      w.syllables.push_back({x, 1});
    } else {
      for (const auto& nm : split[x]) w.syllables.push_back({nm, 1});
    }
    if (flipped.count(x)) w = w.inverse();
    mu.images[x] = fp_of_word(w);
  }

  // rho: x_1 -> x^{sign}, x_i -> 1 (i > 1)
  HomomorphismData rho;
  rho.source = dst;
  rho.target = src;
  rho.target_letters = src->alphabet;
  rho.target_group = p.group;
  for (const auto& x : p.alphabet) {
    int sign = flipped.count(x) ? -1 : 1;
    if (!split.count(x)) {
      rho.images[x] = fp_of_letter({x, sign});
    } else {
      const auto& parts = split[x];
      rho.images[parts[0]] = fp_of_letter({x, sign});
      for (size_t i = 1; i < parts.size(); ++i)
        rho.images[parts[i]] = FreeProductElement{};
    }
  }

  out.pair.rho = std::move(rho);
  out.pair.mu = std::move(mu);
  if (!verify_hom(out.pair.mu).pass || !verify_hom(out.pair.rho).pass)
    throw Error("stretch: homomorphism verification failed");
  if (!verify_retraction(out.pair))
    throw Error("stretch: retraction roundtrip failed");
  return out;
}

StrengthenResult strengthen(const RelativePresentation& p) {
  const RelativeRelator& R = single_relator(p);
  const CoeffGroup& H = *p.group;
  Word W = skeleton(R);

  weights::WeightFunction one = weights::constant_one(p.alphabet);
  weights::ExtremumReport rep = weights::classify(W, one);
  if (!(rep.unique_max && rep.unique_min && rep.reduced_at_max &&
        rep.reduced_at_min))
    throw Error("strengthen: input is not unique-max-min under weight 1");

  // a ascends into the max, b descends out; c descends into the min, d
  // ascends out.
  const std::string a = rep.letters_at_max[0];
  const std::string b = rep.letters_at_max[1];
  const std::string c = rep.letters_at_min[0];
  const std::string d = rep.letters_at_min[1];

  StrengthenResult out;
  if (rep.strong) {
    auto sp = std::make_shared<RelativePresentation>(p);
    out.presentation = p;
    out.pair = identity_pair(sp);
    out.changed = false;
    return out;
  }

  std::set<std::string> extremes{a, b, c, d};
  std::set<std::string> taken(p.alphabet.begin(), p.alphabet.end());
  std::string e = fresh_name("e", taken);
  taken.insert(e);
  out.e = e;
  out.changed = true;

  std::map<std::string, std::vector<std::string>> split;  // y -> {y_1, y_2}
  RelativePresentation hat;
  hat.group = p.group;
  for (const auto& x : p.alphabet) {
    if (extremes.count(x)) {
      hat.alphabet.push_back(x);
      continue;
    }
    std::string n1 = fresh_name(x + "_1", taken);
    taken.insert(n1);
    std::string n2 = fresh_name(x + "_2", taken);
    taken.insert(n2);
    split[x] = {n1, n2};
    hat.alphabet.push_back(n1);
    hat.alphabet.push_back(n2);
  }
  hat.alphabet.push_back(e);

  // substitution words: a -> ea, b -> be, c -> ec, d -> de, y -> y1 y2
  std::map<std::string, Word> sub;
  sub[a] = Word{{{e, 1}, {a, 1}}};
  sub[b] = Word{{{b, 1}, {e, 1}}};
  sub[c] = Word{{{e, 1}, {c, 1}}};
  sub[d] = Word{{{d, 1}, {e, 1}}};
  for (const auto& [y, parts] : split)
    sub[y] = Word{{{parts[0], 1}, {parts[1], 1}}};

  RelativeRelator rhat;
  for (const auto& term : R.terms) {
    Word body = sub.at(term.sl.letter);
    if (term.sl.exp == -1) body = body.inverse();
    for (size_t i = 0; i < body.syllables.size(); ++i)
      rhat.terms.push_back({body.syllables[i], i + 1 == body.syllables.size()
                                                   ? term.h
                                                   : H.identity()});
  }
  // substitution can create cancelling pairs; store the reduced
  // conjugacy-normalized relator (same normal closure)
  hat.relators.push_back(relator_cyclic_reduce(H, rhat));
  hat.validate();
  out.presentation = hat;

  auto src = std::make_shared<RelativePresentation>(p);
  auto dst = std::make_shared<RelativePresentation>(hat);

  HomomorphismData mu;
  mu.source = src;
  mu.target = dst;
  mu.target_letters = dst->alphabet;
  mu.target_group = p.group;
  for (const auto& x : p.alphabet) mu.images[x] = fp_of_word(sub.at(x));

  HomomorphismData rho;
  rho.source = dst;
  rho.target = src;
  rho.target_letters = src->alphabet;
  rho.target_group = p.group;
  for (const auto& x : extremes) rho.images[x] = fp_of_letter({x, 1});
  rho.images[e] = FreeProductElement{};
  for (const auto& [y, parts] : split) {
    rho.images[parts[0]] = fp_of_letter({y, 1});
    rho.images[parts[1]] = FreeProductElement{};
  }

  out.pair.rho = std::move(rho);
  out.pair.mu = std::move(mu);
  if (!verify_hom(out.pair.mu).pass || !verify_hom(out.pair.rho).pass)
    throw Error("strengthen: homomorphism verification failed");
  if (!verify_retraction(out.pair))
    throw Error("strengthen: retraction roundtrip failed");
  return out;
}

ToStrongResult to_strong(const RelativePresentation& p,
                         const weights::SearchOptions& opts) {
  const RelativeRelator& R = single_relator(p);
  Word W = skeleton(R);

  ToStrongResult out;
  auto cert =
      weights::search_certificate(W, weights::MaxMinClass::UniqueMaxMin, opts);
  if (!cert) {
    out.found = false;
    return out;
  }
  out.found = true;

  StretchResult st = stretch(p, *cert);
  out.chain.push_back({"positivize+stretch", st.presentation});

  StrengthenResult sg = strengthen(st.presentation);
  if (sg.changed) out.chain.push_back({"strengthen", sg.presentation});
  out.presentation = sg.presentation;

  if (sg.changed) {
    out.e = sg.e;
    RetractionPair composite;
    composite.mu = compose_hom(sg.pair.mu, st.pair.mu);
    composite.rho = compose_hom(st.pair.rho, sg.pair.rho);
    if (!verify_retraction(composite))
      throw Error("to_strong: composite retraction roundtrip failed");
    verify_hom(composite.mu);
    verify_hom(composite.rho);
    out.pair = std::move(composite);
  } else {
    out.pair = st.pair;
    // already strong: designate the lexicographically smallest shared
    // extreme letter
    Word w2 = skeleton(out.presentation.relators[0]);
    auto rep = weights::classify(
        w2, weights::constant_one(out.presentation.alphabet));
    std::set<std::string> inter;
    for (const auto& x : rep.letters_at_max)
      for (const auto& y : rep.letters_at_min)
        if (x == y) inter.insert(x);
    if (inter.empty()) throw Error("to_strong: internal strongness error");
    out.e = *inter.begin();
  }
  return out;
}

}  // namespace relator::embed
