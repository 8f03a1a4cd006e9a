#include "relator/quotients.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace relator::quotients {

Perm perm_identity(int d) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm perm_inverse(const Perm& a) {
  Perm out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[a[i]] = (int)i;
  return out;
}

std::string perm_cycles(const Perm& a) {
  std::string out;
  std::vector<bool> seen(a.size(), false);
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == (int)i) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = (size_t)a[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<CoeffHom> default_catalog(const CoeffGroup& H, int degree) {
  std::vector<CoeffHom> out;
  CoeffHom triv;
  triv.name = "trivial";
  triv.degree = degree;
  triv.map = [degree](const Elem&) { return perm_identity(degree); };
  out.push_back(std::move(triv));

  auto elems = H.elements();
  if (!elems)
    throw Error(
        "enumerate_homs: infinite coefficient group requires a catalog");
  if ((int)elems->size() <= degree && elems->size() > 1) {
    std::map<Elem, int> index;
    for (size_t i = 0; i < elems->size(); ++i) index[(*elems)[i]] = (int)i;
    auto table = std::make_shared<std::map<Elem, Perm>>();
    for (const auto& g : *elems) {
      Perm p = perm_identity(degree);
      for (size_t i = 0; i < elems->size(); ++i)
        p[index.at(H.multiply(g, (*elems)[i]))] = (int)i;
      (*table)[g] = std::move(p);
    }
    CoeffHom reg;
    reg.name = "regular";
    reg.degree = degree;
    reg.map = [table](const Elem& g) { return table->at(g); };
    out.push_back(std::move(reg));
  }
  return out;
}

Perm witness_image(const FiniteQuotientWitness& w, const CoeffGroup& H,
                   const MixedWord& word) {
  (void)H;
  Perm img = perm_identity(w.degree);
  for (const auto& item : word) {
    Perm g;
    if (item.is_letter) {
      g = w.letter_images.at(item.sl.letter);
      if (item.sl.exp == -1) g = perm_inverse(g);
    } else {
      g = w.coeff_map(item.h);
    }
    img = perm_mul(img, g);
  }
  return img;
}

bool reverify_witness(const RelativePresentation& p,
                      const FiniteQuotientWitness& w, const MixedWord* query) {
  const CoeffGroup& H = *p.group;
  Perm id = perm_identity(w.degree);
  for (const auto& r : p.relators)
    if (witness_image(w, H, mixed_of(r)) != id) return false;
  if (query && witness_image(w, H, *query) == id) return false;
  return true;
}

namespace {

struct Enumerator {
  const RelativePresentation& p;
  int degree;
  const HomSearchOptions& opts;
  const std::function<bool(const FiniteQuotientWitness&)>& visit;

  std::vector<Perm> universe;  // all of S_degree, lexicographic
  EnumerationStats stats;
  bool stopped = false;

  // relators become checkable once their last-appearing letter is assigned
  std::vector<std::vector<size_t>> ready_at;

  bool run() {
    Perm p0 = perm_identity(degree);
    universe.push_back(p0);
    while (std::next_permutation(p0.begin(), p0.end()))
      universe.push_back(p0);

    ready_at.assign(p.alphabet.size(), {});
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < p.alphabet.size(); ++i) pos[p.alphabet[i]] = i;
    for (size_t r = 0; r < p.relators.size(); ++r) {
      size_t last = 0;
      for (const auto& t : p.relators[r].terms)
        last = std::max(last, pos.at(t.sl.letter));
      if (p.alphabet.empty()) continue;
      ready_at[last].push_back(r);
    }

    std::vector<CoeffHom> catalog;
    if (opts.catalog.empty()) {
      catalog = default_catalog(*p.group, degree);
    } else {
      for (const auto& tau : opts.catalog)
        if (tau.degree == degree) catalog.push_back(tau);
      if (catalog.empty())
        throw Error("enumerate_homs: no coefficient hom of degree " +
                    std::to_string(degree) + " in the catalog");
    }
    for (const auto& tau : catalog) {
      FiniteQuotientWitness w;
      w.degree = degree;
      w.coeff_hom_name = tau.name;
      w.coeff_map = tau.map;
      if (!extend(w, 0)) return false;
      if (stopped || stats.budget_exhausted) break;
    }
    return true;
  }

  bool extend(FiniteQuotientWitness& w, size_t k) {
    if (k == p.alphabet.size()) {
      FiniteQuotientWitness found = w;
      std::ostringstream log;
      log << "degree " << degree << ", coeff hom " << w.coeff_hom_name;
      found.check_log.push_back(log.str());
      for (size_t r = 0; r < p.relators.size(); ++r)
        found.check_log.push_back("relator " + std::to_string(r) +
                                  " -> identity");
      if (!visit(found)) {
        stopped = true;
        return false;
      }
      return true;
    }
    const CoeffGroup& H = *p.group;
    for (const auto& img : universe) {
      if (++stats.nodes > opts.node_budget) {
        stats.budget_exhausted = true;
        return true;
      }
      w.letter_images[p.alphabet[k]] = img;
      bool ok = true;
      for (size_t r : ready_at[k])
        if (witness_image(w, H, mixed_of(p.relators[r])) !=
            perm_identity(degree)) {
          ok = false;
          break;
        }
      if (ok && !extend(w, k + 1)) return false;
      if (stopped || stats.budget_exhausted) break;
    }
    w.letter_images.erase(p.alphabet[k]);
    return !stopped;
  }
};

}  // namespace

EnumerationStats enumerate_homs(
    const RelativePresentation& p, int degree, const HomSearchOptions& opts,
    const std::function<bool(const FiniteQuotientWitness&)>& visit) {
  if (degree < 1) throw Error("enumerate_homs: degree must be >= 1");
  Enumerator e{p, degree, opts, visit, {}, {}, false, {}};
  e.run();
  return e.stats;
}

SeparateResult separate(
    const RelativePresentation& p, const MixedWord& query, int degree_bound,
    const HomSearchOptions& opts,
    const std::function<bool(const MixedWord&, const MixedWord&)>& oracle) {
  SeparateResult out;
  if (oracle && oracle(query, MixedWord{})) {
    out.query_trivial = true;
    return out;
  }
  const CoeffGroup& H = *p.group;
  for (int d = 1; d <= degree_bound && !out.found; ++d) {
    auto stats = enumerate_homs(
        p, d, opts, [&](const FiniteQuotientWitness& w) {
          if (witness_image(w, H, query) != perm_identity(d)) {
            out.found = true;
            out.witness = w;
            out.witness.check_log.push_back("query -> nonidentity");
            return false;
          }
          return true;
        });
    out.nodes += stats.nodes;
    out.partial = out.partial || stats.budget_exhausted;
  }
  if (out.found && !reverify_witness(p, out.witness, &query))
    throw Error("separate: witness failed re-verification (internal)");
  return out;
}

TransferResult transfer_conjugacy(
    const embed::RetractionPair& pair, const MixedWord& b, const MixedWord& c,
    const MixedWord& d, long long i, long long j,
    const std::function<bool(const MixedWord&, const MixedWord&)>& oracle) {
  if (!oracle) throw Error("transfer_conjugacy: equality oracle required");
  const CoeffGroup& H = *pair.rho.target_group;
  TransferResult out;
  out.conjugator = apply_hom(pair.rho, b);

  auto rep = [&](const MixedWord& w, long long n) {
    MixedWord acc;
    MixedWord base = n >= 0 ? w : mixed_inverse(H, w);
    for (long long t = 0; t < std::llabs(n); ++t)
      acc.insert(acc.end(), base.begin(), base.end());
    return acc;
  };
  MixedWord rb = fp_to_mixed(out.conjugator);
  MixedWord left = rb;
  MixedWord ci = rep(c, i);
  left.insert(left.end(), ci.begin(), ci.end());
  MixedWord rbi = mixed_inverse(H, rb);
  left.insert(left.end(), rbi.begin(), rbi.end());
  out.pass = oracle(left, rep(d, j));
  return out;
}

}  // namespace relator::quotients
