#include "relator/weights.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "relator/feasibility.hpp"

namespace relator::weights {

bool WeightFunction::strict() const {
  for (const auto& [l, v] : values)
    if (v == 0) return false;
  return true;
}

int WeightFunction::value(const std::string& letter) const {
  auto it = values.find(letter);
  if (it == values.end())
    throw Error("weight function undefined on letter '" + letter + "'");
  return it->second;
}

WeightFunction make_weight(std::map<std::string, int> values) {
  if (values.empty()) throw Error("weight function: empty domain");
  long long g = 0;
  for (const auto& [l, v] : values) g = std::gcd(g, (long long)std::abs(v));
  if (g == 0) throw Error("weight function: identically zero");
  if (g != 1)
    throw Error("weight function: image must generate Z (gcd " +
                std::to_string(g) + ")");
  WeightFunction w;
  w.values = std::move(values);
  return w;
}

WeightFunction constant_one(const std::vector<std::string>& letters) {
  std::map<std::string, int> m;
  for (const auto& l : letters) m[l] = 1;
  return make_weight(std::move(m));
}

WeightFunction negate(const WeightFunction& theta) {
  std::map<std::string, int> m;
  for (const auto& [l, v] : theta.values) m[l] = -v;
  return make_weight(std::move(m));
}

Profile profile(const Word& w, const WeightFunction& theta) {
  Profile p;
  p.phi.reserve(w.size() + 1);
  p.phi.push_back(0);
  long long acc = 0;
  for (const auto& s : w.syllables) {
    acc += (long long)s.exp * theta.value(s.letter);
    p.phi.push_back(acc);
  }
  p.admissible = acc == 0;
  return p;
}

namespace {

// Letters in first-occurrence order plus the word as (letter index, exp).
struct IndexedWord {
  std::vector<std::string> letters;
  std::vector<std::pair<int, int>> syl;
};

IndexedWord index_word(const Word& w) {
  IndexedWord iw;
  std::map<std::string, int> idx;
  for (const auto& s : w.syllables) {
    auto it = idx.find(s.letter);
    int i;
    if (it == idx.end()) {
      i = (int)iw.letters.size();
      idx[s.letter] = i;
      iw.letters.push_back(s.letter);
    } else {
      i = it->second;
    }
    iw.syl.emplace_back(i, s.exp);
  }
  return iw;
}

}  // namespace

ExtremumReport classify(const Word& w, const WeightFunction& theta) {
  const int r = (int)w.size();
  if (r < 1) throw Error("classify: word must be nonempty");
  Profile p = profile(w, theta);
  if (!p.admissible)
    throw Error("classify: weight function not admissible for word");

  ExtremumReport rep;
  // cyclic index set {1..r}; phi(0) is identified with phi(r)
  rep.max_value = p.phi[1];
  rep.min_value = p.phi[1];
  for (int j = 1; j <= r; ++j) {
    rep.max_value = std::max(rep.max_value, p.phi[j]);
    rep.min_value = std::min(rep.min_value, p.phi[j]);
  }
  for (int j = 1; j <= r; ++j) {
    if (p.phi[j] == rep.max_value) rep.max_positions.push_back(j);
    if (p.phi[j] == rep.min_value) rep.min_positions.push_back(j);
  }

  auto letter_at = [&](int pos) -> const std::string& {
    return w.syllables[(pos - 1 + r) % r].letter;  // 1-based position
  };
  auto next_pos = [&](int pos) { return pos % r + 1; };

  auto fill_side = [&](const std::vector<int>& positions, bool& unique,
                       bool& reduced, std::vector<std::string>& letters,
                       std::optional<PlateauInfo>& plateau) {
    unique = positions.size() == 1;
    if (unique) {
      int k = positions[0];
      letters = {letter_at(k), letter_at(next_pos(k))};
      reduced = letters[0] != letters[1];
    } else if (positions.size() == 2) {
      int k1 = positions[0], k2 = positions[1];
      bool adjacent = next_pos(k1) == k2 || next_pos(k2) == k1;
      if (adjacent) {
        int k = next_pos(k1) == k2 ? k1 : k2;
        PlateauInfo info;
        info.position = k;
        info.letters_equal =
            letter_at(k) == letter_at(next_pos(next_pos(k)));
        plateau = info;
      }
    }
  };
  fill_side(rep.max_positions, rep.unique_max, rep.reduced_at_max,
            rep.letters_at_max, rep.max_plateau);
  fill_side(rep.min_positions, rep.unique_min, rep.reduced_at_min,
            rep.letters_at_min, rep.min_plateau);

  if (rep.unique_max && rep.unique_min && rep.reduced_at_max &&
      rep.reduced_at_min) {
    for (const auto& a : rep.letters_at_max)
      for (const auto& b : rep.letters_at_min)
        if (a == b) rep.strong = true;
  }
  return rep;
}

std::string to_string(MaxMinClass c) {
  switch (c) {
    case MaxMinClass::UniqueMin:
      return "unique-min";
    case MaxMinClass::UniqueMaxMin:
      return "unique-max-min";
    case MaxMinClass::StrongUniqueMaxMin:
      return "strong-unique-max-min";
  }
  return "?";
}

std::optional<MaxMinClass> report_class(const ExtremumReport& r) {
  if (r.strong) return MaxMinClass::StrongUniqueMaxMin;
  if (r.unique_max && r.unique_min && r.reduced_at_max && r.reduced_at_min)
    return MaxMinClass::UniqueMaxMin;
  if (r.unique_min && r.reduced_at_min) return MaxMinClass::UniqueMin;
  return std::nullopt;
}

namespace {

bool class_at_least(MaxMinClass have, MaxMinClass want) {
  return static_cast<int>(have) >= static_cast<int>(want);
}

// phi(j) as an integer vector over the indexed letters
std::vector<long long> phi_coeffs(const IndexedWord& iw, int j) {
  std::vector<long long> c(iw.letters.size(), 0);
  for (int i = 0; i < j; ++i) c[iw.syl[i].first] += iw.syl[i].second;
  return c;
}

}  // namespace

std::optional<MaxMinCertificate> search_certificate(const Word& w,
                                                    MaxMinClass target,
                                                    const SearchOptions& opts) {
  const int r = (int)w.size();
  if (r < 1) throw Error("search_certificate: word must be nonempty");
  IndexedWord iw = index_word(w);
  const int d = (int)iw.letters.size();
  if (d >= 62 || (1LL << d) > opts.sign_pattern_cap)
    throw Error("search capped: " + std::to_string(d) +
                " letters exceed the sign-enumeration cap");

  // phi(j) coefficient rows, j = 0..r
  std::vector<std::vector<long long>> phi(r + 1);
  for (int j = 0; j <= r; ++j) phi[j] = phi_coeffs(iw, j);

  auto letter_idx_at = [&](int pos) {
    return iw.syl[(pos - 1 + r) % r].first;  // 1-based cyclic position
  };
  auto reduced_at = [&](int pos) {
    return letter_idx_at(pos) != letter_idx_at(pos + 1);
  };

  const bool need_max = target != MaxMinClass::UniqueMin;

  // Forced signs at an extreme: the step into a maximum rises, the step out
  // falls (and dually at a minimum).  Conflicting sign patterns are
  // infeasible, so they are skipped without solving.
  auto forced_signs = [&](int k, int l, std::vector<int>& sign) -> bool {
    auto require = [&](int pos, int s) {
      int li = letter_idx_at(pos);
      int want = iw.syl[(pos - 1 + r) % r].second * s;
      if (sign[li] != 0 && sign[li] != want) return false;
      sign[li] = want;
      return true;
    };
    if (need_max) {
      if (!require(k, +1)) return false;       // step into max rises
      if (!require(k + 1, -1)) return false;   // step out of max falls
    }
    if (!require(l, -1)) return false;         // step into min falls
    if (!require(l + 1, +1)) return false;     // step out of min rises
    return true;
  };

  auto try_solve = [&](int k, int l,
                       const std::vector<int>& sigma)
      -> std::optional<std::vector<long long>> {
    std::vector<feas::Constraint> cons;
    // admissibility phi(r) = 0 as two inequalities
    cons.push_back({phi[r], 0});
    {
      auto neg = phi[r];
      for (auto& v : neg) v = -v;
      cons.push_back({neg, 0});
    }
    auto add_diff = [&](int hi, int lo) {
      // phi(hi) - phi(lo) >= 1
      feas::Constraint c;
      c.a.resize(d);
      for (int i = 0; i < d; ++i) c.a[i] = phi[hi][i] - phi[lo][i];
      c.rhs = 1;
      cons.push_back(std::move(c));
    };
    if (need_max)
      for (int j = 1; j <= r; ++j)
        if (j != k) add_diff(k, j);
    for (int j = 1; j <= r; ++j)
      if (j != l) add_diff(j, l);
    for (int i = 0; i < d; ++i) {
      feas::Constraint c;
      c.a.assign(d, 0);
      c.a[i] = sigma[i];
      c.rhs = 1;
      cons.push_back(std::move(c));
    }
    auto pt = feas::feasible_point(d, cons);
    if (!pt) return std::nullopt;
    return feas::to_integer_point(*pt);
  };

  auto finish = [&](int k, int l,
                    const std::vector<long long>& theta_vals)
      -> MaxMinCertificate {
    std::map<std::string, int> vals;
    for (int i = 0; i < d; ++i) vals[iw.letters[i]] = (int)theta_vals[i];
    MaxMinCertificate cert;
    cert.theta = make_weight(std::move(vals));
    ExtremumReport rep = classify(w, cert.theta);
    auto cls = report_class(rep);
    if (!cls || !class_at_least(*cls, target))
      throw Error("search_certificate: solution failed re-verification");
    cert.achieved = *cls;
    cert.k = rep.unique_max ? rep.max_positions[0] : 0;
    cert.l = rep.min_positions[0];
    cert.verified = true;
    return cert;
  };

  // lexicographic (k, l, sigma); sigma bit 0 => +1, enumerated +1 first
  auto sigma_loop = [&](int k, int l) -> std::optional<MaxMinCertificate> {
    std::vector<int> forced(d, 0);
    if (!forced_signs(k, l, forced)) return std::nullopt;
    for (long long mask = 0; mask < (1LL << d); ++mask) {
      std::vector<int> sigma(d);
      bool ok = true;
      for (int i = 0; i < d && ok; ++i) {
        sigma[i] = (mask >> (d - 1 - i)) & 1 ? -1 : +1;
        if (forced[i] != 0 && sigma[i] != forced[i]) ok = false;
      }
      if (!ok) continue;
      if (auto pt = try_solve(k, l, sigma)) return finish(k, l, *pt);
    }
    return std::nullopt;
  };

  if (target == MaxMinClass::UniqueMin) {
    for (int l = 1; l <= r; ++l) {
      if (!reduced_at(l)) continue;
      if (auto c = sigma_loop(0, l)) return c;
    }
    return std::nullopt;
  }

  for (int k = 1; k <= r; ++k) {
    if (!reduced_at(k)) continue;
    for (int l = 1; l <= r; ++l) {
      if (l == k || !reduced_at(l)) continue;
      if (target == MaxMinClass::StrongUniqueMaxMin) {
        int a1 = letter_idx_at(k), a2 = letter_idx_at(k + 1);
        int b1 = letter_idx_at(l), b2 = letter_idx_at(l + 1);
        if (a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2) continue;
      }
      if (auto c = sigma_loop(k, l)) return c;
    }
  }
  return std::nullopt;
}

std::optional<MaxMinCertificate> brute_force_certificate(const Word& w,
                                                         MaxMinClass target,
                                                         int bound) {
  if (bound < 1) throw Error("brute_force_certificate: bound must be >= 1");
  IndexedWord iw = index_word(w);
  const int d = (int)iw.letters.size();
  std::vector<int> vals(d, -bound);
  std::vector<int> domain;
  for (int v = -bound; v <= bound; ++v)
    if (v != 0) domain.push_back(v);

  std::function<std::optional<MaxMinCertificate>(int)> rec =
      [&](int i) -> std::optional<MaxMinCertificate> {
    if (i == d) {
      long long sum = 0;
      for (const auto& [li, exp] : iw.syl) sum += (long long)exp * vals[li];
      if (sum != 0) return std::nullopt;
      long long g = 0;
      for (int v : vals) g = std::gcd(g, (long long)std::abs(v));
      if (g != 1) return std::nullopt;
      std::map<std::string, int> m;
      for (int j = 0; j < d; ++j) m[iw.letters[j]] = vals[j];
      MaxMinCertificate cert;
      cert.theta = make_weight(std::move(m));
      ExtremumReport rep = classify(w, cert.theta);
      auto cls = report_class(rep);
      if (!cls || !class_at_least(*cls, target)) return std::nullopt;
      cert.achieved = *cls;
      cert.k = rep.unique_max ? rep.max_positions[0] : 0;
      cert.l = rep.min_positions[0];
      cert.verified = true;
      return cert;
    }
    for (int v : domain) {
      vals[i] = v;
      if (auto got = rec(i + 1)) return got;
    }
    return std::nullopt;
  };
  return rec(0);
}

bool brown_kernel_fg(const Word& w, const WeightFunction& theta,
                     int alphabet_size) {
  if (!is_cyclically_reduced(w))
    throw Error("brown_kernel_fg: word must be cyclically reduced");
  if (alphabet_size < 2) throw Error("brown_kernel_fg: |x| must be >= 2");
  Profile p = profile(w, theta);
  if (!p.admissible)
    throw Error("brown_kernel_fg: weight function not admissible");
  if (alphabet_size != 2) return false;

  const int r = (int)w.size();
  auto widened_unique = [&](bool maximum) {
    long long best = p.phi[1];
    for (int j = 1; j <= r; ++j)
      best = maximum ? std::max(best, p.phi[j]) : std::min(best, p.phi[j]);
    std::vector<int> pos;
    for (int j = 1; j <= r; ++j)
      if (p.phi[j] == best) pos.push_back(j);
    if (pos.size() == 1) return true;
    if (pos.size() == 2) {
      int k1 = pos[0], k2 = pos[1];
      return k1 % r + 1 == k2 || k2 % r + 1 == k1;
    }
    return false;
  };
  return widened_unique(true) && widened_unique(false);
}

}  // namespace relator::weights
