#include "relator/kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace relator::kernel {

namespace {

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

struct ClassifiedInput {
  RelativePresentation p;  // alphabet-restricted
  weights::ExtremumReport rep;
  std::string e;
};

ClassifiedInput classified_input(const RelativePresentation& p,
                                 const KernelOptions& opts) {
  if (p.relators.size() != 1)
    throw Error("kernel: one-relator presentation required");
  ClassifiedInput out;
  out.p = restrict_alphabet(p).restricted;
  Word W = skeleton(out.p.relators[0]);
  if (!is_cyclically_reduced(W))
    throw Error("kernel: skeleton must be cyclically reduced");
  out.rep = weights::classify(W, weights::constant_one(out.p.alphabet));
  if (!(out.rep.unique_max && out.rep.unique_min && out.rep.reduced_at_max &&
        out.rep.reduced_at_min && out.rep.strong))
    throw Error("kernel: presentation is not strong under the weight 1");
  std::set<std::string> inter;
  for (const auto& x : out.rep.letters_at_max)
    for (const auto& y : out.rep.letters_at_min)
      if (x == y) inter.insert(x);
  if (opts.designated_e) {
    if (!inter.count(*opts.designated_e))
      throw Error("kernel: designated letter is not at both extremes");
    out.e = *opts.designated_e;
  } else {
    out.e = *inter.begin();
  }
  return out;
}

FreeProductElement conj_s(const std::string& s, long long n,
                          const CoeffGroup& H, const MixedWord& core) {
  MixedWord w;
  for (long long i = 0; i < std::llabs(n); ++i)
    w.push_back(MixedItem::of_letter({s, n > 0 ? 1 : -1}));
  w.insert(w.end(), core.begin(), core.end());
  for (long long i = 0; i < std::llabs(n); ++i)
    w.push_back(MixedItem::of_letter({s, n > 0 ? -1 : 1}));
  return fp_normalize(H, w);
}

}  // namespace

Extremes extremes(const RelativePresentation& p, const KernelOptions& opts) {
  ClassifiedInput in = classified_input(p, opts);
  Extremes out;
  out.M = in.rep.max_value;
  out.m = in.rep.min_value;
  out.e = in.e;
  out.trivial_case = (out.M - out.m == 1);
  for (const auto& x : in.p.alphabet)
    if (x != out.e) out.phi_letters.push_back(x);
  if (!out.trivial_case) {
    if (out.phi_letters.empty())
      throw Error("kernel: no candidate for the tree letter");
    out.f = *std::min_element(out.phi_letters.begin(), out.phi_letters.end());
  }
  return out;
}

KItem KItem::edge(long long i, SignedLetter s) {
  KItem g;
  g.kind = Kind::Edge;
  g.level = i;
  g.sl = std::move(s);
  return g;
}

KItem KItem::coeff(long long i, Elem h) {
  KItem g;
  g.kind = Kind::Coeff;
  g.level = i;
  g.h = std::move(h);
  return g;
}

KItem KItem::stable(int exp) {
  KItem g;
  g.kind = Kind::Stable;
  g.exp = exp;
  return g;
}

bool KItem::operator==(const KItem& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Edge: return level == o.level && sl == o.sl;
    case Kind::Coeff: return level == o.level && h == o.h;
    case Kind::Stable: return exp == o.exp;
  }
  return false;
}

KWord kword_inverse(const CoeffGroup& H, const KWord& w) {
  KWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    KItem g = *it;
    switch (g.kind) {
      case KItem::Kind::Edge: g.sl = g.sl.inverse(); break;
      case KItem::Kind::Coeff: g.h = H.inverse(g.h); break;
      case KItem::Kind::Stable: g.exp = -g.exp; break;
    }
    out.push_back(std::move(g));
  }
  return out;
}

KWord kword_shift(const KWord& w, long long by) {
  KWord out = w;
  for (auto& g : out)
    if (g.kind != KItem::Kind::Stable) g.level += by;
  return out;
}

std::string to_string(const KItem& g) {
  std::ostringstream os;
  switch (g.kind) {
    case KItem::Kind::Edge:
      os << "(" << g.level << "," << g.sl.letter << ")";
      if (g.sl.exp < 0) os << "^-1";
      break;
    case KItem::Kind::Coeff:
      os << "(" << g.level << "," << g.h << ")";
      break;
    case KItem::Kind::Stable:
      os << "s";
      if (g.exp < 0) os << "^-1";
      break;
  }
  return os.str();
}

std::string to_string(const KWord& w) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += " ";
    out += to_string(g);
  }
  return out.empty() ? "1" : out;
}

std::string KernelData::window_name(long long i) const {
  auto it = name_cache_.find(i);
  if (it != name_cache_.end()) return it->second;
  std::string base = e + "@" + std::to_string(i);
  std::set<std::string> taken(source.alphabet.begin(), source.alphabet.end());
  std::string name = fresh_name(base, taken);
  name_cache_.emplace(i, name);
  if (i > m && i < M) level_cache_.emplace(name, i);
  return name;
}

std::optional<long long> KernelData::window_level(
    const std::string& name) const {
  if (level_cache_.size() != (size_t)std::max<long long>(0, M - m - 1)) {
    for (long long i = m + 1; i <= M - 1; ++i) window_name(i);
  }
  auto it = level_cache_.find(name);
  if (it == level_cache_.end()) return std::nullopt;
  return it->second;
}

KernelData decompose(const RelativePresentation& p, const KernelOptions& opts) {
  ClassifiedInput in = classified_input(p, opts);
  if (in.rep.max_value - in.rep.min_value == 1)
    throw Error("kernel: trivial case has no collapse data");
  const CoeffGroup& H = *in.p.group;

  KernelData d;
  d.source = in.p;
  d.e = in.e;

  // Orientation and rotation: the relator must start with the e-term that
  // ascends into the unique maximum.
  auto anchor = [&](const RelativeRelator& r) -> std::optional<size_t> {
    Word W = skeleton(r);
    auto rep = weights::classify(W, weights::constant_one(in.p.alphabet));
    int pmax = rep.max_positions[0];  // 1-based
    const SignedLetter& at = W.syllables[pmax - 1];
    if (at.letter == d.e && at.exp == 1) return pmax - 1;
    return std::nullopt;
  };
  RelativeRelator r = in.p.relators[0];
  auto rot = anchor(r);
  if (!rot) {
    r = relator_inverse(H, r);
    d.inverted = true;
    rot = anchor(r);
    if (!rot) throw Error("kernel: no extreme-ascent anchor (internal)");
  }
  d.rotation = *rot;
  d.normalized = relator_rotate(r, d.rotation);

  auto theta = weights::constant_one(in.p.alphabet);
  cover::LevelledPath path = cover::lift(0, mixed_of(d.normalized), theta);
  // identity coefficients never appear in stored segments
  {
    std::vector<cover::PathItem> kept;
    for (auto& it : path.items)
      if (it.is_edge || !H.is_identity(it.h)) kept.push_back(it);
    path.items = std::move(kept);
  }

  d.M = 1;
  d.m = 1 - (in.rep.max_value - in.rep.min_value);

  const auto& items = path.items;
  if (items.empty() || !items[0].is_edge || items[0].sl.letter != d.e ||
      items[0].sl.exp != 1 || items[0].tau != d.M)
    throw Error("kernel: normalization lost the leading edge (internal)");
  size_t i = 1;
  d.h = H.identity();
  if (i < items.size() && !items[i].is_edge) {
    d.h = items[i].h;
    ++i;
  }
  if (i >= items.size() || !items[i].is_edge || items[i].sl.exp != -1 ||
      items[i].level != d.M || items[i].sl.letter == d.e)
    throw Error("kernel: no descent out of the maximum (internal)");
  d.a = items[i].sl.letter;
  ++i;

  // the unique visit to the minimum level
  size_t down = items.size();
  for (size_t j = i; j < items.size(); ++j)
    if (items[j].is_edge && items[j].tau == d.m) {
      down = j;
      break;
    }
  if (down == items.size())
    throw Error("kernel: minimum level unreachable (internal)");
  d.gamma0.start = 0;
  d.gamma0.items.assign(items.begin() + i, items.begin() + down);

  size_t j = down + 1;
  Elem minh = H.identity();
  if (j < items.size() && !items[j].is_edge) {
    minh = items[j].h;
    ++j;
  }
  if (j >= items.size() || !items[j].is_edge || items[j].level != d.m)
    throw Error("kernel: no ascent out of the minimum (internal)");
  const auto& dn = items[down];
  const auto& up = items[j];
  if (up.sl.letter == d.e && up.sl.exp == 1) {
    d.eps = 1;
    d.b = dn.sl.letter;
    d.hprime = minh;
  } else if (dn.sl.letter == d.e && dn.sl.exp == -1) {
    d.eps = -1;
    d.b = up.sl.letter;
    d.hprime = H.inverse(minh);
  } else {
    throw Error("kernel: designated letter missing at the minimum (internal)");
  }
  if (d.b == d.e)
    throw Error("kernel: corner letter clash at the minimum (internal)");
  ++j;
  d.delta0.start = d.m + 1;
  d.delta0.items.assign(items.begin() + j, items.end());

  for (const auto* seg : {&d.gamma0, &d.delta0}) {
    long long at = seg->start;
    for (const auto& it : seg->items) {
      if (it.level < d.m + 1 || it.level > d.M - 1 || it.tau < d.m + 1 ||
          it.tau > d.M - 1)
        throw Error("kernel: segment leaves the interior range (internal)");
      at = it.tau;
    }
    (void)at;
  }

  Extremes ex = extremes(p, opts);
  d.f = ex.f;
  std::set<std::string> taken(d.source.alphabet.begin(),
                              d.source.alphabet.end());
  d.stable = fresh_name("s", taken);
  for (const auto& x : d.source.alphabet)
    if (x != d.e && x != d.f) d.f0_letters.push_back(x);
  d.f0_letters.push_back(d.stable);
  for (long long w = d.m + 1; w <= d.M - 1; ++w)
    d.f0_letters.push_back(d.window_name(w));
  return d;
}

CollapsedRelator collapse(const KernelData& d, long long n) {
  const CoeffGroup& H = *d.source.group;
  auto theta = weights::constant_one(d.source.alphabet);
  cover::LevelledPath path = cover::lift(n, mixed_of(d.normalized), theta);

  CollapsedRelator out;
  out.n = n;
  for (const auto& it : path.items) {
    if (!it.is_edge) {
      if (!H.is_identity(it.h)) out.items.push_back(KItem::coeff(it.level, it.h));
      continue;
    }
    if (it.sl.letter == d.f) continue;
    long long bottom = it.sl.exp == 1 ? it.level : it.tau;
    out.items.push_back(KItem::edge(bottom, it.sl));
  }

  if (out.items.empty() || out.items[0].kind != KItem::Kind::Edge ||
      out.items[0].sl != SignedLetter{d.e, 1} ||
      out.items[0].level != n + d.M - 1)
    throw Error("kernel: collapsed relator lost its leading edge (internal)");
  size_t mid = out.items.size();
  for (size_t i = 1; i < out.items.size(); ++i) {
    const auto& g = out.items[i];
    if (g.kind == KItem::Kind::Edge && g.sl.letter == d.e &&
        g.level == n + d.m && g.sl.exp == d.eps) {
      mid = i;
      break;
    }
  }
  if (mid == out.items.size())
    throw Error("kernel: collapsed relator has no minimum edge (internal)");
  out.alpha.assign(out.items.begin() + 1, out.items.begin() + mid);
  out.beta.assign(out.items.begin() + mid + 1, out.items.end());
  for (const auto* seg : {&out.alpha, &out.beta})
    for (const auto& g : *seg)
      if (g.kind == KItem::Kind::Edge && g.sl.letter == d.e &&
          (g.level <= n + d.m || g.level >= n + d.M - 1))
        throw Error("kernel: e-level exclusion violated (internal)");
  return out;
}

HnnData hnn_presentation(const KernelData& d, int window) {
  if (window < 1) throw Error("hnn_presentation: window must be >= 1");
  HnnData out;
  out.window = window;
  for (long long n = -window; n <= window; ++n)
    out.relators.push_back(collapse(d, n));
  const CoeffGroup& H = *d.source.group;
  for (long long n = -window; n < window; ++n) {
    for (const auto& x : d.source.alphabet) {
      if (x == d.e || x == d.f) continue;
      KWord w{KItem::stable(1), KItem::edge(n, {x, 1}), KItem::stable(-1),
              KItem::edge(n + 1, {x, -1})};
      out.conjugation.push_back(std::move(w));
    }
    for (const auto& g : H.generators()) {
      KWord w{KItem::stable(1), KItem::coeff(n, g), KItem::stable(-1),
              KItem::coeff(n + 1, H.inverse(g))};
      out.conjugation.push_back(std::move(w));
    }
  }
  return out;
}

KernelIso::KernelIso(const KernelData& d, int window)
    : d_(d), window_(window) {
  if (window < 1) throw Error("KernelIso: window must be >= 1");
}

const CollapsedRelator& KernelIso::relator_at(long long n) const {
  auto it = collapsed_.find(n);
  if (it == collapsed_.end())
    it = collapsed_.emplace(n, collapse(d_, n)).first;
  return it->second;
}

FreeProductElement KernelIso::e_image(long long n, int depth) const {
  if (n >= d_.m + 1 && n <= d_.M - 1)
    return fp_of_letter({d_.window_name(n), 1});
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  // resolving a level n query walks toward the in-window band one level at
  // a time, so window + range recursion steps always suffice
  if (depth > window_ + (int)(d_.M - d_.m))
    throw DepthError("e-generator level outside the window", n);
  const CoeffGroup& H = *d_.source.group;
  FreeProductElement img;
  if (n >= d_.M) {
    // (k+M,e) -> beta_{k+1}^-1 (k+1+m,e)^{-eps} alpha_{k+1}^-1
    long long k = n - d_.M;
    const CollapsedRelator& R = relator_at(k + 1);
    FreeProductElement mid = e_image(k + 1 + d_.m, depth + 1);
    if (d_.eps == 1) mid = fp_inverse(H, mid);
    img = fp_mul(H, fp_inverse(H, forward_at(R.beta, depth + 1)), mid);
    img = fp_mul(H, img, fp_inverse(H, forward_at(R.alpha, depth + 1)));
  } else {
    // (-k+m,e) -> (beta_{-k} (-k+M-1,e) alpha_{-k})^{-eps}
    long long k = d_.m - n;
    const CollapsedRelator& R = relator_at(-k);
    img = fp_mul(H, forward_at(R.beta, depth + 1),
                 e_image(-k + d_.M - 1, depth + 1));
    img = fp_mul(H, img, forward_at(R.alpha, depth + 1));
    if (d_.eps == 1) img = fp_inverse(H, img);
  }
  memo_.emplace(n, img);
  return img;
}

FreeProductElement KernelIso::forward_at(const KItem& g, int depth) const {
  const CoeffGroup& H = *d_.source.group;
  switch (g.kind) {
    case KItem::Kind::Stable:
      return fp_of_letter({d_.stable, g.exp});
    case KItem::Kind::Coeff:
      return conj_s(d_.stable, g.level, H, {MixedItem::of_coeff(g.h)});
    case KItem::Kind::Edge:
      if (g.sl.letter == d_.e) {
        FreeProductElement img = e_image(g.level, depth);
        return g.sl.exp == 1 ? img : fp_inverse(H, img);
      }
      if (g.sl.letter == d_.f)
        throw Error("KernelIso: tree edges have no image");
      return conj_s(d_.stable, g.level, H,
                    {MixedItem::of_letter(g.sl)});
  }
  throw Error("KernelIso: unreachable");
}

FreeProductElement KernelIso::forward_at(const KWord& w, int depth) const {
  const CoeffGroup& H = *d_.source.group;
  FreeProductElement out;
  for (const auto& g : w) out = fp_mul(H, out, forward_at(g, depth));
  return out;
}

FreeProductElement KernelIso::forward(const KItem& g) const {
  return forward_at(g, 0);
}

FreeProductElement KernelIso::forward(const KWord& w) const {
  return forward_at(w, 0);
}

KWord KernelIso::backward(const SignedLetter& f0_letter) const {
  KWord out;
  const std::string& x = f0_letter.letter;
  if (x == d_.stable) {
    out.push_back(KItem::stable(f0_letter.exp));
    return out;
  }
  if (auto level = d_.window_level(x)) {
    out.push_back(KItem::edge(*level, {d_.e, f0_letter.exp}));
    return out;
  }
  if (!d_.source.has_letter(x) || x == d_.e || x == d_.f)
    throw Error("backward: not a basis letter: " + x);
  out.push_back(KItem::edge(0, {x, f0_letter.exp}));
  return out;
}

KWord KernelIso::backward_coeff(const Elem& h) const {
  return {KItem::coeff(0, h)};
}

VerifyIsoReport verify_iso(
    const KernelData& d, int window,
    const std::function<void(CollapsedRelator&)>& tamper) {
  const CoeffGroup& H = *d.source.group;
  KernelIso iso(d, window);
  VerifyIsoReport rep;

  for (long long n = -window; n <= window; ++n) {
    CollapsedRelator R = collapse(d, n);
    if (tamper) {
      tamper(R);
      R.items = {KItem::edge(n + d.M - 1, {d.e, 1})};
      R.items.insert(R.items.end(), R.alpha.begin(), R.alpha.end());
      R.items.push_back(KItem::edge(n + d.m, {d.e, d.eps}));
      R.items.insert(R.items.end(), R.beta.begin(), R.beta.end());
    }
    bool ok = iso.forward(R.items).is_identity();
    rep.entries.push_back({"V1", n, "R_" + std::to_string(n), ok});
    rep.v1 = rep.v1 && ok;
  }

  HnnData hnn = hnn_presentation(d, window);
  for (size_t i = 0; i < hnn.conjugation.size(); ++i) {
    bool ok = iso.forward(hnn.conjugation[i]).is_identity();
    rep.entries.push_back(
        {"V2", 0, to_string(hnn.conjugation[i]), ok});
    rep.v2 = rep.v2 && ok;
  }

  for (const auto& x : d.f0_letters) {
    FreeProductElement back = iso.forward(iso.backward({x, 1}));
    bool ok = back == fp_of_letter({x, 1});
    rep.entries.push_back({"V3", 0, x, ok});
    rep.v3 = rep.v3 && ok;
  }
  for (const auto& g : H.generators()) {
    FreeProductElement back = iso.forward(iso.backward_coeff(g));
    bool ok = back == fp_of_coeff(H, g);
    rep.entries.push_back({"V3", 0, "H:" + g, ok});
    rep.v3 = rep.v3 && ok;
  }
  return rep;
}

GBar::GBar(const KernelData& d, int window) : iso_(d, window) {}

FreeProductElement GBar::shift_step(const FreeProductElement& u,
                                    int dir) const {
  const KernelData& d = iso_.data();
  const CoeffGroup& H = *d.source.group;
  MixedWord out;
  auto push_conj = [&](const MixedItem& core) {
    out.push_back(MixedItem::of_letter({d.stable, dir}));
    out.push_back(core);
    out.push_back(MixedItem::of_letter({d.stable, -dir}));
  };
  for (const auto& syl : u.syllables) {
    if (syl.is_coeff) {
      push_conj(MixedItem::of_coeff(syl.h));
      continue;
    }
    for (const auto& sl : syl.w.syllables) {
      if (sl.letter == d.stable) {
        out.push_back(MixedItem::of_letter(sl));
        continue;
      }
      auto level = d.window_level(sl.letter);
      if (level) {
        FreeProductElement img =
            iso_.forward(KItem::edge(*level + dir, {d.e, 1}));
        if (sl.exp == -1) img = fp_inverse(H, img);
        for (const auto& m : fp_to_mixed(img)) out.push_back(m);
      } else {
        push_conj(MixedItem::of_letter(sl));
      }
    }
  }
  return fp_normalize(H, out);
}

FreeProductElement GBar::shift(const FreeProductElement& u,
                               long long p) const {
  FreeProductElement out = u;
  int dir = p > 0 ? 1 : -1;
  for (long long i = 0; i < std::llabs(p); ++i) out = shift_step(out, dir);
  return out;
}

GBarElement GBar::mul(const GBarElement& a, const GBarElement& b) const {
  const CoeffGroup& H = *iso_.data().source.group;
  return {fp_mul(H, a.u, shift(b.u, a.n)), a.n + b.n};
}

GBarElement GBar::inv(const GBarElement& a) const {
  const CoeffGroup& H = *iso_.data().source.group;
  return {shift(fp_inverse(H, a.u), -a.n), -a.n};
}

const FreeProductElement& GBar::letter_at(const SignedLetter& sl,
                                          long long n) const {
  const KernelData& d = iso_.data();
  const CoeffGroup& H = *d.source.group;
  std::string name = sl.letter + (sl.exp == 1 ? "+" : "-");
  auto it = letter_cache_.find({name, n});
  if (it != letter_cache_.end()) return it->second;
  FreeProductElement img;
  if (n == 0) {
    img = iso_.forward(KItem::edge(0, {sl.letter, 1}));
    // A negative letter lands one level lower: invert and shift down once.
    if (sl.exp == -1) img = shift_step(fp_inverse(H, img), -1);
  } else {
    // Grow the cache one level at a time from the height-0 image.
    int dir = n > 0 ? 1 : -1;
    img = shift_step(letter_at(sl, n - dir), dir);
  }
  auto [pos, inserted] = letter_cache_.emplace(
      std::make_pair(std::move(name), n), std::move(img));
  (void)inserted;
  return pos->second;
}

GBarElement GBar::embed(const MixedWord& w) const {
  const KernelData& d = iso_.data();
  const CoeffGroup& H = *d.source.group;
  GBarElement acc;
  for (const auto& item : w) {
    if (!item.is_letter) {
      // shift(h, n) is just the conjugate s^n h s^-n.
      MixedWord conj;
      for (long long i = 0; i < std::llabs(acc.n); ++i)
        conj.push_back(MixedItem::of_letter({d.stable, acc.n > 0 ? 1 : -1}));
      conj.push_back(MixedItem::of_coeff(item.h));
      for (long long i = 0; i < std::llabs(acc.n); ++i)
        conj.push_back(MixedItem::of_letter({d.stable, acc.n > 0 ? -1 : 1}));
      fp_append(H, acc.u, fp_normalize(H, conj));
      continue;
    }
    if (item.sl.letter == d.f) {
      acc.n += item.sl.exp;
      continue;
    }
    if (!d.source.has_letter(item.sl.letter))
      throw Error("embed: unknown letter " + item.sl.letter);
    fp_append(H, acc.u, letter_at(item.sl, acc.n));
    acc.n += item.sl.exp;
  }
  return acc;
}

bool GBar::equal(const MixedWord& w1, const MixedWord& w2) const {
  return embed(w1) == embed(w2);
}

MixedWord GBar::retract(const GBarElement& g) const {
  const KernelData& d = iso_.data();
  MixedWord out;
  auto push_f = [&](long long n) {
    for (long long i = 0; i < std::llabs(n); ++i)
      out.push_back(MixedItem::of_letter({d.f, n > 0 ? 1 : -1}));
  };
  auto push_letter = [&](const SignedLetter& sl) {
    if (sl.letter == d.stable) {
      push_f(sl.exp);
      return;
    }
    if (auto level = d.window_level(sl.letter)) {
      long long i = *level;
      // (i, e) pulls back to f^i e f^-(i+1)
      if (sl.exp == 1) {
        push_f(i);
        out.push_back(MixedItem::of_letter({d.e, 1}));
        push_f(-(i + 1));
      } else {
        push_f(i + 1);
        out.push_back(MixedItem::of_letter({d.e, -1}));
        push_f(-i);
      }
      return;
    }
    // (0, x) pulls back to x f^-1
    if (sl.exp == 1) {
      out.push_back(MixedItem::of_letter({sl.letter, 1}));
      push_f(-1);
    } else {
      push_f(1);
      out.push_back(MixedItem::of_letter({sl.letter, -1}));
    }
  };
  for (const auto& syl : g.u.syllables) {
    if (syl.is_coeff) {
      out.push_back(MixedItem::of_coeff(syl.h));
      continue;
    }
    for (const auto& sl : syl.w.syllables) push_letter(sl);
  }
  push_f(g.n);
  return out;
}

}  // namespace relator::kernel
