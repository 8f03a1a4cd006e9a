#include "relator/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace relator {

// ---------------------------------------------------------------------------
// Words

Word Word::inverse() const {
  Word out;
  out.syllables.reserve(syllables.size());
  for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
    out.syllables.push_back(it->inverse());
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables) {
    if (!out.empty()) out += ' ';
    out += s.letter;
    if (s.exp < 0) out += "^-1";
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1" && text == "1") return Word{};
    int exp = 1;
    auto caret = tok.find('^');
    std::string name = tok;
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      if (e == "-1")
        exp = -1;
      else if (e == "1")
        exp = 1;
      else
        throw Error("bad exponent '" + e + "' in word token '" + tok + "'");
    }
    if (name.empty()) throw Error("empty letter in word '" + text + "'");
    w.syllables.emplace_back(name, exp);
  }
  return w;
}

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& s : w.syllables) {
    if (!out.empty() && out.syllables.back() == s.inverse())
      out.syllables.pop_back();
    else
      out.syllables.push_back(s);
  }
  return out;
}

bool is_cyclically_reduced(const Word& w) {
  Word r = free_reduce(w);
  if (r.syllables.size() != w.syllables.size()) return false;
  if (r.empty()) return true;
  return r.syllables.front() != r.syllables.back().inverse();
}

// ---------------------------------------------------------------------------
// Coefficient groups

Elem CoeffGroup::pow(const Elem& a, long long n) const {
  Elem base = n < 0 ? inverse(a) : a;
  long long k = n < 0 ? -n : n;
  Elem acc = identity();
  for (long long i = 0; i < k; ++i) acc = multiply(acc, base);
  return acc;
}

namespace {

class TrivialGroup final : public CoeffGroup {
 public:
  Elem identity() const override { return "1"; }
  Elem multiply(const Elem&, const Elem&) const override { return "1"; }
  Elem inverse(const Elem&) const override { return "1"; }
  bool contains(const Elem& a) const override { return a == "1"; }
  std::optional<std::vector<Elem>> elements() const override {
    return std::vector<Elem>{"1"};
  }
  std::vector<Elem> generators() const override { return {}; }
  Elem parse(const std::string& lit) const override {
    if (lit != "1") throw Error("trivial group: bad element '" + lit + "'");
    return "1";
  }
  std::string describe() const override { return "trivial"; }
};

class CyclicGroup final : public CoeffGroup {
 public:
  explicit CyclicGroup(long long n) : n_(n) {
    if (n < 1) throw Error("cyclic group order must be >= 1");
  }
  Elem identity() const override { return "0"; }
  Elem multiply(const Elem& a, const Elem& b) const override {
    return std::to_string(((val(a) + val(b)) % n_ + n_) % n_);
  }
  Elem inverse(const Elem& a) const override {
    return std::to_string(((-val(a)) % n_ + n_) % n_);
  }
  bool contains(const Elem& a) const override {
    try {
      long long v = std::stoll(a);
      return v >= 0 && v < n_ && a == std::to_string(v);
    } catch (...) {
      return false;
    }
  }
  std::optional<std::vector<Elem>> elements() const override {
    std::vector<Elem> out;
    for (long long i = 0; i < n_; ++i) out.push_back(std::to_string(i));
    return out;
  }
  std::vector<Elem> generators() const override {
    if (n_ == 1) return {};
    return {"1"};
  }
  Elem parse(const std::string& lit) const override {
    try {
      long long v = std::stoll(lit);
      return std::to_string((v % n_ + n_) % n_);
    } catch (...) {
      throw Error("Z(" + std::to_string(n_) + "): bad element '" + lit + "'");
    }
  }
  std::string describe() const override {
    return "Z(" + std::to_string(n_) + ")";
  }

 private:
  long long val(const Elem& a) const {
    try {
      return std::stoll(a);
    } catch (...) {
      throw Error("Z(" + std::to_string(n_) + "): bad element '" + a + "'");
    }
  }
  long long n_;
};

class InfiniteCyclicGroup final : public CoeffGroup {
 public:
  Elem identity() const override { return "0"; }
  Elem multiply(const Elem& a, const Elem& b) const override {
    return std::to_string(val(a) + val(b));
  }
  Elem inverse(const Elem& a) const override {
    return std::to_string(-val(a));
  }
  bool contains(const Elem& a) const override {
    try {
      return a == std::to_string(std::stoll(a));
    } catch (...) {
      return false;
    }
  }
  std::optional<std::vector<Elem>> elements() const override {
    return std::nullopt;
  }
  std::vector<Elem> generators() const override { return {"1"}; }
  Elem parse(const std::string& lit) const override {
    try {
      return std::to_string(std::stoll(lit));
    } catch (...) {
      throw Error("Z: bad element '" + lit + "'");
    }
  }
  std::string describe() const override { return "Z"; }

 private:
  long long val(const Elem& a) const {
    try {
      return std::stoll(a);
    } catch (...) {
      throw Error("Z: bad element '" + a + "'");
    }
  }
};

class TableGroup final : public CoeffGroup {
 public:
  explicit TableGroup(std::vector<std::vector<int>> rows)
      : table_(std::move(rows)) {
    n_ = static_cast<int>(table_.size());
    if (n_ < 1) throw Error("table group: empty table");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n_)
        throw Error("table group: table is not square");
      for (int v : row)
        if (v < 0 || v >= n_)
          throw Error("table group: entry out of range");
    }
    // identity
    id_ = -1;
    for (int e = 0; e < n_; ++e) {
      bool ok = true;
      for (int x = 0; x < n_ && ok; ++x)
        ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) throw Error("table group: no identity element");
    // inverses
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (table_[a][b] == id_ && table_[b][a] == id_) inv_[a] = b;
      if (inv_[a] < 0) throw Error("table group: missing inverse");
    }
    // associativity: exhaustive for small tables, spot-checked beyond
    int bound = n_ <= 24 ? n_ : 24;
    for (int a = 0; a < bound; ++a)
      for (int b = 0; b < bound; ++b)
        for (int c = 0; c < bound; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw Error("table group: not associative");
  }
  Elem identity() const override { return std::to_string(id_); }
  Elem multiply(const Elem& a, const Elem& b) const override {
    return std::to_string(table_[val(a)][val(b)]);
  }
  Elem inverse(const Elem& a) const override {
    return std::to_string(inv_[val(a)]);
  }
  bool contains(const Elem& a) const override {
    try {
      int v = std::stoi(a);
      return v >= 0 && v < n_ && a == std::to_string(v);
    } catch (...) {
      return false;
    }
  }
  std::optional<std::vector<Elem>> elements() const override {
    std::vector<Elem> out;
    for (int i = 0; i < n_; ++i) out.push_back(std::to_string(i));
    return out;
  }
  std::vector<Elem> generators() const override {
    std::vector<Elem> out;
    for (int i = 0; i < n_; ++i)
      if (i != id_) out.push_back(std::to_string(i));
    return out;
  }
  Elem parse(const std::string& lit) const override {
    if (!contains(lit))
      throw Error("table group: bad element '" + lit + "'");
    return lit;
  }
  std::string describe() const override {
    return "table(order " + std::to_string(n_) + ")";
  }

 private:
  int val(const Elem& a) const {
    if (!contains(a)) throw Error("table group: bad element '" + a + "'");
    return std::stoi(a);
  }
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  int n_ = 0;
  int id_ = 0;
};

class FreeGroupImpl final : public CoeffGroup {
 public:
  explicit FreeGroupImpl(int rank) : rank_(rank) {
    if (rank < 1) throw Error("free group rank must be >= 1");
  }

  Elem identity() const override { return "1"; }
  Elem multiply(const Elem& a, const Elem& b) const override {
    std::vector<SignedLetter> w = decode(a);
    for (const auto& s : decode(b)) {
      if (!w.empty() && w.back() == s.inverse())
        w.pop_back();
      else
        w.push_back(s);
    }
    return encode(w);
  }
  Elem inverse(const Elem& a) const override {
    auto w = decode(a);
    std::vector<SignedLetter> out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      out.push_back(it->inverse());
    return encode(out);
  }
  bool contains(const Elem& a) const override {
    try {
      return encode(decode(a)) == a;
    } catch (...) {
      return false;
    }
  }
  std::optional<std::vector<Elem>> elements() const override {
    return std::nullopt;
  }
  std::vector<Elem> generators() const override {
    std::vector<Elem> out;
    for (int i = 1; i <= rank_; ++i) out.push_back("g" + std::to_string(i));
    return out;
  }
  Elem parse(const std::string& lit) const override {
    if (lit == "1") return "1";
    std::string spaced = lit;
    std::replace(spaced.begin(), spaced.end(), '*', ' ');
    std::vector<SignedLetter> w;
    for (const auto& s : parse_word(spaced).syllables) {
      check_gen(s.letter);
      if (!w.empty() && w.back() == s.inverse())
        w.pop_back();
      else
        w.push_back(s);
    }
    return encode(w);
  }
  std::string describe() const override {
    return "free(" + std::to_string(rank_) + ")";
  }

 private:
  void check_gen(const std::string& name) const {
    if (name.size() < 2 || name[0] != 'g')
      throw Error("free group: bad generator '" + name + "'");
    int idx = 0;
    try {
      idx = std::stoi(name.substr(1));
    } catch (...) {
      throw Error("free group: bad generator '" + name + "'");
    }
    if (idx < 1 || idx > rank_)
      throw Error("free group: generator '" + name + "' out of rank " +
                  std::to_string(rank_));
  }
  std::vector<SignedLetter> decode(const Elem& a) const {
    if (a == "1") return {};
    std::vector<SignedLetter> w;
    for (const auto& s : parse_word(a).syllables) {
      check_gen(s.letter);
      w.push_back(s);
    }
    return w;
  }
  static Elem encode(const std::vector<SignedLetter>& w) {
    if (w.empty()) return "1";
    return to_string(Word{w});
  }
  int rank_;
};

class FreeProductGroup final : public CoeffGroup {
 public:
  explicit FreeProductGroup(std::vector<CoeffGroupPtr> comps)
      : comps_(std::move(comps)) {
    if (comps_.size() < 2)
      throw Error("free product needs at least two components");
  }

  Elem identity() const override { return "1"; }

  Elem multiply(const Elem& a, const Elem& b) const override {
    auto sa = decode(a), sb = decode(b);
    for (auto& s : sb) push(sa, s);
    return encode(sa);
  }
  Elem inverse(const Elem& a) const override {
    auto sa = decode(a);
    std::vector<Syl> out;
    for (auto it = sa.rbegin(); it != sa.rend(); ++it)
      out.push_back({it->comp, comps_[it->comp]->inverse(it->val)});
    return encode(out);
  }
  bool contains(const Elem& a) const override {
    try {
      return encode(decode(a)) == a;
    } catch (...) {
      return false;
    }
  }
  std::optional<std::vector<Elem>> elements() const override {
    return std::nullopt;  // products of nontrivial groups are infinite here
  }
  std::vector<Elem> generators() const override {
    std::vector<Elem> out;
    for (size_t i = 0; i < comps_.size(); ++i)
      for (const auto& g : comps_[i]->generators())
        out.push_back(encode({{i, g}}));
    return out;
  }
  // Literal: whitespace-separated atoms "<k>:<component literal>" with
  // 1-based component index; '*' may stand for spaces inside the atom.
  Elem parse(const std::string& lit) const override {
    if (lit == "1") return "1";
    std::istringstream in(lit);
    std::string tok;
    std::vector<Syl> out;
    while (in >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw Error("free product: atom '" + tok + "' lacks 'k:' prefix");
      size_t k = 0;
      try {
        k = std::stoul(tok.substr(0, colon));
      } catch (...) {
        throw Error("free product: bad component index in '" + tok + "'");
      }
      if (k < 1 || k > comps_.size())
        throw Error("free product: component index out of range in '" + tok +
                    "'");
      Elem v = comps_[k - 1]->parse(tok.substr(colon + 1));
      push(out, {k - 1, v});
    }
    return encode(out);
  }
  std::string describe() const override {
    std::string out;
    for (const auto& c : comps_) {
      if (!out.empty()) out += " * ";
      out += c->describe();
    }
    return out;
  }

  const std::vector<CoeffGroupPtr>& components() const { return comps_; }

 private:
  struct Syl {
    size_t comp;
    Elem val;
  };

  void push(std::vector<Syl>& out, const Syl& s) const {
    if (comps_[s.comp]->is_identity(s.val)) return;
    if (!out.empty() && out.back().comp == s.comp) {
      Elem merged = comps_[s.comp]->multiply(out.back().val, s.val);
      out.pop_back();
      if (!comps_[s.comp]->is_identity(merged)) push(out, {s.comp, merged});
    } else {
      out.push_back(s);
    }
  }

  std::vector<Syl> decode(const Elem& a) const {
    if (a == "1") return {};
    std::vector<Syl> out;
    size_t pos = 0;
    while (pos <= a.size()) {
      size_t bar = a.find('|', pos);
      std::string part =
          bar == std::string::npos ? a.substr(pos) : a.substr(pos, bar - pos);
      auto colon = part.find(':');
      if (colon == std::string::npos)
        throw Error("free product: bad element '" + a + "'");
      size_t k = std::stoul(part.substr(0, colon));
      if (k < 1 || k > comps_.size())
        throw Error("free product: bad element '" + a + "'");
      Elem v = part.substr(colon + 1);
      if (!comps_[k - 1]->contains(v))
        throw Error("free product: bad element '" + a + "'");
      out.push_back({k - 1, v});
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    return out;
  }

  static Elem encode(const std::vector<Syl>& s) {
    if (s.empty()) return "1";
    std::string out;
    for (const auto& x : s) {
      if (!out.empty()) out += '|';
      out += std::to_string(x.comp + 1) + ":" + x.val;
    }
    return out;
  }

  std::vector<CoeffGroupPtr> comps_;
};

}  // namespace

CoeffGroupPtr make_trivial_group() { return std::make_shared<TrivialGroup>(); }
CoeffGroupPtr make_cyclic_group(long long n) {
  return std::make_shared<CyclicGroup>(n);
}
CoeffGroupPtr make_infinite_cyclic_group() {
  return std::make_shared<InfiniteCyclicGroup>();
}
CoeffGroupPtr make_table_group(const std::vector<std::vector<int>>& rows) {
  return std::make_shared<TableGroup>(rows);
}
CoeffGroupPtr make_free_group(int rank) {
  return std::make_shared<FreeGroupImpl>(rank);
}
CoeffGroupPtr make_free_product(std::vector<CoeffGroupPtr> components) {
  // flatten nested products and drop trivial factors
  std::vector<CoeffGroupPtr> flat;
  for (const auto& c : components) {
    if (!c) throw Error("free product: null component");
    if (dynamic_cast<const TrivialGroup*>(c.get())) continue;
    if (auto* p = dynamic_cast<const FreeProductGroup*>(c.get())) {
      // free products are associative: keep the component list flat so
      // element serialization never nests
      for (const auto& sub : p->components()) flat.push_back(sub);
    } else {
      flat.push_back(c);
    }
  }
  if (flat.empty()) return make_trivial_group();
  if (flat.size() == 1) return flat[0];
  return std::make_shared<FreeProductGroup>(std::move(flat));
}

// ---------------------------------------------------------------------------
// Relators and presentations

void RelativePresentation::validate() const {
  if (!group) throw Error("presentation: missing coefficient group");
  if (relators.empty()) throw Error("presentation: relator list is empty");
  std::set<std::string> seen;
  for (const auto& l : alphabet) {
    if (l.empty()) throw Error("presentation: empty letter name");
    if (!seen.insert(l).second)
      throw Error("presentation: duplicate letter '" + l + "'");
  }
  for (const auto& r : relators) {
    if (r.terms.empty()) throw Error("presentation: empty relator");
    for (const auto& t : r.terms) {
      if (!seen.count(t.sl.letter))
        throw Error("presentation: relator uses undeclared letter '" +
                    t.sl.letter + "'");
      if (t.sl.exp != 1 && t.sl.exp != -1)
        throw Error("presentation: exponent must be +-1");
      if (!group->contains(t.h))
        throw Error("presentation: coefficient '" + t.h + "' not in H");
    }
  }
}

bool RelativePresentation::has_letter(const std::string& name) const {
  return std::find(alphabet.begin(), alphabet.end(), name) != alphabet.end();
}

Word skeleton(const RelativeRelator& r) {
  Word w;
  w.syllables.reserve(r.terms.size());
  for (const auto& t : r.terms) w.syllables.push_back(t.sl);
  return w;
}

RelativeRelator relator_inverse(const CoeffGroup& H,
                                const RelativeRelator& r) {
  // (x1 h1 ... xr hr)^-1 ~cyc  xr^-1 h_{r-1}^-1 ... x1^-1 hr^-1
  size_t n = r.terms.size();
  RelativeRelator out;
  out.terms.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& t = r.terms[n - 1 - i];
    // coefficient h_{r-1-i}, wrapping to h_r for the final term
    size_t hidx = (2 * n - 2 - i) % n;
    out.terms.push_back({t.sl.inverse(), H.inverse(r.terms[hidx].h)});
  }
  return out;
}

RelativeRelator relator_rotate(const RelativeRelator& r, size_t t) {
  size_t n = r.terms.size();
  RelativeRelator out;
  out.terms.reserve(n);
  for (size_t i = 0; i < n; ++i) out.terms.push_back(r.terms[(i + t) % n]);
  return out;
}

RelativeRelator power(const CoeffGroup& H, const RelativeRelator& r,
                      long long n) {
  (void)H;
  if (n < 1) throw Error("power: exponent must be >= 1");
  RelativeRelator out;
  out.terms.reserve(r.terms.size() * static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i)
    out.terms.insert(out.terms.end(), r.terms.begin(), r.terms.end());
  return out;
}

RelativeRelator substitute(const CoeffGroup& H, const RelativeRelator& S,
                           const std::string& z, const RelativeRelator& R) {
  std::set<std::string> r_letters, s_letters;
  for (const auto& t : R.terms) r_letters.insert(t.sl.letter);
  bool z_occurs = false;
  for (const auto& t : S.terms) {
    if (t.sl.letter == z)
      z_occurs = true;
    else if (r_letters.count(t.sl.letter))
      throw Error("substitute: alphabet collision on letter '" + t.sl.letter +
                  "'");
  }
  if (!z_occurs) throw Error("substitute: z does not occur in S");

  // A coefficient that must precede the next emitted letter is absorbed into
  // the previous term's slot (or, if none exists yet, carried and absorbed
  // cyclically into the final slot at the end).
  RelativeRelator out;
  Elem pending = H.identity();
  auto absorb = [&](const Elem& h) {
    if (out.terms.empty())
      pending = H.multiply(pending, h);
    else
      out.terms.back().h = H.multiply(out.terms.back().h, h);
  };
  for (const auto& t : S.terms) {
    if (t.sl.letter != z) {
      out.terms.push_back({t.sl, t.h});
      continue;
    }
    if (t.sl.exp == 1) {
      // ... R, with S's coefficient joining R's last slot
      for (size_t i = 0; i < R.terms.size(); ++i) {
        RelatorTerm nt = R.terms[i];
        if (i + 1 == R.terms.size()) nt.h = H.multiply(nt.h, t.h);
        out.terms.push_back(nt);
      }
    } else {
      // R^-1 = h_r^-1 x_r^-1 h_{r-1}^-1 ... x_1^-1; the leading h_r^-1
      // joins the previous slot.
      size_t n = R.terms.size();
      absorb(H.inverse(R.terms.back().h));
      for (size_t i = 0; i < n; ++i) {
        const auto& rt = R.terms[n - 1 - i];
        Elem coeff =
            i + 1 < n ? H.inverse(R.terms[n - 2 - i].h) : H.identity();
        if (i + 1 == n) coeff = H.multiply(coeff, t.h);
        out.terms.push_back({rt.sl.inverse(), coeff});
      }
    }
  }
  if (!H.is_identity(pending)) {
    out.terms.back().h = H.multiply(out.terms.back().h, pending);
  }
  return out;
}

RestrictResult restrict_alphabet(const RelativePresentation& p) {
  std::set<std::string> used;
  for (const auto& r : p.relators)
    for (const auto& t : r.terms) used.insert(t.sl.letter);
  RestrictResult out;
  out.restricted = p;
  out.restricted.alphabet.clear();
  for (const auto& l : p.alphabet) {
    if (used.count(l))
      out.restricted.alphabet.push_back(l);
    else
      out.dropped.push_back(l);
  }
  out.free_rank = static_cast<int>(out.dropped.size());
  return out;
}

// ---------------------------------------------------------------------------
// Mixed words and free-product normal forms

MixedWord mixed_of(const RelativeRelator& r) {
  MixedWord out;
  out.reserve(r.terms.size() * 2);
  for (const auto& t : r.terms) {
    out.push_back(MixedItem::of_letter(t.sl));
    out.push_back(MixedItem::of_coeff(t.h));
  }
  return out;
}

MixedWord mixed_of(const Word& w) {
  MixedWord out;
  out.reserve(w.syllables.size());
  for (const auto& s : w.syllables) out.push_back(MixedItem::of_letter(s));
  return out;
}

MixedWord mixed_inverse(const CoeffGroup& H, const MixedWord& w) {
  MixedWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->is_letter)
      out.push_back(MixedItem::of_letter(it->sl.inverse()));
    else
      out.push_back(MixedItem::of_coeff(H.inverse(it->h)));
  }
  return out;
}

namespace {

// Push one item onto a normal form, cancelling at the seam. Keeping the
// element normalized at every step means a stream of pushes computes the
// product of everything pushed so far.
void fp_push(const CoeffGroup& H, FreeProductElement& out,
             const MixedItem& item) {
  auto& st = out.syllables;
  if (item.is_letter) {
    if (!st.empty() && !st.back().is_coeff) {
      auto& w = st.back().w;
      if (!w.empty() && w.syllables.back() == item.sl.inverse()) {
        w.syllables.pop_back();
        if (w.empty()) st.pop_back();
      } else {
        w.syllables.push_back(item.sl);
      }
    } else {
      FPSyllable s;
      s.is_coeff = false;
      s.w.syllables.push_back(item.sl);
      st.push_back(std::move(s));
    }
  } else {
    Elem h = item.h;
    if (H.is_identity(h)) return;
    if (!st.empty() && st.back().is_coeff) {
      h = H.multiply(st.back().h, h);
      st.pop_back();
      if (H.is_identity(h)) return;
    }
    FPSyllable s;
    s.is_coeff = true;
    s.h = std::move(h);
    st.push_back(std::move(s));
  }
}

}  // namespace

void fp_append(const CoeffGroup& H, FreeProductElement& acc,
               const FreeProductElement& b) {
  for (const auto& s : b.syllables) {
    if (s.is_coeff) {
      fp_push(H, acc, MixedItem::of_coeff(s.h));
    } else {
      for (const auto& l : s.w.syllables)
        fp_push(H, acc, MixedItem::of_letter(l));
    }
  }
}

FreeProductElement fp_normalize(const CoeffGroup& H, const MixedWord& raw) {
  FreeProductElement out;
  for (const auto& item : raw) fp_push(H, out, item);
  return out;
}

MixedWord fp_to_mixed(const FreeProductElement& a) {
  MixedWord out;
  for (const auto& s : a.syllables) {
    if (s.is_coeff) {
      out.push_back(MixedItem::of_coeff(s.h));
    } else {
      for (const auto& l : s.w.syllables)
        out.push_back(MixedItem::of_letter(l));
    }
  }
  return out;
}

FreeProductElement fp_mul(const CoeffGroup& H, const FreeProductElement& a,
                          const FreeProductElement& b) {
  MixedWord raw = fp_to_mixed(a);
  MixedWord rb = fp_to_mixed(b);
  raw.insert(raw.end(), rb.begin(), rb.end());
  return fp_normalize(H, raw);
}

FreeProductElement fp_inverse(const CoeffGroup& H,
                              const FreeProductElement& a) {
  return fp_normalize(H, mixed_inverse(H, fp_to_mixed(a)));
}

std::string fp_to_string(const FreeProductElement& a) {
  if (a.is_identity()) return "1";
  std::string out;
  for (const auto& s : a.syllables) {
    if (!out.empty()) out += " . ";
    if (s.is_coeff)
      out += "[" + s.h + "]";
    else
      out += to_string(s.w);
  }
  return out;
}

FreeProductElement fp_cyclic_reduce(const CoeffGroup& H,
                                    const FreeProductElement& a) {
  MixedWord m = fp_to_mixed(a);
  size_t stable = 0;
  while (m.size() > 1 && stable < m.size()) {
    // rotating the first item to the back turns the seam into an interior
    // junction, which fp_normalize then cancels
    MixedWord rot(m.begin() + 1, m.end());
    rot.push_back(m.front());
    MixedWord rm = fp_to_mixed(fp_normalize(H, rot));
    if (rm.size() < m.size())
      stable = 0;
    else
      ++stable;
    m = std::move(rm);
  }
  return fp_normalize(H, m);
}

RelativeRelator relator_of_mixed(const CoeffGroup& H, const MixedWord& w) {
  MixedWord m = fp_to_mixed(fp_normalize(H, w));
  // fold a leading coefficient cyclically into the tail
  if (!m.empty() && !m.front().is_letter) {
    m.push_back(m.front());
    m.erase(m.begin());
  }
  RelativeRelator out;
  for (const auto& item : m) {
    if (item.is_letter) {
      out.terms.push_back({item.sl, H.identity()});
    } else {
      if (out.terms.empty())
        throw Error("relator_of_mixed: no letter survives normalization");
      out.terms.back().h = H.multiply(out.terms.back().h, item.h);
    }
  }
  if (out.terms.empty())
    throw Error("relator_of_mixed: no letter survives normalization");
  return out;
}

RelativeRelator relator_cyclic_reduce(const CoeffGroup& H,
                                      const RelativeRelator& r) {
  return relator_of_mixed(
      H, fp_to_mixed(fp_cyclic_reduce(H, fp_normalize(H, mixed_of(r)))));
}

FreeProductElement fp_of_letter(const SignedLetter& s) {
  FreeProductElement e;
  FPSyllable syl;
  syl.is_coeff = false;
  syl.w.syllables.push_back(s);
  e.syllables.push_back(std::move(syl));
  return e;
}

FreeProductElement fp_of_coeff(const CoeffGroup& H, const Elem& h) {
  FreeProductElement e;
  if (H.is_identity(h)) return e;
  FPSyllable syl;
  syl.is_coeff = true;
  syl.h = h;
  e.syllables.push_back(std::move(syl));
  return e;
}

// ---------------------------------------------------------------------------
// Homomorphisms

HomomorphismData identity_hom(std::shared_ptr<const RelativePresentation> p) {
  HomomorphismData hom;
  hom.source = p;
  hom.target = p;
  hom.target_letters = p->alphabet;
  hom.target_group = p->group;
  for (const auto& l : p->alphabet)
    hom.images[l] = fp_of_letter(SignedLetter{l, 1});
  return hom;
}

FreeProductElement apply_hom(const HomomorphismData& hom, const MixedWord& w) {
  const CoeffGroup& T = *hom.target_group;
  MixedWord raw;
  for (const auto& item : w) {
    if (item.is_letter) {
      auto it = hom.images.find(item.sl.letter);
      if (it == hom.images.end())
        throw Error("apply_hom: no image for generator '" + item.sl.letter +
                    "'");
      MixedWord img = fp_to_mixed(it->second);
      if (item.sl.exp < 0) img = mixed_inverse(T, img);
      raw.insert(raw.end(), img.begin(), img.end());
    } else {
      raw.push_back(MixedItem::of_coeff(hom.map_coeff(item.h)));
    }
  }
  return fp_normalize(T, raw);
}

FreeProductElement apply_hom(const HomomorphismData& hom, const Word& w) {
  return apply_hom(hom, mixed_of(w));
}

FreeProductElement apply_hom(const HomomorphismData& hom,
                             const FreeProductElement& e) {
  return apply_hom(hom, fp_to_mixed(e));
}

HomomorphismData compose_hom(const HomomorphismData& second,
                             const HomomorphismData& first) {
  HomomorphismData out;
  out.source = first.source;
  out.target = second.target;
  out.target_letters = second.target_letters;
  out.target_group = second.target_group;
  for (const auto& [letter, img] : first.images)
    out.images[letter] = apply_hom(second, img);
  if (first.coeff_map || second.coeff_map) {
    auto f = first.coeff_map, g = second.coeff_map;
    out.coeff_map = [f, g](const Elem& h) {
      Elem mid = f ? f(h) : h;
      return g ? g(mid) : mid;
    };
  }
  return out;
}

HomReport verify_hom(HomomorphismData& hom) {
  if (!hom.source) throw Error("verify_hom: missing source presentation");
  const CoeffGroup& T = *hom.target_group;
  HomReport report;

  // Normal forms of everything a relator image may legitimately be.
  std::vector<std::pair<FreeProductElement, RelatorImageKind>> allowed;
  if (hom.target) {
    for (const auto& r : hom.target->relators) {
      MixedWord base = mixed_of(r);
      MixedWord binv = mixed_inverse(T, base);
      for (size_t rot = 0; rot < base.size(); ++rot) {
        MixedWord m(base.begin() + rot, base.end());
        m.insert(m.end(), base.begin(), base.begin() + rot);
        allowed.emplace_back(fp_normalize(T, m),
                             rot == 0 ? RelatorImageKind::TargetRelator
                                      : RelatorImageKind::CyclicPermutation);
        MixedWord mi(binv.begin() + rot, binv.end());
        mi.insert(mi.end(), binv.begin(), binv.begin() + rot);
        allowed.emplace_back(fp_normalize(T, mi),
                             rot == 0 ? RelatorImageKind::TargetRelatorInverse
                                      : RelatorImageKind::CyclicPermutation);
      }
    }
  }

  for (size_t i = 0; i < hom.source->relators.size(); ++i) {
    FreeProductElement img = apply_hom(hom, mixed_of(hom.source->relators[i]));
    HomCheckEntry entry{i, RelatorImageKind::Other, false};
    if (img.is_identity()) {
      entry.kind = RelatorImageKind::Identity;
      entry.pass = true;
    } else {
      for (const auto& [form, kind] : allowed) {
        if (img == form) {
          entry.kind = kind;
          entry.pass = true;
          break;
        }
      }
      if (!entry.pass) {
        // a conjugate of a target relator also dies in the target group
        FreeProductElement cyc = fp_cyclic_reduce(T, img);
        for (const auto& [form, kind] : allowed) {
          if (cyc == form) {
            entry.kind = RelatorImageKind::Conjugate;
            entry.pass = true;
            break;
          }
        }
      }
    }
    if (!entry.pass) report.pass = false;
    report.entries.push_back(entry);
  }
  hom.verified = report.pass;
  return report;
}

}  // namespace relator
