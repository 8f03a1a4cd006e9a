#include "relator/dsl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace relator::dsl {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct LineCtx {
  int line;
  const std::string& text;
  [[noreturn]] void fail(const std::string& msg, int col = 1) const {
    throw ParseError(msg, line, col);
  }
};

CoeffGroupPtr make_factor(const std::string& spec, const LineCtx& ctx,
                          const FileLoader& loader) {
  if (spec == "trivial") return make_trivial_group();
  if (spec == "Z") return make_infinite_cyclic_group();
  if (spec.rfind("Z(", 0) == 0 && spec.back() == ')') {
    long long n;
    try {
      n = std::stoll(spec.substr(2, spec.size() - 3));
    } catch (...) {
      ctx.fail("bad cyclic order in " + spec);
    }
    return make_cyclic_group(n);
  }
  if (spec.rfind("free(", 0) == 0 && spec.back() == ')') {
    int k;
    try {
      k = std::stoi(spec.substr(5, spec.size() - 6));
    } catch (...) {
      ctx.fail("bad free rank in " + spec);
    }
    return make_free_group(k);
  }
  if (spec.rfind("table ", 0) == 0) {
    if (!loader) ctx.fail("no file loader available for table groups");
    std::string file = trim(spec.substr(6));
    std::string text;
    try {
      text = loader(file);
    } catch (const std::exception& ex) {
      ctx.fail(std::string("cannot load table: ") + ex.what());
    }
    try {
      return make_table_group(parse_table(text));
    } catch (const std::exception& ex) {
      ctx.fail(std::string("bad table in ") + file + ": " + ex.what());
    }
  }
  ctx.fail("unknown group realization: " + spec);
}

// items of relator token syntax: letters with signs and coefficient elements
MixedWord parse_items(const Document& d, const std::string& rhs,
                      const LineCtx& ctx) {
  MixedWord out;
  const CoeffGroup& H = *d.group;
  size_t i = 0;
  std::set<std::string> letterset(d.letters.begin(), d.letters.end());
  while (i < rhs.size()) {
    if (isspace((unsigned char)rhs[i])) {
      ++i;
      continue;
    }
    if (rhs[i] == '{') {
      size_t close = rhs.find('}', i);
      if (close == std::string::npos)
        ctx.fail("unterminated coefficient brace", (int)i + 1);
      std::string inner = trim(rhs.substr(i + 1, close - i - 1));
      Elem h;
      bool named = false;
      for (const auto& [name, val] : d.elems)
        if (name == inner) {
          h = val;
          named = true;
          break;
        }
      if (!named) {
        try {
          h = H.parse(inner);
        } catch (const std::exception& ex) {
          ctx.fail("unknown element '" + inner + "': " + ex.what(),
                   (int)i + 1);
        }
      }
      out.push_back(MixedItem::of_coeff(h));
      i = close + 1;
      continue;
    }
    size_t j = i;
    while (j < rhs.size() && !isspace((unsigned char)rhs[j]) && rhs[j] != '{')
      ++j;
    std::string tok = rhs.substr(i, j - i);
    int exp = 1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      exp = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (!letterset.count(tok)) ctx.fail("unknown letter: " + tok, (int)i + 1);
    out.push_back(MixedItem::of_letter({tok, exp}));
    i = j;
  }
  return out;
}

RelativeRelator relator_of_items(const Document& d, const MixedWord& items,
                                 const LineCtx& ctx) {
  const CoeffGroup& H = *d.group;
  RelativeRelator r;
  Elem leading = H.identity();
  for (const auto& it : items) {
    if (it.is_letter) {
      r.terms.push_back({it.sl, H.identity()});
    } else if (r.terms.empty()) {
      leading = H.multiply(leading, it.h);
    } else {
      r.terms.back().h = H.multiply(r.terms.back().h, it.h);
    }
  }
  if (r.terms.empty()) ctx.fail("relator has no letters");
  // a leading coefficient belongs to the last slot, cyclically
  r.terms.back().h = H.multiply(r.terms.back().h, leading);
  return r;
}

}  // namespace

RelativePresentation Document::presentation() const {
  RelativePresentation p;
  p.alphabet = letters;
  p.group = group;
  for (const auto& [name, r] : relators) p.relators.push_back(r);
  p.validate();
  return p;
}

const RelativeRelator* Document::find_relator(const std::string& name) const {
  for (const auto& [n, r] : relators)
    if (n == name) return &r;
  return nullptr;
}

const MixedWord* Document::find_word(const std::string& name) const {
  for (const auto& [n, w] : words)
    if (n == name) return &w;
  return nullptr;
}

MixedWord Document::parse_query(const std::string& text) const {
  LineCtx ctx{0, text};
  return parse_items(*this, text, ctx);
}

std::vector<std::vector<int>> parse_table(const std::string& text) {
  // same comment convention as the document grammar
  std::string stripped;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    stripped += line;
    stripped += '\n';
  }
  std::istringstream is(stripped);
  std::string kw;
  int n = 0;
  if (!(is >> kw >> n) || kw != "order" || n < 1)
    throw Error("table file must start with 'order n'");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (auto& row : rows)
    for (auto& cell : row)
      if (!(is >> cell) || cell < 0 || cell >= n)
        throw Error("table file: expected " + std::to_string(n * n) +
                    " indices in [0," + std::to_string(n - 1) + "]");
  return rows;
}

Document parse_document(const std::string& text, const FileLoader& loader) {
  Document d;
  d.source = text;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  std::set<std::string> names;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    LineCtx ctx{lineno, line};

    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string rest = trim(line.substr(kw.size()));

    if (kw == "group") {
      size_t eq = rest.find('=');
      if (eq == std::string::npos) ctx.fail("expected 'group NAME = SPEC'");
      d.group_name = trim(rest.substr(0, eq));
      std::string spec = trim(rest.substr(eq + 1));
      if (d.group_name.empty() || spec.empty())
        ctx.fail("expected 'group NAME = SPEC'");
      std::vector<CoeffGroupPtr> factors;
      size_t start = 0;
      while (true) {
        size_t star = spec.find('*', start);
        std::string piece = trim(star == std::string::npos
                                     ? spec.substr(start)
                                     : spec.substr(start, star - start));
        if (piece.empty()) ctx.fail("empty free-product factor");
        d.group_factors.push_back(piece);
        factors.push_back(make_factor(piece, ctx, loader));
        if (star == std::string::npos) break;
        start = star + 1;
      }
      d.group = factors.size() == 1 ? factors[0] : make_free_product(factors);
      continue;
    }

    if (!d.group) ctx.fail("the 'group' line must come first");

    if (kw == "letters") {
      std::string cleaned = rest;
      std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
      for (const auto& name : split_ws(cleaned)) {
        if (names.count(name)) ctx.fail("duplicate name: " + name);
        names.insert(name);
        d.letters.push_back(name);
      }
      if (d.letters.empty()) ctx.fail("empty letters declaration");
      continue;
    }

    size_t eq = rest.find('=');
    if (eq == std::string::npos) ctx.fail("expected '" + kw + " NAME = ...'");
    std::string name = trim(rest.substr(0, eq));
    std::string rhs = trim(rest.substr(eq + 1));
    if (name.empty()) ctx.fail("missing name");
    if (kw == "elem") {
      if (names.count(name)) ctx.fail("duplicate name: " + name);
      names.insert(name);
      try {
        d.elems.emplace_back(name, d.group->parse(rhs));
      } catch (const std::exception& ex) {
        ctx.fail(std::string("bad element literal: ") + ex.what());
      }
    } else if (kw == "relator") {
      if (names.count(name)) ctx.fail("duplicate name: " + name);
      names.insert(name);
      MixedWord items = parse_items(d, rhs, ctx);
      d.relators.emplace_back(name, relator_of_items(d, items, ctx));
    } else if (kw == "word") {
      if (names.count(name)) ctx.fail("duplicate name: " + name);
      names.insert(name);
      d.words.emplace_back(name, parse_items(d, rhs, ctx));
    } else {
      ctx.fail("unknown keyword: " + kw);
    }
  }
  if (!d.group) throw ParseError("document has no 'group' line", 1, 1);
  if (d.relators.empty()) throw ParseError("document has no relator", lineno, 1);
  d.presentation();  // surfaces invariant violations as errors
  return d;
}

Document parse_file(const std::string& path) {
  auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::string dir;
  size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash + 1);
  return parse_document(read(path),
                        [&](const std::string& f) { return read(dir + f); });
}

std::string print_document(const Document& d) {
  std::ostringstream os;
  const CoeffGroup& H = *d.group;
  os << "group " << d.group_name << " = ";
  for (size_t i = 0; i < d.group_factors.size(); ++i) {
    if (i) os << " * ";
    os << d.group_factors[i];
  }
  os << "\n";
  os << "letters ";
  for (size_t i = 0; i < d.letters.size(); ++i) {
    if (i) os << ", ";
    os << d.letters[i];
  }
  os << "\n";
  for (const auto& [name, h] : d.elems) os << "elem " << name << " = " << h << "\n";
  auto put_items = [&](const MixedWord& items) {
    bool first = true;
    for (const auto& it : items) {
      if (!first) os << " ";
      first = false;
      if (it.is_letter) {
        os << it.sl.letter;
        if (it.sl.exp == -1) os << "^-1";
      } else {
        os << "{" << it.h << "}";
      }
    }
  };
  for (const auto& [name, r] : d.relators) {
    os << "relator " << name << " = ";
    MixedWord items;
    for (const auto& t : r.terms) {
      items.push_back(MixedItem::of_letter(t.sl));
      if (!H.is_identity(t.h)) items.push_back(MixedItem::of_coeff(t.h));
    }
    put_items(items);
    os << "\n";
  }
  for (const auto& [name, w] : d.words) {
    os << "word " << name << " = ";
    put_items(w);
    os << "\n";
  }
  return os.str();
}

}  // namespace relator::dsl
