#ifndef RELATOR_DSL_HPP
#define RELATOR_DSL_HPP

#include <functional>

#include "relator/core.hpp"

namespace relator::dsl {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + what),
        line(line),
        col(col) {}
  int line, col;
};

struct Document {
  std::string group_name = "H";
  std::vector<std::string> group_factors;  // "trivial" | "Z" | "Z(n)" |
                                           // "free(k)" | "table <file>"
  CoeffGroupPtr group;
  std::vector<std::string> letters;
  std::vector<std::pair<std::string, Elem>> elems;
  std::vector<std::pair<std::string, RelativeRelator>> relators;
  std::vector<std::pair<std::string, MixedWord>> words;
  std::string source;  // original text, for digests

  RelativePresentation presentation() const;
  const RelativeRelator* find_relator(const std::string& name) const;
  const MixedWord* find_word(const std::string& name) const;
  // Parses a query in relator token syntax against this document.
  MixedWord parse_query(const std::string& text) const;
};

// `order n` header plus n rows of n element indices.
std::vector<std::vector<int>> parse_table(const std::string& text);

using FileLoader = std::function<std::string(const std::string&)>;

// Line-oriented grammar:
//   group H = trivial | Z | Z(n) | free(k) | table <file> | A * B
//   letters a, b, e
//   elem h1 = <element literal>
//   relator R = e {h1} a^-1 {h2}
//   word w = ...
// `#` starts a comment.  The loader resolves `table` file references.
Document parse_document(const std::string& text,
                        const FileLoader& loader = nullptr);
Document parse_file(const std::string& path);

// Canonical re-emission; parse(print_document(d)) reproduces d up to elided
// identity coefficients and named-vs-literal coefficients.
std::string print_document(const Document& d);

}  // namespace relator::dsl

#endif  // RELATOR_DSL_HPP
