#ifndef RELATOR_COVER_HPP
#define RELATOR_COVER_HPP

#include "relator/core.hpp"
#include "relator/weights.hpp"

namespace relator::cover {

// One item of a path in the levelled 2-complex of groups: either an edge
// (n, x^e) with endpoints n and n + e*theta(x), or a stationary coefficient
// (n, h).  The infinite complex is never materialized; items are values.
struct PathItem {
  bool is_edge = true;
  long long level = 0;  // iota
  SignedLetter sl;      // edge payload
  Elem h;               // coefficient payload
  long long tau = 0;    // terminal vertex (== level for coefficients)

  static PathItem edge(long long n, SignedLetter s, long long tau) {
    PathItem p;
    p.is_edge = true;
    p.level = n;
    p.sl = std::move(s);
    p.tau = tau;
    return p;
  }
  static PathItem coeff(long long n, Elem e) {
    PathItem p;
    p.is_edge = false;
    p.level = n;
    p.h = std::move(e);
    p.tau = n;
    return p;
  }
  PathItem inverse(const CoeffGroup& H) const;
  bool operator==(const PathItem& o) const {
    return is_edge == o.is_edge && level == o.level && sl == o.sl &&
           h == o.h && tau == o.tau;
  }
};

struct LevelledPath {
  long long start = 0;
  std::vector<PathItem> items;

  bool closed() const { return end() == start; }
  long long end() const { return items.empty() ? start : items.back().tau; }
  bool operator==(const LevelledPath& o) const {
    return start == o.start && items == o.items;
  }
};

// Checks the tau/iota chaining invariant.
bool well_formed(const LevelledPath& p);

// (n, alpha): theta extended by theta(x^-1) = -theta(x), theta(h) = 0.
LevelledPath lift(long long n, const MixedWord& alpha,
                  const weights::WeightFunction& theta);

// The Z-action i.(n, z) = (i+n, z).
LevelledPath translate(long long i, const LevelledPath& p);

// Forget levels; a section of lift.
MixedWord project(const LevelledPath& p);

}  // namespace relator::cover

#endif  // RELATOR_COVER_HPP
