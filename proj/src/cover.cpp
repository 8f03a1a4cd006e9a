#include "relator/cover.hpp"

namespace relator::cover {

PathItem PathItem::inverse(const CoeffGroup& H) const {
  if (is_edge) return PathItem::edge(tau, sl.inverse(), level);
  return PathItem::coeff(level, H.inverse(h));
}

bool well_formed(const LevelledPath& p) {
  long long at = p.start;
  for (const auto& item : p.items) {
    if (item.level != at) return false;
    at = item.tau;
  }
  return true;
}

LevelledPath lift(long long n, const MixedWord& alpha,
                  const weights::WeightFunction& theta) {
  LevelledPath path;
  path.start = n;
  long long at = n;
  for (const auto& item : alpha) {
    if (item.is_letter) {
      long long step = (long long)item.sl.exp * theta.value(item.sl.letter);
      path.items.push_back(PathItem::edge(at, item.sl, at + step));
      at += step;
    } else {
      path.items.push_back(PathItem::coeff(at, item.h));
    }
  }
  return path;
}

LevelledPath translate(long long i, const LevelledPath& p) {
  LevelledPath out;
  out.start = p.start + i;
  out.items.reserve(p.items.size());
  for (const auto& item : p.items) {
    PathItem t = item;
    t.level += i;
    t.tau += i;
    out.items.push_back(std::move(t));
  }
  return out;
}

MixedWord project(const LevelledPath& p) {
  MixedWord out;
  out.reserve(p.items.size());
  for (const auto& item : p.items) {
    if (item.is_edge)
      out.push_back(MixedItem::of_letter(item.sl));
    else
      out.push_back(MixedItem::of_coeff(item.h));
  }
  return out;
}

}  // namespace relator::cover
