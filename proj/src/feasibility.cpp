#include "relator/feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "relator/core.hpp"

namespace relator::feas {

namespace {

using i128 = __int128;

long long narrow(i128 v) {
  if (v > i128(0x7fffffffffffffffLL) || v < -i128(0x7fffffffffffffffLL))
    throw Error("feasibility: 64-bit overflow in exact arithmetic");
  return static_cast<long long>(v);
}

long long gcdll(long long a, long long b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

struct Row {
  std::vector<long long> a;
  long long rhs;

  void normalize() {
    long long g = 0;
    for (long long v : a) g = gcdll(g, v);
    g = gcdll(g, rhs);
    if (g > 1) {
      for (auto& v : a) v /= g;
      rhs /= g;
    }
  }
  bool operator<(const Row& o) const {
    if (a != o.a) return a < o.a;
    return rhs < o.rhs;
  }
};

Rat make_rat(i128 num, i128 den) {
  if (den == 0) throw Error("feasibility: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = 1;
  {
    i128 x = num < 0 ? -num : num, y = den;
    while (y) {
      i128 t = x % y;
      x = y;
      y = t;
    }
    g = x == 0 ? 1 : x;
  }
  Rat r;
  r.num = narrow(num / g);
  r.den = narrow(den / g);
  return r;
}

// a/b compared to c/d
int rat_cmp(const Rat& x, const Rat& y) {
  i128 l = i128(x.num) * y.den;
  i128 r = i128(y.num) * x.den;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

}  // namespace

std::optional<std::vector<Rat>> feasible_point(
    int nvars, const std::vector<Constraint>& constraints) {
  std::vector<Row> current;
  current.reserve(constraints.size());
  for (const auto& c : constraints) {
    if (static_cast<int>(c.a.size()) != nvars)
      throw Error("feasibility: constraint arity mismatch");
    Row r{c.a, c.rhs};
    r.normalize();
    current.push_back(std::move(r));
  }

  // stages[k] holds the constraints that mention x_k at elimination time
  std::vector<std::vector<Row>> stages(nvars);

  for (int k = 0; k < nvars; ++k) {
    std::vector<Row> pos, neg, zero;
    for (auto& r : current) {
      if (r.a[k] > 0)
        pos.push_back(r);
      else if (r.a[k] < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    stages[k] = pos;
    stages[k].insert(stages[k].end(), neg.begin(), neg.end());

    std::set<Row> combos;
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        // (-n.a[k]) * p + p.a[k] * n eliminates x_k; both multipliers > 0
        i128 mp = -i128(n.a[k]);
        i128 mn = i128(p.a[k]);
        Row r;
        r.a.resize(nvars);
        for (int j = 0; j < nvars; ++j)
          r.a[j] = narrow(mp * p.a[j] + mn * n.a[j]);
        r.rhs = narrow(mp * p.rhs + mn * n.rhs);
        r.normalize();
        combos.insert(std::move(r));
      }
    }
    current = std::move(zero);
    current.insert(current.end(), combos.begin(), combos.end());
  }

  // all variables eliminated: rows must read 0 >= rhs
  for (const auto& r : current)
    if (r.rhs > 0) return std::nullopt;

  // back-substitution, last variable first
  std::vector<Rat> x(nvars);
  for (int k = nvars - 1; k >= 0; --k) {
    bool has_lo = false, has_hi = false;
    Rat lo, hi;
    for (const auto& r : stages[k]) {
      // r.a[k] * x_k >= rhs - sum_{j>k} a_j x_j
      i128 num = i128(r.rhs);
      i128 den = 1;
      for (int j = k + 1; j < nvars; ++j) {
        if (r.a[j] == 0) continue;
        // num/den -= a_j * x_j
        num = num * x[j].den - i128(r.a[j]) * x[j].num * den;
        den = den * x[j].den;
        Rat tmp = make_rat(num, den);
        num = tmp.num;
        den = tmp.den;
      }
      Rat bound = make_rat(num, den * r.a[k]);
      if (r.a[k] > 0) {
        if (!has_lo || rat_cmp(bound, lo) > 0) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || rat_cmp(bound, hi) < 0) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi && rat_cmp(lo, hi) > 0)
      throw Error("feasibility: internal bound inversion");
    if (has_lo)
      x[k] = lo;
    else if (has_hi)
      x[k] = hi;
    else
      x[k] = Rat{0, 1};
  }
  return x;
}

std::vector<long long> to_integer_point(const std::vector<Rat>& p) {
  i128 lcm = 1;
  for (const auto& r : p) lcm = lcm / std::gcd(narrow(lcm), r.den) * r.den;
  std::vector<long long> out(p.size());
  long long g = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] = narrow(i128(p[i].num) * (lcm / p[i].den));
    g = gcdll(g, out[i]);
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

}  // namespace relator::feas
