#ifndef RELATOR_FEASIBILITY_HPP
#define RELATOR_FEASIBILITY_HPP

#include <optional>
#include <vector>

namespace relator::feas {

// Exact rational linear feasibility by Fourier-Motzkin elimination.
// Coefficients are 64-bit integers with 128-bit intermediates; every row is
// gcd-normalized after combination and an Error is thrown on the (never
// observed at our problem sizes) event of a 64-bit overflow.

struct Rat {
  long long num = 0;
  long long den = 1;  // > 0
};

// a . x >= rhs
struct Constraint {
  std::vector<long long> a;
  long long rhs = 0;
};

// Returns a rational point satisfying all constraints, or nullopt.
// Deterministic: elimination in variable order, bounds picked canonically.
std::optional<std::vector<Rat>> feasible_point(
    int nvars, const std::vector<Constraint>& constraints);

// Clears denominators and divides by the gcd of the absolute values.
std::vector<long long> to_integer_point(const std::vector<Rat>& p);

}  // namespace relator::feas

#endif  // RELATOR_FEASIBILITY_HPP
