#ifndef RELATOR_WEIGHTS_HPP
#define RELATOR_WEIGHTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relator/core.hpp"

namespace relator::weights {

// Integer letter weights whose image generates Z (gcd of the nonzero
// absolute values is 1).  Strict <=> no value is 0.
struct WeightFunction {
  std::map<std::string, int> values;

  bool strict() const;
  int value(const std::string& letter) const;  // throws if missing
};

// Validates the gcd invariant and returns the function.
WeightFunction make_weight(std::map<std::string, int> values);
WeightFunction constant_one(const std::vector<std::string>& letters);
WeightFunction negate(const WeightFunction& theta);

// Partial sums phi(0..r); phi(0) = 0.  Admissible <=> phi(r) = 0.
struct Profile {
  std::vector<long long> phi;
  bool admissible = false;
};

Profile profile(const Word& w, const WeightFunction& theta);

// Plateau data: two cyclically adjacent extreme
// positions with equal value.
struct PlateauInfo {
  int position = 0;        // k with phi(k) = phi(k+1)
  bool letters_equal = false;  // x_k == x_{k+2}, the unresolved exercise case
};

struct ExtremumReport {
  long long max_value = 0;  // M
  long long min_value = 0;  // m
  std::vector<int> max_positions;  // cyclic positions in {1..r}
  std::vector<int> min_positions;
  bool unique_max = false;
  bool unique_min = false;
  bool reduced_at_max = false;  // x_k != x_{k+1}
  bool reduced_at_min = false;
  bool strong = false;  // extreme letter pairs intersect
  std::vector<std::string> letters_at_max;  // {x_k, x_{k+1}} when unique
  std::vector<std::string> letters_at_min;
  std::optional<PlateauInfo> max_plateau;
  std::optional<PlateauInfo> min_plateau;
};

// Requires theta admissible for w (basepoint-independence) and |w| >= 1.
ExtremumReport classify(const Word& w, const WeightFunction& theta);

enum class MaxMinClass { UniqueMin, UniqueMaxMin, StrongUniqueMaxMin };

std::string to_string(MaxMinClass c);

// Best class witnessed by a report, if any.
std::optional<MaxMinClass> report_class(const ExtremumReport& r);

struct MaxMinCertificate {
  WeightFunction theta;
  int k = 0;  // unique maximum position (0 when target is unique-min only)
  int l = 0;  // unique minimum position
  MaxMinClass achieved = MaxMinClass::UniqueMin;
  bool verified = false;
};

struct SearchOptions {
  // 2^|letters| sign patterns are enumerated; beyond the cap the search
  // errors out rather than run silently incomplete.
  long long sign_pattern_cap = 1 << 16;
};

// Exact-feasibility search for an admissible strict weight function giving
// the target class.  Deterministic: first success in lexicographic
// (k, l, sigma) order.
std::optional<MaxMinCertificate> search_certificate(
    const Word& w, MaxMinClass target, const SearchOptions& opts = {});

// Exhaustive search over admissible strict weights with |values| <= bound,
// deterministic, for cross-validating search_certificate.
std::optional<MaxMinCertificate> brute_force_certificate(const Word& w,
                                                         MaxMinClass target,
                                                         int bound);

// Brown's finite-generation criterion (plateau-widened unique max-min),
// true only for two-letter alphabets.  w must be cyclically reduced and
// theta admissible (not necessarily strict).
bool brown_kernel_fg(const Word& w, const WeightFunction& theta,
                     int alphabet_size);

}  // namespace relator::weights

#endif  // RELATOR_WEIGHTS_HPP
