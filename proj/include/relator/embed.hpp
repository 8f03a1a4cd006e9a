#ifndef RELATOR_EMBED_HPP
#define RELATOR_EMBED_HPP

#include "relator/core.hpp"
#include "relator/weights.hpp"

namespace relator::embed {

// A retraction rho with section mu (rho . mu = id on the small group).
struct RetractionPair {
  HomomorphismData rho;  // big -> small
  HomomorphismData mu;   // small -> big
  bool roundtrip_verified = false;
};

// Checks rho(mu(g)) = g on every small-side generator and mu(h) = h on the
// coefficient probe set (the testable forms of "rho mu = id" and
// "mu nu = nu-hat").
bool verify_retraction(RetractionPair& pair);

RetractionPair identity_pair(std::shared_ptr<const RelativePresentation> p);

struct StretchResult {
  RelativePresentation presentation;
  RetractionPair pair;
  std::vector<std::string> flipped;  // letters replaced by their inverses
  std::map<std::string, std::vector<std::string>> split;  // y -> y_1..y_t
};

// Stretch rewriting: split each letter of weight > 1 so the certificate
// becomes the constant weight 1.  cert must be verified with class at least
// unique-max-min for the relator's skeleton.
StretchResult stretch(const RelativePresentation& p,
                      const weights::MaxMinCertificate& cert);

struct StrengthenResult {
  RelativePresentation presentation;
  RetractionPair pair;
  bool changed = false;
  std::string e;  // the letter placed at both extremes (empty if unchanged)
};

// Strengthen rewriting: requires a 1-certificate; if the extreme letter pairs
// already intersect the presentation is returned unchanged.
StrengthenResult strengthen(const RelativePresentation& p);

struct StageRecord {
  std::string stage;  // "positivize+stretch" | "strengthen" | ...
  RelativePresentation presentation;
};

struct ToStrongResult {
  bool found = false;  // false: not in M_H as far as the search can tell
  RelativePresentation presentation;
  RetractionPair pair;  // composite, original <-> final
  std::vector<StageRecord> chain;
  std::string e;  // designated extreme letter in the final presentation
};

// Full pipeline: search -> stretch -> strengthen with composite
// verified retraction pair.
ToStrongResult to_strong(const RelativePresentation& p,
                         const weights::SearchOptions& opts = {});

}  // namespace relator::embed

#endif  // RELATOR_EMBED_HPP
