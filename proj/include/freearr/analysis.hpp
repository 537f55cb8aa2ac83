#ifndef FREEARR_ANALYSIS_HPP
#define FREEARR_ANALYSIS_HPP

// Drivers that run every criterion and the full invariant suite on one
// arrangement.

#include <optional>
#include <string>
#include <vector>

#include "freearr/arrangement.hpp"
#include "freearr/freeness.hpp"

namespace freearr {

/// Subarrangements tried by all_criteria when none is given: the empty
/// arrangement, the first pair of crossing lines, pencils at intersection
/// points by decreasing multiplicity, and A minus each line.
std::vector<Arrangement> candidate_subarrangements(const Arrangement& a);

/// One entry per criterion. With sub given every subarrangement criterion
/// uses it; otherwise each uses the first candidate that makes it applicable.
CriterionReport all_criteria(const Arrangement& a, const std::optional<Arrangement>& sub = std::nullopt);

struct VerifyReport {
    std::vector<std::string> checked;
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Runs every invariant against a, taking chi(A) = claimed. Passing
/// a.char_poly() checks the library against itself; a corrupted claim must
/// produce violations.
VerifyReport verify_suite(const Arrangement& a, const CharPoly& claimed);

}  // namespace freearr

#endif
