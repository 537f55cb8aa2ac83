#ifndef FREEARR_FREENESS_HPP
#define FREEARR_FREENESS_HPP

// Exact freeness of affine line arrangements (b2 against the product of the
// Ziegler restriction exponents) and the combinatorial criteria built on the
// roots of the characteristic polynomial. Every criterion that reaches a
// conclusion is checked against the exact decision; a disagreement throws
// InvariantViolation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freearr/arrangement.hpp"
#include "freearr/derivations.hpp"

namespace freearr {

enum class Verdict { free, not_free };

struct FreenessCertificate {
    Verdict verdict = Verdict::not_free;
    ExponentPair exponents;  // of the Ziegler restriction; exp_0(A) when free
    std::int64_t b2 = 0;
    RestrictionTarget target;

    bool is_free() const noexcept { return verdict == Verdict::free; }
    std::int64_t product() const noexcept { return exponents.d1 * exponents.d2; }
};

/// Throws InvariantViolation if b2 < d1 d2.
FreenessCertificate decide_free(const Arrangement& a, RestrictionTarget target = RestrictionTarget::infinity());

enum class Conclusion { free, not_free, no_conclusion };

std::string to_string(Conclusion c);

using Evidence = std::vector<std::pair<std::string, std::string>>;

struct CriterionEntry {
    std::string name;
    bool applicable = false;
    Conclusion conclusion = Conclusion::no_conclusion;
    Evidence evidence;

    /// First evidence value under key, or "".
    std::string get(const std::string& key) const;
};

struct CriterionReport {
    std::vector<CriterionEntry> entries;
};

/// Free if some member, or some supplied non-member, meets A in exactly one
/// of the two integer roots. Applicable when the roots are integers.
CriterionEntry criterion_root_incidence(const Arrangement& a, std::span<const Line> externals = {});

/// (A, A - H) is a free pair iff the two characteristic polynomials share a
/// root; that root is n_H. Conclusion free when a root is shared.
CriterionEntry criterion_deletion_pair(const Arrangement& a, std::size_t member);

/// When chi(A, n_H) = chi(A - H, n_H) = 0, freeness of A equals freeness of
/// A - H, resolved recursively down to at most two lines.
CriterionEntry criterion_addition(const Arrangement& a, std::size_t member);

/// chi(A) = (t-n)(t-n-r), B a proper subarrangement with chi(B) real and
/// alpha <= n, n-1 <= beta: A free iff some member has n_H in {n, n+r}.
CriterionEntry criterion_mainc(const Arrangement& a, const Arrangement& sub);

/// chi(A) = (t-n)(t-n-r), B free with exp (n-s, n-1). For s >= 1 A is free iff
/// no B ⊆ C ⊆ A has chi(C) = (t-n-u+1)(t-n+s) with u > r+1; for -r <= s <= 0
/// A is free iff some n_H is in {n, n+r}.
CriterionEntry criterion_main(const Arrangement& a, const Arrangement& sub);

/// Subsets of A - B searched exhaustively up to this size.
inline constexpr std::size_t kExhaustiveSubsetCap = 12;

/// chi(A) = (t-a)(t-c), chi(B) = (t-a)(t-b), a <= b <= c, B free: A free.
CriterionEntry criterion_subfree(const Arrangement& a, const Arrangement& sub);

/// Characteristic 0, balanced restriction at infinity with h > 2 centrals:
/// |alpha - beta| <= h - 2, and equality with h-2 or h-3 forces freeness.
CriterionEntry criterion_exp_gap(const Arrangement& a);

/// B free with exp (n-2,n-2) and r >= 1, (n-3,n-2) and r >= 2, or (n-3,n-3)
/// and r >= 4: A free iff some n_H is in {n, n+r}.
CriterionEntry criterion_small_sub(const Arrangement& a, const Arrangement& sub);

/// All lines of F_p^2 for prime fields, the candidate family otherwise.
/// Members are excluded.
std::vector<Line> external_test_lines(const Arrangement& a);

struct RootWindowReport {
    RootPair roots;
    bool free = false;
    std::map<std::int64_t, std::int64_t> member_counts;    // n_H -> how many members
    std::map<std::int64_t, std::int64_t> external_counts;  // n_L -> how many tested lines
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// chi(A, n_L) >= 0 for members and the given non-members; for free A with
/// integer roots (a, a+b) also n_H <= a or n_H = a+b, and n_L = a or
/// n_L >= a+b.
RootWindowReport verify_root_window(const Arrangement& a, std::span<const Line> externals);
RootWindowReport verify_root_window(const Arrangement& a);

}  // namespace freearr

#endif
