#ifndef FREEARR_FQSCAN_HPP
#define FREEARR_FQSCAN_HPP

// Exhaustive computations over the affine plane F_p^2.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freearr/arrangement.hpp"
#include "freearr/derivations.hpp"
#include "freearr/freeness.hpp"

namespace freearr {

/// Largest prime accepted by PlaneEnumeration unless a cap is passed.
inline constexpr std::int64_t kDefaultPrimeCap = 13;

/// All p^2 points and p^2 + p lines of F_p^2. Incidence counts are checked on
/// construction.
class PlaneEnumeration {
public:
    /// Throws FieldError for non-prime fields and PreconditionError if p > cap.
    explicit PlaneEnumeration(const Field& field, std::int64_t cap = kDefaultPrimeCap);

    const Field& field() const noexcept { return field_; }
    std::int64_t prime() const noexcept { return field_.modulus(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }

private:
    Field field_;
    std::vector<Point> points_;
    std::vector<Line> lines_;
};

/// |F_p^2 minus the union of A|, checked against chi(A, p).
std::int64_t complement_count(const Arrangement& a);

/// Points of F_p^2 on no line of A.
std::vector<Point> complement_points(const Arrangement& a);

struct LineSpectrum {
    std::map<std::int64_t, std::int64_t> members;    // n_H -> count
    std::map<std::int64_t, std::int64_t> externals;  // n_L -> count
    std::map<std::int64_t, std::int64_t> all;
};

/// Histogram of |A ∩ L| over every line of the plane.
LineSpectrum line_spectrum(const Arrangement& a);

/// chi(A, p) = 0 gives freeness; |A| >= 2p - 1 and free gives chi(A, p) = 0.
CriterionEntry criterion_qroot(const Arrangement& a);

/// chi(A, p - 1) = 0 gives freeness. For a nonempty complement the witness is
/// a non-member through exactly one complement point, which has n_L = p - 1.
CriterionEntry criterion_q1root(const Arrangement& a);

struct FiniteMultiarrReport {
    bool applicable = false;
    ExponentPair exponents;
    std::vector<std::string> checked;
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Exponent constraints for multiplicities at most p: never d1 < p < d2,
/// |m| >= 2p forces d1 = p, |m| = 2p - 1 forces d2 = p, and
/// x^p d/dx + y^p d/dy lies in D(M).
FiniteMultiarrReport finite_multiarr_props(const Multiarrangement& m);

}  // namespace freearr

#endif
