#ifndef FREEARR_DERIVATIONS_HPP
#define FREEARR_DERIVATIONS_HPP

// Two-dimensional multiarrangements and their logarithmic derivation modules.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freearr/arrangement.hpp"
#include "freearr/exactalg.hpp"

namespace freearr {

/// Homogeneous polynomial in x, y of a fixed degree d; coefficient i belongs
/// to x^(d-i) y^i. The zero polynomial still carries a degree.
class HomPoly {
public:
    HomPoly(const Field& field, std::size_t degree);
    HomPoly(const Field& field, std::size_t degree, Vector coeffs);

    /// a x + b y
    static HomPoly linear(const Scalar& a, const Scalar& b);
    /// x^(d-i) y^i
    static HomPoly monomial(const Field& field, std::size_t degree, std::size_t i);

    const Field& field() const noexcept { return field_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const Scalar& coeff(std::size_t i) const { return coeffs_.at(i); }
    const Vector& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const;

    HomPoly& operator+=(const HomPoly& rhs);
    HomPoly& operator-=(const HomPoly& rhs);
    friend HomPoly operator+(HomPoly l, const HomPoly& r) { return l += r; }
    friend HomPoly operator-(HomPoly l, const HomPoly& r) { return l -= r; }
    friend HomPoly operator*(const HomPoly& l, const HomPoly& r);
    friend HomPoly operator*(const Scalar& s, const HomPoly& p);

    HomPoly pow(std::size_t k) const;

    /// True iff (a x + b y)^m divides this polynomial.
    bool divisible_by_power(const Scalar& a, const Scalar& b, std::int64_t m) const;

    std::string to_string() const;

    friend bool operator==(const HomPoly&, const HomPoly&) = default;

private:
    Field field_;
    Vector coeffs_;
};

/// theta = P d/dx + Q d/dy with P, Q homogeneous of the same degree.
struct HomDerivation {
    HomPoly p;
    HomPoly q;

    std::size_t degree() const noexcept { return p.degree(); }
    /// theta(a x + b y) = a P + b Q
    HomPoly apply(const Scalar& a, const Scalar& b) const;
    bool is_zero() const { return p.is_zero() && q.is_zero(); }
    std::string to_string() const;
};

HomDerivation euler_derivation(const Field& field);
/// x^k d/dx + y^k d/dy
HomDerivation power_derivation(const Field& field, std::size_t k);

/// A central line a x + b y = 0 (first nonzero of (a, b) is 1) with multiplicity.
struct Central {
    Scalar a;
    Scalar b;
    std::int64_t multiplicity = 1;
};

class Multiarrangement {
public:
    explicit Multiarrangement(const Field& field) : field_(field) {}
    /// Normalizes each (a, b); throws on duplicates, zero forms or
    /// multiplicities below 1.
    Multiarrangement(const Field& field, std::vector<Central> centrals);

    const Field& field() const noexcept { return field_; }
    const std::vector<Central>& centrals() const noexcept { return centrals_; }
    std::size_t size() const noexcept { return centrals_.size(); }
    /// |m|
    std::int64_t total() const noexcept { return total_; }
    std::int64_t max_multiplicity() const;

    /// Same centrals with multiplicities replaced (one per central, all >= 1).
    Multiarrangement with_multiplicities(const std::vector<std::int64_t>& m) const;

    /// Q(A, m) = prod alpha_H^m(H)
    HomPoly defining_polynomial() const;

    std::string to_string() const;

private:
    Field field_;
    std::vector<Central> centrals_;
    std::int64_t total_ = 0;
};

struct ExponentPair {
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;

    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

struct RestrictionTarget {
    std::optional<std::size_t> member;  // nullopt: the hyperplane z = 0

    static RestrictionTarget infinity() { return {}; }
    static RestrictionTarget member_line(std::size_t i) { return {i}; }
    bool at_infinity() const noexcept { return !member.has_value(); }
    std::string to_string() const;
};

/// Ziegler restriction of the cone of a onto z = 0 or onto the cone of a
/// member line. Throws MembershipError on an invalid member index.
Multiarrangement ziegler_restriction(const Arrangement& a, RestrictionTarget target);

/// Linear conditions on the 2(d+1) coefficients (P then Q) of a degree-d
/// derivation for membership in D(M).
Matrix graded_constraints(const Multiarrangement& m, std::size_t degree);

std::size_t graded_kernel_dim(const Multiarrangement& m, std::size_t degree);

/// Basis of the degree-d part of D(M), in kernel-echelon order.
std::vector<HomDerivation> graded_basis(const Multiarrangement& m, std::size_t degree);

bool in_module(const HomDerivation& theta, const Multiarrangement& m);

struct ExponentResult {
    ExponentPair exponents;
    HomDerivation theta1;
    HomDerivation theta2;
};

/// Exponents by scanning degrees from 0, with a Saito-verified basis.
/// Throws InvariantViolation if no consistent basis is found.
ExponentResult exponents(const Multiarrangement& m);

/// Saito's criterion: both derivations lie in D(M) and
/// det [[P1, Q1], [P2, Q2]] is a nonzero multiple of Q(M).
/// Throws PreconditionError if the degrees do not sum to |m|.
bool saito_verify(const HomDerivation& theta1, const HomDerivation& theta2, const Multiarrangement& m);

/// (prod alpha_H^(m(H)-1)) * theta_E, of degree |m| - h + 1.
HomDerivation euler_witness(const Multiarrangement& m);

/// 2 max m(H) <= |m|
bool is_balanced(const Multiarrangement& m);

}  // namespace freearr

#endif
