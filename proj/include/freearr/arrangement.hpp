#ifndef FREEARR_ARRANGEMENT_HPP
#define FREEARR_ARRANGEMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freearr/exactalg.hpp"

namespace freearr {

/// The affine line a x + b y + c = 0, scaled so that the first nonzero of
/// (a, b, c) is 1. Since (a, b) != (0, 0) that entry is a or b, so (a, b) is
/// also the canonical direction class.
class Line {
public:
    /// Throws PreconditionError("not a line") when a = b = 0.
    static Line normalize(const Scalar& a, const Scalar& b, const Scalar& c);

    const Scalar& a() const noexcept { return a_; }
    const Scalar& b() const noexcept { return b_; }
    const Scalar& c() const noexcept { return c_; }
    const Field& field() const noexcept { return a_.field(); }

    bool is_parallel_to(const Line& other) const { return a_ == other.a_ && b_ == other.b_; }
    bool contains(const Scalar& x, const Scalar& y) const { return (a_ * x + b_ * y + c_).is_zero(); }

    /// "a b c" in scalar syntax.
    std::string to_string() const;

    friend bool operator==(const Line&, const Line&) = default;

private:
    Line(Scalar a, Scalar b, Scalar c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    Scalar a_;
    Scalar b_;
    Scalar c_;
};

/// Container ordering (lexicographic on the canonical triple).
struct LineLess {
    bool operator()(const Line& l, const Line& r) const;
};

struct Point {
    Scalar x;
    Scalar y;

    friend bool operator==(const Point&, const Point&) = default;
};

struct PointLess {
    bool operator()(const Point& l, const Point& r) const;
};

/// Intersection of two lines; nullopt when parallel (or equal).
std::optional<Point> intersect(const Line& l, const Line& r);

/// A point of the plane met by at least two lines of an arrangement.
struct IncidencePoint {
    Point point;
    std::vector<std::size_t> incident;  // sorted line indices

    std::size_t multiplicity() const noexcept { return incident.size(); }
};

struct ParallelClass {
    Scalar a;
    Scalar b;
    std::vector<std::size_t> members;
};

/// chi(t) = t^2 - n t + b2.
struct CharPoly {
    std::int64_t n = 0;
    std::int64_t b2 = 0;

    std::int64_t operator()(std::int64_t t) const { return t * t - n * t + b2; }
    std::int64_t discriminant() const { return n * n - 4 * b2; }
    std::string to_string() const;

    friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// center + coeff * sqrt(radicand); radicand is squarefree (possibly negative)
/// or 1 with coeff = 0 for integer values.
struct QuadraticRoot {
    mpq_class center;
    mpq_class coeff;
    std::int64_t radicand = 1;

    std::string to_string() const;
};

enum class RootKind { two_integer, real_irrational, complex_conjugate };

std::string to_string(RootKind kind);

/// Roots of a characteristic polynomial, low = (n - sqrt D)/2, high = (n + sqrt D)/2.
struct RootPair {
    std::int64_t discriminant = 0;
    RootKind kind = RootKind::two_integer;
    QuadraticRoot low;
    QuadraticRoot high;

    bool is_real() const noexcept { return kind != RootKind::complex_conjugate; }
    bool is_integer() const noexcept { return kind == RootKind::two_integer; }
    /// Integer roots; throws PreconditionError unless is_integer().
    std::int64_t int_low() const;
    std::int64_t int_high() const;

    /// Exact sign of (low - q) and (high - q). Requires real roots.
    int compare_low(const mpq_class& q) const;
    int compare_high(const mpq_class& q) const;

    std::string to_string() const;
};

RootPair roots(const CharPoly& cp);

/// An ordered set of distinct affine lines over one field, with incidence
/// data computed eagerly at construction.
class Arrangement {
public:
    explicit Arrangement(const Field& field);
    /// Throws MembershipError on duplicate lines and FieldError on mixed fields.
    Arrangement(const Field& field, std::vector<Line> lines);

    const Field& field() const noexcept { return field_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }
    std::size_t size() const noexcept { return lines_.size(); }
    bool empty() const noexcept { return lines_.empty(); }
    const Line& line(std::size_t i) const { return lines_.at(i); }

    const std::vector<IncidencePoint>& points() const noexcept { return points_; }
    const std::vector<ParallelClass>& parallel_classes() const noexcept { return classes_; }
    /// n_H for the member with index i.
    std::int64_t count_on_member(std::size_t i) const { return member_counts_.at(i); }
    const CharPoly& char_poly() const noexcept { return char_poly_; }

    std::optional<std::size_t> index_of(const Line& l) const;
    bool contains(const Line& l) const { return index_of(l).has_value(); }

    /// Lines selected by index, in the given order.
    Arrangement subarrangement(std::span<const std::size_t> indices) const;

    /// Equal as sets of lines.
    bool same_lines(const Arrangement& other) const;

private:
    void build();

    Field field_;
    std::vector<Line> lines_;
    std::vector<IncidencePoint> points_;
    std::vector<ParallelClass> classes_;
    std::vector<std::int64_t> member_counts_;
    CharPoly char_poly_;
};

const std::vector<IncidencePoint>& intersection_points(const Arrangement& a);
CharPoly char_poly(const Arrangement& a);

/// |A ∩ L|: distinct points L ∩ H' over H' in A, H' != L. L may or may not be
/// a member.
std::int64_t count_on_line(const Arrangement& a, const Line& l);

/// Throws MembershipError if h is not a member.
Arrangement delete_line(const Arrangement& a, const Line& h);
/// Throws MembershipError if l is already a member.
Arrangement add_line(const Arrangement& a, const Line& l);

bool is_subarrangement(const Arrangement& sub, const Arrangement& a);

struct OrderStep {
    std::size_t index;   // index in the larger arrangement
    std::int64_t count;  // |B_{i-1} ∩ H_i|
};

/// Greedy ordering of the lines of a not in b: each step takes the remaining
/// line meeting the current subarrangement in the fewest points (lowest index
/// on ties). Counts come out nondecreasing. Throws MembershipError unless b ⊆ a.
std::vector<OrderStep> order_increasing(const Arrangement& a, const Arrangement& b);

/// Non-member lines that realize the extreme values of |A ∩ L| over an
/// infinite field: lines through two intersection points, lines through a
/// point in every existing direction plus one fresh direction, and one line
/// per direction (existing or fresh) avoiding every intersection point.
std::vector<Line> candidate_external_lines(const Arrangement& a);

/// Every line of F_p^2, normalized: (1, b, c) then (0, 1, c). Requires a prime field.
std::vector<Line> plane_lines(const Field& field);

}  // namespace freearr

#endif
