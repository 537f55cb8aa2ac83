#include "freearr/fqscan.hpp"

#include <set>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

void require_prime(const Field& field) {
    if (field.kind() != FieldKind::prime) throw FieldError("finite plane computations need a prime field, got " + field.to_string());
}

bool covered(const Arrangement& a, const Point& pt) {
    for (const auto& h : a.lines())
        if (h.contains(pt.x, pt.y)) return true;
    return false;
}

}  // namespace

PlaneEnumeration::PlaneEnumeration(const Field& field, std::int64_t cap) : field_(field) {
    require_prime(field);
    const std::int64_t p = field.modulus();
    if (p > cap) throw PreconditionError("prime " + std::to_string(p) + " above the enumeration cap " + std::to_string(cap));
    points_.reserve(static_cast<std::size_t>(p * p));
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y) points_.push_back({Scalar::from_int(field, x), Scalar::from_int(field, y)});
    lines_ = plane_lines(field);

    if (static_cast<std::int64_t>(lines_.size()) != p * p + p) throw InvariantViolation("plane line count is not p^2 + p");
    std::vector<std::int64_t> per_point(points_.size(), 0);
    for (const auto& l : lines_) {
        std::int64_t on = 0;
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (l.contains(points_[i].x, points_[i].y)) {
                ++on;
                ++per_point[i];
            }
        if (on != p) throw InvariantViolation("line " + l.to_string() + " has " + std::to_string(on) + " points");
    }
    for (auto c : per_point)
        if (c != p + 1) throw InvariantViolation("a point lies on " + std::to_string(c) + " lines");
}

std::vector<Point> complement_points(const Arrangement& a) {
    const PlaneEnumeration plane(a.field());
    std::vector<Point> out;
    for (const auto& pt : plane.points())
        if (!covered(a, pt)) out.push_back(pt);
    return out;
}

std::int64_t complement_count(const Arrangement& a) {
    const auto count = static_cast<std::int64_t>(complement_points(a).size());
    const std::int64_t expected = a.char_poly()(a.field().modulus());
    if (count != expected)
        throw InvariantViolation("complement has " + std::to_string(count) + " points but chi(p) = " + std::to_string(expected));
    return count;
}

LineSpectrum line_spectrum(const Arrangement& a) {
    require_prime(a.field());
    LineSpectrum s;
    const PlaneEnumeration plane(a.field());
    for (const auto& l : plane.lines()) {
        const std::int64_t n = count_on_line(a, l);
        ++(a.contains(l) ? s.members : s.externals)[n];
        ++s.all[n];
    }
    return s;
}

CriterionEntry criterion_qroot(const Arrangement& a) {
    require_prime(a.field());
    const std::int64_t p = a.field().modulus();
    const std::int64_t at_p = a.char_poly()(p);
    CriterionEntry e;
    e.name = "qroot";
    e.evidence.emplace_back("chi_p", std::to_string(at_p));
    const FreenessCertificate cert = decide_free(a);
    e.evidence.emplace_back("exact_verdict", cert.is_free() ? "free" : "not_free");
    if (at_p == 0) {
        e.applicable = true;
        e.conclusion = Conclusion::free;
        if (!cert.is_free()) throw InvariantViolation("chi(p) = 0 but the arrangement is not free");
    } else if (static_cast<std::int64_t>(a.size()) >= 2 * p - 1) {
        // |A| >= 2p - 1 with chi(p) != 0 rules out freeness.
        e.applicable = true;
        e.conclusion = Conclusion::not_free;
        if (cert.is_free()) throw InvariantViolation("free with |A| >= 2p - 1 but chi(p) != 0");
    } else {
        e.evidence.emplace_back("reason", "chi(p) != 0 and |A| < 2p - 1");
    }
    return e;
}

CriterionEntry criterion_q1root(const Arrangement& a) {
    require_prime(a.field());
    const std::int64_t p = a.field().modulus();
    if (a.char_poly()(p - 1) != 0) {
        CriterionEntry e;
        e.name = "q1root";
        e.evidence.emplace_back("reason", "chi(p - 1) != 0");
        return e;
    }
    const std::vector<Point> free_points = complement_points(a);
    const auto r = static_cast<std::int64_t>(free_points.size());
    if (r == 0) {
        CriterionEntry e = criterion_qroot(a);
        e.name = "q1root";
        e.evidence.emplace_back("r", "0");
        e.evidence.emplace_back("dispatched", "qroot");
        return e;
    }
    CriterionEntry e;
    e.name = "q1root";
    e.applicable = true;
    e.conclusion = Conclusion::free;
    e.evidence.emplace_back("r", std::to_string(r));
    if (r > p) throw InvariantViolation("complement larger than p with chi(p - 1) = 0");

    const Point& base = free_points.front();
    std::optional<Line> witness;
    const PlaneEnumeration plane(a.field());
    for (const auto& l : plane.lines()) {
        if (!l.contains(base.x, base.y) || a.contains(l)) continue;
        bool alone = true;
        for (std::size_t i = 1; i < free_points.size() && alone; ++i) alone = !l.contains(free_points[i].x, free_points[i].y);
        if (alone) {
            witness = l;
            break;
        }
    }
    if (!witness) throw InvariantViolation("no line through exactly one complement point");
    const std::int64_t nl = count_on_line(a, *witness);
    if (nl != p - 1) throw InvariantViolation("witness line meets A in " + std::to_string(nl) + " points, not p - 1");
    e.evidence.emplace_back("witness", witness->to_string());
    e.evidence.emplace_back("n_l", std::to_string(nl));

    const FreenessCertificate cert = decide_free(a);
    e.evidence.emplace_back("exact_verdict", cert.is_free() ? "free" : "not_free");
    if (!cert.is_free()) throw InvariantViolation("chi(p - 1) = 0 but the arrangement is not free");
    return e;
}

FiniteMultiarrReport finite_multiarr_props(const Multiarrangement& m) {
    require_prime(m.field());
    const std::int64_t p = m.field().modulus();
    FiniteMultiarrReport rep;
    if (m.max_multiplicity() > p) return rep;
    rep.applicable = true;
    const ExponentPair ex = exponents(m).exponents;
    rep.exponents = ex;

    rep.checked.push_back("not d1 < p < d2");
    if (ex.d1 < p && p < ex.d2) rep.violations.push_back("d1 < p < d2");
    if (m.total() >= 2 * p) {
        rep.checked.push_back("|m| >= 2p implies d1 = p");
        if (ex.d1 != p) rep.violations.push_back("|m| >= 2p but d1 = " + std::to_string(ex.d1));
    }
    if (m.total() == 2 * p - 1) {
        rep.checked.push_back("|m| = 2p - 1 implies d2 = p");
        if (ex.d2 != p) rep.violations.push_back("|m| = 2p - 1 but d2 = " + std::to_string(ex.d2));
    }
    rep.checked.push_back("x^p d/dx + y^p d/dy in D(M)");
    if (!in_module(power_derivation(m.field(), static_cast<std::size_t>(p)), m))
        rep.violations.push_back("x^p d/dx + y^p d/dy not in D(M)");
    return rep;
}

}  // namespace freearr
