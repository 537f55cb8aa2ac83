#include "freearr/arrangement.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <utility>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

int compare_triples(const Line& l, const Line& r) {
    if (int c = canonical_compare(l.a(), r.a()); c != 0) return c;
    if (int c = canonical_compare(l.b(), r.b()); c != 0) return c;
    return canonical_compare(l.c(), r.c());
}

struct DirectionLess {
    bool operator()(const std::pair<Scalar, Scalar>& l, const std::pair<Scalar, Scalar>& r) const {
        if (int c = canonical_compare(l.first, r.first); c != 0) return c < 0;
        return canonical_compare(l.second, r.second) < 0;
    }
};

std::int64_t count_on(const std::vector<Line>& lines, const Line& l) {
    std::set<Point, PointLess> seen;
    for (const auto& h : lines) {
        if (h == l) continue;
        if (auto p = intersect(h, l)) seen.insert(std::move(*p));
    }
    return static_cast<std::int64_t>(seen.size());
}

// sign(w + coeff * sqrt(k)) for rational w, coeff and integer k > 0.
int sign_with_surd(const mpq_class& w, const mpq_class& coeff, std::int64_t k) {
    const int sw = sgn(w);
    const int sc = sgn(coeff);
    if (sc == 0) return sw;
    if (sw == 0 || sw == sc) return sc;
    // Opposite signs: compare w^2 with coeff^2 * k.
    const mpq_class lhs = w * w;
    const mpq_class rhs = coeff * coeff * mpq_class(mpz_class(static_cast<long>(k)));
    const int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sw : sc;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ------------------------------------------------------------------ Line

Line Line::normalize(const Scalar& a, const Scalar& b, const Scalar& c) {
    if (!(a.field() == b.field()) || !(b.field() == c.field())) throw FieldError("line coefficients from different fields");
    if (a.is_zero() && b.is_zero()) throw PreconditionError("not a line");
    const Scalar lead = a.is_zero() ? b : a;
    const Scalar inv = lead.inverse();
    return Line(a * inv, b * inv, c * inv);
}

std::string Line::to_string() const { return a_.to_string() + " " + b_.to_string() + " " + c_.to_string(); }

bool LineLess::operator()(const Line& l, const Line& r) const { return compare_triples(l, r) < 0; }

bool PointLess::operator()(const Point& l, const Point& r) const {
    if (int c = canonical_compare(l.x, r.x); c != 0) return c < 0;
    return canonical_compare(l.y, r.y) < 0;
}

std::optional<Point> intersect(const Line& l, const Line& r) {
    const Scalar det = l.a() * r.b() - r.a() * l.b();
    if (det.is_zero()) return std::nullopt;
    const Scalar inv = det.inverse();
    return Point{(l.b() * r.c() - r.b() * l.c()) * inv, (l.c() * r.a() - r.c() * l.a()) * inv};
}

// -------------------------------------------------------------- CharPoly

std::string CharPoly::to_string() const {
    std::string s = "t^2";
    if (n == 1) s += " - t";
    else if (n != 0) s += " - " + std::to_string(n) + " t";
    if (b2 != 0) s += " + " + std::to_string(b2);
    return s;
}

std::string QuadraticRoot::to_string() const {
    if (sgn(coeff) == 0) return rational_text(center);
    const mpq_class mag = abs(coeff);
    std::string surd = (mag == 1 ? std::string() : rational_text(mag) + "*") + "sqrt(" + std::to_string(radicand) + ")";
    if (sgn(center) == 0) return (sgn(coeff) < 0 ? "-" : "") + surd;
    return rational_text(center) + (sgn(coeff) < 0 ? " - " : " + ") + surd;
}

std::string to_string(RootKind kind) {
    switch (kind) {
    case RootKind::two_integer: return "two-integer";
    case RootKind::real_irrational: return "real-irrational";
    case RootKind::complex_conjugate: return "complex-conjugate";
    }
    return {};
}

std::int64_t RootPair::int_low() const {
    if (!is_integer()) throw PreconditionError("roots are not integers");
    return low.center.get_num().get_si();
}

std::int64_t RootPair::int_high() const {
    if (!is_integer()) throw PreconditionError("roots are not integers");
    return high.center.get_num().get_si();
}

int RootPair::compare_low(const mpq_class& q) const {
    if (!is_real()) throw PreconditionError("comparison with complex roots");
    return sign_with_surd(low.center - q, low.coeff, low.radicand);
}

int RootPair::compare_high(const mpq_class& q) const {
    if (!is_real()) throw PreconditionError("comparison with complex roots");
    return sign_with_surd(high.center - q, high.coeff, high.radicand);
}

std::string RootPair::to_string() const {
    return freearr::to_string(kind) + " (" + low.to_string() + ", " + high.to_string() + ")";
}

RootPair roots(const CharPoly& cp) {
    RootPair rp;
    rp.discriminant = cp.discriminant();
    // D = s^2 k with k squarefree, sign carried by k.
    std::int64_t k = rp.discriminant < 0 ? -1 : 1;
    std::int64_t rest = std::llabs(rp.discriminant);
    std::int64_t s = 1;
    for (std::int64_t f = 2; f * f <= rest; ++f)
        while (rest % (f * f) == 0) {
            rest /= f * f;
            s *= f;
        }
    k *= rest;
    if (rp.discriminant == 0) {
        s = 0;
        k = 1;
    }
    const mpq_class center(mpz_class(static_cast<long>(cp.n)), 2);
    if (k == 1) {
        rp.kind = RootKind::two_integer;
        rp.low = {mpq_class(mpz_class(static_cast<long>((cp.n - s) / 2))), 0, 1};
        rp.high = {mpq_class(mpz_class(static_cast<long>((cp.n + s) / 2))), 0, 1};
    } else {
        rp.kind = k > 0 ? RootKind::real_irrational : RootKind::complex_conjugate;
        const mpq_class half_s(mpz_class(static_cast<long>(s)), 2);
        rp.low = {center, mpq_class(-half_s), k};
        rp.high = {center, half_s, k};
        rp.low.center.canonicalize();
        rp.high.center.canonicalize();
        rp.low.coeff.canonicalize();
        rp.high.coeff.canonicalize();
    }
    return rp;
}

// ----------------------------------------------------------- Arrangement

Arrangement::Arrangement(const Field& field) : field_(field) { build(); }

Arrangement::Arrangement(const Field& field, std::vector<Line> lines) : field_(field), lines_(std::move(lines)) {
    std::set<Line, LineLess> seen;
    for (const auto& l : lines_) {
        if (!(l.field() == field_)) throw FieldError("line over " + l.field().to_string() + " in arrangement over " + field_.to_string());
        if (!seen.insert(l).second) throw MembershipError("duplicate line " + l.to_string());
    }
    build();
}

void Arrangement::build() {
    std::map<std::pair<Scalar, Scalar>, std::size_t, DirectionLess> class_index;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        auto key = std::make_pair(lines_[i].a(), lines_[i].b());
        auto [it, inserted] = class_index.emplace(key, classes_.size());
        if (inserted) classes_.push_back(ParallelClass{key.first, key.second, {}});
        classes_[it->second].members.push_back(i);
    }

    std::map<Point, std::set<std::size_t>, PointLess> incidence;
    for (std::size_t i = 0; i < lines_.size(); ++i)
        for (std::size_t j = i + 1; j < lines_.size(); ++j)
            if (auto p = intersect(lines_[i], lines_[j])) {
                auto& s = incidence[*p];
                s.insert(i);
                s.insert(j);
            }

    member_counts_.assign(lines_.size(), 0);
    char_poly_ = CharPoly{static_cast<std::int64_t>(lines_.size()), 0};
    points_.reserve(incidence.size());
    for (auto& [pt, members] : incidence) {
        for (auto idx : members) ++member_counts_[idx];
        char_poly_.b2 += static_cast<std::int64_t>(members.size()) - 1;
        points_.push_back(IncidencePoint{pt, std::vector<std::size_t>(members.begin(), members.end())});
    }
}

std::optional<std::size_t> Arrangement::index_of(const Line& l) const {
    for (std::size_t i = 0; i < lines_.size(); ++i)
        if (lines_[i] == l) return i;
    return std::nullopt;
}

Arrangement Arrangement::subarrangement(std::span<const std::size_t> indices) const {
    std::vector<Line> chosen;
    chosen.reserve(indices.size());
    for (auto i : indices) {
        if (i >= lines_.size()) throw MembershipError("line index " + std::to_string(i) + " out of range");
        chosen.push_back(lines_[i]);
    }
    return Arrangement(field_, std::move(chosen));
}

bool Arrangement::same_lines(const Arrangement& other) const {
    if (!(field_ == other.field_) || size() != other.size()) return false;
    return std::all_of(lines_.begin(), lines_.end(), [&](const Line& l) { return other.contains(l); });
}

const std::vector<IncidencePoint>& intersection_points(const Arrangement& a) { return a.points(); }

CharPoly char_poly(const Arrangement& a) { return a.char_poly(); }

std::int64_t count_on_line(const Arrangement& a, const Line& l) { return count_on(a.lines(), l); }

Arrangement delete_line(const Arrangement& a, const Line& h) {
    const auto idx = a.index_of(h);
    if (!idx) throw MembershipError("line " + h.to_string() + " is not in the arrangement");
    std::vector<Line> rest;
    rest.reserve(a.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != *idx) rest.push_back(a.line(i));
    return Arrangement(a.field(), std::move(rest));
}

Arrangement add_line(const Arrangement& a, const Line& l) {
    if (a.contains(l)) throw MembershipError("line " + l.to_string() + " is already in the arrangement");
    std::vector<Line> more = a.lines();
    more.push_back(l);
    return Arrangement(a.field(), std::move(more));
}

bool is_subarrangement(const Arrangement& sub, const Arrangement& a) {
    if (!(sub.field() == a.field())) return false;
    return std::all_of(sub.lines().begin(), sub.lines().end(), [&](const Line& l) { return a.contains(l); });
}

std::vector<OrderStep> order_increasing(const Arrangement& a, const Arrangement& b) {
    if (!is_subarrangement(b, a)) throw MembershipError("subarrangement is not contained in the arrangement");
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b.contains(a.line(i))) remaining.push_back(i);

    std::vector<Line> current = b.lines();
    std::vector<OrderStep> steps;
    while (!remaining.empty()) {
        std::size_t best = 0;
        std::int64_t best_count = -1;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            const std::int64_t c = count_on(current, a.line(remaining[k]));
            if (best_count < 0 || c < best_count) {
                best = k;
                best_count = c;
            }
        }
        steps.push_back(OrderStep{remaining[best], best_count});
        current.push_back(a.line(remaining[best]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return steps;
}

std::vector<Line> candidate_external_lines(const Arrangement& a) {
    const Field& f = a.field();
    std::set<Line, LineLess> out;
    auto offer = [&](const Scalar& u, const Scalar& v, const Scalar& w) {
        if (u.is_zero() && v.is_zero()) return;
        Line l = Line::normalize(u, v, w);
        if (!a.contains(l)) out.insert(std::move(l));
    };

    std::vector<std::pair<Scalar, Scalar>> directions;
    for (const auto& pc : a.parallel_classes()) directions.emplace_back(pc.a, pc.b);
    auto known = [&](const Scalar& u, const Scalar& v) {
        return std::any_of(directions.begin(), directions.end(),
                           [&](const auto& d) { return d.first == u && d.second == v; });
    };
    // Fresh direction: first of (1,0), (0,1), (1,1), (1,-1), (1,2), (1,-2), ... not present.
    const std::int64_t limit = f.kind() == FieldKind::prime ? f.modulus() : 64;
    std::optional<std::pair<Scalar, Scalar>> fresh;
    if (!known(Scalar::one(f), Scalar::zero(f))) fresh.emplace(Scalar::one(f), Scalar::zero(f));
    else if (!known(Scalar::zero(f), Scalar::one(f))) fresh.emplace(Scalar::zero(f), Scalar::one(f));
    for (std::int64_t k = 1; !fresh && k <= limit; ++k)
        for (std::int64_t slope : {k, -k})
            if (!fresh && !known(Scalar::one(f), Scalar::from_int(f, slope)))
                fresh.emplace(Scalar::one(f), Scalar::from_int(f, slope));
    if (fresh) directions.push_back(*fresh);

    const auto& pts = a.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Point& p = pts[i].point;
            const Point& q = pts[j].point;
            const Scalar u = q.y - p.y;
            const Scalar v = p.x - q.x;
            offer(u, v, -(u * p.x + v * p.y));
        }

    for (const auto& ip : pts)
        for (const auto& [u, v] : directions) offer(u, v, -(u * ip.point.x + v * ip.point.y));

    for (const auto& [u, v] : directions) {
        for (std::int64_t k = 0; k < limit + static_cast<std::int64_t>(pts.size()) + 1; ++k) {
            const Scalar w = Scalar::from_int(f, k);
            const Line l = Line::normalize(u, v, w);
            if (a.contains(l)) continue;
            const bool hits = std::any_of(pts.begin(), pts.end(), [&](const IncidencePoint& ip) {
                return l.contains(ip.point.x, ip.point.y);
            });
            if (!hits) {
                out.insert(l);
                break;
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Line> plane_lines(const Field& field) {
    if (field.kind() != FieldKind::prime) throw PreconditionError("plane enumeration needs a prime field");
    const std::int64_t p = field.modulus();
    std::vector<Line> out;
    out.reserve(static_cast<std::size_t>(p * p + p));
    const Scalar one = Scalar::one(field);
    const Scalar zero = Scalar::zero(field);
    for (std::int64_t b = 0; b < p; ++b)
        for (std::int64_t c = 0; c < p; ++c) out.push_back(Line::normalize(one, Scalar::from_int(field, b), Scalar::from_int(field, c)));
    for (std::int64_t c = 0; c < p; ++c) out.push_back(Line::normalize(zero, one, Scalar::from_int(field, c)));
    return out;
}

}  // namespace freearr
