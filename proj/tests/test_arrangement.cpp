#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "freearr/arrangement.hpp"
#include "freearr/errors.hpp"
#include "support.hpp"

using namespace freearr;
using namespace testsupport;

namespace {

// Independent incidence oracles: Cramer's rule and linear scans only.

std::optional<std::pair<Scalar, Scalar>> cramer(const Line& l, const Line& r) {
    const Scalar det = l.a() * r.b() - r.a() * l.b();
    if (det.is_zero()) return std::nullopt;
    return std::make_pair((l.b() * r.c() - r.b() * l.c()) / det, (r.a() * l.c() - l.a() * r.c()) / det);
}

std::int64_t brute_b2(const Arrangement& a) {
    std::vector<std::pair<Scalar, Scalar>> pts;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (auto p = cramer(a.line(i), a.line(j)); p && std::find(pts.begin(), pts.end(), *p) == pts.end()) pts.push_back(*p);
    std::int64_t b2 = 0;
    for (const auto& [x, y] : pts) {
        std::int64_t m = 0;
        for (const auto& l : a.lines()) m += l.contains(x, y) ? 1 : 0;
        b2 += m - 1;
    }
    return b2;
}

std::int64_t brute_count(const std::vector<Line>& lines, const Line& l) {
    std::vector<std::pair<Scalar, Scalar>> pts;
    for (const auto& h : lines) {
        if (h == l) continue;
        if (auto p = cramer(l, h); p && std::find(pts.begin(), pts.end(), *p) == pts.end()) pts.push_back(*p);
    }
    return static_cast<std::int64_t>(pts.size());
}

std::vector<std::int64_t> brute_greedy(const Arrangement& a, const Arrangement& b) {
    std::vector<Line> current = b.lines();
    std::vector<Line> rest;
    for (const auto& l : a.lines())
        if (!b.contains(l)) rest.push_back(l);
    std::vector<std::int64_t> counts;
    while (!rest.empty()) {
        std::size_t best = 0;
        std::int64_t best_count = brute_count(current, rest[0]);
        for (std::size_t i = 1; i < rest.size(); ++i)
            if (const auto c = brute_count(current, rest[i]); c < best_count) {
                best = i;
                best_count = c;
            }
        counts.push_back(best_count);
        current.push_back(rest[best]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return counts;
}

}  // namespace

TEST_CASE("line normalization") {
    const Field q = Field::rationals();
    const Line l = line(q, 2, 0, 4);
    CHECK(l.to_string() == "1 0 2");
    CHECK(line(q, 0, 3, -3).to_string() == "0 1 -1");
    CHECK(Line::normalize(l.a(), l.b(), l.c()) == l);
    CHECK_THROWS_AS(line(q, 0, 0, 1), PreconditionError);
    CHECK(line(q, -2, 4, 6) == line(q, 1, -2, -3));
}

TEST_CASE("intersection points") {
    const Field q = Field::rationals();
    for (std::int64_t n = 2; n <= 8; ++n) {
        std::vector<Line> lines{line(q, 0, 1, 0)};
        for (std::int64_t k = 0; k + 1 < n; ++k) lines.push_back(line(q, 1, k, 0));
        const Arrangement a(q, lines);
        REQUIRE(a.points().size() == 1);
        CHECK(a.points()[0].multiplicity() == static_cast<std::size_t>(n));
    }
    const Arrangement tri = arr(q, {{1, 0, 0}, {0, 1, 0}, {1, 1, -1}});
    CHECK(tri.points().size() == 3);
    for (const auto& p : tri.points()) CHECK(p.multiplicity() == 2);
    CHECK(load_fixture("grid12.arr").char_poly().b2 == 35);
}

TEST_CASE("characteristic polynomial examples") {
    const Field q = Field::rationals();
    for (std::int64_t n = 3; n <= 8; ++n) {
        const Arrangement a = load_fixture("pencil_" + std::to_string(n) + ".arr");
        CHECK(a.char_poly() == CharPoly{n, n - 1});
    }
    CHECK(load_fixture("sqrt2_slopes_rational.arr").char_poly() == CharPoly{8, 13});
    CHECK(load_fixture("sqrt2_slopes.arr").char_poly() == CharPoly{8, 13});
    CHECK(arr(q, {{1, 0, 0}, {1, 0, 1}, {1, 0, 2}}).char_poly() == CharPoly{3, 0});
    CHECK(Arrangement(q).char_poly() == CharPoly{0, 0});
    CHECK(arr(q, {{1, 1, 1}}).char_poly() == CharPoly{1, 0});
    CHECK(load_fixture("grid12.arr").char_poly().to_string() == "t^2 - 12 t + 35");
}

TEST_CASE("roots") {
    const RootPair r1 = roots({8, 13});
    CHECK(r1.kind == RootKind::real_irrational);
    CHECK(r1.low.to_string() == "4 - sqrt(3)");
    CHECK(r1.high.to_string() == "4 + sqrt(3)");
    CHECK(r1.compare_low(mpq_class(2)) > 0);
    CHECK(r1.compare_low(mpq_class(3)) < 0);
    CHECK(r1.compare_high(mpq_class(5)) > 0);
    CHECK(r1.compare_high(mpq_class(6)) < 0);
    const RootPair r2 = roots({12, 35});
    CHECK(r2.is_integer());
    CHECK(r2.int_low() == 5);
    CHECK(r2.int_high() == 7);
    const RootPair r3 = roots({4, 5});
    CHECK(r3.kind == RootKind::complex_conjugate);
    CHECK_FALSE(r3.is_real());
    CHECK_THROWS_AS(r3.int_low(), PreconditionError);
    CHECK(roots({0, 0}).int_low() == 0);
}

TEST_CASE("roots: sum and product (all classifications)") {
    for (std::int64_t n = 0; n <= 20; ++n)
        for (std::int64_t b2 = 0; b2 <= n * (n - 1) / 2 + 5; ++b2) {
            const RootPair rp = roots({n, b2});
            const auto& lo = rp.low;
            const auto& hi = rp.high;
            REQUIRE(lo.radicand == hi.radicand);
            REQUIRE(lo.center + hi.center == n);
            REQUIRE(lo.coeff + hi.coeff == 0);
            REQUIRE(lo.center * hi.center + lo.coeff * hi.coeff * lo.radicand == b2);
            const std::int64_t d = n * n - 4 * b2;
            const auto sq = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(std::max<std::int64_t>(d, 0)))));
            if (d < 0) REQUIRE(rp.kind == RootKind::complex_conjugate);
            else if (sq * sq == d) REQUIRE(rp.kind == RootKind::two_integer);
            else REQUIRE(rp.kind == RootKind::real_irrational);
        }
}

TEST_CASE("count_on_line examples") {
    const Arrangement pent = load_fixture("pentagon.arr");
    for (std::size_t i = 0; i < pent.size(); ++i) CHECK(pent.count_on_member(i) == 4);
    const Arrangement ex = load_fixture("grid12.arr");
    for (std::size_t i = 0; i < ex.size(); ++i) CHECK((ex.count_on_member(i) == 3 || ex.count_on_member(i) == 5));
    const Arrangement pencil = load_fixture("pencil_5.arr");
    const Field q = Field::rationals();
    CHECK(count_on_line(pencil, line(q, 1, 7, 0)) == 1);
    CHECK(count_on_line(pencil, line(q, 1, 7, 1)) == 5);
}

TEST_CASE("delete and add") {
    const Arrangement a = load_fixture("grid12.arr");
    const Line h = a.line(3);
    const Arrangement d = delete_line(a, h);
    CHECK(d.size() == a.size() - 1);
    CHECK(add_line(d, h).same_lines(a));
    CHECK_THROWS_AS(delete_line(d, h), MembershipError);
    CHECK_THROWS_AS(add_line(a, h), MembershipError);
    CHECK_THROWS_AS(Arrangement(a.field(), {h, h}), MembershipError);
    CHECK_THROWS_AS(Arrangement(Field::prime(5), {h}), FieldError);
}

TEST_CASE("order_increasing examples") {
    const Field q = Field::rationals();
    const Arrangement p3 = load_fixture("pencil_3.arr");
    CHECK(order_increasing(p3, p3).empty());
    std::vector<std::int64_t> counts;
    for (const auto& s : order_increasing(p3, Arrangement(q))) counts.push_back(s.count);
    CHECK(counts == std::vector<std::int64_t>{0, 1, 1});

    const Arrangement p7 = load_fixture("pencil_7.arr");
    const Arrangement a = add_line(p7, line(q, 1, 7, -1));
    const auto steps = order_increasing(a, p7);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].count == 7);
    CHECK_THROWS_AS(order_increasing(p7, a), MembershipError);
}

TEST_CASE("incidence data matches the brute-force oracle (random)") {
    std::mt19937_64 rng(1);
    const Field fields[] = {Field::rationals(), Field::prime(5), Field::prime(7), Field::prime(2)};
    for (int iter = 0; iter < 1000; ++iter) {
        const Field& f = fields[iter % 4];
        const Arrangement a = random_arrangement(rng, f, 10);
        const CharPoly cp = a.char_poly();
        REQUIRE(cp.n == static_cast<std::int64_t>(a.size()));
        REQUIRE(cp.b2 == brute_b2(a));
        REQUIRE(cp.b2 >= 0);
        REQUIRE(cp.b2 <= cp.n * (cp.n - 1) / 2);
        // Needs two crossing lines: two parallels give t^2 - 2t.
        if (a.parallel_classes().size() >= 2) REQUIRE(cp(1) >= 0);

        bool generic = true;
        for (const auto& p : a.points()) generic = generic && p.multiplicity() == 2;
        generic = generic && a.parallel_classes().size() == a.size();
        REQUIRE((cp.b2 == cp.n * (cp.n - 1) / 2) == generic);

        for (std::size_t i = 0; i < a.size(); ++i) {
            REQUIRE(a.count_on_member(i) == brute_count(a.lines(), a.line(i)));
            REQUIRE(count_on_line(a, a.line(i)) == a.count_on_member(i));
            // chi(A) = chi(A - H) - (t - n_H)
            const CharPoly del = delete_line(a, a.line(i)).char_poly();
            for (std::int64_t t : {std::int64_t{0}, std::int64_t{1}, cp.n})
                REQUIRE(cp(t) == del(t) - (t - a.count_on_member(i)));
        }
        for (const auto& p : a.points())
            for (std::size_t i = 0; i < a.size(); ++i) {
                const bool listed = std::binary_search(p.incident.begin(), p.incident.end(), i);
                REQUIRE(listed == a.line(i).contains(p.point.x, p.point.y));
            }
    }
}

TEST_CASE("order_increasing agrees with a greedy simulation (random)") {
    std::mt19937_64 rng(2);
    const Field fields[] = {Field::rationals(), Field::prime(5)};
    std::bernoulli_distribution keep(0.4);
    for (int iter = 0; iter < 1000; ++iter) {
        const Arrangement a = random_arrangement(rng, fields[iter % 2], 9);
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (keep(rng)) idx.push_back(i);
        const Arrangement b = a.subarrangement(idx);
        const auto steps = order_increasing(a, b);
        std::vector<std::int64_t> counts;
        for (const auto& s : steps) counts.push_back(s.count);
        REQUIRE(std::is_sorted(counts.begin(), counts.end()));
        REQUIRE(counts == brute_greedy(a, b));
    }
}

TEST_CASE("candidate external lines exclude members and realize pencil values") {
    for (std::int64_t n = 3; n <= 8; ++n) {
        const Arrangement a = load_fixture("pencil_" + std::to_string(n) + ".arr");
        std::set<std::int64_t> seen;
        for (const auto& l : candidate_external_lines(a)) {
            CHECK_FALSE(a.contains(l));
            seen.insert(count_on_line(a, l));
        }
        CHECK(seen == std::set<std::int64_t>{1, n - 1, n});
    }
}

TEST_CASE("plane lines") {
    for (std::int64_t p : {2, 3, 5, 7}) {
        const auto lines = plane_lines(Field::prime(p));
        CHECK(static_cast<std::int64_t>(lines.size()) == p * p + p);
        CHECK(std::set<Line, LineLess>(lines.begin(), lines.end()).size() == lines.size());
    }
    CHECK_THROWS_AS(plane_lines(Field::rationals()), PreconditionError);
}
