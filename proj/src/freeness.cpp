#include "freearr/freeness.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <sstream>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

using UniPoly = std::vector<mpq_class>;  // low degree first

void trim(UniPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UniPoly poly_mod(UniPoly a, const UniPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        const mpq_class factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
        trim(a);
    }
    return a;
}

/// Monic gcd over Q.
UniPoly poly_gcd(UniPoly a, UniPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UniPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

UniPoly as_poly(const CharPoly& cp) {
    return {mpq_class(mpz_class(static_cast<long>(cp.b2))), mpq_class(mpz_class(static_cast<long>(-cp.n))), mpq_class(1)};
}

std::string poly_text(const UniPoly& p) {
    if (p.empty()) return "0";
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (sgn(p[i]) == 0) continue;
        std::string c = p[i].get_str();
        std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        std::string term = mono.empty() ? c : (p[i] == 1 ? mono : (p[i] == -1 ? "-" + mono : c + " " + mono));
        if (s.empty()) s = term;
        else s += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    }
    return s;
}

std::string verdict_text(Verdict v) { return v == Verdict::free ? "free" : "not_free"; }

Conclusion as_conclusion(Verdict v) { return v == Verdict::free ? Conclusion::free : Conclusion::not_free; }

std::string pair_text(std::int64_t a, std::int64_t b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string indices_text(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s;
}

/// Compares a concluded entry with the exact decision.
void cross_check(const Arrangement& a, CriterionEntry& e) {
    const FreenessCertificate cert = decide_free(a);
    e.evidence.emplace_back("exact_verdict", verdict_text(cert.verdict));
    if (!e.applicable || e.conclusion == Conclusion::no_conclusion) return;
    if (e.conclusion != as_conclusion(cert.verdict))
        throw InvariantViolation("criterion " + e.name + " concluded " + to_string(e.conclusion) + " but the exact decision is " +
                                 verdict_text(cert.verdict));
}

struct IntegerRoots {
    std::int64_t n;  // low root
    std::int64_t r;  // high - low
};

std::optional<IntegerRoots> integer_roots(const Arrangement& a) {
    const RootPair rp = roots(a.char_poly());
    if (!rp.is_integer()) return std::nullopt;
    return IntegerRoots{rp.int_low(), rp.int_high() - rp.int_low()};
}

/// First member with n_H in targets, if any.
std::optional<std::size_t> member_with_count(const Arrangement& a, std::initializer_list<std::int64_t> targets) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (auto t : targets)
            if (a.count_on_member(i) == t) return i;
    return std::nullopt;
}

CriterionEntry inapplicable(std::string name, std::string reason) {
    CriterionEntry e;
    e.name = std::move(name);
    e.evidence.emplace_back("reason", std::move(reason));
    return e;
}

/// Conclusion of "free iff some member has n_H in {n, n+r}".
void conclude_by_member_scan(const Arrangement& a, const IntegerRoots& ir, CriterionEntry& e) {
    e.applicable = true;
    if (auto h = member_with_count(a, {ir.n, ir.n + ir.r})) {
        e.conclusion = Conclusion::free;
        e.evidence.emplace_back("line", std::to_string(*h));
        e.evidence.emplace_back("n_h", std::to_string(a.count_on_member(*h)));
    } else {
        e.conclusion = Conclusion::not_free;
        e.evidence.emplace_back("line", "none");
    }
}

void require_sub(const Arrangement& a, const Arrangement& sub) {
    if (!is_subarrangement(sub, a)) throw MembershipError("subarrangement is not contained in the arrangement");
}

Verdict resolve_by_addition(const Arrangement& a, std::size_t& depth) {
    if (a.size() <= 2) return Verdict::free;
    const CharPoly& cp = a.char_poly();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t nh = a.count_on_member(i);
        if (cp(nh) != 0) continue;
        const Arrangement smaller = delete_line(a, a.line(i));
        if (smaller.char_poly()(nh) != 0) continue;
        ++depth;
        return resolve_by_addition(smaller, depth);
    }
    return decide_free(a).verdict;
}

}  // namespace

std::string to_string(Conclusion c) {
    switch (c) {
    case Conclusion::free: return "free";
    case Conclusion::not_free: return "not_free";
    case Conclusion::no_conclusion: return "no_conclusion";
    }
    return {};
}

std::string CriterionEntry::get(const std::string& key) const {
    for (const auto& [k, v] : evidence)
        if (k == key) return v;
    return {};
}

FreenessCertificate decide_free(const Arrangement& a, RestrictionTarget target) {
    const Multiarrangement restriction = ziegler_restriction(a, target);
    const ExponentResult er = exponents(restriction);
    FreenessCertificate cert;
    cert.exponents = er.exponents;
    cert.b2 = a.char_poly().b2;
    cert.target = target;
    if (cert.b2 < cert.product())
        throw InvariantViolation("b2 = " + std::to_string(cert.b2) + " below d1 d2 = " + std::to_string(cert.product()) +
                                 " at target " + target.to_string());
    cert.verdict = cert.b2 == cert.product() ? Verdict::free : Verdict::not_free;
    return cert;
}

CriterionEntry criterion_root_incidence(const Arrangement& a, std::span<const Line> externals) {
    const auto ir = integer_roots(a);
    if (!ir) return inapplicable("root_incidence", "roots are not integers");
    CriterionEntry e;
    e.name = "root_incidence";
    e.applicable = true;
    e.evidence.emplace_back("roots", pair_text(ir->n, ir->n + ir->r));
    if (auto h = member_with_count(a, {ir->n, ir->n + ir->r})) {
        e.conclusion = Conclusion::free;
        e.evidence.emplace_back("line", std::to_string(*h));
        e.evidence.emplace_back("n_h", std::to_string(a.count_on_member(*h)));
    } else {
        for (const auto& l : externals) {
            if (a.contains(l)) continue;
            const std::int64_t nl = count_on_line(a, l);
            if (nl == ir->n || nl == ir->n + ir->r) {
                e.conclusion = Conclusion::free;
                e.evidence.emplace_back("external_line", l.to_string());
                e.evidence.emplace_back("n_l", std::to_string(nl));
                break;
            }
        }
    }
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_deletion_pair(const Arrangement& a, std::size_t member) {
    if (member >= a.size()) throw MembershipError("line index " + std::to_string(member) + " out of range");
    const Arrangement smaller = delete_line(a, a.line(member));
    const UniPoly g = poly_gcd(as_poly(a.char_poly()), as_poly(smaller.char_poly()));
    const std::int64_t nh = a.count_on_member(member);

    CriterionEntry e;
    e.name = "deletion_pair";
    e.applicable = true;
    e.evidence.emplace_back("line", std::to_string(member));
    e.evidence.emplace_back("n_h", std::to_string(nh));
    e.evidence.emplace_back("chi", a.char_poly().to_string());
    e.evidence.emplace_back("chi_deleted", smaller.char_poly().to_string());
    e.evidence.emplace_back("gcd", poly_text(g));

    const bool pair_free_exact = decide_free(a).is_free() && decide_free(smaller).is_free();
    if (g.size() >= 2) {
        if (g.size() != 2) throw InvariantViolation("characteristic polynomials of a deletion pair coincide");
        const mpq_class root = -g[0];
        if (root != nh) throw InvariantViolation("common root " + root.get_str() + " differs from n_H = " + std::to_string(nh));
        e.conclusion = Conclusion::free;
        e.evidence.emplace_back("common_root", root.get_str());
        e.evidence.emplace_back("pair_free", "true");
        if (!pair_free_exact) throw InvariantViolation("common root but the deletion pair is not free");
    } else {
        e.evidence.emplace_back("common_root", "none");
        e.evidence.emplace_back("pair_free", "false");
        if (pair_free_exact) throw InvariantViolation("free deletion pair without a common root");
    }
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_addition(const Arrangement& a, std::size_t member) {
    if (member >= a.size()) throw MembershipError("line index " + std::to_string(member) + " out of range");
    const std::int64_t nh = a.count_on_member(member);
    const Arrangement smaller = delete_line(a, a.line(member));
    if (a.char_poly()(nh) != 0 || smaller.char_poly()(nh) != 0)
        return inapplicable("addition", "chi(A, n_H) or chi(A - H, n_H) is nonzero for line " + std::to_string(member));
    CriterionEntry e;
    e.name = "addition";
    e.applicable = true;
    std::size_t depth = 0;
    const Verdict v = resolve_by_addition(smaller, depth);
    e.conclusion = as_conclusion(v);
    e.evidence.emplace_back("line", std::to_string(member));
    e.evidence.emplace_back("n_h", std::to_string(nh));
    e.evidence.emplace_back("recursion_depth", std::to_string(depth + 1));
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_mainc(const Arrangement& a, const Arrangement& sub) {
    require_sub(a, sub);
    // With B = A the equality case of the bound is not excluded; the pentagon
    // is free with no n_H = n.
    if (sub.size() == a.size()) return inapplicable("mainc", "subarrangement must be proper");
    const auto ir = integer_roots(a);
    if (!ir) return inapplicable("mainc", "roots of chi(A) are not integers");
    const RootPair rb = roots(sub.char_poly());
    if (!rb.is_real()) return inapplicable("mainc", "roots of chi(B) are not real");
    const bool alpha_ok = rb.compare_low(mpq_class(mpz_class(static_cast<long>(ir->n)))) <= 0;
    const bool beta_ok = rb.compare_high(mpq_class(mpz_class(static_cast<long>(ir->n - 1)))) >= 0;
    if (!alpha_ok || !beta_ok)
        return inapplicable("mainc", "roots " + rb.to_string() + " of chi(B) outside alpha <= " + std::to_string(ir->n) +
                                         ", beta >= " + std::to_string(ir->n - 1));
    CriterionEntry e;
    e.name = "mainc";
    e.evidence.emplace_back("roots", pair_text(ir->n, ir->n + ir->r));
    e.evidence.emplace_back("sub_roots", rb.to_string());
    conclude_by_member_scan(a, *ir, e);
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_main(const Arrangement& a, const Arrangement& sub) {
    require_sub(a, sub);
    const auto ir = integer_roots(a);
    if (!ir) return inapplicable("main", "roots of chi(A) are not integers");
    const FreenessCertificate sub_cert = decide_free(sub);
    if (!sub_cert.is_free()) return inapplicable("main", "subarrangement is not free");
    const std::int64_t n = ir->n;
    const std::int64_t r = ir->r;
    const std::int64_t e1 = sub_cert.exponents.d1;
    const std::int64_t e2 = sub_cert.exponents.d2;

    CriterionEntry e;
    e.name = "main";
    e.evidence.emplace_back("roots", pair_text(n, n + r));
    e.evidence.emplace_back("sub_exponents", pair_text(e1, e2));

    if (e2 == n - 1 && e1 <= n - 1) {
        const std::int64_t s = n - e1;  // >= 1
        e.applicable = true;
        e.evidence.emplace_back("s", std::to_string(s));
        e.evidence.emplace_back("variant", "intermediate_search");

        // chi(C) = (t-n-u+1)(t-n+s) with u > r+1.
        auto violates = [&](const Arrangement& c) {
            const std::int64_t u = static_cast<std::int64_t>(c.size()) - 2 * n + s + 1;
            return u > r + 1 && c.char_poly().b2 == (n + u - 1) * (n - s);
        };

        const auto steps = order_increasing(a, sub);
        std::vector<Line> chain = sub.lines();
        std::optional<std::size_t> chain_hit;
        if (violates(sub)) chain_hit = 0;
        for (std::size_t i = 0; i < steps.size() && !chain_hit; ++i) {
            chain.push_back(a.line(steps[i].index));
            if (violates(Arrangement(a.field(), chain))) chain_hit = i + 1;
        }
        e.evidence.emplace_back("chain_violation", chain_hit ? "B_" + std::to_string(*chain_hit) : "none");

        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!sub.contains(a.line(i))) outside.push_back(i);

        if (outside.size() <= kExhaustiveSubsetCap) {
            e.evidence.emplace_back("mode", "chain+exhaustive");
            std::optional<std::vector<std::size_t>> hit;
            for (std::uint32_t mask = 0; mask < (1U << outside.size()) && !hit; ++mask) {
                std::vector<Line> lines = sub.lines();
                std::vector<std::size_t> added;
                for (std::size_t k = 0; k < outside.size(); ++k)
                    if (mask & (1U << k)) {
                        lines.push_back(a.line(outside[k]));
                        added.push_back(outside[k]);
                    }
                if (violates(Arrangement(a.field(), std::move(lines)))) hit = added;
            }
            e.evidence.emplace_back("exhaustive_violation", hit ? "B+{" + indices_text(*hit) + "}" : "none");
            e.evidence.emplace_back("chain_agrees", (hit.has_value() == chain_hit.has_value()) ? "true" : "false");
            e.conclusion = hit ? Conclusion::not_free : Conclusion::free;
        } else {
            e.evidence.emplace_back("mode", "chain");
            e.conclusion = chain_hit ? Conclusion::not_free : Conclusion::free;
        }
    } else if (e1 == n - 1 && e2 >= n && e2 <= n + r) {
        e.evidence.emplace_back("s", std::to_string(n - e2));
        e.evidence.emplace_back("variant", "nonpositive_s");
        conclude_by_member_scan(a, *ir, e);
    } else {
        e.evidence.emplace_back("reason", "sub exponents are not (n-s, n-1) with -r <= s");
        return e;
    }
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_subfree(const Arrangement& a, const Arrangement& sub) {
    require_sub(a, sub);
    const RootPair ra = roots(a.char_poly());
    const RootPair rb = roots(sub.char_poly());
    if (!ra.is_integer() || !rb.is_integer()) return inapplicable("subfree", "roots are not integers");
    const std::int64_t a_roots[2] = {ra.int_low(), ra.int_high()};
    const std::int64_t b_roots[2] = {rb.int_low(), rb.int_high()};
    std::optional<std::array<std::int64_t, 3>> abc;
    for (int i = 0; i < 2 && !abc; ++i)
        for (int j = 0; j < 2 && !abc; ++j)
            if (a_roots[i] == b_roots[j]) {
                const std::int64_t shared = a_roots[i];
                const std::int64_t b = b_roots[1 - j];
                const std::int64_t c = a_roots[1 - i];
                if (shared <= b && b <= c) abc = std::array<std::int64_t, 3>{shared, b, c};
            }
    if (!abc) return inapplicable("subfree", "no shared root a with a <= b <= c");
    if (!decide_free(sub).is_free()) return inapplicable("subfree", "subarrangement is not free");
    CriterionEntry e;
    e.name = "subfree";
    e.applicable = true;
    e.conclusion = Conclusion::free;
    e.evidence.emplace_back("abc", "(" + std::to_string((*abc)[0]) + "," + std::to_string((*abc)[1]) + "," + std::to_string((*abc)[2]) + ")");
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_exp_gap(const Arrangement& a) {
    if (a.field().characteristic() != 0) return inapplicable("exp_gap", "positive characteristic");
    const Multiarrangement m = ziegler_restriction(a, RestrictionTarget::infinity());
    if (!is_balanced(m)) return inapplicable("exp_gap", "restriction is not balanced");
    const auto h = static_cast<std::int64_t>(m.size());
    if (h <= 2) return inapplicable("exp_gap", "h <= 2");
    const RootPair rp = roots(a.char_poly());
    // A conjugate pair has ||alpha| - |beta|| = 0, which would make every
    // balanced triangle (h = 3) free.
    if (!rp.is_real()) return inapplicable("exp_gap", "roots are not real");
    const std::int64_t gap2 = rp.discriminant;

    CriterionEntry e;
    e.name = "exp_gap";
    e.applicable = true;
    e.evidence.emplace_back("h", std::to_string(h));
    e.evidence.emplace_back("discriminant", std::to_string(rp.discriminant));
    const ExponentPair ex = exponents(m).exponents;
    if (ex.d2 - ex.d1 > h - 2) throw InvariantViolation("balanced restriction with d2 - d1 > h - 2");
    if (gap2 > (h - 2) * (h - 2)) throw InvariantViolation("balanced arrangement with root gap above h - 2");
    if (gap2 == (h - 2) * (h - 2) || gap2 == (h - 3) * (h - 3)) {
        e.conclusion = Conclusion::free;
        e.evidence.emplace_back("gap", std::to_string(gap2 == (h - 2) * (h - 2) ? h - 2 : h - 3));
    }
    cross_check(a, e);
    return e;
}

CriterionEntry criterion_small_sub(const Arrangement& a, const Arrangement& sub) {
    require_sub(a, sub);
    const auto ir = integer_roots(a);
    if (!ir) return inapplicable("small_sub", "roots of chi(A) are not integers");
    const std::int64_t n = ir->n;
    const std::int64_t r = ir->r;
    const FreenessCertificate cert = decide_free(sub);
    if (!cert.is_free()) return inapplicable("small_sub", "subarrangement is not free");
    const ExponentPair ex = cert.exponents;
    std::string variant;
    if (ex == ExponentPair{n - 2, n - 2} && r >= 1) variant = "n-2,n-2";
    else if (ex == ExponentPair{n - 3, n - 2} && r >= 2) variant = "n-2,n-3";
    else if (ex == ExponentPair{n - 3, n - 3} && r >= 4) variant = "n-3,n-3";
    if (variant.empty())
        return inapplicable("small_sub", "sub exponents " + pair_text(ex.d1, ex.d2) + " with r = " + std::to_string(r) + " match no variant");
    CriterionEntry e;
    e.name = "small_sub";
    e.evidence.emplace_back("variant", variant);
    e.evidence.emplace_back("roots", pair_text(n, n + r));
    conclude_by_member_scan(a, *ir, e);
    cross_check(a, e);
    return e;
}

std::vector<Line> external_test_lines(const Arrangement& a) {
    if (a.field().kind() == FieldKind::prime) {
        std::vector<Line> out;
        for (auto& l : plane_lines(a.field()))
            if (!a.contains(l)) out.push_back(std::move(l));
        return out;
    }
    return candidate_external_lines(a);
}

RootWindowReport verify_root_window(const Arrangement& a) { return verify_root_window(a, external_test_lines(a)); }

RootWindowReport verify_root_window(const Arrangement& a, std::span<const Line> externals) {
    RootWindowReport rep;
    const CharPoly& cp = a.char_poly();
    rep.roots = roots(cp);
    rep.free = decide_free(a).is_free();
    const bool integer_free = rep.free && rep.roots.is_integer();
    const std::int64_t lo = integer_free ? rep.roots.int_low() : 0;
    const std::int64_t hi = integer_free ? rep.roots.int_high() : 0;

    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t nh = a.count_on_member(i);
        ++rep.member_counts[nh];
        if (cp(nh) < 0) rep.violations.push_back("member " + std::to_string(i) + " has chi(n_H = " + std::to_string(nh) + ") < 0");
        if (integer_free && !(nh <= lo || nh == hi))
            rep.violations.push_back("free arrangement with member " + std::to_string(i) + " n_H = " + std::to_string(nh) +
                                     " outside Z<=" + std::to_string(lo) + " and {" + std::to_string(hi) + "}");
    }
    for (const auto& l : externals) {
        if (a.contains(l)) continue;
        const std::int64_t nl = count_on_line(a, l);
        ++rep.external_counts[nl];
        if (cp(nl) < 0) rep.violations.push_back("line " + l.to_string() + " has chi(n_L = " + std::to_string(nl) + ") < 0");
        if (integer_free && !(nl == lo || nl >= hi))
            rep.violations.push_back("free arrangement with external line " + l.to_string() + " n_L = " + std::to_string(nl) +
                                     " outside {" + std::to_string(lo) + "} and Z>=" + std::to_string(hi));
    }
    return rep;
}

}  // namespace freearr
