#include "freearr/analysis.hpp"

#include <algorithm>
#include <functional>

#include "freearr/derivations.hpp"
#include "freearr/errors.hpp"
#include "freearr/fqscan.hpp"

namespace freearr {

namespace {

using SubCriterion = CriterionEntry (*)(const Arrangement&, const Arrangement&);

CriterionEntry first_applicable(const Arrangement& a, const std::vector<Arrangement>& subs, SubCriterion fn) {
    std::optional<CriterionEntry> first;
    for (const auto& sub : subs) {
        CriterionEntry e = fn(a, sub);
        std::string lines;
        for (const auto& l : sub.lines()) lines += (lines.empty() ? "" : ",") + std::to_string(*a.index_of(l));
        e.evidence.insert(e.evidence.begin(), {"sub", "{" + lines + "}"});
        if (e.applicable) return e;
        if (!first) first = std::move(e);
    }
    return *first;
}

}  // namespace

std::vector<Arrangement> candidate_subarrangements(const Arrangement& a) {
    std::vector<Arrangement> out;
    out.emplace_back(a.field());
    for (std::size_t i = 0; i < a.size() && out.size() < 2; ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (!a.line(i).is_parallel_to(a.line(j))) {
                const std::size_t idx[] = {i, j};
                out.push_back(a.subarrangement(idx));
                break;
            }
    std::vector<const IncidencePoint*> pts;
    for (const auto& p : a.points()) pts.push_back(&p);
    std::stable_sort(pts.begin(), pts.end(), [](auto* l, auto* r) { return l->multiplicity() > r->multiplicity(); });
    for (const auto* p : pts)
        if (p->multiplicity() > 2) out.push_back(a.subarrangement(p->incident));
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(delete_line(a, a.line(i)));
    return out;
}

CriterionReport all_criteria(const Arrangement& a, const std::optional<Arrangement>& sub) {
    CriterionReport rep;
    const std::vector<Line> externals = external_test_lines(a);
    rep.entries.push_back(criterion_root_incidence(a, externals));

    if (!a.empty()) {
        std::optional<CriterionEntry> pair;
        for (std::size_t i = 0; i < a.size() && !pair; ++i) {
            CriterionEntry e = criterion_deletion_pair(a, i);
            if (e.conclusion == Conclusion::free) pair = std::move(e);
        }
        rep.entries.push_back(pair ? *pair : criterion_deletion_pair(a, 0));

        std::optional<CriterionEntry> add;
        for (std::size_t i = 0; i < a.size() && !add; ++i) {
            CriterionEntry e = criterion_addition(a, i);
            if (e.applicable) add = std::move(e);
        }
        rep.entries.push_back(add ? *add : criterion_addition(a, 0));
    }

    const std::vector<Arrangement> subs = sub ? std::vector<Arrangement>{*sub} : candidate_subarrangements(a);
    rep.entries.push_back(first_applicable(a, subs, criterion_mainc));
    rep.entries.push_back(first_applicable(a, subs, criterion_main));
    rep.entries.push_back(first_applicable(a, subs, criterion_subfree));
    rep.entries.push_back(criterion_exp_gap(a));
    rep.entries.push_back(first_applicable(a, subs, criterion_small_sub));

    if (a.field().kind() == FieldKind::prime && a.field().modulus() <= kDefaultPrimeCap) {
        rep.entries.push_back(criterion_qroot(a));
        rep.entries.push_back(criterion_q1root(a));
    }
    return rep;
}

VerifyReport verify_suite(const Arrangement& a, const CharPoly& claimed) {
    VerifyReport rep;
    auto check = [&rep](const std::string& name, const std::function<void(std::vector<std::string>&)>& body) {
        rep.checked.push_back(name);
        try {
            body(rep.violations);
        } catch (const InvariantViolation& e) {
            rep.violations.push_back(name + ": " + e.what());
        }
    };

    check("size", [&](auto& v) {
        if (claimed.n != static_cast<std::int64_t>(a.size()))
            v.push_back("size: chi has t coefficient " + std::to_string(claimed.n) + " but |A| = " + std::to_string(a.size()));
    });

    check("deletion_restriction", [&](auto& v) {
        // chi(A) = chi(A - H) - (t - n_H)
        for (std::size_t i = 0; i < a.size(); ++i) {
            const CharPoly del = delete_line(a, a.line(i)).char_poly();
            if (claimed.b2 != del.b2 + a.count_on_member(i))
                v.push_back("deletion_restriction: line " + std::to_string(i) + " gives b2 = " + std::to_string(del.b2 + a.count_on_member(i)) +
                            ", claimed " + std::to_string(claimed.b2));
        }
    });

    check("member_window", [&](auto& v) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (claimed(a.count_on_member(i)) < 0)
                v.push_back("member_window: chi(n_H) < 0 for line " + std::to_string(i));
    });

    std::optional<FreenessCertificate> at_infinity;
    check("yoshinaga", [&](auto& v) {
        for (std::size_t t = 0; t <= a.size(); ++t) {
            const RestrictionTarget target = t == a.size() ? RestrictionTarget::infinity() : RestrictionTarget::member_line(t);
            const ExponentResult er = exponents(ziegler_restriction(a, target));
            const std::int64_t prod = er.exponents.d1 * er.exponents.d2;
            if (claimed.b2 < prod)
                v.push_back("yoshinaga: b2 = " + std::to_string(claimed.b2) + " < d1 d2 = " + std::to_string(prod) + " at " + target.to_string());
        }
        at_infinity = decide_free(a);
    });

    check("factorization", [&](auto& v) {
        if (!at_infinity || !at_infinity->is_free()) return;
        const auto [d1, d2] = at_infinity->exponents;
        if (claimed != CharPoly{d1 + d2, d1 * d2})
            v.push_back("factorization: free with exp (" + std::to_string(d1) + "," + std::to_string(d2) + ") but chi = " + claimed.to_string());
    });

    check("target_independence", [&](auto& v) {
        if (!at_infinity) return;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (decide_free(a, RestrictionTarget::member_line(i)).verdict != at_infinity->verdict)
                v.push_back("target_independence: member " + std::to_string(i) + " disagrees with infinity");
    });

    check("saito", [&](auto& v) {
        for (std::size_t t = 0; t <= a.size(); ++t) {
            const RestrictionTarget target = t == a.size() ? RestrictionTarget::infinity() : RestrictionTarget::member_line(t);
            const Multiarrangement m = ziegler_restriction(a, target);
            const ExponentResult er = exponents(m);
            if (!saito_verify(er.theta1, er.theta2, m)) v.push_back("saito: witnesses fail at " + target.to_string());
        }
    });

    check("root_window", [&](auto& v) {
        const RootWindowReport rw = verify_root_window(a);
        for (const auto& s : rw.violations) v.push_back("root_window: " + s);
        if (claimed == a.char_poly()) return;
        for (const auto& l : external_test_lines(a))
            if (claimed(count_on_line(a, l)) < 0) {
                v.push_back("root_window: chi(n_L) < 0 for line " + l.to_string());
                break;
            }
    });

    check("criteria", [&](auto&) { (void)all_criteria(a); });

    if (a.field().kind() == FieldKind::prime && a.field().modulus() <= kDefaultPrimeCap) {
        check("complement_count", [&](auto& v) {
            const auto n = static_cast<std::int64_t>(complement_points(a).size());
            if (n != claimed(a.field().modulus()))
                v.push_back("complement_count: " + std::to_string(n) + " points, chi(p) = " + std::to_string(claimed(a.field().modulus())));
        });
        check("finite_multiarr", [&](auto& v) {
            const FiniteMultiarrReport fm = finite_multiarr_props(ziegler_restriction(a, RestrictionTarget::infinity()));
            for (const auto& s : fm.violations) v.push_back("finite_multiarr: " + s);
        });
    }
    return rep;
}

}  // namespace freearr
