#ifndef FREEARR_TESTS_LEMMA_CHECKS_HPP
#define FREEARR_TESTS_LEMMA_CHECKS_HPP

#include <random>
#include <string>
#include <vector>

#include "freearr/derivations.hpp"

namespace testsupport {

using namespace freearr;

/// Exponent identities and bounds for one multiarrangement; returns the
/// violated ones. Draws from rng to pick the perturbed multiplicities.
inline std::vector<std::string> multiarr_lemma_violations(const Multiarrangement& m, std::mt19937_64& rng) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what + " on " + m.to_string());
    };
    std::uniform_int_distribution<std::size_t> pick(0, 100);

    const ExponentResult er = exponents(m);
    const auto [d1, d2] = er.exponents;
    const std::int64_t total = m.total();
    const auto n = static_cast<std::int64_t>(m.size());
    check(d1 <= d2 && d1 + d2 == total, "d1 <= d2, d1 + d2 = |m|");
    check(saito_verify(er.theta1, er.theta2, m), "saito");

    bool profile = true;
    for (std::int64_t d = 0; d <= total; ++d)
        profile = profile && static_cast<std::int64_t>(graded_kernel_dim(m, static_cast<std::size_t>(d))) ==
                                 std::max<std::int64_t>(0, d - d1 + 1) + std::max<std::int64_t>(0, d - d2 + 1);
    check(profile, "dimension profile");

    const HomDerivation w = euler_witness(m);
    check(static_cast<std::int64_t>(w.degree()) == total - n + 1 && in_module(w, m), "euler witness");

    if (total >= 2 * n - 2) check(d1 >= n - 1, "|m| >= 2h - 2 implies d1 >= h - 1");
    if (total <= 2 * n - 2) check(er.exponents == ExponentPair{total - n + 1, n - 1}, "|m| <= 2h - 2 closed form");
    // Real alpha < h - 1 < beta with alpha + beta = |m| confines both exponents.
    for (std::int64_t twice_alpha = -2; twice_alpha < total; ++twice_alpha) {
        const std::int64_t twice_beta = 2 * total - twice_alpha;
        if (twice_alpha < 2 * (n - 1) && 2 * (n - 1) < twice_beta)
            check(twice_alpha < 2 * d1 && 2 * d2 < twice_beta, "alpha < d1 <= d2 < beta");
    }

    if (!is_balanced(m)) {
        const std::int64_t big = m.max_multiplicity();
        check(er.exponents == ExponentPair{total - big, big}, "unbalanced closed form");
    } else if (m.field().characteristic() == 0 && n > 2) {
        check(d2 - d1 <= n - 2, "balanced gap <= h - 2");
    }

    std::vector<std::int64_t> mult;
    for (const auto& c : m.centrals()) mult.push_back(c.multiplicity);
    const std::size_t k = pick(rng) % mult.size();
    mult[k] += 1;
    const ExponentPair up = exponents(m.with_multiplicities(mult)).exponents;
    check(up == ExponentPair{d1 + 1, d2} || up == ExponentPair{d1, d2 + 1}, "increment moves one exponent by 1");

    for (auto& x : mult) x += static_cast<std::int64_t>(pick(rng) % 2);
    const ExponentPair bigger = exponents(m.with_multiplicities(mult)).exponents;
    check(bigger.d1 >= d1 && bigger.d2 >= d2, "monotone in m");
    return bad;
}

}  // namespace testsupport

#endif
