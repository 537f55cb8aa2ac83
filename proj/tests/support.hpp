#ifndef FREEARR_TESTS_SUPPORT_HPP
#define FREEARR_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "freearr/arrangement.hpp"
#include "freearr/derivations.hpp"
#include "freearr/io.hpp"

namespace testsupport {

using namespace freearr;

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(FREEARR_FIXTURE_DIR) / name; }

inline Arrangement load_fixture(const std::string& name) { return load_arrangement(fixture(name)); }

inline Scalar s(const Field& f, std::int64_t v) { return Scalar::from_int(f, v); }

inline Line line(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c) { return Line::normalize(s(f, a), s(f, b), s(f, c)); }

inline Arrangement arr(const Field& f, std::initializer_list<std::array<std::int64_t, 3>> triples) {
    std::vector<Line> lines;
    for (const auto& t : triples) lines.push_back(line(f, t[0], t[1], t[2]));
    return Arrangement(f, std::move(lines));
}

/// Random arrangement with small integer coefficients (many concurrencies and
/// parallels) over Q, or uniform distinct lines over F_p.
inline Arrangement random_arrangement(std::mt19937_64& rng, const Field& f, std::size_t max_lines) {
    std::uniform_int_distribution<std::size_t> size_dist(0, max_lines);
    const std::size_t n = size_dist(rng);
    std::vector<Line> lines;
    if (f.kind() == FieldKind::prime) {
        std::vector<Line> all = plane_lines(f);
        std::shuffle(all.begin(), all.end(), rng);
        all.erase(all.begin() + static_cast<std::ptrdiff_t>(std::min(n, all.size())), all.end());
        return Arrangement(f, std::move(all));
    }
    std::uniform_int_distribution<int> coef(-2, 2);
    int guard = 0;
    while (lines.size() < n && guard++ < 1000) {
        const int a = coef(rng), b = coef(rng), c = coef(rng);
        if (a == 0 && b == 0) continue;
        Line l = line(f, a, b, c);
        if (std::find(lines.begin(), lines.end(), l) == lines.end()) lines.push_back(std::move(l));
    }
    return Arrangement(f, std::move(lines));
}

inline Multiarrangement marr(const Field& f, std::initializer_list<std::array<std::int64_t, 3>> centrals) {
    std::vector<Central> cs;
    for (const auto& c : centrals) cs.push_back({s(f, c[0]), s(f, c[1]), c[2]});
    return Multiarrangement(f, std::move(cs));
}

/// Random multiarrangement: distinct directions (1, k) or (0, 1), |m| <= max_total.
inline Multiarrangement random_marr(std::mt19937_64& rng, const Field& f, std::int64_t max_total, std::size_t max_centrals) {
    std::vector<std::pair<std::int64_t, std::int64_t>> dirs{{0, 1}};
    const std::int64_t span = f.kind() == FieldKind::prime ? f.modulus() : 9;
    for (std::int64_t k = 0; k < span; ++k) dirs.push_back({1, k - (f.kind() == FieldKind::prime ? 0 : 4)});
    std::shuffle(dirs.begin(), dirs.end(), rng);
    std::uniform_int_distribution<std::size_t> hd(1, std::min(max_centrals, dirs.size()));
    const std::size_t h = hd(rng);
    std::vector<std::int64_t> m(h, 1);
    std::int64_t total = static_cast<std::int64_t>(h);
    std::uniform_int_distribution<std::int64_t> extra_d(0, std::max<std::int64_t>(0, max_total - total));
    std::uniform_int_distribution<std::size_t> pick(0, h - 1);
    for (std::int64_t e = extra_d(rng); e > 0; --e) ++m[pick(rng)];
    std::vector<Central> cs;
    for (std::size_t i = 0; i < h; ++i) cs.push_back({s(f, dirs[i].first), s(f, dirs[i].second), m[i]});
    return Multiarrangement(f, std::move(cs));
}

}  // namespace testsupport

#endif
