#include <doctest.h>

#include <random>

#include "freearr/errors.hpp"
#include "freearr/exactalg.hpp"

using namespace freearr;

namespace {

Matrix from_rows(const Field& f, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
    Matrix m(f, 0, cols);
    for (const auto& r : rows) {
        Vector v;
        for (auto x : r) v.push_back(Scalar::from_int(f, x));
        m.append_row(v);
    }
    return m;
}

bool is_zero_vector(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// |{v in F_p^n : M v = 0}| by enumeration.
std::int64_t brute_kernel_size(const Matrix& m) {
    const std::int64_t p = m.field().modulus();
    std::int64_t total = 1;
    for (std::size_t i = 0; i < m.cols(); ++i) total *= p;
    std::int64_t count = 0;
    for (std::int64_t code = 0; code < total; ++code) {
        Vector v;
        std::int64_t c = code;
        for (std::size_t i = 0; i < m.cols(); ++i, c /= p) v.push_back(Scalar::from_int(m.field(), c % p));
        if (is_zero_vector(m.apply(v))) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("field descriptors") {
    CHECK(Field::rationals().characteristic() == 0);
    CHECK(Field::quadratic(5).characteristic() == 0);
    CHECK(Field::prime(7).characteristic() == 7);
    CHECK(Field::quadratic(-1).radicand() == -1);
    CHECK_THROWS_AS(Field::quadratic(1), FieldError);
    CHECK_THROWS_AS(Field::quadratic(0), FieldError);
    CHECK_THROWS_AS(Field::quadratic(8), FieldError);
    CHECK_THROWS_AS(Field::prime(9), FieldError);
    CHECK_THROWS_AS(Field::prime(1), FieldError);
    CHECK(Field::quadratic(5).to_string() == "Q sqrt 5");
    CHECK(Field::prime(3).to_string() == "F 3");
}

TEST_CASE("rationals are kept in lowest terms") {
    const Field q = Field::rationals();
    const Scalar x = parse_scalar("-6/4", q);
    CHECK(x.to_string() == "-3/2");
    CHECK((x * parse_scalar("2/3", q)).to_string() == "-1");
    CHECK((x + x.inverse()).to_string() == "-13/6");
    CHECK_THROWS_AS(Scalar::zero(q).inverse(), FieldError);
}

TEST_CASE("quadratic arithmetic") {
    const Field f = Field::quadratic(5);
    const Scalar a = parse_scalar("2+3/4r", f);
    CHECK(a.rational_part() == 2);
    CHECK(a.surd_part() == mpq_class(3, 4));
    // (u + v r)(u - v r) = u^2 - d v^2
    CHECK(a * a.conjugate() == Scalar::from_rational(f, mpq_class(4) - mpq_class(5 * 9, 16)));
    CHECK(a.norm() == a * a.conjugate());
    CHECK((a * a.inverse()).is_one());
    const Scalar r = parse_scalar("r", f);
    CHECK((r * r) == Scalar::from_int(f, 5));
    CHECK(parse_scalar("-r", f).to_string() == "-r");
    CHECK(parse_scalar("1/2-r", f).to_string() == "1/2-r");
    CHECK(parse_scalar("3/4r", f).to_string() == "3/4r");
    CHECK_THROWS_AS(parse_scalar("r", Field::rationals()), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("2+", f), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1/0", f), std::invalid_argument);
}

TEST_CASE("quadratic text round trip") {
    const Field f = Field::quadratic(-3);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int i = 0; i < 300; ++i) {
        const int den1 = d(rng), den2 = d(rng);
        const mpq_class u(d(rng), den1 == 0 ? 1 : std::abs(den1));
        const mpq_class v(d(rng), den2 == 0 ? 1 : std::abs(den2));
        const Scalar x = Scalar::from_surd(f, u, v);
        CHECK(parse_scalar(x.to_string(), f) == x);
        if (!x.is_zero()) CHECK((x * x.inverse()).is_one());
    }
}

TEST_CASE("prime field inversion matches Fermat for p <= 97") {
    for (std::int64_t p = 2; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        const Field f = Field::prime(p);
        for (std::int64_t a = 1; a < p; ++a) {
            const Scalar x = Scalar::from_int(f, a);
            REQUIRE(x.inverse() == x.pow(static_cast<std::uint64_t>(p - 2)));
        }
    }
}

TEST_CASE("prime field residues") {
    const Field f = Field::prime(7);
    CHECK(Scalar::from_int(f, -1).residue() == 6);
    CHECK(parse_scalar("5/3", f).residue() == 4);  // 3 * 4 = 12 = 5
    CHECK(parse_scalar("10", f).residue() == 3);
    CHECK_THROWS_AS(parse_scalar("1/7", f), std::invalid_argument);
}

TEST_CASE("mixed fields are rejected") {
    const Scalar a = Scalar::one(Field::rationals());
    const Scalar b = Scalar::one(Field::prime(5));
    CHECK_THROWS_AS(a + b, FieldError);
    Matrix m(Field::rationals(), 1, 1);
    CHECK_THROWS_AS(m.set(0, 0, b), FieldError);
}

TEST_CASE("kernel and rank examples") {
    const Field q = Field::rationals();
    const Matrix empty(q, 0, 3);
    const auto k0 = kernel_basis(empty);
    REQUIRE(k0.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(k0[i][j] == Scalar::from_int(q, i == j ? 1 : 0));

    const Matrix id = from_rows(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(kernel_basis(id).empty());
    CHECK(rank(id) == 3);
    CHECK(rank(Matrix(q, 2, 3)) == 0);
    CHECK(rank(from_rows(q, {{1, 2}, {2, 4}}, 2)) == 1);
    CHECK(rank(Matrix(q, 0, 0)) == 0);
    CHECK(kernel_basis(Matrix(q, 0, 0)).empty());

    const Field f3 = Field::prime(3);
    const auto k = kernel_basis(from_rows(f3, {{1, 1}}, 2));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0].residue() == 2);
    CHECK(k[0][1].residue() == 1);
}

TEST_CASE("kernel basis: M v = 0 and rank + nullity = cols (random)") {
    std::mt19937_64 rng(20241015);
    std::uniform_int_distribution<int> dim(0, 6), entry(-3, 3);
    const Field fields[] = {Field::rationals(), Field::quadratic(2), Field::prime(5)};
    for (int iter = 0; iter < 600; ++iter) {
        const Field& f = fields[iter % 3];
        const std::size_t rows = dim(rng), cols = dim(rng);
        Matrix m(f, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Scalar v = Scalar::from_int(f, entry(rng) * (iter % 4 == 0 ? 0 : 1));
                if (f.kind() == FieldKind::quadratic) v += Scalar::from_surd(f, 0, entry(rng));
                m.set(i, j, v);
            }
        const auto kb = kernel_basis(m);
        REQUIRE(rank(m) + kb.size() == cols);
        for (const auto& v : kb) REQUIRE(is_zero_vector(m.apply(v)));
        // Basis vectors are independent.
        Matrix stacked(f, 0, cols);
        for (const auto& v : kb) stacked.append_row(v);
        REQUIRE(rank(stacked) == kb.size());
    }
}

TEST_CASE("kernel size over F_p agrees with enumeration") {
    std::mt19937_64 rng(7);
    for (std::int64_t p : {2, 3, 5}) {
        const Field f = Field::prime(p);
        std::uniform_int_distribution<std::int64_t> entry(0, p - 1);
        std::uniform_int_distribution<int> dim(0, 4);
        for (int iter = 0; iter < 60; ++iter) {
            const std::size_t rows = dim(rng), cols = dim(rng);
            Matrix m(f, rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar::from_int(f, entry(rng)));
            std::int64_t expected = 1;
            for (std::size_t i = 0; i < kernel_basis(m).size(); ++i) expected *= p;
            REQUIRE(brute_kernel_size(m) == expected);
        }
    }
}
