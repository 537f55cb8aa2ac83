#include "freearr/exactalg.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

std::int64_t mod_reduce(std::int64_t value, std::int64_t p) {
    value %= p;
    return value < 0 ? value + p : value;
}

std::int64_t mod_reduce(const mpz_class& value, std::int64_t p) {
    mpz_class r = value % p;
    if (r < 0) r += p;
    return r.get_si();
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t exponent, std::int64_t p) {
    std::int64_t result = 1 % p;
    base = mod_reduce(base, p);
    while (exponent > 0) {
        if (exponent & 1U) result = result * base % p;
        base = base * base % p;
        exponent >>= 1U;
    }
    return result;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

bool is_squarefree(std::int64_t n) {
    if (n == 0) return false;
    if (n < 0) n = -n;
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % (k * k) == 0) return false;
    return true;
}

Field Field::quadratic(std::int64_t d) {
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw FieldError("quadratic field needs a squarefree radicand other than 0 and 1, got " + std::to_string(d));
    return Field(FieldKind::quadratic, d);
}

Field Field::prime(std::int64_t p) {
    if (p >= (std::int64_t{1} << 31) || !is_prime(p))
        throw FieldError("prime field needs a prime below 2^31, got " + std::to_string(p));
    return Field(FieldKind::prime, p);
}

std::string Field::to_string() const {
    switch (kind_) {
    case FieldKind::rationals: return "Q";
    case FieldKind::quadratic: return "Q sqrt " + std::to_string(param_);
    case FieldKind::prime: return "F " + std::to_string(param_);
    }
    return {};
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : field_(Field::rationals()), value_(mpq_class(0)) {}

Scalar Scalar::zero(const Field& field) { return from_int(field, 0); }
Scalar Scalar::one(const Field& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const Field& field, std::int64_t value) {
    switch (field.kind()) {
    case FieldKind::prime: return Scalar(field, mod_reduce(value, field.modulus()));
    case FieldKind::rationals: return Scalar(field, mpq_class(mpz_class(static_cast<long>(value))));
    case FieldKind::quadratic: return Scalar(field, Surd{mpq_class(mpz_class(static_cast<long>(value))), mpq_class(0)});
    }
    throw FieldError("unknown field kind");
}

Scalar Scalar::from_rational(const Field& field, const mpq_class& value) {
    mpq_class q = value;
    q.canonicalize();
    switch (field.kind()) {
    case FieldKind::prime: {
        const std::int64_t p = field.modulus();
        const std::int64_t den = mod_reduce(q.get_den(), p);
        if (den == 0) throw FieldError("denominator " + q.get_den().get_str() + " is not invertible mod " + std::to_string(p));
        return Scalar(field, mod_reduce(q.get_num(), p) * mod_pow(den, static_cast<std::uint64_t>(p - 2), p) % p);
    }
    case FieldKind::rationals: return Scalar(field, q);
    case FieldKind::quadratic: return Scalar(field, Surd{q, mpq_class(0)});
    }
    throw FieldError("unknown field kind");
}

Scalar Scalar::from_surd(const Field& field, const mpq_class& u, const mpq_class& v) {
    if (field.kind() != FieldKind::quadratic) {
        if (v != 0) throw FieldError("sqrt term in field " + field.to_string());
        return from_rational(field, u);
    }
    Surd s{u, v};
    s.u.canonicalize();
    s.v.canonicalize();
    return Scalar(field, std::move(s));
}

bool Scalar::is_zero() const {
    switch (field_.kind()) {
    case FieldKind::prime: return std::get<std::int64_t>(value_) == 0;
    case FieldKind::rationals: return sgn(std::get<mpq_class>(value_)) == 0;
    case FieldKind::quadratic: {
        const auto& s = std::get<Surd>(value_);
        return sgn(s.u) == 0 && sgn(s.v) == 0;
    }
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

mpq_class Scalar::rational_part() const {
    switch (field_.kind()) {
    case FieldKind::prime: return mpq_class(mpz_class(static_cast<long>(std::get<std::int64_t>(value_))));
    case FieldKind::rationals: return std::get<mpq_class>(value_);
    case FieldKind::quadratic: return std::get<Surd>(value_).u;
    }
    return 0;
}

mpq_class Scalar::surd_part() const {
    if (field_.kind() == FieldKind::quadratic) return std::get<Surd>(value_).v;
    return 0;
}

std::int64_t Scalar::residue() const {
    if (field_.kind() != FieldKind::prime) throw FieldError("residue() on a non-prime field");
    return std::get<std::int64_t>(value_);
}

void Scalar::require_same_field(const Scalar& rhs) const {
    if (!(field_ == rhs.field_))
        throw FieldError("mixed-field arithmetic: " + field_.to_string() + " vs " + rhs.field_.to_string());
}

Scalar Scalar::operator-() const {
    switch (field_.kind()) {
    case FieldKind::prime: {
        const auto r = std::get<std::int64_t>(value_);
        return Scalar(field_, r == 0 ? 0 : field_.modulus() - r);
    }
    case FieldKind::rationals: return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
    case FieldKind::quadratic: {
        const auto& s = std::get<Surd>(value_);
        return Scalar(field_, Surd{-s.u, -s.v});
    }
    }
    return *this;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    require_same_field(rhs);
    switch (field_.kind()) {
    case FieldKind::prime: {
        auto& r = std::get<std::int64_t>(value_);
        r = (r + std::get<std::int64_t>(rhs.value_)) % field_.modulus();
        break;
    }
    case FieldKind::rationals: std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_); break;
    case FieldKind::quadratic: {
        auto& s = std::get<Surd>(value_);
        const auto& t = std::get<Surd>(rhs.value_);
        s.u += t.u;
        s.v += t.v;
        break;
    }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    require_same_field(rhs);
    switch (field_.kind()) {
    case FieldKind::prime: {
        auto& r = std::get<std::int64_t>(value_);
        r = r * std::get<std::int64_t>(rhs.value_) % field_.modulus();
        break;
    }
    case FieldKind::rationals: std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_); break;
    case FieldKind::quadratic: {
        auto& s = std::get<Surd>(value_);
        const auto& t = std::get<Surd>(rhs.value_);
        const mpq_class d(mpz_class(static_cast<long>(field_.radicand())));
        mpq_class u = s.u * t.u + d * s.v * t.v;
        mpq_class v = s.u * t.v + s.v * t.u;
        s.u = std::move(u);
        s.v = std::move(v);
        break;
    }
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    switch (field_.kind()) {
    case FieldKind::prime: {
        const std::int64_t p = field_.modulus();
        return Scalar(field_, mod_pow(std::get<std::int64_t>(value_), static_cast<std::uint64_t>(p - 2), p));
    }
    case FieldKind::rationals: return Scalar(field_, mpq_class(1 / std::get<mpq_class>(value_)));
    case FieldKind::quadratic: {
        // (u + v r)^-1 = (u - v r) / (u^2 - d v^2); the norm vanishes only at 0.
        const auto& s = std::get<Surd>(value_);
        const mpq_class d(mpz_class(static_cast<long>(field_.radicand())));
        const mpq_class n = s.u * s.u - d * s.v * s.v;
        if (sgn(n) == 0) throw FieldError("zero norm in quadratic inverse");
        return Scalar(field_, Surd{mpq_class(s.u / n), mpq_class(-s.v / n)});
    }
    }
    return *this;
}

Scalar Scalar::conjugate() const {
    if (field_.kind() != FieldKind::quadratic) return *this;
    const auto& s = std::get<Surd>(value_);
    return Scalar(field_, Surd{s.u, -s.v});
}

Scalar Scalar::norm() const {
    if (field_.kind() != FieldKind::quadratic) return *this;
    return *this * conjugate();
}

Scalar Scalar::pow(std::uint64_t exponent) const {
    Scalar result = one(field_);
    Scalar base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    return canonical_compare(a, b) == 0;
}

int canonical_compare(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) throw FieldError("comparing scalars of different fields");
    switch (a.field_.kind()) {
    case FieldKind::prime: {
        const auto x = std::get<std::int64_t>(a.value_);
        const auto y = std::get<std::int64_t>(b.value_);
        return (x > y) - (x < y);
    }
    case FieldKind::rationals: return cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    case FieldKind::quadratic: {
        const auto& s = std::get<Scalar::Surd>(a.value_);
        const auto& t = std::get<Scalar::Surd>(b.value_);
        const int c = cmp(s.u, t.u);
        if (c != 0) return c < 0 ? -1 : 1;
        const int e = cmp(s.v, t.v);
        return (e > 0) - (e < 0);
    }
    }
    return 0;
}

std::string Scalar::to_string() const {
    switch (field_.kind()) {
    case FieldKind::prime: return std::to_string(std::get<std::int64_t>(value_));
    case FieldKind::rationals: return rational_text(std::get<mpq_class>(value_));
    case FieldKind::quadratic: {
        const auto& s = std::get<Surd>(value_);
        if (sgn(s.v) == 0) return rational_text(s.u);
        std::string surd;
        if (s.v == 1) surd = "r";
        else if (s.v == -1) surd = "-r";
        else surd = rational_text(s.v) + "r";
        if (sgn(s.u) == 0) return surd;
        return rational_text(s.u) + (sgn(s.v) > 0 ? "+" : "") + surd;
    }
    }
    return {};
}

namespace {

// Parses an optionally signed integer or fraction starting at pos; returns
// false (leaving pos) when no digits are present.
bool parse_rational_token(std::string_view text, std::size_t& pos, mpq_class& out, bool& had_digits) {
    std::size_t i = pos;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    const std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    had_digits = i > num_begin;
    mpz_class num = had_digits ? mpz_class(std::string(text.substr(num_begin, i - num_begin))) : mpz_class(1);
    mpz_class den = 1;
    if (had_digits && i < text.size() && text[i] == '/') {
        const std::size_t den_begin = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin) throw std::invalid_argument("missing denominator in '" + std::string(text) + "'");
        den = mpz_class(std::string(text.substr(den_begin, i - den_begin)));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    out = mpq_class(negative ? mpz_class(-num) : num, den);
    out.canonicalize();
    pos = i;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, const Field& field) {
    if (text.empty()) throw std::invalid_argument("empty scalar");
    std::size_t pos = 0;
    mpq_class first;
    bool digits = false;
    parse_rational_token(text, pos, first, digits);
    if (pos == text.size()) {
        if (!digits) throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
        try {
            return Scalar::from_rational(field, first);
        } catch (const FieldError& e) {
            throw std::invalid_argument(e.what());
        }
    }
    auto require_quadratic = [&] {
        if (field.kind() != FieldKind::quadratic)
            throw std::invalid_argument("'r' used outside a quadratic field in '" + std::string(text) + "'");
    };
    if (text[pos] == 'r' && pos + 1 == text.size()) {
        // "r", "-r", "3/4r": the whole token is the sqrt coefficient.
        require_quadratic();
        return Scalar::from_surd(field, 0, first);
    }
    if (!digits || (text[pos] != '+' && text[pos] != '-'))
        throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
    mpq_class second;
    bool second_digits = false;
    parse_rational_token(text, pos, second, second_digits);
    if (pos + 1 != text.size() || text[pos] != 'r')
        throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
    require_quadratic();
    return Scalar::from_surd(field, first, second);
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

void Matrix::set(std::size_t row, std::size_t col, const Scalar& value) {
    if (!(value.field() == field_)) throw FieldError("matrix entry from field " + value.field().to_string());
    data_[row * cols_ + col] = value;
}

void Matrix::append_row(const Vector& row) {
    if (row.size() != cols_) throw PreconditionError("row length does not match column count");
    for (const auto& s : row)
        if (!(s.field() == field_)) throw FieldError("matrix entry from field " + s.field().to_string());
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw PreconditionError("vector length does not match column count");
    Vector out(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

EchelonForm row_reduce(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    auto entry = [&m](std::size_t i, std::size_t j) -> const Scalar& { return m(i, j); };
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && entry(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != row)
            for (std::size_t j = col; j < cols; ++j) {
                Scalar tmp = entry(row, j);
                m.set(row, j, entry(pivot, j));
                m.set(pivot, j, tmp);
            }
        const Scalar inv = entry(row, col).inverse();
        for (std::size_t j = col; j < cols; ++j)
            if (!entry(row, j).is_zero()) m.set(row, j, entry(row, j) * inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || entry(i, col).is_zero()) continue;
            const Scalar factor = entry(i, col);
            for (std::size_t j = col; j < cols; ++j)
                if (!entry(row, j).is_zero()) m.set(i, j, entry(i, j) - factor * entry(row, j));
        }
        pivots.push_back(col);
        ++row;
    }
    return EchelonForm{std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
    const EchelonForm ef = row_reduce(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : ef.pivot_cols) is_pivot[c] = true;

    std::vector<Vector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vector v(cols, Scalar::zero(m.field()));
        v[free_col] = Scalar::one(m.field());
        for (std::size_t r = 0; r < ef.pivot_cols.size(); ++r) v[ef.pivot_cols[r]] = -ef.reduced(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace freearr
