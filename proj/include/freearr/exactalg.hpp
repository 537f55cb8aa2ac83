#ifndef FREEARR_EXACTALG_HPP
#define FREEARR_EXACTALG_HPP

// Exact scalars over Q, Q(sqrt d) and F_p, and dense exact linear algebra.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace freearr {

enum class FieldKind { rationals, quadratic, prime };

/// Descriptor of the coefficient field. Cheap to copy and compare.
class Field {
public:
    static Field rationals() { return Field(FieldKind::rationals, 0); }
    /// Q(sqrt d); d must be squarefree and not 0 or 1.
    static Field quadratic(std::int64_t d);
    /// F_p; p must be a prime below 2^31.
    static Field prime(std::int64_t p);

    FieldKind kind() const noexcept { return kind_; }
    /// d for Q(sqrt d), otherwise 0.
    std::int64_t radicand() const noexcept { return kind_ == FieldKind::quadratic ? param_ : 0; }
    /// p for F_p, otherwise 0.
    std::int64_t modulus() const noexcept { return kind_ == FieldKind::prime ? param_ : 0; }
    std::int64_t characteristic() const noexcept { return modulus(); }

    /// Header syntax used by the file formats: "Q", "Q sqrt 5", "F 7".
    std::string to_string() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(FieldKind kind, std::int64_t param) : kind_(kind), param_(param) {}

    FieldKind kind_;
    std::int64_t param_;
};

bool is_prime(std::int64_t n);
bool is_squarefree(std::int64_t n);

/// An element of a Field. Rationals are kept in lowest terms with positive
/// denominator; residues live in [0, p).
class Scalar {
public:
    /// Rational zero.
    Scalar();

    static Scalar zero(const Field& field);
    static Scalar one(const Field& field);
    static Scalar from_int(const Field& field, std::int64_t value);
    static Scalar from_rational(const Field& field, const mpq_class& value);
    /// u + v sqrt(d). Requires a quadratic field unless v == 0.
    static Scalar from_surd(const Field& field, const mpq_class& u, const mpq_class& v);

    const Field& field() const noexcept { return field_; }

    bool is_zero() const;
    bool is_one() const;

    /// Rational part u (Q and Q(sqrt d)); the residue as a rational for F_p.
    mpq_class rational_part() const;
    /// Coefficient v of sqrt(d); zero outside quadratic fields.
    mpq_class surd_part() const;
    /// Residue in [0, p). Only meaningful over F_p.
    std::int64_t residue() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    /// Multiplicative inverse; throws FieldError on zero.
    Scalar inverse() const;
    /// u - v sqrt(d) over Q(sqrt d); identity elsewhere.
    Scalar conjugate() const;
    /// u^2 - d v^2 over Q(sqrt d); the element itself elsewhere.
    Scalar norm() const;

    Scalar pow(std::uint64_t exponent) const;

    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Text form accepted by parse_scalar.
    std::string to_string() const;

private:
    struct Surd {
        mpq_class u;
        mpq_class v;
    };
    using Storage = std::variant<std::int64_t, mpq_class, Surd>;

    Scalar(const Field& field, Storage value) : field_(field), value_(std::move(value)) {}
    void require_same_field(const Scalar& rhs) const;

    Field field_;
    Storage value_;

    friend int canonical_compare(const Scalar& a, const Scalar& b);
};

/// Total order used only for keying containers; it is not a field ordering.
int canonical_compare(const Scalar& a, const Scalar& b);

struct ScalarLess {
    bool operator()(const Scalar& a, const Scalar& b) const { return canonical_compare(a, b) < 0; }
};

/// Parses "-3", "5/7", "2+3/4r", "-r", "1/2-r" (r = sqrt d of the field).
/// Throws std::invalid_argument with a message on malformed input.
Scalar parse_scalar(std::string_view text, const Field& field);

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over one field.
class Matrix {
public:
    Matrix(const Field& field, std::size_t rows, std::size_t cols);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Scalar& operator()(std::size_t row, std::size_t col) const { return data_[row * cols_ + col]; }
    /// Throws FieldError when value belongs to a different field.
    void set(std::size_t row, std::size_t col, const Scalar& value);

    /// Appends a row; its length must equal cols().
    void append_row(const Vector& row);

    Vector apply(const Vector& v) const;

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form, pivoting on the first nonzero entry of each column.
struct EchelonForm {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

EchelonForm row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the right kernel {v : Mv = 0}: one vector per free column, with a 1
/// in that column, 0 in the other free columns. Ordered by free column.
std::vector<Vector> kernel_basis(const Matrix& m);

}  // namespace freearr

#endif
