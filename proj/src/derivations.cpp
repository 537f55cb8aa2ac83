#include "freearr/derivations.hpp"

#include <algorithm>
#include <utility>

#include "freearr/errors.hpp"

namespace freearr {

namespace {

std::pair<Scalar, Scalar> normalize_form(const Scalar& a, const Scalar& b) {
    if (a.is_zero() && b.is_zero()) throw PreconditionError("zero linear form");
    if (!a.is_zero()) return {Scalar::one(a.field()), b / a};
    return {Scalar::zero(a.field()), Scalar::one(a.field())};
}

std::string coeff_text(const Scalar& c) {
    std::string s = c.to_string();
    if (s.find_first_of("+-", 1) != std::string::npos) s = "(" + s + ")";
    return s;
}

// Images of the monomials x^(d-j) y^j in coordinates (beta, alpha) adapted to
// alpha = a x + b y: coefficient i of image j is the coefficient of
// alpha^i beta^(d-i). beta is x when b != 0, else y.
std::vector<HomPoly> adapted_monomials(const Scalar& a, const Scalar& b, std::size_t degree) {
    const Field& f = a.field();
    const Scalar zero = Scalar::zero(f);
    const Scalar one = Scalar::one(f);
    HomPoly x_img(f, 1);
    HomPoly y_img(f, 1);
    if (!b.is_zero()) {
        // x = beta, y = (alpha - a beta) / b
        x_img = HomPoly::linear(one, zero);
        const Scalar inv = b.inverse();
        y_img = HomPoly::linear(-(a * inv), inv);
    } else {
        // x = alpha / a, y = beta
        x_img = HomPoly::linear(zero, a.inverse());
        y_img = HomPoly::linear(one, zero);
    }
    std::vector<HomPoly> x_pow{HomPoly(f, 0, {one})};
    std::vector<HomPoly> y_pow{HomPoly(f, 0, {one})};
    for (std::size_t k = 1; k <= degree; ++k) {
        x_pow.push_back(x_pow.back() * x_img);
        y_pow.push_back(y_pow.back() * y_img);
    }
    std::vector<HomPoly> images;
    images.reserve(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) images.push_back(x_pow[degree - j] * y_pow[j]);
    return images;
}

HomPoly to_adapted(const HomPoly& poly, const Scalar& a, const Scalar& b) {
    const auto images = adapted_monomials(a, b, poly.degree());
    HomPoly out(poly.field(), poly.degree());
    for (std::size_t j = 0; j <= poly.degree(); ++j)
        if (!poly.coeff(j).is_zero()) out += poly.coeff(j) * images[j];
    return out;
}

HomDerivation derivation_from_vector(const Field& f, const Vector& v, std::size_t degree) {
    Vector p(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(degree + 1));
    Vector q(v.begin() + static_cast<std::ptrdiff_t>(degree + 1), v.end());
    return HomDerivation{HomPoly(f, degree, std::move(p)), HomPoly(f, degree, std::move(q))};
}

Vector derivation_to_vector(const HomDerivation& theta) {
    Vector v = theta.p.coeffs();
    v.insert(v.end(), theta.q.coeffs().begin(), theta.q.coeffs().end());
    return v;
}

}  // namespace

// --------------------------------------------------------------- HomPoly

HomPoly::HomPoly(const Field& field, std::size_t degree) : field_(field), coeffs_(degree + 1, Scalar::zero(field)) {}

HomPoly::HomPoly(const Field& field, std::size_t degree, Vector coeffs) : field_(field), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != degree + 1) throw PreconditionError("coefficient count does not match degree");
    for (const auto& c : coeffs_)
        if (!(c.field() == field_)) throw FieldError("polynomial coefficient from field " + c.field().to_string());
}

HomPoly HomPoly::linear(const Scalar& a, const Scalar& b) { return HomPoly(a.field(), 1, {a, b}); }

HomPoly HomPoly::monomial(const Field& field, std::size_t degree, std::size_t i) {
    HomPoly p(field, degree);
    p.coeffs_.at(i) = Scalar::one(field);
    return p;
}

bool HomPoly::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

HomPoly& HomPoly::operator+=(const HomPoly& rhs) {
    if (degree() != rhs.degree()) throw PreconditionError("adding homogeneous polynomials of different degree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& rhs) {
    if (degree() != rhs.degree()) throw PreconditionError("subtracting homogeneous polynomials of different degree");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

HomPoly operator*(const HomPoly& l, const HomPoly& r) {
    HomPoly out(l.field_, l.degree() + r.degree());
    for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
        if (l.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < r.coeffs_.size(); ++j)
            if (!r.coeffs_[j].is_zero()) out.coeffs_[i + j] += l.coeffs_[i] * r.coeffs_[j];
    }
    return out;
}

HomPoly operator*(const Scalar& s, const HomPoly& p) {
    HomPoly out = p;
    for (auto& c : out.coeffs_) c *= s;
    return out;
}

HomPoly HomPoly::pow(std::size_t k) const {
    HomPoly out(field_, 0, {Scalar::one(field_)});
    for (std::size_t i = 0; i < k; ++i) out = out * *this;
    return out;
}

bool HomPoly::divisible_by_power(const Scalar& a, const Scalar& b, std::int64_t m) const {
    if (m <= 0) return true;
    const HomPoly adapted = to_adapted(*this, a, b);
    const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(m), degree() + 1);
    for (std::size_t i = 0; i < limit; ++i)
        if (!adapted.coeff(i).is_zero()) return false;
    return true;
}

std::string HomPoly::to_string() const {
    std::string s;
    const std::size_t d = degree();
    for (std::size_t i = 0; i <= d; ++i) {
        const Scalar& c = coeffs_[i];
        if (c.is_zero()) continue;
        std::string mono;
        auto factor = [&mono](const char* var, std::size_t e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += var;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        factor("x", d - i);
        factor("y", i);
        std::string term;
        if (mono.empty()) term = coeff_text(c);
        else if (c.is_one()) term = mono;
        else if ((-c).is_one()) term = "-" + mono;
        else term = coeff_text(c) + "*" + mono;
        if (!s.empty()) s += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
        else s = term;
    }
    return s.empty() ? "0" : s;
}

// --------------------------------------------------------- HomDerivation

HomPoly HomDerivation::apply(const Scalar& a, const Scalar& b) const { return a * p + b * q; }

std::string HomDerivation::to_string() const { return "(" + p.to_string() + ") dx + (" + q.to_string() + ") dy"; }

HomDerivation euler_derivation(const Field& field) {
    return HomDerivation{HomPoly::monomial(field, 1, 0), HomPoly::monomial(field, 1, 1)};
}

HomDerivation power_derivation(const Field& field, std::size_t k) {
    return HomDerivation{HomPoly::monomial(field, k, 0), HomPoly::monomial(field, k, k)};
}

// ------------------------------------------------------ Multiarrangement

Multiarrangement::Multiarrangement(const Field& field, std::vector<Central> centrals) : field_(field) {
    for (auto& c : centrals) {
        if (!(c.a.field() == field_) || !(c.b.field() == field_)) throw FieldError("central form from another field");
        if (c.multiplicity < 1) throw PreconditionError("multiplicity must be at least 1");
        auto [a, b] = normalize_form(c.a, c.b);
        for (const auto& existing : centrals_)
            if (existing.a == a && existing.b == b) throw MembershipError("duplicate central line " + a.to_string() + " " + b.to_string());
        total_ += c.multiplicity;
        centrals_.push_back(Central{std::move(a), std::move(b), c.multiplicity});
    }
}

std::int64_t Multiarrangement::max_multiplicity() const {
    std::int64_t best = 0;
    for (const auto& c : centrals_) best = std::max(best, c.multiplicity);
    return best;
}

Multiarrangement Multiarrangement::with_multiplicities(const std::vector<std::int64_t>& m) const {
    if (m.size() != centrals_.size()) throw PreconditionError("multiplicity vector has the wrong length");
    std::vector<Central> cs = centrals_;
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i].multiplicity = m[i];
    return Multiarrangement(field_, std::move(cs));
}

HomPoly Multiarrangement::defining_polynomial() const {
    HomPoly out(field_, 0, {Scalar::one(field_)});
    for (const auto& c : centrals_) out = out * HomPoly::linear(c.a, c.b).pow(static_cast<std::size_t>(c.multiplicity));
    return out;
}

std::string Multiarrangement::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < centrals_.size(); ++i) {
        if (i) s += ", ";
        s += "(" + centrals_[i].a.to_string() + "," + centrals_[i].b.to_string() + ")^" + std::to_string(centrals_[i].multiplicity);
    }
    return s + "}";
}

std::string RestrictionTarget::to_string() const {
    return at_infinity() ? "infinity" : "member:" + std::to_string(*member);
}

Multiarrangement ziegler_restriction(const Arrangement& a, RestrictionTarget target) {
    const Field& f = a.field();
    // Cone hyperplanes (a, b, c) for a x + b y + c z, with z = 0 last.
    std::vector<Vector> cone;
    for (const auto& l : a.lines()) cone.push_back({l.a(), l.b(), l.c()});
    cone.push_back({Scalar::zero(f), Scalar::zero(f), Scalar::one(f)});
    std::size_t h0 = cone.size() - 1;
    if (target.member) {
        if (*target.member >= a.size()) throw MembershipError("restriction target member:" + std::to_string(*target.member) + " out of range");
        h0 = *target.member;
    }

    Matrix form(f, 0, 3);
    form.append_row(cone[h0]);
    const auto basis = kernel_basis(form);  // coordinates on H0

    std::vector<Central> centrals;
    for (std::size_t i = 0; i < cone.size(); ++i) {
        if (i == h0) continue;
        Scalar u = Scalar::zero(f);
        Scalar v = Scalar::zero(f);
        for (std::size_t k = 0; k < 3; ++k) {
            u += cone[i][k] * basis[0][k];
            v += cone[i][k] * basis[1][k];
        }
        auto [na, nb] = normalize_form(u, v);
        auto it = std::find_if(centrals.begin(), centrals.end(), [&](const Central& c) { return c.a == na && c.b == nb; });
        if (it == centrals.end()) centrals.push_back(Central{na, nb, 1});
        else ++it->multiplicity;
    }
    return Multiarrangement(f, std::move(centrals));
}

Matrix graded_constraints(const Multiarrangement& m, std::size_t degree) {
    const Field& f = m.field();
    const std::size_t n = degree + 1;
    Matrix out(f, 0, 2 * n);
    for (const auto& c : m.centrals()) {
        const auto images = adapted_monomials(c.a, c.b, degree);
        const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(c.multiplicity), n);
        for (std::size_t i = 0; i < limit; ++i) {
            Vector row(2 * n, Scalar::zero(f));
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar& e = images[j].coeff(i);
                if (e.is_zero()) continue;
                row[j] = c.a * e;
                row[n + j] = c.b * e;
            }
            out.append_row(row);
        }
    }
    return out;
}

std::size_t graded_kernel_dim(const Multiarrangement& m, std::size_t degree) {
    return 2 * (degree + 1) - rank(graded_constraints(m, degree));
}

std::vector<HomDerivation> graded_basis(const Multiarrangement& m, std::size_t degree) {
    std::vector<HomDerivation> out;
    for (const auto& v : kernel_basis(graded_constraints(m, degree))) out.push_back(derivation_from_vector(m.field(), v, degree));
    return out;
}

bool in_module(const HomDerivation& theta, const Multiarrangement& m) {
    return std::all_of(m.centrals().begin(), m.centrals().end(), [&](const Central& c) {
        return theta.apply(c.a, c.b).divisible_by_power(c.a, c.b, c.multiplicity);
    });
}

ExponentResult exponents(const Multiarrangement& m) {
    const Field& f = m.field();
    const std::int64_t total = m.total();
    std::optional<std::size_t> d1;
    std::vector<HomDerivation> low_basis;
    for (std::size_t d = 0; d <= static_cast<std::size_t>(total / 2); ++d) {
        low_basis = graded_basis(m, d);
        if (!low_basis.empty()) {
            d1 = d;
            break;
        }
    }
    if (!d1) throw InvariantViolation("no derivation found up to degree |m|/2 for " + m.to_string());

    ExponentResult result{ExponentPair{}, low_basis.front(), low_basis.front()};
    result.exponents.d1 = static_cast<std::int64_t>(*d1);
    if (low_basis.size() >= 2) {
        if (2 * result.exponents.d1 != total)
            throw InvariantViolation("two independent derivations in degree " + std::to_string(*d1) + " but |m| = " + std::to_string(total));
        result.exponents.d2 = result.exponents.d1;
        result.theta2 = low_basis[1];
    } else {
        const std::size_t d2 = static_cast<std::size_t>(total) - *d1;
        if (d2 == *d1) throw InvariantViolation("one-dimensional degree " + std::to_string(*d1) + " with |m| = 2 d1");
        result.exponents.d2 = static_cast<std::int64_t>(d2);
        // Span of f * theta1 over monomials f of degree d2 - d1.
        const std::size_t shift = d2 - *d1;
        Matrix multiples(f, 0, 2 * (d2 + 1));
        for (std::size_t i = 0; i <= shift; ++i) {
            const HomPoly mono = HomPoly::monomial(f, shift, i);
            multiples.append_row(derivation_to_vector(HomDerivation{mono * result.theta1.p, mono * result.theta1.q}));
        }
        const std::size_t base_rank = rank(multiples);
        bool found = false;
        for (const auto& v : kernel_basis(graded_constraints(m, d2))) {
            Matrix trial = multiples;
            trial.append_row(v);
            if (rank(trial) > base_rank) {
                result.theta2 = derivation_from_vector(f, v, d2);
                found = true;
                break;
            }
        }
        if (!found) throw InvariantViolation("no derivation of degree " + std::to_string(d2) + " independent of theta1 for " + m.to_string());
    }
    if (!saito_verify(result.theta1, result.theta2, m))
        throw InvariantViolation("exponent witnesses fail Saito's criterion for " + m.to_string());
    return result;
}

bool saito_verify(const HomDerivation& theta1, const HomDerivation& theta2, const Multiarrangement& m) {
    if (static_cast<std::int64_t>(theta1.degree() + theta2.degree()) != m.total())
        throw PreconditionError("derivation degrees do not sum to |m|");
    if (!in_module(theta1, m) || !in_module(theta2, m)) return false;
    const HomPoly det = theta1.p * theta2.q - theta2.p * theta1.q;
    const HomPoly q = m.defining_polynomial();
    std::size_t k = 0;
    while (q.coeff(k).is_zero()) ++k;
    const Scalar c = det.coeff(k) / q.coeff(k);
    return !c.is_zero() && det == c * q;
}

HomDerivation euler_witness(const Multiarrangement& m) {
    const Field& f = m.field();
    HomPoly factor(f, 0, {Scalar::one(f)});
    for (const auto& c : m.centrals())
        factor = factor * HomPoly::linear(c.a, c.b).pow(static_cast<std::size_t>(c.multiplicity - 1));
    const HomDerivation euler = euler_derivation(f);
    HomDerivation theta{factor * euler.p, factor * euler.q};
    if (!in_module(theta, m)) throw InvariantViolation("Euler witness is not in D(M) for " + m.to_string());
    return theta;
}

bool is_balanced(const Multiarrangement& m) { return 2 * m.max_multiplicity() <= m.total(); }

}  // namespace freearr
