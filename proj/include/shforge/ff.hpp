#ifndef SHFORGE_FF_HPP
#define SHFORGE_FF_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace shforge {

/// Deterministic Miller-Rabin with a witness set valid for all n < 2^64.
bool is_prime(std::uint64_t n);

/// A prime field GF(p). Validated once at construction, then shared freely
/// by value; all element values are canonical representatives in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const noexcept { return p_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t neg(std::uint64_t a) const noexcept;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    /// Multiplicative inverse; zero input throws std::domain_error.
    std::uint64_t inv(std::uint64_t a) const;

    bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

private:
    std::uint64_t p_;
};

/// A field element paired with its field. Mixed-field arithmetic throws
/// std::domain_error.
struct FieldElement {
    std::uint64_t value;
    PrimeField field;

    FieldElement(std::uint64_t v, const PrimeField& f) : value(v % f.modulus()), field(f) {}

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const;
};

/// a^{-1}; throws std::domain_error on zero.
FieldElement ff_inv(const FieldElement& a);

/// Univariate polynomial over a prime field, coefficients lowest degree
/// first. Canonical form trims trailing zero coefficients, so the zero
/// polynomial has an empty coefficient vector and degree() == -1 (the
/// sentinel standing in for degree -infinity).
class Polynomial {
public:
    explicit Polynomial(const PrimeField& f) : field_(f) {}
    Polynomial(const PrimeField& f, std::vector<std::uint64_t> coeffs);
    Polynomial(const PrimeField& f, std::initializer_list<std::uint64_t> coeffs);

    static Polynomial zero(const PrimeField& f) { return Polynomial(f); }
    static Polynomial one(const PrimeField& f) { return Polynomial(f, {1}); }
    /// The monomial c * x^d.
    static Polynomial monomial(const PrimeField& f, std::uint64_t c, int d);

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const;

    /// Horner evaluation at a raw field value.
    std::uint64_t eval(std::uint64_t alpha) const;

    std::string to_string() const;

private:
    PrimeField field_;
    std::vector<std::uint64_t> coeffs_;
    void trim();
};

/// Horner evaluation; throws std::domain_error when alpha belongs to a
/// different field than f.
FieldElement poly_eval(const Polynomial& f, const FieldElement& alpha);

/// prod_{i in X} (x - alphas[i]); X holds 0-based indices into alphas.
/// Empty X yields the constant polynomial 1 (empty product).
Polynomial annihilator(const PrimeField& field, std::span<const std::uint64_t> alphas,
                       std::span<const int> X);

/// Remainder of f modulo g; g must be nonzero (std::domain_error otherwise).
Polynomial poly_mod(const Polynomial& f, const Polynomial& g);

/// True iff g | f. g == 0 throws std::domain_error; f == 0 divides by
/// everything nonzero.
bool divides(const Polynomial& g, const Polynomial& f);

/// (k1,k2,k3)-independence of p1,p2,p3 inside the degree-< k polynomial
/// space: no coefficient tuple (q1,q2,q3) with deg(qi) < ki other than the
/// all-zero one satisfies q1*p1 + q2*p2 + q3*p3 == 0. Decided by exhaustive
/// enumeration of all q^(k1+k2+k3) tuples; intended for desk-scale
/// parameters. Preconditions (each ki >= 1, k1+k2+k3 <= k,
/// ki <= k - deg(pi)) violated -> std::invalid_argument; enumeration larger
/// than `budget` tuples -> ResourceError.
bool independence_check(const Polynomial& p1, const Polynomial& p2, const Polynomial& p3,
                        int k1, int k2, int k3, int k,
                        std::uint64_t budget = 200'000'000);

}  // namespace shforge

#endif
