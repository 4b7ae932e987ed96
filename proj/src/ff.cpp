#include "shforge/ff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "shforge/util.hpp"

namespace shforge {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Witness set covering all 64-bit integers (Sorenson & Webster).
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;  // a, b < p <= 2^63 would be needed for no-overflow; use conditional form
    if (s >= p_ || s < a) s -= p_;
    return s;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
}

std::uint64_t PrimeField::neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const noexcept { return mulmod_u64(a, b, p_); }

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept { return powmod_u64(a, e, p_); }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return powmod_u64(a % p_, p_ - 2, p_);
}

namespace {
void require_same_field(const PrimeField& a, const PrimeField& b) {
    if (!(a == b))
        throw std::domain_error("field mismatch: GF(" + std::to_string(a.modulus()) + ") vs GF(" +
                                std::to_string(b.modulus()) + ")");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(field, o.field);
    return FieldElement(field.add(value, o.value), field);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(field, o.field);
    return FieldElement(field.sub(value, o.value), field);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(field, o.field);
    return FieldElement(field.mul(value, o.value), field);
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_field(field, o.field);
    return value == o.value;
}

FieldElement ff_inv(const FieldElement& a) { return FieldElement(a.field.inv(a.value), a.field); }

Polynomial::Polynomial(const PrimeField& f, std::vector<std::uint64_t> coeffs)
    : field_(f), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= field_.modulus();
    trim();
}

Polynomial::Polynomial(const PrimeField& f, std::initializer_list<std::uint64_t> coeffs)
    : Polynomial(f, std::vector<std::uint64_t>(coeffs)) {}

Polynomial Polynomial::monomial(const PrimeField& f, std::uint64_t c, int d) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(d) + 1, 0);
    v.back() = c % f.modulus();
    return Polynomial(f, std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    std::vector<std::uint64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.add(coeff(i), o.coeff(i));
    return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    std::vector<std::uint64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.sub(coeff(i), o.coeff(i));
    return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    if (is_zero() || o.is_zero()) return Polynomial(field_);
    std::vector<std::uint64_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] = field_.add(out[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
    return Polynomial(field_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    return coeffs_ == o.coeffs_;
}

std::uint64_t Polynomial::eval(std::uint64_t alpha) const {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, alpha), coeffs_[i]);
    return acc;
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || coeffs_[i] != 1) os << coeffs_[i];
        if (i == 1) os << (coeffs_[i] != 1 ? "*x" : "x");
        if (i > 1) os << (coeffs_[i] != 1 ? "*x^" : "x^") << i;
    }
    return os.str();
}

FieldElement poly_eval(const Polynomial& f, const FieldElement& alpha) {
    require_same_field(f.field(), alpha.field);
    return FieldElement(f.eval(alpha.value), f.field());
}

Polynomial annihilator(const PrimeField& field, std::span<const std::uint64_t> alphas,
                       std::span<const int> X) {
    Polynomial acc = Polynomial::one(field);
    for (int i : X) {
        if (i < 0 || static_cast<std::size_t>(i) >= alphas.size())
            throw std::invalid_argument("annihilator: index " + std::to_string(i) + " out of range");
        acc = acc * Polynomial(field, {field.neg(alphas[static_cast<std::size_t>(i)] % field.modulus()), 1});
    }
    return acc;
}

Polynomial poly_mod(const Polynomial& f, const Polynomial& g) {
    require_same_field(f.field(), g.field());
    if (g.is_zero()) throw std::domain_error("poly_mod: division by the zero polynomial");
    const PrimeField& F = f.field();
    std::vector<std::uint64_t> rem(f.coefficients());
    std::uint64_t lead_inv = F.inv(g.coefficients().back());
    int dg = g.degree();
    while (static_cast<int>(rem.size()) - 1 >= dg && !rem.empty()) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        std::uint64_t factor = F.mul(rem.back(), lead_inv);
        std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(dg);
        for (int i = 0; i <= dg; ++i) {
            std::size_t idx = shift + static_cast<std::size_t>(i);
            rem[idx] = F.sub(rem[idx], F.mul(factor, g.coeff(static_cast<std::size_t>(i))));
        }
        rem.pop_back();
    }
    return Polynomial(F, std::move(rem));
}

bool divides(const Polynomial& g, const Polynomial& f) { return poly_mod(f, g).is_zero(); }

bool independence_check(const Polynomial& p1, const Polynomial& p2, const Polynomial& p3,
                        int k1, int k2, int k3, int k, std::uint64_t budget) {
    const PrimeField& F = p1.field();
    require_same_field(F, p2.field());
    require_same_field(F, p3.field());
    const Polynomial* ps[3] = {&p1, &p2, &p3};
    int ks[3] = {k1, k2, k3};
    for (int i = 0; i < 3; ++i) {
        if (ks[i] < 1) throw std::invalid_argument("independence_check: degree budgets must be >= 1");
        if (ks[i] > k - ps[i]->degree())
            throw std::invalid_argument("independence_check: k" + std::to_string(i + 1) +
                                        " exceeds k - deg(p" + std::to_string(i + 1) + ")");
    }
    if (k1 + k2 + k3 > k) throw std::invalid_argument("independence_check: k1+k2+k3 exceeds k");

    const std::uint64_t q = F.modulus();
    const int total = k1 + k2 + k3;
    std::uint64_t tuples = 1;
    for (int i = 0; i < total; ++i) {
        if (tuples > budget / q + 1) throw ResourceError("independence_check: q^(k1+k2+k3) exceeds budget");
        tuples *= q;
    }
    if (tuples > budget) throw ResourceError("independence_check: q^(k1+k2+k3) exceeds budget");

    // Odometer over all coefficient tuples (q1, q2, q3), skipping all-zero.
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(total), 0);
    auto combo_is_zero = [&]() {
        Polynomial sum(F);
        int off = 0;
        for (int i = 0; i < 3; ++i) {
            std::vector<std::uint64_t> qc(digits.begin() + off, digits.begin() + off + ks[i]);
            sum = sum + Polynomial(F, std::move(qc)) * (*ps[i]);
            off += ks[i];
        }
        return sum.is_zero();
    };
    for (std::uint64_t it = 1; it < tuples; ++it) {
        int pos = 0;
        while (digits[static_cast<std::size_t>(pos)] == q - 1) {
            digits[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        ++digits[static_cast<std::size_t>(pos)];
        if (combo_is_zero()) return false;
    }
    return true;
}

}  // namespace shforge
