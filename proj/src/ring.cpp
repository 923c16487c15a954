#include "twc/ring.hpp"

#include "twc/errors.hpp"

namespace twc {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

// representative of a rational in GF(p); requires p does not divide den
std::uint64_t fp_of(const Rational& a, std::uint64_t p) {
    BigInt q, r;
    BigInt::divrem(a.num(), BigInt(static_cast<long long>(p)), q, r);
    std::int64_t n = r.to_int64();
    std::uint64_t num = n >= 0 ? static_cast<std::uint64_t>(n)
                               : static_cast<std::uint64_t>(n + static_cast<std::int64_t>(p));
    if (a.den().is_one()) return num % p;
    BigInt::divrem(a.den(), BigInt(static_cast<long long>(p)), q, r);
    std::int64_t d = r.to_int64();
    std::uint64_t den = d >= 0 ? static_cast<std::uint64_t>(d)
                               : static_cast<std::uint64_t>(d + static_cast<std::int64_t>(p));
    den %= p;
    if (den == 0) throw StructuralError("scalar has denominator divisible by p");
    return (num % p) * mod_pow(den, p - 2, p) % p;
}

// canonical representative with a fast path for in-range integers
std::uint64_t rep(const Rational& a, std::uint64_t p) {
    if (a.is_integer() && a.num().fits_int64()) {
        long long v = a.num().to_int64();
        if (v >= 0 && v < static_cast<long long>(p)) return static_cast<std::uint64_t>(v);
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += static_cast<long long>(p);
        return static_cast<std::uint64_t>(m);
    }
    return fp_of(a, p);
}

}  // namespace

BaseRing BaseRing::prime_field(std::uint64_t p) {
    if (p >= (1ull << 31)) throw StructuralError("prime field modulus too large");
    if (!is_prime(p)) throw StructuralError("prime field modulus " + std::to_string(p) + " is not prime");
    return BaseRing(RingKind::PrimeField, p);
}

Rational BaseRing::from_int(long long v) const {
    if (kind_ == RingKind::Rationals) return Rational(v);
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return Rational(m);
}

Rational BaseRing::canon(const Rational& a) const {
    if (kind_ == RingKind::Rationals) return a;
    return Rational(static_cast<long long>(fp_of(a, p_)));
}

Rational BaseRing::add(const Rational& a, const Rational& b) const {
    if (kind_ == RingKind::Rationals) return a + b;
    return Rational(static_cast<long long>((rep(a, p_) + rep(b, p_)) % p_));
}

Rational BaseRing::sub(const Rational& a, const Rational& b) const {
    if (kind_ == RingKind::Rationals) return a - b;
    return Rational(static_cast<long long>((rep(a, p_) + p_ - rep(b, p_)) % p_));
}

Rational BaseRing::mul(const Rational& a, const Rational& b) const {
    if (kind_ == RingKind::Rationals) return a * b;
    return Rational(static_cast<long long>((rep(a, p_) * rep(b, p_)) % p_));
}

Rational BaseRing::neg(const Rational& a) const {
    if (kind_ == RingKind::Rationals) return -a;
    std::uint64_t x = rep(a, p_);
    return Rational(static_cast<long long>(x == 0 ? 0 : p_ - x));
}

Rational BaseRing::inv(const Rational& a) const {
    if (a.is_zero()) throw StructuralError("inverse of zero scalar");
    if (kind_ == RingKind::Rationals) return Rational(1) / a;
    return Rational(static_cast<long long>(mod_pow(rep(a, p_), p_ - 2, p_)));
}

Rational BaseRing::parse_scalar(std::string_view s) const {
    Rational v = Rational::parse(s);
    if (kind_ == RingKind::PrimeField) {
        if (!v.is_integer() || v.signum() < 0 ||
            !(v.num() < BigInt(static_cast<long long>(p_)))) {
            throw StructuralError("prime-field scalar \"" + std::string(s) +
                                  "\" is not a canonical representative in [0, p)");
        }
    }
    return v;
}

std::string BaseRing::str() const {
    if (kind_ == RingKind::Rationals) return "Q";
    return "GF(" + std::to_string(p_) + ")";
}

}  // namespace twc
