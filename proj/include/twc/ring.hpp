#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "twc/rational.hpp"

namespace twc {

enum class RingKind { Rationals, PrimeField };

/// Coefficient field: the rationals or GF(p). Scalars are carried as Rational
/// values; for GF(p) they are kept canonical (integer representative in [0, p),
/// denominator 1). Every operation is exact.
class BaseRing {
public:
    static BaseRing rationals() { return BaseRing(RingKind::Rationals, 0); }
    static BaseRing prime_field(std::uint64_t p);  // validates primality, p < 2^31

    RingKind kind() const { return kind_; }
    std::uint64_t p() const { return p_; }

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(long long v) const;

    Rational add(const Rational& a, const Rational& b) const;
    Rational sub(const Rational& a, const Rational& b) const;
    Rational mul(const Rational& a, const Rational& b) const;
    Rational neg(const Rational& a) const;
    Rational inv(const Rational& a) const;  // throws on zero
    Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

    /// Canonicalize an arbitrary rational into this ring (reduces mod p; throws
    /// if the denominator is divisible by p).
    Rational canon(const Rational& a) const;

    Rational parse_scalar(std::string_view s) const;
    std::string scalar_str(const Rational& a) const { return a.str(); }

    std::string str() const;

    friend bool operator==(const BaseRing& a, const BaseRing& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator!=(const BaseRing& a, const BaseRing& b) { return !(a == b); }

private:
    BaseRing(RingKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
    RingKind kind_;
    std::uint64_t p_;
};

}  // namespace twc
