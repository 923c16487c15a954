#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace twc {

/// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
/// Magnitude is little-endian with no trailing zero limbs; zero has sign 0 and
/// an empty magnitude. Everything here is exact; no implicit narrowing.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view s);
    std::string to_string() const;

    int signum() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const;

    bool fits_int64() const;
    std::int64_t to_int64() const;  // precondition: fits_int64()

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    /// Truncated division: q = trunc(a/b), r = a - q*b (r carries a's sign).
    static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b);

    /// gcd(|a|, |b|) >= 0
    static BigInt gcd(BigInt a, BigInt b);

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // precondition: a >= b as magnitudes
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divrem_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

}  // namespace twc
