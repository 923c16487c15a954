#include "twc/bigint.hpp"

#include <algorithm>
#include <cstdlib>

#include "twc/errors.hpp"

namespace twc {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    // avoid UB on LLONG_MIN
    std::uint64_t u = v > 0 ? static_cast<std::uint64_t>(v)
                            : ~static_cast<std::uint64_t>(v) + 1ull;
    while (u) {
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

bool BigInt::is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    std::uint64_t u = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return u <= 0x7fffffffffffffffull;
    return u <= 0x8000000000000000ull;
}

std::int64_t BigInt::to_int64() const {
    std::uint64_t u = 0;
    if (mag_.size() >= 1) u |= mag_[0];
    if (mag_.size() >= 2) u |= static_cast<std::uint64_t>(mag_[1]) << 32;
    return sign_ >= 0 ? static_cast<std::int64_t>(u) : -static_cast<std::int64_t>(u - 1) - 1;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        out[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    out[big.size()] = static_cast<std::uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (d < 0) {
            d += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(d);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] +
                                static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D (base 2^32); u/v are magnitudes, v nonempty, |u| >= |v|.
void BigInt::divrem_mag(const std::vector<std::uint32_t>& u0, const std::vector<std::uint32_t>& v0,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    const std::size_t n = v0.size();
    // single-limb divisor: short division
    if (n == 1) {
        std::uint64_t d = v0[0];
        q.assign(u0.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = u0.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u0[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<std::uint32_t>(rem));
        return;
    }
    const std::size_t m = u0.size() - n;
    // normalize so the top divisor limb has its high bit set
    int s = 0;
    {
        std::uint32_t top = v0[n - 1];
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++s;
        }
    }
    std::vector<std::uint32_t> v(n), u(u0.size() + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = (v0[i] << s);
        if (s && i > 0) v[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(v0[i - 1]) >> (32 - s));
    }
    for (std::size_t i = u0.size(); i-- > 0;) {
        std::uint64_t cur = static_cast<std::uint64_t>(u0[i]) << s;
        u[i] |= static_cast<std::uint32_t>(cur & 0xffffffffu);
        u[i + 1] |= static_cast<std::uint32_t>(cur >> 32);
    }
    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = num / v[n - 1];
        std::uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // multiply and subtract
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u[i + j]) -
                             static_cast<std::int64_t>(p & 0xffffffffu) - borrow;
            if (t < 0) {
                t += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) -
                         static_cast<std::int64_t>(carry) - borrow;
        if (t < 0) {
            // qhat was one too large: add back
            u[j + n] = static_cast<std::uint32_t>(t + static_cast<std::int64_t>(kBase));
            --qhat;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s2 = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<std::uint32_t>(s2 & 0xffffffffu);
                c2 = s2 >> 32;
            }
            u[j + n] = static_cast<std::uint32_t>(u[j + n] + c2);
        } else {
            u[j + n] = static_cast<std::uint32_t>(t);
        }
        q[j] = static_cast<std::uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    // denormalize remainder
    r.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = u[i] >> s;
        if (s && i + 1 < u.size()) r[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(u[i + 1]) << (32 - s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.sign_ = a.sign_;
        out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.sign_ = a.sign_;
            out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            out.sign_ = b.sign_;
            out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = a.sign_ * b.sign_;
    out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    out.trim();
    return out;
}

void BigInt::divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw StructuralError("BigInt: division by zero");
    if (a.sign_ == 0 || cmp_mag(a.mag_, b.mag_) < 0) {
        q = BigInt();
        r = a;
        return;
    }
    std::vector<std::uint32_t> qm, rm;
    divrem_mag(a.mag_, b.mag_, qm, rm);
    q = BigInt();
    r = BigInt();
    if (!qm.empty()) {
        q.sign_ = a.sign_ * b.sign_;
        q.mag_ = std::move(qm);
    }
    if (!rm.empty()) {
        r.sign_ = a.sign_;
        r.mag_ = std::move(rm);
    }
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divrem(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divrem(a, b, q, r);
    return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt q, r;
        divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw StructuralError("BigInt: empty string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw StructuralError("BigInt: sign without digits");
    BigInt out;
    const BigInt chunk_base(1000000000ll);
    std::size_t pos = i;
    // leading chunk may be shorter than 9 digits
    std::size_t first = (s.size() - i) % 9;
    if (first == 0) first = 9;
    while (pos < s.size()) {
        std::size_t len = (pos == i) ? first : 9;
        long long v = 0;
        for (std::size_t k = 0; k < len; ++k) {
            char c = s[pos + k];
            if (c < '0' || c > '9') throw StructuralError("BigInt: bad digit in \"" + std::string(s) + "\"");
            v = v * 10 + (c - '0');
        }
        out = out * chunk_base + BigInt(v);
        pos += len;
    }
    if (neg) out = -out;
    return out;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> mag = mag_;
    std::string out;
    // repeated short division by 10^9
    while (!mag.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = mag.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | mag[i];
            mag[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        for (int k = 0; k < 9; ++k) {
            out.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    if (sign_ < 0) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace twc
