#include "mp/bigint.hpp"

#include <cassert>
#include <cmath>

#include "mp/newton.hpp"

namespace mp {

namespace lb = limbs;

BigInt::BigInt(std::int64_t v) : sign_(0) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    mag_ = {static_cast<lb::Limb>(m), static_cast<lb::Limb>(m >> 32)};
    lb::trim(mag_);
}

BigInt BigInt::from_limbs(int sign, lb::Vec mag) {
    BigInt r;
    lb::trim(mag);
    if (sign == 0 || mag.empty()) return r;
    r.sign_ = sign < 0 ? -1 : 1;
    r.mag_ = std::move(mag);
    return r;
}

bool BigInt::fits_int64() const {
    if (is_zero()) return true;
    if (mag_.size() > 2) return false;
    std::uint64_t m = mag_[0];
    if (mag_.size() == 2) m |= static_cast<std::uint64_t>(mag_[1]) << 32;
    return sign_ > 0 ? m <= 0x7fffffffffffffffull : m <= 0x8000000000000000ull;
}

std::int64_t BigInt::to_int64() const {
    assert(fits_int64());
    if (is_zero()) return 0;
    std::uint64_t m = mag_[0];
    if (mag_.size() == 2) m |= static_cast<std::uint64_t>(mag_[1]) << 32;
    return sign_ > 0 ? static_cast<std::int64_t>(m) : -static_cast<std::int64_t>(m);
}

BigFloat BigInt::to_bigfloat() const {
    if (is_zero()) return BigFloat();
    return BigFloat::from_limbs(sign_, mag_, 0);
}

double BigInt::log2_approx() const {
    if (is_zero()) return -1e300;
    std::size_t n = mag_.size();
    std::size_t lo = n > 2 ? n - 2 : 0;
    double top = 0.0;
    for (std::size_t i = n; i-- > lo;)
        top = top * 4294967296.0 + mag_[i];
    return std::log2(top) + static_cast<double>(lo) * lb::kLimbBits;
}

BigInt neg(const BigInt& a) {
    return BigInt::from_limbs(-a.sgn(), a.mag());
}

int cmp(const BigInt& a, const BigInt& b) {
    if (a.sgn() != b.sgn()) return a.sgn() < b.sgn() ? -1 : 1;
    int m = lb::compare(a.mag(), b.mag());
    return a.sgn() < 0 ? -m : m;
}

BigInt add(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.sgn() == b.sgn())
        return BigInt::from_limbs(a.sgn(), lb::add(a.mag(), b.mag()));
    int c = lb::compare(a.mag(), b.mag());
    if (c == 0) return BigInt();
    if (c > 0) return BigInt::from_limbs(a.sgn(), lb::sub(a.mag(), b.mag()));
    return BigInt::from_limbs(b.sgn(), lb::sub(b.mag(), a.mag()));
}

BigInt sub(const BigInt& a, const BigInt& b) { return add(a, neg(b)); }

BigInt mul(const BigInt& a, const BigInt& b, lb::WorkCounter* work) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return BigInt::from_limbs(a.sgn() * b.sgn(), lb::mul(a.mag(), b.mag(), work));
}

BigInt mul_word(const BigInt& a, std::int64_t w) {
    if (a.is_zero() || w == 0) return BigInt();
    if (w <= -(std::int64_t{1} << 32) || w >= (std::int64_t{1} << 32))
        throw domain_error("BigInt mul_word: multiplier exceeds one word");
    std::uint32_t m = static_cast<std::uint32_t>(w < 0 ? -w : w);
    return BigInt::from_limbs(w < 0 ? -a.sgn() : a.sgn(), lb::mul_word(a.mag(), m));
}

BigInt shift_left(const BigInt& a, std::int64_t bits) {
    if (a.is_zero()) return a;
    return BigInt::from_limbs(a.sgn(), lb::shift_left_bits(a.mag(), bits));
}

BigInt div_word(const BigInt& a, std::uint32_t w, std::uint32_t* rem) {
    if (w == 0) throw domain_error("BigInt div_word: division by zero");
    lb::Limb r = 0;
    lb::Vec q = lb::div_word(a.mag(), w, &r);
    if (rem) *rem = r;
    return BigInt::from_limbs(a.sgn(), std::move(q));
}

BigInt pow(const BigInt& a, std::uint64_t e) {
    BigInt r(1);
    BigInt base = a;
    while (e != 0) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return r;
}

BigInt floor_to_int(const BigFloat& x) {
    if (x.sgn() < 0) throw domain_error("floor_to_int: negative value");
    if (x.is_zero() || x.exponent() <= 0) return BigInt();
    // Integer part = fraction shifted so the binary point sits at bit 0.
    std::int64_t shift = x.exponent() - x.precision_bits();
    return BigInt::from_limbs(1, lb::shift_left_bits(x.fraction(), shift));
}

DivMod divmod(const BigInt& a, const BigInt& b) {
    if (b.sgn() <= 0) throw domain_error("divmod: divisor must be positive");
    if (a.sgn() < 0) throw domain_error("divmod: dividend must be nonnegative");
    if (lb::compare(a.mag(), b.mag()) < 0) return {BigInt(), a};

    std::int64_t qa = a.bit_length() - b.bit_length() + 2;
    BigFloat rb = recip(b.to_bigfloat(), Precision(qa + 32, 8));
    BigFloat qf = mul(a.to_bigfloat(), rb, Precision(qa + 32, 8));
    BigInt q = floor_to_int(qf);

    // The reciprocal route can be off by a unit either way; fix exactly.
    BigInt r = sub(a, mul(q, b));
    while (r.sgn() < 0) {
        q = sub(q, BigInt(1));
        r = add(r, b);
    }
    while (cmp(r, b) >= 0) {
        q = add(q, BigInt(1));
        r = sub(r, b);
    }
    return {q, r};
}

}  // namespace mp
