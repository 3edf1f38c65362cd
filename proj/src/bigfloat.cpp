#include "mp/bigfloat.hpp"

#include <cassert>
#include <cmath>

#include "mp/costs.hpp"

namespace mp {

namespace lb = limbs;

BigFloat normalized(int sign, lb::Vec frac, std::int64_t scale) {
    lb::trim(frac);
    if (sign == 0 || frac.empty()) return BigFloat();

    std::int64_t bl = lb::bit_length(frac);
    std::int64_t words = (bl + lb::kLimbBits - 1) / lb::kLimbBits;
    std::int64_t pad = words * lb::kLimbBits - bl;
    if (pad != 0) {
        frac = lb::shift_left_bits(frac, pad);
        scale -= pad;
    }
    // Canonical form: drop exact trailing zero limbs.
    std::size_t drop = 0;
    while (drop < frac.size() && frac[drop] == 0) ++drop;
    if (drop != 0) {
        frac.erase(frac.begin(), frac.begin() + drop);
        scale += static_cast<std::int64_t>(drop) * lb::kLimbBits;
    }

    BigFloat r;
    r.sign_ = sign < 0 ? -1 : 1;
    r.frac_ = std::move(frac);
    r.exp_ = scale + static_cast<std::int64_t>(r.frac_.size()) * lb::kLimbBits;
    if (r.exp_ > BigFloat::kMaxExponent || r.exp_ < BigFloat::kMinExponent)
        throw range_error("BigFloat: exponent out of range");
    return r;
}

BigFloat BigFloat::from_int(std::int64_t v) {
    if (v == 0) return BigFloat();
    int sign = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    lb::Vec f = {static_cast<lb::Limb>(m), static_cast<lb::Limb>(m >> 32)};
    return normalized(sign, std::move(f), 0);
}

BigFloat BigFloat::from_double(double v) {
    if (v == 0.0) return BigFloat();
    if (!std::isfinite(v)) throw domain_error("BigFloat: non-finite double");
    int sign = v < 0 ? -1 : 1;
    int e = 0;
    double m = std::frexp(std::fabs(v), &e);  // m in [0.5, 1)
    std::uint64_t bits = static_cast<std::uint64_t>(std::ldexp(m, 62));
    lb::Vec f = {static_cast<lb::Limb>(bits), static_cast<lb::Limb>(bits >> 32)};
    return normalized(sign, std::move(f), static_cast<std::int64_t>(e) - 62);
}

BigFloat BigFloat::from_limbs(int sign, lb::Vec fraction, std::int64_t scale) {
    return normalized(sign, std::move(fraction), scale);
}

std::int64_t BigFloat::significant_bits() const {
    if (sign_ == 0) return 0;
    std::size_t i = 0;
    while (frac_[i] == 0) ++i;  // canonical form keeps frac_[0] != 0 mostly
    int tz = 0;
    lb::Limb low = frac_[i];
    while ((low & 1u) == 0) {
        low >>= 1;
        ++tz;
    }
    return precision_bits() - static_cast<std::int64_t>(i) * lb::kLimbBits - tz;
}

BigFloat::Approx BigFloat::approx() const {
    if (sign_ == 0) return {0.0, 0};
    double f = 0.0;
    std::size_t n = frac_.size();
    for (std::size_t i = n > 3 ? n - 3 : 0; i < n; ++i)
        f = (f + frac_[i]) / 4294967296.0;
    return {sign_ < 0 ? -f : f, exp_};
}

double BigFloat::to_double() const {
    Approx a = approx();
    if (a.exponent > 1023) return sign_ < 0 ? -HUGE_VAL : HUGE_VAL;
    if (a.exponent < -1073) return 0.0;
    return std::ldexp(a.fraction, static_cast<int>(a.exponent));
}

BigFloat neg(const BigFloat& x) {
    if (x.is_zero()) return x;
    return normalized(-x.sgn(), x.fraction(), x.exponent() - x.precision_bits());
}

BigFloat abs(const BigFloat& x) {
    return x.sgn() < 0 ? neg(x) : x;
}

BigFloat shift2(const BigFloat& x, std::int64_t k) {
    if (x.is_zero()) return x;
    return normalized(x.sgn(), x.fraction(), x.exponent() - x.precision_bits() + k);
}

BigFloat round_to_bits(const BigFloat& x, std::int64_t bits) {
    if (x.is_zero()) return x;
    std::int64_t carried = x.precision_bits();
    if (carried <= bits) return x;
    lb::Vec f = lb::shift_right_bits(x.fraction(), carried - bits);
    return normalized(x.sgn(), std::move(f), x.exponent() - bits);
}

BigFloat round_to(const BigFloat& x, Precision p) {
    return round_to_bits(x, p.bits);
}

int cmp(const BigFloat& x, const BigFloat& y) {
    if (x.sgn() != y.sgn()) return x.sgn() < y.sgn() ? -1 : 1;
    if (x.sgn() == 0) return 0;
    int mag;
    if (x.exponent() != y.exponent()) {
        mag = x.exponent() < y.exponent() ? -1 : 1;
    } else {
        // Same exponent: compare fractions from the top, ragged end = zeros.
        const lb::Vec& a = x.fraction();
        const lb::Vec& b = y.fraction();
        std::size_t n = std::max(a.size(), b.size());
        mag = 0;
        for (std::size_t i = 0; i < n; ++i) {
            lb::Limb ai = i < a.size() ? a[a.size() - 1 - i] : 0;
            lb::Limb bi = i < b.size() ? b[b.size() - 1 - i] : 0;
            if (ai != bi) {
                mag = ai < bi ? -1 : 1;
                break;
            }
        }
    }
    return x.sgn() < 0 ? -mag : mag;
}

namespace {

// |x| vs |y|.
int cmp_mag(const BigFloat& x, const BigFloat& y) {
    if (x.is_zero() || y.is_zero()) return x.is_zero() ? (y.is_zero() ? 0 : -1) : 1;
    if (x.exponent() != y.exponent()) return x.exponent() < y.exponent() ? -1 : 1;
    const lb::Vec& a = x.fraction();
    const lb::Vec& b = y.fraction();
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        lb::Limb ai = i < a.size() ? a[a.size() - 1 - i] : 0;
        lb::Limb bi = i < b.size() ? b[b.size() - 1 - i] : 0;
        if (ai != bi) return ai < bi ? -1 : 1;
    }
    return 0;
}

// Signed sum of x and y (sign of y pre-flipped by caller when subtracting).
BigFloat signed_add(const BigFloat& x, const BigFloat& y, Precision p) {
    if (x.is_zero()) return round_to(y, p);
    if (y.is_zero()) return round_to(x, p);

    const std::int64_t w = p.working();
    const BigFloat& big = cmp_mag(x, y) >= 0 ? x : y;
    const BigFloat& small = cmp_mag(x, y) >= 0 ? y : x;
    std::int64_t gap = big.exponent() - small.exponent();
    // Below the working granularity the small operand cannot move any kept
    // bit except through a borrow, which the +2 margin absorbs.
    if (gap > w + 2) return round_to(big, p);

    std::int64_t sb = big.exponent() - big.precision_bits();
    std::int64_t ss = small.exponent() - small.precision_bits();
    std::int64_t scale = std::min(sb, ss);
    lb::Vec fb = lb::shift_left_bits(big.fraction(), sb - scale);
    lb::Vec fs = lb::shift_left_bits(small.fraction(), ss - scale);

    int sign;
    lb::Vec sum;
    if (big.sgn() == small.sgn()) {
        sum = lb::add(fb, fs);
        sign = big.sgn();
    } else {
        sum = lb::sub(fb, fs);  // |big| >= |small|
        sign = big.sgn();
        if (lb::is_zero(sum)) return BigFloat();
    }
    return round_to(normalized(sign, std::move(sum), scale), p);
}

}  // namespace

BigFloat add(const BigFloat& x, const BigFloat& y, Precision p, CostLedger* ledger) {
    if (ledger) ledger->charge(OpClass::Add, p.bits);
    return signed_add(x, y, p);
}

BigFloat sub(const BigFloat& x, const BigFloat& y, Precision p, CostLedger* ledger) {
    if (ledger) ledger->charge(OpClass::Add, p.bits);
    return signed_add(x, neg(y), p);
}

BigFloat mul_word(const BigFloat& x, std::int64_t s, Precision p, CostLedger* ledger) {
    if (s <= -(std::int64_t{1} << 32) || s >= (std::int64_t{1} << 32))
        throw domain_error("mul_word: multiplier exceeds one word");
    if (ledger) ledger->charge(OpClass::Add, p.bits);
    if (x.is_zero() || s == 0) return BigFloat();
    std::uint32_t m = static_cast<std::uint32_t>(s < 0 ? -s : s);
    lb::Vec f = lb::mul_word(x.fraction(), m);
    int sign = s < 0 ? -x.sgn() : x.sgn();
    return round_to(normalized(sign, std::move(f), x.exponent() - x.precision_bits()), p);
}

BigFloat div_word(const BigFloat& x, std::int64_t s, Precision p, CostLedger* ledger) {
    if (s == 0) throw domain_error("div_word: division by zero");
    if (s <= -(std::int64_t{1} << 32) || s >= (std::int64_t{1} << 32))
        throw domain_error("div_word: divisor exceeds one word");
    if (ledger) ledger->charge(OpClass::Add, p.bits);
    if (x.is_zero()) return x;
    std::uint32_t d = static_cast<std::uint32_t>(s < 0 ? -s : s);
    // Feed enough zero limbs below the fraction that the truncated quotient
    // still carries p.working() significant bits.
    std::int64_t extra = (p.working() + 2 * lb::kLimbBits) / lb::kLimbBits;
    lb::Vec wide(x.fraction().size() + extra, 0);
    std::copy(x.fraction().begin(), x.fraction().end(), wide.begin() + extra);
    lb::Vec q = lb::div_word(wide, d);
    int sign = s < 0 ? -x.sgn() : x.sgn();
    std::int64_t scale = x.exponent() - x.precision_bits() - extra * lb::kLimbBits;
    return round_to(normalized(sign, std::move(q), scale), p);
}

}  // namespace mp
