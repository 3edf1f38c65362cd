#include "mp/limbs.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace mp::limbs {

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

bool is_zero(const Vec& a) {
    for (Limb x : a)
        if (x != 0) return false;
    return true;
}

std::int64_t bit_length(const Vec& a) {
    std::size_t n = a.size();
    while (n > 0 && a[n - 1] == 0) --n;
    if (n == 0) return 0;
    return static_cast<std::int64_t>(n) * kLimbBits - std::countl_zero(a[n - 1]);
}

int compare(const Vec& a, const Vec& b) {
    std::size_t na = a.size(), nb = b.size();
    while (na > 0 && a[na - 1] == 0) --na;
    while (nb > 0 && b[nb - 1] == 0) --nb;
    if (na != nb) return na < nb ? -1 : 1;
    for (std::size_t i = na; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

Vec add(const Vec& a, const Vec& b) {
    const Vec& lo = a.size() < b.size() ? a : b;
    const Vec& hi = a.size() < b.size() ? b : a;
    Vec r(hi.size() + 1, 0);
    Wide carry = 0;
    std::size_t i = 0;
    for (; i < lo.size(); ++i) {
        Wide t = static_cast<Wide>(hi[i]) + lo[i] + carry;
        r[i] = static_cast<Limb>(t);
        carry = t >> kLimbBits;
    }
    for (; i < hi.size(); ++i) {
        Wide t = static_cast<Wide>(hi[i]) + carry;
        r[i] = static_cast<Limb>(t);
        carry = t >> kLimbBits;
    }
    r[hi.size()] = static_cast<Limb>(carry);
    trim(r);
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    assert(compare(a, b) >= 0);
    Vec r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t t = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        borrow = t < 0;
        if (t < 0) t += (std::int64_t{1} << kLimbBits);
        r[i] = static_cast<Limb>(t);
    }
    assert(borrow == 0);
    trim(r);
    return r;
}

Vec shift_left_bits(const Vec& a, std::int64_t k) {
    if (k < 0) return shift_right_bits(a, -k);
    if (is_zero(a)) return {};
    std::int64_t limbshift = k / kLimbBits;
    int bitshift = static_cast<int>(k % kLimbBits);
    Vec r(a.size() + limbshift + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Wide t = static_cast<Wide>(a[i]) << bitshift;
        r[i + limbshift] |= static_cast<Limb>(t);
        r[i + limbshift + 1] |= static_cast<Limb>(t >> kLimbBits);
    }
    trim(r);
    return r;
}

Vec shift_right_bits(const Vec& a, std::int64_t k) {
    if (k < 0) return shift_left_bits(a, -k);
    std::int64_t limbshift = k / kLimbBits;
    int bitshift = static_cast<int>(k % kLimbBits);
    if (limbshift >= static_cast<std::int64_t>(a.size())) return {};
    Vec r(a.size() - limbshift, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Wide t = static_cast<Wide>(a[i + limbshift]) >> bitshift;
        if (bitshift != 0 && i + limbshift + 1 < a.size())
            t |= static_cast<Wide>(a[i + limbshift + 1]) << (kLimbBits - bitshift);
        r[i] = static_cast<Limb>(t);
    }
    trim(r);
    return r;
}

Vec mul_word(const Vec& a, Limb w) {
    Vec r(a.size() + 1, 0);
    Wide carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Wide t = static_cast<Wide>(a[i]) * w + carry;
        r[i] = static_cast<Limb>(t);
        carry = t >> kLimbBits;
    }
    r[a.size()] = static_cast<Limb>(carry);
    trim(r);
    return r;
}

Vec div_word(const Vec& a, Limb w, Limb* rem) {
    assert(w != 0);
    Vec r(a.size(), 0);
    Wide carry = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        Wide cur = (carry << kLimbBits) | a[i];
        r[i] = static_cast<Limb>(cur / w);
        carry = cur % w;
    }
    if (rem) *rem = static_cast<Limb>(carry);
    trim(r);
    return r;
}

Vec mul_school(const Vec& a, const Vec& b, WorkCounter* work) {
    if (is_zero(a) || is_zero(b)) return {};
    Vec r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Wide carry = 0;
        Wide ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            Wide t = ai * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<Limb>(t);
            carry = t >> kLimbBits;
        }
        r[i + b.size()] = static_cast<Limb>(carry);
    }
    if (work) {
        work->mults += static_cast<std::uint64_t>(a.size()) * b.size();
        work->adds += static_cast<std::uint64_t>(a.size()) * b.size();
    }
    trim(r);
    return r;
}

namespace {

// Low `n` limbs of a (zero-padded view).
Vec take_low(const Vec& a, std::size_t n) {
    Vec r(a.begin(), a.begin() + std::min(n, a.size()));
    trim(r);
    return r;
}

Vec take_high(const Vec& a, std::size_t n) {
    if (a.size() <= n) return {};
    Vec r(a.begin() + n, a.end());
    trim(r);
    return r;
}

// r += a * 2^(32*shift), in place; r must be large enough.
void add_shifted(Vec& r, const Vec& a, std::size_t shift) {
    Wide carry = 0;
    std::size_t i = 0;
    for (; i < a.size(); ++i) {
        Wide t = static_cast<Wide>(r[i + shift]) + a[i] + carry;
        r[i + shift] = static_cast<Limb>(t);
        carry = t >> kLimbBits;
    }
    for (; carry != 0; ++i) {
        Wide t = static_cast<Wide>(r[i + shift]) + carry;
        r[i + shift] = static_cast<Limb>(t);
        carry = t >> kLimbBits;
    }
}

void sub_shifted(Vec& r, const Vec& a, std::size_t shift) {
    std::int64_t borrow = 0;
    std::size_t i = 0;
    for (; i < a.size(); ++i) {
        std::int64_t t = static_cast<std::int64_t>(r[i + shift]) - borrow - a[i];
        borrow = t < 0;
        if (t < 0) t += (std::int64_t{1} << kLimbBits);
        r[i + shift] = static_cast<Limb>(t);
    }
    for (; borrow != 0; ++i) {
        std::int64_t t = static_cast<std::int64_t>(r[i + shift]) - borrow;
        borrow = t < 0;
        if (t < 0) t += (std::int64_t{1} << kLimbBits);
        r[i + shift] = static_cast<Limb>(t);
    }
}

Vec karatsuba_rec(const Vec& a, const Vec& b, WorkCounter* work, int threshold) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < static_cast<std::size_t>(threshold))
        return mul_school(a, b, work);

    // Split both operands at the same power-of-two limb boundary.
    std::size_t half = (std::max(a.size(), b.size()) + 1) / 2;
    Vec a0 = take_low(a, half), a1 = take_high(a, half);
    Vec b0 = take_low(b, half), b1 = take_high(b, half);

    Vec m1 = karatsuba_rec(a1, b1, work, threshold);
    Vec m2 = karatsuba_rec(a0, b0, work, threshold);
    Vec m3 = karatsuba_rec(add(a0, a1), add(b0, b1), work, threshold);

    Vec r(a.size() + b.size() + 1, 0);
    add_shifted(r, m1, 2 * half);
    add_shifted(r, m2, 0);
    add_shifted(r, m3, half);      // m3 - m1 - m2 gives the cross term
    sub_shifted(r, m1, half);
    sub_shifted(r, m2, half);
    trim(r);
    return r;
}

}  // namespace

Vec mul_karatsuba(const Vec& a, const Vec& b, WorkCounter* work, int threshold) {
    return karatsuba_rec(a, b, work, threshold < 2 ? 2 : threshold);
}

Vec mul(const Vec& a, const Vec& b, WorkCounter* work, int threshold) {
    if (std::min(a.size(), b.size()) < static_cast<std::size_t>(threshold))
        return mul_school(a, b, work);
    return mul_karatsuba(a, b, work, threshold);
}

bool test_bit(const Vec& a, std::int64_t i) {
    if (i < 0) return false;
    std::size_t limb = static_cast<std::size_t>(i / kLimbBits);
    if (limb >= a.size()) return false;
    return (a[limb] >> (i % kLimbBits)) & 1u;
}

}  // namespace mp::limbs
