// Exact reference arithmetic for the tests, kept independent of the library
// paths it checks: values are mirrored into boost cpp_int dyadics and all
// tolerance comparisons are exact integer comparisons.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>

#include "mp/bigfloat.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;

// value = num * 2^exp
struct Dyadic {
    cpp_int num;
    std::int64_t exp = 0;
};

inline Dyadic dyadic(const mp::BigFloat& x) {
    cpp_int n = 0;
    const auto& f = x.fraction();
    for (std::size_t i = f.size(); i-- > 0;) {
        n <<= 32;
        n += f[i];
    }
    if (x.sgn() < 0) n = -n;
    return {n, x.exponent() - x.precision_bits()};
}

inline Dyadic make(std::int64_t num, std::int64_t exp = 0) {
    return {cpp_int(num), exp};
}

inline Dyadic add(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::min(a.exp, b.exp);
    return {(a.num << (a.exp - e)) + (b.num << (b.exp - e)), e};
}

inline Dyadic sub(const Dyadic& a, const Dyadic& b) {
    std::int64_t e = std::min(a.exp, b.exp);
    return {(a.num << (a.exp - e)) - (b.num << (b.exp - e)), e};
}

inline Dyadic mul(const Dyadic& a, const Dyadic& b) {
    return {a.num * b.num, a.exp + b.exp};
}

inline bool is_zero(const Dyadic& a) { return a.num == 0; }

// |a| <= |b| * 2^shift, exactly.
inline bool le_scaled(const Dyadic& a, const Dyadic& b, std::int64_t shift) {
    cpp_int am = boost::multiprecision::abs(a.num);
    cpp_int bm = boost::multiprecision::abs(b.num);
    std::int64_t ea = a.exp;
    std::int64_t eb = b.exp + shift;
    std::int64_t e = std::min(ea, eb);
    return am << (ea - e) <= bm << (eb - e);
}

// sign of a - b
inline int compare(const Dyadic& a, const Dyadic& b) {
    Dyadic d = sub(a, b);
    if (d.num == 0) return 0;
    return d.num < 0 ? -1 : 1;
}

// Relative: |x - exact| <= 2^log2tol * |exact|
inline bool rel_close(const mp::BigFloat& x, const Dyadic& exact, std::int64_t log2tol) {
    if (is_zero(exact)) return x.is_zero();
    return le_scaled(sub(dyadic(x), exact), exact, log2tol);
}

// Absolute: |x - exact| <= 2^log2tol
inline bool abs_close(const mp::BigFloat& x, const Dyadic& exact, std::int64_t log2tol) {
    return le_scaled(sub(dyadic(x), exact), make(1, 0), log2tol);
}

inline bool rel_close(const mp::BigFloat& x, const mp::BigFloat& y, std::int64_t log2tol) {
    return rel_close(x, dyadic(y), log2tol);
}

// Random nonzero value with exactly `bits` significant bits and binary
// exponent uniform in [-exp_range, exp_range].
template <class Rng>
mp::BigFloat random_bigfloat(Rng& rng, std::int64_t bits, std::int64_t exp_range = 20,
                             bool allow_negative = true) {
    std::uniform_int_distribution<std::uint32_t> limb;
    std::size_t words = static_cast<std::size_t>((bits + 31) / 32);
    mp::limbs::Vec f(words);
    for (auto& w : f) w = limb(rng);
    f[words - 1] |= 0x80000000u;  // top bit
    std::int64_t drop = static_cast<std::int64_t>(words) * 32 - bits;
    f = mp::limbs::shift_right_bits(f, drop);
    f = mp::limbs::shift_left_bits(f, drop);
    if (mp::limbs::is_zero(f)) f = {0x80000000u};
    std::uniform_int_distribution<std::int64_t> ed(-exp_range, exp_range);
    int sign = 1;
    if (allow_negative && std::uniform_int_distribution<int>(0, 1)(rng)) sign = -1;
    return mp::BigFloat::from_limbs(sign, f, ed(rng) - static_cast<std::int64_t>(words) * 32);
}

// floor(2^k / d) as a Dyadic with exponent -k: the long-division reference.
inline Dyadic long_division(std::int64_t num, std::int64_t den, std::int64_t k) {
    cpp_int q = (cpp_int(num) << k) / den;
    return {q, -k};
}

}  // namespace oracle
