#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mp/bigfloat.hpp"
#include "oracle.hpp"

using mp::BigFloat;
using mp::Precision;
using oracle::Dyadic;

namespace {
const Precision p64(64);
BigFloat bf(std::int64_t v) { return BigFloat::from_int(v); }
}  // namespace

TEST_CASE("add: exact small integers") {
    CHECK(mp::add(bf(1), bf(1), p64) == bf(2));
    CHECK(mp::add(bf(3), bf(-1), p64) == bf(2));
}

TEST_CASE("add: zero is the identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        BigFloat x = oracle::random_bigfloat(rng, 64);
        CHECK(mp::add(x, BigFloat(), p64) == x);
        CHECK(mp::add(BigFloat(), x, p64) == x);
    }
}

TEST_CASE("add: operand below the rounding granularity is absorbed") {
    BigFloat tiny = mp::shift2(bf(1), -80);  // 2^-80
    CHECK(mp::add(tiny, bf(1), p64) == bf(1));
    // The exact-rational view agrees: the sum truncated to 64 bits is 1.
    Dyadic exact = oracle::add(oracle::dyadic(tiny), oracle::make(1));
    CHECK(oracle::rel_close(bf(1), exact, -64));
}

TEST_CASE("sub: cancellation and small cases") {
    std::mt19937_64 rng(8);
    BigFloat x = oracle::random_bigfloat(rng, 256);
    CHECK(mp::sub(x, x, p64).is_zero());
    CHECK(mp::sub(bf(3), bf(1), p64) == bf(2));

    // 1 - 2^-64 * (1 + 2^-1) with the exact dyadic as reference
    BigFloat y = mp::shift2(mp::add(bf(2), bf(1), Precision(8)), -65);
    BigFloat r = mp::sub(bf(1), y, p64);
    Dyadic exact = oracle::sub(oracle::make(1), oracle::dyadic(y));
    CHECK(oracle::rel_close(r, exact, -64));
}

TEST_CASE("mul_word and div_word") {
    std::mt19937_64 rng(9);
    BigFloat x = oracle::random_bigfloat(rng, 128);
    CHECK(mp::mul_word(x, 1, Precision(128)) == x);
    CHECK(mp::mul_word(BigFloat::from_double(0.5), 6, p64) == bf(3));

    BigFloat third = mp::div_word(bf(1), 3, p64);
    CHECK(oracle::rel_close(third, oracle::long_division(1, 3, 80), -62));

    CHECK_THROWS_AS(mp::div_word(bf(1), 0, p64), mp::domain_error);
}

TEST_CASE("shift2 is exact scaling") {
    std::mt19937_64 rng(10);
    BigFloat x = oracle::random_bigfloat(rng, 96);
    CHECK(mp::shift2(x, 0) == x);
    CHECK(mp::shift2(bf(1), 3) == bf(8));
    CHECK(mp::shift2(mp::shift2(x, 17), -17) == x);
}

TEST_CASE("shift2 range errors instead of wrapping") {
    CHECK_THROWS_AS(mp::shift2(bf(1), BigFloat::kMaxExponent), mp::range_error);
    CHECK_THROWS_AS(mp::shift2(bf(1), BigFloat::kMinExponent - 2), mp::range_error);
}

TEST_CASE("cmp totals and trivial cases") {
    CHECK(mp::cmp(bf(1), bf(2)) < 0);
    CHECK(mp::cmp(bf(-1), bf(1)) < 0);
    CHECK(mp::cmp(bf(5), bf(5)) == 0);
}

TEST_CASE("round_to: no-op below the cut, truncation above") {
    std::mt19937_64 rng(11);
    BigFloat x = oracle::random_bigfloat(rng, 48);
    CHECK(mp::round_to(x, p64) == x);

    BigFloat third = mp::div_word(bf(1), 3, Precision(128));
    BigFloat cut = mp::round_to(third, p64);
    CHECK(oracle::rel_close(cut, oracle::dyadic(third), -64));
    CHECK(cut.precision_bits() <= 64);
}

TEST_CASE("normalization is idempotent and canonical") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        BigFloat x = oracle::random_bigfloat(rng, 64 + (i % 5) * 32);
        BigFloat y = BigFloat::from_limbs(x.sgn(), x.fraction(),
                                          x.exponent() - x.precision_bits());
        CHECK(x == y);
    }
}

TEST_CASE("property: add/sub/mul_word/div_word agree with the exact oracle") {
    std::mt19937_64 rng(13);
    for (std::int64_t bits : {64, 128, 512, 1024, 4096}) {
        Precision p(bits);
        for (int i = 0; i < 40; ++i) {
            BigFloat x = oracle::random_bigfloat(rng, bits);
            BigFloat y = oracle::random_bigfloat(rng, bits);
            Dyadic dx = oracle::dyadic(x), dy = oracle::dyadic(y);

            BigFloat s = mp::add(x, y, p);
            Dyadic es = oracle::add(dx, dy);
            if (oracle::is_zero(es))
                CHECK(s.is_zero());
            else
                CHECK(oracle::rel_close(s, es, -bits + 2));

            BigFloat d = mp::sub(x, y, p);
            Dyadic ed = oracle::sub(dx, dy);
            if (oracle::is_zero(ed))
                CHECK(d.is_zero());
            else
                CHECK(oracle::rel_close(d, ed, -bits + 2));

            std::int64_t w = 1 + static_cast<std::int64_t>(rng() % 100000);
            CHECK(oracle::rel_close(mp::mul_word(x, w, p),
                                    oracle::mul(dx, oracle::make(w)), -bits + 2));

            // |q*w - x| <= 2^(-bits+2) |x|  avoids forming the rational x/w.
            BigFloat q = mp::div_word(x, w, p);
            Dyadic qe = oracle::mul(oracle::dyadic(q), oracle::make(w));
            CHECK(oracle::le_scaled(oracle::sub(qe, dx), dx, -bits + 2));
        }
    }
}

TEST_CASE("property: add commutes bit-exactly, sub round-trips") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        std::int64_t bits = 64 + (i % 7) * 64;
        Precision p(bits);
        BigFloat x = oracle::random_bigfloat(rng, bits);
        BigFloat y = oracle::random_bigfloat(rng, bits);
        CHECK(mp::add(x, y, p) == mp::add(y, x, p));

        // The round-trip bound is relative to x, so it is meaningful only
        // while y cannot absorb x outright; same-binade operands.
        BigFloat y2 = mp::shift2(y, x.exponent() - y.exponent());
        BigFloat back = mp::sub(mp::add(x, y2, p), y2, p);
        CHECK(oracle::rel_close(back, oracle::dyadic(x), -bits + 2));
    }
}

TEST_CASE("property: cmp never disagrees with the rational order") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 1000; ++i) {
        BigFloat x = oracle::random_bigfloat(rng, 64 + (i % 3) * 32, 30);
        BigFloat y = oracle::random_bigfloat(rng, 64 + (i % 5) * 16, 30);
        int got = mp::cmp(x, y);
        int want = oracle::compare(oracle::dyadic(x), oracle::dyadic(y));
        CHECK(got == want);
    }
}

TEST_CASE("zero is unique and sign-free") {
    BigFloat z;
    CHECK(z.is_zero());
    CHECK(z.fraction().empty());
    CHECK(mp::sub(bf(5), bf(5), p64) == z);
    CHECK(mp::neg(z) == z);
}
