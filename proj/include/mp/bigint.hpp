// Exact signed integers on top of the limb kernels. Support type for the
// binary-splitting series and the divide-and-conquer radix conversion; the
// multiplications go through the same schoolbook/Karatsuba dispatch as the
// floating layer.

#pragma once

#include <cstdint>
#include <string>

#include "mp/bigfloat.hpp"
#include "mp/limbs.hpp"

namespace mp {

class BigInt {
  public:
    BigInt() : sign_(0) {}
    explicit BigInt(std::int64_t v);

    static BigInt from_limbs(int sign, limbs::Vec mag);

    int sgn() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    const limbs::Vec& mag() const { return mag_; }
    std::int64_t bit_length() const { return limbs::bit_length(mag_); }

    bool operator==(const BigInt&) const = default;

    // Fits in int64 (for convenience accessors in tests/CLI).
    bool fits_int64() const;
    std::int64_t to_int64() const;

    BigFloat to_bigfloat() const;  // exact
    double log2_approx() const;

  private:
    int sign_;
    limbs::Vec mag_;
};

BigInt neg(const BigInt& a);
int cmp(const BigInt& a, const BigInt& b);

BigInt add(const BigInt& a, const BigInt& b);
BigInt sub(const BigInt& a, const BigInt& b);
BigInt mul(const BigInt& a, const BigInt& b, limbs::WorkCounter* work = nullptr);
BigInt mul_word(const BigInt& a, std::int64_t w);
BigInt shift_left(const BigInt& a, std::int64_t bits);

// Truncating division by a single word, remainder has the sign of a.
BigInt div_word(const BigInt& a, std::uint32_t w, std::uint32_t* rem = nullptr);

// a^e by binary powering.
BigInt pow(const BigInt& a, std::uint64_t e);

// Floor division with remainder, b > 0, a >= 0. Quotient via a truncated
// reciprocal of b refined to full width, then exactly corrected; cost is a
// constant number of full-width multiplications.
struct DivMod {
    BigInt quot;
    BigInt rem;
};
DivMod divmod(const BigInt& a, const BigInt& b);

// Truncation of |x| * 2^shift toward zero (x >= 0).
BigInt floor_to_int(const BigFloat& x);

}  // namespace mp
