// Variable-precision binary floating fractions.
//
// A value is sign * fraction * 2^exponent with fraction in [1/2, 1) held as
// little-endian 32-bit limbs whose top bit is set. Zero is sign 0 with no
// limbs. Representations are canonical (trailing zero limbs stripped), so
// two BigFloats are bit-identical iff they are equal as reals.
//
// All operations truncate toward zero at the requested bit count and promise
// relative error at most c * 2^-n with a small fixed c (at most 4 under this
// rounding policy). No hidden bit, no signed zero, no NaN/infinity.

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mp/limbs.hpp"

namespace mp {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Argument outside an operation's domain (negative sqrt operand, ...).
struct domain_error : error {
    using error::error;
};
// Binary exponent left the supported window.
struct range_error : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct convergence_error : error {
    using error::error;
};
// Coincident ordinates in an interpolation step.
struct degeneracy_error : error {
    using error::error;
};
// Unknown variant / malformed harness configuration.
struct config_error : error {
    using error::error;
};

// Requested significant bits plus working guard bits.
struct Precision {
    std::int64_t bits;
    std::int64_t guard;

    explicit Precision(std::int64_t n, std::int64_t g = 8) : bits(n), guard(g) {
        if (n < 1) throw domain_error("Precision: bits must be >= 1");
        if (g < 2) throw domain_error("Precision: guard must be >= 2");
    }
    std::int64_t working() const { return bits + guard; }
};

class CostLedger;  // costs.hpp

class BigFloat {
  public:
    // Exponents are confined to a signed 32-bit window; operations that
    // would leave it raise range_error instead of wrapping.
    static constexpr std::int64_t kMaxExponent = (std::int64_t{1} << 31) - 1;
    static constexpr std::int64_t kMinExponent = -(std::int64_t{1} << 31);

    BigFloat() : sign_(0), exp_(0) {}

    static BigFloat from_int(std::int64_t v);
    static BigFloat from_double(double v);  // exact (dyadic)
    // value = sign * (limbs as integer) * 2^(scale), then normalized.
    static BigFloat from_limbs(int sign, limbs::Vec fraction, std::int64_t scale);

    int sgn() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    // Binary exponent: |value| in [2^(e-1), 2^e).
    std::int64_t exponent() const { return exp_; }
    const limbs::Vec& fraction() const { return frac_; }
    // Bits carried by the fraction (a multiple of the limb width).
    std::int64_t precision_bits() const {
        return static_cast<std::int64_t>(frac_.size()) * limbs::kLimbBits;
    }
    // Position of the lowest set fraction bit measured from the top, i.e.
    // the number of significant bits actually needed.
    std::int64_t significant_bits() const;

    bool operator==(const BigFloat& o) const = default;

    // Fraction in [0.5, 1) as a double plus the binary exponent; safe for
    // any exponent (never materializes the magnitude in a double).
    struct Approx {
        double fraction;
        std::int64_t exponent;
    };
    Approx approx() const;
    double to_double() const;  // saturates far outside double range

  private:
    friend BigFloat normalized(int sign, limbs::Vec frac, std::int64_t scale);

    int sign_;
    std::int64_t exp_;
    limbs::Vec frac_;
};

// Canonicalizes (top bit placement, trailing-limb stripping, range check).
BigFloat normalized(int sign, limbs::Vec frac, std::int64_t scale);

BigFloat neg(const BigFloat& x);
BigFloat abs(const BigFloat& x);

BigFloat add(const BigFloat& x, const BigFloat& y, Precision p,
             CostLedger* ledger = nullptr);
BigFloat sub(const BigFloat& x, const BigFloat& y, Precision p,
             CostLedger* ledger = nullptr);

// Multiply / divide by a single word; linear time in the fraction length.
BigFloat mul_word(const BigFloat& x, std::int64_t s, Precision p,
                  CostLedger* ledger = nullptr);
BigFloat div_word(const BigFloat& x, std::int64_t s, Precision p,
                  CostLedger* ledger = nullptr);

// Exact scaling by 2^k.
BigFloat shift2(const BigFloat& x, std::int64_t k);

// Total order consistent with the real values: -1, 0, +1.
int cmp(const BigFloat& x, const BigFloat& y);

// Truncation toward zero to p.bits significant bits.
BigFloat round_to(const BigFloat& x, Precision p);
BigFloat round_to_bits(const BigFloat& x, std::int64_t bits);

}  // namespace mp
