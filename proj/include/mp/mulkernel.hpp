// Full-precision multiplication and squaring.
//
// Every route forms the exact double-length limb product of the (truncated)
// operands and then truncates the result, so the schoolbook and Karatsuba
// paths agree bit for bit, not just within tolerance.

#pragma once

#include "mp/bigfloat.hpp"
#include "mp/costs.hpp"
#include "mp/limbs.hpp"

namespace mp {

BigFloat mul_school(const BigFloat& x, const BigFloat& y, Precision p,
                    CostLedger* ledger = nullptr,
                    limbs::WorkCounter* work = nullptr);

BigFloat mul_karatsuba(const BigFloat& x, const BigFloat& y, Precision p,
                       CostLedger* ledger = nullptr,
                       limbs::WorkCounter* work = nullptr,
                       int threshold = limbs::kKaratsubaThreshold);

// Dispatcher: schoolbook below the limb threshold, Karatsuba above.
BigFloat mul(const BigFloat& x, const BigFloat& y, Precision p,
             CostLedger* ledger = nullptr,
             limbs::WorkCounter* work = nullptr,
             int threshold = limbs::kKaratsubaThreshold);

BigFloat square(const BigFloat& x, Precision p,
                CostLedger* ledger = nullptr,
                limbs::WorkCounter* work = nullptr);

// x*y evaluated as a scaled difference of two squares; the scale is a power
// of two keeping the two squared terms within a factor of four of each
// other so the difference does not cancel. Verification path for the
// squaring-multiplication equivalence.
BigFloat mul_via_squares(const BigFloat& x, const BigFloat& y, Precision p,
                         CostLedger* ledger = nullptr);

}  // namespace mp
