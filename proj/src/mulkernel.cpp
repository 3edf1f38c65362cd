#include "mp/mulkernel.hpp"

namespace mp {

namespace lb = limbs;

namespace {

enum class Kernel { School, Karatsuba, Dispatch };

BigFloat mul_impl(const BigFloat& x, const BigFloat& y, Precision p,
                  Kernel kernel, CostLedger* ledger, lb::WorkCounter* work,
                  int threshold, OpClass cls) {
    if (ledger) ledger->charge(cls, p.bits);
    if (x.is_zero() || y.is_zero()) return BigFloat();

    // Operands are cut to working precision first so the cost of the
    // product tracks the requested precision, not the carried one.
    BigFloat a = round_to_bits(x, p.working());
    BigFloat b = round_to_bits(y, p.working());

    lb::Vec f;
    switch (kernel) {
        case Kernel::School:
            f = lb::mul_school(a.fraction(), b.fraction(), work);
            break;
        case Kernel::Karatsuba:
            f = lb::mul_karatsuba(a.fraction(), b.fraction(), work, threshold);
            break;
        case Kernel::Dispatch:
            f = lb::mul(a.fraction(), b.fraction(), work, threshold);
            break;
    }
    int sign = a.sgn() * b.sgn();
    std::int64_t scale = (a.exponent() - a.precision_bits()) +
                         (b.exponent() - b.precision_bits());
    return round_to(normalized(sign, std::move(f), scale), p);
}

}  // namespace

BigFloat mul_school(const BigFloat& x, const BigFloat& y, Precision p,
                    CostLedger* ledger, lb::WorkCounter* work) {
    return mul_impl(x, y, p, Kernel::School, ledger, work, 0, OpClass::Mul);
}

BigFloat mul_karatsuba(const BigFloat& x, const BigFloat& y, Precision p,
                       CostLedger* ledger, lb::WorkCounter* work, int threshold) {
    return mul_impl(x, y, p, Kernel::Karatsuba, ledger, work, threshold, OpClass::Mul);
}

BigFloat mul(const BigFloat& x, const BigFloat& y, Precision p,
             CostLedger* ledger, lb::WorkCounter* work, int threshold) {
    return mul_impl(x, y, p, Kernel::Dispatch, ledger, work, threshold, OpClass::Mul);
}

BigFloat square(const BigFloat& x, Precision p, CostLedger* ledger,
                lb::WorkCounter* work) {
    return mul_impl(x, x, p, Kernel::Dispatch, ledger, work,
                    lb::kKaratsubaThreshold, OpClass::Sqr);
}

BigFloat mul_via_squares(const BigFloat& x, const BigFloat& y, Precision p,
                         CostLedger* ledger) {
    if (x.is_zero() || y.is_zero()) return BigFloat();
    // 4*(2^k)*x*y = (x + 2^k y)^2 - (x - 2^k y)^2 with 1/2 <= |2^k y / x| <= 2.
    std::int64_t k = x.exponent() - y.exponent();
    BigFloat ys = shift2(y, k);
    Precision wide(p.working(), p.guard);
    BigFloat s = add(x, ys, wide, ledger);
    BigFloat d = sub(x, ys, wide, ledger);
    BigFloat diff = sub(square(s, p, ledger), square(d, p, ledger), wide, ledger);
    return round_to(shift2(diff, -k - 2), p);
}

}  // namespace mp
