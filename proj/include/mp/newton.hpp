// Division, reciprocals, square roots and inverse square roots by Newton
// iterations whose working precision grows geometrically: one iteration per
// level, each level roughly multiplying the correct bits by the iteration's
// order. Each variant performs its final-level multiplications at the exact
// reduced precisions that give it its asymptotic constant, and charges them
// to the ledger at those precisions; the cost harness replays the traces.

#pragma once

#include <cstdint>
#include <vector>

#include "mp/bigfloat.hpp"
#include "mp/costs.hpp"
#include "mp/mulkernel.hpp"

namespace mp {

// Ascending working precisions for an iterative method. levels.back() is
// the full working target (requested bits + guard).
struct PrecisionSchedule {
    std::vector<std::int64_t> levels;
};

// target_bits is the full final working precision. Levels are produced by
// ceiling-division by `order` down to start_bits, then reversed; the first
// level never exceeds one machine word's worth of bits.
PrecisionSchedule precision_schedule(std::int64_t target_bits, int order,
                                     std::int64_t start_bits);
// Same construction for non-integer orders (secant-style ratios).
PrecisionSchedule precision_schedule_ratio(std::int64_t target_bits, double order,
                                           std::int64_t start_bits);

enum class IterationVariant {
    recip2,       // x(2 - ax), order 2
    recip3,       // x - x(e - e^2), e = ax - 1, order 3
    rsqrt3,       // x - x(e - 3e^2/4)/2, e = ax^2 - 1, order 3
    rsqrt2,       // x - xe/2, order 2
    sqrt_newton,  // (x + a/x)/2 via division
    div_km,       // reciprocal to half width, residual-corrected product
    sqrt_km,      // rsqrt to half width, residual-corrected final step
};

int variant_order(IterationVariant v);

// Per-level iterates, recorded when a trace sink is supplied.
struct NewtonTrace {
    struct Level {
        std::int64_t bits;
        BigFloat iterate;
    };
    std::vector<Level> levels;
};

BigFloat recip(const BigFloat& a, Precision p,
               IterationVariant variant = IterationVariant::recip2,
               CostLedger* ledger = nullptr, NewtonTrace* trace = nullptr);

BigFloat div(const BigFloat& b, const BigFloat& a, Precision p,
             IterationVariant variant = IterationVariant::div_km,
             CostLedger* ledger = nullptr);

BigFloat sqrt(const BigFloat& a, Precision p,
              IterationVariant variant = IterationVariant::sqrt_km,
              CostLedger* ledger = nullptr, NewtonTrace* trace = nullptr);

BigFloat rsqrt(const BigFloat& a, Precision p,
               IterationVariant variant = IterationVariant::rsqrt3,
               CostLedger* ledger = nullptr, NewtonTrace* trace = nullptr);

// Identity-based cross-check routes. Each evaluates its identity at the
// full working precision p and is accurate only to a fixed fraction of it
// (a third for the reciprocal route, two thirds for the square-root ones);
// they exist to verify the corresponding reductions independently.
BigFloat square_via_recip(const BigFloat& a, Precision p,
                          CostLedger* ledger = nullptr);
BigFloat rsqrt_via_sqrts(const BigFloat& a, Precision p,
                         CostLedger* ledger = nullptr);
BigFloat div_via_sqrts(const BigFloat& b, const BigFloat& a, Precision p,
                       CostLedger* ledger = nullptr);

}  // namespace mp
