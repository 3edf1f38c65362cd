#include "mp/newton.hpp"

#include <algorithm>
#include <cmath>

namespace mp {

namespace {

constexpr std::int64_t kStartBits = 30;  // first level fits one machine word
// Guard bits carried by every intermediate of a level. A level performs
// about six truncating operations of a couple of ulps apiece, and a
// third-order step amplifies any accuracy shortfall threefold into the
// next level, so each intermediate must hold the level's bits plus enough
// spare that the per-level slack stays clearly positive. The charged
// precision shifts by the same dozen bits, a fraction of a percent of any
// measured level.
constexpr std::int64_t kLevelGuard = 12;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

Precision level_prec(std::int64_t bits) {
    return Precision(std::max<std::int64_t>(bits, 4) + kLevelGuard, 8);
}

BigFloat one() { return BigFloat::from_int(1); }

void record(NewtonTrace* trace, std::int64_t bits, const BigFloat& x) {
    if (trace) trace->levels.push_back({bits, x});
}

// Reciprocal estimate from the top fraction word; exact in the exponent, so
// scaling the argument by 2^k scales the estimate by 2^-k bit for bit.
BigFloat recip_estimate(const BigFloat& a) {
    BigFloat::Approx ap = a.approx();
    return shift2(BigFloat::from_double(1.0 / ap.fraction), -ap.exponent);
}

BigFloat rsqrt_estimate(const BigFloat& a) {
    BigFloat::Approx ap = a.approx();
    std::int64_t e = ap.exponent;
    double m = ap.fraction;
    if (e % 2 != 0) {
        m *= 2.0;
        e -= 1;
    }
    return shift2(BigFloat::from_double(1.0 / std::sqrt(m)), -e / 2);
}

BigFloat sqrt_estimate(const BigFloat& a) {
    BigFloat::Approx ap = a.approx();
    std::int64_t e = ap.exponent;
    double m = ap.fraction;
    if (e % 2 != 0) {
        m *= 2.0;
        e -= 1;
    }
    return shift2(BigFloat::from_double(std::sqrt(m)), e / 2);
}

BigFloat recip_core(const BigFloat& a, std::int64_t full_bits, IterationVariant variant,
                    CostLedger* ledger, NewtonTrace* trace) {
    PrecisionSchedule sched =
        precision_schedule(full_bits, variant_order(variant), kStartBits);
    BigFloat x = round_to_bits(recip_estimate(a), sched.levels.front());
    for (std::int64_t nj : sched.levels) {
        Precision pn = level_prec(nj);
        BigFloat t = mul(a, x, pn, ledger);
        BigFloat e = sub(t, one(), pn, ledger);
        if (variant == IterationVariant::recip2) {
            // x(ax - 1) needs only half the level's precision.
            BigFloat c = mul(x, e, level_prec(ceil_div(nj, 2)), ledger);
            x = sub(x, c, pn, ledger);
        } else {
            BigFloat e2 = square(e, level_prec(ceil_div(nj, 3)), ledger);
            BigFloat u = sub(e, e2, level_prec(ceil_div(2 * nj, 3)), ledger);
            BigFloat c = mul(x, u, level_prec(ceil_div(2 * nj, 3)), ledger);
            x = sub(x, c, pn, ledger);
        }
        record(trace, nj, x);
    }
    return x;
}

BigFloat rsqrt_core(const BigFloat& a, std::int64_t full_bits, IterationVariant variant,
                    CostLedger* ledger, NewtonTrace* trace) {
    PrecisionSchedule sched =
        precision_schedule(full_bits, variant_order(variant), kStartBits);
    BigFloat x = round_to_bits(rsqrt_estimate(a), sched.levels.front());
    for (std::int64_t nj : sched.levels) {
        Precision pn = level_prec(nj);
        BigFloat t = square(x, pn, ledger);
        BigFloat e = sub(mul(a, t, pn, ledger), one(), pn, ledger);
        BigFloat c;
        if (variant == IterationVariant::rsqrt3) {
            BigFloat e2 = square(e, level_prec(ceil_div(nj, 3)), ledger);
            BigFloat u =
                sub(e, shift2(mul_word(e2, 3, level_prec(ceil_div(nj, 3))), -2),
                    level_prec(ceil_div(2 * nj, 3)), ledger);
            c = mul(x, u, level_prec(ceil_div(2 * nj, 3)), ledger);
        } else {
            c = mul(x, e, level_prec(ceil_div(nj, 2)), ledger);
        }
        x = sub(x, shift2(c, -1), pn, ledger);
        record(trace, nj, x);
    }
    return x;
}

}  // namespace

int variant_order(IterationVariant v) {
    switch (v) {
        case IterationVariant::recip3:
        case IterationVariant::rsqrt3:
            return 3;
        default:
            return 2;
    }
}

PrecisionSchedule precision_schedule(std::int64_t target_bits, int order,
                                     std::int64_t start_bits) {
    if (order < 2) throw config_error("precision_schedule: order must be >= 2");
    return precision_schedule_ratio(target_bits, static_cast<double>(order), start_bits);
}

PrecisionSchedule precision_schedule_ratio(std::int64_t target_bits, double order,
                                           std::int64_t start_bits) {
    if (target_bits < 1) throw config_error("precision_schedule: empty target");
    if (!(order > 1.0)) throw config_error("precision_schedule: order must exceed 1");
    if (start_bits < 1) start_bits = 1;
    PrecisionSchedule s;
    if (target_bits <= start_bits) {
        s.levels.push_back(target_bits);
        return s;
    }
    std::int64_t v = target_bits;
    while (v > start_bits) {
        s.levels.push_back(v);
        v = static_cast<std::int64_t>(std::ceil(static_cast<double>(v) / order));
    }
    s.levels.push_back(start_bits);
    std::reverse(s.levels.begin(), s.levels.end());
    return s;
}

BigFloat recip(const BigFloat& a, Precision p, IterationVariant variant,
               CostLedger* ledger, NewtonTrace* trace) {
    if (a.is_zero()) throw domain_error("recip: division by zero");
    if (variant != IterationVariant::recip2 && variant != IterationVariant::recip3)
        throw config_error("recip: unsupported variant");
    return round_to(recip_core(a, p.working(), variant, ledger, trace), p);
}

BigFloat div(const BigFloat& b, const BigFloat& a, Precision p,
             IterationVariant variant, CostLedger* ledger) {
    if (a.is_zero()) throw domain_error("div: division by zero");
    if (b.is_zero()) return BigFloat();
    std::int64_t full = p.working();
    switch (variant) {
        case IterationVariant::recip2:
        case IterationVariant::recip3: {
            BigFloat x = recip_core(a, full, variant, ledger, nullptr);
            return round_to(mul(b, x, level_prec(full), ledger), p);
        }
        case IterationVariant::div_km: {
            // Half-width reciprocal, then one residual-corrected product:
            // the residual a*y - b is the only full-width multiplication.
            std::int64_t half = ceil_div(full, 2) + 2;
            BigFloat x = recip_core(a, half, IterationVariant::recip2, ledger, nullptr);
            BigFloat y = mul(b, x, level_prec(half), ledger);
            BigFloat r = sub(mul(a, y, level_prec(full), ledger), b,
                             level_prec(full), ledger);
            BigFloat c = mul(x, r, level_prec(half), ledger);
            return round_to(sub(y, c, level_prec(full), ledger), p);
        }
        default:
            throw config_error("div: unsupported variant");
    }
}

BigFloat rsqrt(const BigFloat& a, Precision p, IterationVariant variant,
               CostLedger* ledger, NewtonTrace* trace) {
    if (a.is_zero() || a.sgn() < 0) throw domain_error("rsqrt: nonpositive argument");
    if (variant != IterationVariant::rsqrt3 && variant != IterationVariant::rsqrt2)
        throw config_error("rsqrt: unsupported variant");
    return round_to(rsqrt_core(a, p.working(), variant, ledger, trace), p);
}

BigFloat sqrt(const BigFloat& a, Precision p, IterationVariant variant,
              CostLedger* ledger, NewtonTrace* trace) {
    if (a.sgn() < 0) throw domain_error("sqrt: negative argument");
    if (a.is_zero()) return BigFloat();
    std::int64_t full = p.working();
    switch (variant) {
        case IterationVariant::sqrt_newton: {
            PrecisionSchedule sched = precision_schedule(full, 2, kStartBits);
            BigFloat x = round_to_bits(sqrt_estimate(a), sched.levels.front());
            for (std::int64_t nj : sched.levels) {
                Precision pn = level_prec(nj);
                BigFloat d = div(a, x, pn, IterationVariant::div_km, ledger);
                x = shift2(add(x, d, pn, ledger), -1);
                record(trace, nj, x);
            }
            return round_to(x, p);
        }
        case IterationVariant::rsqrt3:
        case IterationVariant::rsqrt2: {
            BigFloat x = rsqrt_core(a, full, variant, ledger, trace);
            return round_to(mul(a, x, level_prec(full), ledger), p);
        }
        case IterationVariant::sqrt_km: {
            // Half-width inverse root, then one second-order step on
            // y = a*x driven by the residual y^2 - a.
            std::int64_t half = ceil_div(full, 2) + 2;
            BigFloat x = rsqrt_core(a, half, IterationVariant::rsqrt3, ledger, trace);
            BigFloat y = mul(a, x, level_prec(half), ledger);
            BigFloat r = sub(square(y, level_prec(full), ledger), a,
                             level_prec(full), ledger);
            BigFloat c = mul(x, r, level_prec(half), ledger);
            return round_to(sub(y, shift2(c, -1), level_prec(full), ledger), p);
        }
        default:
            throw config_error("sqrt: unsupported variant");
    }
}

BigFloat square_via_recip(const BigFloat& a, Precision p, CostLedger* ledger) {
    if (a.is_zero()) return BigFloat();
    std::int64_t n = p.bits;
    Precision pw(p.working(), p.guard);
    // Scale so |u| = |2^k a| sits just below 2^-(n/3); the series tail of
    // 1/(1-u) beyond the quadratic term is then below the result precision.
    std::int64_t k = -(n / 3) - a.exponent();
    BigFloat u = shift2(a, k);
    BigFloat r = recip(sub(one(), u, pw, ledger), pw, IterationVariant::recip2, ledger);
    BigFloat s = sub(r, add(one(), u, pw, ledger), pw, ledger);
    return round_to_bits(shift2(s, -2 * k), std::max<std::int64_t>(1, n / 3));
}

BigFloat rsqrt_via_sqrts(const BigFloat& a, Precision p, CostLedger* ledger) {
    if (a.is_zero() || a.sgn() < 0)
        throw domain_error("rsqrt_via_sqrts: nonpositive argument");
    std::int64_t n = p.bits;
    Precision pw(p.working(), p.guard);
    std::int64_t k = a.exponent() - (n / 3) - 1;
    BigFloat lam = shift2(one(), k);
    BigFloat s1 = sqrt(add(a, lam, pw, ledger), pw, IterationVariant::sqrt_km, ledger);
    BigFloat s2 = sqrt(sub(a, lam, pw, ledger), pw, IterationVariant::sqrt_km, ledger);
    BigFloat d = sub(s1, s2, pw, ledger);
    return round_to_bits(shift2(d, -k), std::max<std::int64_t>(1, 2 * n / 3));
}

BigFloat div_via_sqrts(const BigFloat& b, const BigFloat& a, Precision p,
                       CostLedger* ledger) {
    if (a.is_zero()) throw domain_error("div_via_sqrts: division by zero");
    if (b.is_zero()) return BigFloat();
    std::int64_t n = p.bits;
    Precision pw(p.working(), p.guard);
    BigFloat bm = abs(b);
    std::int64_t k = 2 * a.exponent() - bm.exponent() - (n / 3) - 1;
    BigFloat s = square(a, pw, ledger);
    BigFloat u = shift2(bm, k);
    BigFloat s1 = sqrt(add(s, u, pw, ledger), pw, IterationVariant::sqrt_km, ledger);
    BigFloat s2 = sqrt(sub(s, u, pw, ledger), pw, IterationVariant::sqrt_km, ledger);
    BigFloat d = sub(s1, s2, pw, ledger);
    BigFloat q = round_to_bits(shift2(d, -k), std::max<std::int64_t>(1, 2 * n / 3));
    return b.sgn() * a.sgn() < 0 ? neg(q) : q;
}

}  // namespace mp
