// Elementary functions, the constants e and pi, and decimal conversion.
//
// exp and sin reduce the argument by an exact power-of-two scaling of about
// sqrt(n) bits, sum a short series at the bottom, and rebuild with repeated
// squaring (exp) or angle doubling (sin). ln inverts exp with a discrete
// Newton iteration whose precision doubles per level. exp of a small
// rational and arctan of a reciprocal integer are summed by exact-integer
// binary splitting. Decimal conversion splits digit blocks in halves around
// precomputed powers of ten.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mp/bigfloat.hpp"
#include "mp/bigint.hpp"
#include "mp/costs.hpp"

namespace mp {

// Default argument domains. exp accepts [-kExpDomain, kExpDomain]; ln
// accepts [2^-kLnDomainLog2, 2^kLnDomainLog2]. Near ln(1) and sin(0) the
// error contract is absolute rather than relative.
inline constexpr std::int64_t kExpDomain = 8;
inline constexpr std::int64_t kLnDomainLog2 = 8;

BigFloat exp(const BigFloat& x, Precision p, CostLedger* ledger = nullptr);
BigFloat ln(const BigFloat& x, Precision p, CostLedger* ledger = nullptr);
BigFloat sin(const BigFloat& x, Precision p, CostLedger* ledger = nullptr);

// arctan(1/j) for integer j >= 2, by binary splitting of the alternating
// series; the truncation point keeps the first omitted term below the
// result granularity (checked on every call).
BigFloat atan_recip(std::int64_t j, Precision p, CostLedger* ledger = nullptr);

// exp(pnum/qden) for integers with pnum^2 <= qden <= 2^p.bits, by binary
// splitting; time O(M(n) log n).
BigFloat exp_rational(std::int64_t pnum, std::int64_t qden, Precision p,
                      CostLedger* ledger = nullptr);
BigFloat exp_rational(const BigInt& pnum, const BigInt& qden, Precision p,
                      CostLedger* ledger = nullptr);
// Series length the splitting uses for these arguments.
std::int64_t exp_rational_terms(double log2_ratio, std::int64_t bits);

// x in [0,1) written as sum p_i / 2^(2^i) with p_i < 2^(2^(i-1)): group i
// takes the fraction bits at positions 2^(i-1)+1 .. 2^i.
struct DyadicDecomposition {
    struct Term {
        BigInt num;               // p_i > 0
        std::int64_t den_log2;    // 2^i, i.e. q_i = 2^den_log2
    };
    std::vector<Term> terms;
};
DyadicDecomposition dyadic_decompose(const BigFloat& x, std::int64_t max_bits);

// exp on [0,1) as the product of exp(p_i/q_i) over the decomposition of
// the leading p.bits fraction bits; time O(M(n) log^2 n).
BigFloat exp_fast(const BigFloat& x, Precision p, CostLedger* ledger = nullptr);

struct EConstStats {
    std::int64_t terms = 0;
    std::int64_t squarings = 0;
};

// e two independent ways: truncated inverse-factorial sum, and the same sum
// of exp(2^-m) followed by m squarings. Both must agree; the command layer
// enforces that.
BigFloat const_e_direct(Precision p, EConstStats* stats = nullptr,
                        CostLedger* ledger = nullptr);
BigFloat const_e(Precision p, EConstStats* stats = nullptr,
                 CostLedger* ledger = nullptr);

// Smallest series length whose first omitted term 1/(K! 2^(m(K-1))) clears
// `bits` of accuracy (m = 0 gives the plain factorial sum).
std::int64_t e_series_terms(std::int64_t bits, std::int64_t m);

// pi by 16*atan(1/5) - 4*atan(1/239), and independently by
// 4*(atan(1/2) + atan(1/3)).
BigFloat const_pi(Precision p, CostLedger* ledger = nullptr);
BigFloat const_pi_alt(Precision p, CostLedger* ledger = nullptr);

// Decimal text: ['-'] digits ['.' digits] ['e' ['-'] digits], ASCII only.
// to_decimal emits exactly `digits` significant digits with no leading
// zeros, off by at most one unit in the last digit; from_decimal parses to
// relative accuracy 2^-p.bits. The two are exact inverses on canonical
// strings that fit the requested precision.
std::string to_decimal(const BigFloat& x, std::int64_t digits,
                       CostLedger* ledger = nullptr);
BigFloat from_decimal(const std::string& text, Precision p,
                      CostLedger* ledger = nullptr);

}  // namespace mp
