#include "mp/elemfun.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <map>

#include "mp/newton.hpp"

namespace mp {

namespace lb = limbs;

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

BigFloat one() { return BigFloat::from_int(1); }

std::int64_t isqrt64(std::int64_t n) {
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Bit of |x| with weight 2^-tau (tau >= 1: positions after the binary point).
bool value_bit(const BigFloat& x, std::int64_t tau) {
    std::int64_t scale = x.exponent() - x.precision_bits();
    return lb::test_bit(x.fraction(), -tau - scale);
}

std::int64_t floor_int64(const BigFloat& t) {
    if (t.is_zero()) return 0;
    BigFloat at = abs(t);
    BigInt ip = at.exponent() <= 0 ? BigInt() : floor_to_int(at);
    std::int64_t v = ip.to_int64();
    if (t.sgn() > 0) return v;
    bool exact = cmp(ip.to_bigfloat(), at) == 0;
    return exact ? -v : -v - 1;
}

// sin by the alternating series; |v| <= 1/2.
BigFloat sin_series(const BigFloat& v, std::int64_t w, CostLedger* ledger) {
    if (v.is_zero()) return BigFloat();
    Precision pw(w, 8);
    BigFloat v2 = square(v, pw, ledger);
    BigFloat term = v;
    BigFloat s = v;
    for (std::int64_t j = 1;; ++j) {
        term = div_word(div_word(mul(term, v2, pw, ledger), 2 * j, pw), 2 * j + 1, pw);
        if (term.is_zero()) break;
        s = (j % 2 == 1) ? sub(s, term, pw, ledger) : add(s, term, pw, ledger);
        // Alternating series: the dropped tail is below the next term.
        if (term.exponent() < s.exponent() - w - 4) break;
        if (j > 4 * w + 64) throw convergence_error("sin: series did not converge");
    }
    return s;
}

// Sign of cos(y). Only called when |cos(y)| is not tiny, so a moderate
// working precision settles the quadrant; a floor slip at a multiple of pi
// (where cos does not change sign) is harmless.
int cos_sign(const BigFloat& y, const BigFloat& pi_w, CostLedger* ledger) {
    if (y.is_zero()) return 1;
    BigFloat t = div(y, shift2(pi_w, -1), Precision(96),
                     IterationVariant::div_km, ledger);
    std::int64_t k = floor_int64(t);
    int quadrant = static_cast<int>(((k % 4) + 4) % 4);
    return (quadrant == 0 || quadrant == 3) ? 1 : -1;
}

// ---- binary splitting for atan(1/j) ----
// Over [a,b): sum_{k=a}^{b-1} (-1)^(k-a) / ((2k+1) m^(k-a))
//           = num / (m^(b-a-1) odd),  odd = prod(2k+1),  mpow = m^(b-a).
struct AtanSplit {
    BigInt num;
    BigInt odd;
    BigInt mpow;
};

AtanSplit atan_split(std::int64_t a, std::int64_t b, const BigInt& m) {
    if (b - a == 1) return {BigInt(1), BigInt(2 * a + 1), m};
    std::int64_t c = a + (b - a) / 2;
    AtanSplit l = atan_split(a, c, m);
    AtanSplit r = atan_split(c, b, m);
    BigInt t1 = mul(l.num, mul(r.mpow, r.odd));
    BigInt t2 = mul(l.odd, r.num);
    BigInt n = ((c - a) % 2 == 0) ? add(t1, t2) : sub(t1, t2);
    return {n, mul(l.odd, r.odd), mul(l.mpow, r.mpow)};
}

// ---- binary splitting for exp(p/q) ----
// Over [a,b): sum_{j=a}^{b-1} p^(j-a) / (q^(j-a) * (a+1)(a+2)...j)
//           = num / (q^(b-a-1) fact),  fact = prod_{i=a+1}^{b-1} i.
struct ExpSplit {
    BigInt num;
    BigInt fact;
    BigInt ppow;  // p^(b-a)
    BigInt qpow;  // q^(b-a)
};

ExpSplit exp_split(std::int64_t a, std::int64_t b, const BigInt& p, const BigInt& q) {
    if (b - a == 1) return {BigInt(1), BigInt(1), p, q};
    std::int64_t c = a + (b - a) / 2;
    ExpSplit l = exp_split(a, c, p, q);
    ExpSplit r = exp_split(c, b, p, q);
    BigInt t1 = mul(l.num, mul_word(mul(r.qpow, r.fact), c));
    BigInt n = add(t1, mul(l.ppow, r.num));
    BigInt f = mul_word(mul(l.fact, r.fact), c);
    return {n, f, mul(l.ppow, r.ppow), mul(l.qpow, r.qpow)};
}

BigFloat exp_rational_impl(const BigInt& pn, const BigInt& qd, std::int64_t bits,
                           CostLedger* ledger) {
    if (pn.is_zero()) return one();
    double log2r = pn.log2_approx() - qd.log2_approx();
    std::int64_t terms = exp_rational_terms(log2r, bits);
    ExpSplit s = exp_split(0, terms, pn, qd);
    BigInt den = mul(pow(qd, static_cast<std::uint64_t>(terms - 1)), s.fact);
    // Growth cap: q^(terms-1) (terms-1)! stays within twice the target bits
    // plus one extra denominator width (the top decomposition group runs
    // at q near 2^(2 bits)).
    assert(den.bit_length() <= 2 * bits + qd.bit_length() + 160);
    return div(s.num.to_bigfloat(), den.to_bigfloat(), Precision(bits, 8),
               IterationVariant::div_km, ledger);
}

// Powers of ten, grown on demand within one conversion.
BigInt& pow10(std::map<std::int64_t, BigInt>& cache, std::int64_t e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    return cache.emplace(e, pow(BigInt(10), static_cast<std::uint64_t>(e)))
        .first->second;
}

// 10^k as a float to working accuracy. Small powers are exact; past the
// working width the low bits cannot survive the final rounding anyway, so
// binary powering in float arithmetic serves (and keeps huge decimal
// exponents cheap: the exact integer would carry k log2(10) bits).
BigFloat pow10_float(std::int64_t k, Precision pw) {
    if (k <= 0) return one();
    if (static_cast<double>(k) * kLog2Of10 < static_cast<double>(pw.bits) + 64.0)
        return pow(BigInt(10), static_cast<std::uint64_t>(k)).to_bigfloat();
    BigFloat base = BigFloat::from_int(10);
    BigFloat r = one();
    int top = 63 - std::countl_zero(static_cast<std::uint64_t>(k));
    for (int bit = top; bit >= 0; --bit) {
        r = square(r, pw);
        if ((static_cast<std::uint64_t>(k) >> bit) & 1) r = mul(r, base, pw);
    }
    return r;
}

void digits_rec(const BigInt& n, std::int64_t width, bool pad,
                std::map<std::int64_t, BigInt>& cache, std::string& out) {
    if (n.bit_length() <= 59) {
        char buf[24];
        int len = std::snprintf(buf, sizeof buf, "%lld",
                                static_cast<long long>(n.to_int64()));
        if (pad)
            for (std::int64_t i = len; i < width; ++i) out.push_back('0');
        out.append(buf, static_cast<std::size_t>(len));
        return;
    }
    std::int64_t low = width / 2;
    DivMod qr = divmod(n, pow10(cache, low));
    digits_rec(qr.quot, width - low, pad, cache, out);
    digits_rec(qr.rem, low, true, cache, out);
}

std::string decimal_digits(const BigInt& n) {
    if (n.is_zero()) return "0";
    std::map<std::int64_t, BigInt> cache;
    std::int64_t width =
        static_cast<std::int64_t>(static_cast<double>(n.bit_length()) / kLog2Of10) + 2;
    std::string out;
    digits_rec(n, width, false, cache, out);
    std::size_t nz = out.find_first_not_of('0');
    return nz == std::string::npos ? "0" : out.substr(nz);
}

BigInt int_from_digits(std::string_view s, std::map<std::int64_t, BigInt>& cache) {
    if (s.size() <= 18) {
        std::int64_t v = 0;
        for (char c : s) v = v * 10 + (c - '0');
        return BigInt(v);
    }
    std::size_t low = s.size() / 2;
    BigInt hi = int_from_digits(s.substr(0, s.size() - low), cache);
    BigInt lo = int_from_digits(s.substr(s.size() - low), cache);
    return add(mul(hi, pow10(cache, static_cast<std::int64_t>(low))), lo);
}

}  // namespace

std::int64_t exp_rational_terms(double log2_ratio, std::int64_t bits) {
    // First omitted term at most 2^-bits times the argument ratio itself;
    // the spare ratio factor keeps a squared-up use of the value accurate.
    double need = static_cast<double>(bits) - log2_ratio;
    double lgfact = 0.0;
    std::int64_t t = 1;
    while (-log2_ratio * static_cast<double>(t) + lgfact < need) {
        ++t;
        lgfact += std::log2(static_cast<double>(t));
        if (t > (1 << 26)) throw convergence_error("exp_rational: series too long");
    }
    return std::max<std::int64_t>(t, 2);
}

BigFloat exp(const BigFloat& x, Precision p, CostLedger* ledger) {
    if (cmp(abs(x), BigFloat::from_int(kExpDomain)) > 0)
        throw domain_error("exp: argument outside [-8, 8]");
    if (x.is_zero()) return one();

    std::int64_t n = p.bits;
    std::int64_t q = std::max<std::int64_t>(1, isqrt64(n));
    std::int64_t w = n + q + 24;
    Precision pw(w, 8);

    // exp(|x|/2^q) - 1 from the series, then q doublings of v via
    // (1+v)^2 - 1 = 2v + v^2, which never cancels.
    BigFloat u = shift2(abs(x), -q);
    BigFloat s = u;
    BigFloat term = u;
    std::int64_t rmin = ceil_div(n, q) + 1;
    for (std::int64_t j = 2;; ++j) {
        term = div_word(mul(term, u, pw, ledger), j, pw);
        s = add(s, term, pw, ledger);
        if (j >= rmin && term.exponent() < s.exponent() - w - 4) break;
        if (j > 4 * w + 64) throw convergence_error("exp: series did not converge");
    }
    for (std::int64_t k = 0; k < q; ++k)
        s = add(shift2(s, 1), square(s, pw, ledger), pw, ledger);
    BigFloat r = add(s, one(), pw, ledger);
    if (x.sgn() < 0) r = recip(r, Precision(n + 12, 8), IterationVariant::recip2, ledger);
    return round_to(r, p);
}

BigFloat ln(const BigFloat& x, Precision p, CostLedger* ledger) {
    if (x.sgn() <= 0) throw domain_error("ln: argument must be positive");
    if (cmp(x, shift2(one(), -kLnDomainLog2)) < 0 ||
        cmp(x, shift2(one(), kLnDomainLog2)) > 0)
        throw domain_error("ln: argument outside [2^-8, 2^8]");
    if (cmp(x, one()) == 0) return BigFloat();

    std::int64_t full = p.bits + 8;
    PrecisionSchedule sched = precision_schedule(full, 2, 40);

    BigFloat::Approx ap = x.approx();
    BigFloat z = BigFloat::from_double(
        std::log(ap.fraction) + static_cast<double>(ap.exponent) * M_LN2);

    // Discrete Newton on exp(z) - x with a one-sided slope over a step of
    // 2^-ceil(level/2); both evaluations at the level's working precision.
    for (std::int64_t nj : sched.levels) {
        std::int64_t wj = nj + 10;
        Precision pj(wj, 8);
        std::int64_t hbits = ceil_div(nj, 2);
        BigFloat h = shift2(one(), -hbits);
        BigFloat e1 = exp(z, Precision(wj, 8), ledger);
        BigFloat e2 = exp(add(z, h, pj, ledger), Precision(wj, 8), ledger);
        BigFloat slope = shift2(sub(e2, e1, pj, ledger), hbits);
        BigFloat resid = sub(e1, x, pj, ledger);
        if (resid.is_zero()) break;
        BigFloat corr = div(resid, slope, Precision(hbits + 16, 8),
                            IterationVariant::div_km, ledger);
        z = sub(z, corr, pj, ledger);
    }
    return round_to(z, p);
}

BigFloat sin(const BigFloat& x, Precision p, CostLedger* ledger) {
    if (cmp(abs(x), BigFloat::from_int(kExpDomain)) > 0)
        throw domain_error("sin: argument outside [-8, 8]");
    if (x.is_zero()) return BigFloat();

    std::int64_t n = p.bits;
    std::int64_t q = std::max<std::int64_t>(1, isqrt64(n));
    std::int64_t w = n + q + 24;
    Precision pw(w, 8);

    BigFloat s = sin_series(shift2(x, -q), w, ledger);
    BigFloat pi_w = const_pi(Precision(w + 16, 8), ledger);

    for (std::int64_t k = q - 1; k >= 0; --k) {
        BigFloat y = shift2(x, -(k + 1));  // step computes sin(2y) from sin(y)
        BigFloat t = sub(one(), square(s, pw, ledger), pw, ledger);
        if (t.sgn() < 0) t = BigFloat();
        if (t.is_zero() || t.exponent() <= -16) {
            // y is near an odd multiple of pi/2, where the square root
            // would burn half the working bits in cancellation; fold to
            // the distance delta from that multiple instead:
            // sin(2y) = -sin(2 delta) since the multiple is odd.
            double yd = y.to_double();
            std::int64_t m = 2 * llround(yd / M_PI - 0.5) + 1;
            BigFloat delta =
                sub(y, mul_word(shift2(pi_w, -1), m, pw, ledger), pw, ledger);
            s = neg(sin_series(round_to_bits(shift2(delta, 1), w), w, ledger));
        } else {
            BigFloat c = sqrt(t, pw, IterationVariant::sqrt_km, ledger);
            s = shift2(mul(s, c, pw, ledger), 1);
            if (cos_sign(y, pi_w, ledger) < 0) s = neg(s);
        }
    }
    return round_to(s, p);
}

BigFloat atan_recip(std::int64_t j, Precision p, CostLedger* ledger) {
    if (j < 2) throw domain_error("atan_recip: j must be at least 2");
    if (j >= (std::int64_t{1} << 31))
        throw domain_error("atan_recip: j exceeds one word");
    std::int64_t w = p.bits + 16;
    double lg = std::log2(static_cast<double>(j));
    std::int64_t terms = static_cast<std::int64_t>(std::ceil(
                             static_cast<double>(w + 6) / (2.0 * lg))) +
                         1;
    // Alternating series: the truncation error is below the first omitted
    // term, which this count pushes under the result granularity.
    double omitted = -(2.0 * static_cast<double>(terms) + 1.0) * lg -
                     std::log2(2.0 * static_cast<double>(terms) + 1.0);
    if (omitted > -static_cast<double>(w + 6))
        throw convergence_error("atan_recip: truncation bound violated");

    BigInt m = mul(BigInt(j), BigInt(j));
    AtanSplit s = atan_split(0, terms, m);
    BigInt den = mul(mul(pow(m, static_cast<std::uint64_t>(terms - 1)), s.odd),
                     BigInt(j));
    BigFloat r = div(s.num.to_bigfloat(), den.to_bigfloat(), Precision(w, 8),
                     IterationVariant::div_km, ledger);
    return round_to(r, p);
}

BigFloat exp_rational(const BigInt& pnum, const BigInt& qden, Precision p,
                      CostLedger* ledger) {
    if (pnum.sgn() < 0 || qden.sgn() <= 0)
        throw domain_error("exp_rational: need p >= 0 and q >= 1");
    if (cmp(mul(pnum, pnum), qden) > 0)
        throw domain_error("exp_rational: requires p^2 <= q");
    if (qden.bit_length() > p.bits + 1)
        throw domain_error("exp_rational: q exceeds 2^n");
    if (pnum.is_zero()) return one();
    return round_to(exp_rational_impl(pnum, qden, p.bits + 8, ledger), p);
}

BigFloat exp_rational(std::int64_t pnum, std::int64_t qden, Precision p,
                      CostLedger* ledger) {
    return exp_rational(BigInt(pnum), BigInt(qden), p, ledger);
}

DyadicDecomposition dyadic_decompose(const BigFloat& x, std::int64_t max_bits) {
    DyadicDecomposition d;
    if (x.is_zero()) return d;
    // Lowest representable position of x after the point.
    std::int64_t deepest = x.precision_bits() - x.exponent();
    std::int64_t limit = std::min(max_bits, deepest);
    for (std::int64_t i = 0;; ++i) {
        std::int64_t width = std::int64_t{1} << i;      // 2^i
        std::int64_t lo = i == 0 ? 1 : width / 2 + 1;   // first bit position
        if (lo > limit) break;
        std::int64_t hi = std::min(width, limit);
        lb::Vec bits(static_cast<std::size_t>((width - lo) / 32 + 1), 0);
        for (std::int64_t tau = lo; tau <= hi; ++tau) {
            if (!value_bit(x, tau)) continue;
            std::int64_t pos = width - tau;  // weight inside p_i / 2^(2^i)
            bits[static_cast<std::size_t>(pos / 32)] |= lb::Limb{1} << (pos % 32);
        }
        BigInt num = BigInt::from_limbs(1, bits);
        if (!num.is_zero()) d.terms.push_back({num, width});
        if (i > 40) throw range_error("dyadic_decompose: fraction too deep");
    }
    return d;
}

BigFloat exp_fast(const BigFloat& x, Precision p, CostLedger* ledger) {
    if (x.sgn() < 0 || cmp(x, one()) >= 0)
        throw domain_error("exp_fast: argument must lie in [0, 1)");
    if (x.is_zero()) return one();
    std::int64_t w = p.bits + 24;
    DyadicDecomposition d = dyadic_decompose(x, p.bits + 8);
    BigFloat r = one();
    for (const DyadicDecomposition::Term& t : d.terms) {
        BigFloat f = exp_rational_impl(t.num, shift_left(BigInt(1), t.den_log2),
                                       w, ledger);
        r = mul(r, f, Precision(w, 8), ledger);
    }
    return round_to(r, p);
}

std::int64_t e_series_terms(std::int64_t bits, std::int64_t m) {
    double lgfact = 0.0;
    std::int64_t k = 1;
    while (lgfact + static_cast<double>(m) * static_cast<double>(k - 1) <
           static_cast<double>(bits)) {
        ++k;
        lgfact += std::log2(static_cast<double>(k));
        if (k > (1 << 26)) throw convergence_error("e series too long");
    }
    return k;
}

BigFloat const_e_direct(Precision p, EConstStats* stats, CostLedger* ledger) {
    std::int64_t n = p.bits;
    std::int64_t terms = e_series_terms(n + 10, 0);
    std::int64_t w =
        n + 2 * static_cast<std::int64_t>(std::log2(static_cast<double>(terms + 2))) +
        12;
    Precision pw(w, 8);
    BigFloat s = one();
    BigFloat term = one();
    for (std::int64_t j = 1; j < terms; ++j) {
        term = div_word(term, j, pw);
        s = add(s, term, pw, ledger);
    }
    if (stats) *stats = {terms, 0};
    return round_to(s, p);
}

BigFloat const_e(Precision p, EConstStats* stats, CostLedger* ledger) {
    std::int64_t n = p.bits;
    std::int64_t m = std::max<std::int64_t>(1, isqrt64(n));
    std::int64_t terms = e_series_terms(n + 10, m);
    Precision pw(n + m + 16, 8);
    BigFloat s = one();
    BigFloat term = one();
    for (std::int64_t j = 1; j < terms; ++j) {
        term = shift2(div_word(term, j, pw), -m);
        s = add(s, term, pw, ledger);
    }
    for (std::int64_t i = 0; i < m; ++i) s = square(s, pw, ledger);
    if (stats) *stats = {terms, m};
    return round_to(s, p);
}

BigFloat const_pi(Precision p, CostLedger* ledger) {
    Precision pw(p.bits + 12, 8);
    BigFloat a5 = atan_recip(5, pw, ledger);
    BigFloat a239 = atan_recip(239, pw, ledger);
    BigFloat r = sub(mul_word(a5, 16, pw), mul_word(a239, 4, pw), pw, ledger);
    return round_to(r, p);
}

BigFloat const_pi_alt(Precision p, CostLedger* ledger) {
    Precision pw(p.bits + 12, 8);
    BigFloat r = add(atan_recip(2, pw, ledger), atan_recip(3, pw, ledger), pw, ledger);
    return round_to(mul_word(r, 4, pw), p);
}

std::string to_decimal(const BigFloat& x, std::int64_t digits, CostLedger* ledger) {
    if (digits < 1) throw domain_error("to_decimal: need at least one digit");
    if (x.is_zero()) return "0." + std::string(static_cast<std::size_t>(digits), '0');

    BigFloat ax = abs(x);
    std::int64_t w =
        static_cast<std::int64_t>(static_cast<double>(digits) * kLog2Of10) + 96;
    Precision pw(w, 8);
    BigFloat::Approx ap = ax.approx();
    std::int64_t e10 = static_cast<std::int64_t>(std::floor(
        static_cast<double>(ap.exponent) * std::log10(2.0) + std::log10(ap.fraction)));

    std::string body;
    std::map<std::int64_t, BigInt> cache;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 4) throw error("to_decimal: digit-count estimate unstable");
        std::int64_t k = digits - 1 - e10;
        BigFloat y;
        if (k >= 0)
            y = mul(ax, pow10_float(k, pw), pw, ledger);
        else
            y = div(ax, pow10_float(-k, pw), pw, IterationVariant::div_km, ledger);
        // Truncate the value, not the rounding noise: a value that is an
        // exact decimal lands a hair under its integer after the division
        // above, so nudge by far less than one last-place unit first.
        y = add(y, shift2(one(), -32), pw);
        body = decimal_digits(floor_to_int(y));
        if (static_cast<std::int64_t>(body.size()) == digits) break;
        e10 += static_cast<std::int64_t>(body.size()) - digits;
    }

    std::string out;
    if (x.sgn() < 0) out.push_back('-');
    if (e10 >= 0 && e10 < digits) {
        out.append(body, 0, static_cast<std::size_t>(e10 + 1));
        if (e10 + 1 < digits) {
            out.push_back('.');
            out.append(body, static_cast<std::size_t>(e10 + 1), std::string::npos);
        }
    } else if (e10 < 0 && e10 > -7) {
        out += "0.";
        out.append(static_cast<std::size_t>(-1 - e10), '0');
        out += body;
    } else {
        out.push_back(body[0]);
        if (digits > 1) {
            out.push_back('.');
            out.append(body, 1, std::string::npos);
        }
        out.push_back('e');
        out += std::to_string(e10);
    }
    return out;
}

BigFloat from_decimal(const std::string& text, Precision p, CostLedger* ledger) {
    std::size_t i = 0;
    const std::size_t len = text.size();
    auto fail = [&]() -> void { throw parse_error("from_decimal: malformed number"); };

    bool negative = false;
    if (i < len && text[i] == '-') {
        negative = true;
        ++i;
    }
    std::string intpart, fracpart;
    while (i < len && text[i] >= '0' && text[i] <= '9') intpart.push_back(text[i++]);
    if (intpart.empty()) fail();
    if (i < len && text[i] == '.') {
        ++i;
        while (i < len && text[i] >= '0' && text[i] <= '9')
            fracpart.push_back(text[i++]);
        if (fracpart.empty()) fail();
    }
    std::int64_t exp10 = 0;
    if (i < len && text[i] == 'e') {
        ++i;
        bool eneg = false;
        if (i < len && text[i] == '-') {
            eneg = true;
            ++i;
        }
        if (i >= len || text[i] < '0' || text[i] > '9') fail();
        while (i < len && text[i] >= '0' && text[i] <= '9') {
            exp10 = exp10 * 10 + (text[i++] - '0');
            if (exp10 > 600'000'000)
                throw range_error("from_decimal: exponent too large");
        }
        if (eneg) exp10 = -exp10;
    }
    if (i != len) fail();

    std::map<std::int64_t, BigInt> cache;
    BigInt n = int_from_digits(intpart + fracpart, cache);
    if (n.is_zero()) return BigFloat();
    std::int64_t scale = exp10 - static_cast<std::int64_t>(fracpart.size());

    Precision pw(p.working() + 8, 8);
    BigFloat r;
    if (scale >= 0) {
        r = mul(n.to_bigfloat(), pow10_float(scale, pw), pw, ledger);
    } else {
        r = div(n.to_bigfloat(), pow10_float(-scale, pw), pw,
                IterationVariant::div_km, ledger);
        // The division truncates, so a quotient that is exactly
        // representable can land one working-precision ulp low; nudging up
        // by less than the final granularity restores those cases.
        BigFloat nudge = shift2(one(), r.exponent() - pw.bits + 4);
        r = r.sgn() < 0 ? sub(r, nudge, pw) : add(r, nudge, pw);
    }
    if (negative) r = neg(r);
    return round_to(r, p);
}

}  // namespace mp
