#include "mp/zerofind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numeric>
#include <ostream>

#include "mp/elemfun.hpp"
#include "mp/mulkernel.hpp"
#include "mp/newton.hpp"

namespace mp {

namespace {

constexpr std::int64_t kBootBits = 52;   // first scheduled level
constexpr std::int64_t kWarmBits = 80;   // bounded-precision start phase
constexpr std::int64_t kEvalGuard = 8;

BigFloat one() { return BigFloat::from_int(1); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

double bisect(const std::function<double(double)>& fn, double lo, double hi,
              const char* what) {
    double flo = fn(lo);
    double fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw convergence_error(std::string("crossovers: no sign change for ") + what);
    while (hi - lo > 1e-7) {
        double mid = 0.5 * (lo + hi);
        double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double order_secant(int k) {
    if (k < 1) throw domain_error("order_secant: k must be positive");
    double x = 1.7;
    for (int i = 0; i < 200; ++i) {
        double xk = std::pow(x, k);
        double f = xk * x - xk - 1.0;
        double df = (k + 1) * xk - k * xk / x;
        double nx = x - f / df;
        if (std::fabs(nx - x) < 1e-15) return nx;
        x = nx;
    }
    return x;
}

double order_invinterp(int k) {
    if (k < 1) throw domain_error("order_invinterp: k must be positive");
    // x^(k+1) = x^k + ... + 1; multiplying by (x-1) leaves
    // x^(k+2) - 2 x^(k+1) + 1 = 0 with the relevant root in (1, 2).
    double x = 2.0;
    for (int i = 0; i < 200; ++i) {
        double xk1 = std::pow(x, k + 1);
        double f = x * xk1 - 2.0 * xk1 + 1.0;
        double df = (k + 2) * xk1 - 2.0 * (k + 1) * xk1 / x;
        double nx = x - f / df;
        if (std::fabs(nx - x) < 1e-15) return nx;
        x = nx;
    }
    return x;
}

double order_invquad() { return order_invinterp(2); }

double sigma() { return 1.0 / order_invquad(); }

MethodConstant const_newton(int p, double alpha) {
    if (p < 1) throw domain_error("const_newton: p must be positive");
    double ratio = static_cast<double>(p + 1) / (2.0 * p);
    double c = (1.0 + p * std::pow(ratio, alpha)) / (1.0 - std::pow(2.0, -alpha));
    return {"N", static_cast<double>(p), alpha, c};
}

MethodConstant const_newton_opt(double alpha) {
    int pmax = static_cast<int>(std::ceil(alpha)) + 2;
    MethodConstant best = const_newton(1, alpha);
    for (int p = 2; p <= pmax; ++p) {
        MethodConstant c = const_newton(p, alpha);
        if (c.value < best.value) best = c;
    }
    return best;
}

MethodConstant const_secant(int k, double alpha) {
    double p = order_secant(k);
    double c = (1.0 - std::pow(p, -static_cast<double>(k) * alpha) +
                std::pow(2.0 * std::pow(p, -(k + 1.0)), alpha)) /
               (1.0 - std::pow(p, -alpha));
    return {"S", static_cast<double>(k), alpha, c};
}

MethodConstant const_secant_opt(double alpha) {
    MethodConstant c1 = const_secant(1, alpha);
    MethodConstant c2 = const_secant(2, alpha);
    return c1.value <= c2.value ? c1 : c2;
}

MethodConstant const_invquad(double alpha) {
    double s = sigma();
    double c = 1.0 + std::pow(1.0 - s + s * s, alpha) +
               std::pow(3.0 * s * s * s, alpha) / (1.0 - std::pow(s, alpha));
    return {"Q", 0.0, alpha, c};
}

std::vector<double> invinterp_ladder(double mu, std::size_t count) {
    std::vector<double> s;
    s.reserve(count);
    s.push_back(1.0);
    double mupow = mu;  // mu^j
    for (std::size_t j = 1; j < count; ++j) {
        mupow *= mu;  // now mu^(j+1)
        double direct = 1.0 + static_cast<double>(j) * mupow -
                        mu * (1.0 - mupow / mu) / (1.0 - mu);
        s.push_back(std::max(mu * s.back(), direct));
    }
    return s;
}

MethodConstant const_invinterp(double mu, double alpha) {
    if (!(mu >= 0.5) || !(mu < 1.0))
        throw domain_error("const_invinterp: mu must lie in [1/2, 1)");
    double total = 1.0;  // s_0 = 1
    double s = 1.0;
    double mupow = mu;
    int settled = 0;
    for (std::int64_t j = 1; j < 400000; ++j) {
        mupow *= mu;
        double direct = 1.0 + static_cast<double>(j) * mupow -
                        mu * (1.0 - mupow / mu) / (1.0 - mu);
        s = std::max(mu * s, direct);
        double term = std::pow(s, alpha);
        total += term;
        // Once terms sit below 1e-12 the mu-geometric tail is under 1e-10
        // for any mu up to 0.99.
        if (term < 1e-12) {
            if (++settled > 4) return {"I", mu, alpha, total};
        } else {
            settled = 0;
        }
    }
    throw convergence_error("const_invinterp: series did not settle");
}

MethodConstant const_invinterp_opt(double alpha) {
    auto value = [&](double mu) { return const_invinterp(mu, alpha).value; };

    double best_mu = 0.5;
    double best = value(0.5);
    for (int i = 1; i <= 90; ++i) {
        double mu = 0.5 + 0.005 * i;
        double v = value(mu);
        if (v < best) {
            best = v;
            best_mu = mu;
        }
    }
    // Golden-section refinement inside the bracketing grid cell.
    const double gr = 0.6180339887498949;
    double lo = std::max(0.5, best_mu - 0.005);
    double hi = std::min(0.995, best_mu + 0.005);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = value(a), fb = value(b);
    while (hi - lo > 1e-6) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = value(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = value(b);
        }
    }
    double mu = 0.5 * (lo + hi);
    double v = value(mu);
    // The minimum often sits exactly on the derivative kink at mu = sigma;
    // probe it and the left endpoint explicitly.
    for (double cand : {sigma(), 0.5}) {
        double cv = value(cand);
        if (cv < v) {
            v = cv;
            mu = cand;
        }
    }
    return {"I", mu, alpha, v};
}

std::vector<Crossover> crossovers() {
    auto cs = [](double a) { return const_secant_opt(a).value; };
    auto cn = [](double a) { return const_newton_opt(a).value; };
    auto cq = [](double a) { return const_invquad(a).value; };
    auto ci = [](double a) { return const_invinterp_opt(a).value; };

    std::vector<Crossover> out;
    out.push_back({"secant_k1_vs_k2",
                   bisect([](double a) { return const_secant(1, a).value -
                                                const_secant(2, a).value; },
                          3.0, 6.0, "secant k")});
    out.push_back({"secant_vs_newton",
                   bisect([&](double a) { return cs(a) - cn(a); }, 6.0, 10.0,
                          "secant vs newton")});
    out.push_back({"invquad_vs_secant2",
                   bisect([](double a) { return const_invquad(a).value -
                                                const_secant(2, a).value; },
                          4.0, 6.0, "invquad vs secant2")});
    out.push_back({"invquad_vs_newton",
                   bisect([&](double a) { return cq(a) - cn(a); }, 6.0, 8.0,
                          "invquad vs newton")});
    out.push_back({"invinterp_vs_secant",
                   bisect([&](double a) { return ci(a) - cs(a); }, 4.61, 6.0,
                          "invinterp vs secant")});
    // Below the boundary, sigma is the minimum of C_I in mu and the left
    // slope there is negative; the boundary is where it reaches zero.
    out.push_back({"invinterp_mu_leaves_sigma",
                   bisect(
                       [](double a) {
                           double s = sigma();
                           double d = 1e-6;
                           return (const_invinterp(s, a).value -
                                   const_invinterp(s - d, a).value) /
                                  d;
                       },
                       4.0, 5.0, "mu boundary")});
    return out;
}

std::vector<double> default_table_alphas() {
    return {1.0, 1.1, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 15.0, 20.0};
}

std::vector<ConstantRow> table81(const std::vector<double>& alphas) {
    static const char* names[6] = {"C_N", "C_S1", "C_S2", "C_Q", "C_I", "C_Ihalf"};
    std::vector<ConstantRow> rows;
    for (double a : alphas) {
        ConstantRow r;
        r.alpha = a;
        r.cn = const_newton_opt(a).value;
        r.cs1 = const_secant(1, a).value;
        r.cs2 = const_secant(2, a).value;
        r.cq = const_invquad(a).value;
        r.ci = const_invinterp_opt(a).value;
        r.ci_half = const_invinterp(0.5, a).value;
        double vals[6] = {r.cn, r.cs1, r.cs2, r.cq, r.ci, r.ci_half};
        double lowest = *std::min_element(vals, vals + 6);
        for (int i = 0; i < 6; ++i) {
            if (vals[i] <= lowest + 1e-5) {  // leftmost of the tied minima
                r.best = names[i];
                break;
            }
        }
        rows.push_back(r);
    }
    return rows;
}

void write_table81_csv(std::ostream& os, const std::vector<ConstantRow>& rows) {
    os << "alpha,C_N,C_S1,C_S2,C_Q,C_I,C_Ihalf,best\n";
    char buf[160];
    for (const ConstantRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%g", r.alpha);
        std::string a = buf;
        if (a.find('.') == std::string::npos && a.find('e') == std::string::npos)
            a += ".0";
        std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%s",
                      a.c_str(), r.cn, r.cs1, r.cs2, r.cq, r.ci, r.ci_half,
                      r.best.c_str());
        os << buf << '\n';
    }
}

// ---- built-in problems ----

namespace {

MpFunction wrap_eval(
    std::function<BigFloat(const BigFloat&, Precision)> fn) {
    MpFunction f;
    f.eval = [fn = std::move(fn)](const BigFloat& x, std::int64_t bits,
                                  CostLedger* lg) {
        if (lg) lg->charge(OpClass::Eval, bits);
        return fn(round_to_bits(x, bits + 12), Precision(bits + 8, 8));
    };
    return f;
}

}  // namespace

std::vector<std::string> problem_names() {
    return {"sq2", "cube2", "exp2", "sinhalf"};
}

ZeroProblem problem_by_name(const std::string& name) {
    auto bfd = [](double v) { return BigFloat::from_double(v); };
    if (name == "sq2") {
        MpFunction f = wrap_eval([](const BigFloat& x, Precision pw) {
            return sub(square(x, pw), BigFloat::from_int(2), pw);
        });
        return {f, {bfd(1.5), bfd(1.40), bfd(1.42)}};
    }
    if (name == "cube2") {
        MpFunction f = wrap_eval([](const BigFloat& x, Precision pw) {
            return sub(mul(square(x, pw), x, pw), BigFloat::from_int(2), pw);
        });
        return {f, {bfd(1.3), bfd(1.25), bfd(1.26)}};
    }
    if (name == "exp2") {
        MpFunction f = wrap_eval([](const BigFloat& x, Precision pw) {
            return sub(exp(x, pw), BigFloat::from_int(2), pw);
        });
        return {f, {bfd(0.7), bfd(0.68), bfd(0.695)}};
    }
    if (name == "sinhalf") {
        MpFunction f = wrap_eval([](const BigFloat& x, Precision pw) {
            return sub(sin(x, pw), BigFloat::from_double(0.5), pw);
        });
        return {f, {bfd(0.5), bfd(0.53), bfd(0.52)}};
    }
    throw config_error("unknown problem: " + name);
}

// ---- solvers ----

namespace {

struct Recorder {
    const MpFunction& f;
    CostLedger* ledger;
    ZeroResult* out;

    BigFloat eval(const BigFloat& x, std::int64_t bits) {
        if (out) out->eval_bits.push_back(bits);
        return f.eval(x, bits, ledger);
    }
};

struct Point {
    BigFloat x;
    BigFloat fv;
    std::int64_t fbits = 0;
};

// Coefficients c_j of the derivative at the center node m of the Lagrange
// polynomial through p+1 nodes spaced h: f'(x) ~ (1/h) sum_j c_j f(t_j).
std::pair<std::int64_t, std::int64_t> lagrange_deriv_coeff(int p, int m, int j) {
    if (j != m) {
        std::int64_t num = 1, den = 1;
        for (int i = 0; i <= p; ++i) {
            if (i == j) continue;
            if (i != m) num *= (m - i);
            den *= (j - i);
        }
        return {num, den};
    }
    std::int64_t num = 0, den = 1;  // sum of 1/(m - i)
    for (int i = 0; i <= p; ++i) {
        if (i == m) continue;
        num = num * (m - i) + den;
        den *= (m - i);
        std::int64_t g = std::gcd(std::abs(num), std::abs(den));
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    return {num, den};
}

// Bounded-precision secant warmup. The basin test is two consecutive
// contractions of the step; after that the iteration continues at the warm
// precision until it plateaus, so the returned points carry more correct
// bits than the first scheduled level and the variable-precision phase
// starts with slack rather than a deficit it would inherit forever.
std::vector<Point> secant_warmup(Recorder& rec, std::vector<BigFloat> starts,
                                 std::size_t need) {
    if (starts.empty()) throw config_error("zerofind: no starting points");
    if (starts.size() == 1)
        starts.push_back(add(starts[0], shift2(one(), -8), Precision(kWarmBits)));
    Precision pw(kWarmBits, 8);
    std::vector<Point> pts;
    pts.reserve(starts.size() + 130);
    for (const BigFloat& s : starts)
        pts.push_back({s, rec.eval(s, kWarmBits + kEvalGuard), kWarmBits});

    int contractions = 0;
    int settles = 0;
    for (int it = 0;; ++it) {
        if (it > 120) throw convergence_error("zerofind: no basin found");
        Point& a = pts[pts.size() - 1];
        Point& b = pts[pts.size() - 2];
        BigFloat den = sub(a.fv, b.fv, pw);
        if (den.is_zero()) {
            // One precision bump before giving up on a flat pair.
            a.fv = rec.eval(a.x, 2 * kWarmBits);
            b.fv = rec.eval(b.x, 2 * kWarmBits);
            den = sub(a.fv, b.fv, Precision(2 * kWarmBits, 8));
            if (den.is_zero())
                throw degeneracy_error("zerofind: flat start configuration");
        }
        BigFloat corr = div(mul(a.fv, sub(a.x, b.x, pw), pw), den, pw);
        BigFloat nx = sub(a.x, corr, pw);
        BigFloat prev_gap = abs(sub(a.x, b.x, pw));
        bool exact_hit = corr.is_zero();
        bool settled =
            exact_hit || corr.exponent() < nx.exponent() - (kWarmBits - 12);
        if (settled) {
            ++settles;
        } else {
            settles = 0;
            if (cmp(abs(corr), prev_gap) < 0)
                ++contractions;
            else
                contractions = 0;
        }
        pts.push_back({nx, rec.eval(nx, kWarmBits + kEvalGuard), kWarmBits});
        if (exact_hit || (settled && (contractions >= 2 || settles >= 2))) {
            // Drop the plateau point just pushed: it nearly coincides with
            // its predecessor, and near-duplicate nodes make the divided
            // differences downstream hopelessly ill-conditioned. The
            // trajectory points before it are geometrically spread.
            if (pts.size() > 2) pts.pop_back();
            break;
        }
    }
    // Wide interpolation windows can want more history than the iteration
    // produced before settling; extend it with exact power-of-two offsets
    // from the best point, worst first, which gives distinct nodes with a
    // clean geometric error pattern.
    while (pts.size() < need) {
        const Point& best = pts.back();
        std::int64_t off = 8 + 4 * static_cast<std::int64_t>(need - pts.size());
        BigFloat x = add(best.x, shift2(one(), best.x.exponent() - off),
                         Precision(kWarmBits, 8));
        pts.insert(pts.begin(), {x, rec.eval(x, kWarmBits + kEvalGuard), kWarmBits});
    }
    return std::vector<Point>(pts.end() - static_cast<std::ptrdiff_t>(need),
                              pts.end());
}

}  // namespace

BigFloat solve_newton(const MpFunction& f, const BigFloat& x0, Precision p,
                      int points, CostLedger* ledger, ZeroResult* out) {
    if (points < 1 || points > 12)
        throw config_error("solve_newton: point count must be in [1, 12]");
    Recorder rec{f, ledger, out};
    const std::int64_t full = p.bits + 6;

    // One step at target precision b: the residual at b, p derivative
    // samples at b(1+1/p)/2, step length 2^-ceil(b/2p).
    auto step = [&](const BigFloat& x, std::int64_t b) {
        std::int64_t hbits = std::max<std::int64_t>(8, ceil_div(b, 2 * points));
        BigFloat h = shift2(one(), -hbits);
        std::int64_t side = ceil_div(b * (points + 1), 2 * points);
        Precision pg(side + 16, 8);
        int m = points / 2;

        BigFloat fx = rec.eval(x, b + kEvalGuard);
        BigFloat acc;
        for (int j = 0; j <= points; ++j) {
            auto [num, den] = lagrange_deriv_coeff(points, m, j);
            if (num == 0) continue;
            BigFloat fj = j == m ? fx
                                 : rec.eval(add(x, mul_word(h, j - m, pg), pg),
                                            side + kEvalGuard);
            acc = add(acc, div_word(mul_word(fj, num, pg), den, pg), pg);
        }
        BigFloat slope = shift2(acc, hbits);
        if (slope.is_zero())
            throw degeneracy_error("solve_newton: derivative estimate vanished");
        BigFloat corr = div(fx, slope, Precision(ceil_div(b, 2) + 16, 8));
        return sub(x, corr, Precision(b + 8, 8));
    };

    // Bounded-precision phase: the basin test is two consecutive
    // contractions of the step length, then iterate to the warm plateau so
    // the schedule starts with spare correct bits.
    BigFloat x = x0;
    {
        BigFloat prev;
        int contractions = 0;
        int settles = 0;
        for (int it = 0;; ++it) {
            if (it > 80) throw convergence_error("solve_newton: no basin found");
            BigFloat nx = step(x, kWarmBits);
            BigFloat d = abs(sub(nx, x, Precision(kWarmBits)));
            x = nx;
            if (d.is_zero()) break;
            bool settled = d.exponent() < x.exponent() - (kWarmBits - 12);
            if (settled) {
                if (contractions >= 2 || ++settles >= 2) break;
            } else {
                settles = 0;
                if (!prev.is_zero() && cmp(d, prev) < 0)
                    ++contractions;
                else
                    contractions = 0;
            }
            prev = d;
        }
    }

    for (std::int64_t b : precision_schedule(full, 2, kBootBits).levels) {
        BigFloat nx = step(x, b);
        BigFloat d = sub(nx, x, Precision(64, 8));
        // A scheduled step that moves the iterate by more than a sliver of
        // its own magnitude is not converging quadratically.
        if (!d.is_zero() && d.exponent() > nx.exponent() - b / 4)
            throw convergence_error("solve_newton: iteration left the basin");
        x = nx;
        if (out) out->steps.push_back({b, x});
    }
    x = round_to_bits(x, p.bits + 4);
    if (out) out->root = x;
    return x;
}

BigFloat solve_secant(const MpFunction& f, const BigFloat& x0, const BigFloat& x1,
                      Precision p, int k, CostLedger* ledger, ZeroResult* out) {
    if (k < 1 || k > 8) throw config_error("solve_secant: k must be in [1, 8]");
    Recorder rec{f, ledger, out};
    double pk = order_secant(k);
    double pk_k1 = std::pow(pk, k + 1);
    const std::int64_t full = p.bits + 6;
    std::vector<std::int64_t> targets =
        precision_schedule_ratio(full, pk, kBootBits).levels;

    // Evaluation precisions: a new point consolidates its immediate use at
    // the step target with its reuse k steps later; the old point of a
    // step needs only the residual scale 2b/p^(k+1).
    auto newest_bits = [&](std::size_t t) {
        std::int64_t m = targets[t];
        if (t + k < targets.size())
            m = std::max(m, static_cast<std::int64_t>(std::ceil(
                                2.0 * static_cast<double>(targets[t + k]) / pk_k1)) +
                                2);
        return m;
    };
    auto old_bits = [&](std::size_t t) {
        return static_cast<std::int64_t>(std::ceil(
                   2.0 * static_cast<double>(targets[t]) / pk_k1)) +
               2;
    };

    std::vector<Point> boot =
        secant_warmup(rec, {x0, x1}, static_cast<std::size_t>(k) + 1);
    std::deque<Point> hist(boot.begin(), boot.end());
    auto ensure = [&](Point& pt, std::int64_t bits) {
        if (pt.fbits >= bits) return;
        pt.fv = rec.eval(pt.x, bits + kEvalGuard);
        pt.fbits = bits;
    };

    bool converged_early = false;
    for (std::size_t t = 0; t < targets.size() && !converged_early; ++t) {
        std::int64_t b = targets[t];
        // Wide enough to preserve any accuracy surplus the warmup phase
        // handed the early iterates; otherwise truncation can clone the
        // plateau point into the window.
        Precision pw(b + kWarmBits + 32, 8);
        int degenerate_rounds = 0;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 5)
                throw degeneracy_error("solve_secant: equal function values");
            Point& newest = hist.back();
            Point& old = hist[hist.size() - 1 - static_cast<std::size_t>(k)];
            ensure(newest, newest_bits(t));
            ensure(old, old_bits(t));
            BigFloat den = sub(newest.fv, old.fv, pw);
            if (den.is_zero()) {
                // Residuals that collide at the final precision mean the
                // newest point already is the root to the requested bits.
                if (newest.fbits >= full && newest.fv.is_zero()) {
                    converged_early = true;
                    break;
                }
                if (++degenerate_rounds > 1)
                    throw degeneracy_error("solve_secant: equal function values");
                ensure(newest, 2 * newest.fbits);
                ensure(old, 2 * old.fbits);
                continue;
            }
            // Boundary guard, exactly as in the interpolation driver: a
            // point much closer to the root than the schedule assumes
            // amplifies its own evaluation noise through the divided
            // difference; refresh it before stepping.
            bool redo = false;
            std::int64_t sens_new = old.fv.exponent() - den.exponent();
            std::int64_t sens_old = newest.fv.exponent() - den.exponent();
            if (b + sens_new > newest.fbits + newest.fbits / 16 + 16) {
                ensure(newest, b + sens_new + 20);
                redo = true;
            }
            if (b + sens_old > old.fbits + old.fbits / 16 + 16) {
                ensure(old, b + sens_old + 20);
                redo = true;
            }
            if (redo) continue;

            BigFloat num = mul(newest.fv, sub(newest.x, old.x, pw), pw);
            BigFloat nx = sub(newest.x, div(num, den, pw), pw);
            BigFloat move = sub(nx, newest.x, Precision(64, 8));
            if (!move.is_zero() && move.exponent() > nx.exponent() - b / 4)
                throw convergence_error("solve_secant: iteration left the basin");
            // A zero correction means the residual vanished at this
            // level's evaluation precision; pushing the same node would
            // fabricate a coincident pair, so carry the point forward and
            // let the next level's sharper residual move it.
            if (nx != newest.x) hist.push_back({nx, BigFloat(), 0});
            break;
        }
        while (hist.size() > static_cast<std::size_t>(k) + 1) hist.pop_front();
        // The recorded step is the level's scheduled output; the window
        // keeps the full-precision iterate for conditioning.
        if (out) out->steps.push_back({b, round_to_bits(hist.back().x, b + 8)});
    }
    BigFloat root = round_to_bits(hist.back().x, p.bits + 4);
    if (out) out->root = root;
    return root;
}

BigFloat solve_invinterp(const MpFunction& f, const std::vector<BigFloat>& starts,
                         Precision p, double mu, CostLedger* ledger,
                         ZeroResult* out) {
    if (!(mu >= 0.5) || !(mu < 1.0))
        throw domain_error("solve_invinterp: mu must lie in [1/2, 1)");
    Recorder rec{f, ledger, out};
    double order = 1.0 / mu;

    // Enough interpolation points that the method's own order reaches
    // 1/mu; the evaluation ladder then caps it there. mu = 1/2 saturates
    // the window.
    int k = 1;
    while (k < 24 && order_invinterp(k) < order - 1e-9) ++k;
    const std::size_t window = static_cast<std::size_t>(k) + 1;

    const std::int64_t full = p.bits + 6;
    std::vector<std::int64_t> targets =
        precision_schedule_ratio(full, order, kBootBits).levels;
    const std::size_t levels = targets.size();
    std::vector<double> ladder = invinterp_ladder(mu, levels + window + 2);

    // The point d steps behind the newest at step t was created at step
    // t-1-d and carries the ladder precision of that slot.
    auto required = [&](std::size_t t, std::size_t d) {
        std::size_t idx = levels - 1 - t + d;
        double frac = idx < ladder.size() ? ladder[idx] : ladder.back();
        std::int64_t bits = static_cast<std::int64_t>(
                                std::ceil(frac * static_cast<double>(full))) +
                            2;
        return std::max<std::int64_t>(bits, 16);
    };

    std::vector<Point> boot = secant_warmup(rec, starts, window);
    std::deque<Point> hist(boot.begin(), boot.end());
    auto ensure = [&](Point& pt, std::int64_t bits) {
        if (pt.fbits >= bits) return;
        pt.fv = rec.eval(pt.x, bits + kEvalGuard);
        pt.fbits = bits;
    };

    for (std::size_t t = 0; t < levels; ++t) {
        std::int64_t b = targets[t];
        Precision pw(b + kWarmBits + 32, 8);
        if (hist.back().fbits >= full && hist.back().fv.is_zero()) break;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 4)
                throw degeneracy_error("solve_invinterp: coincident ordinates");
            for (std::size_t d = 0; d < window; ++d)
                ensure(hist[hist.size() - 1 - d], required(t, d));

            // The ladder precisions assume the steady geometric error
            // pattern. Near the warmup boundary a point can sit closer to
            // the root than that pattern allows, shrinking the divided
            // differences under it and amplifying its own evaluation
            // noise; raise such a point's precision until the amplified
            // noise clears the step target. In steady state this loop
            // never fires.
            bool degenerate = false;
            bool redo = false;
            for (std::size_t j = 0; j < window && !degenerate; ++j) {
                Point& pj = hist[hist.size() - 1 - j];
                std::int64_t log2sens = 0;
                for (std::size_t l = 0; l < window; ++l) {
                    if (l == j) continue;
                    const Point& pl = hist[hist.size() - 1 - l];
                    BigFloat diff = sub(pl.fv, pj.fv, pw);
                    if (diff.is_zero() || pl.fv.is_zero()) {
                        degenerate = true;
                        break;
                    }
                    log2sens += pl.fv.exponent() - diff.exponent();
                }
                if (degenerate) break;
                // The ladder already prices the steady-state pattern, and
                // actual trajectories wobble a few dozen bits around it;
                // re-evaluate only on the gross shortfalls of the warmup
                // boundary, not on steady-state jitter.
                if (b + log2sens > pj.fbits + pj.fbits / 16 + 16) {
                    ensure(pj, b + log2sens + 20);
                    redo = true;
                }
            }
            if (degenerate) {
                for (std::size_t d = 0; d < window; ++d) {
                    Point& pt = hist[hist.size() - 1 - d];
                    ensure(pt, 2 * pt.fbits);
                }
                continue;
            }
            if (redo) continue;

            // Inverse interpolation through the window, evaluated at zero.
            BigFloat next;
            for (std::size_t j = 0; j < window; ++j) {
                const Point& pj = hist[hist.size() - 1 - j];
                BigFloat num = one(), den = one();
                for (std::size_t l = 0; l < window; ++l) {
                    if (l == j) continue;
                    const Point& pl = hist[hist.size() - 1 - l];
                    num = mul(num, pl.fv, pw);
                    den = mul(den, sub(pl.fv, pj.fv, pw), pw);
                }
                next = add(next, mul(pj.x, div(num, den, pw), pw), pw);
            }
            BigFloat move = sub(next, hist.back().x, Precision(64, 8));
            if (!move.is_zero() && move.exponent() > next.exponent() - b / 4)
                throw convergence_error("solve_invinterp: iteration left the basin");
            if (next != hist.back().x) hist.push_back({next, BigFloat(), 0});
            break;
        }
        while (hist.size() > window + 1) hist.pop_front();
        if (out) out->steps.push_back({b, round_to_bits(hist.back().x, b + 8)});
    }
    BigFloat root = round_to_bits(hist.back().x, p.bits + 4);
    if (out) out->root = root;
    return root;
}

BigFloat solve_invquad(const MpFunction& f, const BigFloat& x0, const BigFloat& x1,
                       const BigFloat& x2, Precision p, CostLedger* ledger,
                       ZeroResult* out) {
    return solve_invinterp(f, {x0, x1, x2}, p, sigma(), ledger, out);
}

double estimate_order(const ZeroResult& result, const BigFloat& reference) {
    std::vector<double> logerr;
    std::vector<std::int64_t> bits;
    for (const ZeroResult::Step& s : result.steps) {
        BigFloat d = sub(s.iterate, reference, Precision(1 << 21, 2));
        if (d.is_zero()) continue;
        logerr.push_back(static_cast<double>(d.exponent()));
        bits.push_back(s.target_bits);
    }
    // Prefer deep steps, where the level constants are negligible against
    // the target bits; fall back for short traces.
    for (std::int64_t floor_bits : {200, 96, 48}) {
        std::vector<double> ratios;
        for (std::size_t i = 0; i + 1 < logerr.size(); ++i) {
            if (bits[i] < floor_bits || logerr[i] >= 0.0) continue;
            ratios.push_back(logerr[i + 1] / logerr[i]);
        }
        if (ratios.size() >= 2) {
            std::sort(ratios.begin(), ratios.end());
            return ratios[ratios.size() / 2];
        }
    }
    throw convergence_error("estimate_order: trace too short");
}

double measure_constant(const Method& method, const ZeroProblem& problem,
                        double alpha, std::int64_t n) {
    CostLedger lg;
    Precision p(n, 2);
    const std::vector<BigFloat>& s = problem.starts;
    switch (method.kind) {
        case Method::Kind::Newton:
            solve_newton(problem.f, s.at(0), p, method.points, &lg);
            break;
        case Method::Kind::Secant:
            solve_secant(problem.f, s.at(0), s.at(1), p, method.points, &lg);
            break;
        case Method::Kind::InvQuad:
            solve_invquad(problem.f, s.at(0), s.at(1), s.at(2), p, &lg);
            break;
        case Method::Kind::InvInterp:
            solve_invinterp(problem.f, s, p, method.mu, &lg);
            break;
    }
    double total = 0.0;
    for (const CostEvent& e : lg.events())
        if (e.cls == OpClass::Eval)
            total += std::pow(static_cast<double>(e.bits), alpha);
    return total / std::pow(static_cast<double>(n), alpha);
}

}  // namespace mp
