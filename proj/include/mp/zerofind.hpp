// Variable-precision zero finding.
//
// Each method drives its iterates along a geometric precision schedule and
// evaluates f only as accurately as the step it feeds: a discrete Newton
// step uses one full-precision residual plus cheaper derivative samples,
// the secant and inverse-interpolation families evaluate each new point
// once at a consolidated precision covering every later reuse. The ratio
// of total evaluation cost to one evaluation at the final precision tends
// to a method constant depending on the cost exponent of the evaluator;
// the analytic side of this module computes those constants, their
// optimized versions, and the alpha values where the best method changes.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mp/bigfloat.hpp"
#include "mp/costs.hpp"

namespace mp {

// Black-box evaluator: f(x) with absolute error at most 2^-bits, charging
// one Eval event at `bits` to the ledger when one is supplied. `alpha` is
// the declared cost exponent used when simulating evaluation cost.
struct MpFunction {
    std::function<BigFloat(const BigFloat& x, std::int64_t bits, CostLedger*)> eval;
    double alpha = 1.0;
};

// An asymptotic method constant C(alpha) together with what produced it.
struct MethodConstant {
    std::string method;  // "N", "S", "Q", "I"
    double param;        // p, k, or mu; 0 when not applicable
    double alpha;
    double value;
};

// Orders of the interpolation-based methods (12+ correct decimals).
double order_secant(int k);        // positive root of x^(k+1) = x^k + 1
double order_invquad();            // positive root of x^3 = x^2 + x + 1
double sigma();                    // 1 / order_invquad()
double order_invinterp(int k);     // root of x^(k+1) = x^k + ... + x + 1

MethodConstant const_newton(int p, double alpha);
MethodConstant const_newton_opt(double alpha);
MethodConstant const_secant(int k, double alpha);
MethodConstant const_secant_opt(double alpha);
MethodConstant const_invquad(double alpha);
MethodConstant const_invinterp(double mu, double alpha);  // 1/2 <= mu < 1
MethodConstant const_invinterp_opt(double alpha);

// The evaluation-precision ladder of the inverse-interpolation method of
// order 1/mu: s[0] = 1 and s[j] the consolidated precision fraction of the
// point j steps behind the final one.
std::vector<double> invinterp_ladder(double mu, std::size_t count);

// Alpha values where one method overtakes another, by bisection to 1e-6.
struct Crossover {
    std::string label;
    double alpha;
};
std::vector<Crossover> crossovers();

// Constants table: the six standard columns over a list of alphas, with
// the minimal column flagged (ties resolved to the leftmost column).
struct ConstantRow {
    double alpha;
    double cn, cs1, cs2, cq, ci, ci_half;
    std::string best;
};
std::vector<double> default_table_alphas();
std::vector<ConstantRow> table81(const std::vector<double>& alphas);
// CSV: alpha,C_N,C_S1,C_S2,C_Q,C_I,C_Ihalf,best
void write_table81_csv(std::ostream& os, const std::vector<ConstantRow>& rows);

// A root-finding problem: the function plus starting points near the root.
struct ZeroProblem {
    MpFunction f;
    std::vector<BigFloat> starts;
};
std::vector<std::string> problem_names();  // sq2, cube2, exp2, sinhalf
ZeroProblem problem_by_name(const std::string& name);

// Per-step record of a solve.
struct ZeroResult {
    struct Step {
        std::int64_t target_bits;
        BigFloat iterate;
    };
    BigFloat root;
    std::vector<Step> steps;
    std::vector<std::int64_t> eval_bits;  // one entry per evaluation issued
};

BigFloat solve_newton(const MpFunction& f, const BigFloat& x0, Precision p,
                      int points = 1, CostLedger* ledger = nullptr,
                      ZeroResult* out = nullptr);
BigFloat solve_secant(const MpFunction& f, const BigFloat& x0, const BigFloat& x1,
                      Precision p, int k = 1, CostLedger* ledger = nullptr,
                      ZeroResult* out = nullptr);
BigFloat solve_invquad(const MpFunction& f, const BigFloat& x0, const BigFloat& x1,
                       const BigFloat& x2, Precision p,
                       CostLedger* ledger = nullptr, ZeroResult* out = nullptr);
BigFloat solve_invinterp(const MpFunction& f, const std::vector<BigFloat>& starts,
                         Precision p, double mu, CostLedger* ledger = nullptr,
                         ZeroResult* out = nullptr);

// Convergence order from consecutive iterate errors against a reference
// root, medianed over the settled part of the trace.
double estimate_order(const ZeroResult& result, const BigFloat& reference);

struct Method {
    enum class Kind { Newton, Secant, InvQuad, InvInterp };
    Kind kind = Kind::Newton;
    int points = 1;   // Newton p / secant k
    double mu = 0.5;  // inverse interpolation only
};

// Runs the method at final precision n, replays the evaluation trace under
// cost bits^alpha, and returns total cost / n^alpha.
double measure_constant(const Method& method, const ZeroProblem& problem,
                        double alpha, std::int64_t n);

}  // namespace mp
