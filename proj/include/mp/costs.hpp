// Instrumented cost accounting.
//
// A CostLedger is an append-only trace of (operation class, precision)
// events. Synthetic cost models replay a trace deterministically, which is
// how the asymptotic reduction constants are measured: wall-clock would mix
// in the machine and the multiplication algorithm, the replay does not.
//
// Note on multiplication timing: the kernels here always form the full
// double-length product and truncate, so a charged M event corresponds to
// full-product work at the stated precision rather than leading-bits-only
// work. Whether the two are asymptotically interchangeable is unresolved;
// all measured ratios below are stated for the full-product flavor.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mp {

enum class OpClass : std::uint8_t {
    Mul,   // full-precision multiplication
    Sqr,   // full-precision squaring
    Add,   // addition-class work (add/sub/word mul/word div)
    Eval,  // zero-finder function evaluation
};

char op_class_letter(OpClass c);

struct CostEvent {
    OpClass cls;
    std::int64_t bits;
    bool operator==(const CostEvent&) const = default;
};

class CostLedger {
  public:
    void charge(OpClass cls, std::int64_t bits);

    const std::vector<CostEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    // Fold of the trace, per class.
    std::int64_t total_bits(OpClass cls) const;
    std::int64_t count(OpClass cls) const;

    // CSV rows "class,precision_bits".
    void write_csv(std::ostream& os) const;

  private:
    std::vector<CostEvent> events_;
};

struct CostModel {
    enum class Kind { Linear, Power, Karatsuba, Tabulated };

    Kind kind = Kind::Linear;
    double alpha = 1.0;                                   // Power only
    std::vector<std::pair<std::int64_t, double>> table;   // Tabulated only

    static CostModel linear() { return {Kind::Linear, 1.0, {}}; }
    static CostModel power(double a);
    static CostModel karatsuba() { return {Kind::Karatsuba, 1.0, {}}; }
    static CostModel tabulated(std::vector<std::pair<std::int64_t, double>> t);

    double cost(std::int64_t bits) const;
};

// Total model cost of the trace, optionally restricted to some classes.
double evaluate_trace(const CostLedger& ledger, const CostModel& model);
double evaluate_trace(const CostLedger& ledger, const CostModel& model,
                      std::initializer_list<OpClass> classes);

// Reductions with an instrumented implementation. Ratios are measured
// against the linear model; each carries the published bound it is checked
// against. recip2/recip3/rsqrt2/rsqrt3/div/sqrt variants live in newton.
enum class Reduction {
    RecipFromMul2,       // I from M, second order
    RecipFromMul3,       // I from M, third order
    RsqrtFromMul3,       // Q from M, third order
    RsqrtFromMul2,       // Q from M, second order
    DivFromMul,          // D from M, reciprocal then multiply
    DivFromMulKM,        // D from M, residual-correction final step
    SqrtFromMul,         // R from M, rsqrt then multiply
    SqrtFromMulKM,       // R from M, residual-correction final step
    MulFromSqr,          // M from S, difference of two squares
    SqrFromMul,          // S from M, one multiplication
    SqrFromRecip,        // S from I, reciprocal-series identity
    RsqrtFromSqrt,       // Q from R, square-root difference identity
};

struct RatioRow {
    Reduction reduction;
    char op;                  // operation computed: D, I, M, Q, R, S
    char unit;                // operation charged against
    std::string variant;
    std::int64_t bits;
    double measured;
    double bound;             // published upper bound for this route
};

// Measured constant estimates at each size in `bits_list`.
std::vector<RatioRow> ratio_table(const std::vector<std::int64_t>& bits_list,
                                  const std::vector<Reduction>& reductions);
std::vector<Reduction> all_reductions();

// The published 6x6 upper-bound table: bound(X, Y) with X the operation
// performed and Y the unit, indices over "DIMQRS".
double reduction_bound(char x, char y);
extern const char kReductionOps[7];  // "DIMQRS"

// CSV report: every (X, Y) cell with its bound, plus measured values for
// the instrumented reductions at the given size.
void write_reduction_report(std::ostream& os, std::int64_t bits);

}  // namespace mp
