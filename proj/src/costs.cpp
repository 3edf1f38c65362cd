#include "mp/costs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mp/newton.hpp"

namespace mp {

char op_class_letter(OpClass c) {
    switch (c) {
        case OpClass::Mul: return 'M';
        case OpClass::Sqr: return 'S';
        case OpClass::Add: return 'A';
        case OpClass::Eval: return 'E';
    }
    return '?';
}

void CostLedger::charge(OpClass cls, std::int64_t bits) {
    events_.push_back({cls, bits});
}

std::int64_t CostLedger::total_bits(OpClass cls) const {
    std::int64_t t = 0;
    for (const CostEvent& e : events_)
        if (e.cls == cls) t += e.bits;
    return t;
}

std::int64_t CostLedger::count(OpClass cls) const {
    std::int64_t t = 0;
    for (const CostEvent& e : events_)
        if (e.cls == cls) ++t;
    return t;
}

void CostLedger::write_csv(std::ostream& os) const {
    os << "class,precision_bits\n";
    for (const CostEvent& e : events_)
        os << op_class_letter(e.cls) << ',' << e.bits << '\n';
}

CostModel CostModel::power(double a) {
    if (!(a > 0)) throw config_error("CostModel: exponent must be positive");
    return {Kind::Power, a, {}};
}

CostModel CostModel::tabulated(std::vector<std::pair<std::int64_t, double>> t) {
    if (t.empty()) throw config_error("CostModel: empty table");
    std::sort(t.begin(), t.end());
    return {Kind::Tabulated, 1.0, std::move(t)};
}

double CostModel::cost(std::int64_t bits) const {
    double n = static_cast<double>(bits);
    switch (kind) {
        case Kind::Linear:
            return n;
        case Kind::Power:
            return std::pow(n, alpha);
        case Kind::Karatsuba:
            return std::pow(n, std::log2(3.0));
        case Kind::Tabulated: {
            // Piecewise-linear between table points, clamped at the ends.
            if (bits <= table.front().first) return table.front().second;
            if (bits >= table.back().first) return table.back().second;
            auto it = std::lower_bound(
                table.begin(), table.end(), bits,
                [](const auto& row, std::int64_t b) { return row.first < b; });
            auto lo = it - 1;
            double t = static_cast<double>(bits - lo->first) /
                       static_cast<double>(it->first - lo->first);
            return lo->second + t * (it->second - lo->second);
        }
    }
    return n;
}

namespace {

bool in_classes(OpClass c, const std::initializer_list<OpClass>& classes) {
    for (OpClass k : classes)
        if (k == c) return true;
    return false;
}

}  // namespace

double evaluate_trace(const CostLedger& ledger, const CostModel& model) {
    double t = 0.0;
    for (const CostEvent& e : ledger.events()) t += model.cost(e.bits);
    return t;
}

double evaluate_trace(const CostLedger& ledger, const CostModel& model,
                      std::initializer_list<OpClass> classes) {
    double t = 0.0;
    for (const CostEvent& e : ledger.events())
        if (in_classes(e.cls, classes)) t += model.cost(e.bits);
    return t;
}

const char kReductionOps[7] = "DIMQRS";

namespace {

// Published upper bounds: row = unit operation Y, column = computed
// operation X, both over D, I, M, Q, R, S.
constexpr double kBounds[6][6] = {
    // X =  D     I     M     Q     R     S
    {1.0, 1.0, 2.0, 3.0, 2.0, 2.0},        // Y = D
    {7.0, 1.0, 6.0, 15.0, 14.0, 3.0},      // Y = I
    {4.0, 3.0, 1.0, 4.5, 5.5, 1.0},        // Y = M
    {10.0, 4.0, 6.0, 1.0, 5.0, 3.0},       // Y = Q
    {7.5, 6.0, 6.0, 3.0, 1.0, 3.0},        // Y = R
    {7.5, 5.5, 2.0, 7.0, 9.0, 1.0},        // Y = S
};

int op_index(char c) {
    for (int i = 0; i < 6; ++i)
        if (kReductionOps[i] == c) return i;
    throw config_error("unknown operation letter");
}

struct ReductionInfo {
    char op;
    char unit;
    const char* variant;
    double bound;
};

ReductionInfo info(Reduction r) {
    switch (r) {
        case Reduction::RecipFromMul2:  return {'I', 'M', "recip2", 3.0};
        case Reduction::RecipFromMul3:  return {'I', 'M', "recip3", 3.0};
        case Reduction::RsqrtFromMul3:  return {'Q', 'M', "rsqrt3", 4.5};
        case Reduction::RsqrtFromMul2:  return {'Q', 'M', "rsqrt2", 5.0};
        case Reduction::DivFromMul:     return {'D', 'M', "recip-mul", 4.0};
        case Reduction::DivFromMulKM:   return {'D', 'M', "km", 3.5};
        case Reduction::SqrtFromMul:    return {'R', 'M', "rsqrt-mul", 5.5};
        case Reduction::SqrtFromMulKM:  return {'R', 'M', "km", 4.25};
        case Reduction::MulFromSqr:     return {'M', 'S', "two-squares", 2.0};
        case Reduction::SqrFromMul:     return {'S', 'M', "mul", 1.0};
        case Reduction::SqrFromRecip:   return {'S', 'I', "recip-series", 3.0};
        case Reduction::RsqrtFromSqrt:  return {'Q', 'R', "sqrt-diff", 3.0};
    }
    throw config_error("ratio_table: unknown reduction");
}

// Multiplicative events; a squaring counts as one multiplication when the
// unit is M.
double mul_cost(const CostLedger& lg, const CostModel& m) {
    return evaluate_trace(lg, m, {OpClass::Mul, OpClass::Sqr});
}

double measure(Reduction r, std::int64_t n, const CostModel& model) {
    CostLedger lg;
    Precision p(n, 8);
    BigFloat a = BigFloat::from_double(3.0);
    BigFloat b = BigFloat::from_double(7.0);
    switch (r) {
        case Reduction::RecipFromMul2:
            recip(a, p, IterationVariant::recip2, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::RecipFromMul3:
            recip(a, p, IterationVariant::recip3, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::RsqrtFromMul3:
            rsqrt(a, p, IterationVariant::rsqrt3, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::RsqrtFromMul2:
            rsqrt(a, p, IterationVariant::rsqrt2, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::DivFromMul:
            div(b, a, p, IterationVariant::recip2, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::DivFromMulKM:
            div(b, a, p, IterationVariant::div_km, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::SqrtFromMul:
            sqrt(a, p, IterationVariant::rsqrt3, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::SqrtFromMulKM:
            sqrt(a, p, IterationVariant::sqrt_km, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::MulFromSqr:
            mul_via_squares(a, b, p, &lg);
            return evaluate_trace(lg, model, {OpClass::Sqr}) / model.cost(n);
        case Reduction::SqrFromMul:
            mul(a, a, p, &lg);
            return mul_cost(lg, model) / model.cost(n);
        case Reduction::SqrFromRecip: {
            // Result carries n/3 of the working bits; the unit is one
            // reciprocal at the result precision.
            std::int64_t m = n / 3;
            square_via_recip(a, Precision(n, 8), &lg);
            CostLedger unit;
            recip(a, Precision(m, 8), IterationVariant::recip2, &unit);
            return mul_cost(lg, model) / mul_cost(unit, model);
        }
        case Reduction::RsqrtFromSqrt: {
            std::int64_t m = 2 * n / 3;
            rsqrt_via_sqrts(a, Precision(n, 8), &lg);
            CostLedger unit;
            sqrt(a, Precision(m, 8), IterationVariant::sqrt_km, &unit);
            return mul_cost(lg, model) / mul_cost(unit, model);
        }
    }
    throw config_error("ratio_table: unknown reduction");
}

}  // namespace

double reduction_bound(char x, char y) {
    return kBounds[op_index(y)][op_index(x)];
}

std::vector<Reduction> all_reductions() {
    return {Reduction::RecipFromMul2, Reduction::RecipFromMul3,
            Reduction::RsqrtFromMul3, Reduction::RsqrtFromMul2,
            Reduction::DivFromMul,    Reduction::DivFromMulKM,
            Reduction::SqrtFromMul,   Reduction::SqrtFromMulKM,
            Reduction::MulFromSqr,    Reduction::SqrFromMul,
            Reduction::SqrFromRecip,  Reduction::RsqrtFromSqrt};
}

std::vector<RatioRow> ratio_table(const std::vector<std::int64_t>& bits_list,
                                  const std::vector<Reduction>& reductions) {
    CostModel model = CostModel::linear();
    std::vector<RatioRow> rows;
    for (Reduction r : reductions) {
        ReductionInfo in = info(r);
        for (std::int64_t n : bits_list) {
            rows.push_back({r, in.op, in.unit, in.variant, n,
                            measure(r, n, model), in.bound});
        }
    }
    return rows;
}

void write_reduction_report(std::ostream& os, std::int64_t bits) {
    std::vector<RatioRow> rows = ratio_table({bits}, all_reductions());
    os << "op,unit,bound,measured,variant\n";
    char buf[64];
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 6; ++x) {
            bool measured_any = false;
            for (const RatioRow& r : rows) {
                if (r.op == kReductionOps[x] && r.unit == kReductionOps[y]) {
                    std::snprintf(buf, sizeof buf, "%.4f", r.measured);
                    os << r.op << ',' << r.unit << ',' << r.bound << ','
                       << buf << ',' << r.variant << '\n';
                    measured_any = true;
                }
            }
            if (!measured_any) {
                os << kReductionOps[x] << ',' << kReductionOps[y] << ','
                   << kBounds[y][x] << ",," << "analytic" << '\n';
            }
        }
    }
}

}  // namespace mp
