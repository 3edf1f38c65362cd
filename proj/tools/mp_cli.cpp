// Command-line front end: function evaluation, the e/pi constants with a
// dual-method cross-check, the cost-ratio and solver-constant tables, the
// zero-finder demos, and a limb-work bench. All output is deterministic
// CSV or plain text on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 usage, 3 domain or parse error, 4 convergence
// failure, 5 internal cross-check mismatch.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mp/elemfun.hpp"
#include "mp/newton.hpp"
#include "mp/zerofind.hpp"

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

struct CrossCheckMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t bits_for_digits(std::int64_t digits, std::int64_t bits_flag) {
    if (bits_flag > 0) return bits_flag;
    return static_cast<std::int64_t>(static_cast<double>(digits) * kLog2Of10) + 32;
}

void dump_ledger(const mp::CostLedger& ledger, const std::string& path) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw mp::parse_error("cannot open ledger file: " + path);
    ledger.write_csv(os);
}

int run_eval(const std::string& fn, const std::string& xtext, std::int64_t digits,
             std::int64_t bits_flag, const std::string& ledger_path) {
    mp::CostLedger ledger;
    std::int64_t bits = bits_for_digits(digits, bits_flag);
    mp::Precision p(bits, 8);
    mp::BigFloat result;
    if (fn == "atan_recip") {
        std::size_t pos = 0;
        long long j = std::stoll(xtext, &pos);
        if (pos != xtext.size()) throw mp::parse_error("atan_recip: integer expected");
        result = mp::atan_recip(j, p, &ledger);
    } else {
        mp::BigFloat x = mp::from_decimal(xtext, mp::Precision(bits + 16, 8), &ledger);
        if (fn == "exp")
            result = mp::exp(x, p, &ledger);
        else if (fn == "ln")
            result = mp::ln(x, p, &ledger);
        else if (fn == "sin")
            result = mp::sin(x, p, &ledger);
        else
            throw CLI::ValidationError("unknown function: " + fn);
    }
    std::cout << mp::to_decimal(result, digits, &ledger) << "\n";
    dump_ledger(ledger, ledger_path);
    return 0;
}

int run_const(const std::string& name, std::int64_t digits, std::int64_t bits_flag,
              const std::string& ledger_path) {
    mp::CostLedger ledger;
    std::int64_t bits = bits_for_digits(digits, bits_flag);
    mp::Precision p(bits, 8);
    mp::BigFloat a, b;
    if (name == "e") {
        a = mp::const_e(p, nullptr, &ledger);
        b = mp::const_e_direct(p, nullptr, &ledger);
    } else if (name == "pi") {
        a = mp::const_pi(p, &ledger);
        b = mp::const_pi_alt(p, &ledger);
    } else {
        throw CLI::ValidationError("unknown constant: " + name);
    }
    // The two routes must agree to the last kept digit before anything is
    // printed.
    std::string da = mp::to_decimal(a, digits);
    std::string db = mp::to_decimal(b, digits);
    if (da != db) {
        mp::BigFloat diff = mp::sub(a, b, mp::Precision(bits + 8, 8));
        if (!diff.is_zero() && diff.exponent() > a.exponent() - bits + 4)
            throw CrossCheckMismatch("constant " + name +
                                     ": independent methods disagree");
    }
    std::cout << da << "\n";
    dump_ledger(ledger, ledger_path);
    return 0;
}

int run_table8(std::vector<double> alphas) {
    if (alphas.empty()) alphas = mp::default_table_alphas();
    for (double a : alphas)
        if (!(a >= 1.0)) throw mp::domain_error("table8: alpha must be >= 1");
    mp::write_table81_csv(std::cout, mp::table81(alphas));
    return 0;
}

int run_table7(std::int64_t bits) {
    if (bits <= 0) bits = 1 << 16;
    mp::write_reduction_report(std::cout, bits);
    return 0;
}

int run_solve(const std::string& method, const std::string& func, std::int64_t bits,
              double alpha, double mu, const std::string& ledger_path) {
    mp::ZeroProblem prob = mp::problem_by_name(func);
    mp::Precision p(bits, 8);
    mp::CostLedger ledger;
    mp::ZeroResult trace;

    mp::BigFloat root;
    if (method == "newton1")
        root = mp::solve_newton(prob.f, prob.starts[0], p, 1, &ledger, &trace);
    else if (method == "newton2")
        root = mp::solve_newton(prob.f, prob.starts[0], p, 2, &ledger, &trace);
    else if (method == "secant1")
        root = mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 1,
                                &ledger, &trace);
    else if (method == "secant2")
        root = mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 2,
                                &ledger, &trace);
    else if (method == "invquad")
        root = mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1],
                                 prob.starts[2], p, &ledger, &trace);
    else if (method == "invinterp")
        root = mp::solve_invinterp(prob.f, prob.starts, p, mu, &ledger, &trace);
    else
        throw CLI::ValidationError("unknown method: " + method);

    std::int64_t digits = static_cast<std::int64_t>(bits / kLog2Of10);
    std::cout << "root," << mp::to_decimal(root, std::max<std::int64_t>(digits, 8))
              << "\n";
    std::cout << "step,target_bits,err_log2\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const mp::ZeroResult::Step& s = trace.steps[i];
        mp::BigFloat d = mp::sub(s.iterate, root, mp::Precision(bits + 16, 8));
        long long errlog =
            d.is_zero() ? -(bits + 16) : static_cast<long long>(d.exponent());
        std::cout << i << "," << s.target_bits << "," << errlog << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", mp::estimate_order(trace, root));
    std::cout << "measured_order," << buf << "\n";
    double total = 0.0;
    for (std::int64_t b : trace.eval_bits)
        total += std::pow(static_cast<double>(b), alpha);
    std::snprintf(buf, sizeof buf, "%.4f",
                  total / std::pow(static_cast<double>(bits), alpha));
    std::cout << "measured_constant," << buf << "\n";
    dump_ledger(ledger, ledger_path);
    return 0;
}

int run_bench(std::vector<std::int64_t> sizes, const std::string& ledger_path) {
    if (sizes.empty()) sizes = {1024, 4096, 16384, 65536};
    mp::CostLedger ledger;
    std::cout << "bits,op,limb_mults\n";
    for (std::int64_t bits : sizes) {
        if (bits < 64) throw mp::domain_error("bench: sizes start at 64 bits");
        std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(bits));
        mp::limbs::Vec fa(static_cast<std::size_t>((bits + 31) / 32));
        mp::limbs::Vec fb(fa.size());
        for (auto& w : fa) w = static_cast<std::uint32_t>(rng());
        for (auto& w : fb) w = static_cast<std::uint32_t>(rng());
        fa.back() |= 0x80000000u;
        fb.back() |= 0x80000000u;
        mp::BigFloat x = mp::BigFloat::from_limbs(1, fa, -bits);
        mp::BigFloat y = mp::BigFloat::from_limbs(1, fb, -bits);
        mp::Precision p(bits, 8);

        struct Row {
            const char* name;
            std::uint64_t mults;
        };
        mp::limbs::WorkCounter school, kara, dispatch, sq;
        mp::mul_school(x, y, p, &ledger, &school);
        mp::mul_karatsuba(x, y, p, &ledger, &kara);
        mp::mul(x, y, p, &ledger, &dispatch);
        mp::square(x, p, &ledger, &sq);
        for (const Row& r : {Row{"mul_school", school.mults},
                             Row{"mul_karatsuba", kara.mults},
                             Row{"mul", dispatch.mults},
                             Row{"square", sq.mults}}) {
            std::cout << bits << "," << r.name << "," << r.mults << "\n";
        }
    }
    dump_ledger(ledger, ledger_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-precision arithmetic toolkit"};
    app.require_subcommand(1);

    std::int64_t digits_flag = 0;
    std::int64_t bits_flag = 0;
    double alpha_flag = 1.0;
    std::string ledger_path;
    app.add_option("--digits", digits_flag, "decimal digits to print");
    app.add_option("--bits", bits_flag, "working precision in bits");
    app.add_option("--alpha", alpha_flag, "evaluation cost exponent");
    app.add_option("--ledger", ledger_path, "dump the cost trace CSV here");

    auto* eval = app.add_subcommand("eval", "evaluate exp/ln/sin/atan_recip");
    std::string eval_fn, eval_x;
    std::int64_t eval_digits = 0;
    eval->add_option("function", eval_fn)->required();
    eval->add_option("x", eval_x)->required();
    eval->add_option("digits", eval_digits);

    auto* cst = app.add_subcommand("const", "e or pi by two independent methods");
    std::string const_name;
    std::int64_t const_digits = 0;
    cst->add_option("name", const_name)->required();
    cst->add_option("digits", const_digits);

    auto* t8 = app.add_subcommand("table8", "solver asymptotic constants (CSV)");
    std::vector<double> t8_alphas;
    t8->add_option("--alpha", t8_alphas, "alpha rows")->expected(-1);

    auto* t7 = app.add_subcommand("table7", "measured reduction ratios (CSV)");

    auto* solve = app.add_subcommand("solve", "run a zero finder on a built-in problem");
    std::string solve_method, solve_func;
    std::int64_t solve_bits = 256;
    double solve_mu = 0.5436890126920764;
    solve->add_option("method", solve_method)->required();
    solve->add_option("function", solve_func)->required();
    solve->add_option("bits", solve_bits);
    solve->add_option("--mu", solve_mu, "inverse-interpolation order reciprocal");

    auto* bench = app.add_subcommand("bench", "limb-work per multiplication kernel");
    std::vector<std::int64_t> bench_sizes;
    bench->add_option("--sizes", bench_sizes, "operand sizes in bits")->expected(-1);

    try {
        app.parse(argc, argv);

        if (eval->parsed()) {
            if (eval_digits == 0) eval_digits = digits_flag > 0 ? digits_flag : 30;
            return run_eval(eval_fn, eval_x, eval_digits, bits_flag, ledger_path);
        }
        if (cst->parsed()) {
            if (const_digits == 0) const_digits = digits_flag > 0 ? digits_flag : 30;
            return run_const(const_name, const_digits, bits_flag, ledger_path);
        }
        if (t8->parsed()) {
            if (t8_alphas.empty() && alpha_flag != 1.0) t8_alphas = {alpha_flag};
            return run_table8(t8_alphas);
        }
        if (t7->parsed()) return run_table7(bits_flag);
        if (solve->parsed())
            return run_solve(solve_method, solve_func,
                             bits_flag > 0 ? bits_flag : solve_bits, alpha_flag,
                             solve_mu, ledger_path);
        if (bench->parsed()) return run_bench(bench_sizes, ledger_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CrossCheckMismatch& e) {
        std::cerr << "cross-check failure: " << e.what() << "\n";
        return 5;
    } catch (const mp::convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const mp::degeneracy_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const mp::config_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const mp::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
