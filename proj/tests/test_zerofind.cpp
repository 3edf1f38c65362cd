#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mp/elemfun.hpp"
#include "mp/newton.hpp"
#include "mp/zerofind.hpp"
#include "oracle.hpp"

using mp::BigFloat;
using mp::Precision;

namespace {
BigFloat bf(std::int64_t v) { return BigFloat::from_int(v); }
}  // namespace

TEST_CASE("orders of the interpolation methods") {
    CHECK(mp::order_secant(1) ==
          doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(std::fabs(mp::order_secant(2) - 1.4655) < 1e-4);
    CHECK(std::fabs(mp::order_secant(3) - 1.3802) < 1e-4);
    CHECK(std::fabs(mp::order_invquad() - 1.8392) < 1e-4);
    CHECK(std::fabs(mp::sigma() - 0.5436) < 1e-4);

    double p = mp::order_invquad();
    CHECK(std::fabs(p * p * p - 1.0 - p - p * p) < 1e-10);
    double s = mp::sigma();
    CHECK(std::fabs(s + s * s + s * s * s - 1.0) < 1e-10);

    // k = 1 inverse interpolation is the secant method.
    CHECK(mp::order_invinterp(1) == doctest::Approx(mp::order_secant(1)).epsilon(1e-12));
}

TEST_CASE("discrete Newton constants") {
    CHECK(mp::const_newton(1, 1.0).value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::fabs(mp::const_newton_opt(2.0).value - 2.6667) < 1e-4);
    CHECK(std::fabs(mp::const_newton_opt(10.0).value - 1.0262) < 1e-4);
    CHECK(mp::const_newton_opt(2.0).param == 1);  // p = 1 up to 2.4094
    CHECK(mp::const_newton_opt(3.0).param == 2);
    CHECK_THROWS_AS(mp::const_newton(0, 1.0), mp::domain_error);
}

TEST_CASE("secant constants") {
    CHECK(std::fabs(mp::const_secant(1, 1.0).value - 3.0) < 1e-10);
    CHECK(std::fabs(mp::const_secant(2, 1.0).value - 3.6823) < 1e-4);
    CHECK(std::fabs(mp::const_secant(2, 6.0).value - 1.1741) < 1e-4);
    // At alpha = 1 the constant collapses to 3 + p^k - p.
    for (int k = 1; k <= 4; ++k) {
        double p = mp::order_secant(k);
        CHECK(mp::const_secant(k, 1.0).value ==
              doctest::Approx(3.0 + std::pow(p, k) - p).epsilon(1e-10));
    }
}

TEST_CASE("inverse quadratic constant and its closed form at alpha 1") {
    CHECK(std::fabs(mp::const_invquad(1.0).value - 2.8085) < 1e-4);
    CHECK(std::fabs(mp::const_invquad(5.0).value - 1.2677) < 1e-4);
    double s = mp::sigma();
    double series = 1.0 + (1.0 - s + s * s) + 3.0 * s * s * s / (1.0 - s);
    double closed = 0.5 * (7.0 - 2.0 * s - s * s);
    CHECK(std::fabs(series - closed) < 1e-10);
}

TEST_CASE("inverse interpolation constants: special cases") {
    double s = mp::sigma();
    for (double alpha : {1.0, 3.0, 7.0}) {
        CHECK(mp::const_invinterp(s, alpha).value ==
              doctest::Approx(mp::const_invquad(alpha).value).epsilon(1e-9));
    }
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (double alpha : {1.0, 2.0, 5.0}) {
        CHECK(mp::const_invinterp(golden, alpha).value ==
              doctest::Approx(mp::const_secant(1, alpha).value).epsilon(1e-9));
    }
    CHECK(mp::const_invinterp(0.5, 1.0).value == doctest::Approx(3.0).epsilon(1e-8));
    CHECK_THROWS_AS(mp::const_invinterp(0.49, 1.0), mp::domain_error);
    CHECK_THROWS_AS(mp::const_invinterp(1.0, 1.0), mp::domain_error);
}

TEST_CASE("optimal mu tracks sigma then falls toward one half") {
    double s = mp::sigma();
    double prev_mu = 1.0;
    for (double alpha : {1.0, 2.0, 3.0, 4.0, 4.5, 5.0, 6.0, 8.0, 12.0, 20.0}) {
        mp::MethodConstant c = mp::const_invinterp_opt(alpha);
        if (alpha <= 4.6) CHECK(std::fabs(c.param - s) < 1e-3);
        CHECK(c.param <= prev_mu + 1e-6);
        CHECK(c.param >= 0.5);
        prev_mu = c.param;
    }
    CHECK(mp::const_invinterp_opt(20.0).param < 0.54);
}

TEST_CASE("crossover alphas") {
    std::map<std::string, double> want = {
        {"secant_k1_vs_k2", 4.5243},       {"secant_vs_newton", 8.7143},
        {"invquad_vs_secant2", 5.0571},    {"invquad_vs_newton", 7.1349},
        {"invinterp_vs_secant", 5.0608},   {"invinterp_mu_leaves_sigma", 4.6056},
    };
    for (const mp::Crossover& c : mp::crossovers()) {
        REQUIRE(want.count(c.label) == 1);
        CHECK(std::fabs(c.alpha - want[c.label]) < 1e-3);
    }
    CHECK(mp::crossovers().size() == want.size());
}

TEST_CASE("constants table rows") {
    std::vector<mp::ConstantRow> rows = mp::table81({1.0, 1.5, 4.0, 9.0, 15.0});
    CHECK(std::fabs(rows[0].cn - 4.0000) < 1e-4);
    CHECK(std::fabs(rows[0].cs1 - 3.0000) < 1e-4);
    CHECK(std::fabs(rows[0].cs2 - 3.6823) < 1e-4);
    CHECK(std::fabs(rows[0].cq - 2.8085) < 1e-4);
    CHECK(std::fabs(rows[0].ci - 2.8085) < 1e-4);
    CHECK(std::fabs(rows[0].ci_half - 3.0000) < 1e-4);
    CHECK(rows[0].best == "C_Q");

    CHECK(std::fabs(rows[1].cn - 3.0938) < 1e-4);
    CHECK(std::fabs(rows[1].cs1 - 2.2987) < 1e-4);
    CHECK(std::fabs(rows[1].cs2 - 2.7241) < 1e-4);
    CHECK(std::fabs(rows[1].cq - 2.2108) < 1e-4);
    CHECK(std::fabs(rows[1].ci - 2.2108) < 1e-4);
    CHECK(std::fabs(rows[1].ci_half - 2.3219) < 1e-4);

    CHECK(std::fabs(rows[2].ci - 1.3789) < 1e-4);
    CHECK(rows[3].best == "C_N");
    CHECK(std::fabs(rows[3].cn - 1.0471) < 1e-4);
    CHECK(rows[4].best == "C_N");
    CHECK(std::fabs(rows[4].cn - 1.0012) < 1e-4);
}

TEST_CASE("custom alphas sit between the neighboring rows") {
    std::vector<mp::ConstantRow> rows = mp::table81({2.0, 2.5, 3.0});
    CHECK(rows[1].cn < rows[0].cn);
    CHECK(rows[1].cn > rows[2].cn);
    CHECK(rows[1].cq < rows[0].cq);
    CHECK(rows[1].cq > rows[2].cq);
}

TEST_CASE("all six columns decrease in alpha and respect their bounds") {
    double prev[6] = {1e9, 1e9, 1e9, 1e9, 1e9, 1e9};
    for (int i = 0; i < 200; ++i) {
        double alpha = 1.0 + 19.0 * i / 199.0;
        mp::ConstantRow r = mp::table81({alpha})[0];
        double vals[6] = {r.cn, r.cs1, r.cs2, r.cq, r.ci, r.ci_half};
        for (int c = 0; c < 6; ++c) {
            CHECK(vals[c] <= prev[c] + 1e-9);
            CHECK(vals[c] > 1.0);
            prev[c] = vals[c];
        }
        CHECK(r.cn <= 4.0 + 1e-9);
        CHECK(std::min(r.cs1, r.cs2) <= 3.0 + 1e-9);
        CHECK(r.cq <= 2.8086);
    }
}

TEST_CASE("asymptotic forms at alpha = 30") {
    double a = 30.0;
    double s = mp::sigma();
    double cn = mp::const_newton_opt(a).value;
    CHECK((cn - 1.0) / (std::exp(1.0) * a * std::pow(2.0, -a)) ==
          doctest::Approx(1.0).epsilon(0.05));
    double cs1 = mp::const_secant(1, a).value;
    CHECK((cs1 - 1.0) / std::pow(3.0 - std::sqrt(5.0), a) ==
          doctest::Approx(1.0).epsilon(0.05));
    double cq = mp::const_invquad(a).value;
    CHECK((cq - 1.0) / std::pow(1.0 - s + s * s, a) ==
          doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("every solver finds sqrt(2) to the scheduled accuracy") {
    mp::ZeroProblem prob = mp::problem_by_name("sq2");
    for (std::int64_t n : {64, 256, 1024}) {
        Precision p(n, 2);
        BigFloat ref = mp::sqrt(bf(2), Precision(n + 16, 8));
        auto check = [&](const BigFloat& got) {
            CHECK(oracle::abs_close(got, oracle::dyadic(ref), -n + 4));
        };
        check(mp::solve_newton(prob.f, prob.starts[0], p, 1));
        check(mp::solve_newton(prob.f, prob.starts[0], p, 2));
        check(mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 1));
        check(mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 2));
        check(mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1],
                                prob.starts[2], p));
        check(mp::solve_invinterp(prob.f, prob.starts, p, 0.55));
    }
}

TEST_CASE("a linear residual converges immediately") {
    mp::MpFunction f;
    f.eval = [](const BigFloat& x, std::int64_t bits, mp::CostLedger* lg) {
        if (lg) lg->charge(mp::OpClass::Eval, bits);
        return mp::sub(x, bf(1), Precision(bits + 8, 8));
    };
    BigFloat root = mp::solve_newton(f, BigFloat::from_double(1.1), Precision(256, 2));
    CHECK(root == bf(1));
}

TEST_CASE("measured convergence orders on x^2 - 2 at n = 1024") {
    mp::ZeroProblem prob = mp::problem_by_name("sq2");
    Precision p(1024, 2);
    BigFloat ref = mp::sqrt(bf(2), Precision(1100, 8));

    mp::ZeroResult r;
    mp::solve_newton(prob.f, prob.starts[0], p, 1, nullptr, &r);
    CHECK(std::fabs(mp::estimate_order(r, ref) - 2.0) < 0.05);

    r = {};
    mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 1, nullptr, &r);
    CHECK(std::fabs(mp::estimate_order(r, ref) - 1.618) < 0.05);

    r = {};
    mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 2, nullptr, &r);
    CHECK(std::fabs(mp::estimate_order(r, ref) - 1.466) < 0.05);

    r = {};
    mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1], prob.starts[2], p,
                      nullptr, &r);
    CHECK(std::fabs(mp::estimate_order(r, ref) - 1.839) < 0.05);
}

TEST_CASE("cube root of two, cross-checked through exp(ln(2)/3)") {
    mp::ZeroProblem prob = mp::problem_by_name("cube2");
    Precision p(256, 2);
    BigFloat got = mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1],
                                     prob.starts[2], p);
    BigFloat ln2 = mp::ln(bf(2), Precision(300, 8));
    BigFloat ref = mp::exp(mp::div_word(ln2, 3, Precision(300, 8)), Precision(280, 8));
    CHECK(oracle::abs_close(got, oracle::dyadic(ref), -250));
}

TEST_CASE("exp(x) = 2 solves to ln 2") {
    mp::ZeroProblem prob = mp::problem_by_name("exp2");
    Precision p(256, 2);
    BigFloat got = mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1],
                                     prob.starts[2], p);
    BigFloat ref = mp::ln(bf(2), Precision(280, 8));
    CHECK(oracle::abs_close(got, oracle::dyadic(ref), -250));
}

TEST_CASE("the sigma-order inverse interpolation reuses the quadratic schedule") {
    mp::ZeroProblem prob = mp::problem_by_name("sq2");
    Precision p(512, 2);
    mp::ZeroResult a, b;
    mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1], prob.starts[2], p,
                      nullptr, &a);
    mp::solve_invinterp(prob.f, prob.starts, p, mp::sigma(), nullptr, &b);
    std::vector<std::int64_t> ea = a.eval_bits, eb = b.eval_bits;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    CHECK(ea == eb);
}

TEST_CASE("degenerate and misconfigured solves fail loudly") {
    mp::MpFunction flat;
    flat.eval = [](const BigFloat&, std::int64_t bits, mp::CostLedger* lg) {
        if (lg) lg->charge(mp::OpClass::Eval, bits);
        return bf(1);
    };
    CHECK_THROWS_AS(mp::solve_secant(flat, bf(1), bf(2), Precision(64, 2), 1),
                    mp::degeneracy_error);

    mp::MpFunction rootless;
    rootless.eval = [](const BigFloat& x, std::int64_t bits, mp::CostLedger* lg) {
        if (lg) lg->charge(mp::OpClass::Eval, bits);
        Precision pw(bits + 8, 8);
        return mp::add(mp::square(x, pw), bf(1), pw);
    };
    CHECK_THROWS_AS(mp::solve_newton(rootless, bf(3), Precision(64, 2)), mp::error);

    mp::ZeroProblem prob = mp::problem_by_name("sq2");
    CHECK_THROWS_AS(mp::solve_newton(prob.f, prob.starts[0], Precision(64, 2), 0),
                    mp::config_error);
    CHECK_THROWS_AS(mp::solve_invinterp(prob.f, prob.starts, Precision(64, 2), 0.3),
                    mp::domain_error);
    CHECK_THROWS_AS(mp::problem_by_name("nope"), mp::config_error);
}

TEST_CASE("every method solves every catalog problem") {
    Precision p(192, 2);
    Precision pr(256, 8);
    std::map<std::string, BigFloat> refs;
    refs["sq2"] = mp::sqrt(bf(2), pr);
    refs["exp2"] = mp::ln(bf(2), pr);
    refs["cube2"] = mp::exp(mp::div_word(mp::ln(bf(2), pr), 3, pr), pr);
    refs["sinhalf"] = mp::div_word(mp::const_pi(pr), 6, pr);

    for (const std::string& name : mp::problem_names()) {
        CAPTURE(name);
        mp::ZeroProblem prob = mp::problem_by_name(name);
        const BigFloat& ref = refs[name];
        auto check = [&](const BigFloat& got) {
            CHECK(oracle::abs_close(got, oracle::dyadic(ref), -186));
        };
        check(mp::solve_newton(prob.f, prob.starts[0], p, 1));
        check(mp::solve_newton(prob.f, prob.starts[0], p, 3));
        check(mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 1));
        check(mp::solve_secant(prob.f, prob.starts[0], prob.starts[1], p, 2));
        check(mp::solve_invquad(prob.f, prob.starts[0], prob.starts[1],
                                prob.starts[2], p));
        check(mp::solve_invinterp(prob.f, prob.starts, p, 0.5));
    }
}

TEST_CASE("measured method constants against the analytic values") {
    const std::int64_t n = 1 << 16;
    mp::ZeroProblem prob = mp::problem_by_name("sq2");

    mp::Method n1{mp::Method::Kind::Newton, 1, 0.0};
    CHECK(std::fabs(mp::measure_constant(n1, prob, 1.0, n) - 4.0) < 0.05);
    CHECK(std::fabs(mp::measure_constant(n1, prob, 2.0, n) - 2.6667) < 0.05);

    mp::Method s1{mp::Method::Kind::Secant, 1, 0.0};
    CHECK(std::fabs(mp::measure_constant(s1, prob, 1.0, n) - 3.0) < 0.05);

    mp::Method q{mp::Method::Kind::InvQuad, 0, 0.0};
    CHECK(std::fabs(mp::measure_constant(q, prob, 1.0, n) - 2.8085) < 0.05);
}
