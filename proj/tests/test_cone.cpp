#include "doctest.h"
#include "oracles.hpp"

#include "greensign/cone.hpp"
#include "greensign/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace greensign;

namespace {

const auto kSpace = make_space(4, {0, 1}, {1, 3});
const auto kUnit = make_domain(0.0, 1.0);

// min and max over s of oracle(t,s)/s^2 by brute force
std::pair<double, double> brute_bounds(double (*fn)(double, double), double t, int pts = 20001) {
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i <= pts; ++i) {
        double s = i == 0 ? 1e-9 : static_cast<double>(i) / pts;
        double r = fn(t, s) / (s * s);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

} // namespace

TEST_SUITE("cone_bounds") {

TEST_CASE("envelope of g and its first derivative at M = 0") {
    GreenFunction g(kSpace, kUnit, 0.0);
    auto env = build_envelope(g, {1, 3}, {1.0 / 6, 1.0}, 21);
    CHECK(env.eta == 2);
    CHECK(env.gamma == 0);
    CHECK(env.phi(0.5) == doctest::Approx(0.25));
    REQUIRE(env.derivs.count(1) == 1);
    CHECK(env.derivs.count(3) == 0); // the third derivative has only a weak sign
    for (std::size_t i = 0; i < env.t.size(); ++i) {
        double t = env.t[i];
        auto [lo, hi] = brute_bounds(oracle::g0, t);
        CHECK(env.base.k1[i] == doctest::Approx(lo).epsilon(1e-6).scale(1e-3));
        CHECK(env.base.k2[i] == doctest::Approx(hi).epsilon(1e-6).scale(1e-3));
        auto [lo1, hi1] = brute_bounds(oracle::dg0, t);
        if (i == 0) hi1 = 0.5; // the ratio vanishes at t = 0; the table keeps the limit (1 - t) / 2
        CHECK(env.derivs.at(1).k1[i] == doctest::Approx(lo1).epsilon(1e-6).scale(1e-3));
        CHECK(env.derivs.at(1).k2[i] == doctest::Approx(hi1).epsilon(1e-6).scale(1e-3));
    }
    // k1(t) = t^2 (3 - 2t) / 12, k2(t) = t (2 - t) / 4, k1^1(t) = t (1 - t) / 2, k2^1(t) = (1 - t) / 2
    CHECK(env.base.k1_max == doctest::Approx(1.0 / 12).epsilon(1e-8));
    CHECK(env.base.k2_max == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(env.m1 == doctest::Approx(1.0 / 162).epsilon(1e-8));
    CHECK(env.derivs.at(1).k1_max == doctest::Approx(0.125).epsilon(1e-8));
    CHECK(env.derivs.at(1).k2_max == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("envelope requirements") {
    GreenFunction below(kSpace, kUnit, -40.0);
    CHECK_THROWS_AS(build_envelope(below, {1}, {0.2, 0.8}), NotApplicableError);
    GreenFunction g(kSpace, kUnit, 0.0);
    CHECK_THROWS_AS(build_envelope(g, {2}, {0.2, 0.8}), ValidationError);
    CHECK_THROWS_AS(build_envelope(g, {1}, {0.8, 0.2}), ValidationError);
    GreenFunction odd(make_space(4, {0}, {0, 1, 3}), kUnit, 0.0);
    CHECK_THROWS_AS(build_envelope(odd, {}, {0.2, 0.8}), NotApplicableError);
}

TEST_CASE("envelope holds pointwise for a nonzero M") {
    GreenFunction g(kSpace, kUnit, -12.0);
    auto env = build_envelope(g, {1}, {0.25, 0.75}, 41);
    for (std::size_t i = 0; i < env.t.size(); i += 5)
        for (int j = 1; j < 60; ++j) {
            double t = env.t[i], s = j / 60.0;
            double v = eval_q(g, 0, t, s) / env.phi(s);
            CHECK(v >= env.base.k1[i] - 1e-9);
            CHECK(v <= env.base.k2[i] + 1e-9);
        }
}

TEST_CASE("quadrature reproduces L_0 1") {
    GreenFunction g(kSpace, kUnit, 0.0);
    IntegralOperator op(g, 8);
    std::vector<double> ones(op.nodes().size(), 1.0);
    auto u = op.integrate(ones);
    REQUIRE(u.orders() == 4);
    for (std::size_t i = 0; i < op.nodes().size(); ++i)
        for (int d = 0; d < 4; ++d)
            CHECK(u.d[d][i] == doctest::Approx(oracle::L0_one(op.nodes()[i], d)).epsilon(1e-12).scale(1e-12));
    CHECK(u.sup(0) == doctest::Approx(oracle::L0_one(op.nodes().back(), 0)).epsilon(1e-12));
}

TEST_CASE("quadrature of a smooth forcing against a fine trapezoid") {
    GreenFunction g(kSpace, kUnit, 25.0);
    IntegralOperator op(g, 8);
    std::vector<double> F;
    for (double s : op.nodes()) F.push_back(std::cos(3 * s));
    auto u = op.integrate(F);
    std::size_t i = op.nodes().size() / 3;
    double t = op.nodes()[i], ref = 0.0;
    const int N = 200000;
    for (int k = 0; k <= N; ++k) {
        double s = static_cast<double>(k) / N, w = (k == 0 || k == N) ? 0.5 : 1.0;
        ref += w * eval_q(g, 1, t, s) * std::cos(3 * s) / N;
    }
    CHECK(u.d[1][i] == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("Picard with a constant forcing stops after the first image") {
    NonlinearProblem p{kSpace, kUnit, 0.0, "builtin:one", resolve_nonlinearity("builtin:one"), {1}, {0.25, 0.75}};
    GreenFunction g(kSpace, kUnit, 0.0);
    IntegralOperator op(g);
    auto env = build_envelope(g, p.q_list, p.I1, op.nodes());
    auto r = picard_solve(p, op, env);
    CHECK(r.converged);
    CHECK(r.iterations <= 2);
    CHECK(r.u.d[0].back() == doctest::Approx(oracle::L0_one(r.u.t.back(), 0)).epsilon(1e-10));
    CHECK(r.cone.member);
}

TEST_CASE("Picard with the bounded nonlinearity") {
    NonlinearProblem p{kSpace, kUnit, 0.0, "builtin:bounded_decay",
                       resolve_nonlinearity("builtin:bounded_decay"), {1, 3}, {1.0 / 6, 1.0}};
    check_nonnegative(p);
    GreenFunction g(kSpace, kUnit, 0.0);
    IntegralOperator op(g);
    auto env = build_envelope(g, p.q_list, p.I1, op.nodes());
    auto r = picard_solve(p, op, env);
    CHECK(r.converged);
    CHECK(r.residual <= 1e-8);
    CHECK(r.cone.member);
    auto again = picard_solve(p, op, env);
    CHECK(again.u.d[0] == r.u.d[0]);
}

TEST_CASE("cone membership of a polynomial on the boundary of the cone") {
    GreenFunction g(kSpace, kUnit, 0.0);
    auto env = build_envelope(g, {1}, {0.25, 0.75}, 51);
    // u = k1(t)/k2 * sup u with sup u = u(1) = 1
    auto u = sample_function(env.t, 4, [](double t, int d) {
        switch (d) {
        case 0: return 2 * t * t * (3 - 2 * t) / 3;
        case 1: return 4 * t * (1 - t);
        case 2: return 4 - 8 * t;
        default: return -8.0;
        }
    });
    auto rep = cone_membership(u, env, kSpace, {1});
    CHECK(rep.member);
    CHECK(rep.conditions.size() == 4);
    CHECK(std::abs(rep.conditions[1].margin) < 1e-8);

    auto bad = sample_function(env.t, 4, [](double t, int d) { return d == 0 ? t - 0.5 : (d == 1 ? 1.0 : 0.0); });
    CHECK_FALSE(cone_membership(bad, env, kSpace, {1}).member);
}

TEST_CASE("nonlinearities") {
    auto f = resolve_nonlinearity("builtin:bounded_decay");
    double x[4] = {0, 0, 0, 0};
    CHECK(f(0.0, x, 4) == doctest::Approx(2.0));
    CHECK_THROWS_AS(resolve_nonlinearity("builtin:nope"), ValidationError);
    CHECK_THROWS_AS(resolve_nonlinearity("sin(x)"), ValidationError);
    CHECK_FALSE(builtin_names().empty());

    const std::string path = "greensign_table_test.csv";
    {
        std::ofstream out(path);
        out << "t,f\n0,1\n1,3\n";
    }
    auto tab = resolve_nonlinearity("table:" + path);
    CHECK(tab(0.25, x, 4) == doctest::Approx(1.5));
    CHECK(tab(2.0, x, 4) == doctest::Approx(3.0));
    std::remove(path.c_str());

    NonlinearProblem neg{kSpace, kUnit, 0.0, "neg", [](double, const double*, int) { return -1.0; }, {}, {0.2, 0.8}};
    CHECK_THROWS_AS(check_nonnegative(neg), ValidationError);
}

TEST_CASE("growth trends of the bounded nonlinearity") {
    NonlinearProblem p{kSpace, kUnit, 0.0, "builtin:bounded_decay",
                       resolve_nonlinearity("builtin:bounded_decay"), {1}, {0.2, 0.8}};
    auto gd = growth_diagnostic(p);
    CHECK(gd.near_zero_increasing);
    CHECK(gd.near_inf_decreasing);
}

TEST_CASE("solution csv") {
    auto u = sample_function({0.0, 1.0}, 2, [](double t, int d) { return d == 0 ? t : 1.0; });
    std::ostringstream os;
    write_solution_csv(u, os);
    CHECK(os.str().rfind("t,u,du1\n", 0) == 0);
}

} // TEST_SUITE
