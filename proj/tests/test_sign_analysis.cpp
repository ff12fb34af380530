#include "doctest.h"

#include "greensign/errors.hpp"
#include "greensign/sign_analysis.hpp"

#include <cmath>
#include <sstream>

using namespace greensign;

namespace {

const auto kUnit = make_domain(0.0, 1.0);
const auto kFirstDeriv = make_space(4, {0, 1}, {1, 3});

double m_of(const SignPrediction& p, const std::string& name) {
    for (const auto& pr : p.provenance)
        if (pr.name == name) return pr.result.m;
    FAIL("no provenance entry " << name);
    return 0.0;
}

} // namespace

TEST_SUITE("sign_analysis") {

TEST_CASE("interval printing") {
    Interval i{-2.0, 3.0, true, false};
    CHECK(i.str() == "(-2, 3]");
    CHECK_FALSE(i.contains(-2.0));
    CHECK(i.contains(3.0));
    Interval j{-INFINITY, 0.0, true, true};
    CHECK(j.str() == "(-inf, 0)");
}

TEST_CASE("strongly positive first derivative") {
    auto p = predict_interval(kFirstDeriv, kUnit, 1);
    CHECK(p.kase == PredictionCase::CaseA);
    REQUIRE(p.sign.has_value());
    CHECK(*p.sign == SignType::StronglyPositive);
    REQUIRE(p.interval.has_value());
    CHECK(p.interval->lower_open);
    CHECK_FALSE(p.interval->upper_open);
    CHECK(m_of(p, "lambda_1") == doctest::Approx(2.36502).epsilon(1e-5));
    CHECK(p.interval->lower == doctest::Approx(-std::pow(m_of(p, "lambda_1"), 4)));
    CHECK(p.interval->upper == doctest::Approx(std::pow(2.2214414690791, 4)).epsilon(1e-10));
    CHECK(m_of(p, "lambda_2^1") == doctest::Approx(std::sqrt(2.0) * std::acos(-1.0) / 2).epsilon(1e-10));
    CHECK(m_of(p, "lambda_4^1") == doctest::Approx(std::sqrt(2.0) * std::acos(-1.0)).epsilon(1e-10));
}

TEST_CASE("the characterization covers derivatives only") {
    CHECK_THROWS_AS(predict_interval(kFirstDeriv, kUnit, 0), ValidationError);
    CHECK_THROWS_AS(predict_interval(kFirstDeriv, kUnit, 4), ValidationError);
    CHECK_THROWS_AS(predict_interval(make_space(4, {2, 3}, {2, 3}), kUnit, 1), NotApplicableError);
}

TEST_CASE("nonnegative and nonpositive cases") {
    auto b = predict_interval(make_space(4, {2, 3}, {0, 1}), kUnit, 2);
    CHECK(b.kase == PredictionCase::CaseB);
    CHECK(*b.sign == SignType::Nonnegative);
    CHECK(b.interval->upper == 0.0);
    CHECK(m_of(b, "lambda_1") == doctest::Approx(1.8751040687).epsilon(1e-9));

    auto c = predict_interval(make_space(6, {0, 2}, {1, 3, 4, 5}), kUnit, 3);
    CHECK(c.kase == PredictionCase::CaseC);
    CHECK(*c.sign == SignType::Nonpositive);
    CHECK(m_of(c, "lambda_1") == doctest::Approx(1.953).epsilon(1e-3));

    auto none = predict_interval(kFirstDeriv, kUnit, 2);
    CHECK(none.kase == PredictionCase::NoConstantSign);
    CHECK_FALSE(none.interval.has_value());
}

TEST_CASE("one condition at the right end") {
    auto p = predict_interval(make_space(4, {0, 1, 2}, {2}), kUnit, 2);
    CHECK(p.kase == PredictionCase::CaseA);
    CHECK(*p.sign == SignType::StronglyNegative);
    CHECK_FALSE(p.interval->lower_open);
    CHECK(p.interval->upper_open);
    CHECK(m_of(p, "lambda_2^2") == doctest::Approx(1.8751040687).epsilon(1e-9));
    CHECK(m_of(p, "lambda_1") == doctest::Approx(3.34).epsilon(1e-2));
    CHECK(p.interval->lower < 0);
    CHECK(p.interval->upper > 0);
}

TEST_CASE("forbidden sign") {
    auto f = nonexistence_check(make_space(4, {0, 1, 2}, {2}), 1);
    REQUIRE(f.has_value());
    CHECK(f->sign == SignType::StronglyPositive);
    // the opposite of the predicted strong sign
    auto g = nonexistence_check(kFirstDeriv, 1);
    REQUIRE(g.has_value());
    CHECK(g->sign == SignType::StronglyNegative);
}

TEST_CASE("necessary interval for a fifth order space") {
    auto p = necessary_interval(make_space(5, {0, 2, 3}, {1, 3}), kUnit, 1);
    CHECK(p.necessary_only);
    CHECK(*p.sign == SignType::Nonpositive);
    CHECK(p.interval->lower == doctest::Approx(-std::pow(2.88, 5)).epsilon(2e-2));
    CHECK(p.interval->upper == doctest::Approx(-std::pow(2.23, 5)).epsilon(2e-2));
    CHECK_FALSE(p.interval->lower_open);
    CHECK(p.interval->upper_open);
    for (const auto& pr : p.provenance) {
        if (pr.name.rfind("lambda_3", 0) == 0) CHECK(pr.space == make_space(5, {0, 1, 4}, {0, 2}));
        if (pr.name.rfind("lambda_5", 0) == 0) CHECK(pr.space == make_space(5, {1, 2, 4}, {0, 1}));
    }
    CHECK_THROWS_AS(necessary_interval(kFirstDeriv, kUnit, 1), NotApplicableError);
}

TEST_CASE("zero-free intervals") {
    const double pi = std::acos(-1.0);
    auto pi1 = zero_free_intervals(make_space(4, {1, 3}, {0, 1}), kUnit, 1);
    CHECK(pi1.left.problem == make_space(4, {0}, {0, 3}));
    CHECK(pi1.left.interval.lower == doctest::Approx(-std::pow(pi, 4)).epsilon(1e-9));
    CHECK(pi1.left.interval.upper == doctest::Approx(4 * std::pow(pi, 4)).epsilon(1e-9));
    CHECK(pi1.right.problem == make_space(4, {0, 2}, {3}));
    CHECK(pi1.right.interval.upper == doctest::Approx(std::pow(pi / std::sqrt(2.0), 4)).epsilon(1e-9));
}

TEST_CASE("grid verification inside and outside the interval") {
    auto p = predict_interval(kFirstDeriv, kUnit, 1);
    const double lo = p.interval->lower, hi = p.interval->upper;
    CHECK(verify_sign(kFirstDeriv, kUnit, 1, 0.0).verdict == SignVerdict::StrictSignConfirmed);
    CHECK(verify_sign(kFirstDeriv, kUnit, 1, 0.5 * lo).verdict == SignVerdict::StrictSignConfirmed);
    CHECK(verify_sign(kFirstDeriv, kUnit, 1, 1.01 * hi).verdict == SignVerdict::SignViolated);
    CHECK(verify_sign(kFirstDeriv, kUnit, 1, 1.01 * lo, 101, Strictness::Strict, 1).verdict ==
          SignVerdict::SignViolated);
    // q = 2 changes sign at M = 0
    CHECK(verify_sign(kFirstDeriv, kUnit, 2, 0.0).verdict == SignVerdict::SignViolated);
}

TEST_CASE("weak sign needs the expected direction") {
    auto s = make_space(4, {2, 3}, {0, 1});
    auto p = predict_interval(s, kUnit, 2);
    CHECK(verify_sign(s, kUnit, 2, 0.0, 101, Strictness::Weak, 1).verdict ==
          SignVerdict::NonstrictSignConfirmed);
    CHECK(verify_sign(s, kUnit, 2, 1.01 * p.interval->lower, 101, Strictness::Weak, 1).verdict ==
          SignVerdict::SignViolated);
}

TEST_CASE("sweep orders the derivative in M") {
    auto r = sweep(kFirstDeriv, kUnit, 1, {20.0, -30.0, 0.0});
    REQUIRE(r.reports.size() == 3);
    CHECK(r.reports.front().M == -30.0);
    CHECK(r.monotonicity_checked);
    CHECK(r.decreasing);
    CHECK(r.pairs_checked == 2);
    CHECK(r.monotonicity_violations == 0);
    std::ostringstream os;
    write_sweep_csv(r, os);
    CHECK(os.str().rfind("M,min,max,verdict\n", 0) == 0);
}

} // TEST_SUITE
