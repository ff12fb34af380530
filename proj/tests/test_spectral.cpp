#include "doctest.h"
#include "oracles.hpp"

#include "greensign/errors.hpp"
#include "greensign/spectral.hpp"

#include <cmath>
#include <variant>

using namespace greensign;

namespace {

const auto kUnit = make_domain(0.0, 1.0);

EigenResult first(const TwoPointSpace& s, Direction d, const Domain& dom = kUnit) {
    auto out = first_eigenvalue(make_query(s, dom, d));
    REQUIRE(std::holds_alternative<EigenResult>(out));
    return std::get<EigenResult>(out);
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("clamped beam against an independent root of cosh m cos m = 1") {
    double m = oracle::first_root([](double x) { return std::cosh(x) * std::cos(x) - 1.0; }, 1.0, 6.0);
    CHECK(m == doctest::Approx(4.7300).epsilon(1e-4));
    auto r = first(make_space(4, {0, 1}, {0, 1}), Direction::FirstNegative);
    CHECK(r.m == doctest::Approx(m).epsilon(1e-10));
    CHECK(r.lambda == doctest::Approx(-std::pow(m, 4)).epsilon(1e-10));
    CHECK(r.bracket.first <= r.m);
    CHECK(r.m <= r.bracket.second);
}

TEST_CASE("simply supported values") {
    const double pi = std::acos(-1.0);
    CHECK(first(make_space(4, {0, 1}, {0, 3}), Direction::FirstNegative).lambda ==
          doctest::Approx(-std::pow(pi, 4)).epsilon(1e-10));
    CHECK(first(make_space(4, {0, 1, 2}, {3}), Direction::FirstPositive).lambda ==
          doctest::Approx(std::pow(pi / std::sqrt(2.0), 4)).epsilon(1e-10));
    CHECK(first(make_space(4, {0}, {0, 1, 3}), Direction::FirstPositive).lambda ==
          doctest::Approx(4 * std::pow(pi, 4)).epsilon(1e-10));
    // second order: u'' + M u = 0, u(0)=u(1)=0 -> M = pi^2
    CHECK(first(make_space(2, {0}, {0}), Direction::FirstPositive).lambda ==
          doctest::Approx(pi * pi).epsilon(1e-10));
}

TEST_CASE("eigenvalues scale like (b - a)^-n") {
    auto s = make_space(5, {0, 2, 3}, {1, 3});
    auto unit = first(s, Direction::FirstNegative);
    auto wide = first(s, Direction::FirstNegative, make_domain(-1.0, 1.5));
    CHECK(wide.lambda == doctest::Approx(unit.lambda / std::pow(2.5, 5)).epsilon(1e-9));
    auto shifted = first(s, Direction::FirstNegative, make_domain(3.0, 4.0));
    CHECK(shifted.lambda == doctest::Approx(unit.lambda).epsilon(1e-10));
}

TEST_CASE("a space and its adjoint share spectra up to (-1)^n") {
    for (const auto& s : {make_space(4, {0, 1}, {1, 3}), make_space(4, {0, 1, 2}, {2}),
                          make_space(5, {0, 2, 3}, {1, 3}), make_space(3, {0}, {0, 1})}) {
        auto adj = adjoint(s);
        const bool flip = s.n % 2 == 1;
        for (auto d : {Direction::FirstPositive, Direction::FirstNegative}) {
            auto o1 = first_eigenvalue(make_query(s, kUnit, d));
            auto d2 = flip ? (d == Direction::FirstPositive ? Direction::FirstNegative : Direction::FirstPositive) : d;
            auto o2 = first_eigenvalue(make_query(adj, kUnit, d2));
            REQUIRE(o1.index() == o2.index());
            if (auto* r1 = std::get_if<EigenResult>(&o1)) {
                double l2 = std::get<EigenResult>(o2).lambda * (flip ? -1 : 1);
                CHECK(r1->lambda == doctest::Approx(l2).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("eigenvalue of S is an eigenvalue of every derivative space") {
    for (const auto& s : {make_space(4, {0, 1}, {1, 3}), make_space(4, {0, 1, 2}, {2}),
                          make_space(4, {2, 3}, {0, 1}), make_space(5, {0, 2, 3}, {1, 3}),
                          make_space(5, {0, 1, 4}, {0, 2})}) {
        auto r = first(s, (s.n - s.k()) % 2 == 0 ? Direction::FirstNegative : Direction::FirstPositive);
        for (int q = 1; q < s.n; ++q) {
            INFO(s.str() << " q=" << q);
            CHECK(std::abs(char_det(derived(s, q), kUnit, r.lambda)) < 1e-9);
        }
    }
}

TEST_CASE("zero is an eigenvalue exactly when (N_a) fails") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& s : enumerate_spaces(n)) {
            INFO(s.str());
            CHECK((std::abs(char_det(s, kUnit, 0.0)) < 1e-12) == !check_na(s));
        }
}

TEST_CASE("not found inside the scan window") {
    auto q = make_query(make_space(4, {0, 1}, {0, 1}), kUnit, Direction::FirstNegative);
    q.m_max = 4.0;
    auto out = first_eigenvalue(q);
    REQUIRE(std::holds_alternative<NotFoundInRange>(out));
    CHECK(std::get<NotFoundInRange>(out).m_max == 4.0);
    q.scan_points = 10;
    CHECK_THROWS_AS(first_eigenvalue(q), ValidationError);
}

TEST_CASE("first eigenfunctions") {
    auto s = make_space(4, {0, 1}, {0, 1});
    auto r = first(s, Direction::FirstNegative);
    auto u = eigenfunction(r, s, kUnit);
    CHECK(u.bc_residual < 1e-8);
    CHECK(u.interior_sign_changes(kUnit, 400) == 0);
    CHECK(std::abs(u(0.0)) < 1e-8);
    CHECK(std::abs(u(1.0, 1)) < 1e-6);
    // fourth derivative equals m^4 u
    CHECK(u(0.37, 4) == doctest::Approx(std::pow(r.m, 4) * u(0.37)).epsilon(1e-7));
}

} // TEST_SUITE
