#include "doctest.h"

#include "greensign/errors.hpp"
#include "greensign/ode_basis.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

using namespace greensign;

TEST_SUITE("ode_basis") {

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(make_domain(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(make_domain(2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(make_domain(0.0, INFINITY), ValidationError);
    CHECK(make_domain(-1.0, 2.0).length() == doctest::Approx(3.0));
}

TEST_CASE("roots of r^n = -M") {
    for (int n : {2, 3, 4, 5, 7}) {
        for (double M : {-3.5, 0.7, 250.0}) {
            auto sys = build_system(n, M);
            REQUIRE(static_cast<int>(sys.roots.size()) == n);
            CHECK(sys.kind == BasisKind::Exponential);
            std::complex<double> prod = 1.0;
            for (auto r : sys.roots) {
                CHECK(std::abs(std::pow(r, n) + M) <= 1e-10 * std::abs(M));
                prod *= r;
            }
            CHECK(std::abs(prod - std::pow(-1.0, n) * M) <= 1e-10 * std::abs(M));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) CHECK(std::abs(sys.roots[i] - sys.roots[j]) > 1e-6);
        }
    }
    auto z = build_system(4, 0.0);
    CHECK(z.kind == BasisKind::Monomial);
    CHECK(build_system(4, 1e-13).kind == BasisKind::Monomial);
}

TEST_CASE("Cauchy kernel of u'''' - u = 0") {
    auto sys = build_system(4, -1.0);
    CHECK(cauchy_kernel(sys, 1.0, 0) == doctest::Approx((std::sinh(1.0) - std::sin(1.0)) / 2).epsilon(1e-13));
    CHECK(cauchy_kernel(sys, 0.7, 1) == doctest::Approx((std::cosh(0.7) - std::cos(0.7)) / 2).epsilon(1e-13));
    for (int d = 0; d < 3; ++d) CHECK(std::abs(cauchy_kernel(sys, 0.0, d)) < 1e-14);
    CHECK(cauchy_kernel(sys, 0.0, 3) == doctest::Approx(1.0));
    // K'''' = -M K
    CHECK(cauchy_kernel(sys, 0.4, 4) == doctest::Approx(cauchy_kernel(sys, 0.4, 0)).epsilon(1e-12));
    CHECK_THROWS_AS(cauchy_kernel(sys, 0.4, 5), ValidationError);
    CHECK(cauchy_kernel_any(sys, 0.4, 5) == doctest::Approx(cauchy_kernel(sys, 0.4, 1)).epsilon(1e-12));
}

TEST_CASE("Cauchy kernel at M = 0 is x^(n-1)/(n-1)!") {
    auto sys = build_system(5, 0.0);
    CHECK(cauchy_kernel(sys, 0.8, 0) == doctest::Approx(std::pow(0.8, 4) / 24));
    CHECK(cauchy_kernel(sys, 0.8, 2) == doctest::Approx(std::pow(0.8, 2) / 2));
    CHECK(cauchy_kernel(sys, 0.8, 5) == 0.0);
}

TEST_CASE("real bases solve the equation and have nonzero Wronskian") {
    auto dom = make_domain(0.0, 1.0);
    for (double M : {-500.0, -5.0, 0.0, 3.0, 4000.0}) {
        auto sys = build_system(4, M);
        for (auto kind : {RealBasis::Kind::Initial, RealBasis::Kind::Exponential}) {
            if (M == 0.0 && kind == RealBasis::Kind::Exponential) {
                CHECK_THROWS_AS(RealBasis(sys, dom, kind), ValidationError);
                continue;
            }
            RealBasis B(sys, dom, kind);
            for (double t : {0.0, 0.3, 1.0}) {
                auto u = B.eval(t, 0);
                auto u4 = B.eval(t, 4);
                for (int i = 0; i < 4; ++i) {
                    double scale = 1.0 + std::abs(M) * std::abs(u[i]);
                    CHECK(std::abs(u4[i] + M * u[i]) <= 1e-8 * scale);
                }
            }
            Eigen::Matrix4d W;
            for (int d = 0; d < 4; ++d) {
                auto row = B.eval(0.5, d);
                for (int i = 0; i < 4; ++i) W(d, i) = row[i];
            }
            CHECK(std::abs(W.determinant()) > 1e-12);
        }
    }
}

TEST_CASE("basis derivatives match finite differences") {
    auto sys = build_system(3, -20.0);
    RealBasis B(sys, make_domain(0.0, 1.0), RealBasis::Kind::Exponential);
    const double h = 1e-5;
    for (int d = 0; d < 3; ++d) {
        auto up = B.eval(0.4 + h, d), dn = B.eval(0.4 - h, d), dd = B.eval(0.4, d + 1);
        for (int i = 0; i < 3; ++i) CHECK((up[i] - dn[i]) / (2 * h) == doctest::Approx(dd[i]).epsilon(1e-6));
    }
}

TEST_CASE("automatic basis switches on m (b - a)") {
    auto dom = make_domain(0.0, 1.0);
    CHECK(RealBasis::automatic(build_system(4, -std::pow(2.0, 4)), dom).kind() == RealBasis::Kind::Initial);
    CHECK(RealBasis::automatic(build_system(4, -std::pow(30.0, 4)), dom).kind() ==
          RealBasis::Kind::Exponential);
}

} // TEST_SUITE
