#include "greensign/ode_basis.hpp"
#include "greensign/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

namespace greensign {

namespace {

constexpr double kZeroM = 1e-12;

std::complex<double> ipow(std::complex<double> z, int p) {
    if (p < 0) return 1.0 / ipow(z, -p);
    std::complex<double> out = 1.0;
    for (int i = 0; i < p; ++i) out *= z;
    return out;
}

double factorial(int e) {
    double f = 1.0;
    for (int i = 2; i <= e; ++i) f *= i;
    return f;
}

// sum_p (-M)^p x^(n-1+pn-d) / (n-1+pn-d)!, terms with negative exponent dropped
double kernel_series(int n, double M, double x, int d) {
    int p = 0;
    while (n - 1 + p * n - d < 0) ++p;
    int e = n - 1 + p * n - d;
    double term = std::pow(-M, p) * std::pow(x, e) / factorial(e);
    double sum = term;
    const double step = -M * std::pow(x, n);
    for (int it = 0; it < 400; ++it) {
        double denom = 1.0;
        for (int i = 1; i <= n; ++i) denom *= (e + i);
        term *= step / denom;
        e += n;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) || term == 0.0) break;
    }
    return sum;
}

} // namespace

Domain make_domain(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw ValidationError("domain needs finite a < b");
    return {a, b};
}

FundamentalSystem build_system(int n, double M) {
    if (n < 2) throw ValidationError("operator order n must be at least 2");
    if (!std::isfinite(M)) throw ValidationError("M must be finite");
    FundamentalSystem sys;
    sys.n = n;
    if (std::abs(M) < kZeroM) {
        sys.M = 0.0;
        sys.kind = BasisKind::Monomial;
        sys.roots.assign(n, 0.0);
        return sys;
    }
    sys.M = M;
    sys.kind = BasisKind::Exponential;
    sys.m = std::pow(std::abs(M), 1.0 / n);
    const double pi = std::numbers::pi;
    sys.roots.resize(n);
    // r^n = -M: angles pi(2j+1)/n for M > 0, 2 pi j/n for M < 0.
    // Upper-half roots are computed, the rest are their exact conjugates.
    for (int j = 0; j < n; ++j) {
        double th = M > 0 ? pi * (2 * j + 1) / n : 2 * pi * j / n;
        if (th > pi + 1e-12) {
            int partner = M > 0 ? n - 1 - j : n - j;
            sys.roots[j] = std::conj(sys.roots[partner]);
            continue;
        }
        double re = sys.m * std::cos(th), im = sys.m * std::sin(th);
        if (std::abs(th) < 1e-12 || std::abs(th - pi) < 1e-12) im = 0.0;
        sys.roots[j] = {re, im};
    }
    return sys;
}

std::vector<std::complex<double>> eval_basis(const FundamentalSystem& sys, double t, int d) {
    if (d < 0 || d > sys.n) throw ValidationError("derivative order out of range");
    std::vector<std::complex<double>> out(sys.n);
    if (sys.kind == BasisKind::Monomial) {
        for (int i = 0; i < sys.n; ++i)
            out[i] = i >= d ? std::pow(t, i - d) / factorial(i - d) : 0.0;
        return out;
    }
    for (int i = 0; i < sys.n; ++i) out[i] = ipow(sys.roots[i], d) * std::exp(sys.roots[i] * t);
    return out;
}

double cauchy_kernel_any(const FundamentalSystem& sys, double x, int d) {
    const int n = sys.n;
    if (d < 0) throw ValidationError("derivative order must be nonnegative");
    if (sys.kind == BasisKind::Monomial) {
        int e = n - 1 - d;
        return e < 0 ? 0.0 : std::pow(x, e) / factorial(e);
    }
    if (sys.m * std::abs(x) <= 2.0) return kernel_series(n, sys.M, x, d);
    // conjugate pairs are added back to back so their imaginary parts cancel exactly
    std::complex<double> sum = 0.0;
    for (int j = 0; j < n; ++j) {
        auto r = sys.roots[j];
        if (r.imag() < 0) continue;
        auto term = ipow(r, d - n + 1) * std::exp(r * x);
        if (r.imag() > 0) {
            auto rc = std::conj(r);
            term += ipow(rc, d - n + 1) * std::exp(rc * x);
        }
        sum += term;
    }
    sum /= static_cast<double>(n);
    if (std::abs(sum.imag()) > 1e-9 * (1.0 + std::abs(sum.real())))
        throw NumericalError("Cauchy kernel imaginary residue " + std::to_string(sum.imag()));
    return sum.real();
}

double cauchy_kernel(const FundamentalSystem& sys, double x, int d) {
    if (d < 0 || d > sys.n) throw ValidationError("derivative order out of range");
    return cauchy_kernel_any(sys, x, d);
}

RealBasis::RealBasis(const FundamentalSystem& sys, const Domain& dom, Kind kind)
    : sys_(sys), dom_(dom), kind_(kind) {
    if (kind_ == Kind::Exponential) {
        if (sys_.kind == BasisKind::Monomial)
            throw ValidationError("exponential basis needs M != 0");
        for (auto r : sys_.roots) {
            if (r.imag() < 0) continue;
            double origin = r.real() > 0 ? dom_.b : dom_.a;
            cols_.push_back({r, origin, false});
            if (r.imag() > 0) cols_.push_back({r, origin, true});
        }
    }
}

RealBasis RealBasis::automatic(const FundamentalSystem& sys, const Domain& dom) {
    if (sys.kind == BasisKind::Monomial || sys.m * dom.length() <= kInitialBasisLimit)
        return RealBasis(sys, dom, Kind::Initial);
    return RealBasis(sys, dom, Kind::Exponential);
}

std::vector<double> RealBasis::eval(double t, int d) const {
    const int n = sys_.n;
    std::vector<double> out(n);
    if (kind_ == Kind::Initial) {
        for (int i = 0; i < n; ++i) out[i] = cauchy_kernel_any(sys_, t - dom_.a, n - 1 - i + d);
        return out;
    }
    for (int i = 0; i < n; ++i) {
        const auto& c = cols_[i];
        auto v = ipow(c.r, d) * std::exp(c.r * (t - c.origin));
        out[i] = c.imag_part ? v.imag() : v.real();
    }
    return out;
}

int RealBasis::exponential_orientation() const {
    if (kind_ != Kind::Exponential) return 1;
    const int n = sys_.n;
    Eigen::MatrixXd W(n, n);
    for (int j = 0; j < n; ++j) {
        auto w = cols_[j].r / sys_.m;
        for (int d = 0; d < n; ++d) {
            auto v = ipow(w, d);
            W(d, j) = cols_[j].imag_part ? v.imag() : v.real();
        }
    }
    return W.determinant() > 0 ? 1 : -1;
}

} // namespace greensign
