#pragma once
#include <complex>
#include <vector>

namespace greensign {

struct Domain {
    double a = 0.0;
    double b = 1.0;
    double length() const { return b - a; }
};
Domain make_domain(double a, double b);

enum class BasisKind { Monomial, Exponential };

// Solutions of u^(n) + M u = 0.
struct FundamentalSystem {
    int n = 0;
    double M = 0.0;
    double m = 0.0; // |M|^(1/n)
    std::vector<std::complex<double>> roots;
    BasisKind kind = BasisKind::Monomial;
};

// |M| < 1e-12 is treated as M = 0.
FundamentalSystem build_system(int n, double M);

// d-th derivatives (0 <= d <= n) of u_i(t) = t^i/i! or exp(r_i t).
std::vector<std::complex<double>> eval_basis(const FundamentalSystem& sys, double t, int d);

// d-th derivative of the Cauchy kernel K: K^(i)(0) = 0 for i < n-1, K^(n-1)(0) = 1.
// Public contract is 0 <= d <= n.
double cauchy_kernel(const FundamentalSystem& sys, double x, int d);
// Same without the range restriction on d (orders >= n reduce through the ODE).
double cauchy_kernel_any(const FundamentalSystem& sys, double x, int d);

// Real basis used by determinants, Green's functions and eigenfunctions.
//  Initial:     u_i has unit initial data u_i^(j)(a) = delta_ij (entire in M).
//  Exponential: Re/Im parts of exp(r (t - c)), with c = a for decaying roots and
//               c = b for growing ones, so every column stays bounded by 1 on [a,b].
class RealBasis {
public:
    enum class Kind { Initial, Exponential };

    RealBasis(const FundamentalSystem& sys, const Domain& dom, Kind kind);
    // Picks Initial when m (b - a) is small.
    static RealBasis automatic(const FundamentalSystem& sys, const Domain& dom);

    std::vector<double> eval(double t, int d) const;
    Kind kind() const { return kind_; }
    const FundamentalSystem& system() const { return sys_; }
    // Sign of det[initial data of the Exponential columns]; constant in m > 0.
    int exponential_orientation() const;

private:
    FundamentalSystem sys_;
    Domain dom_;
    Kind kind_;
    struct Column { std::complex<double> r; double origin; bool imag_part; };
    std::vector<Column> cols_;
};

// m (b - a) at or below which the Initial basis is preferred.
constexpr double kInitialBasisLimit = 6.0;

} // namespace greensign
