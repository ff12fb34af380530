#pragma once
#include "greensign/combinatorics.hpp"
#include "greensign/ode_basis.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace greensign {

// Which branch to use on the diagonal t = s.
enum class Side {
    Below, // t -> s^-, the t < s branch
    Above  // t -> s^+, the s <= t branch
};

// Coefficients of the homogeneous part for one fixed s.
struct GreenSection {
    double s = 0.0;
    std::vector<double> coef;
    int kernel_shift = 0;
};

class GreenFunction {
public:
    GreenFunction(TwoPointSpace space, Domain domain, double M);

    const TwoPointSpace& space() const { return space_; }
    const Domain& domain() const { return domain_; }
    double M() const { return M_; }
    const FundamentalSystem& system() const { return sys_; }
    const RealBasis& basis() const { return basis_; }
    // Row-normalized determinant of the boundary matrix.
    double boundary_determinant() const { return det_; }

    // kernel_shift = j builds the column whose jump sits in derivative order n-1-j
    // (j = 0 is g itself).
    GreenSection section(double s, int kernel_shift = 0) const;
    // Any derivative order in t, including orders >= n.
    double eval(const GreenSection& sec, int order, double t, Side side) const;
    // Analytic continuation of one branch past the diagonal.
    double eval_branch(const GreenSection& sec, int order, double t, Side branch) const;

private:
    TwoPointSpace space_;
    Domain domain_;
    double M_;
    FundamentalSystem sys_;
    RealBasis basis_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double det_ = 0.0;
};

constexpr double kSingularThreshold = 1e-9;

// Throws EigenvalueCollisionError when the boundary matrix is singular.
GreenFunction build_green(const TwoPointSpace& space, const Domain& domain, double M);

// q-th t-derivative, 0 <= q <= n-1. On the diagonal with q = n-1 a side is required;
// for q <= n-2 the s <= t branch is used when none is given.
double eval_q(const GreenFunction& g, int q, double t, double s,
              std::optional<Side> side = std::nullopt);

struct VerificationReport {
    double ode_residual = 0.0;    // max |g^(n) + M g| / (1 + |M| |g|) off the diagonal
    double bc_residual = 0.0;     // max boundary-condition value
    double continuity_error = 0.0;
    double jump_error = 0.0;
    std::optional<double> adjoint_error; // empty when the adjoint problem is singular
    double sderiv_error = 0.0;    // first s-derivative relation
    bool passed = false;
};

struct VerifyTolerances {
    double ode = 1e-8;
    double bc = 1e-10;
    double continuity = 1e-8;
    double jump = 1e-8;
    double adjoint = 1e-8;
    double sderiv = 1e-5;
};

VerificationReport verify_green(const GreenFunction& g, int grid = 101,
                                VerifyTolerances tol = {});

// Max |g_hat(t,s) - (-1)^n g(s,t)| on a grid x grid interior mesh, with g_hat the
// Green's function of the adjoint space at (-1)^n M.
double adjoint_symmetry_error(const GreenFunction& g, int grid);

// Max |(-1)^j d^j/ds^j g - g_{n-j}| at `points` pseudo-random off-diagonal points,
// derivative by central differences with the given step.
double sderiv_relation_error(const GreenFunction& g, int j, int points, double step);

// Header "t,s,g,dg1,...", uniform interior grid, t outer; diagonal uses the s <= t branch.
void write_green_csv(const GreenFunction& g, int grid, std::ostream& out);

} // namespace greensign
