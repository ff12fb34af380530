#pragma once
#include "greensign/combinatorics.hpp"
#include "greensign/ode_basis.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace greensign {

enum class Direction { FirstPositive, FirstNegative };
const char* to_string(Direction d);

struct EigenQuery {
    TwoPointSpace space;
    Domain domain;
    Direction direction = Direction::FirstPositive;
    double m_max = 20.0;   // lambda = +-m^n is scanned for m in (m_max/scan_points, m_max]
    int scan_points = 2000;
    double refine_tol = 1e-13; // final bracket width in m
};

// Defaults tied to the domain: m_max = 20/(b-a).
EigenQuery make_query(const TwoPointSpace& space, const Domain& domain, Direction dir);

struct EigenResult {
    double lambda = 0.0;
    double m = 0.0;
    std::pair<double, double> bracket; // in m
    double residual = 0.0;             // |char_det(lambda)|
    std::vector<double> kernel;        // unit coefficient vector in the real basis at lambda
    std::vector<double> dips;          // m-values of near-zero dips without a sign change
};

struct NotFoundInRange {
    double m_max = 0.0;
    int scan_points = 0;
    std::vector<double> dips;
};

using EigenOutcome = std::variant<EigenResult, NotFoundInRange>;

// Row-normalized boundary-matrix determinant of u^(n) + lambda u = 0. Its sign is
// continuous in lambda away from eigenvalues.
double char_det(const TwoPointSpace& space, const Domain& domain, double lambda);

EigenOutcome first_eigenvalue(const EigenQuery& query);

// Evaluable solution spanning the (approximate) kernel of the boundary conditions.
struct KernelFunction {
    RealBasis basis;
    std::vector<double> coef;
    double bc_residual = 0.0;
    bool multiplicity_warning = false;

    double operator()(double t, int d = 0) const;
    int interior_sign_changes(const Domain& dom, int grid) const;
};

// Works for any number of conditions <= n; the smallest singular direction is used.
// Normalized so that max |u| on a 1000-point grid is 1 and attained with positive sign.
KernelFunction boundary_kernel(const TwoPointSpace& space, const Domain& domain, double lambda);

// boundary_kernel at an eigenvalue; throws NumericalError if boundary residuals
// exceed 1e-8 (scaled by max(1,m)^order).
KernelFunction eigenfunction(const EigenResult& result, const TwoPointSpace& space,
                             const Domain& domain);

} // namespace greensign
