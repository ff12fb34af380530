#include "greensign/green.hpp"
#include "greensign/errors.hpp"
#include "greensign/linalg.hpp"
#include "greensign/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace greensign {

GreenFunction::GreenFunction(TwoPointSpace space, Domain domain, double M)
    : space_(std::move(space)), domain_(domain), M_(M), sys_(build_system(space_.n, M)),
      basis_(RealBasis::automatic(sys_, domain_)) {
    require_complete(space_);
    const int n = space_.n;
    Eigen::MatrixXd B(n, n);
    int row = 0;
    for (int o : space_.left) {
        auto v = basis_.eval(domain_.a, o);
        for (int i = 0; i < n; ++i) B(row, i) = v[i];
        ++row;
    }
    for (int o : space_.right) {
        auto v = basis_.eval(domain_.b, o);
        for (int i = 0; i < n; ++i) B(row, i) = v[i];
        ++row;
    }
    det_ = normalized_determinant(B);
    if (std::abs(det_) < kSingularThreshold) {
        std::ostringstream os;
        os << "M = " << M << " is an eigenvalue of " << space_.str()
           << " (scaled determinant " << std::abs(det_) << ")";
        throw EigenvalueCollisionError(os.str(), std::abs(det_));
    }
    lu_ = B.partialPivLu();
}

GreenSection GreenFunction::section(double s, int kernel_shift) const {
    const int n = space_.n, k = space_.k();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n - k; ++j)
        rhs(k + j) = -cauchy_kernel_any(sys_, domain_.b - s, space_.right[j] + kernel_shift);
    Eigen::VectorXd c = lu_.solve(rhs);
    return {s, std::vector<double>(c.data(), c.data() + n), kernel_shift};
}

double GreenFunction::eval(const GreenSection& sec, int order, double t, Side side) const {
    auto u = basis_.eval(t, order);
    double v = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) v += sec.coef[i] * u[i];
    bool above = t > sec.s || (t == sec.s && side == Side::Above);
    if (above) v += cauchy_kernel_any(sys_, t - sec.s, order + sec.kernel_shift);
    return v;
}

double GreenFunction::eval_branch(const GreenSection& sec, int order, double t, Side branch) const {
    auto u = basis_.eval(t, order);
    double v = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) v += sec.coef[i] * u[i];
    if (branch == Side::Above) v += cauchy_kernel_any(sys_, t - sec.s, order + sec.kernel_shift);
    return v;
}

GreenFunction build_green(const TwoPointSpace& space, const Domain& domain, double M) {
    return GreenFunction(space, domain, M);
}

double eval_q(const GreenFunction& g, int q, double t, double s, std::optional<Side> side) {
    const int n = g.space().n;
    if (q < 0 || q > n - 1) throw ValidationError("q must lie in [0, n-1]");
    if (t == s && q == n - 1 && !side)
        throw ValidationError("diagonal evaluation of order n-1 needs an explicit side");
    return g.eval(g.section(s), q, t, side.value_or(Side::Above));
}

double adjoint_symmetry_error(const GreenFunction& g, int grid) {
    const int n = g.space().n;
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    GreenFunction gh(adjoint(g.space()), g.domain(), sgn * g.M());
    const Domain& d = g.domain();
    const double h = d.length() / grid;
    std::vector<double> err(grid, 0.0);
    parallel_for(grid, [&](std::size_t i) {
        double s = d.a + (i + 0.5) * h;
        auto sec_h = gh.section(s);
        double e = 0.0;
        for (int jt = 0; jt < grid; ++jt) {
            double t = d.a + (jt + 0.5) * h;
            double lhs = gh.eval(sec_h, 0, t, Side::Above);
            double rhs = sgn * g.eval(g.section(t), 0, s, Side::Above);
            e = std::max(e, std::abs(lhs - rhs));
        }
        err[i] = e;
    });
    return *std::max_element(err.begin(), err.end());
}

double sderiv_relation_error(const GreenFunction& g, int j, int points, double step) {
    if (j != 1 && j != 2) throw ValidationError("s-derivative check supports j = 1, 2");
    const Domain& d = g.domain();
    std::mt19937 rng(20240611u);
    std::uniform_real_distribution<double> U(d.a + 0.05 * d.length(), d.b - 0.05 * d.length());
    double worst = 0.0;
    int done = 0;
    while (done < points) {
        double t = U(rng), s = U(rng);
        if (std::abs(t - s) < 0.02 * d.length()) continue;
        ++done;
        auto f = [&](double ss) { return g.eval(g.section(ss), 0, t, Side::Above); };
        double fd;
        if (j == 1)
            fd = -(f(s + step) - f(s - step)) / (2 * step);
        else
            fd = (f(s + step) - 2 * f(s) + f(s - step)) / (step * step);
        double col = g.eval(g.section(s, j), 0, t, Side::Above);
        worst = std::max(worst, std::abs(fd - col));
    }
    return worst;
}

VerificationReport verify_green(const GreenFunction& g, int grid, VerifyTolerances tol) {
    if (grid < 3) throw ValidationError("verification grid must be at least 3");
    const int n = g.space().n, k = g.space().k();
    const Domain& d = g.domain();
    const double M = g.M();
    const double h = d.length() / grid;
    struct Row { double ode = 0, bc = 0, cont = 0, jump = 0; };
    std::vector<Row> rows(grid);
    parallel_for(grid, [&](std::size_t i) {
        Row r;
        double s = d.a + (i + 0.5) * h;
        auto sec = g.section(s);
        for (int jt = 0; jt < grid; ++jt) {
            double t = d.a + (jt + 0.5) * h;
            if (t == s) continue;
            double v = g.eval(sec, 0, t, Side::Above);
            double vn = g.eval(sec, n, t, Side::Above);
            r.ode = std::max(r.ode, std::abs(vn + M * v) / (1.0 + std::abs(M) * std::abs(v)));
        }
        for (int j = 0; j < k; ++j)
            r.bc = std::max(r.bc, std::abs(g.eval(sec, g.space().left[j], d.a, Side::Above)));
        for (int j = 0; j < n - k; ++j)
            r.bc = std::max(r.bc, std::abs(g.eval(sec, g.space().right[j], d.b, Side::Above)));
        for (int q = 0; q <= n - 2; ++q)
            r.cont = std::max(r.cont, std::abs(g.eval(sec, q, s, Side::Above) -
                                                g.eval(sec, q, s, Side::Below)));
        r.jump = std::abs(g.eval(sec, n - 1, s, Side::Above) - g.eval(sec, n - 1, s, Side::Below) - 1.0);
        rows[i] = r;
    });
    VerificationReport rep;
    for (const auto& r : rows) {
        rep.ode_residual = std::max(rep.ode_residual, r.ode);
        rep.bc_residual = std::max(rep.bc_residual, r.bc);
        rep.continuity_error = std::max(rep.continuity_error, r.cont);
        rep.jump_error = std::max(rep.jump_error, r.jump);
    }
    try {
        rep.adjoint_error = adjoint_symmetry_error(g, std::min(grid, 51));
    } catch (const EigenvalueCollisionError&) {
        rep.adjoint_error.reset();
    }
    rep.sderiv_error = sderiv_relation_error(g, 1, 20, 1e-5);
    const double scale = 1.0 + std::abs(M);
    rep.passed = rep.ode_residual <= tol.ode && rep.bc_residual <= tol.bc * scale &&
                 rep.continuity_error <= tol.continuity && rep.jump_error <= tol.jump &&
                 (!rep.adjoint_error || *rep.adjoint_error <= tol.adjoint) &&
                 rep.sderiv_error <= tol.sderiv;
    return rep;
}

void write_green_csv(const GreenFunction& g, int grid, std::ostream& out) {
    if (grid < 1) throw ValidationError("grid must be positive");
    const int n = g.space().n;
    const Domain& d = g.domain();
    const double h = d.length() / grid;
    out << "t,s,g";
    for (int q = 1; q <= n - 1; ++q) out << ",dg" << q;
    out << "\n";
    out.precision(17);
    for (int i = 0; i < grid; ++i) {
        double t = d.a + (i + 0.5) * h;
        for (int j = 0; j < grid; ++j) {
            double s = d.a + (j + 0.5) * h;
            auto sec = g.section(s);
            out << t << "," << s;
            for (int q = 0; q <= n - 1; ++q) out << "," << g.eval(sec, q, t, Side::Above);
            out << "\n";
        }
    }
}

} // namespace greensign
