#include "greensign/spectral.hpp"
#include "greensign/errors.hpp"
#include "greensign/linalg.hpp"
#include "greensign/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace greensign {

namespace {

Eigen::MatrixXd boundary_matrix(const RealBasis& basis, const TwoPointSpace& space,
                                const Domain& dom) {
    const int n = space.n;
    const int rows = static_cast<int>(space.left.size() + space.right.size());
    Eigen::MatrixXd B(rows, n);
    int r = 0;
    for (int o : space.left) {
        auto v = basis.eval(dom.a, o);
        for (int i = 0; i < n; ++i) B(r, i) = v[i];
        ++r;
    }
    for (int o : space.right) {
        auto v = basis.eval(dom.b, o);
        for (int i = 0; i < n; ++i) B(r, i) = v[i];
        ++r;
    }
    return B;
}

int sgn(double x) { return (x > 0) - (x < 0); }

double lambda_of(double m, int n, Direction dir) {
    double v = std::pow(m, n);
    return dir == Direction::FirstPositive ? v : -v;
}

} // namespace

const char* to_string(Direction d) {
    return d == Direction::FirstPositive ? "FirstPositive" : "FirstNegative";
}

EigenQuery make_query(const TwoPointSpace& space, const Domain& domain, Direction dir) {
    EigenQuery q;
    q.space = space;
    q.domain = domain;
    q.direction = dir;
    q.m_max = 20.0 / domain.length();
    return q;
}

double char_det(const TwoPointSpace& space, const Domain& domain, double lambda) {
    require_complete(space);
    auto sys = build_system(space.n, lambda);
    auto basis = RealBasis::automatic(sys, domain);
    return normalized_determinant(boundary_matrix(basis, space, domain)) *
           basis.exponential_orientation();
}

EigenOutcome first_eigenvalue(const EigenQuery& q) {
    require_complete(q.space);
    if (!(q.m_max > 0)) throw ValidationError("m_max must be positive");
    if (q.scan_points < 100) throw ValidationError("scan points must be at least 100");
    if (!(q.refine_tol > 0)) throw ValidationError("refine tolerance must be positive");
    const int n = q.space.n;
    const int N = q.scan_points;
    auto f = [&](double m) { return char_det(q.space, q.domain, lambda_of(m, n, q.direction)); };
    std::vector<double> ms(N), ds(N);
    for (int i = 0; i < N; ++i) ms[i] = q.m_max * (i + 1) / N;
    parallel_for(N, [&](std::size_t i) { ds[i] = f(ms[i]); });

    std::vector<double> dips;
    int hit = -1;
    for (int i = 0; i + 1 < N; ++i) {
        if (sgn(ds[i]) != sgn(ds[i + 1]) || ds[i] == 0.0) {
            hit = i;
            break;
        }
        if (i > 0) {
            double a = std::abs(ds[i - 1]), b = std::abs(ds[i]), c = std::abs(ds[i + 1]);
            if (b < a && b < c && b < 0.05 * std::min(a, c)) dips.push_back(ms[i]);
        }
    }
    if (hit < 0) return NotFoundInRange{q.m_max, N, dips};

    double lo = ms[hit], hi = ms[hit + 1];
    double flo = ds[hit];
    if (flo == 0.0) hi = lo;
    while (hi - lo > q.refine_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sgn(fm) == sgn(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    EigenResult r;
    r.m = 0.5 * (lo + hi);
    r.lambda = lambda_of(r.m, n, q.direction);
    r.bracket = {lo, hi};
    r.residual = std::abs(char_det(q.space, q.domain, r.lambda));
    r.dips = dips;
    auto kf = boundary_kernel(q.space, q.domain, r.lambda);
    r.kernel = kf.coef;
    double nrm = 0.0;
    for (double c : r.kernel) nrm += c * c;
    nrm = std::sqrt(nrm);
    for (double& c : r.kernel) c /= nrm;
    return r;
}

double KernelFunction::operator()(double t, int d) const {
    auto u = basis.eval(t, d);
    double v = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) v += coef[i] * u[i];
    return v;
}

int KernelFunction::interior_sign_changes(const Domain& dom, int grid) const {
    int changes = 0, last = 0;
    double scale = 0.0;
    std::vector<double> v(grid);
    for (int i = 0; i < grid; ++i) {
        v[i] = (*this)(dom.a + (i + 0.5) * dom.length() / grid);
        scale = std::max(scale, std::abs(v[i]));
    }
    for (double x : v) {
        if (std::abs(x) <= 1e-9 * scale) continue;
        int s = sgn(x);
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

KernelFunction boundary_kernel(const TwoPointSpace& space, const Domain& domain, double lambda) {
    const int n = space.n;
    if (static_cast<int>(space.left.size() + space.right.size()) > n)
        throw ValidationError("more boundary conditions than the operator order");
    auto sys = build_system(n, lambda);
    KernelFunction kf{RealBasis::automatic(sys, domain), {}, 0.0, false};
    Eigen::MatrixXd B = boundary_matrix(kf.basis, space, domain);
    Eigen::VectorXd c;
    if (B.rows() == 0) {
        c = Eigen::VectorXd::Unit(n, 0);
    } else {
        for (Eigen::Index i = 0; i < B.rows(); ++i) B.row(i) /= B.row(i).norm();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullV);
        c = svd.matrixV().col(n - 1);
        const auto& sv = svd.singularValues();
        if (B.rows() == n && n >= 2 && sv(n - 2) < 1e-6 * sv(0)) kf.multiplicity_warning = true;
    }
    kf.coef.assign(c.data(), c.data() + n);
    // normalize: max |u| = 1 with positive sign at the maximizer
    double best = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double v = kf(domain.a + i * domain.length() / 999.0);
        if (std::abs(v) > std::abs(best)) best = v;
    }
    if (best != 0.0)
        for (double& x : kf.coef) x /= best;
    const double mscale = std::max(1.0, sys.m);
    for (int o : space.left)
        kf.bc_residual = std::max(kf.bc_residual, std::abs(kf(domain.a, o)) / std::pow(mscale, o));
    for (int o : space.right)
        kf.bc_residual = std::max(kf.bc_residual, std::abs(kf(domain.b, o)) / std::pow(mscale, o));
    return kf;
}

KernelFunction eigenfunction(const EigenResult& result, const TwoPointSpace& space,
                             const Domain& domain) {
    require_complete(space);
    auto kf = boundary_kernel(space, domain, result.lambda);
    if (kf.bc_residual > 1e-8)
        throw NumericalError("eigenfunction boundary residual " + std::to_string(kf.bc_residual));
    return kf;
}

} // namespace greensign
