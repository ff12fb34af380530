#include "greensign/cone.hpp"
#include "greensign/errors.hpp"
#include "greensign/parallel.hpp"
#include "greensign/sign_analysis.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace greensign {

namespace {

// Fornberg's recursion: weights of the m-th derivative at x0 from values at xs.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
    const int N = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(N, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < N; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(N);
    for (int i = 0; i < N; ++i) w[i] = c[i][m];
    return w;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double phi_of(const Domain& d, int eta, int gamma, double s) {
    return std::pow(s - d.a, eta) * std::pow(d.b - s, gamma);
}

// Best value of fn over [lo, hi]: 101-point scan, then Brent around the best sample.
double extreme(const std::function<double(double)>& fn, double lo, double hi, bool maximize) {
    const int N = 101;
    const double sgn = maximize ? -1.0 : 1.0;
    std::vector<double> xs(N), vs(N);
    for (int i = 0; i < N; ++i) xs[i] = lo + (hi - lo) * i / (N - 1);
    parallel_for(N, [&](std::size_t i) { vs[i] = sgn * fn(xs[i]); });
    int best = static_cast<int>(std::min_element(vs.begin(), vs.end()) - vs.begin());
    double val = vs[best];
    double l = xs[std::max(best - 1, 0)], h = xs[std::min(best + 1, N - 1)];
    if (h > l) {
        auto r = boost::math::tools::brent_find_minima([&](double x) { return sgn * fn(x); }, l, h, 40);
        val = std::min(val, r.second);
    }
    return sgn * val;
}

const std::array<double, 16>& gl_nodes() {
    static const std::array<double, 16> x = [] {
        std::array<double, 16> out{};
        const auto& a = boost::math::quadrature::gauss<double, 16>::abscissa();
        for (int i = 0; i < 8; ++i) {
            out[7 - i] = -a[i];
            out[8 + i] = a[i];
        }
        return out;
    }();
    return x;
}

const std::array<double, 16>& gl_weights() {
    static const std::array<double, 16> w = [] {
        std::array<double, 16> out{};
        const auto& v = boost::math::quadrature::gauss<double, 16>::weights();
        for (int i = 0; i < 8; ++i) out[7 - i] = out[8 + i] = v[i];
        return out;
    }();
    return w;
}

// Lagrange basis values at x for the nodes xs (barycentric form).
std::vector<double> lagrange_row(const std::vector<double>& xs, double x) {
    const std::size_t N = xs.size();
    std::vector<double> bw(N, 1.0), out(N, 0.0);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
            if (k != j) bw[j] /= (xs[j] - xs[k]);
    double den = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        if (x == xs[j]) {
            out[j] = 1.0;
            return out;
        }
        out[j] = bw[j] / (x - xs[j]);
        den += out[j];
    }
    for (double& v : out) v /= den;
    return out;
}

std::string order_name(int q) { return q == 0 ? "u" : "u^(" + std::to_string(q) + ")"; }

} // namespace

double ConeEnvelope::phi(double s) const { return phi_of(domain, eta, gamma, s); }

std::vector<double> uniform_nodes(const Domain& d, int grid) {
    if (grid < 2) throw ValidationError("grid must be at least 2");
    std::vector<double> t(grid);
    for (int i = 0; i < grid; ++i) t[i] = d.a + d.length() * i / (grid - 1);
    t.back() = d.b;
    return t;
}

std::pair<double, double> ratio_limits(const GreenFunction& g, int q, double sign, int eta,
                                       int gamma, double t) {
    const Domain& d = g.domain();
    const double L = d.length();
    const double hs = 0.01 * L / std::max(1.0, g.system().m * L / 4.0);
    auto one_sided = [&](double x0, double dir, int order, Side branch) {
        const int npts = order + 7;
        std::vector<double> xs(npts);
        for (int i = 0; i < npts; ++i) xs[i] = x0 + dir * i * hs;
        auto w = fd_weights(x0, xs, order);
        double D = 0.0;
        for (int i = 0; i < npts; ++i) D += w[i] * sign * g.eval_branch(g.section(xs[i]), q, t, branch);
        return D;
    };
    double h1 = one_sided(d.a, 1.0, eta, t > d.a ? Side::Above : Side::Below) / factorial(eta) /
                std::pow(L, gamma);
    double h2 = (gamma % 2 == 0 ? 1.0 : -1.0) *
                one_sided(d.b, -1.0, gamma, t < d.b ? Side::Below : Side::Above) / factorial(gamma) /
                std::pow(L, eta);
    if (!std::isfinite(h1) || !std::isfinite(h2))
        throw NumericalError("non-finite endpoint limit of the envelope ratio");
    return {h1, h2};
}

RatioBounds ratio_bounds(const GreenFunction& g, int q, double sign, int eta, int gamma, double t,
                         int s_grid) {
    if (s_grid < 5) throw ValidationError("s grid must be at least 5");
    const Domain& d = g.domain();
    const double L = d.length();
    auto ratio = [&](double s) {
        return sign * g.eval(g.section(s), q, t, Side::Above) / phi_of(d, eta, gamma, s);
    };
    auto lim = ratio_limits(g, q, sign, eta, gamma, t);
    std::vector<std::pair<double, double>> pts; // (s, value)
    pts.push_back({d.a, lim.first});
    for (int j = 1; j < s_grid - 1; ++j) {
        double s = d.a + L * j / (s_grid - 1);
        pts.push_back({s, ratio(s)});
    }
    if (t > d.a && t < d.b) pts.push_back({t, ratio(t)});
    pts.push_back({d.b, lim.second});
    std::sort(pts.begin(), pts.end());

    const double guard = 0.5 * L / (s_grid - 1);
    auto refine = [&](std::size_t p, double sgn) {
        double val = sgn * pts[p].second, at = pts[p].first;
        if (p == 0 || p + 1 == pts.size()) return std::make_pair(at, sgn * val);
        double lo = std::max(pts[p - 1].first, d.a + guard);
        double hi = std::min(pts[p + 1].first, d.b - guard);
        if (hi > lo) {
            auto r = boost::math::tools::brent_find_minima([&](double s) { return sgn * ratio(s); },
                                                          lo, hi, 40);
            if (r.second < val) {
                val = r.second;
                at = r.first;
            }
        }
        return std::make_pair(at, sgn * val);
    };
    std::size_t pmin = 0, pmax = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].second < pts[pmin].second) pmin = i;
        if (pts[i].second > pts[pmax].second) pmax = i;
    }
    auto lo = refine(pmin, 1.0);
    auto hi = refine(pmax, -1.0);
    return {lo.second, hi.second, lo.first, hi.first};
}

namespace {

// k1/k2 at t; at t = a or t = b the one-sided limit in t, by polynomial extrapolation
// from six interior points (the ratio itself degenerates there).
std::pair<double, double> envelope_point(const GreenFunction& g, int q, double sign, int eta,
                                         int gamma, double t) {
    const Domain& d = g.domain();
    if (t > d.a && t < d.b) {
        auto rb = ratio_bounds(g, q, sign, eta, gamma, t);
        return {rb.k1, rb.k2};
    }
    const double L = d.length();
    const double delta = 0.01 * L / std::max(1.0, g.system().m * L / 4.0);
    const double dir = t <= d.a ? 1.0 : -1.0;
    const int K = 6;
    std::vector<double> xs(K), w;
    for (int j = 0; j < K; ++j) xs[j] = t + dir * (j + 1) * delta;
    w = fd_weights(t, xs, 0);
    double k1 = 0.0, k2 = 0.0;
    for (int j = 0; j < K; ++j) {
        auto rb = ratio_bounds(g, q, sign, eta, gamma, xs[j]);
        k1 += w[j] * rb.k1;
        k2 += w[j] * rb.k2;
    }
    return {k1, k2};
}

} // namespace

ConeEnvelope build_envelope(const GreenFunction& g, const std::vector<int>& q_list,
                            std::pair<double, double> I1, std::vector<double> nodes) {
    const auto& sp = g.space();
    const Domain& dom = g.domain();
    const int n = sp.n;
    if ((n - sp.k()) % 2 != 0)
        throw NotApplicableError("only the positive-sign cone (n-k even) is implemented");
    if (!(I1.first >= dom.a && I1.second <= dom.b && I1.first < I1.second))
        throw ValidationError("I1 must be a nondegenerate subinterval of [a,b]");
    if (nodes.empty()) throw ValidationError("no tabulation nodes");

    auto base_report = verify_sign(sp, dom, 0, g.M(), 101, Strictness::Strict, 1);
    if (base_report.verdict != SignVerdict::StrictSignConfirmed)
        throw NotApplicableError(std::string("g is not strictly positive at this M: ") +
                                 to_string(base_report.verdict));
    std::vector<std::pair<int, double>> caseA;
    for (int q : q_list) {
        if (q < 1 || q > n - 1) throw ValidationError("q_list entries must lie in [1, n-1]");
        auto d = derivative_space(sp, q);
        SignReport rep;
        switch (d.sign_case) {
        case SignCase::CaseA: {
            double s = d.d_q % 2 == 0 ? 1.0 : -1.0;
            rep = verify_sign(sp, dom, q, g.M(), 101, Strictness::Strict, static_cast<int>(s));
            if (rep.verdict != SignVerdict::StrictSignConfirmed)
                throw NotApplicableError("derivative " + std::to_string(q) + " is not strictly signed");
            caseA.push_back({q, s});
            break;
        }
        case SignCase::CaseB:
        case SignCase::CaseC: {
            int s = d.sign_case == SignCase::CaseB || (n - q) % 2 == 0 ? 1 : -1;
            rep = verify_sign(sp, dom, q, g.M(), 101, Strictness::Weak, s);
            if (rep.verdict == SignVerdict::SignViolated || rep.verdict == SignVerdict::Inconclusive)
                throw NotApplicableError("derivative " + std::to_string(q) + " is not signed");
            break;
        }
        case SignCase::NoConstantSign:
            throw ValidationError("derivative " + std::to_string(q) + " cannot have constant sign");
        }
    }

    ConeEnvelope env;
    auto ab = alpha_beta(adjoint(sp));
    env.eta = ab.alpha;
    env.gamma = ab.beta;
    env.domain = dom;
    env.M = g.M();
    env.t = std::move(nodes);
    env.I1 = I1;

    auto table = [&](int q, double sign) {
        EnvelopeTable tab;
        tab.q = q;
        tab.sign = sign;
        const std::size_t N = env.t.size();
        tab.k1.assign(N, 0.0);
        tab.k2.assign(N, 0.0);
        parallel_for(N, [&](std::size_t i) {
            auto k = envelope_point(g, q, sign, env.eta, env.gamma, env.t[i]);
            tab.k1[i] = k.first;
            tab.k2[i] = k.second;
        });
        auto k1 = [&](double t) { return std::abs(envelope_point(g, q, sign, env.eta, env.gamma, t).first); };
        auto k2 = [&](double t) { return std::abs(envelope_point(g, q, sign, env.eta, env.gamma, t).second); };
        tab.k1_max = extreme(k1, dom.a, dom.b, true);
        tab.k2_max = extreme(k2, dom.a, dom.b, true);
        return tab;
    };
    env.base = table(0, 1.0);
    env.m1 = extreme([&](double t) { return std::abs(envelope_point(g, 0, 1.0, env.eta, env.gamma, t).first); },
                     I1.first, I1.second, false);
    for (auto [q, s] : caseA) env.derivs[q] = table(q, s);
    return env;
}

ConeEnvelope build_envelope(const GreenFunction& g, const std::vector<int>& q_list,
                            std::pair<double, double> I1, int grid) {
    return build_envelope(g, q_list, I1, uniform_nodes(g.domain(), grid));
}

double SampledFunction::sup(int order) const {
    double m = 0.0;
    for (double x : d.at(order)) m = std::max(m, std::abs(x));
    return m;
}

SampledFunction sample_function(const std::vector<double>& t, int orders,
                                const std::function<double(double, int)>& u) {
    SampledFunction out;
    out.t = t;
    out.d.assign(orders, std::vector<double>(t.size()));
    for (int o = 0; o < orders; ++o)
        for (std::size_t i = 0; i < t.size(); ++i) out.d[o][i] = u(t[i], o);
    return out;
}

ConeReport cone_membership(const SampledFunction& u, const ConeEnvelope& env,
                           const TwoPointSpace& space, const std::vector<int>& q_list, double tol) {
    if (u.t.size() != env.t.size())
        throw ValidationError("sampled function and envelope use different nodes");
    for (std::size_t i = 0; i < u.t.size(); ++i)
        if (std::abs(u.t[i] - env.t[i]) > 1e-12 * (1.0 + std::abs(env.t[i])))
            throw ValidationError("sampled function and envelope use different nodes");
    const int n = space.n;
    ConeReport rep;
    auto add = [&](std::string name, double margin, double scale) {
        double floor = tol * (scale > 0 ? scale : 1.0);
        rep.conditions.push_back({std::move(name), margin, margin >= -floor});
    };
    auto sign_cond = [&](int q, double s) {
        const auto& v = u.d.at(q);
        double m = std::numeric_limits<double>::infinity();
        for (double x : v) m = std::min(m, s * x);
        add((s < 0 ? "-" : "") + order_name(q) + " >= 0", m, u.sup(q));
    };
    auto bound_cond = [&](int q, double s, const EnvelopeTable& tab) {
        const auto& v = u.d.at(q);
        const double nrm = u.sup(q);
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i) m = std::min(m, s * v[i] - tab.k1[i] / tab.k2_max * nrm);
        std::string lhs = (s < 0 ? "-" : "") + order_name(q);
        add(lhs + " >= k1(t)/k2 * |" + order_name(q) + "|", m, nrm);
    };
    sign_cond(0, 1.0);
    bound_cond(0, 1.0, env.base);
    for (int q : q_list) {
        auto d = derivative_space(space, q);
        if (q >= u.orders()) throw ValidationError("sampled function lacks derivative " + std::to_string(q));
        switch (d.sign_case) {
        case SignCase::CaseA: {
            double s = d.d_q % 2 == 0 ? 1.0 : -1.0;
            sign_cond(q, s);
            auto it = env.derivs.find(q);
            if (it == env.derivs.end()) throw ValidationError("envelope lacks derivative " + std::to_string(q));
            bound_cond(q, s, it->second);
            break;
        }
        case SignCase::CaseB: sign_cond(q, 1.0); break;
        case SignCase::CaseC: sign_cond(q, (n - q) % 2 == 0 ? 1.0 : -1.0); break;
        case SignCase::NoConstantSign:
            throw ValidationError("derivative " + std::to_string(q) + " cannot have constant sign");
        }
    }
    rep.member = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                             [](const ConeCondition& c) { return c.satisfied; });
    return rep;
}

std::vector<std::string> builtin_names() { return {"bounded_decay", "one", "zero"}; }

Nonlinearity resolve_nonlinearity(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) {
        std::string name = ref.substr(8);
        if (name == "bounded_decay")
            return [](double t, const double* x, int n) {
                double sq = 0.0, ab = 0.0;
                for (int i = 0; i < n; ++i) {
                    sq += x[i] * x[i];
                    ab += std::abs(x[i]);
                }
                return (std::pow(t, 4) + 1.0) * (std::exp(-std::sqrt(sq)) + 1.0 / std::log(std::exp(1.0) + ab));
            };
        if (name == "one") return [](double, const double*, int) { return 1.0; };
        if (name == "zero") return [](double, const double*, int) { return 0.0; };
        throw ValidationError("unknown builtin nonlinearity '" + name + "'");
    }
    if (ref.rfind("table:", 0) == 0) {
        std::string path = ref.substr(6);
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open table '" + path + "'");
        std::vector<std::pair<double, double>> rows;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream is(line);
            double t, f;
            if (!(is >> t >> f)) {
                if (lineno == 1) continue; // header
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                throw ValidationError("table '" + path + "' line " + std::to_string(lineno) + ": expected t,f");
            }
            rows.push_back({t, f});
        }
        if (rows.size() < 2) throw ValidationError("table '" + path + "' needs at least two rows");
        std::sort(rows.begin(), rows.end());
        return [rows](double t, const double*, int) {
            if (t <= rows.front().first) return rows.front().second;
            if (t >= rows.back().first) return rows.back().second;
            auto it = std::upper_bound(rows.begin(), rows.end(), std::make_pair(t, -std::numeric_limits<double>::infinity()));
            auto lo = it - 1;
            double w = (t - lo->first) / (it->first - lo->first);
            return lo->second * (1 - w) + it->second * w;
        };
    }
    throw ValidationError("nonlinearity must be 'builtin:<name>' or 'table:<file>'");
}

void check_nonnegative(const NonlinearProblem& p) {
    if (!p.f) throw ValidationError("no nonlinearity");
    const int n = p.space.n;
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> T(p.domain.a, p.domain.b), E(-6.0, 6.0), S(-1.0, 1.0);
    std::vector<double> x(n);
    for (int i = 0; i < 2000; ++i) {
        double t = T(rng);
        for (double& v : x) v = (S(rng) < 0 ? -1.0 : 1.0) * std::pow(10.0, E(rng));
        if (i % 10 == 0) std::fill(x.begin(), x.end(), 0.0);
        double v = p.f(t, x.data(), n);
        if (!std::isfinite(v)) throw NumericalError("nonlinearity is not finite at a sample point");
        if (v < 0) throw ValidationError("nonlinearity takes negative values");
    }
}

IntegralOperator::IntegralOperator(const GreenFunction& g, int panels) : n_(g.space().n) {
    if (panels < 2) throw ValidationError("quadrature needs at least 2 panels");
    const Domain& d = g.domain();
    const auto& xi = gl_nodes();
    const auto& wi = gl_weights();
    const int P = panels, Q = 16, N = P * Q;
    const double hp = d.length() / P;
    nodes_.resize(N);
    std::vector<double> w(N);
    std::vector<std::vector<double>> panel_nodes(P);
    for (int p = 0; p < P; ++p) {
        double mid = d.a + (p + 0.5) * hp;
        for (int j = 0; j < Q; ++j) {
            nodes_[p * Q + j] = mid + 0.5 * hp * xi[j];
            w[p * Q + j] = 0.5 * hp * wi[j];
            panel_nodes[p].push_back(nodes_[p * Q + j]);
        }
    }
    std::vector<GreenSection> secs(N);
    parallel_for(N, [&](std::size_t k) { secs[k] = g.section(nodes_[k]); });
    W_.assign(n_, Eigen::MatrixXd::Zero(N, N));
    parallel_for(N, [&](std::size_t i) {
        const double t = nodes_[i];
        const int own = static_cast<int>(i) / Q;
        for (int k = 0; k < N; ++k) {
            if (k / Q == own) continue;
            for (int q = 0; q < n_; ++q) W_[q](i, k) += w[k] * g.eval(secs[k], q, t, Side::Above);
        }
        const double lo = d.a + own * hp, hi = lo + hp;
        for (auto [l, h] : {std::make_pair(lo, t), std::make_pair(t, hi)}) {
            const double half = 0.5 * (h - l), mid = 0.5 * (h + l);
            for (int m = 0; m < Q; ++m) {
                double y = mid + half * xi[m];
                auto sec = g.section(y);
                auto row = lagrange_row(panel_nodes[own], y);
                for (int q = 0; q < n_; ++q) {
                    double val = half * wi[m] * g.eval(sec, q, t, Side::Above);
                    for (int j = 0; j < Q; ++j) W_[q](i, own * Q + j) += val * row[j];
                }
            }
        }
    });
}

SampledFunction IntegralOperator::integrate(const std::vector<double>& F) const {
    if (F.size() != nodes_.size()) throw ValidationError("integrand sampled on the wrong nodes");
    Eigen::Map<const Eigen::VectorXd> f(F.data(), static_cast<Eigen::Index>(F.size()));
    SampledFunction out;
    out.t = nodes_;
    out.d.resize(n_);
    for (int q = 0; q < n_; ++q) {
        Eigen::VectorXd v = W_[q] * f;
        out.d[q].assign(v.data(), v.data() + v.size());
    }
    return out;
}

SampledFunction apply_L(const IntegralOperator& op, const Nonlinearity& f, const SampledFunction& u) {
    const int n = op.order();
    const auto& t = op.nodes();
    if (u.t.size() != t.size() || u.orders() < n)
        throw ValidationError("sampled function does not match the quadrature nodes");
    std::vector<double> F(t.size()), x(n);
    for (std::size_t k = 0; k < t.size(); ++k) {
        for (int o = 0; o < n; ++o) x[o] = u.d[o][k];
        F[k] = f(t[k], x.data(), n);
        if (!std::isfinite(F[k])) throw NumericalError("nonlinearity returned a non-finite value");
    }
    return op.integrate(F);
}

namespace {
double max_diff(const SampledFunction& a, const SampledFunction& b) {
    double m = 0.0;
    for (int o = 0; o < a.orders(); ++o)
        for (std::size_t i = 0; i < a.t.size(); ++i) m = std::max(m, std::abs(a.d[o][i] - b.d[o][i]));
    return m;
}
} // namespace

PicardResult picard_solve(const NonlinearProblem& p, const IntegralOperator& op,
                          const ConeEnvelope& env, int max_iter, double tol, double omega) {
    if (!(omega > 0 && omega <= 1)) throw ValidationError("damping must lie in (0, 1]");
    if (max_iter < 1) throw ValidationError("at least one iteration is needed");
    const int n = op.order();
    SampledFunction zero;
    zero.t = op.nodes();
    zero.d.assign(n, std::vector<double>(zero.t.size(), 0.0));
    PicardResult r;
    r.u = apply_L(op, p.f, zero);
    for (int it = 1; it <= max_iter; ++it) {
        auto Lu = apply_L(op, p.f, r.u);
        r.last_step = max_diff(Lu, r.u);
        for (int o = 0; o < n; ++o)
            for (std::size_t i = 0; i < Lu.t.size(); ++i) r.u.d[o][i] += omega * (Lu.d[o][i] - r.u.d[o][i]);
        r.iterations = it;
        if (r.last_step < tol) {
            r.converged = true;
            break;
        }
    }
    r.residual = max_diff(apply_L(op, p.f, r.u), r.u);
    r.cone = cone_membership(r.u, env, p.space, p.q_list);
    return r;
}

GrowthDiagnostic growth_diagnostic(const NonlinearProblem& p) {
    const int n = p.space.n;
    GrowthDiagnostic g;
    auto ratio_over_t = [&](double r, bool take_min) {
        std::vector<double> x(n, r);
        double best = take_min ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 20; ++i) {
            double t = p.domain.a + p.domain.length() * i / 20.0;
            double v = p.f(t, x.data(), n) / (n * r);
            best = take_min ? std::min(best, v) : std::max(best, v);
        }
        return best;
    };
    for (int e = 1; e <= 8; ++e) {
        double r = std::pow(10.0, -e);
        g.near_zero.push_back({r, ratio_over_t(r, true)});
        double R = std::pow(10.0, e);
        g.near_inf.push_back({R, ratio_over_t(R, false)});
    }
    g.near_zero_increasing = true;
    g.near_inf_decreasing = true;
    for (std::size_t i = 1; i < g.near_zero.size(); ++i) {
        if (!(g.near_zero[i].second > g.near_zero[i - 1].second)) g.near_zero_increasing = false;
        if (!(g.near_inf[i].second < g.near_inf[i - 1].second)) g.near_inf_decreasing = false;
    }
    return g;
}

void write_solution_csv(const SampledFunction& u, std::ostream& out) {
    out << "t,u";
    for (int o = 1; o < u.orders(); ++o) out << ",du" << o;
    out << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < u.t.size(); ++i) {
        out << u.t[i];
        for (int o = 0; o < u.orders(); ++o) out << "," << u.d[o][i];
        out << "\n";
    }
}

} // namespace greensign
