#pragma once
#include "greensign/green.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace greensign {

// k1(t) <= ratio <= k2(t) on the given nodes, ratio = sign * d^q g(t,s) / phi(s).
struct EnvelopeTable {
    int q = 0;
    double sign = 1.0; // (-1)^{d_q}; +1 for g itself
    std::vector<double> k1, k2;
    double k1_max = 0.0, k2_max = 0.0; // max over [a,b] of |k1|, |k2|
};

struct ConeEnvelope {
    int eta = 0, gamma = 0; // phi(s) = (s-a)^eta (b-s)^gamma
    Domain domain;
    double M = 0.0;
    std::vector<double> t; // tabulation nodes
    EnvelopeTable base;
    std::map<int, EnvelopeTable> derivs; // one per CaseA q of the cone
    std::pair<double, double> I1{0.0, 0.0};
    double m1 = 0.0; // min over I1 of |k1|

    double phi(double s) const;
};

// Extended ratio bounds at a single t (endpoint values from the one-sided limits).
struct RatioBounds {
    double k1, k2;
    double s_min, s_max; // where they are attained
};
RatioBounds ratio_bounds(const GreenFunction& g, int q, double sign, int eta, int gamma, double t,
                         int s_grid = 201);

// Limits of sign * d^q g(t,s) / phi(s) at s = a and s = b from one-sided finite
// differences in s of order at least 6.
std::pair<double, double> ratio_limits(const GreenFunction& g, int q, double sign, int eta,
                                       int gamma, double t);

// Requires n-k even, g strictly positive and every CaseA q strictly of sign (-1)^{d_q};
// throws NotApplicableError otherwise. Envelopes are built for the CaseA entries of q_list.
ConeEnvelope build_envelope(const GreenFunction& g, const std::vector<int>& q_list,
                            std::pair<double, double> I1, std::vector<double> nodes);
ConeEnvelope build_envelope(const GreenFunction& g, const std::vector<int>& q_list,
                            std::pair<double, double> I1, int grid = 101);

std::vector<double> uniform_nodes(const Domain& d, int grid); // includes both endpoints

// Values of u and its derivatives 0..n-1 on a fixed node set.
struct SampledFunction {
    std::vector<double> t;
    std::vector<std::vector<double>> d; // d[order][node]

    int orders() const { return static_cast<int>(d.size()); }
    double sup(int order) const;
};

SampledFunction sample_function(const std::vector<double>& t, int orders,
                                const std::function<double(double, int)>& u);

struct ConeCondition {
    std::string name;
    double margin = 0.0; // worst value of (lhs - rhs) over the nodes
    bool satisfied = false;
};
struct ConeReport {
    std::vector<ConeCondition> conditions;
    bool member = false;
};

// Sign blocks: CaseA q -> (-1)^{d_q} u^(q) >= 0 plus the lower bound, CaseB q -> u^(q) >= 0,
// CaseC q -> (-1)^{n-q} u^(q) >= 0. A condition holds when margin >= -tol * scale.
ConeReport cone_membership(const SampledFunction& u, const ConeEnvelope& env,
                           const TwoPointSpace& space, const std::vector<int>& q_list,
                           double tol = 1e-10);

using Nonlinearity = std::function<double(double t, const double* x, int n)>;

struct NonlinearProblem {
    TwoPointSpace space;
    Domain domain;
    double M = 0.0;
    std::string f_name;
    Nonlinearity f;
    std::vector<int> q_list;
    std::pair<double, double> I1{0.0, 0.0};
};

// Samples f on a seeded grid of (t, x) and throws ValidationError if it goes negative.
void check_nonnegative(const NonlinearProblem& p);

// "builtin:<name>" or "table:<file>" (two columns t,f; f independent of x, linear interpolation).
Nonlinearity resolve_nonlinearity(const std::string& ref);
std::vector<std::string> builtin_names();

// Composite 16-point Gauss-Legendre rule with the panel holding t split at s = t.
// Precomputes (L u)^(q)(t_i) = sum_k W_q(i,k) F(s_k) for q = 0..n-1.
class IntegralOperator {
public:
    IntegralOperator(const GreenFunction& g, int panels = 8);

    const std::vector<double>& nodes() const { return nodes_; }
    const Eigen::MatrixXd& weights(int q) const { return W_[q]; }
    int order() const { return n_; }

    // F sampled at nodes() -> sampled image with derivatives 0..n-1.
    SampledFunction integrate(const std::vector<double>& F) const;

private:
    int n_;
    std::vector<double> nodes_;
    std::vector<Eigen::MatrixXd> W_;
};

SampledFunction apply_L(const IntegralOperator& op, const Nonlinearity& f, const SampledFunction& u);

struct PicardResult {
    SampledFunction u;
    int iterations = 0;
    bool converged = false;
    double last_step = 0.0; // max over orders of the sup-norm update
    double residual = 0.0;  // max over orders of ||u - L u||
    ConeReport cone;
};

PicardResult picard_solve(const NonlinearProblem& p, const IntegralOperator& op,
                          const ConeEnvelope& env, int max_iter = 500, double tol = 1e-12,
                          double omega = 1.0);

// Ratio f / sum |x| along x = r (1,...,1): minimum over t for r -> 0 and maximum over t
// for r -> infinity. Reported as trends, nothing is certified.
struct GrowthDiagnostic {
    std::vector<std::pair<double, double>> near_zero; // (r, min_t ratio)
    std::vector<std::pair<double, double>> near_inf;  // (r, max_t ratio)
    bool near_zero_increasing = false;
    bool near_inf_decreasing = false;
};
GrowthDiagnostic growth_diagnostic(const NonlinearProblem& p);

// Header "t,u,du1,...".
void write_solution_csv(const SampledFunction& u, std::ostream& out);

} // namespace greensign
