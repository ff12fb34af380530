#pragma once
#include "greensign/combinatorics.hpp"
#include "greensign/green.hpp"
#include "greensign/spectral.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace greensign {

enum class SignType { StronglyPositive, StronglyNegative, Nonnegative, Nonpositive };
enum class PredictionCase { CaseA, CaseB, CaseC, NoConstantSign, NotCoveredByTheorem };
const char* to_string(SignType s);
const char* to_string(PredictionCase c);
inline bool is_positive(SignType s) {
    return s == SignType::StronglyPositive || s == SignType::Nonnegative;
}

// Endpoints may be +-infinity.
struct Interval {
    double lower = 0.0, upper = 0.0;
    bool lower_open = false, upper_open = false;
    bool contains(double M) const;
    std::string str() const;
};

struct Provenance {
    std::string name; // "lambda_1", "lambda_2^q", ...
    TwoPointSpace space;
    Direction direction;
    EigenResult result;
};

struct SignPrediction {
    int q = 0;
    PredictionCase kase = PredictionCase::NotCoveredByTheorem;
    std::optional<SignType> sign;
    std::optional<Interval> interval;
    std::vector<Provenance> provenance;
    bool necessary_only = false;
    std::string note;
};

// Scan settings shared by every eigenvalue a prediction needs.
struct EigenSettings {
    std::optional<double> m_max; // default 20/(b-a)
    int scan_points = 2000;
    double refine_tol = 1e-13;
};

// Throws EigenNotFoundError when the scan brackets nothing.
Provenance locate(const std::string& name, const TwoPointSpace& space, const Domain& domain,
                  Direction dir, const EigenSettings& es);

// Requires (N_a); throws NotApplicableError otherwise.
SignPrediction predict_interval(const TwoPointSpace& space, const Domain& domain, int q,
                                const EigenSettings& es = {});

struct ForbiddenSign {
    SignType sign;
    std::string reason;
};
// Requires CaseA.
std::optional<ForbiddenSign> nonexistence_check(const TwoPointSpace& space, int q);

// Requires CaseA with mu_z != z-1 and rho_h != h-1.
SignPrediction necessary_interval(const TwoPointSpace& space, const Domain& domain, int q,
                                  const EigenSettings& es = {});

// Zero-free range of M for the solutions of the problem space (one condition dropped).
struct ZeroFreeInterval {
    std::string dropped; // "left" or "right"
    TwoPointSpace problem;
    Interval interval;
    std::vector<Provenance> provenance;
};
struct ZeroFreeIntervals {
    ZeroFreeInterval left, right;
};
ZeroFreeIntervals zero_free_intervals(const TwoPointSpace& space, const Domain& domain,
                                           int q, const EigenSettings& es = {});

enum class SignVerdict { StrictSignConfirmed, NonstrictSignConfirmed, SignViolated, Inconclusive };
const char* to_string(SignVerdict v);

// Strict: interior and both endpoint derivatives strictly signed.
// Weak: interior values of one sign up to the margin, endpoints not required.
enum class Strictness { Strict, Weak };

struct SignReport {
    int q = 0;
    double M = 0.0;
    int grid = 0;
    double min_value = 0.0, max_value = 0.0;
    std::vector<double> endpoint_a; // order alpha^q derivative of d^q g at t = a, over s
    std::vector<double> endpoint_b; // (-1)^beta^q times order beta^q derivative at t = b
    int sign = 0;                   // +1, -1, or 0 when undetermined
    SignVerdict verdict = SignVerdict::Inconclusive;
    std::string detail;
};

constexpr double kStrictMargin = 1e-10;

// With an expected sign (+1/-1), a grid of uniform opposite sign counts as a violation.
SignReport verify_sign(const TwoPointSpace& space, const Domain& domain, int q, double M,
                       int grid = 101, Strictness mode = Strictness::Strict,
                       std::optional<int> expected_sign = std::nullopt);

struct SweepResult {
    std::vector<SignReport> reports;
    std::optional<SignPrediction> prediction;
    bool monotonicity_checked = false;
    bool decreasing = true;         // direction required by the parity branch
    long monotonicity_violations = 0;
    int pairs_checked = 0;
};

SweepResult sweep(const TwoPointSpace& space, const Domain& domain, int q,
                  std::vector<double> Ms, int grid = 101, Strictness mode = Strictness::Strict,
                  const EigenSettings& es = {});

void write_sweep_csv(const SweepResult& r, std::ostream& out);

// Strict for CaseA / q = 0 predictions, weak for CaseB / CaseC.
Strictness strictness_for(const SignPrediction& p);
// +1 / -1 from the predicted sign, empty without one.
std::optional<int> expected_sign(const SignPrediction& p);

} // namespace greensign
