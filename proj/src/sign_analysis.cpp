#include "greensign/sign_analysis.hpp"
#include "greensign/errors.hpp"
#include "greensign/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace greensign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Direction opposite(Direction d) {
    return d == Direction::FirstPositive ? Direction::FirstNegative : Direction::FirstPositive;
}

// lambda_1 is the first eigenvalue on the side fixed by the parity of n-k.
Direction lambda1_direction(const TwoPointSpace& s) {
    return (s.n - s.k()) % 2 == 0 ? Direction::FirstNegative : Direction::FirstPositive;
}

Interval make_interval(double lo, bool lo_open, double hi, bool hi_open) {
    return Interval{lo, hi, lo_open, hi_open};
}

std::string fmt_num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

} // namespace

const char* to_string(SignType s) {
    switch (s) {
    case SignType::StronglyPositive: return "StronglyPositive";
    case SignType::StronglyNegative: return "StronglyNegative";
    case SignType::Nonnegative: return "Nonnegative";
    case SignType::Nonpositive: return "Nonpositive";
    }
    return "?";
}

const char* to_string(PredictionCase c) {
    switch (c) {
    case PredictionCase::CaseA: return "CaseA";
    case PredictionCase::CaseB: return "CaseB";
    case PredictionCase::CaseC: return "CaseC";
    case PredictionCase::NoConstantSign: return "NoConstantSign";
    case PredictionCase::NotCoveredByTheorem: return "NotCoveredByTheorem";
    }
    return "?";
}

const char* to_string(SignVerdict v) {
    switch (v) {
    case SignVerdict::StrictSignConfirmed: return "StrictSignConfirmed";
    case SignVerdict::NonstrictSignConfirmed: return "NonstrictSignConfirmed";
    case SignVerdict::SignViolated: return "SignViolated";
    case SignVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

bool Interval::contains(double M) const {
    bool lo_ok = lower_open ? M > lower : M >= lower;
    bool hi_ok = upper_open ? M < upper : M <= upper;
    return lo_ok && hi_ok;
}

std::string Interval::str() const {
    return std::string(lower_open ? "(" : "[") + fmt_num(lower) + ", " + fmt_num(upper) +
           (upper_open ? ")" : "]");
}

Provenance locate(const std::string& name, const TwoPointSpace& space, const Domain& domain,
                  Direction dir, const EigenSettings& es) {
    auto q = make_query(space, domain, dir);
    if (es.m_max) q.m_max = *es.m_max;
    q.scan_points = es.scan_points;
    q.refine_tol = es.refine_tol;
    auto out = first_eigenvalue(q);
    if (auto* nf = std::get_if<NotFoundInRange>(&out)) {
        std::ostringstream os;
        os << name << ": no " << (dir == Direction::FirstPositive ? "positive" : "negative")
           << " eigenvalue of " << space.str() << " with m <= " << nf->m_max;
        throw EigenNotFoundError(os.str(), nf->m_max);
    }
    return Provenance{name, space, dir, std::get<EigenResult>(out)};
}

Strictness strictness_for(const SignPrediction& p) {
    if (p.sign && (*p.sign == SignType::Nonnegative || *p.sign == SignType::Nonpositive))
        return Strictness::Weak;
    return Strictness::Strict;
}

std::optional<int> expected_sign(const SignPrediction& p) {
    if (!p.sign) return std::nullopt;
    return is_positive(*p.sign) ? 1 : -1;
}

SignPrediction predict_interval(const TwoPointSpace& space, const Domain& domain, int q,
                                const EigenSettings& es) {
    require_complete(space);
    if (!check_na(space))
        throw NotApplicableError(space.str() + " does not satisfy (N_a)");
    const auto d = derivative_space(space, q);
    const int n = space.n, k = space.k();
    const bool nk_even = (n - k) % 2 == 0;
    const Direction d1 = lambda1_direction(space);

    SignPrediction p;
    p.q = q;
    switch (d.sign_case) {
    case SignCase::NoConstantSign:
        p.kase = PredictionCase::NoConstantSign;
        p.note = "c_q + d_q < n - q: no M gives a constant sign";
        return p;
    case SignCase::CaseB:
    case SignCase::CaseC: {
        p.kase = d.sign_case == SignCase::CaseB ? PredictionCase::CaseB : PredictionCase::CaseC;
        auto l1 = locate("lambda_1", space, domain, d1, es);
        double L = l1.result.lambda;
        p.interval = nk_even ? make_interval(L, true, 0.0, false) : make_interval(0.0, false, L, true);
        if (d.sign_case == SignCase::CaseB)
            p.sign = SignType::Nonnegative;
        else
            p.sign = (n - q) % 2 == 0 ? SignType::Nonnegative : SignType::Nonpositive;
        p.provenance.push_back(std::move(l1));
        return p;
    }
    case SignCase::CaseA:
        break;
    }

    p.kase = PredictionCase::CaseA;
    const int par = n - q - d.c_q;
    const SignType strong = par % 2 == 0 ? SignType::StronglyPositive : SignType::StronglyNegative;
    const std::string qs = "^" + std::to_string(q);

    if (n > 2 && k >= 2 && k <= n - 2) {
        auto aux = aux_spaces(space, q);
        auto l1 = locate("lambda_1", space, domain, d1, es);
        auto l2 = locate("lambda_2" + qs, aux.x2, domain, opposite(d1), es);
        auto l4 = locate("lambda_4" + qs, aux.x4, domain, opposite(d1), es);
        double L1 = l1.result.lambda, L2 = l2.result.lambda, L4 = l4.result.lambda;
        p.interval = nk_even ? make_interval(L1, true, std::min(L2, L4), false)
                             : make_interval(std::max(L2, L4), false, L1, true);
        p.sign = strong;
        p.provenance = {std::move(l1), std::move(l2), std::move(l4)};
        return p;
    }
    if (n > 2 && k == 1) {
        auto aux = aux_spaces(space, q);
        auto l1 = locate("lambda_1", space, domain, d1, es);
        auto l2 = locate("lambda_2" + qs, aux.x2, domain, opposite(d1), es);
        double L1 = l1.result.lambda, L2 = l2.result.lambda;
        p.interval = nk_even ? make_interval(L1, true, L2, false) : make_interval(L2, false, L1, true);
        p.sign = strong;
        p.provenance = {std::move(l1), std::move(l2)};
        return p;
    }
    if (n > 2 && k == n - 1 && par == 1) {
        auto aux = aux_spaces(space, q);
        auto l1 = locate("lambda_1", space, domain, d1, es);
        auto l2 = locate("lambda_2" + qs, aux.x2, domain, opposite(d1), es);
        p.interval = make_interval(l2.result.lambda, false, l1.result.lambda, true);
        p.sign = SignType::StronglyNegative;
        p.provenance = {std::move(l1), std::move(l2)};
        return p;
    }
    p.kase = PredictionCase::NotCoveredByTheorem;
    p.note = "no branch of the characterization covers k = " + std::to_string(k) +
             ", n = " + std::to_string(n) + ", n-q-c_q = " + std::to_string(par);
    return p;
}

std::optional<ForbiddenSign> nonexistence_check(const TwoPointSpace& space, int q) {
    const auto d = derivative_space(space, q);
    if (d.sign_case != SignCase::CaseA)
        throw NotApplicableError("nonexistence check needs c_q >= 1, d_q >= 1 and c_q + d_q = n - q");
    const int n = space.n;
    const bool hit_left = !space.left.empty() && space.left.back() == q + d.c_q - 1;
    const bool hit_right = !space.right.empty() && space.right.back() == q + d.d_q - 1;
    if (!hit_left && !hit_right) return std::nullopt;
    const int par = n - q - d.c_q;
    ForbiddenSign f;
    f.sign = par % 2 == 0 ? SignType::StronglyNegative : SignType::StronglyPositive;
    f.reason = hit_left ? "last left index equals q + c_q - 1" : "last right index equals q + d_q - 1";
    return f;
}

SignPrediction necessary_interval(const TwoPointSpace& space, const Domain& domain, int q,
                                  const EigenSettings& es) {
    require_complete(space);
    if (!check_na(space))
        throw NotApplicableError(space.str() + " does not satisfy (N_a)");
    const auto d = derivative_space(space, q);
    if (d.sign_case != SignCase::CaseA)
        throw NotApplicableError("necessary interval needs c_q >= 1, d_q >= 1 and c_q + d_q = n - q");
    if (d.mu_z() == *d.z - 1 || d.rho_h() == *d.h - 1)
        throw NotApplicableError("necessary interval needs mu_z != z-1 and rho_h != h-1");
    const int n = space.n, k = space.k();
    const bool nk_even = (n - k) % 2 == 0;
    const Direction d1 = lambda1_direction(space);
    const std::string qs = "^" + std::to_string(q);
    auto aux = aux_spaces(space, q);
    auto l1 = locate("lambda_1", space, domain, d1, es);
    auto l3 = locate("lambda_3" + qs, aux.x3, domain, d1, es);
    auto l5 = locate("lambda_5" + qs, aux.x5, domain, d1, es);
    double L1 = l1.result.lambda, L3 = l3.result.lambda, L5 = l5.result.lambda;

    SignPrediction p;
    p.q = q;
    p.kase = PredictionCase::CaseA;
    p.necessary_only = true;
    const int par = n - q - d.c_q;
    // The sign here is the one opposite to the strong sign at M = 0.
    p.sign = par % 2 == 0 ? SignType::Nonpositive : SignType::Nonnegative;
    p.interval = nk_even ? make_interval(std::max(L3, L5), false, L1, true)
                         : make_interval(L1, true, std::min(L3, L5), false);
    p.note = "necessary condition only";
    p.provenance = {std::move(l1), std::move(l3), std::move(l5)};
    return p;
}

ZeroFreeIntervals zero_free_intervals(const TwoPointSpace& space, const Domain& domain,
                                           int q, const EigenSettings& es) {
    require_complete(space);
    if (!check_na(space))
        throw NotApplicableError(space.str() + " does not satisfy (N_a)");
    const auto d = derivative_space(space, q);
    if (d.sign_case != SignCase::CaseA)
        throw NotApplicableError("zero-free intervals need c_q >= 1, d_q >= 1 and c_q + d_q = n - q");
    const int n = space.n, k = space.k();
    const bool nk_even = (n - k) % 2 == 0;
    const Direction d1 = lambda1_direction(space);
    const std::string qs = "^" + std::to_string(q);
    auto aux = aux_spaces(space, q);

    ZeroFreeIntervals out;

    // Left condition mu_z dropped.
    {
        ZeroFreeInterval& z = out.left;
        z.dropped = "left";
        auto mu = d.mu;
        mu.erase(mu.begin() + (*d.z - 1));
        z.problem = make_space(n, mu, d.rho);
        const bool use_l1 = d.mu_z() == *d.z - 1;
        auto near = use_l1 ? locate("lambda_1", space, domain, d1, es)
                           : locate("lambda_3" + qs, aux.x3, domain, d1, es);
        double Ln = near.result.lambda;
        z.provenance.push_back(near);
        if (k > 1) {
            auto far = locate("lambda_2" + qs, aux.x2, domain, opposite(d1), es);
            double Lf = far.result.lambda;
            z.provenance.push_back(std::move(far));
            z.interval = nk_even ? make_interval(Ln, false, Lf, false) : make_interval(Lf, false, Ln, false);
        } else {
            z.interval = nk_even ? make_interval(Ln, false, kInf, true) : make_interval(-kInf, true, Ln, false);
        }
    }
    // Right condition rho_h dropped.
    {
        ZeroFreeInterval& z = out.right;
        z.dropped = "right";
        auto rho = d.rho;
        rho.erase(rho.begin() + (*d.h - 1));
        z.problem = make_space(n, d.mu, rho);
        const bool use_l1 = d.rho_h() == *d.h - 1;
        auto near = use_l1 ? locate("lambda_1", space, domain, d1, es)
                           : locate("lambda_5" + qs, aux.x5, domain, d1, es);
        double Ln = near.result.lambda;
        z.provenance.push_back(near);
        if (nk_even) {
            auto far = locate("lambda_4" + qs, aux.x4, domain, opposite(d1), es);
            z.interval = make_interval(Ln, false, far.result.lambda, false);
            z.provenance.push_back(std::move(far));
        } else if (k < n - 1) {
            auto far = locate("lambda_4" + qs, aux.x4, domain, opposite(d1), es);
            z.interval = make_interval(far.result.lambda, false, Ln, false);
            z.provenance.push_back(std::move(far));
        } else {
            z.interval = make_interval(-kInf, true, Ln, false);
        }
    }
    return out;
}

namespace {

struct GridSample {
    std::vector<double> values; // grid x grid, row = s index, column = t index, s <= t branch on the diagonal
    std::vector<double> below;  // diagonal values on the t < s branch (order n-1 only)
    std::vector<double> end_a, end_b;
};

GridSample sample(const GreenFunction& g, int q, int grid) {
    const auto& sp = g.space();
    const Domain& dom = g.domain();
    const int n = sp.n;
    int alpha, beta;
    if (q == 0) {
        auto ab = alpha_beta(sp);
        alpha = ab.alpha;
        beta = ab.beta;
    } else {
        auto d = derivative_space(sp, q);
        alpha = d.alpha_q;
        beta = d.beta_q;
    }
    const double bsign = beta % 2 == 0 ? 1.0 : -1.0;
    const double h = dom.length() / grid;
    GridSample gs;
    gs.values.assign(static_cast<std::size_t>(grid) * grid, 0.0);
    gs.end_a.assign(grid, 0.0);
    gs.end_b.assign(grid, 0.0);
    if (q == n - 1) gs.below.assign(grid, 0.0);
    parallel_for(grid, [&](std::size_t i) {
        double s = dom.a + (i + 0.5) * h;
        auto sec = g.section(s);
        for (int j = 0; j < grid; ++j) {
            double t = dom.a + (j + 0.5) * h;
            gs.values[i * grid + j] = g.eval(sec, q, t, Side::Above);
        }
        if (q == n - 1) gs.below[i] = g.eval(sec, q, s, Side::Below);
        gs.end_a[i] = g.eval(sec, q + alpha, dom.a, Side::Below);
        gs.end_b[i] = bsign * g.eval(sec, q + beta, dom.b, Side::Above);
    });
    return gs;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct Tally {
    long pos = 0, neg = 0, small = 0;
};

Tally tally(const std::vector<double>& v, double margin) {
    Tally t;
    for (double x : v) {
        if (x > margin) ++t.pos;
        else if (x < -margin) ++t.neg;
        else ++t.small;
    }
    return t;
}

SignReport classify(const GridSample& gs, int q, double M, int grid, Strictness mode,
                    std::optional<int> expected) {
    SignReport r;
    r.q = q;
    r.M = M;
    r.grid = grid;
    std::vector<double> interior = gs.values;
    interior.insert(interior.end(), gs.below.begin(), gs.below.end());
    r.min_value = *std::min_element(interior.begin(), interior.end());
    r.max_value = *std::max_element(interior.begin(), interior.end());
    r.endpoint_a = gs.end_a;
    r.endpoint_b = gs.end_b;

    const double scale = max_abs(interior);
    if (scale == 0.0) {
        r.detail = "identically zero on the grid";
        return r;
    }
    Tally in = tally(interior, kStrictMargin * scale);
    if (in.pos > 0 && in.neg > 0) {
        r.verdict = SignVerdict::SignViolated;
        std::ostringstream os;
        os << in.pos << " positive and " << in.neg << " negative interior values";
        r.detail = os.str();
        return r;
    }
    r.sign = in.pos > 0 ? 1 : -1;
    if (expected && *expected != r.sign) {
        r.verdict = SignVerdict::SignViolated;
        r.detail = "uniform sign opposite to the expected one";
        return r;
    }
    // Endpoint derivatives carry the sign of the interior values.
    auto check_end = [&](const std::vector<double>& v, long& wrong, long& small) {
        double m = kStrictMargin * std::max(max_abs(v), scale);
        Tally t = tally(v, m);
        wrong = r.sign > 0 ? t.neg : t.pos;
        small = t.small;
    };
    long wa, sa, wb, sb;
    check_end(gs.end_a, wa, sa);
    check_end(gs.end_b, wb, sb);
    const bool strict = in.small == 0 && wa == 0 && sa == 0 && wb == 0 && sb == 0;
    if (strict) {
        r.verdict = SignVerdict::StrictSignConfirmed;
        return r;
    }
    std::ostringstream os;
    os << in.small << " interior values within the margin; endpoint a: " << wa << " wrong, " << sa
       << " small; endpoint b: " << wb << " wrong, " << sb << " small";
    r.detail = os.str();
    if (mode == Strictness::Weak) {
        r.verdict = SignVerdict::NonstrictSignConfirmed;
    } else if (wa > 0 || wb > 0) {
        r.verdict = SignVerdict::SignViolated;
    } else {
        r.verdict = SignVerdict::Inconclusive;
    }
    return r;
}

} // namespace

SignReport verify_sign(const TwoPointSpace& space, const Domain& domain, int q, double M,
                       int grid, Strictness mode, std::optional<int> expected) {
    if (grid < 3) throw ValidationError("grid must be at least 3");
    if (q < 0 || q > space.n - 1) throw ValidationError("q must lie in [0, n-1]");
    GreenFunction g(space, domain, M);
    return classify(sample(g, q, grid), q, M, grid, mode, expected);
}

SweepResult sweep(const TwoPointSpace& space, const Domain& domain, int q, std::vector<double> Ms,
                  int grid, Strictness mode, const EigenSettings& es) {
    if (grid < 3) throw ValidationError("grid must be at least 3");
    if (q < 0 || q > space.n - 1) throw ValidationError("q must lie in [0, n-1]");
    std::sort(Ms.begin(), Ms.end());
    SweepResult out;
    if (q >= 1 && check_na(space)) {
        try {
            auto p = predict_interval(space, domain, q, es);
            if (p.interval) out.prediction = std::move(p);
        } catch (const EigenNotFoundError&) {
        }
    }
    std::optional<int> expected;
    if (out.prediction) expected = expected_sign(*out.prediction);
    std::vector<GridSample> samples;
    for (double M : Ms) {
        GreenFunction g(space, domain, M);
        samples.push_back(sample(g, q, grid));
        out.reports.push_back(classify(samples.back(), q, M, grid, mode, expected));
    }
    if (!out.prediction) return out;
    const auto& p = *out.prediction;
    const bool nk_even = (space.n - space.k()) % 2 == 0;
    out.monotonicity_checked = true;
    out.decreasing = nk_even == is_positive(*p.sign);
    for (std::size_t i = 0; i + 1 < Ms.size(); ++i) {
        if (!p.interval->contains(Ms[i]) || !p.interval->contains(Ms[i + 1])) continue;
        ++out.pairs_checked;
        const auto& v1 = samples[i].values;
        const auto& v2 = samples[i + 1].values;
        const double tol = 1e-9 * std::max(max_abs(v1), max_abs(v2));
        for (std::size_t j = 0; j < v1.size(); ++j) {
            double diff = out.decreasing ? v1[j] - v2[j] : v2[j] - v1[j];
            if (diff < -tol) ++out.monotonicity_violations;
        }
    }
    return out;
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
    out << "M,min,max,verdict\n";
    out.precision(17);
    for (const auto& rep : r.reports)
        out << rep.M << "," << rep.min_value << "," << rep.max_value << "," << to_string(rep.verdict)
            << "\n";
}

} // namespace greensign
