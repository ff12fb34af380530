#include "greensign/combinatorics.hpp"
#include "greensign/cone.hpp"
#include "greensign/errors.hpp"
#include "greensign/green.hpp"
#include "greensign/sign_analysis.hpp"
#include "greensign/spec_io.hpp"
#include "greensign/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

using namespace greensign;
using nlohmann::json;

namespace {

// Exit statuses: 0 success, 1 numerical not-found / violation outcomes, 2 usage errors.
constexpr int kOk = 0, kOutcome = 1, kUsage = 2;

json ext_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json space_json(const TwoPointSpace& s) {
    json j{{"n", s.n}, {"sigma", s.left}, {"epsilon", s.right}, {"name", s.str()}};
    if (!s.label.empty()) j["label"] = s.label;
    return j;
}

json interval_json(const Interval& i) {
    return {{"lower", ext_real(i.lower)},
            {"upper", ext_real(i.upper)},
            {"lower_open", i.lower_open},
            {"upper_open", i.upper_open},
            {"text", i.str()}};
}

json eigen_json(const EigenResult& r) {
    return {{"lambda", r.lambda},
            {"m", r.m},
            {"residual", r.residual},
            {"bracket_m", {r.bracket.first, r.bracket.second}},
            {"dips", r.dips}};
}

json provenance_json(const std::vector<Provenance>& ps) {
    json arr = json::array();
    for (const auto& p : ps) {
        json e = eigen_json(p.result);
        e["name"] = p.name;
        e["space"] = space_json(p.space);
        e["direction"] = to_string(p.direction);
        arr.push_back(e);
    }
    return arr;
}

json prediction_json(const SignPrediction& p) {
    json j{{"q", p.q}, {"case", to_string(p.kase)}, {"necessary_only", p.necessary_only}};
    j["sign"] = p.sign ? json(to_string(*p.sign)) : json(nullptr);
    j["interval"] = p.interval ? interval_json(*p.interval) : json(nullptr);
    j["provenance"] = provenance_json(p.provenance);
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

json minmax(const std::vector<double>& v) {
    if (v.empty()) return nullptr;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return {{"min", *lo}, {"max", *hi}};
}

json report_json(const SignReport& r) {
    json j{{"q", r.q},           {"M", r.M},
           {"grid", r.grid},     {"verdict", to_string(r.verdict)},
           {"sign", r.sign},     {"min", r.min_value},
           {"max", r.max_value}, {"endpoint_a", minmax(r.endpoint_a)},
           {"endpoint_b", minmax(r.endpoint_b)}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

json cone_report_json(const ConeReport& r) {
    json arr = json::array();
    for (const auto& c : r.conditions)
        arr.push_back({{"condition", c.name}, {"margin", c.margin}, {"satisfied", c.satisfied}});
    return {{"member", r.member}, {"conditions", arr}};
}

struct Common {
    std::string spec;
    bool compact = false;
    std::optional<double> mmax;
    std::optional<int> scan;
    std::optional<int> grid;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--spec", c.spec, "JSON space descriptor")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", c.compact, "compact single-line JSON");
    sub->add_option("--mmax", c.mmax, "upper end of the eigenvalue scan in m")->check(CLI::PositiveNumber);
    sub->add_option("--scan", c.scan, "scan points")->check(CLI::Range(100, 10000000));
    sub->add_option("--grid", c.grid, "grid size")->check(CLI::Range(3, 100000));
}

SpecFile load(const Common& c) {
    SpecFile s = load_spec(c.spec);
    if (c.mmax) s.m_max = *c.mmax;
    if (c.scan) s.scan_points = *c.scan;
    if (c.grid) s.grid = *c.grid;
    return s;
}

void emit(const json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << "\n"; }

int cmd_analyze(const Common& c) {
    SpecFile s = load(c);
    const auto& sp = s.space;
    require_complete(sp);
    auto ab = alpha_beta(sp);
    auto adj = adjoint(sp);
    auto eg = alpha_beta(adj);
    json rows = json::array();
    for (int q = 1; q <= sp.n - 1; ++q) {
        auto d = derivative_space(sp, q);
        json r{{"q", q},          {"mu", d.mu},   {"rho", d.rho},   {"alpha_q", d.alpha_q},
               {"beta_q", d.beta_q}, {"c_q", d.c_q}, {"d_q", d.d_q}, {"case", to_string(d.sign_case)}};
        r["z"] = d.z ? json(*d.z) : json(nullptr);
        r["h"] = d.h ? json(*d.h) : json(nullptr);
        rows.push_back(r);
    }
    json out{{"space", space_json(sp)}, {"N_a", check_na(sp)}, {"alpha", ab.alpha}, {"beta", ab.beta},
             {"adjoint", space_json(adj)}, {"eta", eg.alpha}, {"gamma", eg.beta}, {"derivatives", rows}};
    emit(out, c.compact);
    std::cerr << sp.str() << ": (N_a) " << (check_na(sp) ? "holds" : "fails") << ", adjoint " << adj.str()
              << ", eta=" << eg.alpha << ", gamma=" << eg.beta << "\n";
    return kOk;
}

int cmd_eigen(const Common& c, const std::string& dir_name) {
    SpecFile s = load(c);
    require_complete(s.space);
    Direction dir;
    if (dir_name == "positive") dir = Direction::FirstPositive;
    else if (dir_name == "negative") dir = Direction::FirstNegative;
    else dir = (s.space.n - s.space.k()) % 2 == 0 ? Direction::FirstNegative : Direction::FirstPositive;
    auto q = make_query(s.space, s.domain, dir);
    if (s.m_max) q.m_max = *s.m_max;
    q.scan_points = s.scan_points;
    auto out = first_eigenvalue(q);
    json j{{"space", space_json(s.space)}, {"direction", to_string(dir)}};
    if (auto* r = std::get_if<EigenResult>(&out)) {
        j.update(eigen_json(*r));
        j["found"] = true;
        emit(j, c.compact);
        std::cerr << to_string(dir) << " eigenvalue of " << s.space.str() << ": lambda = " << r->lambda
                  << " (m = " << r->m << ")\n";
        return kOk;
    }
    const auto& nf = std::get<NotFoundInRange>(out);
    j["found"] = false;
    j["m_max"] = nf.m_max;
    j["scan_points"] = nf.scan_points;
    j["scan_step_m"] = nf.m_max / nf.scan_points;
    j["dips"] = nf.dips;
    emit(j, c.compact);
    std::cerr << "no sign change of the characteristic determinant for m <= " << nf.m_max << "\n";
    return kOutcome;
}

int cmd_interval(const Common& c, int q) {
    SpecFile s = load(c);
    auto es = s.eigen_settings();
    auto p = predict_interval(s.space, s.domain, q, es);
    json j{{"space", space_json(s.space)}, {"prediction", prediction_json(p)}};
    auto d = derivative_space(s.space, q);
    if (d.sign_case == SignCase::CaseA) {
        auto ne = nonexistence_check(s.space, q);
        j["forbidden_sign"] = ne ? json{{"sign", to_string(ne->sign)}, {"reason", ne->reason}} : json(nullptr);
        try {
            j["necessary"] = prediction_json(necessary_interval(s.space, s.domain, q, es));
        } catch (const NotApplicableError& e) {
            j["necessary"] = {{"applicable", false}, {"reason", e.what()}};
        }
        auto zf = [](const ZeroFreeInterval& z) {
            return json{{"dropped", z.dropped}, {"problem", space_json(z.problem)},
                        {"interval", interval_json(z.interval)},
                        {"provenance", provenance_json(z.provenance)}};
        };
        try {
            auto pi = zero_free_intervals(s.space, s.domain, q, es);
            j["zero_free"] = {{"left_dropped", zf(pi.left)}, {"right_dropped", zf(pi.right)}};
        } catch (const EigenNotFoundError& e) {
            j["zero_free"] = {{"error", e.what()}};
        }
    }
    emit(j, c.compact);
    std::cerr << "q=" << q << " " << to_string(p.kase);
    if (p.sign) std::cerr << ": " << to_string(*p.sign);
    if (p.interval) std::cerr << " for M in " << p.interval->str();
    std::cerr << "\n";
    return kOk;
}

Strictness default_mode(const TwoPointSpace& sp, int q) {
    if (q == 0) return Strictness::Strict;
    auto d = derivative_space(sp, q);
    return d.sign_case == SignCase::CaseB || d.sign_case == SignCase::CaseC ? Strictness::Weak
                                                                             : Strictness::Strict;
}

std::optional<int> parse_expect(const std::string& e) {
    if (e == "positive") return 1;
    if (e == "negative") return -1;
    return std::nullopt;
}

int cmd_verify(const Common& c, int q, double M, const std::string& expect) {
    SpecFile s = load(c);
    auto mode = default_mode(s.space, q);
    auto r = verify_sign(s.space, s.domain, q, M, s.grid, mode, parse_expect(expect));
    json j{{"space", space_json(s.space)},
           {"mode", mode == Strictness::Strict ? "strict" : "weak"},
           {"report", report_json(r)}};
    emit(j, c.compact);
    std::cerr << "d^" << q << " g at M=" << M << ": " << to_string(r.verdict) << "\n";
    return r.verdict == SignVerdict::SignViolated ? kOutcome : kOk;
}

int cmd_sweep(const Common& c, int q, const std::vector<double>& Ms, const std::string& dump) {
    SpecFile s = load(c);
    if (Ms.empty()) throw ValidationError("--Ms needs at least one value");
    auto mode = default_mode(s.space, q);
    auto r = sweep(s.space, s.domain, q, Ms, s.grid, mode, s.eigen_settings());
    json reps = json::array();
    for (const auto& rep : r.reports) reps.push_back(report_json(rep));
    json j{{"space", space_json(s.space)},
           {"mode", mode == Strictness::Strict ? "strict" : "weak"},
           {"reports", reps},
           {"prediction", r.prediction ? prediction_json(*r.prediction) : json(nullptr)},
           {"monotonicity",
            {{"checked", r.monotonicity_checked},
             {"direction", r.decreasing ? "decreasing" : "increasing"},
             {"pairs", r.pairs_checked},
             {"violations", r.monotonicity_violations}}}};
    if (!dump.empty()) {
        std::ofstream out(dump);
        if (!out) throw ValidationError("cannot write '" + dump + "'");
        write_sweep_csv(r, out);
    }
    emit(j, c.compact);
    std::cerr << r.reports.size() << " values of M; monotonicity "
              << (r.monotonicity_checked ? std::to_string(r.monotonicity_violations) + " violations"
                                         : std::string("not checked"))
              << "\n";
    return r.monotonicity_violations > 0 ? kOutcome : kOk;
}

int cmd_green(const Common& c, double M, const std::vector<double>& at, const std::string& dump) {
    SpecFile s = load(c);
    GreenFunction g(s.space, s.domain, M);
    json j{{"space", space_json(s.space)}, {"M", M}, {"boundary_determinant", g.boundary_determinant()}};
    if (!at.empty()) {
        if (at.size() != 2) throw ValidationError("--eval expects t,s");
        double t = at[0], sv = at[1];
        if (t < s.domain.a || t > s.domain.b || sv < s.domain.a || sv > s.domain.b)
            throw ValidationError("--eval point outside the domain");
        json d = json::array();
        for (int q = 0; q < s.space.n; ++q) d.push_back(eval_q(g, q, t, sv, Side::Above));
        j["eval"] = {{"t", t}, {"s", sv}, {"g", d[0]}, {"derivatives", d}};
        if (t == sv) j["eval"]["side"] = "s <= t branch";
    }
    auto v = verify_green(g, s.grid, s.tolerances);
    j["verification"] = {{"ode_residual", v.ode_residual},
                         {"bc_residual", v.bc_residual},
                         {"continuity_error", v.continuity_error},
                         {"jump_error", v.jump_error},
                         {"adjoint_error", v.adjoint_error ? json(*v.adjoint_error) : json(nullptr)},
                         {"sderiv_error", v.sderiv_error},
                         {"passed", v.passed}};
    if (!dump.empty()) {
        std::ofstream out(dump);
        if (!out) throw ValidationError("cannot write '" + dump + "'");
        write_green_csv(g, s.grid, out);
    }
    emit(j, c.compact);
    if (j.contains("eval")) std::cerr << "g(" << at[0] << ", " << at[1] << ") = " << j["eval"]["g"] << "\n";
    std::cerr << "verification " << (v.passed ? "passed" : "FAILED") << "\n";
    return v.passed ? kOk : kOutcome;
}

void require_problem(const SpecFile& s, bool need_f) {
    if (!s.M) throw ValidationError("field 'M': missing (or pass --M)");
    if (!s.I1) throw ValidationError("field 'I1': missing");
    if (need_f && !s.f) throw ValidationError("field 'f': missing");
}

json envelope_json(const ConeEnvelope& env) {
    json d = json::object();
    for (const auto& [q, tab] : env.derivs)
        d[std::to_string(q)] = {{"sign", tab.sign}, {"k1_max", tab.k1_max}, {"k2_max", tab.k2_max}};
    return {{"eta", env.eta},
            {"gamma", env.gamma},
            {"M", env.M},
            {"k1_max", env.base.k1_max},
            {"k2_max", env.base.k2_max},
            {"I1", {env.I1.first, env.I1.second}},
            {"m1", env.m1},
            {"derivatives", d}};
}

int cmd_cone(const Common& c, std::optional<double> M, const std::string& dump) {
    SpecFile s = load(c);
    if (M) s.M = M;
    require_problem(s, false);
    GreenFunction g(s.space, s.domain, *s.M);
    auto env = build_envelope(g, s.q_list, *s.I1, s.grid);
    if (!dump.empty()) {
        std::ofstream out(dump);
        if (!out) throw ValidationError("cannot write '" + dump + "'");
        out << "t,k1,k2";
        for (const auto& [q, tab] : env.derivs) out << ",k1_" << q << ",k2_" << q;
        out << "\n";
        out.precision(17);
        for (std::size_t i = 0; i < env.t.size(); ++i) {
            out << env.t[i] << "," << env.base.k1[i] << "," << env.base.k2[i];
            for (const auto& [q, tab] : env.derivs) out << "," << tab.k1[i] << "," << tab.k2[i];
            out << "\n";
        }
    }
    emit({{"space", space_json(s.space)}, {"envelope", envelope_json(env)}}, c.compact);
    std::cerr << "phi(s) = (s-a)^" << env.eta << " (b-s)^" << env.gamma << ", k1 = " << env.base.k1_max
              << ", k2 = " << env.base.k2_max << ", m1 = " << env.m1 << "\n";
    return kOk;
}

int cmd_solve(const Common& c, std::optional<double> M, const std::string& dump) {
    SpecFile s = load(c);
    if (M) s.M = M;
    require_problem(s, true);
    NonlinearProblem p{s.space, s.domain, *s.M, *s.f, resolve_nonlinearity(*s.f), s.q_list, *s.I1};
    check_nonnegative(p);
    GreenFunction g(s.space, s.domain, p.M);
    IntegralOperator op(g, s.panels);
    auto env = build_envelope(g, p.q_list, p.I1, op.nodes());
    auto r = picard_solve(p, op, env, s.max_iter, s.picard_tol, s.omega);
    auto gd = growth_diagnostic(p);
    json sup = json::array();
    for (int o = 0; o < r.u.orders(); ++o) sup.push_back(r.u.sup(o));
    auto seq = [](const std::vector<std::pair<double, double>>& v) {
        json a = json::array();
        for (auto [x, y] : v) a.push_back({x, y});
        return a;
    };
    json j{{"space", space_json(s.space)},
           {"M", p.M},
           {"f", p.f_name},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"last_step", r.last_step},
           {"residual", r.residual},
           {"sup_norms", sup},
           {"cone", cone_report_json(r.cone)},
           {"envelope", envelope_json(env)},
           {"growth_diagnostic",
            {{"near_zero", seq(gd.near_zero)},
             {"near_inf", seq(gd.near_inf)},
             {"near_zero_increasing", gd.near_zero_increasing},
             {"near_inf_decreasing", gd.near_inf_decreasing},
             {"note", "finite samples only; nothing is certified"}}},
           {"assumptions", {{"H1", s.assume_H1}, {"H2", s.assume_H2}}}};
    if (!dump.empty()) {
        std::ofstream out(dump);
        if (!out) throw ValidationError("cannot write '" + dump + "'");
        write_solution_csv(r.u, out);
    }
    emit(j, c.compact);
    std::cerr << (r.converged ? "converged" : "not converged") << " after " << r.iterations
              << " iterations, residual " << r.residual << ", cone " << (r.cone.member ? "member" : "NOT member")
              << "\n";
    return r.converged && r.cone.member ? kOk : kOutcome;
}

int fail(int code, const std::string& kind, const std::string& msg, bool compact) {
    emit({{"error", kind}, {"message", msg}}, compact);
    std::cerr << "error: " << msg << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sign and spectral analysis of Green's functions of u^(n) + M u = 0 with two-point conditions"};
    app.require_subcommand(1);
    Common c;
    int q = 1;
    double M = 0.0;
    std::optional<double> Mopt;
    std::string dump, direction = "lambda1", expect = "any";
    std::vector<double> Ms, at;

    auto* analyze = app.add_subcommand("analyze", "combinatorial report");
    add_common(analyze, c);

    auto* eigen = app.add_subcommand("eigen", "first eigenvalue on one side of 0");
    add_common(eigen, c);
    eigen->add_option("--direction", direction, "positive, negative or lambda1 (side fixed by n-k)")
        ->check(CLI::IsMember({"positive", "negative", "lambda1"}));

    auto* interval = app.add_subcommand("interval", "predicted constant-sign interval for d^q g");
    add_common(interval, c);
    interval->add_option("--q", q, "derivative order")->required();

    auto* verify = app.add_subcommand("verify", "grid check of the sign of d^q g at one M");
    add_common(verify, c);
    verify->add_option("--q", q, "derivative order")->required();
    verify->add_option("--M", M, "parameter M")->required();
    verify->add_option("--expect", expect, "expected sign: positive, negative or any")
        ->check(CLI::IsMember({"positive", "negative", "any"}));

    auto* sw = app.add_subcommand("sweep", "sign checks over several M plus monotonicity");
    add_common(sw, c);
    sw->add_option("--q", q, "derivative order")->required();
    sw->add_option("--Ms", Ms, "comma separated values of M")->required()->delimiter(',');
    sw->add_option("--dump", dump, "CSV of M,min,max,verdict");

    auto* green = app.add_subcommand("green", "evaluate and verify the Green's function");
    add_common(green, c);
    green->add_option("--M", M, "parameter M")->required();
    green->add_option("--eval", at, "point t,s")->delimiter(',');
    green->add_option("--dump", dump, "CSV of g and its t-derivatives on the grid");

    auto* cone = app.add_subcommand("cone", "envelope constants of the cone");
    add_common(cone, c);
    cone->add_option("--M", Mopt, "parameter M (overrides the spec)");
    cone->add_option("--dump", dump, "CSV of k1, k2 per derivative");

    auto* solve = app.add_subcommand("solve", "Picard iteration for the nonlinear problem");
    add_common(solve, c);
    solve->add_option("--M", Mopt, "parameter M (overrides the spec)");
    solve->add_option("--dump", dump, "CSV of the solution and its derivatives");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*analyze) return cmd_analyze(c);
        if (*eigen) return cmd_eigen(c, direction);
        if (*interval) return cmd_interval(c, q);
        if (*verify) return cmd_verify(c, q, M, expect);
        if (*sw) return cmd_sweep(c, q, Ms, dump);
        if (*green) return cmd_green(c, M, at, dump);
        if (*cone) return cmd_cone(c, Mopt, dump);
        if (*solve) return cmd_solve(c, Mopt, dump);
    } catch (const ValidationError& e) {
        return fail(kUsage, "validation", e.what(), c.compact);
    } catch (const NotApplicableError& e) {
        return fail(kUsage, "not_applicable", e.what(), c.compact);
    } catch (const DegenerateSpaceError& e) {
        return fail(kUsage, "degenerate_space", e.what(), c.compact);
    } catch (const EigenNotFoundError& e) {
        return fail(kOutcome, "eigenvalue_not_found", e.what(), c.compact);
    } catch (const EigenvalueCollisionError& e) {
        return fail(kOutcome, "eigenvalue_collision", e.what(), c.compact);
    } catch (const NumericalError& e) {
        return fail(kOutcome, "numerical", e.what(), c.compact);
    }
    return kUsage;
}
