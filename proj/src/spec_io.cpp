#include "greensign/spec_io.hpp"
#include "greensign/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace greensign {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {
    "n",       "a",        "b",     "sigma",     "epsilon",   "m_max",     "scan_points",
    "grid",    "tolerances", "M",   "f",         "q_list",    "I1",        "panels",
    "omega",   "max_iter", "picard_tol", "assume_H1", "assume_H2"};
const std::set<std::string> kTolKeys = {"ode", "bc", "continuity", "jump", "adjoint", "sderiv"};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ValidationError("field '" + field + "': " + what);
}

double get_real(const json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& field) {
    if (!j.is_boolean()) field_error(field, "expected true or false");
    return j.get<bool>();
}

std::vector<int> get_int_list(const json& j, const std::string& field) {
    if (!j.is_array()) field_error(field, "expected an array of integers");
    std::vector<int> out;
    for (const auto& e : j) out.push_back(get_int(e, field));
    return out;
}

} // namespace

EigenSettings SpecFile::eigen_settings() const {
    EigenSettings es;
    es.m_max = m_max;
    es.scan_points = scan_points;
    return es;
}

SpecFile parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("spec must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKeys.count(it.key())) field_error(it.key(), "unknown key");
    for (const char* req : {"n", "sigma", "epsilon"})
        if (!j.contains(req)) field_error(req, "missing");

    SpecFile s;
    const int n = get_int(j["n"], "n");
    s.space = make_space(n, get_int_list(j["sigma"], "sigma"), get_int_list(j["epsilon"], "epsilon"));
    double a = j.contains("a") ? get_real(j["a"], "a") : 0.0;
    double b = j.contains("b") ? get_real(j["b"], "b") : 1.0;
    try {
        s.domain = make_domain(a, b);
    } catch (const ValidationError& e) {
        field_error("a/b", e.what());
    }
    if (j.contains("m_max")) {
        s.m_max = get_real(j["m_max"], "m_max");
        if (!(*s.m_max > 0)) field_error("m_max", "must be positive");
    }
    if (j.contains("scan_points")) {
        s.scan_points = get_int(j["scan_points"], "scan_points");
        if (s.scan_points < 100) field_error("scan_points", "must be at least 100");
    }
    if (j.contains("grid")) {
        s.grid = get_int(j["grid"], "grid");
        if (s.grid < 3) field_error("grid", "must be at least 3");
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) field_error("tolerances", "expected an object");
        for (auto it = t.begin(); it != t.end(); ++it)
            if (!kTolKeys.count(it.key())) field_error("tolerances." + it.key(), "unknown key");
        auto rd = [&](const char* k, double& dst) {
            if (t.contains(k)) dst = get_real(t[k], std::string("tolerances.") + k);
        };
        rd("ode", s.tolerances.ode);
        rd("bc", s.tolerances.bc);
        rd("continuity", s.tolerances.continuity);
        rd("jump", s.tolerances.jump);
        rd("adjoint", s.tolerances.adjoint);
        rd("sderiv", s.tolerances.sderiv);
    }
    if (j.contains("M")) s.M = get_real(j["M"], "M");
    if (j.contains("f")) {
        if (!j["f"].is_string()) field_error("f", "expected \"builtin:<name>\" or \"table:<file>\"");
        s.f = j["f"].get<std::string>();
    }
    if (j.contains("q_list")) {
        s.q_list = get_int_list(j["q_list"], "q_list");
        for (int q : s.q_list)
            if (q < 1 || q > n - 1) field_error("q_list", "entries must lie in [1, n-1]");
    }
    if (j.contains("I1")) {
        const auto& v = j["I1"];
        if (!v.is_array() || v.size() != 2) field_error("I1", "expected [a1, b1]");
        s.I1 = std::make_pair(get_real(v[0], "I1"), get_real(v[1], "I1"));
    }
    if (j.contains("panels")) {
        s.panels = get_int(j["panels"], "panels");
        if (s.panels < 2) field_error("panels", "must be at least 2");
    }
    if (j.contains("omega")) {
        s.omega = get_real(j["omega"], "omega");
        if (!(s.omega > 0 && s.omega <= 1)) field_error("omega", "must lie in (0, 1]");
    }
    if (j.contains("max_iter")) {
        s.max_iter = get_int(j["max_iter"], "max_iter");
        if (s.max_iter < 1) field_error("max_iter", "must be positive");
    }
    if (j.contains("picard_tol")) {
        s.picard_tol = get_real(j["picard_tol"], "picard_tol");
        if (!(s.picard_tol > 0)) field_error("picard_tol", "must be positive");
    }
    if (j.contains("assume_H1")) s.assume_H1 = get_bool(j["assume_H1"], "assume_H1");
    if (j.contains("assume_H2")) s.assume_H2 = get_bool(j["assume_H2"], "assume_H2");
    return s;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open spec file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_spec(os.str());
}

} // namespace greensign
