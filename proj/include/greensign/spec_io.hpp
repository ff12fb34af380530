#pragma once
#include "greensign/combinatorics.hpp"
#include "greensign/green.hpp"
#include "greensign/sign_analysis.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace greensign {

// JSON descriptor: {"n", "sigma", "epsilon"} plus optional "a", "b" (default [0,1]),
// solver settings "m_max", "scan_points", "grid", "tolerances" {ode, bc, continuity,
// jump, adjoint, sderiv}, and the nonlinear problem fields "M", "f", "q_list", "I1",
// "panels", "omega", "max_iter", "picard_tol", "assume_H1", "assume_H2".
// Unknown keys are rejected.
struct SpecFile {
    TwoPointSpace space;
    Domain domain;
    std::optional<double> m_max;
    int scan_points = 2000;
    int grid = 101;
    VerifyTolerances tolerances;

    std::optional<double> M;
    std::optional<std::string> f;
    std::vector<int> q_list;
    std::optional<std::pair<double, double>> I1;
    int panels = 8;
    double omega = 1.0;
    int max_iter = 500;
    double picard_tol = 1e-12;
    bool assume_H1 = false; // user assertions, never verified
    bool assume_H2 = false;

    EigenSettings eigen_settings() const;
};

// Throws ValidationError naming the field, or carrying the parser's line/column.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec(const std::string& path);

} // namespace greensign
