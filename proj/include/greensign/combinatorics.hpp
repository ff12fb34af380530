#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace greensign {

// Boundary-condition index sets for u^(n) + M u = 0 on [a,b]:
// derivative orders in `left` vanish at a, those in `right` vanish at b.
struct TwoPointSpace {
    int n = 0;
    std::vector<int> left;
    std::vector<int> right;
    std::string label; // how an augmented space was derived, empty otherwise

    int k() const { return static_cast<int>(left.size()); }
    bool complete() const { return static_cast<int>(left.size() + right.size()) == n; }
    std::string str() const; // "X_{0,1}^{1,3}"
};

bool operator==(const TwoPointSpace& x, const TwoPointSpace& y);

// Sorts both sets; throws ValidationError on duplicates or out-of-range entries.
TwoPointSpace make_space(int n, std::vector<int> left, std::vector<int> right);
// make_space plus |left|+|right| = n.
void require_complete(const TwoPointSpace& s);

bool check_na(const TwoPointSpace& s);

struct AlphaBeta { int alpha; int beta; };
AlphaBeta alpha_beta(const TwoPointSpace& s);

// Reflected complement: left' = {n-1-x : x not in left}, same for right.
TwoPointSpace adjoint(const TwoPointSpace& s);

enum class SignCase { CaseA, CaseB, CaseC, NoConstantSign };
const char* to_string(SignCase c);

struct DerivativeIndexData {
    int q = 0;
    std::vector<int> mu;
    std::vector<int> rho;
    int alpha_q = 0;
    int beta_q = 0;
    std::optional<int> j, r; // 1-based: first sigma >= q, first epsilon >= q
    std::optional<int> z, h; // 1-based positions in mu / rho
    int c_q = 0;
    int d_q = 0;
    SignCase sign_case = SignCase::NoConstantSign;

    int mu_z() const { return mu.at(*z - 1); }
    int rho_h() const { return rho.at(*h - 1); }
};

DerivativeIndexData derivative_space(const TwoPointSpace& s, int q);
// (mu, rho) packaged as a space.
TwoPointSpace derived(const TwoPointSpace& s, int q);

// Adjoint of the derivative space built directly from the adjoint sets
// via the C_q / D_q split; l = max C_q, p = max D_q (0 when empty).
struct AdjointDerivative {
    TwoPointSpace space;
    int l = 0;
    int p = 0;
};
AdjointDerivative adjoint_derivative(const TwoPointSpace& s, int q);
TwoPointSpace adjoint_derivative_space(const TwoPointSpace& s, int q);

struct AuxSpaces {
    TwoPointSpace x2, x3, x4, x5;
    TwoPointSpace x2_adj, x4_adj;
};
// Requires CaseA; throws DegenerateSpaceError if an inserted index is already present.
AuxSpaces aux_spaces(const TwoPointSpace& s, int q);

// Every complete space of order n with 1 <= k <= n-1.
std::vector<TwoPointSpace> enumerate_spaces(int n);

} // namespace greensign
