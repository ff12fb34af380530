#include "greensign/combinatorics.hpp"
#include "greensign/errors.hpp"

#include <algorithm>
#include <sstream>

namespace greensign {

namespace {

bool contains(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

int min_missing(const std::vector<int>& v, int n) {
    for (int i = 0; i < n; ++i)
        if (!contains(v, i)) return i;
    return n;
}

std::vector<int> reflect_complement(const std::vector<int>& v, int n) {
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
        if (!contains(v, x)) out.push_back(n - 1 - x);
    std::sort(out.begin(), out.end());
    return out;
}

// sigma_i -> sigma_i - q, wrapped into [0, n-1].
std::vector<int> shift_down(const std::vector<int>& v, int q, int n) {
    std::vector<int> out;
    for (int x : v) out.push_back(x >= q ? x - q : x - q + n);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> first_at_least(const std::vector<int>& v, int q) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] >= q) return static_cast<int>(i) + 1;
    return std::nullopt;
}

int surviving(const std::vector<int>& v, int q, int n) {
    int c = 0;
    for (int x : v)
        if (x - q >= 0 && x - q <= n - q - 1) ++c;
    return c;
}

std::vector<int> erase_at(std::vector<int> v, int pos1) {
    v.erase(v.begin() + (pos1 - 1));
    return v;
}

std::vector<int> insert_new(std::vector<int> v, int x, const char* what) {
    if (contains(v, x))
        throw DegenerateSpaceError(std::string(what) + ": index " + std::to_string(x) +
                                   " already present");
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    return v;
}

// tau^q from the C_q split, shared by the tau and delta halves.
std::vector<int> rotate_adjoint(const std::vector<int>& t, int q, int n, int& lmax) {
    int m = static_cast<int>(t.size());
    lmax = 0;
    for (int i = 1; i <= m; ++i)
        if (t[i - 1] + q <= n - 1) lmax = i;
    std::vector<int> out;
    if (lmax == 0) {
        for (int x : t) out.push_back(x + q - n);
        return out;
    }
    for (int i = lmax + 1; i <= m; ++i) out.push_back(t[i - 1] + q - n);
    for (int i = 1; i <= lmax; ++i) out.push_back(t[i - 1] + q);
    return out;
}

} // namespace

std::string TwoPointSpace::str() const {
    return "X_{" + join(left) + "}^{" + join(right) + "}";
}

bool operator==(const TwoPointSpace& x, const TwoPointSpace& y) {
    return x.n == y.n && x.left == y.left && x.right == y.right;
}

TwoPointSpace make_space(int n, std::vector<int> left, std::vector<int> right) {
    if (n < 1) throw ValidationError("space order n must be positive");
    auto check = [n](std::vector<int>& v, const char* name) {
        std::sort(v.begin(), v.end());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || v[i] > n - 1)
                throw ValidationError(std::string(name) + ": index " + std::to_string(v[i]) +
                                      " outside [0," + std::to_string(n - 1) + "]");
            if (i && v[i] == v[i - 1])
                throw ValidationError(std::string(name) + ": duplicate index " +
                                      std::to_string(v[i]));
        }
    };
    check(left, "sigma");
    check(right, "epsilon");
    return TwoPointSpace{n, std::move(left), std::move(right), {}};
}

void require_complete(const TwoPointSpace& s) {
    if (!s.complete())
        throw ValidationError("|sigma|+|epsilon| must equal n for " + s.str());
}

bool check_na(const TwoPointSpace& s) {
    require_complete(s);
    for (int h = 1; h <= s.n - 1; ++h) {
        int cnt = 0;
        for (int x : s.left) cnt += x < h;
        for (int x : s.right) cnt += x < h;
        if (cnt < h) return false;
    }
    return true;
}

AlphaBeta alpha_beta(const TwoPointSpace& s) {
    return {min_missing(s.left, s.n), min_missing(s.right, s.n)};
}

TwoPointSpace adjoint(const TwoPointSpace& s) {
    require_complete(s);
    return TwoPointSpace{s.n, reflect_complement(s.left, s.n), reflect_complement(s.right, s.n), {}};
}

const char* to_string(SignCase c) {
    switch (c) {
    case SignCase::CaseA: return "CaseA";
    case SignCase::CaseB: return "CaseB";
    case SignCase::CaseC: return "CaseC";
    case SignCase::NoConstantSign: return "NoConstantSign";
    }
    return "?";
}

DerivativeIndexData derivative_space(const TwoPointSpace& s, int q) {
    require_complete(s);
    if (q < 1 || q > s.n - 1)
        throw ValidationError("q must lie in [1, n-1], got " + std::to_string(q));
    const int n = s.n, k = s.k();
    DerivativeIndexData d;
    d.q = q;
    d.mu = shift_down(s.left, q, n);
    d.rho = shift_down(s.right, q, n);
    d.alpha_q = min_missing(d.mu, n);
    d.beta_q = min_missing(d.rho, n);
    d.j = first_at_least(s.left, q);
    d.r = first_at_least(s.right, q);
    if (d.j) d.z = k - (*d.j - 1);
    if (d.r) d.h = (n - k) - (*d.r - 1);
    d.c_q = surviving(s.left, q, n);
    d.d_q = surviving(s.right, q, n);
    const int c = d.c_q, dd = d.d_q;
    // c + dd > n - q only happens without (N_a); no sign theory applies there either
    if (c + dd != n - q)
        d.sign_case = SignCase::NoConstantSign;
    else if (c == n - q && dd == 0)
        d.sign_case = SignCase::CaseB;
    else if (c == 0 && dd == n - q)
        d.sign_case = SignCase::CaseC;
    else
        d.sign_case = SignCase::CaseA;
    return d;
}

TwoPointSpace derived(const TwoPointSpace& s, int q) {
    auto d = derivative_space(s, q);
    return TwoPointSpace{s.n, d.mu, d.rho, {}};
}

AdjointDerivative adjoint_derivative(const TwoPointSpace& s, int q) {
    require_complete(s);
    if (q < 1 || q > s.n - 1)
        throw ValidationError("q must lie in [1, n-1], got " + std::to_string(q));
    auto adj = adjoint(s);
    AdjointDerivative out;
    out.space.n = s.n;
    out.space.left = rotate_adjoint(adj.left, q, s.n, out.l);
    out.space.right = rotate_adjoint(adj.right, q, s.n, out.p);
    return out;
}

TwoPointSpace adjoint_derivative_space(const TwoPointSpace& s, int q) {
    return adjoint_derivative(s, q).space;
}

AuxSpaces aux_spaces(const TwoPointSpace& s, int q) {
    auto d = derivative_space(s, q);
    if (d.sign_case != SignCase::CaseA)
        throw NotApplicableError(std::string("auxiliary spaces need CaseA, got ") +
                                 to_string(d.sign_case));
    const int n = s.n, z = *d.z, h = *d.h;
    auto adj = adjoint(s);
    auto ab = alpha_beta(adj); // eta, gamma
    const std::string qs = std::to_string(q);
    AuxSpaces x;
    x.x2 = {n, erase_at(d.mu, z), insert_new(d.rho, d.beta_q, "X2"), "X2 (q=" + qs + ")"};
    x.x3 = {n, insert_new(erase_at(d.mu, z), d.alpha_q, "X3"), d.rho, "X3 (q=" + qs + ")"};
    x.x4 = {n, insert_new(d.mu, d.alpha_q, "X4"), erase_at(d.rho, h), "X4 (q=" + qs + ")"};
    x.x5 = {n, d.mu, insert_new(erase_at(d.rho, h), d.beta_q, "X5"), "X5 (q=" + qs + ")"};
    x.x2_adj = {n, insert_new(adj.left, ab.alpha, "X2*"), erase_at(adj.right, z),
                "X2* (q=" + qs + ")"};
    x.x4_adj = {n, erase_at(adj.left, h), insert_new(adj.right, ab.beta, "X4*"),
                "X4* (q=" + qs + ")"};
    return x;
}

std::vector<TwoPointSpace> enumerate_spaces(int n) {
    std::vector<TwoPointSpace> out;
    const int full = 1 << n;
    auto bits = [n](int mask) {
        std::vector<int> v;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) v.push_back(i);
        return v;
    };
    for (int k = 1; k <= n - 1; ++k)
        for (int lm = 0; lm < full; ++lm) {
            if (__builtin_popcount(lm) != k) continue;
            for (int rm = 0; rm < full; ++rm)
                if (__builtin_popcount(rm) == n - k) out.push_back({n, bits(lm), bits(rm), {}});
        }
    return out;
}

} // namespace greensign
