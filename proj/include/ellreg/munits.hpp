#pragma once

#include "json.hpp"

#include "modsym.hpp"

namespace ellreg {

// coefficients indexed like cusp_classes(N)
struct CuspDivisor {
    int N = 1;
    std::vector<CuspClass> classes;
    std::vector<cplx> coeff;

    CuspDivisor() = default;
    explicit CuspDivisor(int n) : N(n), classes(cusp_classes(n)), coeff(classes.size(), 0.0) {}

    cplx degree() const { return std::accumulate(coeff.begin(), coeff.end(), cplx(0.0)); }
    cplx& at(Pair x) { return coeff[cusp_class_of(classes, x, N)]; }
    cplx at(Pair x) const { return coeff[cusp_class_of(classes, x, N)]; }
    // ord at P_v = [0, v]
    cplx at_pv(long long v) const { return at({0, v}); }

    CuspDivisor& operator+=(const CuspDivisor& o) {
        if (o.N != N) throw std::invalid_argument("CuspDivisor: level mismatch");
        for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
        return *this;
    }
    CuspDivisor& operator*=(cplx c) {
        for (auto& x : coeff) x *= c;
        return *this;
    }
    friend CuspDivisor operator+(CuspDivisor a, const CuspDivisor& b) { return a += b; }
    friend CuspDivisor operator*(cplx c, CuspDivisor a) { return a *= c; }

    double max_abs_diff(const CuspDivisor& o) const {
        double m = 0.0;
        for (size_t i = 0; i < coeff.size(); ++i) m = std::max(m, std::abs(coeff[i] - o.coeff[i]));
        return m;
    }
};

namespace detail {

// ord at one representative, straight from the double sum
inline cplx unit_ord_at(const FiniteMap& fh, Pair x, int N) {
    auto [u, v] = x;
    cplx s = 0.0;
    for (int b = 0; b < N; ++b) {
        double B = periodic_bernoulli2(double(b) / N);
        for (int a = 0; a < N; ++a) s += fh(a * u + b * v) * B;
    }
    long long d = std::gcd(mod(u, N), (long long)N);
    return -s / (double(N) * double(d));
}

// image of beta in (Z/d)^* lifted to a unit mod N
inline long long lift_unit(long long beta, long long d, long long N) {
    for (long long w = mod(beta, d); w < N + d; w += d)
        if (std::gcd(w, N) == 1) return w;
    throw std::logic_error("lift_unit: no lift");
}

}  // namespace detail

// div u_f for f of degree 0
inline CuspDivisor unit_divisor(const FinDivisor& f, double tol = 1e-12) {
    if (std::abs(f.degree()) > tol) throw std::invalid_argument("unit_divisor: f must have degree 0");
    CuspDivisor D(f.N);
    FiniteMap fh = fourier_transform(f);
    for (size_t i = 0; i < D.classes.size(); ++i) D.coeff[i] = detail::unit_ord_at(fh, D.classes[i].rep, f.N);
    return D;
}

// same, evaluated at every member of every class; returns the largest spread
inline double unit_divisor_class_spread(const FinDivisor& f) {
    FiniteMap fh = fourier_transform(f);
    double m = 0.0;
    for (auto& c : cusp_classes(f.N)) {
        cplx r = detail::unit_ord_at(fh, c.rep, f.N);
        for (auto& x : c.members) m = std::max(m, std::abs(detail::unit_ord_at(fh, x, f.N) - r));
    }
    return m;
}

inline void require_even_nontrivial(const DirichletCharacter& chi, const char* who) {
    if (!chi.is_even()) throw std::invalid_argument(std::string(who) + ": character must be even");
    if (chi.is_trivial()) throw std::invalid_argument(std::string(who) + ": character must be nontrivial");
}

// L(chi,2) for even nontrivial chi, primitive or not: L(chi,2) = L(chi*,2) prod_{p | N, p !| N_chi} (1 - chi*(p)/p^2)
inline cplx l_chi_2_any(const DirichletCharacter& chi) {
    const int N = chi.modulus(), M = chi.conductor();
    if (M == N) return l_chi_2(chi);
    DirichletCharacter prim;
    bool found = false;
    for (auto& c : enumerate_characters(M)) {
        bool ok = true;
        for (int a = 1; a < N && ok; ++a)
            if (std::gcd(a, N) == 1 && std::abs(c(a) - chi(a)) > 1e-12) ok = false;
        if (ok) {
            prim = c;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("l_chi_2_any: primitive character not found");
    cplx L = l_chi_2(prim);
    for (auto [p, e] : factorize(N))
        if (M % p != 0) L *= 1.0 - prim(p) / double(p * p);
    return L;
}

// div u_chi = -(L(chi,2)/pi^2) sum_v chi-bar(v) P_v
inline CuspDivisor unit_divisor_chi(const DirichletCharacter& chi) {
    require_even_nontrivial(chi, "unit_divisor_chi");
    const int N = chi.modulus();
    CuspDivisor D(N);
    cplx c = -l_chi_2_any(chi) / (pi * pi);
    std::set<int> seen;
    for (int v = 1; v < N; ++v) {
        if (std::gcd(v, N) != 1) continue;
        int k = cusp_class_of(D.classes, {0, v}, N);
        if (!seen.insert(k).second) continue;
        D.coeff[k] = c * std::conj(chi(v));
    }
    return D;
}

// casewise formula on d = (u, N)
inline CuspDivisor unit_divisor_chihat(const DirichletCharacter& chi) {
    const int N = chi.modulus();
    if (N <= 1) throw std::invalid_argument("unit_divisor_chihat: modulus must be > 1");
    if (!chi.is_even()) throw std::invalid_argument("unit_divisor_chihat: character must be even");
    const int Nc = chi.conductor();
    CuspDivisor D(N);
    for (size_t i = 0; i < D.classes.size(); ++i) {
        auto [u, v] = D.classes[i].rep;
        long long d = std::gcd(mod(u, N), (long long)N);
        if (d % Nc != 0) continue;
        auto chi_d = [&](long long beta) -> cplx {
            if (std::gcd(mod(beta, d), d) != 1) return 0.0;
            return chi(detail::lift_unit(beta, d, N));
        };
        cplx s = 0.0;
        for (long long beta = 0; beta < d; ++beta)
            if (std::gcd(beta, d) == 1) s += periodic_bernoulli2(double(beta) / d) * chi_d(beta);
        double scale = (double(euler_phi(N)) / N) / (double(euler_phi(d)) / d);
        D.coeff[i] = -scale * chi_d(v) * s;
    }
    return D;
}

inline nlohmann::json to_json(const CuspDivisor& D) {
    nlohmann::json cusps = nlohmann::json::array();
    for (size_t i = 0; i < D.classes.size(); ++i) {
        auto& c = D.classes[i];
        cusps.push_back({{"rep", {c.rep.first, c.rep.second}},
                         {"gcd", c.d},
                         {"infinity", c.is_infinity},
                         {"ord", {D.coeff[i].real(), D.coeff[i].imag()}}});
    }
    cplx deg = D.degree();
    return {{"level", D.N}, {"degree", {deg.real(), deg.imag()}}, {"cusps", cusps}};
}

// the even character mod 13 with eps(2) = zeta_6
inline DirichletCharacter epsilon13() { return parse_character("13:g=2,zeta12^2"); }

struct X113Report {
    std::vector<cplx> div_y;           // on P_1..P_6
    cplx ratio_u_eps3_to_y = 0.0;      // div u_{eps^3} / div y
    double ratio_spread = 0.0;         // how far the ratio is from constant
    cplx expected_ratio = 0.0;         // -4 sqrt 13 / 13^2
    std::vector<cplx> div_x;           // (13/12)((2 - z6) div u_hat + (1 + z6) div u_hat')
    std::vector<cplx> div_x_from_chi;  // same from the u_chi form with Gauss sums
    double err_y = 0.0, err_x = 0.0, err_ratio = 0.0, err_hat_vs_chi = 0.0;
    bool ok(double tol = 1e-10) const { return err_y < tol && err_x < tol && err_ratio < tol && err_hat_vs_chi < tol; }
};

inline X113Report reconstruct_x1_13_units() {
    const int N = 13;
    const cplx z6 = std::exp(I * pi / 3.0);
    auto eps = epsilon13();
    auto e2 = eps * eps, e3 = e2 * eps, e2b = e2.conj();
    X113Report r;
    const std::vector<cplx> y_expected{1, -1, 1, 1, -1, -1}, x_expected{0, 1, 1, -1, 0, -1};
    // div y read off div u_{eps^3}, which is real since eps^3 is quadratic
    auto u3 = unit_divisor_chi(e3);
    cplx lam = -l_chi_2(e3) / (pi * pi);
    r.expected_ratio = -4.0 * std::sqrt(13.0) / 169.0;
    r.ratio_u_eps3_to_y = u3.at_pv(1) / y_expected[0];
    for (int v = 1; v <= 6; ++v) {
        r.div_y.push_back(u3.at_pv(v) / lam);
        r.err_y = std::max(r.err_y, std::abs(r.div_y.back() - y_expected[v - 1]));
        r.ratio_spread = std::max(r.ratio_spread, std::abs(u3.at_pv(v) / y_expected[v - 1] - r.ratio_u_eps3_to_y));
    }
    r.err_ratio = std::max(std::abs(r.ratio_u_eps3_to_y - r.expected_ratio), r.ratio_spread);
    // the hat units: u for the Fourier transform of eps-bar^2 is tau(eps-bar^2) u_{eps^2}, and symmetrically
    auto hat_a = unit_divisor_chihat(e2b), hat_b = unit_divisor_chihat(e2);
    CuspDivisor dx = (13.0 / 12.0) * ((2.0 - z6) * hat_a + (1.0 + z6) * hat_b);
    CuspDivisor dx2 = (13.0 / 12.0) * ((2.0 - z6) * gauss_sum(e2b) * unit_divisor_chi(e2) +
                                       (1.0 + z6) * gauss_sum(e2) * unit_divisor_chi(e2b));
    for (int v = 1; v <= 6; ++v) {
        r.div_x.push_back(dx.at_pv(v));
        r.div_x_from_chi.push_back(dx2.at_pv(v));
        r.err_x = std::max(r.err_x, std::abs(dx.at_pv(v) - x_expected[v - 1]));
    }
    r.err_x = std::max(r.err_x, std::abs(dx.degree()));
    r.err_hat_vs_chi = dx.max_abs_diff(dx2);
    return r;
}

}  // namespace ellreg
