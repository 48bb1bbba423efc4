#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "characters.hpp"

namespace ellreg {

struct CurveModel {
    long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    long long conductor = 0;

    CurveModel() = default;
    CurveModel(long long a1_, long long a2_, long long a3_, long long a4_, long long a6_, long long N)
        : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_), conductor(N) {
        if (discriminant() == 0) throw std::invalid_argument("CurveModel: singular model");
        if (N < 1) throw std::invalid_argument("CurveModel: conductor must be >= 1");
    }

    long long b2() const { return a1 * a1 + 4 * a2; }
    long long b4() const { return 2 * a4 + a1 * a3; }
    long long b6() const { return a3 * a3 + 4 * a6; }
    long long b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    long long c4() const { return b2() * b2() - 24 * b4(); }
    long long c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    long long discriminant() const {
        return -b2() * b2() * b8() - 8 * b4() * b4() * b4() - 27 * b6() * b6() + 9 * b2() * b4() * b6();
    }
    double j_invariant() const { return std::pow(double(c4()), 3) / double(discriminant()); }

    // y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)
    double residual(double x, double y) const {
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6);
    }

    // "a1,a2,a3,a4,a6,N"
    static CurveModel parse(const std::string& s) {
        std::vector<long long> v;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t pos = 0;
                v.push_back(std::stoll(tok, &pos));
                if (pos != tok.size() && tok.find_first_not_of(" ", pos) != std::string::npos)
                    throw std::invalid_argument("x");
            } catch (...) {
                throw std::invalid_argument("curve spec: bad integer '" + tok + "'");
            }
        }
        if (v.size() != 6) throw std::invalid_argument("curve spec: expected a1,a2,a3,a4,a6,N");
        return CurveModel(v[0], v[1], v[2], v[3], v[4], v[5]);
    }

    static CurveModel x1_11() { return {0, -1, 1, 0, 0, 11}; }
    static CurveModel c17a() { return {1, -1, 1, -1, -14, 17}; }
};

// number of projective points over F_p
inline long long count_points(const CurveModel& E, long long p) {
    if (!is_prime(p)) throw std::invalid_argument("count_points: p must be prime");
    auto md = [p](long long a) { return mod(a, p); };
    long long cnt = 1;  // infinity
    if (p == 2) {
        for (long long x = 0; x < 2; ++x)
            for (long long y = 0; y < 2; ++y)
                if (md(y * y + E.a1 * x * y + E.a3 * y - x * x * x - E.a2 * x * x - E.a4 * x - E.a6) == 0) ++cnt;
        return cnt;
    }
    // y^2 + (a1 x + a3) y - r(x) = 0 has 1 + legendre(disc) roots
    std::vector<signed char> leg(p, -1);
    leg[0] = 0;
    for (long long y = 1; y < p; ++y) leg[y * y % p] = 1;
    for (long long x = 0; x < p; ++x) {
        long long bx = md(E.a1 * x + E.a3);
        long long r = md(md(md(x * x) * x) + md(E.a2 * md(x * x)) + md(E.a4 * x) + E.a6);
        long long disc = md(bx * bx + 4 * r);
        cnt += 1 + leg[disc];
    }
    return cnt;
}

inline long long a_p(const CurveModel& E, long long p) { return p + 1 - count_points(E, p); }

// Dirichlet coefficients a_1..a_nmax (index 0 unused)
inline std::vector<long long> an_coefficients(const CurveModel& E, int nmax) {
    if (nmax < 1) throw std::invalid_argument("an_coefficients: nmax >= 1");
    std::vector<long long> a(nmax + 1, 0);
    a[1] = 1;
    std::vector<int> spf(nmax + 1, 0);
    for (int i = 2; i <= nmax; ++i)
        if (!spf[i])
            for (int j = i; j <= nmax; j += i)
                if (!spf[j]) spf[j] = i;
    for (int n = 2; n <= nmax; ++n) {
        int p = spf[n];
        int m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m > 1) {
            a[n] = a[pk] * a[m];
            continue;
        }
        // prime power p^k = n
        if (pk == p) {
            a[n] = a_p(E, p);
        } else {
            bool bad = E.conductor % p == 0;
            long long ap = a[p];
            a[n] = bad ? ap * a[n / p] : ap * a[n / p] - p * a[n / p / p];
        }
    }
    return a;
}

struct PeriodLattice {
    double omega_plus = 0.0;  // real period, > 0
    cplx omega2 = 0.0;        // second generator, tau = omega2/omega_plus
    cplx tau = 0.0;
    double q = 0.0;
    int real_components = 1;
};

namespace detail {

inline double agm(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("agm: arguments must be positive");
    for (int i = 0; i < 200; ++i) {
        double an = 0.5 * (a + b), bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 4e-16 * a) return a;
    }
    throw truncation_error("agm: no convergence");
}

// real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, descending
inline std::vector<double> two_torsion_x(double b2, double b4, double b6) {
    double A = b2 / 4.0, B = b4 / 2.0, C = b6 / 4.0;  // x^3 + A x^2 + B x + C
    double p = B - A * A / 3.0, qq = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    double disc = -(4.0 * p * p * p + 27.0 * qq * qq);
    std::vector<double> r;
    if (disc > 0.0) {
        double m = 2.0 * std::sqrt(-p / 3.0);
        double th = std::acos(std::clamp(3.0 * qq / (p * m), -1.0, 1.0)) / 3.0;
        for (int k = 0; k < 3; ++k) r.push_back(m * std::cos(th - 2.0 * pi * k / 3.0) - A / 3.0);
    } else {
        double s = std::sqrt(qq * qq / 4.0 + p * p * p / 27.0);
        r.push_back(std::cbrt(-qq / 2.0 + s) + std::cbrt(-qq / 2.0 - s) - A / 3.0);
    }
    // Newton polish
    for (auto& x : r)
        for (int i = 0; i < 3; ++i) {
            double f = ((x + A) * x + B) * x + C, d = (3.0 * x + 2.0 * A) * x + B;
            if (d != 0.0) x -= f / d;
        }
    std::sort(r.rbegin(), r.rend());
    return r;
}

}  // namespace detail

// lattice of dx/(2y + a1 x + a3), real period positive (orientation of increasing y)
inline PeriodLattice periods(const CurveModel& E) {
    double b2 = double(E.b2()), b4 = double(E.b4()), b6 = double(E.b6());
    auto e = detail::two_torsion_x(b2, b4, b6);
    PeriodLattice L;
    if (E.discriminant() < 0) {
        double e1 = e.front();
        double a = 3.0 * e1 + b2 / 4.0;
        double b = std::sqrt(3.0 * e1 * e1 + b2 * e1 / 2.0 + b4 / 2.0);
        L.omega_plus = 2.0 * pi / detail::agm(2.0 * std::sqrt(b), std::sqrt(2.0 * b + a));
        L.omega2 = cplx(-L.omega_plus / 2.0, pi / detail::agm(2.0 * std::sqrt(b), std::sqrt(2.0 * b - a)));
        L.real_components = 1;
    } else {
        if (e.size() != 3) throw std::runtime_error("periods: expected three real 2-torsion points");
        double e1 = e[0], e2 = e[1], e3 = e[2];
        L.omega_plus = pi / detail::agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
        L.omega2 = cplx(0.0, pi / detail::agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3)));
        L.real_components = 2;
    }
    L.tau = L.omega2 / L.omega_plus;
    cplx q = std::exp(2.0 * pi * I * L.tau);
    L.q = q.real();
    if (!(L.tau.imag() > 0.0) || std::abs(L.q) >= 1.0) throw std::runtime_error("periods: bad lattice");
    return L;
}

// j from E4, E6 q-series
inline double j_from_q(double q) {
    double e4 = 1.0, e6 = 1.0, qn = 1.0;
    for (int n = 1; n < 2000; ++n) {
        qn *= q;
        if (std::abs(qn) * std::pow(double(n), 5) < 1e-18) break;
        double s3 = 0.0, s5 = 0.0;
        for (long long d : divisors(n)) {
            s3 += std::pow(double(d), 3);
            s5 += std::pow(double(d), 5);
        }
        e4 += 240.0 * s3 * qn;
        e6 -= 504.0 * s5 * qn;
    }
    return 1728.0 * e4 * e4 * e4 / (e4 * e4 * e4 - e6 * e6);
}

struct WeierstrassValue {
    cplx wp, dwp;  // P(z), P'(z)
};

// P and P' at z for the lattice omega_plus (Z + tau Z)
inline WeierstrassValue weierstrass(const PeriodLattice& L, cplx z, const SeriesControl& ctl = {}) {
    // reduce z so that the multiplicative coordinate sits in the fundamental annulus
    cplx t = z / L.omega_plus;
    double k = std::floor(t.imag() / L.tau.imag());
    t -= k * L.tau;
    cplx u = std::exp(2.0 * pi * I * t);
    const double q = L.q;
    auto h = [](cplx x) { return x / ((1.0 - x) * (1.0 - x)); };
    auto g = [](cplx x) { return x * (1.0 + x) / ((1.0 - x) * (1.0 - x) * (1.0 - x)); };
    cplx s = 1.0 / 12.0 + h(u), sd = g(u);
    double qn = 1.0;
    for (int n = 1;; ++n) {
        if (n > ctl.max_terms) throw truncation_error("weierstrass: term cap reached");
        qn *= q;
        cplx a = qn * u, b = qn / u;
        s += h(a) + h(b) - 2.0 * qn / ((1.0 - qn) * (1.0 - qn));
        sd += g(a) - g(b);
        if (std::abs(qn) * (1.0 + 1.0 / std::abs(u)) < ctl.abs_tol * 1e-3) break;
    }
    cplx c = 2.0 * pi * I / L.omega_plus;
    return {c * c * s, c * c * c * sd};
}

// model point attached to z
inline std::pair<cplx, cplx> point_from_z(const CurveModel& E, const PeriodLattice& L, cplx z) {
    auto w = weierstrass(L, z);
    cplx x = w.wp - double(E.b2()) / 12.0;
    cplx y = 0.5 * (w.dwp - double(E.a1) * x - double(E.a3));
    return {x, y};
}

struct TorsionCoordinate {
    int n = 1;
    int a = 0, b = 0;  // point = (a + b tau)/n in units of omega_plus
    TorsionCoordinate() = default;
    TorsionCoordinate(int n_, long long a_, long long b_) : n(n_), a(int(mod(a_, n_))), b(int(mod(b_, n_))) {}
    TorsionCoordinate operator+(const TorsionCoordinate& o) const {
        if (o.n != n) throw std::invalid_argument("TorsionCoordinate: order mismatch");
        return {n, a + o.a, b + o.b};
    }
    TorsionCoordinate operator-() const { return {n, -a, -b}; }
    TorsionCoordinate times(long long k) const { return {n, k * a, k * b}; }
    bool operator==(const TorsionCoordinate& o) const { return n == o.n && a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }
    // multiplicative coordinate x = e^{2 pi i (a + b tau)/n}
    cplx multiplicative(const PeriodLattice& L) const {
        return std::exp(2.0 * pi * I * (double(a) + double(b) * L.tau) / double(n));
    }
};

// match the rational point (px, py) of order n against the (a + b tau)/n candidates
inline TorsionCoordinate torsion_coordinate(const CurveModel& E, const PeriodLattice& L, double px, double py, int n,
                                            double tol = 1e-6) {
    if (n < 2) throw std::invalid_argument("torsion_coordinate: order must be >= 2 (identity rejected)");
    if (std::abs(E.residual(px, py)) > 1e-9 * (1.0 + std::abs(px * px * px)))
        throw std::invalid_argument("torsion_coordinate: point not on curve");
    std::vector<TorsionCoordinate> hits;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == 0 && b == 0) continue;
            cplx z = L.omega_plus * (double(a) + double(b) * L.tau) / double(n);
            auto [x, y] = point_from_z(E, L, z);
            double scale = 1.0 + std::abs(px) + std::abs(py);
            if (std::abs(x - px) < tol * scale && std::abs(y - py) < tol * scale) hits.emplace_back(n, a, b);
        }
    if (hits.size() != 1)
        throw std::runtime_error("torsion_coordinate: " + std::to_string(hits.size()) +
                                 " lattice candidates match; period/model inconsistency");
    return hits.front();
}

// sum over n in Z of D(x q^n)
inline double elliptic_dilog(const PeriodLattice& L, cplx x, const SeriesControl& ctl = {}) {
    ctl.check();
    if (x == cplx(0.0)) throw std::domain_error("elliptic_dilog: x must be nonzero");
    const double q = L.q, aq = std::abs(q);
    if (!(aq < 1.0)) throw std::domain_error("elliptic_dilog: |q| must be < 1");
    if (aq > 0.0) {
        // |x| into (|q|, 1]
        while (std::abs(x) > 1.0) x *= q;
        while (std::abs(x) <= aq) x /= q;
    }
    double s = bloch_wigner(x);
    cplx a = x, b = 1.0 / x;
    for (int n = 1;; ++n) {
        if (n > ctl.max_terms) throw truncation_error("elliptic_dilog: term cap reached");
        a *= q;
        b *= q;
        // D(x q^-n) = -D(q^n / x)
        double t = bloch_wigner(a) - bloch_wigner(b);
        s += t;
        double m = std::max(std::abs(a), std::abs(b));
        if (m * (1.0 + std::abs(std::log(m))) < ctl.abs_tol * 1e-2 || aq == 0.0) break;
    }
    return s;
}

inline double elliptic_dilog(const PeriodLattice& L, const TorsionCoordinate& c, const SeriesControl& ctl = {}) {
    if (c.is_zero()) return 0.0;
    return elliptic_dilog(L, c.multiplicative(L), ctl);
}

// truncated Eisenstein-Kronecker series; pairing <m + n tau, alpha + beta tau> = sign (m beta - n alpha)
inline double dilog_kronecker_oracle(const PeriodLattice& L, double alpha, double beta, double R, int pairing_sign = 1) {
    if (R < 1.0) throw std::invalid_argument("dilog_kronecker_oracle: radius too small");
    const cplx tau = L.tau;
    const double it = tau.imag();
    int nmax = int(R / it) + 1;
    cplx s = 0.0;
    for (int n = -nmax; n <= nmax; ++n) {
        double re = n * tau.real();
        double lim2 = R * R - (n * it) * (n * it);
        if (lim2 < 0.0) continue;
        double w = std::sqrt(lim2);
        int m0 = int(std::ceil(-w - re)), m1 = int(std::floor(w - re));
        for (int m = m0; m <= m1; ++m) {
            if (m == 0 && n == 0) continue;
            cplx e = double(m) + double(n) * tau;
            double ph = 2.0 * pi * pairing_sign * (m * beta - n * alpha);
            s += std::exp(I * ph) / (e * e * std::conj(e));
        }
    }
    return -(it * it / pi) * s.real();
}

// affine group law on model, for consistency checks on rational torsion
inline std::optional<std::pair<double, double>> add_points(const CurveModel& E, std::optional<std::pair<double, double>> P,
                                                           std::optional<std::pair<double, double>> Q) {
    if (!P) return Q;
    if (!Q) return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    double lam, nu;
    if (std::abs(x1 - x2) < 1e-12) {
        if (std::abs(y1 + y2 + E.a1 * x2 + E.a3) < 1e-12) return std::nullopt;
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / (2 * y1 + E.a1 * x1 + E.a3);
        nu = (-x1 * x1 * x1 + E.a4 * x1 + 2 * E.a6 - E.a3 * y1) / (2 * y1 + E.a1 * x1 + E.a3);
    } else {
        lam = (y2 - y1) / (x2 - x1);
        nu = (y1 * x2 - y2 * x1) / (x2 - x1);
    }
    double x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2;
    double y3 = -(lam + E.a1) * x3 - nu - E.a3;
    return std::pair<double, double>{x3, y3};
}

}  // namespace ellreg
