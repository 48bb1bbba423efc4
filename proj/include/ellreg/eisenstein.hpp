#pragma once

#include <array>
#include <utility>
#include <vector>

#include "characters.hpp"

namespace ellreg {

using FinDivisor = FiniteMap;

struct UnimodularMatrix {
    long long a = 1, b = 0, c = 0, d = 1;

    UnimodularMatrix() = default;
    UnimodularMatrix(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1) throw std::invalid_argument("UnimodularMatrix: determinant must be 1");
    }

    cplx apply(cplx z) const { return (double(a) * z + double(b)) / (double(c) * z + double(d)); }
    UnimodularMatrix operator*(const UnimodularMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }

    static UnimodularMatrix sigma() { return {0, -1, 1, 0}; }
    static UnimodularMatrix tau() { return {0, -1, 1, -1}; }
    static UnimodularMatrix T() { return {1, 1, 0, 1}; }
    static UnimodularMatrix g_v(long long v) { return {0, -1, 1, v}; }
};

using Pair = std::pair<long long, long long>;

// row vector times matrix
inline Pair act(Pair x, const UnimodularMatrix& g, long long N) {
    return {mod(x.first * g.a + x.second * g.c, N), mod(x.first * g.b + x.second * g.d, N)};
}

// some g in SL2(Z) with bottom row = (u,v) mod N; (u,v) must generate Z/N
inline UnimodularMatrix lift_bottom_row(long long u, long long v, long long N) {
    u = mod(u, N);
    v = mod(v, N);
    if (std::gcd(std::gcd(u, v), N) != 1) throw std::invalid_argument("lift_bottom_row: (u,v) not of order N");
    // find c = u + kN, d = v with gcd(c,d)=1; move v if needed
    long long c = u, d = v;
    if (d == 0) d = N;
    for (long long k = 0;; ++k) {
        long long cc = u + k * N;
        if (std::gcd(cc, d) == 1) {
            c = cc;
            break;
        }
    }
    // a d - b c = 1
    long long a, b;
    if (c == 0) {
        // d = +-1
        a = d;
        b = 0;
    } else {
        long long x = inv_mod(mod(d, std::llabs(c)), std::llabs(c));  // a*d = 1 mod |c|
        a = x;
        b = (a * d - 1) / c;
        if (a * d - b * c != 1) {
            a = x;
            b = (a * d - 1) / c;
        }
    }
    return {a, b, c, d};
}

struct OneFormValue {
    cplx dz = 0.0, dzbar = 0.0;
    cplx z = 0.0;
    // pairing with a tangent vector t: dz(t) = t, dzbar(t) = conj t
    cplx along(cplx t) const { return dz * t + dzbar * std::conj(t); }
};

struct ZetaValue {
    double value = 0.0;
    cplx dz = 0.0;  // d/dz; d/dzbar is the conjugate since the value is real
};

namespace detail {

inline int tail_terms(double rho, double tol, int cap) {
    // coefficients grow at most like 2(1+log r)(1+2 pi r)
    if (!(rho < 1.0)) throw truncation_error("eisenstein: |q| too close to 1");
    for (int R = 1; R <= cap; ++R) {
        double t = 2.0 * (1.0 + std::log(double(R))) * (1.0 + 2.0 * pi * R) * std::pow(rho, R) / (1.0 - rho);
        if (t < tol) return R;
    }
    throw truncation_error("eisenstein: truncation cap reached");
}

}  // namespace detail

// zeta*_{a,b}(z) from its Fourier expansion, with d/dz
inline ZetaValue zeta_star_full(long long a, long long b, int N, cplx z, const SeriesControl& ctl = {}) {
    ctl.check();
    if (!(z.imag() > 0.0)) throw std::domain_error("zeta_star: Im z must be > 0");
    a = mod(a, N);
    b = mod(b, N);
    const double y = z.imag();
    const cplx dy = cplx(0.0, -0.5);  // dy/dz
    ZetaValue out;
    if (b == 0) {
        cplx q = std::exp(2.0 * pi * I * z);
        int R = detail::tail_terms(std::abs(q), ctl.abs_tol * 1e-2, ctl.max_terms);
        std::vector<double> c(R + 1, 0.0);
        if (a == 0) {
            for (int k = 1; k <= R; ++k)
                for (int r = k; r <= R; r += k) c[r] += 2.0 / k;  // 2 sigma(r)/r
        } else {
            for (int k = 1; k <= R; ++k) {
                double t = 2.0 * std::cos(2.0 * pi * double(k * a % N) / N) / k;
                for (int r = k; r <= R; r += k) c[r] += t;
            }
        }
        double s = 0.0;
        cplx ds = 0.0, qr = 1.0;
        for (int r = 1; r <= R; ++r) {
            qr *= q;
            s += c[r] * 2.0 * qr.real();
            ds += c[r] * (2.0 * pi * I * double(r)) * qr;
        }
        if (a == 0) {
            // pi^2 y/3 - pi log y + 2 pi (gamma - log 2) + pi sum ...
            out.value = pi * pi * y / 3.0 - pi * std::log(y) + 2.0 * pi * (euler_gamma - std::log(2.0)) + pi * s;
            out.dz = pi * pi / 3.0 * dy - pi * dy / y + pi * ds;
        } else {
            double l = std::log(std::abs(1.0 - root_of_unity(a, N)));
            out.value = pi * pi * y / 3.0 - 2.0 * pi * l + pi * s;
            out.dz = pi * pi / 3.0 * dy + pi * ds;
        }
        return out;
    }
    cplx qN = std::exp(2.0 * pi * I * z / double(N));
    int R = detail::tail_terms(std::abs(qN), ctl.abs_tol * 1e-2, ctl.max_terms);
    std::vector<cplx> alpha(R + 1, 0.0);
    for (int k = 1; k <= R; ++k) {
        cplx zm = root_of_unity(-(long long)k * a, N);
        for (int m = 1; k * m <= R; ++m) {
            long long mm = m % N;
            if (mm == b) alpha[k * m] += zm / double(k);
            if (mm == mod(-b, N)) alpha[k * m] += std::conj(zm) / double(k);
        }
    }
    double B = periodic_bernoulli2(double(b) / N);
    double s = 0.0;
    cplx ds = 0.0, qr = 1.0;
    for (int r = 1; r <= R; ++r) {
        qr *= qN;
        if (alpha[r] == 0.0) continue;
        cplx t = alpha[r] * qr;
        s += 2.0 * t.real();
        ds += t * (2.0 * pi * I * double(r) / double(N));
    }
    out.value = 2.0 * pi * pi * B * y + pi * s;
    out.dz = 2.0 * pi * pi * B * dy + pi * ds;
    return out;
}

inline double zeta_star(long long a, long long b, int N, cplx z, const SeriesControl& ctl = {}) {
    return zeta_star_full(a, b, N, z, ctl).value;
}

// closed forms from the two Kronecker limit formulas
inline double zeta_star_kronecker(long long a, long long b, int N, cplx z, const SeriesControl& ctl = {}) {
    a = mod(a, N);
    b = mod(b, N);
    double y = z.imag();
    if (a == 0 && b == 0)
        return 2.0 * pi * (euler_gamma - std::log(2.0) - 0.5 * std::log(y) - 2.0 * std::log(std::abs(dedekind_eta(z, ctl))));
    cplx w = (double(a) - double(b) * z) / double(N);
    return 2.0 * pi * pi * double(b * b) * y / double(N * N) - 2.0 * pi * std::log(std::abs(siegel_theta(w, z, ctl)));
}

// all E*_{(u,v)} and their d/dz at one point
class EisensteinField {
  public:
    EisensteinField() = default;
    EisensteinField(int N, cplx z, const SeriesControl& ctl = {}) : N_(N), z_(z), val_(N * N), dz_(N * N) {
        std::vector<double> zv(N * N);
        std::vector<cplx> zd(N * N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                // zeta*_{a,b} = zeta*_{-a,-b}
                int ia = int(mod(-a, N)), ib = int(mod(-b, N));
                if (ia * N + ib < a * N + b) {
                    zv[a * N + b] = zv[ia * N + ib];
                    zd[a * N + b] = zd[ia * N + ib];
                    continue;
                }
                auto t = zeta_star_full(a, b, N, z, ctl);
                zv[a * N + b] = t.value;
                zd[a * N + b] = t.dz;
            }
        // E*_{(u,v)} = N^-2 sum e^{-2 pi i (au+bv)/N} zeta*_{a,b}; separable
        std::vector<cplx> tv(N * N), td(N * N);  // [u][b]
        for (int u = 0; u < N; ++u)
            for (int b = 0; b < N; ++b) {
                cplx sv = 0.0, sd = 0.0;
                for (int a = 0; a < N; ++a) {
                    cplx e = root_of_unity(-(long long)a * u, N);
                    sv += e * zv[a * N + b];
                    sd += e * zd[a * N + b];
                }
                tv[u * N + b] = sv;
                td[u * N + b] = sd;
            }
        const double nn = double(N) * N;
        for (int u = 0; u < N; ++u)
            for (int v = 0; v < N; ++v) {
                cplx sv = 0.0, sd = 0.0;
                for (int b = 0; b < N; ++b) {
                    cplx e = root_of_unity(-(long long)b * v, N);
                    sv += e * tv[u * N + b];
                    sd += e * td[u * N + b];
                }
                val_[u * N + v] = sv.real() / nn;
                dz_[u * N + v] = sd / nn;
            }
    }

    int N() const { return N_; }
    cplx z() const { return z_; }
    double value(long long u, long long v) const { return val_[mod(u, N_) * N_ + mod(v, N_)]; }
    cplx dz(long long u, long long v) const { return dz_[mod(u, N_) * N_ + mod(v, N_)]; }

    // E*_l pulled back along any g with bottom row x: sum_a l(a) E*_{a x}
    struct Pulled {
        cplx val = 0.0, dz = 0.0, dzbar = 0.0;
    };
    Pulled pulled(const FinDivisor& l, Pair x) const {
        Pulled p;
        for (int a = 0; a < N_; ++a) {
            if (l.v[a] == 0.0) continue;
            long long u = mod(a * x.first, N_), v = mod(a * x.second, N_);
            p.val += l.v[a] * value(u, v);
            cplx d = dz(u, v);
            p.dz += l.v[a] * d;
            p.dzbar += l.v[a] * std::conj(d);
        }
        return p;
    }

    // eta(l,m) = E_l (d - dbar) E_m - E_m (d - dbar) E_l, pulled back by bottom row x
    OneFormValue eta(const FinDivisor& l, const FinDivisor& m, Pair x = {0, 1}) const {
        auto L = pulled(l, x), M = pulled(m, x);
        OneFormValue w;
        w.z = z_;
        w.dz = L.val * M.dz - M.val * L.dz;
        w.dzbar = -L.val * M.dzbar + M.val * L.dzbar;
        return w;
    }

  private:
    int N_ = 1;
    cplx z_ = I;
    std::vector<double> val_;
    std::vector<cplx> dz_;
};

inline double e_star(Pair x, int N, cplx z, const SeriesControl& ctl = {}) {
    const double nn = double(N) * N;
    cplx s = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            s += root_of_unity(-(a * x.first + b * x.second), N) * zeta_star(a, b, N, z, ctl);
    return s.real() / nn;
}

// sum_v f(v) E*_{(0,v)}
inline cplx e_star_f(const FinDivisor& f, cplx z, const SeriesControl& ctl = {}) {
    EisensteinField F(f.N, z, ctl);
    cplx s = 0.0;
    for (int v = 0; v < f.N; ++v) s += f.v[v] * F.value(0, v);
    return s;
}

// sum-zero f only: direct Fourier expansion in q = e^{2 pi i z}
inline cplx e_star_f_fourier(const FinDivisor& f, cplx z, const SeriesControl& ctl = {}) {
    if (std::abs(f.degree()) > 1e-9 * (1.0 + std::abs(f.v[0])))
        throw std::invalid_argument("e_star_f_fourier: f must have sum zero");
    int N = f.N;
    FiniteMap fh = fourier_transform(f);
    cplx lin = 0.0;
    for (int b = 0; b < N; ++b) lin += fh.v[b] * periodic_bernoulli2(double(b) / N);
    lin *= 2.0 * pi * pi / N;
    cplx q = std::exp(2.0 * pi * I * z);
    int R = detail::tail_terms(std::abs(q), ctl.abs_tol * 1e-2, ctl.max_terms);
    cplx s = 0.0, qr = 1.0;
    for (int r = 1; r <= R; ++r) {
        qr *= q;
        cplx c = 0.0;
        for (long long m : divisors(r)) c += double(m) * (fh(m) + fh(-m));
        s += c / double(r) * (qr + std::conj(qr));
    }
    return lin * z.imag() + pi / (double(N) * N) * s;
}

inline OneFormValue eta_form(const FinDivisor& l, const FinDivisor& m, cplx z, const SeriesControl& ctl = {}) {
    if (l.N != m.N) throw std::invalid_argument("eta_form: modulus mismatch");
    return EisensteinField(l.N, z, ctl).eta(l, m);
}

// hyperbolic geodesic from z0 to z1
struct Geodesic {
    cplx z0, z1;
    bool vertical = false;
    double c = 0.0, r = 0.0, t0 = 0.0, t1 = 0.0;

    Geodesic(cplx a, cplx b) : z0(a), z1(b) {
        if (!(a.imag() > 0.0 && b.imag() > 0.0)) throw std::domain_error("Geodesic: endpoints must lie in H");
        if (std::abs(a.real() - b.real()) < 1e-14) {
            vertical = true;
            t0 = std::log(a.imag());
            t1 = std::log(b.imag());
        } else {
            c = (std::norm(b) - std::norm(a)) / (2.0 * (b.real() - a.real()));
            r = std::abs(a - c);
            t0 = std::arg(a - c);
            t1 = std::arg(b - c);
        }
    }
    cplx point(double t) const {
        if (vertical) return {z0.real(), std::exp(t)};
        return c + r * std::exp(I * t);
    }
    cplx tangent(double t) const {
        if (vertical) return {0.0, std::exp(t)};
        return I * r * std::exp(I * t);
    }
};

// eta integrals along one geodesic for many (l, m, x), sharing the node data
class GeodesicEtaIntegrator {
  public:
    GeodesicEtaIntegrator(int N, cplx z0, cplx z1, int nodes = 32, const SeriesControl& ctl = {})
        : N_(N), geo_(z0, z1), n_(nodes) {
        auto rule = gauss_legendre_rule(nodes);
        double h = 0.5 * (geo_.t1 - geo_.t0), m = 0.5 * (geo_.t1 + geo_.t0);
        for (int i = 0; i < nodes; ++i) {
            double t = m + h * rule->x[i];
            fields_.emplace_back(N, geo_.point(t), ctl);
            tang_.push_back(geo_.tangent(t) * (h * rule->w[i]));
        }
    }

    cplx integrate(const FinDivisor& l, const FinDivisor& m, Pair x = {0, 1}) const {
        cplx s = 0.0;
        for (size_t i = 0; i < fields_.size(); ++i) s += fields_[i].eta(l, m, x).along(tang_[i]);
        return s;
    }

    int nodes() const { return n_; }
    int N() const { return N_; }

  private:
    int N_;
    Geodesic geo_;
    int n_;
    std::vector<EisensteinField> fields_;
    std::vector<cplx> tang_;
};

struct PathIntegral {
    cplx value = 0.0;
    int nodes = 0;
    double change = 0.0;  // last doubling difference
};

// int_{g z0}^{g z1} eta(l,m) computed as the pulled-back integral on the geodesic z0 -> z1
inline PathIntegral integrate_eta_pullback(const FinDivisor& l, const FinDivisor& m, const UnimodularMatrix& g,
                                           cplx z0, cplx z1, const SeriesControl& ctl = {}) {
    if (l.N != m.N) throw std::invalid_argument("integrate_eta_pullback: modulus mismatch");
    PathIntegral out;
    if (std::abs(z0 - z1) == 0.0) return out;
    Pair x{mod(g.c, l.N), mod(g.d, l.N)};
    double tol = std::max(ctl.abs_tol * 1e3, 1e-13);
    cplx prev = GeodesicEtaIntegrator(l.N, z0, z1, 8, ctl).integrate(l, m, x);
    for (int n = 16; n <= 1024; n *= 2) {
        cplx cur = GeodesicEtaIntegrator(l.N, z0, z1, n, ctl).integrate(l, m, x);
        out.change = std::abs(cur - prev);
        out.value = cur;
        out.nodes = n;
        if (out.change < tol * (1.0 + std::abs(cur))) return out;
        prev = cur;
    }
    throw truncation_error("integrate_eta_pullback: quadrature doubling did not converge");
}

inline cplx rho() { return std::exp(I * pi / 3.0); }

}  // namespace ellreg
