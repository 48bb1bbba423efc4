#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace ellreg {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline const cplx I{0.0, 1.0};

struct SeriesControl {
    double abs_tol = 1e-15;
    int max_terms = 20000;

    void check() const {
        if (!(abs_tol > 0.0)) throw std::invalid_argument("SeriesControl: abs_tol must be > 0");
        if (max_terms < 1) throw std::invalid_argument("SeriesControl: max_terms must be >= 1");
    }
};

struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// B_{2k}/(2k+1)!, k = 1.., for the Bernoulli series of Li2 in -log(1-z)
inline const std::array<double, 18>& li2_bernoulli_coeffs() {
    static const std::array<double, 18> c = [] {
        // even Bernoulli numbers B_2..B_36
        const double B[18] = {1.0 / 6,
                              -1.0 / 30,
                              1.0 / 42,
                              -1.0 / 30,
                              5.0 / 66,
                              -691.0 / 2730,
                              7.0 / 6,
                              -3617.0 / 510,
                              43867.0 / 798,
                              -174611.0 / 330,
                              854513.0 / 138,
                              -236364091.0 / 2730,
                              8553103.0 / 6,
                              -23749461029.0 / 870,
                              8615841276005.0 / 14322,
                              -7709321041217.0 / 510,
                              2577687858367.0 / 6,
                              -26315271553053477373.0 / 1919190};
        std::array<double, 18> out{};
        double fact = 1.0;  // (2k+1)!
        int m = 1;
        for (int k = 1; k <= 18; ++k) {
            while (m < 2 * k + 1) {
                ++m;
                fact *= m;
            }
            out[k - 1] = B[k - 1] / fact;
        }
        return out;
    }();
    return c;
}

// |z| <= 1 and Re z <= 1/2
inline cplx li2_core(cplx z) {
    cplx w = -std::log(1.0 - z);
    cplx w2 = w * w;
    cplx sum = w - 0.25 * w2;
    cplx p = w;
    for (double c : li2_bernoulli_coeffs()) {
        p *= w2;
        cplx t = c * p;
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

// principal branch; on the cut (1,inf) the value from below the axis
inline cplx dilog(cplx z) {
    const double z2 = pi * pi / 6.0;
    if (z == cplx(0.0)) return 0.0;
    if (z == cplx(1.0)) return z2;
    if (std::abs(z) > 1.0) {
        cplx u = 1.0 / z;
        cplx l = std::log(-z);
        return -z2 - 0.5 * l * l - dilog(u);
    }
    if (z.real() > 0.5) {
        return z2 - std::log(z) * std::log(1.0 - z) - detail::li2_core(1.0 - z);
    }
    return detail::li2_core(z);
}

inline double bloch_wigner(cplx z) {
    if (z.imag() == 0.0) return 0.0;
    double az = std::abs(z);
    if (az == 0.0) return 0.0;
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(az);
}

inline double periodic_bernoulli2(double x) {
    double f = x - std::floor(x);
    return f * f - f + 1.0 / 6.0;
}

// Lanczos (g=7, n=9), fine for complex arguments off the poles
inline cplx gamma_fn(cplx s) {
    static const double g = 7.0;
    static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (s.real() < 0.5) return pi / (std::sin(pi * s) * gamma_fn(1.0 - s));
    s -= 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (s + double(i));
    cplx t = s + g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, s + 0.5) * std::exp(-t) * x;
}

namespace detail {

// Legendre continued fraction, modified Lentz
template <class T>
T gamma_cf(T s, double x, const SeriesControl& ctl) {
    const double tiny = 1e-300;
    T b = x + 1.0 - s;
    T c = 1.0 / tiny;
    T d = 1.0 / b;
    T h = d;
    for (int i = 1; i <= ctl.max_terms; ++i) {
        T an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        T del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(-x + s * std::log(x)) * h;
    }
    throw truncation_error("incomplete gamma: continued fraction did not converge");
}

// lower incomplete gamma series x^s e^-x sum x^n / (s(s+1)...(s+n))
template <class T>
T gamma_lower_series(T s, double x, const SeriesControl& ctl) {
    T term = 1.0 / s;
    T sum = term;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        term *= x / (s + double(n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) return std::exp(-x + s * std::log(x)) * sum;
    }
    throw truncation_error("incomplete gamma: series did not converge");
}

}  // namespace detail

// Gamma(s, x) for x > 0; s real or complex
template <class T>
T incomplete_gamma_upper(T s, double x, const SeriesControl& ctl = {}) {
    if (!(x > 0.0)) throw std::domain_error("incomplete_gamma_upper: x must be > 0");
    if (x >= 1.5 || std::abs(s) > 1e3) return detail::gamma_cf(s, x, ctl);
    // small x: Gamma(s) - gamma(s,x), unless s sits near a pole of Gamma;
    // in that case shift s up by one and recurse downward through
    // Gamma(s,x) = (Gamma(s+1,x) - x^s e^-x)/s, which is stable for x < 1.5
    double dist = std::abs(s - std::round(std::real(s)));
    bool near_pole = std::real(s) < 0.5 && dist < 0.25;
    if (near_pole) {
        if (std::abs(s) < 1e-12) {
            // E1(x) = -gamma - log x - sum (-x)^k / (k k!)
            double sum = 0.0, term = 1.0;
            for (int k = 1; k <= ctl.max_terms; ++k) {
                term *= -x / k;
                double t = term / k;
                sum += t;
                if (std::abs(t) < 1e-18) break;
            }
            return T(-euler_gamma - std::log(x) - sum);
        }
        T up = incomplete_gamma_upper(T(s + 1.0), x, ctl);
        return (up - std::exp(-x + s * std::log(x))) / s;
    }
    T g;
    if constexpr (std::is_same_v<T, double>)
        g = std::tgamma(s);
    else
        g = gamma_fn(s);
    return g - detail::gamma_lower_series(s, x, ctl);
}

inline cplx dedekind_eta(cplx z, const SeriesControl& ctl = {}) {
    ctl.check();
    if (!(z.imag() > 0.0)) throw std::domain_error("dedekind_eta: Im z must be > 0");
    cplx q = std::exp(2.0 * pi * I * z);
    cplx prod = 1.0, qn = 1.0;
    for (int n = 1;; ++n) {
        if (n > ctl.max_terms) throw truncation_error("dedekind_eta: term cap reached");
        qn *= q;
        prod *= (1.0 - qn);
        if (std::abs(qn) < ctl.abs_tol * 1e-2) break;
    }
    return std::exp(pi * I * z / 12.0) * prod;
}

inline cplx siegel_theta(cplx w, cplx z, const SeriesControl& ctl = {}) {
    ctl.check();
    if (!(z.imag() > 0.0)) throw std::domain_error("siegel_theta: Im z must be > 0");
    cplx e1 = std::exp(pi * I * w);
    cplx pre = std::exp(pi * I * z / 6.0) * (e1 - 1.0 / e1);
    cplx q = std::exp(2.0 * pi * I * z);
    cplx a = std::exp(2.0 * pi * I * w), ai = 1.0 / a;
    cplx qn = 1.0, prod = 1.0;
    for (int n = 1;; ++n) {
        if (n > ctl.max_terms) throw truncation_error("siegel_theta: term cap reached");
        qn *= q;
        cplx t1 = a * qn, t2 = ai * qn;
        prod *= (1.0 - t1) * (1.0 - t2);
        if (std::abs(t1) + std::abs(t2) < ctl.abs_tol * 1e-2) break;
    }
    return pre * prod;
}

// Gauss-Legendre nodes/weights on [-1,1], Newton on P_n
struct GaussRule {
    std::vector<double> x, w;
};

inline std::shared_ptr<const GaussRule> gauss_legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n >= 1");
    static std::mutex mtx;
    static std::map<int, std::shared_ptr<const GaussRule>> cache;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto r = std::make_shared<GaussRule>();
    r->x.resize(n);
    r->w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r->x[i] = -x;
        r->x[n - 1 - i] = x;
        r->w[i] = r->w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r->x[n / 2] = 0.0;
    std::lock_guard<std::mutex> lk(mtx);
    cache.emplace(n, r);
    return r;
}

template <class F>
auto gauss_legendre(F&& f, double a, double b, int n) -> decltype(f(a)) {
    auto r = gauss_legendre_rule(n);
    double h = 0.5 * (b - a), c = 0.5 * (b + a);
    decltype(f(a)) s{};
    for (int i = 0; i < n; ++i) s += r->w[i] * f(c + h * r->x[i]);
    return s * h;
}

// composite rule: m equal panels of n nodes
template <class F>
auto gauss_legendre_panels(F&& f, double a, double b, int n, int m) -> decltype(f(a)) {
    decltype(f(a)) s{};
    double h = (b - a) / m;
    for (int k = 0; k < m; ++k) s += gauss_legendre(f, a + k * h, a + (k + 1) * h, n);
    return s;
}

}  // namespace ellreg
