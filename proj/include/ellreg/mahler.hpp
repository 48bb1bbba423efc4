#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <future>
#include <map>
#include <sstream>
#include <unsupported/Eigen/Polynomials>

#include "specialfns.hpp"

namespace ellreg {

// integer polynomial in X, Y stored sparsely: (i, j) -> coefficient of X^i Y^j
class BivariatePolynomial {
  public:
    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::map<std::pair<int, int>, long long> terms) : t_(std::move(terms)) { prune(); }

    static BivariatePolynomial constant(long long c) { return BivariatePolynomial({{{0, 0}, c}}); }
    static BivariatePolynomial X() { return BivariatePolynomial({{{1, 0}, 1}}); }
    static BivariatePolynomial Y() { return BivariatePolynomial({{{0, 1}, 1}}); }

    // "X^i Y^j: c" terms separated by ';' or newlines; a monomial is any mix of X, X^i, Y, Y^j, or 1
    static BivariatePolynomial parse(const std::string& text) {
        std::map<std::pair<int, int>, long long> t;
        std::string s = text;
        std::replace(s.begin(), s.end(), '\n', ';');
        std::stringstream ss(s);
        std::string term;
        while (std::getline(ss, term, ';')) {
            if (term.find_first_not_of(" \t") == std::string::npos) continue;
            auto colon = term.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("poly: term '" + term + "' lacks ':'");
            std::string mono = term.substr(0, colon), coef = term.substr(colon + 1);
            long long c;
            try {
                size_t used = 0;
                c = std::stoll(coef, &used);
                if (coef.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
            } catch (...) {
                throw std::invalid_argument("poly: bad coefficient in '" + term + "'");
            }
            int i = 0, j = 0;
            std::stringstream ms(mono);
            std::string tok;
            while (ms >> tok) {
                if (tok == "1") continue;
                char var = char(std::toupper(static_cast<unsigned char>(tok[0])));
                if (var != 'X' && var != 'Y') throw std::invalid_argument("poly: bad monomial '" + mono + "'");
                int e = 1;
                if (tok.size() > 1) {
                    if (tok[1] != '^' || tok.size() < 3) throw std::invalid_argument("poly: bad monomial '" + mono + "'");
                    try {
                        size_t used = 0;
                        e = std::stoi(tok.substr(2), &used);
                        if (used != tok.size() - 2 || e < 0) throw std::invalid_argument("");
                    } catch (...) {
                        throw std::invalid_argument("poly: bad exponent in '" + mono + "'");
                    }
                }
                (var == 'X' ? i : j) += e;
            }
            t[{i, j}] += c;
        }
        BivariatePolynomial p(t);
        if (p.is_zero()) throw std::invalid_argument("poly: polynomial is zero");
        return p;
    }

    std::string to_string() const {
        std::string out;
        for (auto& [k, c] : t_) {
            if (!out.empty()) out += "; ";
            out += "X^" + std::to_string(k.first) + " Y^" + std::to_string(k.second) + ": " + std::to_string(c);
        }
        return out;
    }

    bool is_zero() const { return t_.empty(); }
    const std::map<std::pair<int, int>, long long>& terms() const { return t_; }
    int deg_x() const {
        int d = 0;
        for (auto& [k, c] : t_) d = std::max(d, k.first);
        return d;
    }
    int deg_y() const {
        int d = 0;
        for (auto& [k, c] : t_) d = std::max(d, k.second);
        return d;
    }

    friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        auto t = a.t_;
        for (auto& [k, c] : b.t_) t[k] += c;
        return BivariatePolynomial(t);
    }
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        std::map<std::pair<int, int>, long long> t;
        for (auto& [ka, ca] : a.t_)
            for (auto& [kb, cb] : b.t_) t[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
        return BivariatePolynomial(t);
    }
    friend BivariatePolynomial operator*(long long s, const BivariatePolynomial& a) { return constant(s) * a; }

    // X -> 1/X, multiplied through by X^deg_x
    BivariatePolynomial reciprocal_x() const {
        std::map<std::pair<int, int>, long long> t;
        int d = deg_x();
        for (auto& [k, c] : t_) t[{d - k.first, k.second}] += c;
        return BivariatePolynomial(t);
    }

    // coefficients in Y at a given x, low degree first
    std::vector<cplx> y_coefficients(cplx x) const {
        std::vector<cplx> c(deg_y() + 1, 0.0);
        for (auto& [k, a] : t_) c[k.second] += double(a) * std::pow(x, k.first);
        return c;
    }

  private:
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = it->second == 0 ? t_.erase(it) : std::next(it);
    }
    std::map<std::pair<int, int>, long long> t_;
};

struct MahlerControl {
    double tol = 1e-11;   // per-panel adaptive quadrature tolerance
    int scan = 720;       // coarse scan for circle crossings
    int jobs = 0;         // 0: hardware concurrency
};

struct MahlerResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<double> breakpoints;  // u in [0,1] where a root meets |Y| = 1
    int panels = 0;
};

namespace detail {

// roots of sum c_k y^k; c must have nonzero top coefficient
inline std::vector<cplx> poly_roots(const std::vector<cplx>& c) {
    const int d = int(c.size()) - 1;
    std::vector<cplx> r;
    if (d <= 0) return r;
    if (d == 1) return {-c[0] / c[1]};
    Eigen::Matrix<cplx, Eigen::Dynamic, 1> coeffs(d + 1);
    for (int k = 0; k <= d; ++k) coeffs[k] = c[k];
    Eigen::PolynomialSolver<cplx, Eigen::Dynamic> solver(coeffs);
    for (int k = 0; k < solver.roots().size(); ++k) {
        cplx z = solver.roots()[k];
        // one Newton step
        cplx p = c[d], dp = 0.0;
        for (int j = d - 1; j >= 0; --j) {
            dp = dp * z + p;
            p = p * z + c[j];
        }
        if (std::abs(dp) > 0.0) {
            cplx zn = z - p / dp;
            if (std::isfinite(zn.real()) && std::isfinite(zn.imag())) z = zn;
        }
        r.push_back(z);
    }
    return r;
}

// drop vanishing leading coefficients relative to the size of the others
inline std::vector<cplx> trim(std::vector<cplx> c) {
    double scale = 0.0;
    for (auto& x : c) scale = std::max(scale, std::abs(x));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    return c;
}

}  // namespace detail

// Jensen: m(sum c_k Y^k) = log|c_top| + sum log max(1, |root|)
inline double mahler_one_variable(const std::vector<cplx>& coeffs) {
    auto c = detail::trim(coeffs);
    if (std::abs(c.back()) == 0.0) throw std::domain_error("mahler: polynomial vanishes identically on a fibre");
    double m = std::log(std::abs(c.back()));
    for (cplx r : detail::poly_roots(c)) m += std::max(0.0, std::log(std::abs(r)));
    return m;
}

// number of Y-roots outside the unit circle at u (the leading coefficient counts as a root at infinity when it drops)
inline int roots_outside(const BivariatePolynomial& P, double u) {
    auto c = P.y_coefficients(std::exp(2.0 * pi * I * u));
    int full = int(c.size()) - 1;
    c = detail::trim(c);
    int n = full - (int(c.size()) - 1);
    for (cplx r : detail::poly_roots(c))
        if (std::abs(r) > 1.0) ++n;
    return n;
}

inline double mahler_fibre(const BivariatePolynomial& P, double u) {
    return mahler_one_variable(P.y_coefficients(std::exp(2.0 * pi * I * u)));
}

// u in [0,1] where a root crosses |Y| = 1, by scan and bisection on the outside count
inline std::vector<double> mahler_breakpoints(const BivariatePolynomial& P, int scan) {
    std::vector<double> br;
    // offset the grid so a symmetric polynomial does not put a crossing on a node
    const double off = 0.3183098861837907 / scan;
    std::vector<double> us(scan + 1);
    std::vector<int> cnt(scan + 1);
    for (int k = 0; k <= scan; ++k) {
        us[k] = off + double(k) / scan;
        cnt[k] = roots_outside(P, us[k]);
    }
    for (int k = 0; k < scan; ++k) {
        if (cnt[k] == cnt[k + 1]) continue;
        double a = us[k], b = us[k + 1];
        int ca = cnt[k];
        for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
            double mid = 0.5 * (a + b);
            if (roots_outside(P, mid) == ca)
                a = mid;
            else
                b = mid;
        }
        double x = 0.5 * (a + b);
        x -= std::floor(x);
        br.push_back(x);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }), br.end());
    return br;
}

inline MahlerResult mahler_measure(const BivariatePolynomial& P, const MahlerControl& ctl = {}) {
    if (P.is_zero()) throw std::invalid_argument("mahler_measure: zero polynomial");
    MahlerResult res;
    if (P.deg_y() == 0) {
        // one variable in X
        std::vector<cplx> c(P.deg_x() + 1, 0.0);
        for (auto& [k, a] : P.terms()) c[k.first] += double(a);
        res.value = mahler_one_variable(c);
        return res;
    }
    res.breakpoints = mahler_breakpoints(P, ctl.scan);
    std::vector<double> cuts{0.0};
    for (double b : res.breakpoints)
        if (b > 1e-14 && b < 1.0 - 1e-14) cuts.push_back(b);
    cuts.push_back(1.0);
    // refine so no panel is longer than 1/16
    std::vector<double> fine{cuts.front()};
    for (size_t k = 1; k < cuts.size(); ++k) {
        int pieces = std::max(1, int(std::ceil((cuts[k] - cuts[k - 1]) * 16.0)));
        for (int j = 1; j <= pieces; ++j) fine.push_back(cuts[k - 1] + (cuts[k] - cuts[k - 1]) * j / pieces);
    }
    res.panels = int(fine.size()) - 1;
    auto panel = [&](int k) {
        double err = 0.0;
        double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double u) { return mahler_fibre(P, u); }, fine[k], fine[k + 1], 15, ctl.tol, &err);
        return std::pair<double, double>{v, err};
    };
    int jobs = ctl.jobs > 0 ? ctl.jobs : int(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::pair<double, double>> out(res.panels);
    if (jobs == 1) {
        for (int k = 0; k < res.panels; ++k) out[k] = panel(k);
    } else {
        std::vector<std::future<void>> fs;
        std::atomic<int> next{0};
        for (int t = 0; t < std::min(jobs, res.panels); ++t)
            fs.push_back(std::async(std::launch::async, [&] {
                for (int k; (k = next++) < res.panels;) out[k] = panel(k);
            }));
        for (auto& f : fs) f.get();
    }
    // fixed order reduction
    for (auto& [v, e] : out) {
        res.value += v;
        res.error_estimate += e;
    }
    return res;
}

// the two polynomials with known measures
inline BivariatePolynomial boyd_11a_first() {
    auto X = BivariatePolynomial::X(), Y = BivariatePolynomial::Y(), one = BivariatePolynomial::constant(1);
    return (X + Y + one) * (X + one) * (Y + one) + X * Y;
}
inline BivariatePolynomial boyd_11a_second() {
    auto X = BivariatePolynomial::X(), Y = BivariatePolynomial::Y();
    return Y * Y + (X * X + 2 * X + BivariatePolynomial::constant(-1)) * Y + X * X * X;
}

}  // namespace ellreg
