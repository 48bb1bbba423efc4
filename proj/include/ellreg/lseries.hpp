#pragma once

#include <future>
#include <memory>
#include <optional>

#include "elliptic.hpp"

namespace ellreg {

struct ModularFormData {
    long long level = 1;
    std::shared_ptr<const std::vector<cplx>> a;     // a[n], n >= 1
    std::shared_ptr<const std::vector<cplx>> abar;  // coefficients of the conjugate form
    std::optional<cplx> w;                          // root number, filled by root_number()
    std::string tag;

    int nmax() const { return int(a->size()) - 1; }
    cplx coeff(long long n) const {
        if (n < 1 || n > nmax()) throw truncation_error("ModularFormData: coefficient index out of range");
        return (*a)[n];
    }
    ModularFormData conjugate() const {
        ModularFormData g = *this;
        std::swap(g.a, g.abar);
        if (w) g.w = std::conj(*w);
        g.tag = "conj(" + tag + ")";
        return g;
    }
};

inline ModularFormData form_from_curve(const CurveModel& E, int nmax = 3000) {
    auto an = an_coefficients(E, nmax);
    auto v = std::make_shared<std::vector<cplx>>(nmax + 1);
    for (int n = 0; n <= nmax; ++n) (*v)[n] = double(an[n]);
    ModularFormData f;
    f.level = E.conductor;
    f.a = v;
    f.abar = v;
    f.tag = "E" + std::to_string(E.conductor);
    return f;
}

// number of q-expansion terms for |sum_{n>K} a_n q^n| < tol, with |a_n| <= n
inline int terms_needed(double y, double tol, int cap) {
    double r = std::exp(-2.0 * pi * y);
    if (!(r < 1.0)) throw std::domain_error("terms_needed: Im z must be > 0");
    for (int K = 1; K <= cap; ++K) {
        double t = std::pow(r, K) * (K + 1.0) * (K + 1.0) / ((1.0 - r) * (1.0 - r));
        if (t < tol) return K;
    }
    throw truncation_error("q-expansion: Im z below usable threshold for the stored coefficients");
}

inline cplx eval_form(const ModularFormData& f, cplx z, const SeriesControl& ctl = {}) {
    ctl.check();
    if (!(z.imag() > 0.0)) throw std::domain_error("eval_form: Im z must be > 0");
    int K = terms_needed(z.imag(), ctl.abs_tol * 1e-2, f.nmax());
    cplx q = std::exp(2.0 * pi * I * z), qn = 1.0, s = 0.0;
    for (int n = 1; n <= K; ++n) {
        qn *= q;
        s += (*f.a)[n] * qn;
    }
    return s;
}

inline cplx eval_conj_form(const ModularFormData& f, cplx z, const SeriesControl& ctl = {}) {
    return eval_form(f.conjugate(), z, ctl);
}

// w from F(i/(My)) = -w M y^2 Fbar(iy), two sample heights must agree
inline cplx root_number(const ModularFormData& f, const SeriesControl& ctl = {}) {
    const double M = double(f.level), y0 = 1.0 / std::sqrt(M);
    std::vector<cplx> ws;
    for (double c : {1.07, 0.91, 1.23, 0.83, 1.41}) {
        double y = c * y0;
        cplx den = double(M) * y * y * eval_conj_form(f, cplx(0.0, y), ctl);
        if (std::abs(den) < 1e-6) continue;
        ws.push_back(-eval_form(f, cplx(0.0, 1.0 / (M * y)), ctl) / den);
        if (ws.size() == 2) break;
    }
    if (ws.size() < 2) throw std::runtime_error("root_number: conjugate form vanishes at sample heights");
    if (std::abs(ws[0] - ws[1]) > 1e-8) throw std::runtime_error("root_number: sample heights disagree");
    if (std::abs(std::abs(ws[0]) - 1.0) > 1e-8) throw std::runtime_error("root_number: |w| != 1");
    return ws[0];
}

inline ModularFormData& ensure_root_number(ModularFormData& f, const SeriesControl& ctl = {}) {
    if (!f.w) f.w = root_number(f, ctl);
    return f;
}

struct LambdaResult {
    cplx value = 0.0;
    int terms = 0;  // coefficients used on each side
};

// M^{s/2} (2 pi)^{-s} Gamma(s) L(f,s) by the split integral; split height t/sqrt(M)
inline LambdaResult lambda_value_ex(const ModularFormData& f, cplx s, double t = 1.0, const SeriesControl& ctl = {}) {
    ctl.check();
    if (!f.w) throw std::invalid_argument("lambda_value: root number not computed");
    const double M = double(f.level);
    const double y0 = t / std::sqrt(M), u0 = 1.0 / (M * y0);
    const cplx w = *f.w;
    // Gamma(s,x) <= x^{Re s-1} e^{-x}(1+...) for large x; stop once both sides fall below tol
    LambdaResult r;
    cplx s1 = 0.0, s2 = 0.0;
    const double tol = ctl.abs_tol * 1e-2;
    for (int n = 1;; ++n) {
        if (n > f.nmax()) throw truncation_error("lambda_value: coefficient cap reached");
        double x1 = 2.0 * pi * n * y0, x2 = 2.0 * pi * n * u0;
        double bound = double(n) * (std::exp(-x1) * std::pow(x1, std::abs(s.real()) + 1.0) +
                                    std::exp(-x2) * std::pow(x2, std::abs(2.0 - s.real()) + 1.0));
        if (bound < tol && n > 3) {
            r.terms = n - 1;
            break;
        }
        cplx l = std::log(2.0 * pi * n);
        s1 += (*f.a)[n] * std::exp(-s * l) * incomplete_gamma_upper(s, x1, ctl);
        s2 += (*f.abar)[n] * std::exp((s - 2.0) * l) * incomplete_gamma_upper(2.0 - s, x2, ctl);
    }
    cplx lm = std::log(M);
    r.value = std::exp(0.5 * s * lm) * s1 - w * std::exp(0.5 * (2.0 - s) * lm) * s2;
    return r;
}

inline cplx lambda_value(const ModularFormData& f, cplx s, const SeriesControl& ctl = {}) {
    return lambda_value_ex(f, s, 1.0, ctl).value;
}

// L(f,s) from Lambda
inline cplx l_value(const ModularFormData& f, cplx s, const SeriesControl& ctl = {}) {
    const double M = double(f.level);
    return lambda_value(f, s, ctl) * std::exp(s * std::log(2.0 * pi) - 0.5 * s * std::log(M)) / gamma_fn(s);
}

// f tensor chi for f of prime level p with trivial character, chi primitive mod p
inline ModularFormData twist(const ModularFormData& f, const DirichletCharacter& chi, const SeriesControl& ctl = {}) {
    if (chi.is_trivial()) return f;
    if (chi.modulus() != f.level) throw std::invalid_argument("twist: character modulus must equal the level");
    if (!chi.is_primitive()) throw std::invalid_argument("twist: character must be primitive");
    int n = f.nmax();
    auto a = std::make_shared<std::vector<cplx>>(n + 1, 0.0);
    auto b = std::make_shared<std::vector<cplx>>(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        (*a)[k] = (*f.a)[k] * chi(k);
        (*b)[k] = (*f.abar)[k] * std::conj(chi(k));
    }
    ModularFormData g;
    g.level = f.level * f.level;
    g.a = a;
    g.abar = b;
    g.tag = f.tag + "x" + chi.label();
    g.w = root_number(g, ctl);
    return g;
}

struct RankinCheck {
    double max_abs_err = 0.0;
    bool exact_zero = true;
    int nmax = 0;
};

// a_n sum_{d|n} d chi1(d) chi2(n/d) against the coefficients of
// L(f,chi2,s) L(f,chi1,s-1) / L(psi chi1 chi2, 2s-2), psi trivial mod the level
inline RankinCheck rankin_convolution_check(const CurveModel& E, const DirichletCharacter& chi1,
                                            const DirichletCharacter& chi2, int nmax) {
    if (chi1.modulus() != chi2.modulus()) throw std::invalid_argument("rankin: modulus mismatch");
    const int Nm = chi1.modulus();
    const int L = std::lcm(chi1.exponent_base(), chi2.exponent_base());
    auto an = an_coefficients(E, nmax);
    auto psi = trivial_character(Nm);
    // exact: element of Z[x]/(x^L - 1) per index, or empty when the character vanishes
    using poly = cyclo::poly;
    auto chi_exp = [&](const DirichletCharacter& c, long long n) -> int {
        int e = c.exp_at(n);
        return e < 0 ? -1 : e * (L / c.exponent_base());
    };
    auto mono = [&](long long coef, int e) {
        poly p(L, 0);
        if (e >= 0) p[e % L] += coef;
        return p;
    };
    auto addto = [&](poly& acc, const poly& x) {
        for (int i = 0; i < L; ++i) acc[i] += x[i];
    };
    auto mul = [&](const poly& x, const poly& y) {
        poly r(L, 0);
        for (int i = 0; i < L; ++i)
            if (x[i])
                for (int j = 0; j < L; ++j)
                    if (y[j]) r[(i + j) % L] += x[i] * y[j];
        return r;
    };
    std::vector<poly> A(nmax + 1, poly(L, 0)), B(nmax + 1, poly(L, 0)), C(nmax + 1, poly(L, 0));
    // floating mirror in long double: terms reach 1e6 at n = 2000
    using lcplx = std::complex<long double>;
    const long double two_pi = 6.283185307179586476925286766559L;
    auto chil = [&](const DirichletCharacter& c, long long n) -> lcplx {
        int e = chi_exp(c, n);
        if (e < 0) return 0.0L;
        return std::polar(1.0L, two_pi * (long double)e / (long double)L);
    };
    std::vector<lcplx> Af(nmax + 1), Bf(nmax + 1), Cf(nmax + 1, 0.0L);
    for (int n = 1; n <= nmax; ++n) {
        A[n] = mono(an[n], chi_exp(chi2, n));
        B[n] = mono(an[n] * n, chi_exp(chi1, n));
        Af[n] = (long double)an[n] * chil(chi2, n);
        Bf[n] = (long double)an[n] * (long double)n * chil(chi1, n);
    }
    for (long long m = 1; m * m <= nmax; ++m) {
        int mu = moebius(m);
        if (mu == 0 || psi.exp_at(m) < 0) continue;
        int e1 = chi_exp(chi1, m), e2 = chi_exp(chi2, m);
        if (e1 < 0 || e2 < 0) continue;
        C[m * m] = mono(mu * m * m, e1 + e2);
        Cf[m * m] = (long double)(mu * m * m) * chil(chi1, m) * chil(chi2, m);
    }
    auto conv = [&](const std::vector<poly>& X, const std::vector<poly>& Y) {
        std::vector<poly> Z(nmax + 1, poly(L, 0));
        for (int i = 1; i <= nmax; ++i)
            for (int j = 1; i * j <= nmax; ++j) addto(Z[i * j], mul(X[i], Y[j]));
        return Z;
    };
    auto convf = [&](const std::vector<lcplx>& X, const std::vector<lcplx>& Y) {
        std::vector<lcplx> Z(nmax + 1, 0.0L);
        for (int i = 1; i <= nmax; ++i)
            for (int j = 1; i * j <= nmax; ++j) Z[i * j] += X[i] * Y[j];
        return Z;
    };
    auto R = conv(conv(A, B), C);
    auto Rf = convf(convf(Af, Bf), Cf);
    RankinCheck out;
    out.nmax = nmax;
    for (int n = 1; n <= nmax; ++n) {
        poly lhs(L, 0);
        lcplx lf = 0.0L;
        for (long long d : divisors(n)) {
            int e1 = chi_exp(chi1, d), e2 = chi_exp(chi2, n / d);
            if (e1 < 0 || e2 < 0) continue;
            addto(lhs, mono(an[n] * d, e1 + e2));
            lf += (long double)(an[n] * d) * chil(chi1, d) * chil(chi2, n / d);
        }
        poly diff = R[n];
        for (int i = 0; i < L; ++i) diff[i] -= lhs[i];
        if (!cyclo::is_zero(diff, L)) out.exact_zero = false;
        out.max_abs_err = std::max(out.max_abs_err, double(std::abs(Rf[n] - lf)));
    }
    return out;
}

// all twists f x chi, chi nontrivial mod p, with Lambda(f x chi, 1); index by character position
struct TwistTable {
    std::vector<DirichletCharacter> chars;  // nontrivial characters mod p
    std::vector<ModularFormData> forms;
    std::vector<cplx> lambda1;  // Lambda(f x chi, 1)
    int index_of(const DirichletCharacter& c) const {
        for (size_t i = 0; i < chars.size(); ++i)
            if (chars[i] == c) return int(i);
        return -1;
    }
};

inline TwistTable build_twists(const ModularFormData& f, int jobs = 1, const SeriesControl& ctl = {}) {
    TwistTable T;
    for (auto& c : enumerate_characters(int(f.level)))
        if (!c.is_trivial()) T.chars.push_back(c);
    T.forms.resize(T.chars.size());
    T.lambda1.resize(T.chars.size());
    auto work = [&](size_t i) {
        T.forms[i] = twist(f, T.chars[i], ctl);
        T.lambda1[i] = lambda_value(T.forms[i], 1.0, ctl);
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < T.chars.size(); ++i) work(i);
    } else {
        std::vector<std::future<void>> fs;
        for (size_t i = 0; i < T.chars.size(); ++i) fs.push_back(std::async(std::launch::async, work, i));
        for (auto& x : fs) x.get();
    }
    return T;
}

// (2 pi i/((N+1)(N-1)^2)) sum_{chi chi' odd} Lambda(f x chi',1) Lambda(f x chi,1)/tau(chi chi')
inline cplx rankin_residue(const TwistTable& T, int N) {
    cplx s = 0.0;
    for (size_t i = 0; i < T.chars.size(); ++i)
        for (size_t j = 0; j < T.chars.size(); ++j) {
            auto prod = T.chars[i] * T.chars[j];
            if (prod.is_even()) continue;
            s += T.lambda1[j] * T.lambda1[i] / gauss_sum(prod);
        }
    return 2.0 * pi * I / (double(N + 1) * double(N - 1) * double(N - 1)) * s;
}

}  // namespace ellreg
