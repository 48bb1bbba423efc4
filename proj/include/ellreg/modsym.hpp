#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>

#include "eisenstein.hpp"
#include "lseries.hpp"

namespace ellreg {

using Rational = boost::multiprecision::cpp_rational;

// the pairs of exact order N in (Z/N)^2
class SymbolSpace {
  public:
    explicit SymbolSpace(int N) : N_(N), index_(N * N, -1) {
        if (N < 1) throw std::invalid_argument("SymbolSpace: N >= 1");
        for (int u = 0; u < N; ++u)
            for (int v = 0; v < N; ++v)
                if (std::gcd(std::gcd(u, v), N) == 1) {
                    index_[u * N + v] = int(pairs_.size());
                    pairs_.push_back({u, v});
                }
    }
    int N() const { return N_; }
    int size() const { return int(pairs_.size()); }
    const Pair& pair(int i) const { return pairs_[i]; }
    const std::vector<Pair>& pairs() const { return pairs_; }
    // -1 when (u,v) is not of order N
    int index(long long u, long long v) const { return index_[mod(u, N_) * N_ + mod(v, N_)]; }
    bool contains(long long u, long long v) const { return index(u, v) >= 0; }

  private:
    int N_;
    std::vector<int> index_;
    std::vector<Pair> pairs_;
};

struct CuspClass {
    Pair rep;
    int d = 1;      // gcd(u, N)
    int width = 1;  // orbit size modulo +-1
    std::vector<Pair> members;
    bool is_infinity = false;
};

// orbits of E_N under (u,v) -> +-(u, v + k u)
inline std::vector<CuspClass> cusp_classes(int N) {
    SymbolSpace S(N);
    std::vector<int> cls(S.size(), -1);
    std::vector<CuspClass> out;
    for (int i = 0; i < S.size(); ++i) {
        if (cls[i] >= 0) continue;
        CuspClass c;
        std::vector<int> stack{i};
        cls[i] = int(out.size());
        while (!stack.empty()) {
            int k = stack.back();
            stack.pop_back();
            auto [u, v] = S.pair(k);
            c.members.push_back({u, v});
            for (Pair nx : {Pair{u, v + u}, Pair{-u, -v}}) {
                int j = S.index(nx.first, nx.second);
                if (cls[j] < 0) {
                    cls[j] = cls[i];
                    stack.push_back(j);
                }
            }
        }
        std::sort(c.members.begin(), c.members.end());
        c.rep = c.members.front();
        c.d = int(std::gcd((long long)c.rep.first, (long long)N));
        bool pm = S.index(-c.rep.first, -c.rep.second) == S.index(c.rep.first, c.rep.second);
        c.width = int(c.members.size()) / (pm ? 1 : 2);
        c.is_infinity = std::find(c.members.begin(), c.members.end(), Pair{0, 1 % N}) != c.members.end();
        out.push_back(std::move(c));
    }
    return out;
}

inline int cusp_class_of(const std::vector<CuspClass>& cs, Pair x, int N) {
    x = {mod(x.first, N), mod(x.second, N)};
    for (size_t i = 0; i < cs.size(); ++i)
        if (std::binary_search(cs[i].members.begin(), cs[i].members.end(), x)) return int(i);
    throw std::invalid_argument("cusp_class_of: pair not of order N");
}

namespace detail {

using RMat = std::vector<std::vector<Rational>>;

// in-place reduced row echelon form; returns pivot columns
inline std::vector<int> rref(RMat& A, int ncols) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < ncols && r < (int)A.size(); ++c) {
        int p = -1;
        for (int i = r; i < (int)A.size(); ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[r], A[p]);
        Rational inv = 1 / A[r][c];
        for (auto& x : A[r]) x *= inv;
        for (int i = 0; i < (int)A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (int k = c; k < ncols; ++k)
                if (A[r][k] != 0) A[i][k] -= f * A[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    A.resize(r);
    return piv;
}

inline int rank(RMat A, int ncols) { return int(rref(A, ncols).size()); }

// basis of the null space of A (rows x ncols)
inline RMat kernel(RMat A, int ncols) {
    auto piv = rref(A, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    RMat K;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(ncols, 0);
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A[r][f];
        K.push_back(v);
    }
    return K;
}

// Faddeev-LeVerrier; coefficients c[0..n] of det(X - M), c[n] = 1
inline std::vector<Rational> charpoly(const RMat& M) {
    int n = int(M.size());
    std::vector<Rational> c(n + 1, 0);
    c[n] = 1;
    RMat Mk(n, std::vector<Rational>(n, 0)), AM(n, std::vector<Rational>(n, 0));
    for (int k = 1; k <= n; ++k) {
        // Mk = M * (M_{k-1} + c_{n-k+1} I), M_0 = 0
        RMat T = Mk;
        for (int i = 0; i < n; ++i) T[i][i] += c[n - k + 1];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational s = 0;
                for (int l = 0; l < n; ++l)
                    if (M[i][l] != 0 && T[l][j] != 0) s += M[i][l] * T[l][j];
                AM[i][j] = s;
            }
        Mk = AM;
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += Mk[i][i];
        c[n - k] = -tr / k;
    }
    return c;
}

}  // namespace detail

// Q^{E_N} modulo x + x sigma, x + x tau + x tau^2, x - (-x)
class ManinQuotient {
  public:
    explicit ManinQuotient(int N) : S_(N), cusps_(cusp_classes(N)) {
        const int n = S_.size();
        detail::RMat R;
        auto row = [&]() { return std::vector<Rational>(n, 0); };
        for (int i = 0; i < n; ++i) {
            Pair x = S_.pair(i);
            auto r1 = row();
            r1[i] += 1;
            r1[S_.index(x.second, -x.first)] += 1;  // x sigma = (v, -u)
            R.push_back(r1);
            auto r2 = row();
            Pair t1 = act(x, UnimodularMatrix::tau(), N), t2 = act(t1, UnimodularMatrix::tau(), N);
            r2[i] += 1;
            r2[S_.index(t1.first, t1.second)] += 1;
            r2[S_.index(t2.first, t2.second)] += 1;
            R.push_back(r2);
            auto r3 = row();
            r3[i] += 1;
            r3[S_.index(-x.first, -x.second)] -= 1;
            R.push_back(r3);
        }
        relations_ = R;
        auto piv = detail::rref(R, n);
        rel_rank_ = int(piv.size());
        std::vector<bool> is_piv(n, false);
        for (int c : piv) is_piv[c] = true;
        free_.clear();
        std::vector<int> free_pos(n, -1);
        for (int c = 0; c < n; ++c)
            if (!is_piv[c]) {
                free_pos[c] = int(free_.size());
                free_.push_back(c);
            }
        // projection of each basis symbol onto the free coordinates
        proj_.assign(n, std::vector<Rational>(free_.size(), 0));
        for (int c = 0; c < n; ++c)
            if (!is_piv[c]) proj_[c][free_pos[c]] = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            for (size_t f = 0; f < free_.size(); ++f) proj_[piv[r]][f] = -R[r][free_[f]];
        // boundary on the quotient and its kernel
        int nc = int(cusps_.size());
        detail::RMat Bt(nc, std::vector<Rational>(free_.size(), 0));  // cusps x free
        for (size_t f = 0; f < free_.size(); ++f) {
            auto b = boundary_of(S_.pair(free_[f]));
            for (int k = 0; k < nc; ++k) Bt[k][f] = b[k];
        }
        cuspidal_ = detail::kernel(Bt, int(free_.size()));
    }

    int N() const { return S_.N(); }
    const SymbolSpace& symbols() const { return S_; }
    const std::vector<CuspClass>& cusps() const { return cusps_; }
    int total_symbols() const { return S_.size(); }
    int quotient_dim() const { return int(free_.size()); }
    int cuspidal_dim() const { return int(cuspidal_.size()); }
    const detail::RMat& relations() const { return relations_; }
    const detail::RMat& cuspidal_basis() const { return cuspidal_; }

    // [x] - [x sigma] as a vector over cusp classes
    std::vector<Rational> boundary_of(Pair x) const {
        std::vector<Rational> b(cusps_.size(), 0);
        b[cusp_class_of(cusps_, x, N())] += 1;
        b[cusp_class_of(cusps_, {x.second, -x.first}, N())] -= 1;
        return b;
    }

    // image in quotient coordinates of a formal sum of symbols
    std::vector<Rational> project(const std::map<int, Rational>& v) const {
        std::vector<Rational> out(free_.size(), 0);
        for (auto& [i, c] : v)
            for (size_t f = 0; f < free_.size(); ++f)
                if (proj_[i][f] != 0) out[f] += c * proj_[i][f];
        return out;
    }

    // T_2[x] = [2u,v] + [u,2v] + [2u,u+v] + [u+v,2v], terms outside E_N dropped
    std::map<int, Rational> hecke_t2(Pair x) const {
        std::map<int, Rational> r;
        auto [u, v] = x;
        for (Pair y : {Pair{2 * u, v}, Pair{u, 2 * v}, Pair{2 * u, u + v}, Pair{u + v, 2 * v}}) {
            int j = S_.index(y.first, y.second);
            if (j >= 0) r[j] += 1;
        }
        return r;
    }

    std::map<int, Rational> diamond(long long d, Pair x) const {
        if (std::gcd(mod(d, N()), (long long)N()) != 1) throw std::invalid_argument("diamond: d must be a unit mod N");
        return {{S_.index(d * x.first, d * x.second), Rational(1)}};
    }

    // matrix of an operator (given on symbols) on the quotient, columns = images of free basis vectors
    template <class Op>
    detail::RMat quotient_matrix(Op op) const {
        size_t m = free_.size();
        detail::RMat M(m, std::vector<Rational>(m, 0));
        for (size_t f = 0; f < m; ++f) {
            auto img = project(op(S_.pair(free_[f])));
            for (size_t k = 0; k < m; ++k) M[k][f] = img[k];
        }
        return M;
    }

    // restriction to the cuspidal subspace; throws if not stable
    detail::RMat restrict_to_cuspidal(const detail::RMat& M) const {
        size_t m = free_.size(), k = cuspidal_.size();
        // solve K^T c = M k_j for each basis vector k_j
        detail::RMat out(k, std::vector<Rational>(k, 0));
        for (size_t j = 0; j < k; ++j) {
            std::vector<Rational> img(m, 0);
            for (size_t r = 0; r < m; ++r)
                for (size_t c = 0; c < m; ++c)
                    if (M[r][c] != 0 && cuspidal_[j][c] != 0) img[r] += M[r][c] * cuspidal_[j][c];
            // augmented system [K^T | img]
            detail::RMat A(m, std::vector<Rational>(k + 1, 0));
            for (size_t r = 0; r < m; ++r) {
                for (size_t c = 0; c < k; ++c) A[r][c] = cuspidal_[c][r];
                A[r][k] = img[r];
            }
            auto piv = detail::rref(A, int(k + 1));
            if (!piv.empty() && piv.back() == int(k)) throw std::runtime_error("operator does not preserve the cuspidal subspace");
            for (size_t r = 0; r < piv.size(); ++r) out[piv[r]][j] = A[r][k];
        }
        return out;
    }

    detail::RMat t2_cuspidal() const {
        return restrict_to_cuspidal(quotient_matrix([this](Pair x) { return hecke_t2(x); }));
    }
    detail::RMat diamond_cuspidal(long long d) const {
        return restrict_to_cuspidal(quotient_matrix([this, d](Pair x) { return diamond(d, x); }));
    }

  private:
    SymbolSpace S_;
    std::vector<CuspClass> cusps_;
    detail::RMat relations_;
    int rel_rank_ = 0;
    std::vector<int> free_;
    detail::RMat proj_;
    detail::RMat cuspidal_;
};

// independent genus formula for X_1(N), N >= 5
inline int genus_x1(int N) {
    if (N < 5) return 0;
    double mu = 0.5 * N * N;
    for (auto [p, k] : factorize(N)) mu *= 1.0 - 1.0 / double(p * p);
    long long cusps = 0;
    for (long long d : divisors(N)) cusps += euler_phi(d) * euler_phi(N / d);
    return int(std::llround(1.0 + mu / 12.0 - double(cusps) / 4.0));
}

// xi_f on E_p for f of prime level p, values from twisted L-values
// period integral: xi(u,v) = -i int_{g0}^{g inf} f dz with (c,d) = (u,v).
// appendix: the twisted expansion taken literally; differs from the integral on units by x -> -x and a sign
enum class XiConvention { period_integral, appendix };

class XiTable {
  public:
    XiTable() = default;
    XiTable(const ModularFormData& f, const TwistTable& T, XiConvention conv = XiConvention::period_integral)
        : p_(int(f.level)), vals_(p_ * p_, 0.0) {
        if (!is_prime(p_)) throw std::invalid_argument("XiTable: level must be prime");
        if (!f.w) throw std::invalid_argument("XiTable: root number not computed");
        w_ = *f.w;
        const double p = p_;
        cplx L1 = lambda_value(f, 1.0) * 2.0 * pi / std::sqrt(p);  // L(f,1)
        cplx inf = w_ / (2.0 * pi) * L1;                              // xi(1,0)
        for (int u = 0; u < p_; ++u)
            for (int v = 0; v < p_; ++v) {
                if (u == 0 && v == 0) continue;
                cplx val;
                if (v == 0)
                    val = inf;
                else if (u == 0)
                    val = -inf;
                else {
                    const bool lit = conv == XiConvention::appendix;
                    long long x = mod((lit ? u : -u) * inv_mod(v, p_), p_);
                    cplx s = 0.0;
                    for (size_t i = 0; i < T.chars.size(); ++i)
                        s += gauss_sum(T.chars[i].conj()) / p * T.chars[i](x) * T.lambda1[i];
                    val = (lit ? 1.0 : -1.0) * w_ / (p - 1.0) * s;
                }
                vals_[u * p_ + v] = val;
            }
    }
    int p() const { return p_; }
    cplx operator()(long long u, long long v) const { return vals_[mod(u, p_) * p_ + mod(v, p_)]; }
    cplx plus(long long u, long long v) const { return 0.5 * ((*this)(u, v) + (*this)(-u, v)); }
    cplx minus(long long u, long long v) const { return 0.5 * ((*this)(u, v) - (*this)(-u, v)); }

  private:
    int p_ = 1;
    cplx w_ = 1.0;
    std::vector<cplx> vals_;
};

// f anywhere in H for f of prime level p, trivial character, via SL2 reduction and the Atkin-Lehner flip
inline cplx eval_form_anywhere(const ModularFormData& f, cplx z, const SeriesControl& ctl = {}) {
    if (!(z.imag() > 0.0)) throw std::domain_error("eval_form_anywhere: Im z must be > 0");
    const long long p = f.level;
    if (!f.w) throw std::invalid_argument("eval_form_anywhere: root number not computed");
    // M z = zr in the fundamental domain
    UnimodularMatrix M;
    cplx zr = z;
    int steps = 0;
    while (true) {
        double k = std::round(zr.real());
        if (k != 0.0) {
            zr -= k;
            M = UnimodularMatrix(1, -(long long)k, 0, 1) * M;
        }
        if (std::norm(zr) < 1.0 - 1e-15) {
            zr = -1.0 / zr;
            M = UnimodularMatrix::sigma() * M;
        } else
            break;
        if (++steps > 200) throw std::runtime_error("eval_form_anywhere: reduction did not terminate");
    }
    UnimodularMatrix A = M.inverse();  // z = A zr
    cplx j2 = (double(A.c) * zr + double(A.d));
    j2 *= j2;
    if (A.c % p == 0) return j2 * eval_form(f, zr, ctl);
    long long j = mod(mod(A.d, p) * inv_mod(mod(A.c, p), p), p);
    return j2 * (*f.w / double(p)) * eval_form(f, (zr + double(j)) / double(p), ctl);
}

struct OracleResult {
    cplx value = 0.0;
    double est_error = 0.0;
};

// int_r^{i inf} f(z) dz
inline OracleResult cusp_integral(const ModularFormData& f, double r, const SeriesControl& ctl = {}) {
    // t >= 1: closed form
    cplx upper = 0.0;
    for (int n = 1; n <= f.nmax(); ++n) {
        double e = std::exp(-2.0 * pi * n);
        if (e * n < 1e-20) break;
        upper += f.coeff(n) * std::exp(2.0 * pi * I * double(n) * r) * e / (2.0 * pi * n);
    }
    // 0 < t < 1: t = e^-s
    auto g = [&](double s) {
        double t = std::exp(-s);
        return eval_form_anywhere(f, cplx(r, t), ctl) * t;
    };
    double err_re = 0, err_im = 0;
    auto re = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double s) { return g(s).real(); }, 0.0, 40.0, 20, 1e-12, &err_re);
    auto im = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double s) { return g(s).imag(); }, 0.0, 40.0, 20, 1e-12, &err_im);
    OracleResult o;
    o.value = I * (upper + cplx(re, im));
    o.est_error = err_re + err_im;
    return o;
}

// -i int_{g_x 0}^{g_x inf} f(z) dz
inline OracleResult period_integral_oracle(const ModularFormData& f, Pair x, const SeriesControl& ctl = {}) {
    auto g = lift_bottom_row(x.first, x.second, f.level);
    auto I_at = [&](long long num, long long den) -> OracleResult {
        if (den == 0) return {};
        return cusp_integral(f, double(num) / double(den), ctl);
    };
    auto a0 = I_at(g.b, g.d);       // start g 0 = b/d
    auto ainf = I_at(g.a, g.c);     // end g inf = a/c
    OracleResult o;
    o.value = -I * (a0.value - ainf.value);
    o.est_error = a0.est_error + ainf.est_error;
    return o;
}

// (i/(12(N^2-1))) sum (xi1(v,-u-v) conj xi2(u,v) - xi1(u,v) conj xi2(v,-u-v))
// positive on appendix-convention tables; period-integral tables give the negative
inline cplx petersson(const XiTable& x1, const XiTable& x2) {
    const int N = x1.p();
    if (x2.p() != N) throw std::invalid_argument("petersson: level mismatch");
    cplx s = 0.0;
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) {
            if (u == 0 && v == 0) continue;
            s += x1(v, -u - v) * std::conj(x2(u, v)) - x1(u, v) * std::conj(x2(v, -u - v));
        }
    return I / (12.0 * (double(N) * N - 1.0)) * s;
}

// <f,f> by brute force over the fundamental domain, normalised by the PSL2 index
inline double petersson_direct(const ModularFormData& f, int nodes = 48, const SeriesControl& ctl = {}) {
    const int N = int(f.level);
    auto R = gauss_legendre_rule(nodes);
    static const double cuts[] = {0, 0.5, 1, 2, 4, 8, 16, 32, 64, 128};
    double total = 0.0;
    const SymbolSpace S(N);
    for (const auto& [u, v] : S.pairs()) {
        auto g = lift_bottom_row(u, v, N);
        for (int i = 0; i < nodes; ++i) {
            double x = 0.5 * R->x[i], wx = 0.5 * R->w[i], y0 = std::sqrt(1.0 - x * x);
            for (size_t k = 0; k + 1 < std::size(cuts); ++k) {
                double a = y0 + cuts[k], b = y0 + cuts[k + 1];
                for (int j = 0; j < nodes; ++j) {
                    double y = 0.5 * (a + b) + 0.5 * (b - a) * R->x[j];
                    cplx z(x, y), jac = double(g.c) * z + double(g.d);
                    total += wx * 0.5 * (b - a) * R->w[j] * std::norm(eval_form_anywhere(f, g.apply(z), ctl) / (jac * jac));
                }
            }
        }
    }
    // pairs count each PSL2 coset twice, and the index is half their number
    return total / S.size();
}

}  // namespace ellreg
