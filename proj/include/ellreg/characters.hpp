#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "specialfns.hpp"

namespace ellreg {

inline long long mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

inline long long powmod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

// x with a*x = 1 mod n, requires gcd(a,n)=1
inline long long inv_mod(long long a, long long n) {
    long long g = n, x = 0, x1 = 1, a1 = mod(a, n);
    while (a1 != 0) {
        long long q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod(x, n);
}

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) n /= p, ++k;
        f.push_back({p, k});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline long long euler_phi(long long n) {
    long long r = n;
    for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<long long> divisors(long long n) {
    std::vector<long long> d;
    for (long long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

inline int moebius(long long n) {
    int m = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1) return 0;
        m = -m;
    }
    return m;
}

inline cplx root_of_unity(long long k, long long L) {
    double t = 2.0 * pi * double(mod(k, L)) / double(L);
    return {std::cos(t), std::sin(t)};
}

// complex-valued map on Z/NZ
struct FiniteMap {
    int N = 1;
    std::vector<cplx> v;

    FiniteMap() : v(1, 0.0) {}
    explicit FiniteMap(int n) : N(n), v(n, 0.0) {}
    FiniteMap(int n, std::vector<cplx> vals) : N(n), v(std::move(vals)) {
        if ((int)v.size() != N) throw std::invalid_argument("FiniteMap: size mismatch");
    }

    static FiniteMap delta(int n, long long a) {
        FiniteMap f(n);
        f.v[mod(a, n)] = 1.0;
        return f;
    }

    cplx operator()(long long a) const { return v[mod(a, N)]; }
    cplx& operator[](long long a) { return v[mod(a, N)]; }
    cplx degree() const { return std::accumulate(v.begin(), v.end(), cplx(0.0)); }

    FiniteMap even_part() const {
        FiniteMap e(N);
        for (int a = 0; a < N; ++a) e.v[a] = 0.5 * (v[a] + v[mod(-a, N)]);
        return e;
    }

    FiniteMap& operator+=(const FiniteMap& o) {
        if (o.N != N) throw std::invalid_argument("FiniteMap: modulus mismatch");
        for (int a = 0; a < N; ++a) v[a] += o.v[a];
        return *this;
    }
    FiniteMap& operator*=(cplx c) {
        for (auto& x : v) x *= c;
        return *this;
    }
    friend FiniteMap operator+(FiniteMap a, const FiniteMap& b) { return a += b; }
    friend FiniteMap operator-(FiniteMap a, const FiniteMap& b) {
        FiniteMap c = b;
        c *= -1.0;
        return a += c;
    }
    friend FiniteMap operator*(cplx c, FiniteMap a) { return a *= c; }
};

inline FiniteMap fourier_transform(const FiniteMap& f) {
    FiniteMap h(f.N);
    for (int b = 0; b < f.N; ++b) {
        cplx s = 0.0;
        for (int v = 0; v < f.N; ++v)
            if (f.v[v] != 0.0) s += f.v[v] * root_of_unity(-(long long)b * v, f.N);
        h.v[b] = s;
    }
    return h;
}

// structure of (Z/NZ)^*: generators, orders, discrete logs
struct UnitGroup {
    int N = 1;
    std::vector<long long> gens;
    std::vector<int> orders;
    int exponent = 1;                    // lcm of orders
    std::vector<std::vector<int>> dlog;  // empty for non-units

    explicit UnitGroup(int n) : N(n) {
        if (n < 1) throw std::invalid_argument("UnitGroup: N >= 1");
        for (auto [p, k] : factorize(n)) {
            long long pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            std::vector<std::pair<long long, int>> local;
            if (p == 2) {
                if (k == 2) local.push_back({pk - 1, 2});
                if (k >= 3) {
                    local.push_back({pk - 1, 2});
                    local.push_back({5, int(pk / 4)});
                }
            } else {
                long long g = primitive_root_prime(p);
                if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
                local.push_back({g, int(pk / p * (p - 1))});
            }
            long long rest = n / pk;
            for (auto [g, o] : local) {
                // CRT: = g mod pk, = 1 mod rest
                long long x = g;
                if (rest > 1) {
                    long long t = mod((1 - g) * inv_mod(pk % rest, rest), rest);
                    x = g + pk * t;
                }
                gens.push_back(mod(x, n));
                orders.push_back(o);
            }
        }
        for (int o : orders) exponent = std::lcm(exponent, o);
        dlog.assign(n, {});
        std::vector<int> e(gens.size(), 0);
        // odometer over exponent vectors
        while (true) {
            long long a = 1 % n;
            for (size_t i = 0; i < gens.size(); ++i) a = (__int128)a * powmod(gens[i], e[i], n) % n;
            dlog[a] = e;
            size_t i = 0;
            while (i < e.size() && ++e[i] == orders[i]) e[i++] = 0;
            if (i == e.size()) break;
        }
        if (n == 1) dlog[0] = {};
    }

    bool is_unit(long long a) const { return std::gcd(mod(a, N), (long long)N) == 1; }

    static long long primitive_root_prime(long long p) {
        if (p == 2) return 1;
        auto fs = factorize(p - 1);
        for (long long g = 2;; ++g) {
            bool ok = true;
            for (auto [q, k] : fs)
                if (powmod(g, (p - 1) / q, p) == 1) {
                    ok = false;
                    break;
                }
            if (ok) return g;
        }
    }
};

class DirichletCharacter {
  public:
    DirichletCharacter() = default;

    // character sending gens[i] to exp(2 pi i j[i]/orders[i])
    DirichletCharacter(const UnitGroup& G, const std::vector<int>& j) : N_(G.N), L_(G.exponent), j_(j) {
        e_.assign(N_, -1);
        for (int a = 0; a < N_; ++a) {
            if (!G.is_unit(a)) continue;
            long long s = 0;
            const auto& lg = G.dlog[a];
            for (size_t i = 0; i < lg.size(); ++i) s += (long long)j[i] * lg[i] * (L_ / G.orders[i]);
            e_[a] = int(mod(s, L_));
        }
        gens_ = G.gens;
        orders_ = G.orders;
        finish();
    }

    int modulus() const { return N_; }
    int exponent_base() const { return L_; }
    int conductor() const { return cond_; }
    int parity() const { return parity_; }
    bool is_even() const { return parity_ == 1; }
    bool is_trivial() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x <= 0; });
    }
    bool is_primitive() const { return cond_ == N_; }

    // exponent of chi(a) in units of 2 pi i / L, or -1 off the unit group
    int exp_at(long long a) const { return e_[mod(a, N_)]; }
    cplx operator()(long long a) const {
        int e = e_[mod(a, N_)];
        return e < 0 ? cplx(0.0) : root_of_unity(e, L_);
    }

    int order() const {
        int o = 1;
        for (int e : e_)
            if (e > 0) o = std::lcm(o, L_ / std::gcd(e, L_));
        return o;
    }

    DirichletCharacter conj() const {
        DirichletCharacter c = *this;
        for (auto& e : c.e_)
            if (e >= 0) e = int(mod(-e, L_));
        for (size_t i = 0; i < c.j_.size(); ++i) c.j_[i] = int(mod(-c.j_[i], orders_[i]));
        c.finish();
        return c;
    }

    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
        if (a.N_ != b.N_) throw std::invalid_argument("character product: modulus mismatch");
        DirichletCharacter c = a;
        for (int x = 0; x < a.N_; ++x)
            if (c.e_[x] >= 0) c.e_[x] = int(mod(a.e_[x] + b.e_[x], a.L_));
        for (size_t i = 0; i < c.j_.size(); ++i) c.j_[i] = int(mod(a.j_[i] + b.j_[i], a.orders_[i]));
        c.finish();
        return c;
    }

    bool operator==(const DirichletCharacter& o) const { return N_ == o.N_ && e_ == o.e_; }
    bool operator!=(const DirichletCharacter& o) const { return !(*this == o); }

    FiniteMap as_map() const {
        FiniteMap f(N_);
        for (int a = 0; a < N_; ++a) f.v[a] = (*this)(a);
        return f;
    }

    // "N:g=2,zeta5^1" (one g/zeta pair per generator)
    std::string label() const {
        std::ostringstream os;
        os << N_ << ":";
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (i) os << ";";
            int e = e_[gens_[i]];
            int o = L_ / std::gcd(e, L_);
            os << "g=" << gens_[i] << ",zeta" << o << "^" << (long long)e * o / L_;
        }
        if (gens_.empty()) os << "trivial";
        return os.str();
    }

    const std::vector<long long>& generators() const { return gens_; }

  private:
    void finish() {
        // parity
        parity_ = 1;
        if (N_ > 2) {
            int e = e_[N_ - 1];
            parity_ = (e == 0) ? 1 : -1;
        }
        // conductor: least d | N with chi trivial on units = 1 mod d
        cond_ = N_;
        for (long long d : divisors(N_)) {
            bool ok = true;
            for (long long a = 1; a < N_ && ok; a += d)
                if (e_[a] > 0) ok = false;
            if (ok) {
                cond_ = int(d);
                break;
            }
        }
    }

    int N_ = 1, L_ = 1;
    std::vector<int> e_{0};
    std::vector<int> j_;
    std::vector<long long> gens_;
    std::vector<int> orders_;
    int cond_ = 1, parity_ = 1;
};

inline std::vector<DirichletCharacter> enumerate_characters(int N) {
    UnitGroup G(N);
    std::vector<DirichletCharacter> out;
    std::vector<int> j(G.gens.size(), 0);
    while (true) {
        out.emplace_back(G, j);
        size_t i = 0;
        while (i < j.size() && ++j[i] == G.orders[i]) j[i++] = 0;
        if (i == j.size()) break;
    }
    return out;
}

inline DirichletCharacter trivial_character(int N) { return enumerate_characters(N).front(); }

inline cplx gauss_sum(const DirichletCharacter& chi) {
    cplx s = 0.0;
    int N = chi.modulus();
    for (int v = 0; v < N; ++v)
        if (chi.exp_at(v) >= 0) s += chi(v) * root_of_unity(v, N);
    return s;
}

// generalized Bernoulli number B_{2,chi} = N sum chi(a) B2bar(a/N)
inline cplx bernoulli2_chi(const DirichletCharacter& chi) {
    int N = chi.modulus();
    cplx s = 0.0;
    for (int a = 0; a < N; ++a) s += chi(a) * periodic_bernoulli2(double(a) / N);
    return double(N) * s;
}

// L(chi,2) for chi even, nontrivial, primitive
inline cplx l_chi_2(const DirichletCharacter& chi) {
    if (chi.is_trivial()) throw std::invalid_argument("l_chi_2: trivial character");
    if (!chi.is_even()) throw std::invalid_argument("l_chi_2: odd character");
    if (!chi.is_primitive()) throw std::invalid_argument("l_chi_2: imprimitive character");
    DirichletCharacter cb = chi.conj();
    return pi * pi * bernoulli2_chi(cb) / (double(chi.modulus()) * gauss_sum(cb));
}

// parse "11:g=2,zeta5^1" (pairs may be separated by ';')
inline DirichletCharacter parse_character(const std::string& label) {
    auto colon = label.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("character label: missing ':'");
    int N = 0;
    try {
        N = std::stoi(label.substr(0, colon));
    } catch (...) {
        throw std::invalid_argument("character label: bad modulus");
    }
    if (N < 1) throw std::invalid_argument("character label: modulus must be >= 1");
    std::string rest = label.substr(colon + 1);
    std::replace(rest.begin(), rest.end(), ';', ',');
    std::vector<std::pair<long long, std::pair<long long, long long>>> conds;  // g -> zeta_o^k
    std::stringstream ss(rest);
    std::string tok;
    long long g = -1;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty() || tok == "trivial") continue;
        if (tok.rfind("g=", 0) == 0) {
            g = std::stoll(tok.substr(2));
        } else if (tok.rfind("zeta", 0) == 0) {
            auto caret = tok.find('^');
            if (g < 0 || caret == std::string::npos) throw std::invalid_argument("character label: bad token " + tok);
            long long o = std::stoll(tok.substr(4, caret - 4));
            long long k = std::stoll(tok.substr(caret + 1));
            if (o < 1) throw std::invalid_argument("character label: bad root order");
            conds.push_back({g, {o, k}});
            g = -1;
        } else {
            throw std::invalid_argument("character label: bad token " + tok);
        }
    }
    std::vector<DirichletCharacter> hits;
    for (auto& chi : enumerate_characters(N)) {
        bool ok = true;
        for (auto& [gg, ok_] : conds) {
            auto [o, k] = ok_;
            int e = chi.exp_at(gg);
            long long L = chi.exponent_base();
            if (e < 0) {
                ok = false;
                break;
            }
            // e/L == k/o mod 1
            if (mod((long long)e * o - k * L, L * o) != 0) ok = false;
        }
        if (ok) hits.push_back(chi);
    }
    if (hits.size() != 1)
        throw std::invalid_argument("character label '" + label + "' matches " + std::to_string(hits.size()) +
                                    " characters");
    return hits.front();
}

// exact arithmetic in Z[x]/(x^L - 1), zero-test modulo the L-th cyclotomic polynomial
namespace cyclo {

using poly = std::vector<long long>;

inline poly cyclotomic(int L) {
    // x^L - 1 divided by Phi_d for proper divisors d
    poly num(L + 1, 0);
    num[0] = -1;
    num[L] = 1;
    for (long long d : divisors(L)) {
        if (d == L) break;
        poly den = cyclotomic(int(d));
        // exact long division, den monic
        poly q(num.size() - den.size() + 1, 0);
        poly r = num;
        for (int i = int(r.size()) - 1; i >= int(den.size()) - 1; --i) {
            long long c = r[i];
            if (c == 0) continue;
            int s = i - int(den.size()) + 1;
            q[s] = c;
            for (size_t k = 0; k < den.size(); ++k) r[s + k] -= c * den[k];
        }
        num = q;
    }
    return num;
}

// reduce an element of Z[x]/(x^L-1) modulo Phi_L; zero iff the cyclotomic integer vanishes
inline bool is_zero(const poly& a, int L) {
    poly phi = cyclotomic(L);
    poly r = a;
    int dphi = int(phi.size()) - 1;
    for (int i = int(r.size()) - 1; i >= dphi; --i) {
        long long c = r[i];
        if (c == 0) continue;
        for (int k = 0; k <= dphi; ++k) r[i - dphi + k] -= c * phi[k];
    }
    for (int i = 0; i < dphi && i < (int)r.size(); ++i)
        if (r[i] != 0) return false;
    return true;
}

inline cplx to_complex(const poly& a, int L) {
    cplx s = 0.0;
    for (int k = 0; k < L; ++k)
        if (a[k]) s += double(a[k]) * root_of_unity(k, L);
    return s;
}

}  // namespace cyclo

}  // namespace ellreg
