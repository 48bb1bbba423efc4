#include <gtest/gtest.h>

#include <random>

#include "ellreg/eisenstein.hpp"

using namespace ellreg;

static UnimodularMatrix random_sl2(std::mt19937& rng, int steps) {
    UnimodularMatrix g;
    std::uniform_int_distribution<int> k(-3, 3), c(0, 1);
    for (int i = 0; i < steps; ++i) g = g * (c(rng) ? UnimodularMatrix::T() : UnimodularMatrix::sigma());
    for (int i = 0; i < k(rng) + 3; ++i) g = g * UnimodularMatrix::T();
    return g;
}

TEST(Zeta, KroneckerLimitFormulas) {
    EXPECT_NEAR(zeta_star(0, 0, 11, I), zeta_star_kronecker(0, 0, 11, I), 1e-10);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> X(-0.5, 0.5), Y(0.7, 2.0);
    for (int N : {1, 5, 11, 13}) {
        std::uniform_int_distribution<int> A(0, N - 1);
        for (int i = 0; i < 20; ++i) {
            int a = A(rng), b = A(rng);
            cplx z(X(rng), Y(rng));
            EXPECT_NEAR(zeta_star(a, b, N, z), zeta_star_kronecker(a, b, N, z), 1e-10) << N << " " << a << " " << b;
            EXPECT_NEAR(zeta_star(a, b, N, z), zeta_star(-a, -b, N, z), 1e-12);
        }
    }
    EXPECT_THROW(zeta_star(1, 1, 5, cplx(0.2, 0.0)), std::domain_error);
}

TEST(Zeta, DerivativeByFiniteDifference) {
    int N = 11;
    cplx z(0.13, 0.9);
    double h = 1e-5;
    for (auto [a, b] : std::vector<Pair>{{0, 0}, {3, 0}, {2, 5}, {0, 7}}) {
        auto v = zeta_star_full(a, b, N, z);
        double fx = (zeta_star(a, b, N, z + h) - zeta_star(a, b, N, z - h)) / (2 * h);
        double fy = (zeta_star(a, b, N, z + I * h) - zeta_star(a, b, N, z - I * h)) / (2 * h);
        cplx d = 0.5 * (fx - I * fy);
        EXPECT_NEAR(std::abs(v.dz - d), 0.0, 1e-7);
    }
}

TEST(EStar, Modularity) {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> X(-0.5, 0.5), Y(0.9, 1.6);
    int N = 11;
    for (int i = 0; i < 50; ++i) {
        auto g = random_sl2(rng, 1 + i % 4);
        cplx z(X(rng), Y(rng));
        cplx gz = g.apply(z);
        if (gz.imag() < 0.05) continue;
        SeriesControl ctl{1e-15, 200000};
        EisensteinField Fg(N, gz, ctl), F(N, z, ctl);
        for (int u = 0; u < N; u += 3)
            for (int v = 0; v < N; v += 2) {
                Pair xg = act({u, v}, g, N);
                double lhs = Fg.value(u, v), rhs = F.value(xg.first, xg.second);
                EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(rhs)));
            }
    }
}

TEST(EStar, ConjugationAndDegenerate) {
    int N = 12;
    cplx z(0.21, 1.1);
    EisensteinField F(N, z), Fc(N, -std::conj(z));
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) EXPECT_NEAR(Fc.value(u, v), F.value(-u, v), 1e-12);
    // x = (4,6) has order 6 = 12/2, x' = (2,3) in E_6; the pole subtraction leaves a constant behind
    EXPECT_NEAR(e_star({4, 6}, 12, z), 0.25 * e_star({2, 3}, 6, z) - 2 * pi * std::log(2.0) / 144, 1e-11);
    // the constant drops out of degree-zero combinations
    EXPECT_NEAR(e_star({4, 6}, 12, z) - e_star({2, 6}, 12, z), 0.25 * (e_star({2, 3}, 6, z) - e_star({1, 3}, 6, z)), 1e-11);
    EXPECT_NEAR(F.value(4, 6), e_star({4, 6}, 12, z), 1e-12);
}

TEST(EStarF, OddVanishesAndCharacterSum) {
    std::mt19937 rng(7);
    std::normal_distribution<double> G;
    for (int N : {11, 13}) {
        FiniteMap odd(N);
        for (int v = 1; v < N; ++v) odd.v[v] = (v < N - v) ? cplx(G(rng), G(rng)) : -odd.v[N - v];
        EXPECT_NEAR(std::abs(e_star_f(odd, cplx(0.1, 1.3))), 0.0, 1e-12);
        for (int i = 0; i < 10; ++i) {
            FiniteMap f(N);
            for (int v = 0; v < N; ++v) f.v[v] = cplx(G(rng), G(rng));
            cplx m = f.degree() / double(N);
            for (auto& x : f.v) x -= m;
            cplx z = i == 0 ? cplx(0, 2) : cplx(G(rng) * 0.3, 0.9 + std::abs(G(rng)));
            EXPECT_NEAR(std::abs(e_star_f(f, z) - e_star_f_fourier(f, z)), 0.0, 1e-10);
        }
    }
    FiniteMap bad = FiniteMap::delta(11, 1);
    EXPECT_THROW(e_star_f_fourier(bad, I), std::invalid_argument);
}

TEST(EStarF, Linearity) {
    FiniteMap a = FiniteMap::delta(11, 2), b = FiniteMap::delta(11, 5);
    cplx z(0.3, 1.2), c(1.5, -0.7);
    EXPECT_NEAR(std::abs(e_star_f(a + c * b, z) - e_star_f(a, z) - c * e_star_f(b, z)), 0.0, 1e-12);
}

// d eta = (dB/dz - dA/dzbar) dz ^ dzbar = -2i (dB/dz - dA/dzbar) dx ^ dy
static cplx d_eta_coefficient(const FiniteMap& l, const FiniteMap& m, cplx z) {
    double h = 1e-4;
    auto at = [&](cplx w) { return eta_form(l, m, w); };
    auto px = [&](cplx w) {
        auto p = at(w + h), q = at(w - h);
        return std::pair<cplx, cplx>{(p.dz - q.dz) / (2 * h), (p.dzbar - q.dzbar) / (2 * h)};
    };
    auto py = [&](cplx w) {
        auto p = at(w + I * h), q = at(w - I * h);
        return std::pair<cplx, cplx>{(p.dz - q.dz) / (2 * h), (p.dzbar - q.dzbar) / (2 * h)};
    };
    auto [Ax, Bx] = px(z);
    auto [Ay, By] = py(z);
    cplx dBdz = 0.5 * (Bx - I * By);
    cplx dAdzb = 0.5 * (Ax + I * Ay);
    return -2.0 * I * (dBdz - dAdzb);
}

TEST(Eta, AntisymmetryAndDifferential) {
    int N = 11;
    FiniteMap l = FiniteMap::delta(N, 1) + 2.0 * FiniteMap::delta(N, 3);
    FiniteMap m = FiniteMap::delta(N, 4) - 0.5 * FiniteMap::delta(N, 2) + FiniteMap::delta(N, 0);
    cplx z(0.17, 1.05);
    auto a = eta_form(l, m, z), b = eta_form(m, l, z);
    EXPECT_NEAR(std::abs(a.dz + b.dz) + std::abs(a.dzbar + b.dzbar), 0.0, 1e-14);
    cplx lhs = d_eta_coefficient(l, m, z);
    FiniteMap D = m.degree() * l - l.degree() * m;
    cplx rhs = pi * I / double(N * N) * e_star_f(D, z) / (z.imag() * z.imag());
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-7 * (1 + std::abs(rhs)));
    FiniteMap l0 = FiniteMap::delta(N, 1) - FiniteMap::delta(N, 3);
    FiniteMap m0 = FiniteMap::delta(N, 2) - FiniteMap::delta(N, 5);
    EXPECT_NEAR(std::abs(d_eta_coefficient(l0, m0, z)), 0.0, 1e-7);
}

TEST(Eta, ClosedLoopVanishes) {
    int N = 11;
    FiniteMap l = FiniteMap::delta(N, 1) - FiniteMap::delta(N, 3);
    FiniteMap m = FiniteMap::delta(N, 2) - FiniteMap::delta(N, 5);
    UnimodularMatrix g = UnimodularMatrix::g_v(3);
    std::vector<cplx> pts{{-0.2, 1.0}, {0.3, 1.1}, {0.25, 1.6}, {-0.1, 1.5}};
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += integrate_eta_pullback(l, m, g, pts[i], pts[(i + 1) % 4]).value;
    EXPECT_NEAR(std::abs(s), 0.0, 1e-9);
}

TEST(Eta, PathIntegralBasics) {
    int N = 11;
    auto chars = enumerate_characters(N);
    for (auto& c : chars) {
        if (!c.is_even() || c.is_trivial()) continue;
        FiniteMap chi = c.as_map(), chib = c.conj().as_map();
        auto r = integrate_eta_pullback(chi, chib, UnimodularMatrix::sigma(), rho(), rho() * rho());
        EXPECT_NEAR(std::abs(r.value), 0.0, 1e-9);
        auto g = UnimodularMatrix::g_v(4);
        auto r1 = integrate_eta_pullback(chi, chib, g, rho(), rho() * rho());
        auto r2 = integrate_eta_pullback(chib, chi, g, rho(), rho() * rho());
        EXPECT_NEAR(std::abs(r1.value + r2.value), 0.0, 1e-12);
        EXPECT_GT(std::abs(r1.value), 1e-6);
        // shared-node integrator agrees
        GeodesicEtaIntegrator gi(N, rho(), rho() * rho(), r1.nodes);
        EXPECT_NEAR(std::abs(gi.integrate(chi, chib, {1, 4}) - r1.value), 0.0, 1e-14);
    }
    auto z = integrate_eta_pullback(FiniteMap::delta(N, 1), FiniteMap::delta(N, 2), UnimodularMatrix(), I, I);
    EXPECT_EQ(z.value, cplx(0.0));
}

TEST(Matrices, Lift) {
    for (int N : {11, 12})
        for (int u = 0; u < N; ++u)
            for (int v = 0; v < N; ++v) {
                if (std::gcd(std::gcd(u, v), N) != 1) {
                    EXPECT_THROW(lift_bottom_row(u, v, N), std::invalid_argument);
                    continue;
                }
                auto g = lift_bottom_row(u, v, N);
                EXPECT_EQ(mod(g.c, N), u);
                EXPECT_EQ(mod(g.d, N), v);
                EXPECT_EQ(g.a * g.d - g.b * g.c, 1);
            }
    EXPECT_THROW(UnimodularMatrix(1, 1, 1, 1), std::invalid_argument);
}
