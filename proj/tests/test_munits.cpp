#include <gtest/gtest.h>

#include <random>

#include "ellreg/munits.hpp"

using namespace ellreg;

TEST(Units, DegreeZeroAndClassInvariance) {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int N : {5, 11, 12, 13, 20}) {
        FiniteMap f(N);
        for (int a = 0; a < N; ++a) f[a] = cplx(g(rng), g(rng));
        cplx m = f.degree() / double(N);
        for (int a = 0; a < N; ++a) f[a] -= m;
        auto D = unit_divisor(f);
        EXPECT_NEAR(std::abs(D.degree()), 0.0, 1e-12) << N;
        EXPECT_LT(unit_divisor_class_spread(f), 1e-12) << N;
    }
    EXPECT_THROW(unit_divisor(FiniteMap::delta(11, 1)), std::invalid_argument);
}

TEST(Units, Linearity) {
    FiniteMap f = FiniteMap::delta(12, 1) - FiniteMap::delta(12, 5);
    FiniteMap h = FiniteMap::delta(12, 2) - FiniteMap::delta(12, 0);
    cplx a(0.3, -1.2), b(2.0, 0.5);
    auto lhs = unit_divisor(a * f + b * h);
    auto rhs = a * unit_divisor(f) + b * unit_divisor(h);
    EXPECT_LT(lhs.max_abs_diff(rhs), 1e-13);
}

TEST(Units, GaloisInvariance) {
    // (u,v) -> (e u, v)
    const int N = 12;
    FiniteMap f = FiniteMap::delta(N, 1) + FiniteMap::delta(N, 11) - FiniteMap::delta(N, 3) - FiniteMap::delta(N, 9);
    auto D = unit_divisor(f);
    for (int e : {5, 7, 11})
        for (auto& c : D.classes) {
            Pair y{e * c.rep.first, c.rep.second};
            EXPECT_NEAR(std::abs(D.at(y) - D.at(c.rep)), 0.0, 1e-13);
        }
}

TEST(Units, CharacterDivisor) {
    for (int N : {11, 13, 15}) {
        for (auto& chi : enumerate_characters(N)) {
            if (!chi.is_even() || chi.is_trivial()) continue;
            auto D = unit_divisor_chi(chi);
            EXPECT_LT(D.max_abs_diff(unit_divisor(chi.as_map())), 1e-11);
            EXPECT_NEAR(std::abs(D.degree()), 0.0, 1e-12);
            for (size_t i = 0; i < D.classes.size(); ++i)
                if (D.classes[i].rep.first != 0) EXPECT_EQ(D.coeff[i], cplx(0.0));
            // pulling back by <d> multiplies by chi-bar(d)
            for (int d = 2; d < N; ++d) {
                if (std::gcd(d, N) != 1) continue;
                for (auto& c : D.classes) {
                    Pair y{d * c.rep.first, d * c.rep.second};
                    EXPECT_NEAR(std::abs(D.at(y) - std::conj(chi(d)) * D.at(c.rep)), 0.0, 1e-13);
                }
            }
        }
    }
    EXPECT_THROW(unit_divisor_chi(trivial_character(11)), std::invalid_argument);
    EXPECT_THROW(unit_divisor_chi(parse_character("11:g=2,zeta10^1")), std::invalid_argument);
}

TEST(Units, HatDivisor) {
    for (int N : {11, 12, 13, 15, 20}) {
        for (auto& chi : enumerate_characters(N)) {
            if (!chi.is_even()) continue;
            auto D = unit_divisor_chihat(chi);
            EXPECT_LT(D.max_abs_diff(unit_divisor(fourier_transform(chi.as_map()))), 1e-11);
            for (size_t i = 0; i < D.classes.size(); ++i)
                if (D.classes[i].d % chi.conductor() != 0) EXPECT_EQ(D.coeff[i], cplx(0.0));
            if (chi.is_primitive() && !chi.is_trivial())
                EXPECT_LT(D.max_abs_diff(gauss_sum(chi) * unit_divisor_chi(chi.conj())), 1e-11);
        }
    }
    EXPECT_THROW(unit_divisor_chihat(trivial_character(1)), std::invalid_argument);
}

TEST(Units, X1Thirteen) {
    auto r = reconstruct_x1_13_units();
    EXPECT_TRUE(r.ok());
    EXPECT_NEAR(std::abs(r.ratio_u_eps3_to_y - r.expected_ratio), 0.0, 1e-10);
    const std::vector<double> x{0, 1, 1, -1, 0, -1};
    for (int v = 0; v < 6; ++v) EXPECT_NEAR(std::abs(r.div_x[v] - x[v]), 0.0, 1e-10);
    // six P_v classes at level 13
    std::set<int> pv;
    auto cs = cusp_classes(13);
    for (int v = 1; v < 13; ++v) pv.insert(cusp_class_of(cs, {0, v}, 13));
    EXPECT_EQ(pv.size(), 6u);
}

TEST(Units, Json) {
    auto D = unit_divisor_chi(parse_character("11:g=2,zeta10^2"));
    auto j = to_json(D);
    EXPECT_EQ(j["level"], 11);
    EXPECT_EQ(j["cusps"].size(), D.classes.size());
    auto back = nlohmann::json::parse(j.dump());
    EXPECT_EQ(back, j);
}
