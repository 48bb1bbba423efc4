#include <gtest/gtest.h>

#include "ellreg/modsym.hpp"

using namespace ellreg;

namespace {

struct Fixture11 {
    CurveModel E = CurveModel::x1_11();
    ModularFormData f = form_from_curve(E);
    TwistTable T;
    XiTable X, XA;
    Fixture11() {
        ensure_root_number(f);
        T = build_twists(f, 4);
        X = XiTable(f, T);
        XA = XiTable(f, T, XiConvention::appendix);
    }
};

const Fixture11& fx() {
    static Fixture11 F;
    return F;
}

detail::RMat mul(const detail::RMat& A, const detail::RMat& B) {
    size_t n = A.size(), m = B[0].size(), k = B.size();
    detail::RMat C(n, std::vector<Rational>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            if (A[i][l] != 0)
                for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

}  // namespace

TEST(Symbols, CuspidalDimensionIsTwiceGenus) {
    for (int N : {5, 7, 11, 13}) {
        ManinQuotient Q(N);
        EXPECT_EQ(Q.cuspidal_dim(), 2 * genus_x1(N)) << N;
    }
    EXPECT_EQ(genus_x1(11), 1);
    EXPECT_EQ(genus_x1(13), 2);
}

TEST(Symbols, CuspClasses) {
    auto c11 = cusp_classes(11);
    auto c13 = cusp_classes(13);
    EXPECT_EQ(c11.size(), 10u);
    EXPECT_EQ(c13.size(), 12u);
    int ci = cusp_class_of(c13, {0, 1}, 13);
    EXPECT_TRUE(c13[ci].is_infinity);
    // every symbol lands in exactly one class
    size_t total = 0;
    for (auto& c : c13) total += c.members.size();
    EXPECT_EQ(int(total), SymbolSpace(13).size());
}

TEST(Symbols, HeckeT2) {
    ManinQuotient Q(11);
    auto t = Q.hecke_t2({0, 1});
    Rational s = 0;
    for (auto& [i, c] : t) s += c;
    EXPECT_EQ(s, 4);
    auto cp = detail::charpoly(Q.t2_cuspidal());
    // (X + 2)^2 : a_2 = -2 for 11a
    ASSERT_EQ(cp.size(), 3u);
    EXPECT_EQ(cp[0], 4);
    EXPECT_EQ(cp[1], 4);
    EXPECT_EQ(cp[2], 1);
}

TEST(Symbols, DiamondCommutesWithT2) {
    ManinQuotient Q(13);
    auto T2 = Q.t2_cuspidal();
    auto D = Q.diamond_cuspidal(2);
    EXPECT_EQ(mul(T2, D), mul(D, T2));
    // <d> has order dividing 6 on cusp forms (d and -d agree)
    auto P = D;
    for (int k = 1; k < 6; ++k) P = mul(P, D);
    for (size_t i = 0; i < P.size(); ++i)
        for (size_t j = 0; j < P.size(); ++j) EXPECT_EQ(P[i][j], Rational(i == j ? 1 : 0));
    EXPECT_THROW(Q.diamond(13, {0, 1}), std::invalid_argument);
}

TEST(Xi, ManinRelationsAndVanishing) {
  for (auto* Xp : {&fx().X, &fx().XA}) {
    auto& X = *Xp;
    const int N = X.p();
    EXPECT_NEAR(std::abs(X(1, 1)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(X(-1, 1)), 0.0, 1e-13);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) {
            if (!u && !v) continue;
            EXPECT_NEAR(std::abs(X(u, v) + X(-v, u)), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(X(u, v) + X(v, -u - v) + X(-u - v, u)), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(X(u, v) - X(3 * u, 3 * v)), 0.0, 1e-13);
        }
  }
}

TEST(Xi, MatchesPeriodIntegral) {
    auto& F = fx();
    for (Pair x : std::vector<Pair>{{1, 0}, {0, 1}, {2, 1}, {3, 7}, {5, 1}, {1, 3}, {4, 9}}) {
        auto o = period_integral_oracle(F.f, x);
        EXPECT_LT(o.est_error, 1e-9);
        EXPECT_NEAR(std::abs(F.X(x.first, x.second) - o.value), 0.0, 1e-9) << x.first << "," << x.second;
        // the literal expansion: same on {0, inf}, minus the reflected value on units
        cplx a = F.XA(x.first, x.second);
        cplx b = (x.first && x.second) ? -F.X(-x.first, x.second) : F.X(x.first, x.second);
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-13);
    }
}

TEST(Xi, FormAnywhereMatchesSeries) {
    auto& f = fx().f;
    for (cplx z : {cplx(0.1, 0.7), cplx(-0.31, 0.5), cplx(0.45, 0.9)})
        EXPECT_NEAR(std::abs(eval_form_anywhere(f, z) - eval_form(f, z)), 0.0, 1e-12);
    // weight 2 modularity under Gamma_0(11)
    UnimodularMatrix g(1, 0, 11, 1);
    cplx z(0.02, 0.05);
    cplx gz = g.apply(z), j = 11.0 * z + 1.0;
    EXPECT_NEAR(std::abs(eval_form_anywhere(f, gz) - j * j * eval_form_anywhere(f, z)), 0.0, 1e-10);
}

TEST(Xi, PeterssonAgainstRankinResidue) {
    auto& F = fx();
    cplx P = petersson(F.XA, F.XA);
    EXPECT_NEAR(P.imag(), 0.0, 1e-14);
    EXPECT_GT(P.real(), 0.0);
    cplx R = rankin_residue(F.T, 11);
    EXPECT_NEAR(std::abs(12.0 * pi * P - R), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(petersson(F.X, F.X) + P), 0.0, 1e-14);
    // brute-force integral over the fundamental domain
    EXPECT_NEAR(petersson_direct(F.f) / P.real(), 1.0, 1e-8);
}
