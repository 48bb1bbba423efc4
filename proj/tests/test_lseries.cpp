#include <gtest/gtest.h>

#include <random>

#include "ellreg/lseries.hpp"

using namespace ellreg;

namespace {

struct Fixture11 {
    CurveModel E = CurveModel::x1_11();
    ModularFormData f = form_from_curve(E);
    TwistTable T;
    Fixture11() {
        ensure_root_number(f);
        T = build_twists(f, 4);
    }
};

const Fixture11& fx() {
    static Fixture11 F;
    return F;
}

// direct Dirichlet series at s = 3 with many terms
cplx direct_l3(const std::vector<long long>& an, const DirichletCharacter* chi, int n) {
    cplx s = 0.0;
    for (int k = n; k >= 1; --k) s += double(an[k]) * (chi ? (*chi)(k) : cplx(1.0)) / std::pow(double(k), 3);
    return s;
}

}  // namespace

TEST(Forms, Evaluation) {
    auto& f = fx().f;
    cplx z(0.23, 0.4);
    EXPECT_NEAR(std::abs(eval_form(f, z + 1.0) - eval_form(f, z)), 0.0, 1e-14);
    cplx v = eval_form(f, cplx(0, 10));
    EXPECT_NEAR(std::abs(v / std::exp(-20 * pi) - 1.0), 0.0, 1e-12);
    SeriesControl c1{1e-10, 20000}, c2{1e-17, 20000};
    EXPECT_NEAR(std::abs(eval_form(f, I, c1) - eval_form(f, I, c2)), 0.0, 1e-10);
    EXPECT_THROW(eval_form(f, cplx(0, 1e-4)), truncation_error);
}

TEST(Forms, RootNumbers) {
    auto& F = fx();
    EXPECT_NEAR(std::abs(*F.f.w - cplx(-1.0)), 0.0, 1e-10);
    // L(f,1) != 0 and w = -(sign of the functional equation): Lambda(f,1) = -w Lambda(f,1) forces w = -1
    EXPECT_GT(std::abs(F.T.lambda1.size() ? lambda_value(F.f, 1.0) : cplx(0)), 0.01);
    for (size_t i = 0; i < F.T.chars.size(); ++i) {
        EXPECT_NEAR(std::abs(*F.T.forms[i].w), 1.0, 1e-8);
        int j = F.T.index_of(F.T.chars[i].conj());
        EXPECT_NEAR(std::abs(*F.T.forms[i].w * *F.T.forms[j].w - 1.0), 0.0, 1e-8);
    }
}

TEST(Lambda, DirectSeriesAtThree) {
    auto& F = fx();
    const int n = 40000;
    auto an = an_coefficients(F.E, n);
    cplx d = direct_l3(an, nullptr, n);
    cplx lam = lambda_value(F.f, 3.0);
    cplx ref = std::pow(11.0, 1.5) * std::pow(2 * pi, -3.0) * 2.0 * d;
    EXPECT_NEAR(std::abs(lam / ref - 1.0), 0.0, 1e-9);
    for (size_t i = 0; i < F.T.chars.size(); i += 3) {
        auto& c = F.T.chars[i];
        cplx dc = direct_l3(an, &c, n);
        cplx refc = std::pow(121.0, 1.5) * std::pow(2 * pi, -3.0) * 2.0 * dc;
        EXPECT_NEAR(std::abs(lambda_value(F.T.forms[i], 3.0) / refc - 1.0), 0.0, 1e-9) << c.label();
    }
}

TEST(Lambda, FunctionalEquationAndSplit) {
    auto& F = fx();
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-0.5, 2.5), V(-3, 3);
    std::vector<const ModularFormData*> forms{&F.f};
    for (auto& g : F.T.forms) forms.push_back(&g);
    for (auto* g : forms)
        for (int i = 0; i < 10; ++i) {
            cplx s(U(rng), V(rng));
            cplx a = lambda_value_ex(*g, s, 1.25).value;
            cplx b = lambda_value_ex(g->conjugate(), 2.0 - s, 0.85).value;
            EXPECT_LT(std::abs(a + *g->w * b), 1e-10 * std::abs(a)) << g->tag;
            cplx c = lambda_value_ex(*g, s, 2.0).value;
            EXPECT_LT(std::abs(a - c), 1e-10 * std::abs(a));
        }
}

TEST(Lambda, TwistsAndConjugates) {
    auto& F = fx();
    auto chi = F.T.chars[1];
    EXPECT_EQ(F.T.forms[1].level, 121);
    EXPECT_EQ(F.T.forms[1].coeff(11), cplx(0.0));
    auto same = twist(F.f, trivial_character(11));
    EXPECT_EQ(same.level, 11);
    EXPECT_THROW(twist(F.f, enumerate_characters(13)[1]), std::invalid_argument);
    for (size_t i = 0; i < F.T.chars.size(); ++i) {
        // (p/2 pi) L(f,chi,1) = Lambda(f x chi, 1)
        cplx L = l_value(F.T.forms[i], 1.0);
        EXPECT_NEAR(std::abs(F.T.lambda1[i] - 11.0 / (2 * pi) * L), 0.0, 1e-12);
        int j = F.T.index_of(F.T.chars[i].conj());
        EXPECT_NEAR(std::abs(F.T.lambda1[j] - std::conj(F.T.lambda1[i])), 0.0, 1e-10);
    }
    (void)chi;
}

TEST(Rankin, CoefficientIdentity) {
    auto E = CurveModel::x1_11();
    auto cs = enumerate_characters(11);
    auto an = an_coefficients(E, 100);
    for (auto& c1 : cs)
        for (auto& c2 : cs) {
            auto r = rankin_convolution_check(E, c1, c2, 300);
            EXPECT_TRUE(r.exact_zero);
            EXPECT_LT(r.max_abs_err, 1e-10);
        }
    // at a good prime both sides are a_p (chi2(p) + p chi1(p)); n = 1 gives 1
    auto r = rankin_convolution_check(E, cs[1], cs[3], 2000);
    EXPECT_TRUE(r.exact_zero);
    EXPECT_LT(r.max_abs_err, 1e-10);
}

TEST(Residue, CharacterSumFormula) {
    auto& F = fx();
    cplx R = rankin_residue(F.T, 11);
    EXPECT_LT(std::abs(R.imag()), 1e-8);
    EXPECT_GT(R.real(), 0.0);
    // relabeling within parity blocks: reversing the order of characters
    TwistTable T2 = F.T;
    std::reverse(T2.chars.begin(), T2.chars.end());
    std::reverse(T2.lambda1.begin(), T2.lambda1.end());
    EXPECT_NEAR(std::abs(rankin_residue(T2, 11) - R), 0.0, 1e-13);
}
