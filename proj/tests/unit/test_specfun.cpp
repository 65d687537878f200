#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfkit/errors.hpp"
#include "qfkit/gamma.hpp"
#include "qfkit/hypergeometric.hpp"
#include "qfkit/specfun.hpp"

using namespace qfkit;
using oracle::kPi;
using Cx = std::complex<double>;

namespace {

double rel(Cx a, Cx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST(Gamma, HalfAndRecurrence) {
    EXPECT_LT(rel(qfkit::gamma(Cx(0.5)), std::sqrt(kPi)), 5e-14);
    oracle::Gen gen(61);
    for (int k = 0; k < 200; ++k) {
        const Cx s(gen.real(-8.0, 20.0), gen.real(-20.0, 20.0));
        if (std::abs(s.imag()) < 0.05 && s.real() < 0.5) continue;
        EXPECT_LT(rel(gamma(s + 1.0), s * gamma(s)), 1e-12) << s;
    }
}

TEST(Gamma, DuplicationAndReflection) {
    oracle::Gen gen(62);
    for (int k = 0; k < 200; ++k) {
        const Cx s(gen.real(0.1, 10.0), gen.real(-10.0, 10.0));
        const Cx dup = std::pow(2.0, 1.0 - 2.0 * s) * std::sqrt(kPi) * gamma(2.0 * s);
        EXPECT_LT(rel(gamma(s) * gamma(s + 0.5), dup), 1e-12);
        const Cx refl = kPi / std::sin(kPi * s);
        EXPECT_LT(rel(gamma(s) * gamma(1.0 - s), refl), 1e-11);
    }
}

TEST(Gamma, PrincipalBranchAndPoles) {
    oracle::Gen gen(63);
    for (int k = 0; k < 200; ++k) {
        const Cx s(gen.real(-30.0, 30.0), gen.real(-30.0, 30.0));
        const Cx l = log_gamma(s);
        EXPECT_GT(l.imag(), -kPi);
        EXPECT_LE(l.imag(), kPi);
        EXPECT_LT(std::abs(std::exp(l) - std::exp(log_gamma_continuous(s))), 1e-10 * std::abs(std::exp(l)));
    }
    for (double n : {0.0, -1.0, -5.0}) EXPECT_THROW(log_gamma(n), pole_error);
}

// |Gamma(1/4 + iz) Gamma(3/4 + iz) / Gamma(2iz)|^2 = 4 pi z tanh(2 pi z) by reflection.
TEST(Gamma, SpectralWeightMatchesReflectionClosedForm) {
    for (double z : {0.5, 1.0, 2.0, 0.01, 5.0, 12.0}) {
        const double w = T_weight(z);
        EXPECT_GT(w, 0.0);
        EXPECT_NEAR(w, 4.0 * kPi * z * std::tanh(2.0 * kPi * z), 1e-12 * w) << z;
    }
    EXPECT_EQ(T_weight(0.0), 0.0);
}

TEST(Hypergeometric, ElementaryValues) {
    EXPECT_EQ(gauss_2f1(0.3, 0.7, 1.0, 0.0), Cx(1.0));
    EXPECT_NEAR(gauss_2f1(1.0, 1.0, 2.0, -1.0).real(), std::log(2.0), 1e-14);
    for (double x : {-5.0, -0.5, 0.3, 0.7, 0.95, 0.999}) EXPECT_NEAR(gauss_2f1(1.0, 1.0, 2.0, x).real(), -std::log(1.0 - x) / x, 1e-12);
}

TEST(Hypergeometric, SeriesOracleOnInnerDisc) {
    oracle::Gen gen(64);
    for (int k = 0; k < 200; ++k) {
        const Cx a(gen.real(-2, 4), gen.real(-3, 3)), b(gen.real(-2, 4), gen.real(-3, 3));
        const Cx c(gen.real(0.5, 5), gen.real(-1, 1));
        const double x = gen.real(-0.5, 0.5);
        EXPECT_LT(rel(gauss_2f1(a, b, c, x), oracle::hyp2f1_series(a, b, c, x)), 1e-12);
    }
}

TEST(Hypergeometric, PfaffTransformationConsistency) {
    oracle::Gen gen(65);
    for (int k = 0; k < 200; ++k) {
        const Cx a(gen.real(0, 3), gen.real(-2, 2)), b(gen.real(0, 3), gen.real(-2, 2)), c(gen.real(1, 4), 0.0);
        const double x = gen.real(-0.9, 0.9);
        const Cx lhs = gauss_2f1(a, b, c, x), rhs = std::pow(1.0 - x, -a) * gauss_2f1(a, c - b, c, x / (x - 1.0));
        EXPECT_LT(rel(lhs, rhs), 1e-10) << a << b << c << x;
    }
}

// c(c-1)(x-1) F(c-1) + c[c-1-(2c-a-b-1)x] F(c) + (c-a)(c-b) x F(c+1) = 0
TEST(Hypergeometric, ContiguousRelationOnUsedFamilies) {
    oracle::Gen gen(66);
    auto residual = [](Cx a, Cx b, Cx c, double x) {
        const Cx t1 = c * (c - 1.0) * (x - 1.0) * gauss_2f1(a, b, c - 1.0, x);
        const Cx t2 = c * (c - 1.0 - (2.0 * c - a - b - 1.0) * x) * gauss_2f1(a, b, c, x);
        const Cx t3 = (c - a) * (c - b) * x * gauss_2f1(a, b, c + 1.0, x);
        return std::abs(t1 + t2 + t3) / std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    };
    for (int k = 0; k < 150; ++k) {
        const double z = gen.real(0, 4), C = gen.real(2.1, 8.0), x = gen.real(-20.0, 0.97);
        const double c = double(gen.integer(2, 4));
        EXPECT_LT(residual({0.25, -z}, {0.25, z}, c, x), 1e-9);
        EXPECT_LT(residual({0.75, z}, {0.75, -z}, c, x), 1e-9);
        EXPECT_LT(residual(C + 0.5, C, c, x), 1e-9);
    }
}

TEST(Hypergeometric, NearOneContinuationMatchesConnectionFormula) {
    for (double x : {0.6, 0.8, 0.95, 0.99, 0.999})
        for (double C : {2.1, 3.7})
            EXPECT_LT(rel(gauss_2f1(C + 0.5, C, 1.0 + 0.3, x), gauss_2f1_linear(C + 0.5, C, 1.3, x)), 1e-10) << x;
}

TEST(SpectralParam, Parametrisations) {
    for (double tau : {0.0, 0.5, 2.0}) {
        const auto p = SpectralParam::from_tau(tau);
        EXPECT_DOUBLE_EQ(p.lambda(), -0.25 - tau * tau);
        EXPECT_NEAR(std::abs(p.s() - Cx(0.5, tau)), 0.0, 1e-15);
        const auto q = SpectralParam::from_lambda(p.lambda());
        EXPECT_NEAR(std::abs(q.s() - p.s()), 0.0, 1e-12);
    }
    for (double lambda : {-0.2, 0.0, 2.0, 6.0}) {
        const auto p = SpectralParam::from_lambda(lambda);
        EXPECT_NEAR(std::abs(p.s() * (p.s() - 1.0) - lambda), 0.0, 1e-12);
        EXPECT_GE(p.s().real(), 0.5);
    }
    EXPECT_TRUE(SpectralParam::flat().is_flat());
    EXPECT_NEAR(SpectralParam::from_lambda(2.0).s().real(), 2.0, 1e-15);
}

TEST(Kernel, EvaluationDecayDescription) {
    const auto p = KernelSpec::power(6.0, 2.0);
    EXPECT_DOUBLE_EQ(p(0.0), 1.0);
    EXPECT_NEAR(p(1.5), std::pow(4.0, -6.0), 1e-16);
    EXPECT_TRUE(p.decays_fast_enough());
    EXPECT_FALSE(KernelSpec::power(5.5, 1.0).decays_fast_enough());
    EXPECT_TRUE(KernelSpec::gaussian(1.0).decays_fast_enough());
    EXPECT_EQ(KernelSpec::zero()(3.0), 0.0);
    EXPECT_EQ(KernelSpec::zero().describe(), "zero");
    EXPECT_EQ(KernelSpec::gaussian(2.0).describe(), "gaussian:2");
    const auto s = KernelSpec::standard(6.0, -20, 5);
    ASSERT_NE(s.as_power(), nullptr);
    EXPECT_DOUBLE_EQ(s.as_power()->scale, 1.0);
    for (double r : {0.0, 0.3, 2.0}) EXPECT_NEAR(s(20.0 * r * (r + 1.0) / 5.0), std::pow(2.0 * r + 1.0, -12.0), 1e-15);
    EXPECT_THROW(KernelSpec::power(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(KernelSpec::power(3.0, -1.0), std::invalid_argument);
}

TEST(RadialEigenfunction, NormalisationAndFlatCase) {
    for (double tau : {0.0, 1.0, 3.0}) EXPECT_DOUBLE_EQ(g_lambda(0.0, SpectralParam::from_tau(tau)), 1.0);
    for (double r : {0.0, 0.7, 3.0, 9.0}) EXPECT_DOUBLE_EQ(g_lambda(r, SpectralParam::flat()), 1.0);
}

// g'' + coth(r) g' = lambda g, central differences with step 1e-3.
TEST(RadialEigenfunction, DifferentialEquationResidual) {
    for (double tau : {0.0, 0.5, 1.0})
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            const auto p = SpectralParam::from_tau(tau);
            auto g = [&](double x) { return g_lambda(x, p); };
            const double h = 1e-3;
            const double d2 = (g(r + h) - 2 * g(r) + g(r - h)) / (h * h), d1 = (g(r + h) - g(r - h)) / (2 * h);
            EXPECT_LE(std::abs(d2 + d1 / std::tanh(r) - p.lambda() * g(r)), 1e-6) << tau << " " << r;
        }
}

// Larger tau: the three-point stencil's own error h^2 lambda^2 g / 12 exceeds
// the target, so the fourth-order stencil is used.
TEST(RadialEigenfunction, DifferentialEquationResidualLargeSpectralParameter) {
    for (double tau : {2.0, 3.0, 5.0})
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            const auto p = SpectralParam::from_tau(tau);
            auto g = [&](double x) { return g_lambda(x, p); };
            const double res = oracle::d2(g, r, 1e-3) + oracle::d1(g, r, 1e-3) / std::tanh(r) - p.lambda() * g(r);
            EXPECT_LE(std::abs(res), 1e-6) << tau << " " << r;
        }
}

TEST(RadialCoefficient, QuadratureMatchesClosedForm) {
    for (double tau : {0.0, 0.5, 1.0, 2.0, 4.0})
        for (double C : {5.0, 6.0, 8.0}) {
            const auto p = SpectralParam::from_tau(tau);
            const double q = radial_coefficient_A(KernelSpec::standard(C, -4, 1), -4, 1, p);
            const double c = radial_coefficient_A_closed(C, p);
            EXPECT_LE(std::abs(q - c), 1e-8 * std::abs(c)) << tau << " " << C;
        }
    const auto p = SpectralParam::from_tau(1.0);
    EXPECT_NEAR(radial_coefficient_A(KernelSpec::standard(6.0, -20, 5), -20, 5, p), radial_coefficient_A_closed(6.0, p), 1e-10);
}

TEST(RadialCoefficient, ZeroKernelAndIntegrability) {
    EXPECT_EQ(radial_coefficient_A(KernelSpec::zero(), -4, 1, SpectralParam::from_tau(1.0)), 0.0);
    EXPECT_THROW(radial_coefficient_A(KernelSpec::power(0.9, 1.0), -4, 1, SpectralParam::from_lambda(2.0)), std::invalid_argument);
    EXPECT_THROW(radial_coefficient_A(KernelSpec::standard(6.0, 4, 1), 4, 1, SpectralParam::from_tau(1.0)), std::invalid_argument);
    EXPECT_NEAR(radial_coefficient_A(KernelSpec::standard(6.0, -4, 1), -4, 1, SpectralParam::from_lambda(2.0)), 0.1, 1e-9);
}

TEST(TTransform, AtZeroEqualsWeightIntegral) {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const GaussianChi chi{sigma};
        auto integrand = [&](double z) { return 4.0 * kPi * z * std::tanh(2.0 * kPi * z) * std::exp(-z * z / (sigma * sigma)); };
        const double expect = oracle::simpson(integrand, 0.0, 12.0 * sigma, 20000) / (2.0 * kPi);
        EXPECT_NEAR(T_transform(chi, 0.0), expect, 1e-10 * expect) << sigma;
    }
}

TEST(TTransform, StableUnderRefinedQuadrature) {
    const GaussianChi chi{1.0};
    for (double y : {0.0, 0.5, 1.0, 3.0, 15.0}) {
        const double a = T_transform(chi, y), b = T_transform(chi, y, {1e-13, 1e-12, 20000});
        EXPECT_LE(std::abs(a - b), 1e-8 * std::abs(b)) << y;
    }
}

// (1 + u)^3 T(u) stays below 100 on the sampled range; the local decay rate
// keeps steepening, so the bound is not a sampling artefact.
TEST(TTransform, CubicDecayProductBounded) {
    const GaussianChi chi{1.0};
    for (double u : {0.0, 1.0, 4.0, 16.0, 64.0}) EXPECT_LE(std::pow(1.0 + u, 3.0) * std::abs(T_transform(chi, u)), 100.0) << u;
    double prev_slope = 0.0;
    for (double u : {1.0, 4.0, 16.0, 64.0, 256.0}) {
        const double slope = std::log(T_transform(chi, 4.0 * u) / T_transform(chi, u)) / std::log(4.0);
        EXPECT_LT(slope, prev_slope) << u;
        prev_slope = slope;
    }
}

TEST(PairIntegral, SymmetryUnderSwap) {
    const auto m1 = KernelSpec::power(6.0, 1.0), m2 = KernelSpec::power(7.0, 0.5);
    for (double Phi : {1.2, 3.0})
        for (auto [t1, t2] : {std::pair{0.0, 1.0}, {0.5, -1.5}}) {
            const double a = L_pair_integral(t1, t2, Phi, m1, m2), b = L_pair_integral(t2, t1, Phi, m2, m1);
            EXPECT_LE(std::abs(a - b), 1e-9 * std::abs(a));
            EXPECT_GT(a, 0.0);
        }
}

TEST(PairIntegral, SemiClosedRouteAgrees) {
    for (double tau2 : {0.0, 1.0})
        for (double Phi : {1.05, 1.5, 3.0, 10.0}) {
            const auto m1 = KernelSpec::power(6.0, 1.0);
            const auto m2 = KernelSpec::power(6.0, 4.0 / (4.0 - tau2 * tau2));
            const QuadOptions fine{1e-300, 1e-10, 8000};  // values reach 1e-17 at large Phi
            const double a = L_pair_integral(0.5, tau2, Phi, m1, m2, fine), b = L_pair_semi_closed(0.5, Phi, m1, 6.0, fine);
            EXPECT_LE(std::abs(a - b), 1e-7 * std::abs(b)) << tau2 << " " << Phi;
        }
}

TEST(PairIntegral, RejectsPhiAtMostOne) {
    const auto m = KernelSpec::power(6.0, 1.0);
    EXPECT_THROW(L_pair_integral(0, 0, 1.0, m, m), std::invalid_argument);
    EXPECT_THROW(L_pair_integral(0, 0, 0.5, m, m), std::invalid_argument);
    EXPECT_THROW(L_pair_integral(2.5, 0, 2.0, m, m), std::invalid_argument);
}

TEST(HypergeometricPairing, GridAgreement) {
    for (double z : {0.0, 0.5, 1.0})
        for (double C : {2.0, 3.5})
            for (double Phi : {1.1, 2.0, 5.0}) {
                const double l = lemma41_lhs(z, C, Phi), r = lemma41_rhs(z, C, Phi);
                EXPECT_LE(std::abs(l - r), 1e-6 * std::abs(r)) << z << " " << C << " " << Phi;
            }
}

TEST(HypergeometricPairing, LimitAsPhiApproachesOne) {
    for (double z : {0.0, 1.0})
        for (double C : {2.0, 3.5}) {
            const double limit = (gamma(Cx(C - 0.25, z)) * gamma(Cx(C - 0.25, -z))).real() / (std::tgamma(C) * std::tgamma(C + 0.5));
            EXPECT_NEAR(lemma41_rhs(z, C, 1.0 + 1e-7), limit, 1e-5 * limit);
            EXPECT_NEAR(lemma41_lhs(z, C, 1.0 + 1e-7), limit, 1e-5 * limit);
        }
}

TEST(ThetaOde, InitialValuesAndFlatLimit) {
    for (double lambda : {-0.3, -5.0}) {
        const auto o = ode_pair_f_h(0.0, lambda);
        EXPECT_EQ(o.f, 1.0);
        EXPECT_EQ(o.h, 0.0);
        EXPECT_EQ(o.df, 0.0);
        EXPECT_EQ(o.dh, 1.0);
    }
    for (double th : {-1.0, 0.4, 1.3}) {
        const auto o = ode_pair_f_h(th, -1e-12);
        EXPECT_NEAR(o.f, 1.0, 1e-10);
        EXPECT_NEAR(o.h, th, 1e-10);
    }
}

TEST(ThetaOde, ParityOfSolutions) {
    for (double th : {0.2, 0.9, 1.4}) {
        const auto p = ode_pair_f_h(th, -3.0), m = ode_pair_f_h(-th, -3.0);
        EXPECT_DOUBLE_EQ(p.f, m.f);
        EXPECT_DOUBLE_EQ(p.h, -m.h);
        EXPECT_DOUBLE_EQ(p.df, -m.df);
        EXPECT_DOUBLE_EQ(p.dh, m.dh);
    }
}

TEST(ThetaOde, WronskianIsOne) {
    for (double lambda : {-5.0, -1.0, -20.0})
        for (double th : {0.3, 0.8, 1.2, -1.2}) {
            const auto o = ode_pair_f_h(th, lambda);
            EXPECT_LE(std::abs(o.f * o.dh - o.df * o.h - 1.0), 1e-8) << lambda << " " << th;
        }
}

// Fourth-order differences with step 1e-3: the stencil error stays below 1e-7 on this grid.
TEST(ThetaOde, DifferentialEquationResidual) {
    for (double lambda : {-5.0, -1.0, -20.0})
        for (double th : {0.3, 0.8, 1.2}) {
            auto f = [&](double t) { return ode_pair_f_h(t, lambda).f; };
            auto h = [&](double t) { return ode_pair_f_h(t, lambda).h; };
            const auto o = ode_pair_f_h(th, lambda);
            const double c2 = std::cos(th) * std::cos(th);
            EXPECT_LE(std::abs(oracle::d2(f, th, 1e-3) - lambda * o.f / c2), 1e-6) << lambda << " " << th;
            EXPECT_LE(std::abs(oracle::d2(h, th, 1e-3) - lambda * o.h / c2), 1e-6) << lambda << " " << th;
            EXPECT_LE(std::abs(oracle::d1(f, th, 1e-3) - o.df), 1e-6);
        }
}

TEST(ThetaOde, RejectsEndpointNeighbourhood) {
    EXPECT_THROW(ode_pair_f_h(kPi / 2 - 5e-4, -1.0), std::invalid_argument);
    EXPECT_THROW(ode_pair_f_h(-kPi / 2, -1.0), std::invalid_argument);
    EXPECT_NO_THROW(ode_pair_f_h(kPi / 2 - 2e-3, -1.0));
}

TEST(ThetaIntegral, ZeroKernelGivesZero) {
    EXPECT_EQ(std::abs(F_theorem12(5, 1, -1.0, KernelSpec::zero())), 0.0);
    EXPECT_EQ(F2_theta_integral(5, 1, -1.0, KernelSpec::zero()), 0.0);
}

TEST(ThetaIntegral, HalfRangeDoublingEqualsFullRange) {
    for (double lambda : {-1.0, -4.0}) {
        const auto m = KernelSpec::power(6.0, 1.0);
        const double half = theta_weight_integral(5, 1, lambda, m), full = theta_weight_integral(5, 1, lambda, m, {}, true);
        EXPECT_LE(std::abs(half - full), 1e-9 * std::abs(full));
    }
}

TEST(ThetaIntegral, StableUnderRefinedQuadrature) {
    const auto m = KernelSpec::power(6.0, 1.0);
    const double a = theta_weight_integral(5, 1, -1.0, m), b = theta_weight_integral(5, 1, -1.0, m, {1e-14, 1e-12, 20000});
    EXPECT_LE(std::abs(a - b), 1e-9 * std::abs(b));
}

TEST(ThetaIntegral, NormalisationsDifferByFixedFactor) {
    const Cx expected(0.0, -12.0 * std::sqrt(kPi));
    for (double lambda : {-0.5, -1.0, -7.0}) {
        const auto m = KernelSpec::power(6.0, 1.0);
        const Cx ratio = F_theorem12(5, 1, lambda, m) / F2_theta_integral(5, 1, lambda, m);
        EXPECT_LE(std::abs(ratio - expected), 1e-9 * std::abs(expected));
    }
}

TEST(PointPairH, UnitModulusAndCocycle) {
    EXPECT_NEAR(std::abs(point_pair_h({0, 1}, {0, 1}) - Cx(-1.0)), 0.0, 1e-15);
    oracle::Gen gen(67);
    for (int k = 0; k < 100; ++k) {
        const auto z = gen.point(), w = gen.point();
        const Cx h = point_pair_h(z, w);
        EXPECT_NEAR(std::abs(h), 1.0, 1e-14);
        double a = gen.real(-2, 2);
        if (std::abs(a) < 0.1) a = 1.0;
        const double b = gen.real(-2, 2), c = gen.real(-2, 2), d = (1.0 + b * c) / a;
        auto g = [&](Cx x) { return (a * x + b) / (c * x + d); };
        const UpperHalfPoint Tz(g(z.z())), Tw(g(w.z()));
        const Cx jz = c * z.z() + d, jw = c * w.z() + d;
        const Cx expect = std::pow(jw / std::abs(jw), 2.0) * std::pow(jz / std::abs(jz), -2.0);
        EXPECT_LT(std::abs(point_pair_h(Tz, Tw) / h - expect), 1e-10);
    }
}
