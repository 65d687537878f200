#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qfkit/qf.hpp"

using namespace qfkit;

namespace {

std::vector<Int> negative_discriminants(Int lo) {
    std::vector<Int> out;
    for (Int d = -3; d >= lo; --d)
        if (mod_pos(d, 4) <= 1) out.push_back(d);
    return out;
}

}  // namespace

TEST(Discriminant, MatchesDirectFormula) {
    EXPECT_EQ(discriminant({1, 0, 1}), -4);
    EXPECT_EQ(discriminant({1, 1, 1}), -3);
    EXPECT_EQ(discriminant({2, 1, 3}), -23);
}

TEST(Discriminant, OverflowIsReported) {
    const Int big = Int(1) << 40;
    EXPECT_THROW(discriminant({big, big, big}), std::overflow_error);
}

TEST(UnimodularMatrix, RejectsDeterminantOtherThanOne) {
    EXPECT_THROW(UnimodularMatrix(2, 0, 0, 1), std::invalid_argument);
    EXPECT_NO_THROW(UnimodularMatrix(2, 1, 1, 1));
}

TEST(UpperHalfPoint, RejectsNonpositiveImaginaryPart) {
    EXPECT_THROW(UpperHalfPoint(0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(UpperHalfPoint(1.0, -1.0), std::invalid_argument);
}

TEST(Act, IdentityAndTranslation) {
    EXPECT_EQ(act({1, 0, 1}, UnimodularMatrix::identity()), (BinaryQF{1, 0, 1}));
    EXPECT_EQ(act({1, 0, 1}, UnimodularMatrix::T()), (BinaryQF{1, 2, 2}));
}

TEST(Act, PreservesDiscriminantOnRandomPairs) {
    oracle::Gen gen(11);
    for (int k = 0; k < 500; ++k) {
        const BinaryQF q{gen.integer(-20, 20), gen.integer(-20, 20), gen.integer(-20, 20)};
        EXPECT_EQ(discriminant(act(q, gen.unimodular())), discriminant(q));
    }
}

TEST(Act, IsARightAction) {
    oracle::Gen gen(12);
    for (int k = 0; k < 200; ++k) {
        const BinaryQF q = gen.definite_form();
        const auto s = gen.unimodular(5), t = gen.unimodular(5);
        EXPECT_EQ(act(act(q, s), t), act(q, s * t));
    }
}

TEST(Reduce, ExamplesIncludingNegativeDefinite) {
    const auto r = reduce_definite({1, 2, 2});
    EXPECT_EQ(r.form, (BinaryQF{1, 0, 1}));
    EXPECT_EQ(act(BinaryQF{1, 2, 2}, r.tau), r.form);
    EXPECT_EQ(act(BinaryQF{1, 2, 2}, UnimodularMatrix(1, -1, 0, 1)), (BinaryQF{1, 0, 1}));

    const auto id = reduce_definite({1, 0, 1});
    EXPECT_EQ(id.form, (BinaryQF{1, 0, 1}));
    EXPECT_EQ(act(BinaryQF{1, 0, 1}, id.tau), id.form);

    const auto neg = reduce_definite({-1, -2, -2});
    EXPECT_EQ(neg.form, (BinaryQF{-1, 0, -1}));
    EXPECT_EQ(act(BinaryQF{-1, -2, -2}, neg.tau), neg.form);
}

TEST(Reduce, RejectsIndefiniteAndDegenerate) {
    EXPECT_THROW(reduce_definite({1, 3, 1}), std::invalid_argument);
    EXPECT_THROW(reduce_definite({1, 2, 1}), std::invalid_argument);
}

TEST(Reduce, OutputIsReducedAndTransportsInput) {
    oracle::Gen gen(13);
    for (int k = 0; k < 500; ++k) {
        const BinaryQF q = gen.definite_form(30);
        const auto r = reduce_definite(q);
        EXPECT_EQ(act(q, r.tau), r.form);
        EXPECT_TRUE(is_reduced(r.form));
        const BinaryQF pos = r.form.a > 0 ? r.form : -r.form;
        EXPECT_LE(std::abs(pos.b), pos.a);
        EXPECT_LE(pos.a, pos.c);
        if (std::abs(pos.b) == pos.a || pos.a == pos.c) EXPECT_GE(pos.b, 0);
    }
}

TEST(Reduce, CanonicalFormIsConstantOnOrbits) {
    oracle::Gen gen(14);
    for (int k = 0; k < 500; ++k) {
        const BinaryQF q = gen.definite_form(15);
        EXPECT_EQ(reduce_definite(act(q, gen.unimodular(10))).form, reduce_definite(q).form);
    }
}

TEST(ClassRepresentatives, SmallDiscriminants) {
    EXPECT_EQ(class_representatives(-3), (std::vector<BinaryQF>{{1, 1, 1}, {-1, -1, -1}}));
    EXPECT_EQ(class_representatives(-4), (std::vector<BinaryQF>{{1, 0, 1}, {-1, 0, -1}}));
    const auto r20 = class_representatives(-20);
    const std::set<BinaryQF> got(r20.begin(), r20.end());
    EXPECT_EQ(got, (std::set<BinaryQF>{{1, 0, 5}, {2, 2, 3}, {-1, 0, -5}, {-2, -2, -3}}));
}

TEST(ClassRepresentatives, MatchExhaustiveSearchOfReducedForms) {
    for (Int d : negative_discriminants(-500)) {
        auto expect = oracle::reduced_forms(d);
        const std::size_t npos = expect.size();
        for (std::size_t i = 0; i < npos; ++i) expect.push_back(-expect[i]);
        auto got = class_representatives(d);
        ASSERT_EQ(got.size(), expect.size()) << "delta " << d;
        EXPECT_EQ(std::set<BinaryQF>(got.begin(), got.end()), std::set<BinaryQF>(expect.begin(), expect.end())) << d;
    }
}

TEST(ClassRepresentatives, RejectInvalidDiscriminants) {
    EXPECT_THROW(class_representatives(0), std::invalid_argument);
    EXPECT_THROW(class_representatives(5), std::invalid_argument);
    EXPECT_THROW(class_representatives(-5), std::invalid_argument);
    EXPECT_THROW(class_representatives(-6), std::invalid_argument);
}

TEST(ClassRepresentatives, EveryFormReducesToExactlyOneEntry) {
    oracle::Gen gen(15);
    for (Int d : {-3, -4, -15, -20, -23, -47, -84}) {
        const auto reps = class_representatives(d);
        const std::set<BinaryQF> rs(reps.begin(), reps.end());
        for (int k = 0; k < 60; ++k) {
            const BinaryQF q = gen.form_of_discriminant(d);
            EXPECT_EQ(rs.count(reduce_definite(q).form), 1u) << d;
        }
    }
}

TEST(RootPoint, ExamplesAndResidual) {
    EXPECT_NEAR(root_point({1, 0, 1}).x(), 0.0, 1e-15);
    EXPECT_NEAR(root_point({1, 0, 1}).y(), 1.0, 1e-15);
    EXPECT_NEAR(root_point({1, 1, 1}).x(), -0.5, 1e-15);
    EXPECT_NEAR(root_point({1, 1, 1}).y(), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(root_point({-1, 0, -1}).y(), 1.0, 1e-15);
    oracle::Gen gen(16);
    for (int k = 0; k < 300; ++k) {
        const BinaryQF q = gen.definite_form(50);
        const auto z = root_point(q).z();
        EXPECT_GT(z.imag(), 0.0);
        const double res = std::abs(double(q.a) * z * z + double(q.b) * z + double(q.c));
        EXPECT_LE(res, 1e-12 * double(std::abs(q.a) + std::abs(q.b) + std::abs(q.c)));
    }
    EXPECT_THROW(root_point({1, 3, 1}), std::invalid_argument);
}

TEST(StabilizerOrder, ExamplesAndBruteForce) {
    EXPECT_EQ(stabilizer_order({1, 0, 1}), 2);
    EXPECT_EQ(stabilizer_order({1, 1, 1}), 3);
    EXPECT_EQ(stabilizer_order({1, 0, 2}), 1);
    for (Int d : negative_discriminants(-200))
        for (const auto& q : class_representatives(d)) {
            EXPECT_EQ(stabilizer_order(q), oracle::stabilizer_order(root_point(q).z())) << d;
            EXPECT_EQ(int(automorphs(q).size()), stabilizer_order(q));
            for (const auto& g : automorphs(q)) EXPECT_EQ(act(q, g), q);
        }
}

TEST(GammaForm, ExamplesAndRoundTrip) {
    EXPECT_EQ(gamma_to_form({0, -1, 1, 0}), (BinaryQF{1, 0, 1}));
    EXPECT_EQ(gamma_to_form({0, -1, 1, 1}), (BinaryQF{1, 1, 1}));
    oracle::Gen gen(17);
    for (int k = 0; k < 300; ++k) {
        const Int n = gen.integer(1, 6), t = gen.integer(-4, 4);
        if (t * t - 4 * n >= 0) continue;
        const BinaryQF q = gen.form_of_discriminant(t * t - 4 * n);
        const IntegerMatrix g = form_to_gamma(q, n, t);
        EXPECT_TRUE(g.in_gamma(n, t));
        EXPECT_EQ(gamma_to_form(g), q);
        EXPECT_EQ(form_to_gamma(gamma_to_form(g), n, t), g);
    }
    EXPECT_THROW(form_to_gamma({1, 0, 1}, 1, 1), std::invalid_argument);
}

// Pinned convention: conjugating gamma by tau corresponds to acting on the form by tau.
TEST(GammaForm, ConjugationMatchesRightAction) {
    oracle::Gen gen(18);
    int checked = 0;
    while (checked < 100) {
        const Int n = gen.integer(1, 5), t = gen.integer(-3, 3);
        if (t * t - 4 * n >= 0) continue;
        const BinaryQF q = gen.form_of_discriminant(t * t - 4 * n, 6);
        const IntegerMatrix g = form_to_gamma(q, n, t);
        const UnimodularMatrix tau = gen.unimodular(6);
        const IntegerMatrix conj = to_integer_matrix(tau.inverse()) * g * to_integer_matrix(tau);
        EXPECT_EQ(gamma_to_form(conj), act(gamma_to_form(g), tau));
        ++checked;
    }
}

TEST(PointPairU, ExamplesSymmetryInvariance) {
    EXPECT_DOUBLE_EQ(point_pair_u({0, 1}, {0, 1}), 0.0);
    EXPECT_NEAR(point_pair_u({0, 1}, {0, 2}), 0.125, 1e-16);
    oracle::Gen gen(19);
    for (int k = 0; k < 200; ++k) {
        const auto z = gen.point(), w = gen.point();
        const double u = point_pair_u(z, w);
        EXPECT_GE(u, 0.0);
        EXPECT_DOUBLE_EQ(u, point_pair_u(w, z));
        const double a = gen.real(-2, 2), b = gen.real(-2, 2), c = gen.real(0.3, 2);
        const double d = (1.0 + b * c) / a;
        const UpperHalfPoint gz(mobius(a, b, c, d, z.z())), gw(mobius(a, b, c, d, w.z()));
        EXPECT_NEAR(point_pair_u(gz, gw), u, 1e-9 * (1.0 + u));
    }
}

TEST(PointPairU, ConjugateDistanceIdentity) {
    oracle::Gen gen(20);
    for (int k = 0; k < 200; ++k) {
        const auto z = gen.point(), w = gen.point();
        const double lhs = std::norm(w.z() - std::conj(z.z()));
        const double rhs = std::norm(w.z() - z.z()) + 4.0 * z.y() * w.y();
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + lhs));
    }
}

TEST(OrbitCount, FixedPointExamples) {
    EXPECT_EQ(count_orbit_points(1, 0, {0, 1}, 0.0), 2);
    EXPECT_EQ(count_orbit_points(1, 1, {0, 1}, 0.0), 0);
    EXPECT_THROW(count_orbit_points(1, 2, {0, 1}, 1.0), std::invalid_argument);
}

TEST(OrbitCount, MonotoneInRadius) {
    oracle::Gen gen(21);
    for (int k = 0; k < 20; ++k) {
        const auto z = gen.point(0.5, 0.8, 2.0);
        Int prev = 0;
        for (double X : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
            const Int c = count_orbit_points(2, 1, z, X);
            EXPECT_GE(c, prev);
            prev = c;
        }
    }
}

TEST(OrbitCount, MatchesExhaustiveBoxSearch) {
    oracle::Gen gen(22);
    for (int k = 0; k < 12; ++k) {
        const auto z = gen.point(0.5, 0.8, 1.6);
        for (auto [n, t] : {std::pair<Int, Int>{1, 0}, {1, 1}, {2, 1}, {3, 0}}) {
            for (double X : {1.0, 10.0}) {
                const Int expect = oracle::orbit_count(n, t, z.z(), X, 40);
                EXPECT_EQ(expect, oracle::orbit_count(n, t, z.z(), X, 60));  // the box is large enough
                EXPECT_EQ(count_orbit_points(n, t, z, X), expect);
                EXPECT_EQ(Int(orbit_points(n, t, z, X).size()), expect);
            }
        }
    }
}

// The count grows like X^{1/2}; X^{0.6} normalisation stays below a pinned bound.
TEST(OrbitCount, GrowthBoundedByPowerOfRadius) {
    for (const UpperHalfPoint z : {UpperHalfPoint(0.1, 1.3), UpperHalfPoint(0.0, 1.0), UpperHalfPoint(0.3, 2.0)})
        for (auto [n, t] : {std::pair<Int, Int>{1, 0}, {2, 1}})
            for (double X : {1.0, 4.0, 16.0, 64.0, 256.0}) EXPECT_LE(double(count_orbit_points(n, t, z, X)) / std::pow(X, 0.6), 16.0);
}
