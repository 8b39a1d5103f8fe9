#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shellmodes/geometry.hpp"
#include "shellmodes/operators.hpp"

using namespace shellmodes;

namespace {

const MaterialParams steel{};
const double ER = steel.E / steel.rho;
const double ZB = 0.892668;

MeridianProfile barrel() { return MeridianProfile::polynomial({1.0, 0.0, -0.5}, -ZB, ZB); }

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const ShellError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ShellError thrown";
    return ErrorCode::ConfigError;
}

}  // namespace

TEST(ProfileEval, CylinderIsConstant) {
    const auto c = MeridianProfile::cylinder(1.0, 2.0);
    for (double z : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        const ProfileValues v = profile_eval(c, z);
        EXPECT_EQ(v.f, 1.0);
        EXPECT_EQ(v.df, 0.0);
        EXPECT_EQ(v.d2f, 0.0);
        EXPECT_EQ(v.s, 1.0);
    }
}

TEST(ProfileEval, BarrelValues) {
    const auto b = barrel();
    ProfileValues v = profile_eval(b, 0.0);
    EXPECT_DOUBLE_EQ(v.f, 1.0);
    EXPECT_DOUBLE_EQ(v.df, 0.0);
    EXPECT_DOUBLE_EQ(v.d2f, -1.0);
    EXPECT_DOUBLE_EQ(v.s, 1.0);
    v = profile_eval(b, ZB);
    EXPECT_NEAR(v.f, 0.601572, 1e-6);
    EXPECT_NEAR(v.df, -0.892668, 1e-12);
    EXPECT_NEAR(v.s * v.s, 1.796856, 1e-6);
}

TEST(ProfileEval, OutOfInterval) {
    EXPECT_EQ(code_of([] { profile_eval(barrel(), 0.95); }), ErrorCode::OutOfInterval);
    EXPECT_EQ(code_of([] { profile_eval(MeridianProfile::cylinder(1, 2), -1.01); }), ErrorCode::OutOfInterval);
    EXPECT_EQ(code_of([] { profile_eval(MeridianProfile::ring_plate(1, 2), 1.5); }), ErrorCode::NotApplicable);
}

TEST(ProfileConstruction, Validation) {
    EXPECT_EQ(code_of([] { MeridianProfile::cylinder(0.0, 2.0); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { MeridianProfile::ring_plate(2.0, 1.0); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { MeridianProfile::polynomial({1.0, 0.0, -0.5}, 0.5, 0.5); }), ErrorCode::InvalidGeometry);
    // f = 1 - z^2 touches the axis at z = 1.
    EXPECT_EQ(code_of([] { MeridianProfile::polynomial({1.0, 0.0, -1.0}, -1.0, 1.0); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { MeridianProfile::polynomial({1.0, NAN}, -1.0, 1.0); }), ErrorCode::NonSmooth);
    EXPECT_EQ(code_of([] { MeridianProfile::polynomial({0.0}, -1.0, 1.0); }), ErrorCode::NonSmooth);
}

TEST(Embed, Examples) {
    const auto b = barrel();
    auto t = embed(b, 0.0, 0.0, 0.0);
    EXPECT_NEAR(t[0], 1.0, 1e-15);
    EXPECT_NEAR(t[1], 0.0, 1e-15);
    EXPECT_NEAR(t[2], 0.0, 1e-15);
    t = embed(b, 0.0, 0.0, 0.05);
    EXPECT_NEAR(t[0], 1.05, 1e-15);
    EXPECT_NEAR(t[1], 0.0, 1e-15);
    EXPECT_NEAR(t[2], 0.0, 1e-15);
    t = embed(b, 0.5, std::numbers::pi / 2, 0.0);
    EXPECT_NEAR(t[0], 0.0, 1e-15);
    EXPECT_NEAR(t[1], 0.875, 1e-15);
    EXPECT_NEAR(t[2], 0.5, 1e-15);
}

TEST(Embed, InjectivityBound) {
    const auto b = barrel();
    const double bound = b.max_half_thickness();
    EXPECT_GT(bound, 0.5);
    EXPECT_LT(bound, 0.9);
    EXPECT_EQ(code_of([&] { embed(b, 0.0, 0.0, 1.01 * bound); }), ErrorCode::InvalidThickness);
    EXPECT_EQ(code_of([&] { b.check_thickness(bound * 1.01); }), ErrorCode::InvalidThickness);
    EXPECT_EQ(code_of([&] { b.check_thickness(0.0); }), ErrorCode::InvalidThickness);
    EXPECT_NO_THROW(b.check_thickness(0.25));
    // Cylinder R = 1: azimuthal curvature 1.
    EXPECT_NEAR(MeridianProfile::cylinder(1, 2).max_half_thickness(), 0.9, 1e-15);
}

TEST(Embed, NormalOffsetIsDistanceToMeridian) {
    // Project the offset point back onto the meridian r = f(z) by minimizing
    // the distance over z, independently of the embedding formula.
    const auto b = barrel();
    const auto& f = std::get<PolynomialSpec>(b.kind()).f;
    for (double z : {-0.8, -0.3, 0.1, 0.6, 0.85}) {
        for (double x3 : {-0.01, 0.004, 0.02}) {
            const auto t = embed(b, z, 0.3, x3);
            const double r = std::hypot(t[0], t[1]);
            double lo = std::max(-ZB, z - 0.1), hi = std::min(ZB, z + 0.1);
            auto d2 = [&](double w) { return std::pow(r - f(w), 2) + std::pow(t[2] - w, 2); };
            for (int it = 0; it < 200; ++it) {
                const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                if (d2(m1) < d2(m2)) hi = m2;
                else lo = m1;
            }
            EXPECT_NEAR(std::sqrt(d2(0.5 * (lo + hi))), std::abs(x3), 1e-12 * (1 + std::abs(x3))) << z << ' ' << x3;
        }
    }
}

TEST(H0, Examples) {
    EXPECT_EQ(h0(MeridianProfile::cylinder(1, 2), 0.3, steel), 0.0);
    EXPECT_DOUBLE_EQ(h0(barrel(), 0.0, steel), ER);
    EXPECT_NEAR(h0(barrel(), ZB, steel) / ER, 0.17237, 1e-5);
    EXPECT_NEAR(h0(barrel(), -ZB, steel) / ER, 0.17237, 1e-5);
}

TEST(H0, NonNegativeAndDerivativeMatchesDifferences) {
    const auto p = MeridianProfile::polynomial({2.0, 0.1, -1.0, 0.05, -2.0}, -0.5, 0.5);
    for (int i = 0; i <= 20; ++i) {
        const double z = -0.45 + 0.045 * i;
        EXPECT_GE(h0(p, z, steel), 0.0);
        const double d = 1e-5;
        const double fd = (h0(p, z + d, steel) - h0(p, z - d, steel)) / (2 * d);
        EXPECT_NEAR(h0_derivative(p, z, steel), fd, 1e-7 * ER);
    }
}

TEST(GB0, Examples) {
    GB0 c = g_b0(MeridianProfile::cylinder(1, 2), 0.0, steel);
    EXPECT_EQ(c.g, 0.0);
    EXPECT_DOUBLE_EQ(c.B0, ER / (3 * (1 - 0.09)));
    c = g_b0(barrel(), ZB, steel);
    EXPECT_NEAR(c.g / ER, 0.13795, 1e-5);
    EXPECT_NEAR(c.B0 / ER, 2.7970, 1e-4);
    EXPECT_GT(c.g, 0.0);
    EXPECT_GT(c.B0, 0.0);
    c = g_b0(barrel(), 0.0, steel);
    EXPECT_NEAR(c.g, 0.0, 1e-12 * ER);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(MeridianProfile::cylinder(1, 2), steel).tag, ShellTag::Cylinder);
    EXPECT_EQ(classify(MeridianProfile::ring_plate(1, 2), steel).tag, ShellTag::Plate);
    const ShellClass b = classify(barrel(), steel);
    EXPECT_EQ(b.tag, ShellTag::EllipticAiry);
    ASSERT_EQ(b.z0.size(), 2u);
    EXPECT_DOUBLE_EQ(b.z0[0], -ZB);
    EXPECT_DOUBLE_EQ(b.z0[1], ZB);
    EXPECT_NEAR(b.h0_min / ER, 0.17237, 1e-5);
    EXPECT_EQ(classify(MeridianProfile::polynomial({1.0, 0, 0, 0, -1.0}, -0.5, 0.5), steel).tag, ShellTag::Degenerate);
}

TEST(Classify, OtherClasses) {
    EXPECT_EQ(classify(MeridianProfile::polynomial({1.0}, -1, 1), steel).tag, ShellTag::Cylinder);
    EXPECT_EQ(classify(MeridianProfile::polynomial({1.0, 0.2}, -1, 1), steel).tag, ShellTag::Cone);
    EXPECT_EQ(classify(MeridianProfile::polynomial({1.0, 0.0, 0.5}, -1, 1), steel).tag, ShellTag::Hyperbolic);
    // f'' = -2 - 24 z^2: |f''| grows faster than s^3, so H0 is smallest at z = 0.
    const ShellClass g = classify(MeridianProfile::polynomial({2.0, 0.0, -1.0, 0.0, -2.0}, -0.2, 0.2), steel);
    EXPECT_EQ(g.tag, ShellTag::EllipticGaussian);
    ASSERT_EQ(g.z0.size(), 1u);
    EXPECT_NEAR(g.z0[0], 0.0, 1e-12);
    EXPECT_NEAR(g.h0_min, 4.0 * ER, 1e-9 * ER);
    // f'' changes sign inside the interval.
    EXPECT_EQ(classify(MeridianProfile::polynomial({2.0, 0.0, 0.0, 0.3}, -0.5, 0.5), steel).tag, ShellTag::Degenerate);
}

TEST(Classify, ReflectionInvariance) {
    const auto p = MeridianProfile::polynomial({1.0, 0.3, -0.5}, -0.6, 0.8);
    const auto q = MeridianProfile::polynomial({1.0, -0.3, -0.5}, -0.8, 0.6);
    const ShellClass a = classify(p, steel), b = classify(q, steel);
    EXPECT_EQ(a.tag, b.tag);
    ASSERT_EQ(a.z0.size(), b.z0.size());
    for (std::size_t i = 0; i < a.z0.size(); ++i) EXPECT_NEAR(a.z0[i], -b.z0[b.z0.size() - 1 - i], 1e-12);
    EXPECT_NEAR(a.h0_min, b.h0_min, 1e-12 * ER);
}

TEST(MembraneLimit, Examples) {
    EXPECT_EQ(membrane_limit(classify(MeridianProfile::cylinder(1, 2), steel)), 0.0);
    EXPECT_EQ(membrane_limit(classify(MeridianProfile::polynomial({1.0, 0.2}, -1, 1), steel)), 0.0);
    EXPECT_NEAR(membrane_limit(classify(barrel(), steel)) / ER, 0.17237, 1e-5);
    EXPECT_EQ(code_of([] { membrane_limit(classify(MeridianProfile::ring_plate(1, 2), steel)); }), ErrorCode::NotApplicable);
}
