#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "shellmodes/mesh.hpp"
#include "shellmodes/quadrature.hpp"

using namespace shellmodes;

namespace {

const double ZB = 0.892668;
MeridianProfile barrel() { return MeridianProfile::polynomial({1.0, 0.0, -0.5}, -ZB, ZB); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ShellError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ShellError thrown";
    return ErrorCode::ConfigError;
}

}  // namespace

TEST(BuildUniform, FlatCylinderNodes) {
    const MeridianMesh m = build_uniform(MeridianProfile::cylinder(1, 2), 0.05, 2, 8, 1);
    ASSERT_EQ(m.nodes().size(), 27u);
    EXPECT_EQ(m.n_elements(), 16);
    double rmin = 1e9, rmax = -1e9, tmin = 1e9, tmax = -1e9;
    int lateral = 0, natural = 0;
    for (const MeshNode& n : m.nodes()) {
        rmin = std::min(rmin, n.r);
        rmax = std::max(rmax, n.r);
        tmin = std::min(tmin, n.tau);
        tmax = std::max(tmax, n.tau);
        if (n.tag == BoundaryTag::Lateral) {
            ++lateral;
            EXPECT_NEAR(std::abs(n.tau), 1.0, 1e-15);
        }
        if (n.tag == BoundaryTag::Natural) {
            ++natural;
            EXPECT_NEAR(std::abs(n.r - 1.0), 0.05, 1e-15);
        }
    }
    EXPECT_NEAR(rmin, 0.95, 1e-15);
    EXPECT_NEAR(rmax, 1.05, 1e-15);
    EXPECT_NEAR(tmin, -1.0, 1e-15);
    EXPECT_NEAR(tmax, 1.0, 1e-15);
    EXPECT_EQ(lateral, 6);
    EXPECT_EQ(natural, 14);
}

TEST(BuildUniform, CurvedBarrelJacobiansPositive) {
    const MeridianMesh m = build_uniform(barrel(), 0.005, 2, 8, 3);
    const QuadratureRule g = gauss_legendre(8);
    for (int i = 0; i < m.n_merid(); ++i)
        for (int j = 0; j < m.n_thick(); ++j)
            for (double xi : g.points)
                for (double eta : g.points) EXPECT_GT(m.map(i, j, xi, eta).jacobian(), 0.0);
    for (const MeshNode& n : m.nodes()) EXPECT_GT(n.r, 0.59);
}

TEST(BuildUniform, NodesLieOnShellMap) {
    // Geometric nodes interpolate the exact map; mid-element points are close
    // to it for q = 3.
    const auto p = barrel();
    const double eps = 0.01;
    const MeridianMesh m = build_uniform(p, eps, 2, 8, 3);
    const auto& tb = m.meridian_breaks();
    for (int i = 0; i < m.n_merid(); ++i) {
        const ElementMapPoint c = m.map(i, 1, 0.0, 0.3);
        const double t = 0.5 * (tb[i] + tb[i + 1]);
        const double x3 = m.thickness_breaks()[1] + 0.65 * (m.thickness_breaks()[2] - m.thickness_breaks()[1]);
        const MeridianPoint e = p.point(t, x3);
        EXPECT_NEAR(c.r, e.r, 1e-5);
        EXPECT_NEAR(c.tau, e.tau, 1e-5);
    }
}

TEST(BuildUniform, Errors) {
    EXPECT_EQ(code_of([] { build_uniform(barrel(), 0.8, 2, 8, 3); }), ErrorCode::InvalidThickness);
    EXPECT_EQ(code_of([] { build_uniform(barrel(), 0.01, 0, 8, 3); }), ErrorCode::InvalidGeometry);
    EXPECT_EQ(code_of([] { build_uniform(barrel(), 0.01, 2, 8, 4); }), ErrorCode::InvalidGeometry);
}

TEST(BuildUniform, MirrorSymmetric) {
    const MeridianMesh m = build_uniform(barrel(), 0.01, 2, 8, 3);
    const auto& b = m.meridian_breaks();
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], -b[b.size() - 1 - i]);
    for (const MeshNode& n : m.nodes()) {
        double best = 1e9;
        for (const MeshNode& o : m.nodes()) best = std::min(best, std::hypot(o.r - n.r, o.tau + n.tau));
        EXPECT_LT(best, 1e-13);
    }
}

TEST(RefineBoundaryLayers, AddsEightLines) {
    const MeridianMesh u = build_uniform(MeridianProfile::cylinder(1, 2), 0.01, 2, 8, 3);
    const MeridianMesh r = refine_boundary_layers(u, 0.01);
    EXPECT_EQ(r.n_merid(), 16);
    EXPECT_EQ(r.n_thick(), 2);
    const auto& b = r.meridian_breaks();
    EXPECT_EQ(b.front(), -1.0);
    EXPECT_EQ(b.back(), 1.0);
    const double expect[4] = {0.01, 0.0316227766, 0.1, 0.316227766};
    for (double d : expect) {
        const auto near = [&](double x) {
            return std::any_of(b.begin(), b.end(), [&](double y) { return std::abs(y - x) < 1e-9; });
        };
        EXPECT_TRUE(near(-1.0 + d)) << d;
        EXPECT_TRUE(near(1.0 - d)) << d;
    }
    for (double x : u.meridian_breaks())
        EXPECT_TRUE(std::find(b.begin(), b.end(), x) != b.end()) << "original break moved: " << x;
}

TEST(RefineBoundaryLayers, LargeEpsStillOrdered) {
    const auto p = barrel();
    EXPECT_NEAR(p.parameter_length(), 1.785336, 1e-6);
    const MeridianMesh r = refine_boundary_layers(build_uniform(p, 0.25, 2, 8, 3), 0.25);
    const auto& b = r.meridian_breaks();
    for (std::size_t i = 1; i < b.size(); ++i) EXPECT_GT(b[i], b[i - 1]);
    EXPECT_NE(std::find(b.begin(), b.end(), b.front() + 0.25), b.end());
    EXPECT_NE(std::find(b.begin(), b.end(), b.back() - 0.25), b.end());
}

TEST(RefineBoundaryLayers, Collision) {
    const MeridianMesh u = build_uniform(barrel(), 0.01, 2, 8, 3);
    EXPECT_EQ(code_of([&] { refine_boundary_layers(u, 0.9); }), ErrorCode::LayerCollision);
}

TEST(RefineBoundaryLayers, AreaPreserved) {
    // Union of element closures covers the domain: the area integral of the
    // refined mesh matches the uniform one.
    const MeridianMesh u = build_uniform(barrel(), 0.02, 2, 8, 3);
    const MeridianMesh r = refine_boundary_layers(u, 0.02);
    const QuadratureRule g = gauss_legendre(8);
    auto area = [&](const MeridianMesh& m) {
        double a = 0.0;
        for (int i = 0; i < m.n_merid(); ++i)
            for (int j = 0; j < m.n_thick(); ++j)
                for (std::size_t x = 0; x < g.points.size(); ++x)
                    for (std::size_t y = 0; y < g.points.size(); ++y)
                        a += g.weights[x] * g.weights[y] * m.map(i, j, g.points[x], g.points[y]).jacobian();
        return a;
    };
    EXPECT_NEAR(area(r), area(u), 1e-7 * area(u));
}

TEST(MeshDump, Columns) {
    const MeridianMesh m = build_uniform(MeridianProfile::cylinder(1, 2), 0.05, 1, 1, 1);
    std::ostringstream os;
    m.dump(os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# id r tau tag");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 4);
}
