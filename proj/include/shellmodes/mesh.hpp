#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "shellmodes/error.hpp"
#include "shellmodes/geometry.hpp"
#include "shellmodes/quadrature.hpp"

namespace shellmodes {

enum class BoundaryTag { Interior, Lateral, Natural };

inline const char* to_string(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::Interior: return "interior";
        case BoundaryTag::Lateral: return "lateral";
        case BoundaryTag::Natural: return "natural";
    }
    return "?";
}

struct MeshNode {
    double r;
    double tau;
    BoundaryTag tag;
};

/// Position and reference-to-physical derivatives at one point of an element.
struct ElementMapPoint {
    double r, tau;
    double r_xi, r_eta;
    double tau_xi, tau_eta;
    /// det d(tau, r)/d(xi, eta); positive for a correctly oriented element.
    double jacobian() const { return tau_xi * r_eta - tau_eta * r_xi; }
};

/// Structured quadrilateral mesh of the meridian domain.
///
/// Elements are tensor products of meridian breakpoints (curve parameter t)
/// and thickness breakpoints (normal offset x3). Each element carries a
/// degree-q isoparametric map that interpolates the exact shell map at
/// Gauss-Lobatto points. xi runs along the meridian, eta across the
/// thickness. The two meridian ends are the lateral (Dirichlet) boundary.
class MeridianMesh {
public:
    MeridianMesh(MeridianProfile profile, double eps, std::vector<double> t_breaks, std::vector<double> x3_breaks,
                 int geo_degree)
        : profile_(std::move(profile)),
          eps_(eps),
          t_breaks_(std::move(t_breaks)),
          x3_breaks_(std::move(x3_breaks)),
          q_(geo_degree),
          geo_basis_(gauss_lobatto_points(geo_degree)) {
        if (q_ < 1 || q_ > 3) throw ShellError(ErrorCode::InvalidGeometry, "geometric degree must be 1, 2 or 3");
        profile_.check_thickness(eps_);
        build_nodes();
        check_jacobians();
    }

    const MeridianProfile& profile() const { return profile_; }
    double eps() const { return eps_; }
    int geo_degree() const { return q_; }
    int n_merid() const { return static_cast<int>(t_breaks_.size()) - 1; }
    int n_thick() const { return static_cast<int>(x3_breaks_.size()) - 1; }
    int n_elements() const { return n_merid() * n_thick(); }
    const std::vector<double>& meridian_breaks() const { return t_breaks_; }
    const std::vector<double>& thickness_breaks() const { return x3_breaks_; }
    const std::vector<MeshNode>& nodes() const { return nodes_; }

    /// Geometric node ids of element (i along meridian, j across thickness),
    /// tensor ordered with the meridian index fastest.
    std::vector<int> element_nodes(int i, int j) const {
        std::vector<int> ids;
        ids.reserve((q_ + 1) * (q_ + 1));
        for (int b = 0; b <= q_; ++b)
            for (int a = 0; a <= q_; ++a) ids.push_back(node_id(i * q_ + a, j * q_ + b));
        return ids;
    }

    /// Isoparametric map of element (i, j) at reference point (xi, eta) in [-1, 1]^2.
    ElementMapPoint map(int i, int j, double xi, double eta) const {
        std::vector<double> vx, dx, ve, de;
        geo_basis_.eval(xi, vx, dx);
        geo_basis_.eval(eta, ve, de);
        ElementMapPoint m{};
        for (int b = 0; b <= q_; ++b) {
            for (int a = 0; a <= q_; ++a) {
                const MeshNode& n = nodes_[node_id(i * q_ + a, j * q_ + b)];
                const double w = vx[a] * ve[b];
                m.r += w * n.r;
                m.tau += w * n.tau;
                m.r_xi += dx[a] * ve[b] * n.r;
                m.tau_xi += dx[a] * ve[b] * n.tau;
                m.r_eta += vx[a] * de[b] * n.r;
                m.tau_eta += vx[a] * de[b] * n.tau;
            }
        }
        return m;
    }

    /// Debug listing: one line per geometric node, columns id r tau tag.
    void dump(std::ostream& os) const {
        os << "# id r tau tag\n";
        os.precision(17);
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            os << i << ' ' << nodes_[i].r << ' ' << nodes_[i].tau << ' ' << to_string(nodes_[i].tag) << '\n';
    }

private:
    int nodes_across() const { return n_thick() * q_ + 1; }
    int node_id(int im, int it) const { return im * nodes_across() + it; }

    static double sub_point(const std::vector<double>& breaks, int e, double ref) {
        return breaks[e] + 0.5 * (ref + 1.0) * (breaks[e + 1] - breaks[e]);
    }

    void build_nodes() {
        if (n_merid() < 1 || n_thick() < 1) throw ShellError(ErrorCode::InvalidGeometry, "mesh needs at least one element");
        for (std::size_t i = 1; i < t_breaks_.size(); ++i)
            if (!(t_breaks_[i] > t_breaks_[i - 1])) throw ShellError(ErrorCode::InvalidGeometry, "meridian breaks not increasing");
        for (std::size_t i = 1; i < x3_breaks_.size(); ++i)
            if (!(x3_breaks_[i] > x3_breaks_[i - 1])) throw ShellError(ErrorCode::InvalidGeometry, "thickness breaks not increasing");

        const auto& ref = geo_basis_.nodes();
        const int along = n_merid() * q_ + 1;
        nodes_.resize(static_cast<std::size_t>(along) * nodes_across());
        for (int im = 0; im < along; ++im) {
            const int ei = std::min(im / q_, n_merid() - 1);
            const double t = sub_point(t_breaks_, ei, ref[im - ei * q_]);
            for (int it = 0; it < nodes_across(); ++it) {
                const int ej = std::min(it / q_, n_thick() - 1);
                const double x3 = sub_point(x3_breaks_, ej, ref[it - ej * q_]);
                const MeridianPoint p = profile_.point(t, x3);
                BoundaryTag tag = BoundaryTag::Interior;
                if (im == 0 || im == along - 1) tag = BoundaryTag::Lateral;
                else if (it == 0 || it == nodes_across() - 1) tag = BoundaryTag::Natural;
                if (!(p.r > 0.0)) throw ShellError(ErrorCode::InvalidThickness, "mesh node on or across the axis");
                nodes_[node_id(im, it)] = {p.r, p.tau, tag};
            }
        }
    }

    void check_jacobians() const {
        const QuadratureRule g = gauss_legendre(2 * q_ + 2);
        for (int j = 0; j < n_thick(); ++j)
            for (int i = 0; i < n_merid(); ++i)
                for (double eta : g.points)
                    for (double xi : g.points)
                        if (!(map(i, j, xi, eta).jacobian() > 0.0))
                            throw ShellError(ErrorCode::DegenerateJacobian,
                                             "non-positive Jacobian in element (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ")");
    }

    MeridianProfile profile_;
    double eps_;
    std::vector<double> t_breaks_;
    std::vector<double> x3_breaks_;
    int q_;
    LagrangeBasis1D geo_basis_;
    std::vector<MeshNode> nodes_;
};

namespace detail {

inline std::vector<double> uniform_breaks(double a, double b, int n) {
    std::vector<double> v(n + 1);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    // Built from the midpoint so symmetric intervals give mirror-exact breaks.
    for (int i = 0; i <= n; ++i) {
        const int m = 2 * i - n;
        v[i] = (m == 0) ? mid : mid + half * static_cast<double>(m) / n;
    }
    v.front() = a;
    v.back() = b;
    return v;
}

}  // namespace detail

inline MeridianMesh build_uniform(const MeridianProfile& p, double eps, int n_thick, int n_merid, int q) {
    if (n_thick < 1 || n_merid < 1) throw ShellError(ErrorCode::InvalidGeometry, "element counts must be >= 1");
    p.check_thickness(eps);
    const auto iv = p.interval();
    return MeridianMesh(p, eps, detail::uniform_breaks(iv[0], iv[1], n_merid), detail::uniform_breaks(-eps, eps, n_thick), q);
}

/// Adds meridian grid lines at distances eps, eps^(3/4), eps^(1/2), eps^(1/4)
/// from each lateral end.
inline MeridianMesh refine_boundary_layers(const MeridianMesh& mesh, double eps) {
    const auto& old = mesh.meridian_breaks();
    const double a = old.front(), b = old.back();
    const double half = 0.5 * (b - a);
    const std::array<double, 4> dist{eps, std::pow(eps, 0.75), std::sqrt(eps), std::pow(eps, 0.25)};
    if (!(eps > 0.0) || dist[3] >= half)
        throw ShellError(ErrorCode::LayerCollision, "boundary layer eps^(1/4) = " + std::to_string(dist[3]) +
                                                        " reaches the meridian midpoint");
    std::vector<double> breaks = old;
    for (double d : dist) {
        breaks.push_back(a + d);
        breaks.push_back(b - d);
    }
    std::sort(breaks.begin(), breaks.end());
    const double tol = 1e-10 * (b - a);
    std::vector<double> merged;
    for (double x : breaks)
        if (merged.empty() || x - merged.back() > tol) merged.push_back(x);
    merged.front() = a;
    merged.back() = b;
    return MeridianMesh(mesh.profile(), mesh.eps(), std::move(merged), mesh.thickness_breaks(), mesh.geo_degree());
}

}  // namespace shellmodes
