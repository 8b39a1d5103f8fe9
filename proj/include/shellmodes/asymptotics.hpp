#pragma once

#include <array>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "shellmodes/assembly.hpp"
#include "shellmodes/eigen_solver.hpp"
#include "shellmodes/error.hpp"
#include "shellmodes/geometry.hpp"
#include "shellmodes/operators.hpp"
#include "shellmodes/quadrature.hpp"

namespace shellmodes {

namespace detail {

template <typename F>
double bracketed_root(F f, double lo, double hi) {
    boost::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (r.first + r.second);
}

}  // namespace detail

/// First root of cos(x) cosh(x) = 1, bracketed in (3pi/2, 2pi).
inline double beam_characteristic_root() {
    return detail::bracketed_root([](double x) { return std::cos(x) - 1.0 / std::cosh(x); }, 1.5 * std::numbers::pi,
                                  2.0 * std::numbers::pi);
}

/// First eigenvalue of d^4/dz^4 on (0, 1) with clamped ends.
inline double beam_bilap_constant() {
    const double x = beam_characteristic_root();
    return x * x * x * x;
}

/// First positive root of Ai(-z).
inline double airy_first_zero() {
    return detail::bracketed_root([](double z) { return boost::math::airy_ai(-z); }, 2.0, 3.0);
}

/// k(eps) ~ gamma eps^(-beta).
struct KLaw {
    double gamma;
    double beta;
};

/// lambda(eps) ~ a0 + a1 eps^delta, in (rad/s)^2.
struct LambdaLaw {
    double a0;
    double a1;
    double delta;

    double operator()(double eps) const { return a0 + a1 * std::pow(eps, delta); }
};

struct AsymptoticPrediction {
    ShellClass shell_class;
    std::optional<KLaw> k_law;
    LambdaLaw lambda_law{0.0, 0.0, 0.0};
    bool coefficients_available = true;

    // Constants and intermediates behind the coefficients (NaN when unused).
    double mu_bilap = std::numeric_limits<double>::quiet_NaN();
    double z_airy = std::numeric_limits<double>::quiet_NaN();
    double g0 = std::numeric_limits<double>::quiet_NaN();
    double b = std::numeric_limits<double>::quiet_NaN();
    double c = std::numeric_limits<double>::quiet_NaN();
    std::optional<int> k_bending;  // plates: Fourier index of the bending mode
};

inline AsymptoticPrediction cylinder_prediction(double R, double L, const MaterialParams& m) {
    if (!(R > 0.0) || !(L > 0.0)) throw ShellError(ErrorCode::InvalidGeometry, "cylinder needs R > 0 and L > 0");
    m.validate();
    const double mu = beam_bilap_constant();
    const double w = 3.0 * (1.0 - m.nu * m.nu);
    AsymptoticPrediction pr;
    pr.shell_class = {ShellTag::Cylinder, {}, 0.0};
    pr.k_law = KLaw{std::pow(std::pow(R, 6) / std::pow(L, 4) * w * mu, 1.0 / 8.0), 0.25};
    pr.lambda_law = {0.0, 2.0 * m.E / (m.rho * R * L * L) * std::sqrt(mu / w), 1.0};
    pr.mu_bilap = mu;
    return pr;
}

/// Airy-barrel law: k ~ gamma eps^(-3/7), lambda ~ a0 + a1 eps^(2/7).
inline AsymptoticPrediction airy_barrel_prediction(const MeridianProfile& p, const MaterialParams& m) {
    m.validate();
    const ShellClass cls = classify(p, m);
    if (cls.tag != ShellTag::EllipticAiry)
        throw ShellError(ErrorCode::UnsupportedClass, std::string("Airy law needs an EllipticAiry shell, got ") + to_string(cls.tag));
    const double z0 = cls.z0.front();
    const GB0 gb = g_b0(p, z0, m);
    if (!(gb.g > 0.0)) throw ShellError(ErrorCode::NegativeG, "g(z0) must be positive");
    const double za = airy_first_zero();
    const double dh = std::abs(h0_derivative(p, z0, m));
    const double b = gb.B0;
    const double c = za * std::cbrt(gb.g) * std::pow(dh, 2.0 / 3.0);

    AsymptoticPrediction pr;
    pr.shell_class = cls;
    pr.k_law = KLaw{std::pow(c / (6.0 * b), 3.0 / 14.0), 3.0 / 7.0};
    pr.lambda_law = {h0(p, z0, m), std::pow(6.0 * b * std::pow(c, 6), 1.0 / 7.0) * (7.0 / 6.0), 2.0 / 7.0};
    pr.z_airy = za;
    pr.g0 = gb.g;
    pr.b = b;
    pr.c = c;
    return pr;
}

/// First eigenvalue of the radial clamped biharmonic on (R1, R2) for Fourier
/// mode k: energy int (W'' + W'/r - k^2 W/r^2)^2 r dr, mass int W^2 r dr.
/// Hermite cubic elements; returns the eigenvalue of Delta^2 (no material factor).
inline double radial_bilaplacian_eigenvalue(double R1, double R2, int k, int n_elements = 200) {
    if (!(R1 > 0.0) || !(R2 > R1)) throw ShellError(ErrorCode::InvalidGeometry, "annulus needs 0 < R1 < R2");
    const int nfree = 2 * (n_elements - 1);
    const double h = (R2 - R1) / n_elements;
    const double k2 = static_cast<double>(k) * k;
    const QuadratureRule g = gauss_legendre(6);
    std::vector<Eigen::Triplet<double>> tk, tm;
    for (int e = 0; e < n_elements; ++e) {
        Eigen::Matrix4d Ke = Eigen::Matrix4d::Zero(), Me = Eigen::Matrix4d::Zero();
        for (std::size_t q = 0; q < g.points.size(); ++q) {
            const double s = 0.5 * (g.points[q] + 1.0);
            const double r = R1 + (e + s) * h;
            const double w = 0.5 * h * g.weights[q] * r;
            const Eigen::Vector4d N{1 - 3 * s * s + 2 * s * s * s, h * (s - 2 * s * s + s * s * s), 3 * s * s - 2 * s * s * s,
                                    h * (-s * s + s * s * s)};
            const Eigen::Vector4d N1 = Eigen::Vector4d{-6 * s + 6 * s * s, h * (1 - 4 * s + 3 * s * s), 6 * s - 6 * s * s,
                                                       h * (-2 * s + 3 * s * s)} / h;
            const Eigen::Vector4d N2 = Eigen::Vector4d{-6 + 12 * s, h * (-4 + 6 * s), 6 - 12 * s, h * (-2 + 6 * s)} / (h * h);
            const Eigen::Vector4d L = N2 + N1 / r - (k2 / (r * r)) * N;
            Ke += w * L * L.transpose();
            Me += w * N * N.transpose();
        }
        const std::array<int, 4> gd{2 * e - 2, 2 * e - 1, 2 * e, 2 * e + 1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (gd[i] < 0 || gd[j] < 0 || gd[i] >= nfree || gd[j] >= nfree) continue;
                tk.emplace_back(gd[i], gd[j], Ke(i, j));
                tm.emplace_back(gd[i], gd[j], Me(i, j));
            }
    }
    SparseMatrix K(nfree, nfree), M(nfree, nfree);
    K.setFromTriplets(tk.begin(), tk.end());
    M.setFromTriplets(tm.begin(), tm.end());
    return smallest_eigenpairs(K, M).eigenvalues.front();
}

struct PlateBending {
    double lambda;  // (rad/s)^2 per unit eps^2
    int k;
};

/// First clamped eigenvalue of (E / (3(1-nu^2) rho)) Delta^2 on the annulus,
/// minimized over Fourier modes 0..k_max.
inline PlateBending plate_bending_eigenvalue(const MeridianProfile& plate, const MaterialParams& m, int k_max = 6) {
    const auto* rp = std::get_if<RingPlateSpec>(&plate.kind());
    if (!rp) throw ShellError(ErrorCode::UnsupportedClass, "plate bending law needs a ring plate");
    m.validate();
    const double factor = m.E / (3.0 * (1.0 - m.nu * m.nu) * m.rho);
    PlateBending best{std::numeric_limits<double>::infinity(), 0};
    for (int k = 0; k <= k_max; ++k) {
        const double v = factor * radial_bilaplacian_eigenvalue(rp->R1, rp->R2, k);
        if (v < best.lambda) best = {v, k};
    }
    return best;
}

/// Class-specific prediction. Gaussian and other elliptic barrels only carry
/// a0 = min H0 (coefficients_available = false).
inline AsymptoticPrediction predict(const MeridianProfile& p, const MaterialParams& m) {
    const ShellClass cls = classify(p, m);
    switch (cls.tag) {
        case ShellTag::Cylinder: {
            if (const auto* c = std::get_if<CylinderSpec>(&p.kind())) return cylinder_prediction(c->R, c->L, m);
            const auto& spec = std::get<PolynomialSpec>(p.kind());
            return cylinder_prediction(spec.f(spec.z_min), spec.z_max - spec.z_min, m);
        }
        case ShellTag::EllipticAiry:
            return airy_barrel_prediction(p, m);
        case ShellTag::Plate: {
            const PlateBending pb = plate_bending_eigenvalue(p, m);
            AsymptoticPrediction pr;
            pr.shell_class = cls;
            pr.lambda_law = {0.0, pb.lambda, 2.0};
            pr.k_bending = pb.k;
            return pr;
        }
        case ShellTag::EllipticGaussian:
        case ShellTag::EllipticOther: {
            AsymptoticPrediction pr;
            pr.shell_class = cls;
            pr.lambda_law = {cls.h0_min, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
            pr.coefficients_available = false;
            return pr;
        }
        case ShellTag::Cone:
        case ShellTag::Hyperbolic:
        case ShellTag::Degenerate:
            break;
    }
    throw ShellError(ErrorCode::UnsupportedClass, std::string("no asymptotic law for class ") + to_string(cls.tag));
}

}  // namespace shellmodes
