#pragma once

// Reference values computed independently of the library code paths under test.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace oracle {

/// Plain bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
    double fa = f(a);
    if (fa * f(b) > 0.0) throw std::runtime_error("bisect: no sign change");
    for (int i = 0; i < iters && b - a > 1e-15 * std::abs(b); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// First sign change of f on a uniform scan, refined by bisection.
inline double first_root(const std::function<double(double)>& f, double from, double to, double step) {
    double x0 = from, f0 = f(from);
    for (double x1 = from + step; x1 <= to; x1 += step) {
        const double f1 = f(x1);
        if ((f0 < 0.0) != (f1 < 0.0)) return bisect(f, x0, x1);
        x0 = x1;
        f0 = f1;
    }
    throw std::runtime_error("first_root: no sign change in scan range");
}

/// cos x cosh x = 1, first positive nontrivial root.
inline double beam_root() {
    return bisect([](double x) { return std::cos(x) * std::cosh(x) - 1.0; }, 1.5 * std::numbers::pi, 2.0 * std::numbers::pi);
}

/// Ai(x) from its Maclaurin series (fine for |x| < 5 in double precision).
inline double airy_ai_series(double x) {
    const double c1 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    const double c2 = 1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
    const double x3 = x * x * x;
    double f = 0.0, g = 0.0, tf = 1.0, tg = x;
    for (int n = 0; n < 60; ++n) {
        f += tf;
        g += tg;
        tf *= x3 / ((3.0 * n + 2.0) * (3.0 * n + 3.0));
        tg *= x3 / ((3.0 * n + 3.0) * (3.0 * n + 4.0));
    }
    return c1 * f - c2 * g;
}

inline double airy_zero_series() {
    return bisect([](double z) { return airy_ai_series(-z); }, 2.0, 3.0);
}

/// First Dirichlet eigenvalue x^2 of the annulus R1 < r < R2 for Fourier mode k,
/// from the Bessel cross product J_k(x R1) Y_k(x R2) - J_k(x R2) Y_k(x R1).
inline double annulus_dirichlet(double R1, double R2, int k = 0) {
    using boost::math::cyl_bessel_j;
    using boost::math::cyl_neumann;
    const auto f = [&](double x) {
        return cyl_bessel_j(k, x * R1) * cyl_neumann(k, x * R2) - cyl_bessel_j(k, x * R2) * cyl_neumann(k, x * R1);
    };
    const double x = first_root(f, 0.05, 50.0, 0.01);
    return x * x;
}

/// First clamped eigenvalue beta^4 of the biharmonic on the annulus for Fourier
/// mode k: W = a J_k + b Y_k + c I_k + d K_k with W = W' = 0 on both circles.
inline double annulus_clamped_biharmonic(double R1, double R2, int k = 0) {
    using namespace boost::math;
    const auto det = [&](double b) {
        Eigen::Matrix4d A;
        int row = 0;
        for (double R : {R1, R2}) {
            const double x = b * R;
            A.row(row++) << cyl_bessel_j(k, x), cyl_neumann(k, x), cyl_bessel_i(k, x), cyl_bessel_k(k, x);
            A.row(row++) << cyl_bessel_j_prime(k, x), cyl_neumann_prime(k, x), cyl_bessel_i_prime(k, x),
                cyl_bessel_k_prime(k, x);
        }
        return A.determinant();
    };
    const double b = first_root(det, 0.5, 30.0, 0.002);
    return b * b * b * b;
}

struct DenseBeam {
    Eigen::MatrixXd K, M;
};

/// Clamped beam d^4/dz^4 on (0, 1) with Hermite cubic elements.
inline DenseBeam beam_hermite(int n) {
    const double h = 1.0 / n;
    Eigen::Matrix4d ke, me;
    ke << 12, 6 * h, -12, 6 * h, 6 * h, 4 * h * h, -6 * h, 2 * h * h, -12, -6 * h, 12, -6 * h, 6 * h, 2 * h * h, -6 * h,
        4 * h * h;
    ke /= h * h * h;
    me << 156, 22 * h, 54, -13 * h, 22 * h, 4 * h * h, 13 * h, -3 * h * h, 54, 13 * h, 156, -22 * h, -13 * h, -3 * h * h,
        -22 * h, 4 * h * h;
    me *= h / 420.0;
    const int nfull = 2 * (n + 1);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nfull, nfull), M = K;
    for (int e = 0; e < n; ++e) {
        K.block(2 * e, 2 * e, 4, 4) += ke;
        M.block(2 * e, 2 * e, 4, 4) += me;
    }
    const int nf = nfull - 4;
    return {K.block(2, 2, nf, nf), M.block(2, 2, nf, nf)};
}

inline double beam_hermite_eigenvalue(int n) {
    const DenseBeam b = beam_hermite(n);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.K, b.M);
    return es.eigenvalues()[0];
}

/// Closed-form cylinder law from an independently computed beam root.
struct CylinderLaw {
    double gamma;
    double a1_over_E_rho;
};

inline CylinderLaw cylinder_law(double R, double L, double nu) {
    const double x = beam_root();
    const double mu = x * x * x * x;
    const double w = 3.0 * (1.0 - nu * nu);
    return {std::pow(std::pow(R, 6) / std::pow(L, 4) * w * mu, 0.125), 2.0 / (R * L * L) * std::sqrt(mu / w)};
}

}  // namespace oracle
