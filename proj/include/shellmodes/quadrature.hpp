#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shellmodes {

struct QuadratureRule {
    std::vector<double> points;   // on [-1, 1]
    std::vector<double> weights;
};

namespace detail {

// Legendre P_n and P_n' at x by the three-term recurrence.
inline void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace detail

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    QuadratureRule q;
    q.points.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            detail::legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        detail::legendre(n, x, p, dp);
        q.points[n - 1 - i] = x;
        q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

/// Gauss-Lobatto-Legendre points of a degree-p interpolant (p+1 points,
/// endpoints included), ascending.
inline std::vector<double> gauss_lobatto_points(int p) {
    if (p < 1) throw std::invalid_argument("gauss_lobatto_points: p >= 1");
    std::vector<double> x(p + 1);
    x.front() = -1.0;
    x.back() = 1.0;
    // Interior points are the zeros of P_p', started from Chebyshev-Gauss-Lobatto guesses.
    for (int i = 1; i < p; ++i) {
        double t = -std::cos(std::numbers::pi * i / p);
        for (int it = 0; it < 100; ++it) {
            // Newton on q = (1 - t^2) P_p'(t), q' = -p(p+1) P_p(t).
            double pn = 0.0, dpn = 0.0;
            detail::legendre(p, t, pn, dpn);
            const double q = (1.0 - t * t) * dpn;
            const double dq = -p * (p + 1.0) * pn;
            const double dt = q / dq;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[i] = t;
    }
    return x;
}

/// Lagrange interpolation basis on a fixed node set.
class LagrangeBasis1D {
public:
    explicit LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        const std::size_t n = nodes_.size();
        bary_.assign(n, 1.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) bary_[j] /= (nodes_[j] - nodes_[k]);
    }

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }

    /// Values and first derivatives of every basis function at x.
    void eval(double x, std::vector<double>& val, std::vector<double>& der) const {
        const std::size_t n = nodes_.size();
        val.assign(n, 0.0);
        der.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            // l_j(x) = w_j prod_{k != j} (x - x_k); derivative by the product rule.
            double v = bary_[j];
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                d = d * (x - nodes_[k]) + v;
                v *= (x - nodes_[k]);
            }
            val[j] = v;
            der[j] = d;
        }
    }

private:
    std::vector<double> nodes_;
    std::vector<double> bary_;
};

}  // namespace shellmodes
