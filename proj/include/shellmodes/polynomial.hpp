#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace shellmodes {

/// Real polynomial with coefficients in ascending powers.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

    const std::vector<double>& coefficients() const { return c_; }

    /// Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const {
        double v = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        return a + b * -1.0;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const Polynomial& a, double s) {
        std::vector<double> r(a.c_);
        for (auto& v : r) v *= s;
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

namespace detail {

inline double bisect_root(const Polynomial& p, double a, double b) {
    double fa = p(a);
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = p(m);
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

}  // namespace detail

/// All real roots of p in [a, b], ascending. Roots are isolated between the
/// critical points of p (found recursively), so each monotone piece holds at
/// most one root. A zero polynomial has no isolated roots and returns empty.
inline std::vector<double> real_roots(const Polynomial& p, double a, double b) {
    std::vector<double> roots;
    if (p.degree() <= 0) return roots;
    std::vector<double> knots{a};
    for (double x : real_roots(p.derivative(), a, b))
        if (x > knots.back()) knots.push_back(x);
    if (b > knots.back()) knots.push_back(b);

    double scale = 0.0;
    for (double c : p.coefficients()) scale = std::max(scale, std::abs(c));
    const double zero_tol = 1e-14 * scale;

    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double lo = knots[i], hi = knots[i + 1];
        const double flo = p(lo), fhi = p(hi);
        double root;
        if (std::abs(flo) <= zero_tol) {
            root = lo;
        } else if ((flo < 0.0) != (fhi < 0.0) && std::abs(fhi) > zero_tol) {
            root = detail::bisect_root(p, lo, hi);
        } else if (std::abs(fhi) <= zero_tol && i + 2 == knots.size()) {
            root = hi;
        } else {
            continue;
        }
        if (roots.empty() || root - roots.back() > 1e-12 * std::max(1.0, std::abs(root)))
            roots.push_back(root);
    }
    return roots;
}

}  // namespace shellmodes
