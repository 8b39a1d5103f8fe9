#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shellmodes/error.hpp"
#include "shellmodes/material.hpp"
#include "shellmodes/polynomial.hpp"

namespace shellmodes {

struct CylinderSpec {
    double R;
    double L;
    friend bool operator==(const CylinderSpec&, const CylinderSpec&) = default;
};

struct RingPlateSpec {
    double R1;
    double R2;
    friend bool operator==(const RingPlateSpec&, const RingPlateSpec&) = default;
};

/// Meridian r = f(z) for z in [z_min, z_max].
struct PolynomialSpec {
    Polynomial f;
    double z_min;
    double z_max;
    friend bool operator==(const PolynomialSpec&, const PolynomialSpec&) = default;
};

/// (f, f', f'', s) at one abscissa, s = sqrt(1 + f'^2).
struct ProfileValues {
    double f;
    double df;
    double d2f;
    double s;
};

/// Point of the meridian half-plane: r is the distance to the axis, tau the
/// axial abscissa.
struct MeridianPoint {
    double r;
    double tau;
};

/// Generating curve of an axisymmetric midsurface.
///
/// Every kind is handled as a parametrized curve C(t) = (r(t), tau(t)) with
/// unit normal N = (tau', -r') / |C'|. For graphs r = f(z) this is the
/// normal (1, -f') / s, and the shell point at normal offset x3 is C + x3 N.
/// A ring plate lies in tau = 0 and is parametrized by t = r.
class MeridianProfile {
public:
    using Kind = std::variant<CylinderSpec, RingPlateSpec, PolynomialSpec>;

    static MeridianProfile cylinder(double R, double L) {
        if (!(R > 0.0) || !(L > 0.0))
            throw ShellError(ErrorCode::InvalidGeometry, "cylinder needs R > 0 and L > 0");
        return MeridianProfile(CylinderSpec{R, L});
    }

    static MeridianProfile ring_plate(double R1, double R2) {
        if (!(R1 > 0.0) || !(R2 > R1))
            throw ShellError(ErrorCode::InvalidGeometry, "ring plate needs 0 < R1 < R2");
        return MeridianProfile(RingPlateSpec{R1, R2});
    }

    static MeridianProfile polynomial(std::vector<double> coeffs, double z_min, double z_max) {
        for (double c : coeffs)
            if (!std::isfinite(c)) throw ShellError(ErrorCode::NonSmooth, "non-finite profile coefficient");
        Polynomial f(std::move(coeffs));
        if (f.is_zero()) throw ShellError(ErrorCode::NonSmooth, "profile polynomial is identically zero");
        if (!std::isfinite(z_min) || !std::isfinite(z_max) || !(z_max > z_min))
            throw ShellError(ErrorCode::InvalidGeometry, "profile interval must satisfy z_min < z_max");
        // f > 0 on the closed interval: check endpoints and interior roots.
        if (!(f(z_min) > 0.0) || !(f(z_max) > 0.0) || !real_roots(f, z_min, z_max).empty())
            throw ShellError(ErrorCode::InvalidGeometry, "profile must stay strictly positive (shell touches the axis)");
        return MeridianProfile(PolynomialSpec{std::move(f), z_min, z_max});
    }

    const Kind& kind() const { return kind_; }
    bool is_cylinder() const { return std::holds_alternative<CylinderSpec>(kind_); }
    bool is_ring_plate() const { return std::holds_alternative<RingPlateSpec>(kind_); }
    bool is_polynomial() const { return std::holds_alternative<PolynomialSpec>(kind_); }

    /// Parameter interval of the curve: z for graphs and cylinders, r for plates.
    std::array<double, 2> interval() const {
        return std::visit(
            [](const auto& k) -> std::array<double, 2> {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, CylinderSpec>) return {-0.5 * k.L, 0.5 * k.L};
                else if constexpr (std::is_same_v<T, RingPlateSpec>) return {k.R1, k.R2};
                else return {k.z_min, k.z_max};
            },
            kind_);
    }

    double parameter_length() const {
        const auto iv = interval();
        return iv[1] - iv[0];
    }

    /// Exact f, f', f'' for graph profiles (cylinder or polynomial).
    ProfileValues eval(double z) const {
        check_in_interval(z);
        if (const auto* c = std::get_if<CylinderSpec>(&kind_)) return {c->R, 0.0, 0.0, 1.0};
        if (const auto* p = std::get_if<PolynomialSpec>(&kind_)) {
            const Polynomial d1 = p->f.derivative();
            const double df = d1(z);
            return {p->f(z), df, d1.derivative()(z), std::sqrt(1.0 + df * df)};
        }
        throw ShellError(ErrorCode::NotApplicable, "a ring plate is not a graph r = f(z)");
    }

    /// Curve point and tangent (dr/dt, dtau/dt).
    std::array<double, 4> curve(double t) const {
        if (const auto* rp = std::get_if<RingPlateSpec>(&kind_)) {
            (void)rp;
            check_in_interval(t);
            return {t, 0.0, 1.0, 0.0};
        }
        const ProfileValues v = eval(t);
        return {v.f, t, v.df, 1.0};
    }

    /// Shell point in the meridian half-plane at parameter t and normal offset x3.
    MeridianPoint point(double t, double x3) const {
        const auto c = curve(t);
        const double len = std::hypot(c[2], c[3]);
        return {c[0] + x3 * c[3] / len, c[1] - x3 * c[2] / len};
    }

    /// Largest admissible half-thickness: 0.9 / max(meridian curvature,
    /// azimuthal curvature). Infinite for flat plates.
    double max_half_thickness() const {
        if (is_ring_plate()) return std::numeric_limits<double>::infinity();
        const auto iv = interval();
        constexpr int samples = 4096;
        double kmax = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double z = iv[0] + (iv[1] - iv[0]) * i / samples;
            const ProfileValues v = eval(std::min(z, iv[1]));
            kmax = std::max({kmax, std::abs(v.d2f) / (v.s * v.s * v.s), 1.0 / (v.f * v.s)});
        }
        return 0.9 / kmax;
    }

    void check_thickness(double eps) const {
        if (!(eps > 0.0) || !(eps < max_half_thickness()))
            throw ShellError(ErrorCode::InvalidThickness,
                             "half-thickness " + std::to_string(eps) + " outside (0, " +
                                 std::to_string(max_half_thickness()) + ")");
    }

    friend bool operator==(const MeridianProfile&, const MeridianProfile&) = default;

private:
    explicit MeridianProfile(Kind k) : kind_(std::move(k)) {}

    void check_in_interval(double t) const {
        const auto iv = interval();
        const double tol = 1e-12 * std::max(1.0, std::abs(iv[1]) + std::abs(iv[0]));
        if (!(t >= iv[0] - tol && t <= iv[1] + tol))
            throw ShellError(ErrorCode::OutOfInterval, "abscissa " + std::to_string(t) + " outside profile interval");
    }

    Kind kind_;
};

inline ProfileValues profile_eval(const MeridianProfile& p, double z) { return p.eval(z); }

/// Cartesian point of the shell at (z, phi, x3).
inline std::array<double, 3> embed(const MeridianProfile& p, double z, double phi, double x3) {
    if (!(std::abs(x3) < p.max_half_thickness()))
        throw ShellError(ErrorCode::InvalidThickness, "normal offset beyond the injectivity bound");
    const MeridianPoint q = p.point(z, x3);
    return {q.r * std::cos(phi), q.r * std::sin(phi), q.tau};
}

/// Squared meridian curvature functional (E/rho) f''^2 / (1+f'^2)^3.
inline double h0(const MeridianProfile& p, double z, const MaterialParams& m) {
    if (p.is_ring_plate()) {
        (void)p.curve(z);
        return 0.0;
    }
    const ProfileValues v = p.eval(z);
    const double s2 = v.s * v.s;
    return m.stiffness_ratio() * v.d2f * v.d2f / (s2 * s2 * s2);
}

/// Derivative of h0 in z, closed form.
inline double h0_derivative(const MeridianProfile& p, double z, const MaterialParams& m) {
    if (!p.is_polynomial()) {
        (void)p.curve(z);
        return 0.0;
    }
    const auto& f = std::get<PolynomialSpec>(p.kind()).f;
    const ProfileValues v = p.eval(z);
    const double d3f = f.derivative().derivative().derivative()(z);
    const double s2 = v.s * v.s;
    return m.stiffness_ratio() * 2.0 * v.d2f * (d3f * s2 - 3.0 * v.df * v.d2f * v.d2f) / (s2 * s2 * s2 * s2);
}

struct GB0 {
    double g;
    double B0;
};

inline GB0 g_b0(const MeridianProfile& p, double z, const MaterialParams& m) {
    const ProfileValues v = p.eval(z);
    const double s2 = v.s * v.s;
    const double s6 = s2 * s2 * s2;
    const double e = m.stiffness_ratio();
    const double g = -2.0 * e * (v.f * v.d2f / s6 + v.f * v.f * v.d2f * v.d2f / (s6 * s2));
    const double f2 = v.f * v.f;
    const double B0 = e / (3.0 * (1.0 - m.nu * m.nu) * f2 * f2);
    return {g, B0};
}

enum class ShellTag {
    Plate,
    Cylinder,
    Cone,
    EllipticAiry,
    EllipticGaussian,
    EllipticOther,
    Hyperbolic,
    Degenerate,
};

inline const char* to_string(ShellTag t) {
    switch (t) {
        case ShellTag::Plate: return "Plate";
        case ShellTag::Cylinder: return "Cylinder";
        case ShellTag::Cone: return "Cone";
        case ShellTag::EllipticAiry: return "EllipticAiry";
        case ShellTag::EllipticGaussian: return "EllipticGaussian";
        case ShellTag::EllipticOther: return "EllipticOther";
        case ShellTag::Hyperbolic: return "Hyperbolic";
        case ShellTag::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

inline bool is_elliptic(ShellTag t) {
    return t == ShellTag::EllipticAiry || t == ShellTag::EllipticGaussian || t == ShellTag::EllipticOther;
}

struct ShellClass {
    ShellTag tag;
    std::vector<double> z0;  // minimizers of H0, elliptic shells only
    double h0_min = 0.0;     // (rad/s)^2
};

/// Classifies the shell from its profile. Plates, cylinders and cones come
/// from the kind or from f'' == 0; elliptic shells (f'' < 0 on the closed
/// interval) are split by where H0 attains its minimum.
inline ShellClass classify(const MeridianProfile& p, const MaterialParams& m) {
    if (p.is_ring_plate()) return {ShellTag::Plate, {}, 0.0};
    if (p.is_cylinder()) return {ShellTag::Cylinder, {}, 0.0};

    const auto& spec = std::get<PolynomialSpec>(p.kind());
    const Polynomial d1 = spec.f.derivative();
    const Polynomial d2 = d1.derivative();
    if (d2.is_zero()) return {d1.is_zero() ? ShellTag::Cylinder : ShellTag::Cone, {}, 0.0};

    const double a = spec.z_min, b = spec.z_max;
    if (!real_roots(d2, a, b).empty() || d2(a) == 0.0 || d2(b) == 0.0) return {ShellTag::Degenerate, {}, 0.0};
    if (d2(a) > 0.0) return {ShellTag::Hyperbolic, {}, 0.0};

    // Critical points of H0: zeros of f'''(1 + f'^2) - 3 f' f''^2.
    const Polynomial crit = d2.derivative() * (Polynomial{1.0} + d1 * d1) - d1 * d2 * d2 * 3.0;
    if (crit.is_zero()) return {ShellTag::EllipticOther, {a, b}, h0(p, a, m)};

    std::vector<double> cand{a, b};
    for (double z : real_roots(crit, a, b)) cand.push_back(z);
    double hmin = std::numeric_limits<double>::infinity();
    for (double z : cand) hmin = std::min(hmin, h0(p, z, m));

    std::vector<double> z0;
    bool boundary = false, interior = false;
    const double tol = 1e-10 * std::max(hmin, 1e-300);
    const double ztol = 1e-12 * (b - a);
    for (double z : cand) {
        if (h0(p, z, m) - hmin > tol) continue;
        if (std::any_of(z0.begin(), z0.end(), [&](double w) { return std::abs(w - z) <= ztol; })) continue;
        z0.push_back(z);
        (std::abs(z - a) <= ztol || std::abs(z - b) <= ztol ? boundary : interior) = true;
    }
    std::sort(z0.begin(), z0.end());
    ShellTag tag = ShellTag::EllipticOther;
    if (boundary && !interior) tag = ShellTag::EllipticAiry;
    else if (interior && !boundary) tag = ShellTag::EllipticGaussian;
    return {tag, std::move(z0), hmin};
}

}  // namespace shellmodes
