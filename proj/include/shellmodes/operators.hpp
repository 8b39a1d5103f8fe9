#pragma once

#include <array>
#include <cmath>
#include <string>

#include "shellmodes/error.hpp"
#include "shellmodes/geometry.hpp"
#include "shellmodes/material.hpp"

namespace shellmodes {

enum class OperatorKind { Laplace, Lame };

inline const char* to_string(OperatorKind k) { return k == OperatorKind::Laplace ? "laplace" : "lame"; }

/// Isotropic elasticity tensor, stored through its two Lame coefficients.
struct ElasticityTensor {
    double lambda;  // E nu / ((1+nu)(1-2nu))
    double mu;      // E / (2(1+nu))

    /// A^{ijlm} = lambda d_ij d_lm + mu (d_il d_jm + d_im d_jl).
    double operator()(int i, int j, int l, int m) const {
        const auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
        return lambda * d(i, j) * d(l, m) + mu * (d(i, l) * d(j, m) + d(i, m) * d(j, l));
    }
};

inline ElasticityTensor elasticity_tensor(const MaterialParams& m) {
    m.validate();
    return {m.E * m.nu / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu)), m.E / (2.0 * (1.0 + m.nu))};
}

/// Value and first derivatives of up to three scalar fields at one point.
/// Lame ordering is (u_r, u_phi, u_tau) in the orthonormal cylindrical frame.
struct FieldJet {
    std::array<double, 3> value{};
    std::array<double, 3> d_r{};
    std::array<double, 3> d_tau{};
};

/// Generalized strain vector. Laplace uses the first three slots
/// (d_r u, d_tau u, k u / r); Lame uses Voigt order
/// (e_rr, e_phiphi, e_tautau, 2e_rtau, 2e_rphi, 2e_phitau).
using StrainVector = std::array<double, 6>;

/// Bilinear forms of one Fourier mode on the meridian domain.
///
/// The stiffness density is r * strain(u)^T D strain(v) and the mass density
/// r * (u . v), times rho for Lame. Angular integrals (2pi at k = 0, pi
/// otherwise) cancel between the two forms and are dropped. For Lame the
/// single-harmonic ansatz is u_r, u_tau ~ cos(k phi), u_phi ~ sin(k phi).
class ModeForm {
public:
    static ModeForm laplace(int k) { return ModeForm(OperatorKind::Laplace, k, MaterialParams{}); }
    static ModeForm lame(int k, const MaterialParams& m) {
        m.validate();
        return ModeForm(OperatorKind::Lame, k, m);
    }

    OperatorKind kind() const { return kind_; }
    int k() const { return k_; }
    const MaterialParams& material() const { return material_; }
    int field_count() const { return kind_ == OperatorKind::Laplace ? 1 : 3; }
    int strain_size() const { return kind_ == OperatorKind::Laplace ? 3 : 6; }

    ModeForm with_k(int k) const { return ModeForm(kind_, k, material_); }

    /// Same form with E = rho = 1. A Lame problem factors as E K^ and rho M^,
    /// so assembling the unit form keeps eigenvalues exactly linear in E/rho.
    ModeForm unit() const {
        if (kind_ == OperatorKind::Laplace) return *this;
        return ModeForm(kind_, k_, MaterialParams{1.0, material_.nu, 1.0});
    }
    double stiffness_scale() const { return kind_ == OperatorKind::Laplace ? 1.0 : material_.E; }
    double mass_scale() const { return density(); }

    /// Strain of a field jet at radius r; affine in k, linear in the jet.
    StrainVector strain(const FieldJet& u, double r) const {
        StrainVector e{};
        const double kr = k_ / r;
        if (kind_ == OperatorKind::Laplace) {
            e[0] = u.d_r[0];
            e[1] = u.d_tau[0];
            e[2] = kr * u.value[0];
            return e;
        }
        const double ur = u.value[0], up = u.value[1], ut = u.value[2];
        e[0] = u.d_r[0];
        e[1] = (ur + k_ * up) / r;
        e[2] = u.d_tau[2];
        e[3] = u.d_tau[0] + u.d_r[2];
        e[4] = u.d_r[1] - up / r - kr * ur;
        e[5] = u.d_tau[1] - kr * ut;
        return e;
    }

    /// D applied to a strain vector.
    StrainVector stress(const StrainVector& e) const {
        if (kind_ == OperatorKind::Laplace) return {e[0], e[1], e[2], 0.0, 0.0, 0.0};
        const double tr = e[0] + e[1] + e[2];
        return {lam_ * tr + 2.0 * mu_ * e[0],
                lam_ * tr + 2.0 * mu_ * e[1],
                lam_ * tr + 2.0 * mu_ * e[2],
                mu_ * e[3],
                mu_ * e[4],
                mu_ * e[5]};
    }

    double stiffness(const FieldJet& u, const FieldJet& v, double r) const {
        check_radius(r);
        const StrainVector su = stress(strain(u, r));
        const StrainVector ev = strain(v, r);
        double acc = 0.0;
        for (int i = 0; i < strain_size(); ++i) acc += su[i] * ev[i];
        return r * acc;
    }

    double mass(const FieldJet& u, const FieldJet& v, double r) const {
        check_radius(r);
        double acc = 0.0;
        for (int c = 0; c < field_count(); ++c) acc += u.value[c] * v.value[c];
        return r * density() * acc;
    }

    double density() const { return kind_ == OperatorKind::Laplace ? 1.0 : material_.rho; }

private:
    ModeForm(OperatorKind kind, int k, const MaterialParams& m) : kind_(kind), k_(k), material_(m) {
        if (k < 0) throw ShellError(ErrorCode::InvalidGeometry, "mode index must be nonnegative");
        if (kind == OperatorKind::Lame) {
            const ElasticityTensor a = elasticity_tensor(m);
            lam_ = a.lambda;
            mu_ = a.mu;
        }
    }

    static void check_radius(double r) {
        if (!(r > 0.0)) throw ShellError(ErrorCode::QuadratureUnderflow, "radius must be positive");
    }

    OperatorKind kind_;
    int k_;
    MaterialParams material_;
    double lam_ = 0.0;
    double mu_ = 0.0;
};

inline ModeForm laplace_form(int k) { return ModeForm::laplace(k); }
inline ModeForm lame_form(int k, const MaterialParams& m) { return ModeForm::lame(k, m); }

/// Limit of the membrane dispersion sequence as k -> infinity: zero for
/// developable and hyperbolic shells, min H0 for elliptic ones.
inline double membrane_limit(const ShellClass& c) {
    switch (c.tag) {
        case ShellTag::Cylinder:
        case ShellTag::Cone:
        case ShellTag::Hyperbolic:
            return 0.0;
        case ShellTag::EllipticAiry:
        case ShellTag::EllipticGaussian:
        case ShellTag::EllipticOther:
            return c.h0_min;
        case ShellTag::Plate:
            throw ShellError(ErrorCode::NotApplicable, "plates have no membrane limit");
        case ShellTag::Degenerate:
            break;
    }
    throw ShellError(ErrorCode::NotApplicable, "membrane limit undefined for degenerate shells");
}

}  // namespace shellmodes
