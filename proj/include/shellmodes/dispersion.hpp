#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "shellmodes/assembly.hpp"
#include "shellmodes/eigen_solver.hpp"
#include "shellmodes/error.hpp"
#include "shellmodes/geometry.hpp"
#include "shellmodes/mesh.hpp"
#include "shellmodes/operators.hpp"

namespace shellmodes {

struct MeshSpec {
    int n_thick = 2;
    int n_merid = 8;
    int geo_degree = 3;
    bool graded = false;
    friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

/// Stop after `window` consecutive rising values above the running minimum,
/// or at k = cap.
struct KPolicy {
    int window = 5;
    int cap = 200;
    friend bool operator==(const KPolicy&, const KPolicy&) = default;
};

enum class StopReason { RiseDetected, KmaxHit };

struct DispersionEntry {
    int k;
    double lambda;
    double residual;
};

struct DispersionCurve {
    double eps = 0.0;
    std::vector<DispersionEntry> entries;
    int argmin_k = 0;
    double lambda_min = std::numeric_limits<double>::infinity();
    StopReason stop_reason = StopReason::KmaxHit;
};

/// Thrown when the k cap is reached before the rise criterion; carries the
/// partial curve.
class KmaxExceeded : public ShellError {
public:
    explicit KmaxExceeded(DispersionCurve partial)
        : ShellError(ErrorCode::KmaxExceeded, "k cap reached before the dispersion curve rose"),
          partial_(std::move(partial)) {}
    const DispersionCurve& partial() const { return partial_; }

private:
    DispersionCurve partial_;
};

inline MeridianMesh build_mesh(const MeridianProfile& profile, double eps, const MeshSpec& spec) {
    MeridianMesh mesh = build_uniform(profile, eps, spec.n_thick, spec.n_merid, spec.geo_degree);
    return spec.graded ? refine_boundary_layers(mesh, eps) : mesh;
}

inline ModeForm make_form(OperatorKind op, const MaterialParams& m) {
    return op == OperatorKind::Laplace ? ModeForm::laplace(0) : ModeForm::lame(0, m);
}

/// True once the last `window` entries all exceed the running minimum and
/// strictly increase. The monotone requirement keeps the sweep going across
/// the hump between the k = 0 well and the high-k well of barrel curves.
inline bool rise_detected(const std::vector<DispersionEntry>& e, double lambda_min, int window) {
    const int n = static_cast<int>(e.size());
    if (window < 1 || n < window + 1) return false;
    for (int i = n - window; i < n; ++i)
        if (!(e[i].lambda > lambda_min) || !(e[i].lambda > e[i - 1].lambda)) return false;
    return true;
}

/// Dispersion curve k -> first eigenvalue of the mode-k problem, for
/// k = 0, 1, ... until the rise criterion or the cap. The mesh and the
/// k-power components are assembled once.
inline DispersionCurve sweep_k(const MeridianProfile& profile, const MaterialParams& material, OperatorKind op, double eps,
                               const MeshSpec& mesh_spec, int p, const KPolicy& policy, const EigenOptions& eig = {}) {
    const MeridianMesh mesh = build_mesh(profile, eps, mesh_spec);
    const ModeComponents comp = assemble_components(make_form(op, material), mesh, p);
    DispersionCurve curve;
    curve.eps = eps;
    for (int k = 0; k <= policy.cap; ++k) {
        const EigenResult r = smallest_eigenpairs(make_system(comp, k), eig);
        curve.entries.push_back({k, r.eigenvalues.front(), r.residuals.front()});
        if (r.eigenvalues.front() < curve.lambda_min) {
            curve.lambda_min = r.eigenvalues.front();
            curve.argmin_k = k;
        }
        if (rise_detected(curve.entries, curve.lambda_min, policy.window)) {
            curve.stop_reason = StopReason::RiseDetected;
            return curve;
        }
    }
    curve.stop_reason = StopReason::KmaxHit;
    throw KmaxExceeded(std::move(curve));
}

struct FirstMode {
    int k;
    double lambda;
};

/// Global minimum of a complete curve, ties toward smaller k.
inline FirstMode first_mode(const DispersionCurve& curve) {
    if (curve.stop_reason != StopReason::RiseDetected || curve.entries.empty())
        throw ShellError(ErrorCode::IncompleteCurve, "dispersion curve did not reach its minimum");
    FirstMode best{curve.entries.front().k, curve.entries.front().lambda};
    for (const auto& e : curve.entries)
        if (e.lambda < best.lambda) best = {e.k, e.lambda};
    return best;
}

struct OrderSample {
    double eps;
    double lambda;
};

/// Least-squares slope of log(lambda - offset) against log(eps) over the
/// `use` smallest half-thicknesses, which must span at least one decade.
inline double estimate_order(std::vector<OrderSample> samples, double offset, int use = 3) {
    if (static_cast<int>(samples.size()) < 3 || use < 3)
        throw ShellError(ErrorCode::InsufficientSpan, "order estimate needs at least three samples");
    std::sort(samples.begin(), samples.end(), [](const OrderSample& a, const OrderSample& b) { return a.eps < b.eps; });
    samples.resize(std::min<std::size_t>(samples.size(), static_cast<std::size_t>(use)));
    if (!(samples.back().eps >= 10.0 * samples.front().eps * (1.0 - 1e-9)))
        throw ShellError(ErrorCode::InsufficientSpan, "thickness samples span less than one decade");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        const double d = s.lambda - offset;
        if (!(d > 0.0) || !(s.eps > 0.0))
            throw ShellError(ErrorCode::InsufficientSpan, "lambda - offset must be positive for every sample");
        const double x = std::log(s.eps), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SweepRow {
    double eps;
    FirstMode mode;
    DispersionCurve curve;
};

/// First modes over a list of half-thicknesses, reordered to strictly
/// decreasing eps.
inline std::vector<SweepRow> sweep_thickness(const MeridianProfile& profile, const MaterialParams& material, OperatorKind op,
                                             std::vector<double> eps_list, const MeshSpec& mesh_spec, int p,
                                             const KPolicy& policy, const EigenOptions& eig = {}) {
    std::sort(eps_list.begin(), eps_list.end(), std::greater<>());
    eps_list.erase(std::unique(eps_list.begin(), eps_list.end()), eps_list.end());
    std::vector<SweepRow> rows;
    for (double eps : eps_list) {
        DispersionCurve c = sweep_k(profile, material, op, eps, mesh_spec, p, policy, eig);
        const FirstMode fm = first_mode(c);
        rows.push_back({eps, fm, std::move(c)});
    }
    return rows;
}

}  // namespace shellmodes
