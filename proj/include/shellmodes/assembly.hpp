#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <ostream>
#include <vector>

#include "shellmodes/error.hpp"
#include "shellmodes/mesh.hpp"
#include "shellmodes/operators.hpp"
#include "shellmodes/quadrature.hpp"

namespace shellmodes {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Nodal degrees of freedom of a degree-p continuous tensor Gauss-Lobatto space.
struct DofLayout {
    int p = 1;
    int fields = 1;
    int along = 0;   // nodes along the meridian
    int across = 0;  // nodes across the thickness
    std::vector<MeridianPoint> node_coords;
    std::vector<bool> lateral;  // per node

    int node_count() const { return along * across; }
    int node_id(int im, int it) const { return im * across + it; }
    int dof(int node, int field) const { return node * fields + field; }
    int dof_count() const { return node_count() * fields; }
};

/// K(k) = K0 + k K1 + k^2 K2 and M on every dof (no constraints applied).
/// The matrices belong to the unit-material form; the physical ones are
/// stiffness_scale * K and mass_scale * M.
struct ModeComponents {
    ModeForm form;
    DofLayout layout;
    SparseMatrix K0, K1, K2, M;
    std::vector<int> free_dofs;         // ascending
    std::vector<int> constrained_dofs;  // lateral Dirichlet set, ascending
    double stiffness_scale = 1.0;
    double mass_scale = 1.0;

    SparseMatrix full_stiffness(int k) const {
        const double kk = static_cast<double>(k);
        SparseMatrix K = K0 + kk * K1 + (kk * kk) * K2;
        return K;
    }
};

/// Stiffness and mass of one Fourier mode on the free dofs.
struct AssembledSystem {
    int k = 0;
    int p = 1;
    OperatorKind kind = OperatorKind::Laplace;
    SparseMatrix K;  // unit material
    SparseMatrix M;
    std::vector<int> free_dofs;         // reduced index -> full dof
    std::vector<int> constrained_dofs;
    DofLayout layout;
    double stiffness_scale = 1.0;
    double mass_scale = 1.0;

    int size() const { return static_cast<int>(K.rows()); }
    SparseMatrix stiffness() const { return stiffness_scale * K; }
    SparseMatrix mass() const { return mass_scale * M; }
    double lambda_scale() const { return stiffness_scale / mass_scale; }

    /// Restriction of a full-dof vector to the free dofs.
    Eigen::VectorXd restrict(const Eigen::VectorXd& full) const {
        Eigen::VectorXd v(free_dofs.size());
        for (std::size_t i = 0; i < free_dofs.size(); ++i) v[i] = full[free_dofs[i]];
        return v;
    }

    /// Extension by zero on the constrained dofs.
    Eigen::VectorXd extend(const Eigen::VectorXd& reduced) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(layout.dof_count());
        for (std::size_t i = 0; i < free_dofs.size(); ++i) v[free_dofs[i]] = reduced[i];
        return v;
    }
};

namespace detail {

inline SparseMatrix reduce(const SparseMatrix& A, const std::vector<int>& full_to_free, int n_free) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(A.nonZeros());
    for (int c = 0; c < A.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(A, c); it; ++it) {
            const int i = full_to_free[it.row()], j = full_to_free[it.col()];
            if (i >= 0 && j >= 0) trip.emplace_back(i, j, it.value());
        }
    SparseMatrix R(n_free, n_free);
    R.setFromTriplets(trip.begin(), trip.end());
    return R;
}

}  // namespace detail

inline DofLayout make_layout(const MeridianMesh& mesh, int p, int fields) {
    DofLayout L;
    L.p = p;
    L.fields = fields;
    L.along = mesh.n_merid() * p + 1;
    L.across = mesh.n_thick() * p + 1;
    L.node_coords.resize(L.node_count());
    L.lateral.assign(L.node_count(), false);
    const std::vector<double> gll = gauss_lobatto_points(p);
    for (int im = 0; im < L.along; ++im) {
        const int ei = std::min(im / p, mesh.n_merid() - 1);
        for (int it = 0; it < L.across; ++it) {
            const int ej = std::min(it / p, mesh.n_thick() - 1);
            const ElementMapPoint m = mesh.map(ei, ej, gll[im - ei * p], gll[it - ej * p]);
            L.node_coords[L.node_id(im, it)] = {m.r, m.tau};
            L.lateral[L.node_id(im, it)] = (im == 0 || im == L.along - 1);
        }
    }
    return L;
}

/// Assembles the k-power components of a mode form with degree-p nodal
/// elements and (p+2)-point Gauss quadrature per direction.
inline ModeComponents assemble_components(const ModeForm& physical, const MeridianMesh& mesh, int p) {
    if (p < 1) throw ShellError(ErrorCode::InvalidGeometry, "interpolation degree must be >= 1");
    const ModeForm form = physical.unit();
    const int nf = form.field_count();
    const int ns = form.strain_size();
    ModeComponents out{physical, make_layout(mesh, p, nf), {}, {}, {}, {}, {}, {}, physical.stiffness_scale(), physical.mass_scale()};
    const DofLayout& L = out.layout;

    const LagrangeBasis1D basis(gauss_lobatto_points(p));
    const QuadratureRule quad = gauss_legendre(p + 2);
    const int nq = static_cast<int>(quad.points.size());
    const int nb = p + 1;
    std::vector<std::vector<double>> val(nq), der(nq);
    for (int q = 0; q < nq; ++q) basis.eval(quad.points[q], val[q], der[q]);

    // Constitutive matrix by applying the form's stress map to unit strains.
    Eigen::MatrixXd D(ns, ns);
    for (int s = 0; s < ns; ++s) {
        StrainVector e{};
        e[s] = 1.0;
        const StrainVector sig = form.stress(e);
        for (int t = 0; t < ns; ++t) D(t, s) = sig[t];
    }
    const ModeForm form0 = form.with_k(0), form1 = form.with_k(1);

    const int ne = nb * nb * nf;
    std::vector<Eigen::Triplet<double>> t0, t1, t2, tm;
    const std::size_t reserve = static_cast<std::size_t>(mesh.n_elements()) * ne * ne;
    t0.reserve(reserve);
    t1.reserve(reserve);
    t2.reserve(reserve);
    tm.reserve(static_cast<std::size_t>(mesh.n_elements()) * nb * nb * nb * nb * nf);

    Eigen::MatrixXd B0(ns, ne), B1(ns, ne), Ke0(ne, ne), Ke1(ne, ne), Ke2(ne, ne), Me(nb * nb, nb * nb);
    std::vector<int> gdof(ne);
    std::vector<int> gnode(nb * nb);

    for (int ej = 0; ej < mesh.n_thick(); ++ej) {
        for (int ei = 0; ei < mesh.n_merid(); ++ei) {
            for (int b = 0; b < nb; ++b)
                for (int a = 0; a < nb; ++a) {
                    const int ln = b * nb + a;
                    gnode[ln] = L.node_id(ei * p + a, ej * p + b);
                    for (int c = 0; c < nf; ++c) gdof[ln * nf + c] = L.dof(gnode[ln], c);
                }
            Ke0.setZero();
            Ke1.setZero();
            Ke2.setZero();
            Me.setZero();
            for (int qb = 0; qb < nq; ++qb) {
                for (int qa = 0; qa < nq; ++qa) {
                    const ElementMapPoint m = mesh.map(ei, ej, quad.points[qa], quad.points[qb]);
                    const double jac = m.jacobian();
                    if (!(jac > 0.0)) throw ShellError(ErrorCode::DegenerateJacobian, "non-positive Jacobian at quadrature point");
                    if (!(m.r > 0.0)) throw ShellError(ErrorCode::QuadratureUnderflow, "quadrature point on or across the axis");
                    const double w = quad.weights[qa] * quad.weights[qb] * jac * m.r;
                    // Inverse of d(r, tau)/d(xi, eta); det2 = -jacobian().
                    const double det2 = m.r_xi * m.tau_eta - m.r_eta * m.tau_xi;
                    for (int b = 0; b < nb; ++b) {
                        for (int a = 0; a < nb; ++a) {
                            const int ln = b * nb + a;
                            const double N = val[qa][a] * val[qb][b];
                            const double Nxi = der[qa][a] * val[qb][b];
                            const double Neta = val[qa][a] * der[qb][b];
                            const double Nr = (Nxi * m.tau_eta - Neta * m.tau_xi) / det2;
                            const double Nt = (Neta * m.r_xi - Nxi * m.r_eta) / det2;
                            for (int c = 0; c < nf; ++c) {
                                FieldJet jet;
                                jet.value[c] = N;
                                jet.d_r[c] = Nr;
                                jet.d_tau[c] = Nt;
                                const StrainVector s0 = form0.strain(jet, m.r);
                                const StrainVector s1 = form1.strain(jet, m.r);
                                for (int s = 0; s < ns; ++s) {
                                    B0(s, ln * nf + c) = s0[s];
                                    B1(s, ln * nf + c) = s1[s] - s0[s];
                                }
                            }
                            for (int b2 = 0; b2 < nb; ++b2)
                                for (int a2 = 0; a2 < nb; ++a2)
                                    Me(ln, b2 * nb + a2) += w * N * val[qa][a2] * val[qb][b2];
                        }
                    }
                    const Eigen::MatrixXd DB0 = D * B0;
                    const Eigen::MatrixXd DB1 = D * B1;
                    Ke0.noalias() += w * B0.transpose() * DB0;
                    const Eigen::MatrixXd cross = B0.transpose() * DB1;
                    Ke1.noalias() += w * (cross + cross.transpose());
                    Ke2.noalias() += w * B1.transpose() * DB1;
                }
            }
            const auto push = [&](std::vector<Eigen::Triplet<double>>& t, const Eigen::MatrixXd& A) {
                for (int j = 0; j < ne; ++j)
                    for (int i = 0; i < ne; ++i) {
                        const double v = 0.5 * (A(i, j) + A(j, i));
                        if (v != 0.0) t.emplace_back(gdof[i], gdof[j], v);
                    }
            };
            push(t0, Ke0);
            push(t1, Ke1);
            push(t2, Ke2);
            const double rho = form.density();
            for (int j = 0; j < nb * nb; ++j)
                for (int i = 0; i < nb * nb; ++i) {
                    const double v = 0.5 * rho * (Me(i, j) + Me(j, i));
                    if (v == 0.0) continue;
                    for (int c = 0; c < nf; ++c) tm.emplace_back(L.dof(gnode[i], c), L.dof(gnode[j], c), v);
                }
        }
    }

    const int n = L.dof_count();
    const auto build = [n](SparseMatrix& A, std::vector<Eigen::Triplet<double>>& t) {
        A.resize(n, n);
        A.setFromTriplets(t.begin(), t.end());
        t.clear();
        t.shrink_to_fit();
    };
    build(out.K0, t0);
    build(out.K1, t1);
    build(out.K2, t2);
    build(out.M, tm);

    for (int node = 0; node < L.node_count(); ++node)
        for (int c = 0; c < nf; ++c) (L.lateral[node] ? out.constrained_dofs : out.free_dofs).push_back(L.dof(node, c));
    std::sort(out.free_dofs.begin(), out.free_dofs.end());
    std::sort(out.constrained_dofs.begin(), out.constrained_dofs.end());
    return out;
}

/// Stiffness and mass for mode k with the lateral dofs eliminated.
inline AssembledSystem make_system(const ModeComponents& comp, int k) {
    if (k < 0) throw ShellError(ErrorCode::InvalidGeometry, "mode index must be nonnegative");
    std::vector<int> full_to_free(comp.layout.dof_count(), -1);
    for (std::size_t i = 0; i < comp.free_dofs.size(); ++i) full_to_free[comp.free_dofs[i]] = static_cast<int>(i);
    const int nfree = static_cast<int>(comp.free_dofs.size());
    AssembledSystem sys;
    sys.k = k;
    sys.p = comp.layout.p;
    sys.kind = comp.form.kind();
    sys.K = detail::reduce(comp.full_stiffness(k), full_to_free, nfree);
    sys.M = detail::reduce(comp.M, full_to_free, nfree);
    sys.free_dofs = comp.free_dofs;
    sys.constrained_dofs = comp.constrained_dofs;
    sys.layout = comp.layout;
    sys.stiffness_scale = comp.stiffness_scale;
    sys.mass_scale = comp.mass_scale;
    return sys;
}

inline AssembledSystem assemble(const ModeForm& form, const MeridianMesh& mesh, int p) {
    return make_system(assemble_components(form, mesh, p), form.k());
}

/// Matrix-market style coordinate listing, for debugging.
inline void dump_matrix(std::ostream& os, const SparseMatrix& A) {
    os << "%%MatrixMarket matrix coordinate real general\n" << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
    os.precision(17);
    for (int c = 0; c < A.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(A, c); it; ++it)
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

}  // namespace shellmodes
