#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "shellmodes/assembly.hpp"
#include "shellmodes/error.hpp"

namespace shellmodes {

struct EigenOptions {
    int count = 1;          // wanted eigenpairs
    double tol = 1e-9;      // relative residual
    int max_restarts = 500;
    int max_basis = 0;      // Krylov basis size; 0 selects max(2 count + 20, 40)
};

struct EigenResult {
    std::vector<double> eigenvalues;          // ascending
    std::vector<Eigen::VectorXd> eigenvectors;  // M-orthonormal
    std::vector<double> residuals;
    int iterations = 0;  // operator applications
};

/// Smallest eigenpairs of K x = lambda M x with K, M symmetric positive
/// definite. Shift-invert at sigma = 0: Krylov iteration on K^{-1} M in the
/// M inner product with full reorthogonalization, Rayleigh-Ritz on the
/// explicit projection, and thick restarts that keep the leading Ritz
/// vectors plus a small buffer.
inline EigenResult smallest_eigenpairs(const SparseMatrix& K, const SparseMatrix& M, const EigenOptions& opt = {}) {
    const int n = static_cast<int>(K.rows());
    if (opt.count < 1) throw ShellError(ErrorCode::NoConvergence, "eigenpair count must be >= 1");
    if (n < opt.count) throw ShellError(ErrorCode::NoConvergence, "system smaller than the requested count");

    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower> ldlt;
    ldlt.compute(K);
    if (ldlt.info() != Eigen::Success) throw ShellError(ErrorCode::FactorizationFailure, "LDL^T of K failed");
    if ((ldlt.vectorD().array() <= 0.0).any())
        throw ShellError(ErrorCode::FactorizationFailure, "K is not positive definite on the free dofs");

    const int want = opt.count;
    const int keep = std::min(n, want + 2);
    const int max_basis = std::min(n, opt.max_basis > 0 ? std::max(opt.max_basis, keep + 2) : std::max(2 * want + 20, 40));

    // V holds an M-orthonormal basis, W = K^{-1} M V, MV = M V.
    Eigen::MatrixXd V(n, max_basis + 1), W(n, max_basis), MV(n, max_basis + 1);

    const auto m_orthonormalize = [&](Eigen::VectorXd& v, int cols) -> double {
        for (int pass = 0; pass < 2; ++pass) {
            if (cols > 0) {
                const Eigen::VectorXd c = MV.leftCols(cols).transpose() * v;
                v.noalias() -= V.leftCols(cols) * c;
            }
        }
        const Eigen::VectorXd Mv = M * v;
        return std::sqrt(std::max(0.0, v.dot(Mv)));
    };

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * uni(rng);
    {
        const double nv = m_orthonormalize(v, 0);
        V.col(0) = v / nv;
        MV.col(0) = M * V.col(0);
    }

    int basis = 1;  // columns of V currently valid
    int filled = 0; // columns of W currently valid
    int applications = 0;
    EigenResult result;

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        // Expand the basis.
        while (filled < max_basis && filled < basis) {
            Eigen::VectorXd w = ldlt.solve(MV.col(filled));
            ++applications;
            W.col(filled) = w;
            ++filled;
            if (basis >= n) continue;
            Eigen::VectorXd next = w;
            const double nrm = m_orthonormalize(next, basis);
            const double ref = std::sqrt(std::abs(w.dot(M * w)));
            if (!(nrm > 1e-14 * ref)) {
                // Invariant subspace: restart the direction from a fresh random vector.
                for (int i = 0; i < n; ++i) next[i] = uni(rng);
                const double nr2 = m_orthonormalize(next, basis);
                next /= nr2;
            } else {
                next /= nrm;
            }
            V.col(basis) = next;
            MV.col(basis) = M * next;
            ++basis;
        }

        // Rayleigh-Ritz on span(V[:, :filled]) for the operator K^{-1} M.
        const int m = filled;
        Eigen::MatrixXd H = MV.leftCols(m).transpose() * W.leftCols(m);
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        if (es.info() != Eigen::Success) throw ShellError(ErrorCode::NoConvergence, "projected eigenproblem failed");
        // Largest theta first.
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = m - 1 - i;

        bool converged = true;
        result = EigenResult{};
        for (int i = 0; i < want; ++i) {
            const Eigen::VectorXd y = es.eigenvectors().col(order[i]);
            const double theta = es.eigenvalues()[order[i]];
            if (!(theta > 0.0)) throw ShellError(ErrorCode::NoConvergence, "non-positive Ritz value");
            Eigen::VectorXd x = V.leftCols(m) * y;
            const Eigen::VectorXd r = W.leftCols(m) * y - theta * x;
            const double res = std::sqrt(std::abs(r.dot(M * r))) / theta;
            if (res > opt.tol) converged = false;
            result.eigenvalues.push_back(1.0 / theta);
            result.eigenvectors.push_back(std::move(x));
            result.residuals.push_back(res);
        }
        if (converged || m >= n) {
            result.iterations = applications;
            break;
        }
        if (restart == opt.max_restarts)
            throw ShellError(ErrorCode::NoConvergence, "eigensolver hit the restart cap");

        // Thick restart: keep the leading Ritz vectors and the next Krylov direction.
        const int kept = std::min(std::max(keep, m / 2), m - 1);
        Eigen::MatrixXd Y(m, kept);
        for (int i = 0; i < kept; ++i) Y.col(i) = es.eigenvectors().col(order[i]);
        const Eigen::MatrixXd Vk = V.leftCols(m) * Y;
        const Eigen::MatrixXd Wk = W.leftCols(m) * Y;
        const Eigen::VectorXd vnext = V.col(filled);
        V.leftCols(kept) = Vk;
        W.leftCols(kept) = Wk;
        for (int i = 0; i < kept; ++i) MV.col(i) = M * V.col(i);
        Eigen::VectorXd nx = vnext;
        const double nn = m_orthonormalize(nx, kept);
        V.col(kept) = nx / nn;
        MV.col(kept) = M * V.col(kept);
        basis = kept + 1;
        filled = kept;
    }

    // Eigenvalues stay the inverted Ritz values: forming K x directly loses
    // digits on thin shells, where |K| |x| dwarfs x^T K x.
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
        Eigen::VectorXd& x = result.eigenvectors[i];
        x /= std::sqrt(x.dot(M * x));
        Eigen::Index imax = 0;
        x.cwiseAbs().maxCoeff(&imax);
        if (x[imax] < 0.0) x = -x;
    }
    std::vector<std::size_t> idx(result.eigenvalues.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return result.eigenvalues[a] < result.eigenvalues[b]; });
    EigenResult sorted;
    sorted.iterations = result.iterations;
    for (std::size_t i : idx) {
        sorted.eigenvalues.push_back(result.eigenvalues[i]);
        sorted.eigenvectors.push_back(result.eigenvectors[i]);
        sorted.residuals.push_back(result.residuals[i]);
    }
    return sorted;
}

/// Physical eigenpairs: the unit-material problem rescaled, so eigenvalues
/// are exactly proportional to E/rho and vectors are orthonormal in the
/// physical mass.
inline EigenResult smallest_eigenpairs(const AssembledSystem& sys, const EigenOptions& opt = {}) {
    EigenResult r = smallest_eigenpairs(sys.K, sys.M, opt);
    const double m = 1.0 / std::sqrt(sys.mass_scale);
    for (double& l : r.eigenvalues) l *= sys.lambda_scale();
    for (Eigen::VectorXd& x : r.eigenvectors) x *= m;
    return r;
}

}  // namespace shellmodes
