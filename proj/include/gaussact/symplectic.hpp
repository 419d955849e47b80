// symplectic.hpp — The symplectic form, block composition, Williamson
// symplectic eigenvalues, Gaussian von Neumann entropy (bits), and the
// PSD test for Hermitian matrices via their real embedding.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gaussact/errors.hpp"
#include "gaussact/types.hpp"

namespace gaussact {

// ----------------------------- block composition -----------------------------

template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> direct_sum(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
    using S = typename DerivedA::Scalar;
    Mat<S> out = Mat<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

template <typename Scalar>
CovarianceMatrix<Scalar> direct_sum(const CovarianceMatrix<Scalar>& a,
                                    const CovarianceMatrix<Scalar>& b) {
    return CovarianceMatrix<Scalar>(direct_sum(a.data, b.data));
}

// Reorder modes: perm[i] = source mode placed at slot i. Mode permutations
// move (q,p) pairs together, so the result is again symplectic-compatible.
template <typename Scalar>
Mat<Scalar> mode_permutation(const std::vector<Index>& perm) {
    const Index n = static_cast<Index>(perm.size());
    Mat<Scalar> p = Mat<Scalar>::Zero(2 * n, 2 * n);
    for (Index i = 0; i < n; ++i) {
        p(2 * i, 2 * perm[static_cast<std::size_t>(i)]) = Scalar(1);
        p(2 * i + 1, 2 * perm[static_cast<std::size_t>(i)] + 1) = Scalar(1);
    }
    return p;
}

template <typename Scalar>
CovarianceMatrix<Scalar> permute_modes(const CovarianceMatrix<Scalar>& g,
                                       const std::vector<Index>& perm) {
    Mat<Scalar> p = mode_permutation<Scalar>(perm);
    return CovarianceMatrix<Scalar>((p * g.data * p.transpose()).eval());
}

// ------------------------------- PSD predicate -------------------------------

// Minimum eigenvalue of the Hermitian matrix R + iK, computed through the
// real symmetric embedding [[R, -K], [K, R]] so only a real solver is needed.
// Each eigenvalue of R + iK shows up twice in the embedding.
template <typename Scalar>
Scalar hermitian_min_eigenvalue(const Mat<Scalar>& real_part, const Mat<Scalar>& imag_part,
                                const Tolerances& tol = {}) {
    const Index m = real_part.rows();
    if (real_part.cols() != m || imag_part.rows() != m || imag_part.cols() != m) {
        throw ShapeMismatch("hermitian_min_eigenvalue: real and imaginary parts must be square and equal-sized");
    }
    if (detail::max_asymmetry(real_part) > tol.sym ||
        (imag_part + imag_part.transpose()).template lpNorm<Eigen::Infinity>() > tol.sym) {
        throw ShapeMismatch("hermitian_min_eigenvalue: expected symmetric real part and antisymmetric imaginary part");
    }
    if (m == 0) return Scalar(0);
    Mat<Scalar> emb(2 * m, 2 * m);
    emb << real_part, -imag_part, imag_part, real_part;
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> solver(emb, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NonConvergence("hermitian_min_eigenvalue: real-embedding eigensolver failed");
    }
    return solver.eigenvalues().minCoeff();
}

// True iff R + iK >= 0 within the relative slack tol.psd * (1 + max|entry|).
template <typename Scalar>
bool is_psd_hermitian(const Mat<Scalar>& real_part, const Mat<Scalar>& imag_part,
                      const Tolerances& tol = {}) {
    if (real_part.rows() == 0) return true;
    const Scalar scale = std::max(real_part.template lpNorm<Eigen::Infinity>(),
                                  imag_part.template lpNorm<Eigen::Infinity>());
    return hermitian_min_eigenvalue(real_part, imag_part, tol) >= -tol.psd * (Scalar(1) + scale);
}

// Uncertainty relation g + iJ >= 0.
template <typename Scalar>
bool is_physical(const CovarianceMatrix<Scalar>& g, const Tolerances& tol = {}) {
    return is_psd_hermitian<Scalar>(g.data, symplectic_form<Scalar>(g.n_modes), tol);
}

// --------------------------- Williamson eigenvalues ---------------------------

// Symplectic eigenvalues of g: the eigenvalues of J*g come in pairs +-i*lambda;
// conjugate pairs are matched by magnitude and deduplicated, values clamped
// to >= 0. Sorted descending.
template <typename Scalar>
SymplecticSpectrum<Scalar> symplectic_eigenvalues(const CovarianceMatrix<Scalar>& g,
                                                  const Tolerances& tol = {}) {
    (void)tol;  // kept for interface uniformity; the pairing needs no knob
    const Index n = g.n_modes;
    SymplecticSpectrum<Scalar> spec;
    if (n == 0) return spec;
    Mat<Scalar> jg = symplectic_form<Scalar>(n) * g.data;
    Eigen::EigenSolver<Mat<Scalar>> solver(jg, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NonConvergence("symplectic_eigenvalues: eigensolver failed on J*g");
    }
    const auto ev = solver.eigenvalues();
    const Scalar scale = std::max(Scalar(1), g.data.template lpNorm<Eigen::Infinity>());
    Scalar max_real = 0;
    std::vector<Scalar> mags(static_cast<std::size_t>(2 * n));
    for (Index i = 0; i < 2 * n; ++i) {
        max_real = std::max(max_real, std::abs(ev[i].real()));
        mags[static_cast<std::size_t>(i)] = std::abs(ev[i].imag());
    }
    if (max_real > Scalar(1e-6) * scale) {
        throw NonConvergence("symplectic_eigenvalues: J*g spectrum not of the form +-i*lambda; max |Re| residual " +
                             std::to_string(static_cast<double>(max_real)));
    }
    std::sort(mags.begin(), mags.end(), std::greater<Scalar>());
    spec.values.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        // conjugate partners are adjacent after sorting by magnitude
        Scalar lam = (mags[static_cast<std::size_t>(2 * i)] + mags[static_cast<std::size_t>(2 * i + 1)]) / Scalar(2);
        spec.values[static_cast<std::size_t>(i)] = std::max(lam, Scalar(0));
    }
    return spec;
}

// ------------------------------ Gaussian entropy ------------------------------

// Per-mode entropy term in bits:
//   g(lambda) = ((lambda+1)/2) log2((lambda+1)/2) - ((lambda-1)/2) log2((lambda-1)/2),
// with the second term -> 0 as lambda -> 1 (x log x limit). Values within
// tol_eig below 1 are clamped to exactly 1 to avoid logs of tiny negatives.
template <typename Scalar>
Scalar entropy_g(Scalar lambda, Scalar tol_eig = Scalar(1e-8)) {
    if (lambda < Scalar(1) - tol_eig) {
        throw UnphysicalState("entropy_g: symplectic eigenvalue " + std::to_string(static_cast<double>(lambda)) +
                              " below 1");
    }
    if (lambda <= Scalar(1)) return Scalar(0);
    const Scalar up = (lambda + Scalar(1)) / Scalar(2);
    const Scalar dn = (lambda - Scalar(1)) / Scalar(2);
    Scalar h = up * std::log2(up);
    if (lambda > Scalar(1) + tol_eig) {
        h -= dn * std::log2(dn);
    }
    return h;
}

// Von Neumann entropy of the Gaussian state with covariance g, in bits.
template <typename Scalar>
Scalar gaussian_entropy(const CovarianceMatrix<Scalar>& g, const Tolerances& tol = {}) {
    const SymplecticSpectrum<Scalar> spec = symplectic_eigenvalues(g, tol);
    Scalar h = 0;
    for (Scalar lam : spec.values) {
        h += entropy_g(lam, static_cast<Scalar>(tol.eig));
    }
    return h;
}

// ------------------------------ state constructors ------------------------------

template <typename Scalar>
CovarianceMatrix<Scalar> vacuum_state(Index n_modes) {
    return CovarianceMatrix<Scalar>(Mat<Scalar>::Identity(2 * n_modes, 2 * n_modes));
}

// Single-mode thermal state with mean photon number nbar: diag(2*nbar+1).
template <typename Scalar>
CovarianceMatrix<Scalar> thermal_state(Scalar nbar) {
    if (nbar < Scalar(0)) throw DomainError("thermal_state: nbar must be >= 0");
    return CovarianceMatrix<Scalar>(
        ((Scalar(2) * nbar + Scalar(1)) * Mat<Scalar>::Identity(2, 2)).eval());
}

// Two-mode squeezed vacuum with squeezing r: pure, each marginal thermal with
// lambda = cosh(2r).
template <typename Scalar>
CovarianceMatrix<Scalar> tmsv_state(Scalar r) {
    const Scalar c = std::cosh(Scalar(2) * r);
    const Scalar s = std::sinh(Scalar(2) * r);
    Mat<Scalar> g(4, 4);
    g << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return CovarianceMatrix<Scalar>(std::move(g));
}

// TMSV purifying a thermal state with symplectic eigenvalue lambda >= 1.
template <typename Scalar>
CovarianceMatrix<Scalar> tmsv_purification(Scalar lambda) {
    if (lambda < Scalar(1)) throw DomainError("tmsv_purification: lambda must be >= 1");
    const Scalar mu = std::sqrt(std::max(lambda * lambda - Scalar(1), Scalar(0)));
    Mat<Scalar> g(4, 4);
    g << lambda, 0, mu, 0,
         0, lambda, 0, -mu,
         mu, 0, lambda, 0,
         0, -mu, 0, lambda;
    return CovarianceMatrix<Scalar>(std::move(g));
}

} // namespace gaussact
