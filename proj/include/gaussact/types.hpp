// types.hpp — Dense matrix aliases, tolerances, and the covariance-matrix
// domain types. Mode ordering is interleaved (q1, p1, q2, p2, ...) everywhere;
// covariance matrices are vacuum-normalized (vacuum mode = 2x2 identity).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gaussact/errors.hpp"

namespace gaussact {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Numerical tolerances, centralized. Defaults are chosen so that
// double-precision eigensolvers pass on well-conditioned inputs while genuine
// violations are still caught.
struct Tolerances {
    double sym = 1e-10;   // max abs asymmetry accepted in symmetric matrices
    double psd = 1e-9;    // relative PSD slack: min eig >= -psd * (1 + max|entry|)
    double eig = 1e-8;    // slack on symplectic eigenvalues around 1
    double symp = 1e-9;   // max abs residual of S J S^t - J
};

namespace detail {

template <typename Scalar>
Scalar max_asymmetry(const Mat<Scalar>& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<Scalar>::infinity();
    }
    return (m - m.transpose()).template lpNorm<Eigen::Infinity>();
}

} // namespace detail

// Covariance matrix of an n-mode Gaussian state: 2n x 2n real symmetric.
// Symmetry is enforced at construction (then symmetrized exactly);
// physicality (g + iJ >= 0) is a separate query, so deliberately unphysical
// matrices can still be built for predicates and tests.
template <typename Scalar>
struct CovarianceMatrix {
    Index n_modes = 0;
    Mat<Scalar> data;

    CovarianceMatrix() = default;

    explicit CovarianceMatrix(Mat<Scalar> m, const Tolerances& tol = {})
        : n_modes(m.rows() / 2), data(std::move(m)) {
        if (data.rows() != data.cols() || data.rows() % 2 != 0) {
            throw ShapeMismatch("CovarianceMatrix: matrix must be 2n x 2n");
        }
        if (detail::max_asymmetry(data) > tol.sym) {
            throw ShapeMismatch("CovarianceMatrix: matrix not symmetric within tolerance");
        }
        data = ((data + data.transpose()) / Scalar(2)).eval();
    }
};

// Williamson symplectic eigenvalues, sorted descending. For a physical state
// every value is >= 1 - tol.eig; values equal to 1 mark pure modes.
template <typename Scalar>
struct SymplecticSpectrum {
    std::vector<Scalar> values;

    bool all_pure(Scalar tol = Scalar(1e-8)) const {
        for (Scalar v : values) {
            if (std::abs(v - Scalar(1)) > tol) return false;
        }
        return true;
    }
};

// J(n) = direct sum of n copies of [[0,1],[-1,0]], in interleaved mode order.
template <typename Scalar>
Mat<Scalar> symplectic_form(Index n_modes) {
    Mat<Scalar> j = Mat<Scalar>::Zero(2 * n_modes, 2 * n_modes);
    for (Index i = 0; i < n_modes; ++i) {
        j(2 * i, 2 * i + 1) = Scalar(1);
        j(2 * i + 1, 2 * i) = Scalar(-1);
    }
    return j;
}

// A 2n x 2n matrix S with S J S^t = J, checked at construction.
template <typename Scalar>
struct SymplecticMatrix {
    Index n_modes = 0;
    Mat<Scalar> data;

    SymplecticMatrix() = default;

    explicit SymplecticMatrix(Mat<Scalar> m, const Tolerances& tol = {})
        : n_modes(m.rows() / 2), data(std::move(m)) {
        if (data.rows() != data.cols() || data.rows() % 2 != 0) {
            throw ShapeMismatch("SymplecticMatrix: matrix must be 2n x 2n");
        }
        const Scalar res = residual();
        if (!(res <= static_cast<Scalar>(tol.symp))) {
            throw DomainError("SymplecticMatrix: S J S^t = J violated, residual " +
                              std::to_string(static_cast<double>(res)));
        }
    }

    Scalar residual() const {
        const Mat<Scalar> j = symplectic_form<Scalar>(n_modes);
        return (data * j * data.transpose() - j).template lpNorm<Eigen::Infinity>();
    }
};

using CovarianceMatrixd = CovarianceMatrix<double>;
using SymplecticSpectrumd = SymplecticSpectrum<double>;
using SymplecticMatrixd = SymplecticMatrix<double>;

} // namespace gaussact
