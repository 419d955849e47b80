// dilation.hpp — Symplectic Stinespring dilations of Gaussian channels.
// A channel (X, Y) on n modes is realized by a symplectic S on n+k modes,
// block layout S = [[X, Z], [X_c, Z_c]], together with a pure k-mode
// environment state: the first n output modes of S (g \oplus env) S^t
// reproduce X g X^t + Y, the remaining k modes are the complementary output.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "gaussact/channels.hpp"
#include "gaussact/errors.hpp"
#include "gaussact/symplectic.hpp"
#include "gaussact/types.hpp"

namespace gaussact {

template <typename Scalar>
struct Dilation {
    GaussianChannel<Scalar> channel;
    Index env_modes = 0;
    SymplecticMatrix<Scalar> S;          // on out + env modes
    CovarianceMatrix<Scalar> env_state;  // pure k-mode state

    Index total_modes() const { return channel.out_modes + env_modes; }

    Mat<Scalar> x_block() const { return S.data.topLeftCorner(2 * channel.out_modes, 2 * channel.in_modes); }
    Mat<Scalar> z_block() const { return S.data.topRightCorner(2 * channel.out_modes, 2 * env_modes); }
    Mat<Scalar> xc_block() const { return S.data.bottomLeftCorner(2 * env_modes, 2 * channel.in_modes); }
    Mat<Scalar> zc_block() const { return S.data.bottomRightCorner(2 * env_modes, 2 * env_modes); }
};

template <typename Scalar>
struct JointOutput {
    CovarianceMatrix<Scalar> joint;      // out modes then env modes
    CovarianceMatrix<Scalar> out_block;
    CovarianceMatrix<Scalar> env_block;
    Mat<Scalar> cross_block;             // 2*out x 2*env
};

namespace detail {

template <typename Scalar>
Scalar symplectic_residual(const Mat<Scalar>& s) {
    const Index n = s.rows() / 2;
    Mat<Scalar> j = symplectic_form<Scalar>(n);
    return (s * j * s.transpose() - j).template lpNorm<Eigen::Infinity>();
}

// Complete the 2n rows R = [X Z] (which satisfy R J R^t = J_n) to a full
// symplectic matrix by symplectic Gram-Schmidt over standard basis candidates,
// picking at each step the candidate with the largest residual / pairing.
template <typename Scalar>
Mat<Scalar> complete_symplectic(const Mat<Scalar>& first_rows, Index total_modes) {
    const Index dim = 2 * total_modes;
    const Index have = first_rows.rows() / 2;
    const Mat<Scalar> j = symplectic_form<Scalar>(total_modes);

    std::vector<Vec<Scalar>> as, bs;
    as.reserve(static_cast<std::size_t>(total_modes));
    bs.reserve(static_cast<std::size_t>(total_modes));
    for (Index i = 0; i < have; ++i) {
        as.push_back(first_rows.row(2 * i).transpose());
        bs.push_back(first_rows.row(2 * i + 1).transpose());
    }

    auto omega = [&](const Vec<Scalar>& u, const Vec<Scalar>& v) -> Scalar { return u.dot(j * v); };
    auto project_out = [&](Vec<Scalar> w) -> Vec<Scalar> {
        for (std::size_t i = 0; i < as.size(); ++i) {
            w += omega(w, as[i]) * bs[i] - omega(w, bs[i]) * as[i];
        }
        return w;
    };

    while (static_cast<Index>(as.size()) < total_modes) {
        Scalar best_norm = Scalar(0);
        Vec<Scalar> a;
        for (Index c = 0; c < dim; ++c) {
            Vec<Scalar> res = project_out(Vec<Scalar>::Unit(dim, c));
            const Scalar nrm = res.norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                a = std::move(res);
            }
        }
        if (best_norm < Scalar(1e-10)) {
            throw CompletionFailure("complete_symplectic: no candidate outside the symplectic span, residual " +
                                    std::to_string(static_cast<double>(best_norm)));
        }
        a /= best_norm;

        Scalar best_pair = Scalar(0);
        Vec<Scalar> b;
        for (Index c = 0; c < dim; ++c) {
            Vec<Scalar> res = project_out(Vec<Scalar>::Unit(dim, c));
            const Scalar pairing = omega(a, res);
            if (std::abs(pairing) > std::abs(best_pair)) {
                best_pair = pairing;
                b = std::move(res);
            }
        }
        if (std::abs(best_pair) < Scalar(1e-10)) {
            throw CompletionFailure("complete_symplectic: degenerate symplectic pairing, magnitude " +
                                    std::to_string(static_cast<double>(std::abs(best_pair))));
        }
        b /= best_pair;
        b -= a.dot(b) * a;  // Euclidean reduction; pairing conditions unaffected
        as.push_back(std::move(a));
        bs.push_back(std::move(b));
    }

    Mat<Scalar> s(dim, dim);
    for (Index i = 0; i < total_modes; ++i) {
        s.row(2 * i) = as[static_cast<std::size_t>(i)].transpose();
        s.row(2 * i + 1) = bs[static_cast<std::size_t>(i)].transpose();
    }
    return s;
}

// General construction: factor M = Y + i(J - X J X^t) = C C^dagger by a
// rank-revealing Hermitian eigendecomposition; each complex column becomes
// one vacuum environment mode, Z columns (Re c, -Im c). This orientation
// makes X J X^t + Z J_env Z^t = J hold, so [X Z] extends to a symplectic S.
template <typename Scalar>
Dilation<Scalar> dilate_general(const GaussianChannel<Scalar>& ch, const Tolerances& tol) {
    using Complex = std::complex<Scalar>;
    const Index n = ch.in_modes;
    Mat<Scalar> jn = symplectic_form<Scalar>(n);
    Mat<Scalar> imag = jn - ch.X * jn * ch.X.transpose();
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> m =
        ch.Y.template cast<Complex>() + Complex(0, 1) * imag.template cast<Complex>();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NonConvergence("dilate: Hermitian eigendecomposition of the CP matrix failed");
    }
    const auto mu = solver.eigenvalues();
    const Scalar mu_max = mu.size() > 0 ? mu.maxCoeff() : Scalar(0);
    const Scalar rank_cut = Scalar(1e-10) * std::max(mu_max, Scalar(0));

    std::vector<Index> keep;
    for (Index i = 0; i < mu.size(); ++i) {
        if (mu[i] > rank_cut && mu[i] > Scalar(0)) keep.push_back(i);
    }
    const Index k = static_cast<Index>(keep.size());

    Mat<Scalar> z = Mat<Scalar>::Zero(2 * n, 2 * k);
    for (Index c = 0; c < k; ++c) {
        Eigen::Matrix<Complex, Eigen::Dynamic, 1> col =
            std::sqrt(mu[keep[static_cast<std::size_t>(c)]]) * solver.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
        z.col(2 * c) = col.real();
        z.col(2 * c + 1) = -col.imag();
    }

    Mat<Scalar> first(2 * n, 2 * (n + k));
    first << ch.X, z;

    Mat<Scalar> s_mat = complete_symplectic(first, n + k);
    const Scalar res = symplectic_residual(s_mat);
    if (res > tol.symp) {
        throw CompletionFailure("dilate: completed matrix fails S J S^t = J, residual " +
                                std::to_string(static_cast<double>(res)));
    }

    Dilation<Scalar> d;
    d.channel = ch;
    d.env_modes = k;
    d.S = SymplecticMatrix<Scalar>(std::move(s_mat), tol);
    d.env_state = vacuum_state<Scalar>(k);
    return d;
}

// Beam splitter coupling mode 0 (input) with mode 1 (environment arm).
template <typename Scalar>
Mat<Scalar> beam_splitter(Scalar T) {
    const Scalar st = std::sqrt(T);
    const Scalar ct = std::sqrt(Scalar(1) - T);
    Mat<Scalar> s(4, 4);
    s << st * Mat<Scalar>::Identity(2, 2), ct * Mat<Scalar>::Identity(2, 2),
        -ct * Mat<Scalar>::Identity(2, 2), st * Mat<Scalar>::Identity(2, 2);
    return s;
}

} // namespace detail

// Stinespring dilation with a minimal closed form for the named channels
// (1 vacuum env mode for the lossy beam splitter; 2 env modes in a TMSV
// purifying the mixing state for the thermal attenuator) and the general
// eigendecomposition + symplectic completion for everything else.
template <typename Scalar>
Dilation<Scalar> dilate(const GaussianChannel<Scalar>& ch, const Tolerances& tol = {}) {
    if (ch.in_modes != ch.out_modes) {
        throw InvalidChannel("dilate: only square channels (in modes = out modes) are supported");
    }
    const ValidationReport<Scalar> rep = validate(ch, tol);
    if (!rep.valid) {
        throw InvalidChannel("dilate: channel is not completely positive, min eigenvalue " +
                             std::to_string(static_cast<double>(rep.min_eigenvalue)));
    }

    Dilation<Scalar> d;
    switch (ch.kind) {
        case ChannelKind::Lossy: {
            d.channel = ch;
            d.env_modes = 1;
            d.S = SymplecticMatrix<Scalar>(detail::beam_splitter(ch.transmissivity), tol);
            d.env_state = vacuum_state<Scalar>(1);
            break;
        }
        case ChannelKind::ThermalAttenuator: {
            // input mixes with the first half of a TMSV purifying the thermal
            // mixer; the partner mode rides along untouched
            d.channel = ch;
            d.env_modes = 2;
            d.S = SymplecticMatrix<Scalar>(
                direct_sum(detail::beam_splitter(ch.transmissivity), Mat<Scalar>::Identity(2, 2)), tol);
            d.env_state = tmsv_purification(Scalar(2) * ch.env_nbar + Scalar(1));
            break;
        }
        default:
            d = detail::dilate_general(ch, tol);
            break;
    }
    return d;
}

// Dilation of tensor(a.channel, b.channel) as the mode-permuted direct sum of
// the factor dilations; environments are concatenated a-then-b.
template <typename Scalar>
Dilation<Scalar> tensor_dilation(const Dilation<Scalar>& a, const Dilation<Scalar>& b,
                                 const Tolerances& tol = {}) {
    const Index na = a.channel.in_modes, nb = b.channel.in_modes;
    const Index ka = a.env_modes, kb = b.env_modes;

    // combined layout (in_a, in_b, env_a, env_b) -> factor layout (in_a, env_a, in_b, env_b)
    std::vector<Index> perm;
    perm.reserve(static_cast<std::size_t>(na + nb + ka + kb));
    for (Index i = 0; i < na; ++i) perm.push_back(i);
    for (Index i = 0; i < ka; ++i) perm.push_back(na + nb + i);
    for (Index i = 0; i < nb; ++i) perm.push_back(na + i);
    for (Index i = 0; i < kb; ++i) perm.push_back(na + nb + ka + i);
    Mat<Scalar> p = mode_permutation<Scalar>(perm);

    Dilation<Scalar> d;
    d.channel = tensor(a.channel, b.channel);
    d.env_modes = ka + kb;
    d.S = SymplecticMatrix<Scalar>((p.transpose() * direct_sum(a.S.data, b.S.data) * p).eval(), tol);
    d.env_state = direct_sum(a.env_state, b.env_state);
    return d;
}

template <typename Scalar>
JointOutput<Scalar> joint_output(const Dilation<Scalar>& d, const CovarianceMatrix<Scalar>& g) {
    if (g.n_modes != d.channel.in_modes) {
        throw ShapeMismatch("joint_output: state mode count does not match the channel input");
    }
    const Index no = d.channel.out_modes, k = d.env_modes;
    Mat<Scalar> joint = d.S.data * direct_sum(g.data, d.env_state.data) * d.S.data.transpose();
    JointOutput<Scalar> out;
    out.out_block = CovarianceMatrix<Scalar>(joint.topLeftCorner(2 * no, 2 * no).eval());
    out.env_block = CovarianceMatrix<Scalar>(joint.bottomRightCorner(2 * k, 2 * k).eval());
    out.cross_block = joint.topRightCorner(2 * no, 2 * k);
    out.joint = CovarianceMatrix<Scalar>(std::move(joint));
    return out;
}

// H(E): entropy (bits) of the environment block after the channel acts on g.
template <typename Scalar>
Scalar complementary_entropy(const Dilation<Scalar>& d, const CovarianceMatrix<Scalar>& g,
                             const Tolerances& tol = {}) {
    return gaussian_entropy(joint_output(d, g).env_block, tol);
}

} // namespace gaussact
