// channels.hpp — Gaussian channel algebra: (X, Y) pairs acting as
// g -> X g X^t + Y, CP validity, parallel/serial composition, the named
// channel constructors, and the PPT / entanglement-breaking predicates.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "gaussact/errors.hpp"
#include "gaussact/symplectic.hpp"
#include "gaussact/types.hpp"

namespace gaussact {

enum class ChannelKind {
    Lossy,
    ThermalAttenuator,
    SsyPpt,
    Identity,
    Custom,
};

inline const char* to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::Lossy: return "lossy";
        case ChannelKind::ThermalAttenuator: return "thermal-attenuator";
        case ChannelKind::SsyPpt: return "ssy-ppt";
        case ChannelKind::Identity: return "identity";
        case ChannelKind::Custom: return "custom";
    }
    return "custom";
}

// Construction does not verify complete positivity; validate() is an explicit
// call so deliberately invalid channels can be built and probed.
template <typename Scalar>
struct GaussianChannel {
    Index in_modes = 0;
    Index out_modes = 0;
    Mat<Scalar> X;  // 2*out x 2*in
    Mat<Scalar> Y;  // 2*out x 2*out, symmetric
    ChannelKind kind = ChannelKind::Custom;
    Scalar transmissivity = Scalar(0);  // meaningful for Lossy / ThermalAttenuator
    Scalar env_nbar = Scalar(0);        // meaningful for ThermalAttenuator

    GaussianChannel() = default;

    GaussianChannel(Mat<Scalar> x, Mat<Scalar> y, ChannelKind k = ChannelKind::Custom,
                    const Tolerances& tol = {})
        : in_modes(x.cols() / 2), out_modes(x.rows() / 2), X(std::move(x)), Y(std::move(y)), kind(k) {
        if (X.rows() % 2 != 0 || X.cols() % 2 != 0) {
            throw ShapeMismatch("GaussianChannel: X must be 2*out x 2*in");
        }
        if (Y.rows() != X.rows() || Y.cols() != X.rows()) {
            throw ShapeMismatch("GaussianChannel: Y must be square matching X's row count");
        }
        if (detail::max_asymmetry(Y) > tol.sym) {
            throw ShapeMismatch("GaussianChannel: Y not symmetric within tolerance");
        }
        Y = ((Y + Y.transpose()) / Scalar(2)).eval();
    }
};

template <typename Scalar>
struct ValidationReport {
    bool valid = false;
    Scalar min_eigenvalue = Scalar(0);  // of the embedding of Y + i(J - X J X^t)
};

// ---------------------------------- actions ----------------------------------

template <typename Scalar>
CovarianceMatrix<Scalar> apply(const GaussianChannel<Scalar>& ch, const CovarianceMatrix<Scalar>& g) {
    if (g.n_modes != ch.in_modes) {
        throw ShapeMismatch("apply: channel expects " + std::to_string(ch.in_modes) + " modes, state has " +
                            std::to_string(g.n_modes));
    }
    return CovarianceMatrix<Scalar>((ch.X * g.data * ch.X.transpose() + ch.Y).eval());
}

// CP condition Y + i(J_out - X J_in X^t) >= 0; reports the minimum eigenvalue
// of the real embedding instead of erroring on failure.
template <typename Scalar>
ValidationReport<Scalar> validate(const GaussianChannel<Scalar>& ch, const Tolerances& tol = {}) {
    Mat<Scalar> imag = symplectic_form<Scalar>(ch.out_modes) -
                       ch.X * symplectic_form<Scalar>(ch.in_modes) * ch.X.transpose();
    ValidationReport<Scalar> rep;
    rep.min_eigenvalue = hermitian_min_eigenvalue<Scalar>(ch.Y, imag, tol);
    const Scalar scale = std::max(ch.Y.template lpNorm<Eigen::Infinity>(), imag.template lpNorm<Eigen::Infinity>());
    rep.valid = rep.min_eigenvalue >= -tol.psd * (Scalar(1) + scale);
    return rep;
}

// Parallel composition; mode order a-then-b.
template <typename Scalar>
GaussianChannel<Scalar> tensor(const GaussianChannel<Scalar>& a, const GaussianChannel<Scalar>& b) {
    GaussianChannel<Scalar> out(direct_sum(a.X, b.X), direct_sum(a.Y, b.Y));
    if (a.kind == ChannelKind::Identity && b.kind == ChannelKind::Identity) {
        out.kind = ChannelKind::Identity;
    }
    return out;
}

// Serial composition: apply(compose(after, before), g) = apply(after, apply(before, g)).
template <typename Scalar>
GaussianChannel<Scalar> compose(const GaussianChannel<Scalar>& after, const GaussianChannel<Scalar>& before) {
    if (before.out_modes != after.in_modes) {
        throw ShapeMismatch("compose: inner mode counts do not match");
    }
    return GaussianChannel<Scalar>((after.X * before.X).eval(),
                                   (after.X * before.Y * after.X.transpose() + after.Y).eval());
}

// ------------------------------ named constructors ------------------------------

template <typename Scalar>
GaussianChannel<Scalar> make_identity(Index n_modes) {
    GaussianChannel<Scalar> ch(Mat<Scalar>::Identity(2 * n_modes, 2 * n_modes),
                               Mat<Scalar>::Zero(2 * n_modes, 2 * n_modes), ChannelKind::Identity);
    ch.transmissivity = Scalar(1);
    return ch;
}

// Beam splitter with transmissivity T mixing the input with vacuum:
// X = sqrt(T) I, Y = (1-T) I.
template <typename Scalar>
GaussianChannel<Scalar> make_lossy(Scalar T) {
    if (!(T >= Scalar(0) && T <= Scalar(1))) {
        throw DomainError("make_lossy: transmissivity must lie in [0, 1]");
    }
    GaussianChannel<Scalar> ch((std::sqrt(T) * Mat<Scalar>::Identity(2, 2)).eval(),
                               ((Scalar(1) - T) * Mat<Scalar>::Identity(2, 2)).eval(), ChannelKind::Lossy);
    ch.transmissivity = T;
    return ch;
}

// Beam splitter mixing with a thermal state of mean photon number Nbar:
// X = sqrt(T) I, Y = (1-T)(2 Nbar + 1) I. Nbar = 0 reduces to make_lossy.
template <typename Scalar>
GaussianChannel<Scalar> make_thermal_attenuator(Scalar T, Scalar Nbar) {
    if (!(T >= Scalar(0) && T <= Scalar(1))) {
        throw DomainError("make_thermal_attenuator: transmissivity must lie in [0, 1]");
    }
    if (!(Nbar >= Scalar(0))) {
        throw DomainError("make_thermal_attenuator: Nbar must be >= 0");
    }
    GaussianChannel<Scalar> ch(
        (std::sqrt(T) * Mat<Scalar>::Identity(2, 2)).eval(),
        ((Scalar(1) - T) * (Scalar(2) * Nbar + Scalar(1)) * Mat<Scalar>::Identity(2, 2)).eval(),
        ChannelKind::ThermalAttenuator);
    ch.transmissivity = T;
    ch.env_nbar = Nbar;
    return ch;
}

// The two-mode PPT (entanglement-binding) channel of Smith, Smolin, and Yard.
template <typename Scalar>
GaussianChannel<Scalar> make_ssy_ppt() {
    const Scalar r2 = std::sqrt(Scalar(2));
    Mat<Scalar> x(4, 4);
    x << r2, 0, 1, 0,
         0, -r2, 0, 1,
         -1, 0, 0, 0,
         0, -1, 0, 0;
    Mat<Scalar> y(4, 4);
    y << 2, 0, -r2, 0,
         0, 2, 0, r2,
         -r2, 0, 2, 0,
         0, r2, 0, 2;
    return GaussianChannel<Scalar>(std::move(x), std::move(y), ChannelKind::SsyPpt);
}

// -------------------------------- predicates --------------------------------

// PPT condition on a square channel: Y + i(J + X J X^t) >= 0.
template <typename Scalar>
bool is_ppt_channel(const GaussianChannel<Scalar>& ch, const Tolerances& tol = {}) {
    if (ch.in_modes != ch.out_modes) {
        throw ShapeMismatch("is_ppt_channel: channel must have equal in/out mode counts");
    }
    Mat<Scalar> imag = symplectic_form<Scalar>(ch.out_modes) +
                       ch.X * symplectic_form<Scalar>(ch.in_modes) * ch.X.transpose();
    return is_psd_hermitian<Scalar>(ch.Y, imag, tol);
}

// PPT non-distillability criterion for a bipartite state, A = first `split`
// modes: g + i(J_A \oplus -J_B) >= 0.
template <typename Scalar>
bool is_nondistillable_state(const CovarianceMatrix<Scalar>& g_ab, Index split,
                             const Tolerances& tol = {}) {
    if (split <= 0 || split >= g_ab.n_modes) {
        throw ShapeMismatch("is_nondistillable_state: split must cut the modes into two nonempty parts");
    }
    Mat<Scalar> d = direct_sum(symplectic_form<Scalar>(split),
                               (-symplectic_form<Scalar>(g_ab.n_modes - split)).eval());
    return is_psd_hermitian<Scalar>(g_ab.data, d, tol);
}

// The attenuator is non-entanglement-breaking iff T > (1-T) Nbar; equality is
// classified as breaking so the capacity bound's denominator stays positive
// inside the allowed region.
template <typename Scalar>
bool is_entanglement_breaking_ta(Scalar T, Scalar Nbar) {
    if (!(T >= Scalar(0) && T <= Scalar(1)) || !(Nbar >= Scalar(0))) {
        throw DomainError("is_entanglement_breaking_ta: need T in [0, 1] and Nbar >= 0");
    }
    return T <= (Scalar(1) - T) * Nbar;
}

// State obtained by sending the B-halves of per-input-mode TMSV pairs through
// the channel; modes ordered (A_1..A_n, B_1..B_n). A finite-squeezing
// surrogate of the Choi state, used with is_nondistillable_state.
template <typename Scalar>
CovarianceMatrix<Scalar> choi_like_state(const GaussianChannel<Scalar>& ch, Scalar r) {
    if (ch.in_modes != ch.out_modes) {
        throw ShapeMismatch("choi_like_state: channel must have equal in/out mode counts");
    }
    const Index n = ch.in_modes;
    CovarianceMatrix<Scalar> pairs = tmsv_state(r);
    for (Index i = 1; i < n; ++i) {
        pairs = direct_sum(pairs, tmsv_state(r));
    }
    // (A1,B1,...,An,Bn) -> (A1..An, B1..Bn)
    std::vector<Index> perm;
    for (Index i = 0; i < n; ++i) perm.push_back(2 * i);
    for (Index i = 0; i < n; ++i) perm.push_back(2 * i + 1);
    CovarianceMatrix<Scalar> arranged = permute_modes(pairs, perm);
    GaussianChannel<Scalar> id_tensor_ch = tensor(make_identity<Scalar>(n), ch);
    return apply(id_tensor_ch, arranged);
}

} // namespace gaussact
