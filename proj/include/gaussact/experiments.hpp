// experiments.hpp — The three-mode input family gamma_in(x, y) with its
// photon-number constraint, constrained maximization of the combined-channel
// coherent information, parameter sweeps, and the activation-threshold search.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gaussact/capacity.hpp"
#include "gaussact/channels.hpp"
#include "gaussact/errors.hpp"
#include "gaussact/types.hpp"

namespace gaussact {

// Squeezing parameters of the input family. The x -> 1/x reflection is a
// local symplectic sign flip of the attenuator mode, so x is canonicalized to
// x >= 1. The y -> 1/y mirror is NOT equivalent (it flips one PPT input mode,
// which the SSY channel does not absorb); the optimizer scans both branches
// and the winning y may be below 1.
struct InputParams {
    double x = 1.0;
    double y = 1.0;
};

// The printed 6x6 input covariance: modes 1-2 feed the PPT channel, mode 3
// (diagonal (x^4+1)(y^4+1)/(4 x^2 y^2) = 2 nbar + 1) is the attenuator input.
template <typename Scalar>
CovarianceMatrix<Scalar> gamma_in(Scalar x, Scalar y) {
    if (!(x > Scalar(0)) || !(y > Scalar(0))) {
        throw DomainError("gamma_in: squeezing parameters must be positive");
    }
    const Scalar x2 = x * x, x4 = x2 * x2;
    const Scalar y2 = y * y, y4 = y2 * y2;
    const Scalar a = (x4 + Scalar(1)) / (Scalar(2) * x2);
    const Scalar m = (x4 + Scalar(1)) * (y4 + Scalar(1)) / (Scalar(4) * x2 * y2);
    const Scalar c1 = (x4 - Scalar(1)) * (y2 - Scalar(1)) / (Scalar(4) * x2 * y);
    const Scalar c2 = (x4 - Scalar(1)) * (y2 + Scalar(1)) / (Scalar(4) * x2 * y);
    Mat<Scalar> g = Mat<Scalar>::Zero(6, 6);
    g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = a;
    g(4, 4) = g(5, 5) = m;
    g(0, 4) = g(4, 0) = c1;
    g(1, 5) = g(5, 1) = c1;
    g(2, 4) = g(4, 2) = c2;
    g(3, 5) = g(5, 3) = -c2;
    return CovarianceMatrix<Scalar>(std::move(g));
}

inline CovarianceMatrixd gamma_in(const InputParams& p) { return gamma_in<double>(p.x, p.y); }

// Mean photon number of the attenuator-input mode:
// (x^4 y^4 + x^4 - 4 x^2 y^2 + y^4 + 1) / (8 x^2 y^2); zero iff x = y = 1.
template <typename Scalar>
Scalar nbar(Scalar x, Scalar y) {
    if (!(x > Scalar(0)) || !(y > Scalar(0))) {
        throw DomainError("nbar: squeezing parameters must be positive");
    }
    const Scalar x2 = x * x, x4 = x2 * x2;
    const Scalar y2 = y * y, y4 = y2 * y2;
    return (x4 * y4 + x4 - Scalar(4) * x2 * y2 + y4 + Scalar(1)) / (Scalar(8) * x2 * y2);
}

inline double nbar(const InputParams& p) { return nbar(p.x, p.y); }

// Invert the constraint at fixed x: the quadratic v^2 - c v + 1 = 0 in v = y^2
// with c = 4 x^2 (2 nbar + 1)/(x^4 + 1) has reciprocal roots; the canonical
// root y >= 1 is returned (the reciprocal mirror is excluded).
template <typename Scalar>
std::vector<Scalar> solve_y(Scalar x, Scalar nbar_target) {
    if (!(x > Scalar(0))) throw DomainError("solve_y: x must be positive");
    if (!(nbar_target >= Scalar(0))) throw DomainError("solve_y: nbar must be >= 0");
    const Scalar x2 = x * x;
    const Scalar c = Scalar(4) * x2 * (Scalar(2) * nbar_target + Scalar(1)) / (x2 * x2 + Scalar(1));
    if (c < Scalar(2)) {
        throw NoSolution("solve_y: no y satisfies the photon-number constraint at x = " +
                         std::to_string(static_cast<double>(x)));
    }
    const Scalar v = (c + std::sqrt(c * c - Scalar(4))) / Scalar(2);
    return {std::sqrt(v)};
}

// Largest x for which the constraint nbar(x, y) = nbar has a solution
// (reached at y = 1).
template <typename Scalar>
Scalar x_max(Scalar nbar_target) {
    const Scalar lam = Scalar(2) * nbar_target + Scalar(1);
    return std::sqrt(lam + Scalar(2) * std::sqrt(nbar_target * (nbar_target + Scalar(1))));
}

// x = y slice of the constraint: x^2 = sqrt(2 nbar + 1) + sqrt(2 nbar).
template <typename Scalar>
Scalar diagonal_x(Scalar nbar_target) {
    const Scalar lam = Scalar(2) * nbar_target + Scalar(1);
    return std::sqrt(std::sqrt(lam) + std::sqrt(Scalar(2) * nbar_target));
}

// ------------------------------- sweep engine -------------------------------

enum class InputChoice { Optimized, Diagonal };

struct OptimizerSettings {
    int coarse_points = 64;          // log-grid points on x in [1, x_max]
    double golden_tol_bits = 1e-6;   // golden-section refinement target
    int max_golden_iters = 200;
};

struct OptimizeResult {
    InputParams params;
    CoherentInfoResult<double> info;
};

// One sweep sample.
struct ActivationRecord {
    double T = 0.0;
    double Nbar_env = 0.0;
    double nbar_in = 0.0;
    double x = 1.0;
    double y = 1.0;
    double ic_bits = 0.0;
    double capacity_bits = 0.0;
    CapacityKind capacity_kind = CapacityKind::Exact;
    double gap_bits = 0.0;
    std::string error;  // empty on success; per-point failures do not abort sweeps

    bool ok() const { return error.empty(); }
};

struct SweepSpec {
    ChannelKind kind = ChannelKind::Lossy;  // Lossy or ThermalAttenuator
    std::vector<double> T_grid;
    std::vector<double> nbar_grid;
    double Nbar = 0.0;
    InputChoice input = InputChoice::Optimized;
    OptimizerSettings optimizer;

    // T in {0.50..0.55} step 0.01, 50 log-spaced nbar in [0.1, 20]
    static SweepSpec defaults(ChannelKind kind);
};

// Capacity of the single attenuator arm: exact for the lossy channel, the
// upper bound for the thermal attenuator.
CapacityValue<double> arm_capacity(ChannelKind kind, double T, double Nbar);

// Maximize the combined-channel (SSY PPT tensor attenuator) coherent
// information over the input family at fixed mode-A photon number: coarse
// log-grid on x, both y branches, golden-section refinement.
OptimizeResult optimize_input(ChannelKind kind, double T, double Nbar, double nbar_target,
                              const OptimizerSettings& settings = {}, const Tolerances& tol = {});

// Single combined-channel evaluation at explicit input parameters.
ActivationRecord evaluate_point(ChannelKind kind, double T, double Nbar, const InputParams& p,
                                const Tolerances& tol = {});

// Deterministic grid sweep; rows ordered by (T index, nbar index). Honors
// GAUSSACT_THREADS (unset or 0 = auto).
std::vector<ActivationRecord> run_sweep(const SweepSpec& spec, const Tolerances& tol = {});

// Largest T in [0.5, 0.6] with a positive activation gap at fixed nbar,
// bisected to 1e-4 in T. Throws NoActivation if the gap is already
// nonpositive at T = 0.5 + 1e-6.
struct ThresholdResult {
    double T_star = 0.0;
    double gap_at_T_star = 0.0;
    double gap_above = 0.0;  // at T_star + 2e-4 (clamped to 0.6)
};
ThresholdResult find_threshold(double Nbar, double nbar_target,
                               const OptimizerSettings& settings = {}, const Tolerances& tol = {});

} // namespace gaussact
