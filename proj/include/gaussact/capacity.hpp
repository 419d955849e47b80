// capacity.hpp — Coherent information through the dilation pipeline, the
// closed-form lossy-channel capacity, the thermal-attenuator capacity upper
// bound, and activation gaps.

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "gaussact/dilation.hpp"
#include "gaussact/errors.hpp"
#include "gaussact/symplectic.hpp"
#include "gaussact/types.hpp"

namespace gaussact {

enum class CapacityKind { Exact, UpperBound, LowerBound };

inline const char* to_string(CapacityKind k) {
    switch (k) {
        case CapacityKind::Exact: return "exact";
        case CapacityKind::UpperBound: return "upper_bound";
        case CapacityKind::LowerBound: return "lower_bound";
    }
    return "exact";
}

// Capacity in bits, tagged by what the number means. A diverging capacity
// (T = 1) is an explicit infinity marker, never a floating-point overflow.
template <typename Scalar>
struct CapacityValue {
    Scalar value = Scalar(0);
    CapacityKind kind = CapacityKind::Exact;

    bool is_infinite() const { return std::isinf(static_cast<double>(value)); }

    static CapacityValue infinite(CapacityKind kind) {
        return {std::numeric_limits<Scalar>::infinity(), kind};
    }
};

template <typename Scalar>
struct CoherentInfoResult {
    Scalar i_c = Scalar(0);    // h_out - h_env, bits; may be negative
    Scalar h_out = Scalar(0);
    Scalar h_env = Scalar(0);
    SymplecticSpectrum<Scalar> out_spectrum;
    SymplecticSpectrum<Scalar> env_spectrum;
};

template <typename Scalar>
CoherentInfoResult<Scalar> coherent_information(const Dilation<Scalar>& d,
                                                const CovarianceMatrix<Scalar>& g,
                                                const Tolerances& tol = {}) {
    const JointOutput<Scalar> jo = joint_output(d, g);
    CoherentInfoResult<Scalar> res;
    res.out_spectrum = symplectic_eigenvalues(jo.out_block, tol);
    res.env_spectrum = symplectic_eigenvalues(jo.env_block, tol);
    for (Scalar lam : res.out_spectrum.values) res.h_out += entropy_g(lam, static_cast<Scalar>(tol.eig));
    for (Scalar lam : res.env_spectrum.values) res.h_env += entropy_g(lam, static_cast<Scalar>(tol.eig));
    res.i_c = res.h_out - res.h_env;
    return res;
}

template <typename Scalar>
CoherentInfoResult<Scalar> coherent_information(const GaussianChannel<Scalar>& ch,
                                                const CovarianceMatrix<Scalar>& g,
                                                const Tolerances& tol = {}) {
    return coherent_information(dilate(ch, tol), g, tol);
}

// Q(Phi_T) = max{0, log2 T - log2(1-T)}: zero for T <= 1/2 (antidegradable),
// infinite at T = 1.
template <typename Scalar>
CapacityValue<Scalar> lossy_capacity(Scalar T) {
    if (!(T >= Scalar(0) && T <= Scalar(1))) {
        throw DomainError("lossy_capacity: transmissivity must lie in [0, 1]");
    }
    if (T == Scalar(1)) return CapacityValue<Scalar>::infinite(CapacityKind::Exact);
    if (T <= Scalar(0.5)) return {Scalar(0), CapacityKind::Exact};
    return {std::log2(T) - std::log2(Scalar(1) - T), CapacityKind::Exact};
}

// Upper bound on Q(Phi_{T,Nbar}), valid for T >= 1/2 and T > (1-T) Nbar:
// max{0, log2[(T - Nbar(1-T)) / ((1+Nbar)(1-T))]}. Reduces to lossy_capacity
// at Nbar = 0; infinite at T = 1.
template <typename Scalar>
CapacityValue<Scalar> ta_capacity_upper_bound(Scalar T, Scalar Nbar) {
    if (!(T >= Scalar(0) && T <= Scalar(1)) || !(Nbar >= Scalar(0))) {
        throw DomainError("ta_capacity_upper_bound: need T in [0, 1] and Nbar >= 0");
    }
    if (T < Scalar(0.5)) {
        throw DomainError("ta_capacity_upper_bound: bound applies for T >= 0.5 only");
    }
    if (T <= (Scalar(1) - T) * Nbar) {
        throw DomainError("ta_capacity_upper_bound: bound applies to non-entanglement-breaking attenuators,"
                          " need T > (1-T)*Nbar");
    }
    if (T == Scalar(1)) return CapacityValue<Scalar>::infinite(CapacityKind::UpperBound);
    const Scalar ratio = (T - Nbar * (Scalar(1) - T)) / ((Scalar(1) + Nbar) * (Scalar(1) - T));
    return {std::max(Scalar(0), std::log2(ratio)), CapacityKind::UpperBound};
}

// i_c - capacity. Strictly positive certifies activation (for an exact
// capacity) or activation relative to the bound (for an upper bound).
template <typename Scalar>
Scalar activation_gap(Scalar i_c, const CapacityValue<Scalar>& cap) {
    if (cap.is_infinite()) {
        throw InfinityError("activation_gap: capacity is infinite");
    }
    return i_c - cap.value;
}

} // namespace gaussact
