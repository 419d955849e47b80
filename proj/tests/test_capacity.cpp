#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gaussact/capacity.hpp"
#include "gaussact/experiments.hpp"
#include "test_util.hpp"

using namespace gaussact;
namespace gt = gaussact::test;

namespace {

// entropy of a thermal state with mean photon number m
double g_of(double m) { return entropy_g(2.0 * m + 1.0); }

} // namespace

TEST_CASE("coherent information basics") {
    gt::Rng rng(7);
    const auto id = make_identity<double>(1);
    const auto res = coherent_information(id, gt::random_pure_state(1, rng));
    CHECK(res.i_c == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(res.h_out == doctest::Approx(0.0).epsilon(1e-10));

    // 50:50 splitter: output and environment marginals coincide
    for (int trial = 0; trial < 5; ++trial) {
        const auto r = coherent_information(make_lossy(0.5), gt::random_physical_state(1, rng));
        CHECK(std::abs(r.i_c) < 1e-10);
    }
}

TEST_CASE("lossy channel on thermal inputs matches the closed form") {
    for (double T : {0.3, 0.5, 0.7}) {
        for (double nb : {0.5, 1.0, 5.0}) {
            const auto res = coherent_information(make_lossy(T), thermal_state(nb));
            const double closed = g_of(T * nb) - g_of((1 - T) * nb);
            CHECK(std::abs(res.i_c - closed) < 1e-7);
            CHECK(res.i_c == doctest::Approx(res.h_out - res.h_env));
            CHECK(res.h_out >= 0.0);
            CHECK(res.h_env >= 0.0);
        }
    }
}

TEST_CASE("combined ppt + lossy channel turns positive at a suitable input") {
    const auto combined = tensor(make_ssy_ppt<double>(), make_lossy(0.5));
    const OptimizeResult opt = optimize_input(ChannelKind::Lossy, 0.5, 0.0, 10.0);
    const auto res = coherent_information(combined, gamma_in(opt.params));
    CHECK(res.i_c > 1e-3);
}

TEST_CASE("lossy capacity values") {
    CHECK(lossy_capacity(0.5).value == 0.0);
    CHECK(lossy_capacity(0.2).value == 0.0);
    CHECK(lossy_capacity(2.0 / 3.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lossy_capacity(0.51).value == doctest::Approx(std::log2(0.51 / 0.49)).epsilon(1e-12));
    CHECK(lossy_capacity(0.51).kind == CapacityKind::Exact);
    CHECK(lossy_capacity(1.0).is_infinite());
    CHECK_THROWS_AS(lossy_capacity(1.5), DomainError);
}

TEST_CASE("thermal attenuator upper bound") {
    for (double T : {0.55, 0.7, 0.9}) {
        CHECK(ta_capacity_upper_bound(T, 0.0).value == doctest::Approx(lossy_capacity(T).value).epsilon(1e-12));
    }
    CHECK(ta_capacity_upper_bound(0.5, 0.0).value == 0.0);
    const auto b = ta_capacity_upper_bound(0.51, 0.01);
    CHECK(b.kind == CapacityKind::UpperBound);
    CHECK(b.value == doctest::Approx(std::log2(0.5051 / (1.01 * 0.49))).epsilon(1e-12));
    CHECK(b.value == doctest::Approx(0.029432).epsilon(1e-4));
    CHECK(ta_capacity_upper_bound(1.0, 0.3).is_infinite());

    CHECK_THROWS_AS(ta_capacity_upper_bound(0.4, 0.0), DomainError);   // below T = 0.5
    CHECK_THROWS_AS(ta_capacity_upper_bound(0.5, 1.0), DomainError);   // entanglement breaking
    CHECK_THROWS_AS(ta_capacity_upper_bound(0.6, -0.1), DomainError);
}

TEST_CASE("bound decreases with temperature") {
    for (double T : {0.51, 0.55, 0.6, 0.75}) {
        double prev = ta_capacity_upper_bound(T, 0.0).value;
        for (double nb : {0.01, 0.05, 0.1, 0.3}) {
            if (T <= (1 - T) * nb) break;
            const double cur = ta_capacity_upper_bound(T, nb).value;
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("activation gap arithmetic") {
    CHECK(activation_gap(0.09, CapacityValue<double>{0.0578, CapacityKind::Exact}) ==
          doctest::Approx(0.0322).epsilon(1e-12));
    const auto zero_cap = lossy_capacity(0.5);
    CHECK(activation_gap(0.0476, zero_cap) == doctest::Approx(0.0476));
    CHECK_THROWS_AS(activation_gap(1.0, lossy_capacity(1.0)), InfinityError);
}

TEST_CASE("single lossy channel never beats its capacity") {
    gt::Rng rng(1234);
    for (double T : {0.3, 0.5, 0.7}) {
        const double cap = lossy_capacity(T).value;
        const Dilation<double> d = dilate(make_lossy(T));
        for (int trial = 0; trial < 25; ++trial) {
            const auto res = coherent_information(d, gt::random_physical_state(1, rng));
            CHECK(res.i_c <= cap + 1e-7);
        }
        for (double nb : {0.5, 2.0, 10.0}) {
            CHECK(coherent_information(d, thermal_state(nb)).i_c <= cap + 1e-7);
        }
    }
}
