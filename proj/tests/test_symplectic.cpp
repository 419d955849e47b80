#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gaussact/experiments.hpp"
#include "gaussact/symplectic.hpp"
#include "test_util.hpp"

using namespace gaussact;
namespace gt = gaussact::test;

TEST_CASE("symplectic form basics") {
    const Mat<double> j = symplectic_form<double>(3);
    CHECK(gt::max_abs_diff((j * j).eval(), (-Mat<double>::Identity(6, 6)).eval()) == doctest::Approx(0.0));
    CHECK(gt::max_abs_diff(j.transpose().eval(), (-j).eval()) == doctest::Approx(0.0));
}

TEST_CASE("direct sum composes blocks in order") {
    const CovarianceMatrixd i2 = vacuum_state<double>(1);
    CHECK(gt::max_abs_diff(direct_sum(i2, i2).data, Mat<double>::Identity(4, 4)) == 0.0);

    const CovarianceMatrixd th = thermal_state(1.0);  // diag(3,3)
    const CovarianceMatrixd sum = direct_sum(th, i2);
    Mat<double> expected = Mat<double>::Zero(4, 4);
    expected.diagonal() << 3, 3, 1, 1;
    CHECK(gt::max_abs_diff(sum.data, expected) == 0.0);

    const CovarianceMatrixd five = direct_sum(gamma_in<double>(1.4, 1.2), tmsv_state(0.7));
    CHECK(five.n_modes == 5);
    CHECK(detail::max_asymmetry(five.data) == 0.0);
    CHECK(gt::max_abs_diff(five.data.topLeftCorner(6, 6).eval(), gamma_in<double>(1.4, 1.2).data) == 0.0);
    CHECK(five.data.topRightCorner(6, 4).isZero(0.0));
}

TEST_CASE("covariance constructor rejects bad shapes and asymmetry") {
    Mat<double> odd = Mat<double>::Identity(3, 3);
    CHECK_THROWS_AS(CovarianceMatrixd{odd}, ShapeMismatch);
    Mat<double> asym = Mat<double>::Identity(2, 2);
    asym(0, 1) = 1e-3;
    CHECK_THROWS_AS(CovarianceMatrixd{asym}, ShapeMismatch);
}

TEST_CASE("symplectic eigenvalues of simple states") {
    auto spec = symplectic_eigenvalues(vacuum_state<double>(1));
    REQUIRE(spec.values.size() == 1);
    CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-12));

    spec = symplectic_eigenvalues(thermal_state(1.0));
    CHECK(spec.values[0] == doctest::Approx(3.0).epsilon(1e-12));

    for (double r : {0.3, 1.0, 2.2}) {
        spec = symplectic_eigenvalues(tmsv_state(r));
        REQUIRE(spec.values.size() == 2);
        CHECK(spec.values[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(spec.values[1] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(spec.all_pure(1e-8));
    }
}

TEST_CASE("input family spectrum: one thermal-weight mode, two pure modes") {
    // (J g)^2 = -I only holds for pure states; check what the family actually
    // is before trusting any purity shortcut.
    const double x = 1.5, y = 1.2;
    const CovarianceMatrixd g = gamma_in<double>(x, y);
    const Mat<double> jg = symplectic_form<double>(3) * g.data;
    const double residual = gt::max_abs_diff((jg * jg).eval(), (-Mat<double>::Identity(6, 6)).eval());
    CHECK(residual > 0.1);  // not pure: the oracle rules purity out

    const auto spec = symplectic_eigenvalues(g);
    const auto oracle = gt::spectrum_oracle(g);
    REQUIRE(spec.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(spec.values[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }
    CHECK(spec.values[0] == doctest::Approx(2.0 * nbar(x, y) + 1.0).epsilon(1e-10));
    CHECK(spec.values[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(spec.values[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gaussian entropy on known states") {
    CHECK(gaussian_entropy(vacuum_state<double>(1)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gaussian_entropy(thermal_state(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entropy_g(2.0) == doctest::Approx(1.5 * std::log2(1.5) + 0.5).epsilon(1e-12));

    for (double nb : {0.3, 1.7, 5.0}) {
        const double via_williamson = gaussian_entropy(thermal_state(nb));
        const double via_fock = gt::fock_thermal_entropy_bits(nb, 200);
        CHECK(std::abs(via_williamson - via_fock) < 1e-6);
    }
}

TEST_CASE("entropy rejects unphysical spectra") {
    Mat<double> bad = 0.5 * Mat<double>::Identity(2, 2);
    CHECK_THROWS_AS(gaussian_entropy(CovarianceMatrixd{bad}), UnphysicalState);
    CHECK_THROWS_AS(entropy_g(0.99), UnphysicalState);
    CHECK(entropy_g(1.0 - 5e-9) == 0.0);  // within tolerance of purity, clamped
}

TEST_CASE("hermitian PSD predicate via real embedding") {
    const Mat<double> i2 = Mat<double>::Identity(2, 2);
    const Mat<double> j1 = symplectic_form<double>(1);
    CHECK(is_psd_hermitian<double>(i2, Mat<double>::Zero(2, 2)));
    CHECK(is_psd_hermitian<double>(i2, j1));  // vacuum saturates the uncertainty bound
    CHECK(hermitian_min_eigenvalue<double>(i2, j1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(is_psd_hermitian<double>((0.5 * i2).eval(), j1));

    CHECK_THROWS_AS(is_psd_hermitian<double>(Mat<double>::Identity(2, 2), Mat<double>::Zero(4, 4)),
                    ShapeMismatch);
    CHECK(is_physical(vacuum_state<double>(2)));
    CHECK_FALSE(is_physical(CovarianceMatrixd{(0.5 * i2).eval()}));
}

TEST_CASE("mode permutation conjugates blocks") {
    const CovarianceMatrixd g = direct_sum(thermal_state(1.0), vacuum_state<double>(1));
    const CovarianceMatrixd swapped = permute_modes(g, {1, 0});
    Mat<double> expected = Mat<double>::Zero(4, 4);
    expected.diagonal() << 1, 1, 3, 3;
    CHECK(gt::max_abs_diff(swapped.data, expected) == 0.0);
}

TEST_CASE("williamson invariance under random symplectics") {
    gt::Rng rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 1 + trial % 3;
        const CovarianceMatrixd g = gt::random_physical_state(n, rng);
        const Mat<double> s = gt::random_symplectic(n, rng);
        const CovarianceMatrixd conj{(s * g.data * s.transpose()).eval()};

        const auto a = symplectic_eigenvalues(g);
        const auto b = symplectic_eigenvalues(conj);
        REQUIRE(a.values.size() == b.values.size());
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(std::abs(a.values[i] - b.values[i]) < 1e-8);
            CHECK(a.values[i] >= 1.0 - 1e-8);
        }
        CHECK(std::abs(gaussian_entropy(g) - gaussian_entropy(conj)) < 1e-8);

        const auto oracle = gt::spectrum_oracle(g);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(std::abs(a.values[i] - oracle[i]) < 1e-8);
        }
    }
}

TEST_CASE("entropy additivity on product states") {
    gt::Rng rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        const CovarianceMatrixd a = gt::random_physical_state(2, rng);
        const CovarianceMatrixd b = gt::random_physical_state(1, rng);
        const double lhs = gaussian_entropy(direct_sum(a, b));
        const double rhs = gaussian_entropy(a) + gaussian_entropy(b);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("purification oracle produces pure extensions") {
    gt::Rng rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        const CovarianceMatrixd g = gt::random_physical_state(2, rng);
        const CovarianceMatrixd pure = gt::purify(g);
        CHECK(symplectic_eigenvalues(pure).all_pure(1e-7));
        CHECK(gt::max_abs_diff(pure.data.topLeftCorner(4, 4).eval(), g.data) < 1e-8);
    }
}
