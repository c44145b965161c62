#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "mub/complex_matrix.hpp"
#include "mub/haar.hpp"
#include "mub/rng.hpp"
#include "mub/unitary_param.hpp"
#include "oracles.hpp"

using namespace mub;

TEST_CASE("params_to_hermitian: stated packing convention") {
    const std::vector<double> zeros(4, 0.0);
    CHECK(max_abs(params_to_hermitian(zeros, 2)) == 0.0);

    const std::vector<double> segment{1.0, 2.0, 3.0, 4.0};
    const ComplexMatrix h = params_to_hermitian(segment, 2);
    CHECK(h(0, 0) == Complex(1.0, 0.0));
    CHECK(h(1, 1) == Complex(2.0, 0.0));
    CHECK(h(0, 1) == Complex(3.0, 4.0));
    CHECK(h(1, 0) == Complex(3.0, -4.0));

    CHECK_THROWS_AS(params_to_hermitian(std::vector<double>(3, 0.0), 2), std::invalid_argument);
}

TEST_CASE("hermitian_to_params: inverse of the packing") {
    const ComplexMatrix zero(2, 2);
    CHECK(hermitian_to_params(zero) == std::vector<double>{0.0, 0.0, 0.0, 0.0});

    ComplexMatrix h(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    h(0, 1) = Complex(3.0, 4.0);
    h(1, 0) = Complex(3.0, -4.0);
    CHECK(hermitian_to_params(h) == std::vector<double>{1.0, 2.0, 3.0, 4.0});

    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_to_params(bad), std::invalid_argument);
}

TEST_CASE("packing round trips are exact") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + static_cast<int>(gen() % 7);
        std::vector<double> segment(static_cast<std::size_t>(d) * d);
        for (double& v : segment) v = dist(gen);

        // param -> Hermitian -> param, bitwise
        CHECK(hermitian_to_params(params_to_hermitian(segment, d)) == segment);

        // Hermitian -> param -> Hermitian, bitwise
        const ComplexMatrix h = oracles::random_hermitian(d, gen);
        const ComplexMatrix back = params_to_hermitian(hermitian_to_params(h), d);
        CHECK(back.entries() == h.entries());
    }
}

TEST_CASE("exp_i: fixed points") {
    CHECK(max_abs_diff(exp_i(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)) < 1e-15);

    // exp(i (pi/2) sigma_x) = i sigma_x
    ComplexMatrix h(2, 2);
    h(0, 1) = std::numbers::pi / 2.0;
    h(1, 0) = std::numbers::pi / 2.0;
    ComplexMatrix expected(2, 2);
    expected(0, 1) = Complex(0.0, 1.0);
    expected(1, 0) = Complex(0.0, 1.0);
    CHECK(max_abs_diff(exp_i(h), expected) < 1e-13);
}

TEST_CASE("exp_i: inverse property and unitarity") {
    std::mt19937_64 gen(22);
    for (int rep = 0; rep < 25; ++rep) {
        const int d = 2 + static_cast<int>(gen() % 5);
        const ComplexMatrix h = oracles::random_hermitian(d, gen);
        const ComplexMatrix u = exp_i(h);
        CHECK(unitarity_defect(u) < 1e-12);
        const ComplexMatrix h_neg = scale(h, Complex(-1.0, 0.0));
        CHECK(max_abs_diff(multiply(u, exp_i(h_neg)), ComplexMatrix::identity(d)) < 1e-12);
    }
}

TEST_CASE("log_unitary: fixed points and branch") {
    CHECK(max_abs(log_unitary(ComplexMatrix::identity(4))) < 1e-15);

    ComplexMatrix u(2, 2);
    u(0, 0) = Complex(0.0, 1.0);
    u(1, 1) = 1.0;
    const ComplexMatrix h = log_unitary(u);
    CHECK(h(0, 0).real() == Catch::Approx(std::numbers::pi / 2.0).margin(1e-13));
    CHECK(std::abs(h(1, 1)) < 1e-13);
    CHECK(std::abs(h(0, 1)) < 1e-13);

    // eigenphase exactly -pi maps to +pi: log(diag(-1, 1)) = diag(pi, 0)
    ComplexMatrix refl(2, 2);
    refl(0, 0) = -1.0;
    refl(1, 1) = 1.0;
    const ComplexMatrix hr = log_unitary(refl);
    CHECK(hr(0, 0).real() == Catch::Approx(std::numbers::pi).margin(1e-13));

    CHECK_THROWS_AS(log_unitary(scale(ComplexMatrix::identity(2), 2.0)), std::invalid_argument);
}

TEST_CASE("log_unitary: round trip on Haar-random input") {
    Rng rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 7);
        const ComplexMatrix u = haar_unitary(d, rng);
        const ComplexMatrix h = log_unitary(u);
        CHECK(hermiticity_defect(h) < 1e-14);
        // eigenphases stay on the principal branch
        for (double phase : hermitian_eig(h).eigenvalues) {
            CHECK(phase <= std::numbers::pi + 1e-12);
            CHECK(phase > -std::numbers::pi - 1e-12);
        }
        CHECK(max_abs_diff(exp_i(h), u) < 1e-10);
    }
}

TEST_CASE("log_unitary: shared cosine needs the secondary diagonalization") {
    // eigenphases +0.7 and -0.7 make (U + U^dagger)/2 fully degenerate
    Rng rng(24);
    const ComplexMatrix v = haar_unitary(2, rng);
    ComplexMatrix diag(2, 2);
    diag(0, 0) = Complex(std::cos(0.7), std::sin(0.7));
    diag(1, 1) = Complex(std::cos(0.7), -std::sin(0.7));
    const ComplexMatrix u = multiply(multiply(v, diag), adjoint(v));
    const ComplexMatrix h = log_unitary(u);
    CHECK(max_abs_diff(exp_i(h), u) < 1e-12);
    const HermitianEig eig = hermitian_eig(h);
    CHECK(eig.eigenvalues[0] == Catch::Approx(-0.7).margin(1e-12));
    CHECK(eig.eigenvalues[1] == Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("exp_i of packed params is unitary for any parameter vector") {
    std::mt19937_64 gen(25);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const int d = 2 + static_cast<int>(gen() % 7);
        std::vector<double> segment(static_cast<std::size_t>(d) * d);
        for (double& v : segment) v = dist(gen);
        CHECK(unitarity_defect(exp_i(params_to_hermitian(segment, d))) < 1e-12);
    }
}
