#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "mub/constructions.hpp"
#include "mub/haar.hpp"
#include "mub/objective.hpp"
#include "mub/rng.hpp"
#include "oracles.hpp"

using namespace mub;

TEST_CASE("gram_moduli_sq: identity, Fourier, unistochasticity") {
    const RealMatrix same = gram_moduli_sq(ComplexMatrix::identity(3), ComplexMatrix::identity(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(same(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));

    for (int d : {2, 3, 5, 6}) {
        const RealMatrix g = gram_moduli_sq(ComplexMatrix::identity(d), fourier_matrix(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) CHECK(g(i, j) == Catch::Approx(1.0 / d).margin(1e-14));
    }

    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 6);
        const RealMatrix g = gram_moduli_sq(haar_unitary(d, rng), haar_unitary(d, rng));
        for (int i = 0; i < d; ++i) {
            double row_sum = 0.0;
            double col_sum = 0.0;
            for (int j = 0; j < d; ++j) {
                row_sum += g(i, j);
                col_sum += g(j, i);
            }
            CHECK(row_sum == Catch::Approx(1.0).margin(1e-10));
            CHECK(col_sum == Catch::Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("residuals: qubit examples") {
    // Fourier basis is unbiased to the standard basis: all residuals vanish
    BasisSet fourier{2, {fourier_matrix(2)}};
    for (double r : residuals(fourier)) CHECK(std::abs(r) < 1e-15);

    // duplicated standard basis: Gram is the identity pattern
    BasisSet identity_set{2, {ComplexMatrix::identity(2)}};
    const std::vector<double> r = residuals(identity_set);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(r[1] == Catch::Approx(-0.5).margin(1e-15));
    CHECK(r[2] == Catch::Approx(-0.5).margin(1e-15));
    CHECK(r[3] == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("residuals: matches the direct inner-product oracle") {
    Rng rng(32);
    BasisSet set{3, {haar_unitary(3, rng), haar_unitary(3, rng)}};
    const std::vector<double> lib = residuals(set);
    const std::vector<double> direct = oracles::direct_residuals(set);
    REQUIRE(lib.size() == 27);
    REQUIRE(direct.size() == lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i)
        CHECK(lib[i] == Catch::Approx(direct[i]).margin(1e-13));
}

TEST_CASE("residuals: length, range, and per-pair cancellation") {
    Rng rng(33);
    for (int rep = 0; rep < 8; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        BasisSet set{d, {}};
        for (int b = 0; b < n; ++b) set.bases.push_back(haar_unitary(d, rng));

        const std::vector<double> r = residuals(set);
        REQUIRE(r.size() == residual_count(d, n));
        REQUIRE(r.size() == static_cast<std::size_t>(d) * d * n * (n + 1) / 2);

        for (double v : r) {
            CHECK(v >= -1.0 / d - 1e-15);
            CHECK(v <= 1.0 - 1.0 / d + 1e-15);
        }

        // rows of a unistochastic matrix sum to 1, so each pair block sums to 0
        const std::size_t block = static_cast<std::size_t>(d) * d;
        for (std::size_t start = 0; start < r.size(); start += block) {
            double sum = 0.0;
            for (std::size_t i = start; i < start + block; ++i) sum += r[i];
            CHECK(std::abs(sum) < 1e-10);
        }
    }
}

TEST_CASE("objective_value: closed forms") {
    // duplicated standard basis evaluates to d - 1
    for (int d = 2; d <= 8; ++d) {
        BasisSet set{d, {ComplexMatrix::identity(d)}};
        CHECK(objective_value(set) == Catch::Approx(d - 1.0).margin(1e-12));
    }
    // Fourier basis evaluates to zero
    for (int d = 2; d <= 8; ++d) {
        BasisSet set{d, {fourier_matrix(d)}};
        CHECK(objective_value(set) < 1e-20);
    }
}

TEST_CASE("objective_value: gauge invariance under column permutation and rephasing") {
    Rng rng(34);
    std::mt19937_64 gen(35);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 5);
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        BasisSet set{d, {}};
        for (int b = 0; b < n; ++b) set.bases.push_back(haar_unitary(d, rng));
        const double before = objective_value(set);

        // right-multiply one basis by a random permutation and diagonal phases
        const int target = static_cast<int>(rng.next_u64() % n);
        std::vector<int> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        ComplexMatrix pd(d, d);
        for (int j = 0; j < d; ++j) {
            const double a = angle(gen);
            pd(perm[j], j) = Complex(std::cos(a), std::sin(a));
        }
        set.bases[target] = multiply(set.bases[target], pd);

        CHECK(std::abs(objective_value(set) - before) < 1e-12);
    }
}

TEST_CASE("is_mub_set: verdicts and diagnostics") {
    BasisSet fourier5{5, {fourier_matrix(5)}};
    const MubCheck good = is_mub_set(fourier5, 1e-6);
    CHECK(good.is_mub);
    CHECK(good.worst_modulus_deviation < 1e-12);

    BasisSet dup{2, {ComplexMatrix::identity(2)}};
    const MubCheck bad = is_mub_set(dup, 1e-6);
    CHECK_FALSE(bad.is_mub);
    CHECK(bad.objective == Catch::Approx(1.0).margin(1e-14));
    // off-diagonal moduli are 0, so the worst deviation from 1/sqrt(2) is 1/sqrt(2)
    CHECK(bad.worst_modulus_deviation == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));

    const MubCheck constructed = is_mub_set(prime_mub_construction(7), 1e-6);
    CHECK(constructed.is_mub);

    CHECK_THROWS_AS(is_mub_set(fourier5, 0.0), std::invalid_argument);
}

TEST_CASE("prime_mub_construction: complete families for small primes") {
    for (int d : {2, 3, 5, 7, 11, 13}) {
        const BasisSet set = prime_mub_construction(d);
        REQUIRE(set.bases.size() == static_cast<std::size_t>(d));
        CHECK(worst_unitarity_defect(set) < 1e-12);
        CHECK(objective_value(set) < 1e-20);
    }
    // all pairwise Gram moduli are 1/3 for the qutrit family
    const BasisSet qutrit = prime_mub_construction(3);
    const RealMatrix g = gram_moduli_sq(qutrit.bases[0], qutrit.bases[1]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g(i, j) == Catch::Approx(1.0 / 3.0).margin(1e-13));
}

TEST_CASE("prime_mub_construction: qubit family uses the sigma_x / sigma_y eigenbases") {
    const BasisSet set = prime_mub_construction(2);
    ComplexMatrix sx(2, 2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    ComplexMatrix sy(2, 2);
    sy(0, 1) = Complex(0.0, -1.0);
    sy(1, 0) = Complex(0.0, 1.0);
    // each stored basis diagonalizes its Pauli: U^dagger sigma U is diagonal
    const ComplexMatrix dx = multiply(adjoint(set.bases[0]), multiply(sx, set.bases[0]));
    const ComplexMatrix dy = multiply(adjoint(set.bases[1]), multiply(sy, set.bases[1]));
    CHECK(std::abs(dx(0, 1)) < 1e-14);
    CHECK(std::abs(dx(1, 0)) < 1e-14);
    CHECK(std::abs(dy(0, 1)) < 1e-14);
    CHECK(std::abs(dy(1, 0)) < 1e-14);
}

TEST_CASE("prime_mub_construction: rejects non-prime dimension") {
    for (int d : {1, 4, 6, 9, 12}) CHECK_THROWS_AS(prime_mub_construction(d), std::invalid_argument);
}
