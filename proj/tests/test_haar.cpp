#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mub/haar.hpp"
#include "mub/rng.hpp"
#include "oracles.hpp"

using namespace mub;

TEST_CASE("standard_normal_pair: golden first draw for seed 42") {
    Rng rng(42);
    const auto [z0, z1] = rng.standard_normal_pair();
    CHECK(z0 == -0.26860736946209501);
    CHECK(z1 == 0.58197105186288278);
}

TEST_CASE("standard_normal_pair: sample moments") {
    Rng rng(1001);
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n / 2; ++i) {
        const auto [a, b] = rng.standard_normal_pair();
        sum += a + b;
        sum_sq += a * a + b * b;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean > -0.02);
    CHECK(mean < 0.02);
    CHECK(var > 0.97);
    CHECK(var < 1.03);
}

TEST_CASE("ginibre: entry statistics") {
    Rng rng(1002);
    CHECK(ginibre(1, rng).rows() == 1);

    const int n = 10000;
    Complex mean_00 = 0.0;
    double mean_mod_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix g = ginibre(3, rng);
        mean_00 += g(0, 0);
        mean_mod_sq += std::norm(g(1, 2));
    }
    mean_00 /= static_cast<double>(n);
    mean_mod_sq /= n;
    CHECK(std::abs(mean_00) < 0.05);
    CHECK(mean_mod_sq > 1.9);   // E|z|^2 = 2 for unit-variance parts
    CHECK(mean_mod_sq < 2.1);
}

TEST_CASE("haar_unitary: unitary within 1e-12, reproducible, trial seeds distinct") {
    Rng rng(1003);
    for (int rep = 0; rep < 100; ++rep) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 7);
        CHECK(unitarity_defect(haar_unitary(d, rng)) < 1e-12);
    }

    Rng a(77);
    Rng b(77);
    CHECK(haar_unitary(5, a).entries() == haar_unitary(5, b).entries());

    CHECK(trial_seed(99, 0) == 99);
    CHECK(trial_seed(99, 1) != trial_seed(99, 2));
    CHECK(trial_seed(99, 1) != 99);
}

TEST_CASE("haar_unitary: first moment E|U_mn|^2 = 1/d entrywise") {
    Rng rng(1004);
    const int d = 6;
    const int n = 10000;
    RealMatrix mean(d, d);
    RealMatrix mean_sq(d, d);
    for (int s = 0; s < n; ++s) {
        const ComplexMatrix u = haar_unitary(d, rng);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double p = std::norm(u(i, j));
                mean(i, j) += p;
                mean_sq(i, j) += p * p;
            }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double m = mean(i, j) / n;
            CHECK(std::abs(m - 1.0 / d) < 0.01);
            // 3 sigma with sigma estimated from the samples
            const double var = mean_sq(i, j) / n - m * m;
            const double sigma_mean = std::sqrt(var / n);
            CHECK(std::abs(m - 1.0 / d) < 3.0 * sigma_mean);
        }
    }
}

TEST_CASE("haar_unitary: left invariance via two-sample KS") {
    Rng rng(1005);
    Rng rng_v(1006);
    const int d = 4;
    const int n = 10000;
    const ComplexMatrix v = haar_unitary(d, rng_v);

    std::vector<double> plain;
    std::vector<double> rotated;
    plain.reserve(n);
    rotated.reserve(n);
    for (int s = 0; s < n; ++s) {
        const ComplexMatrix u = haar_unitary(d, rng);
        plain.push_back(std::norm(u(0, 0)));
        rotated.push_back(std::norm(multiply(v, u)(0, 0)));
    }

    // two-sample critical value at alpha = 0.01: 1.628 sqrt((n+m)/(nm))
    const double critical = 1.628 * std::sqrt(2.0 / n);
    CHECK(oracles::ks_statistic(plain, rotated) < critical);
}
