#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uavloc/quantum.hpp"

using namespace uavloc;

TEST_CASE("measurement of basis states") {
    auto rng = stream(1, 0, 0, 0);
    QuantumChromosome zeros(16, Qubit{1.0, 0.0}), ones(16, Qubit{0.0, 1.0});
    for (int rep = 0; rep < 20; ++rep) {
        for (auto b : measure(zeros, rng)) CHECK(b == 0);
        for (auto b : measure(ones, rng)) CHECK(b == 1);
    }
}

TEST_CASE("measurement of the uniform superposition") {
    auto rng = stream(7, 0, 0, 1);
    const QuantumChromosome q = uniform_chromosome(1);
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += measure(q, rng)[0];
    CHECK(std::abs(ones / double(draws) - 0.5) <= 0.01);
}

TEST_CASE("repair keeps feasible vectors") {
    auto rng = stream(3, 0, 0, 2);
    std::vector<std::uint8_t> bits{1, 0, 1, 0, 0, 1};
    auto copy = bits;
    repair(copy, 3, rng);
    CHECK(copy == bits);
    repair(copy, 6, rng);
    CHECK(copy == bits);
}

TEST_CASE("repair drops ones uniformly") {
    // Chi-square over 10^4 repairs of all-ones with N = 3 of 6 positions.
    std::vector<int> hits(6, 0);
    for (int r = 0; r < 10000; ++r) {
        auto rng = stream(11, 0, r, 2);
        std::vector<std::uint8_t> bits(6, 1);
        repair(bits, 3, rng);
        int count = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            count += bits[i];
            hits[i] += bits[i];
        }
        CHECK(count == 3);
    }
    const double expected = 10000.0 * 3.0 / 6.0;
    double chi2 = 0.0;
    for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
    CHECK(chi2 < 20.52);  // 5 degrees of freedom, p = 0.001
}

TEST_CASE("rotation angle") {
    const double pi = std::numbers::pi;
    CHECK(rotation_angle(-50.0, -50.0, 0.01 * pi, 0.05 * pi) == doctest::Approx(0.01 * pi));
    CHECK(rotation_angle(-100.0, -80.0, 0.01 * pi, 0.05 * pi) == doctest::Approx(0.018 * pi));
    CHECK(rotation_angle(0.0, 0.0, 0.01 * pi, 0.05 * pi) == doctest::Approx(0.01 * pi));
}

TEST_CASE("rotation gate") {
    QuantumChromosome q = uniform_chromosome(3);
    const QuantumChromosome before = q;
    rotate(q, {1, 0, 1}, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(q[i].alpha == before[i].alpha);
        CHECK(q[i].beta == before[i].beta);
    }
    QuantumChromosome r = uniform_chromosome(1);
    rotate(r, {1}, std::numbers::pi / 4.0);
    CHECK(r[0].alpha == doctest::Approx(0.0));
    CHECK(r[0].beta == doctest::Approx(1.0));

    QuantumChromosome s = uniform_chromosome(1);
    rotate(s, {0}, 0.1);
    CHECK(s[0].alpha * s[0].alpha > 0.5);  // steered towards 0
}

TEST_CASE("orthogonal rotation matches the matrix product") {
    const Qubit q{0.6, 0.8};
    const Qubit r = rotate_qubit(q, 0.3);
    CHECK(r.alpha == doctest::Approx(std::cos(0.3) * 0.6 - std::sin(0.3) * 0.8));
    CHECK(r.beta == doctest::Approx(std::sin(0.3) * 0.6 + std::cos(0.3) * 0.8));
}

TEST_CASE("NOT gate swaps amplitudes and is an involution") {
    QuantumChromosome q{{0.6, 0.8}, {1.0, 0.0}};
    not_gate(q, {0});
    CHECK(q[0].alpha == 0.8);
    CHECK(q[0].beta == 0.6);
    not_gate(q, {0});
    CHECK(q[0].alpha == 0.6);
    CHECK(q[0].beta == 0.8);
}

TEST_CASE("normalisation survives many rotations") {
    auto rng = stream(5, 0, 0, 9);
    QuantumChromosome q = uniform_chromosome(8);
    std::vector<std::uint8_t> best(8);
    for (int i = 0; i < 12500; ++i) {
        for (auto& b : best) b = unit_draw(rng) < 0.5;
        rotate(q, best, unit_draw(rng) * 0.2);
    }
    CHECK(normalisation_error(q) <= 1e-12);
}

TEST_CASE("streams are independent per coordinate") {
    auto a = stream(1, 2, 3, 4), b = stream(1, 2, 3, 4), c = stream(1, 2, 4, 3);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
}
