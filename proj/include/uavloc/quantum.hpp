#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace uavloc {

struct Qubit {
    double alpha = 0.70710678118654752;
    double beta = 0.70710678118654752;
};

using QuantumChromosome = std::vector<Qubit>;

QuantumChromosome uniform_chromosome(std::size_t n);

/// Bit i is 1 with probability beta_i^2; one draw per bit in index order.
std::vector<std::uint8_t> measure(const QuantumChromosome& q, std::mt19937_64& rng);

/// Drops excess ones uniformly at random until at most `limit` remain.
void repair(std::vector<std::uint8_t>& bits, std::size_t limit, std::mt19937_64& rng);

double rotation_angle(double fit_cur, double fit_best, double theta_min, double theta_max);

/// Turns each qubit by up to `delta` towards the basis state of the best bit, then renormalises.
void rotate(QuantumChromosome& q, const std::vector<std::uint8_t>& best_bits, double delta);

/// Plain rotation of one qubit by angle `delta` (counter-clockwise in the (alpha, beta) plane).
Qubit rotate_qubit(Qubit q, double delta);

void not_gate(QuantumChromosome& q, const std::vector<std::size_t>& positions);

double normalisation_error(const QuantumChromosome& q);

/// Uniform in [0, 1) from the top 53 bits of one draw.
double unit_draw(std::mt19937_64& rng);

/// Independent stream for (seed, generation, index, purpose).
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t index, std::uint64_t purpose);

}  // namespace uavloc
