#pragma once

#include <cstddef>

#include "kpbit/rng.hpp"

namespace kpbit {

/// tanh(beta * phi) - noise, noise ~ U[-1, 1).
double activation(double phi, double beta, RngStream& rng);

/// True when the sign of the activation is +1. sgn(0) counts as +1.
bool retain_decision(double phi, double beta, RngStream& rng);

/// Closed-form P(retain) = (1 + tanh(beta * phi)) / 2.
double retention_probability(double phi, double beta);

/// Index of the hot element of a uniformly drawn one-hot vector of length m.
/// Throws std::invalid_argument for m == 0.
std::size_t sample_one_hot(std::size_t m, RngStream& rng);

/// Conventional binary p-bit: sgn(tanh(beta * field) - noise) in {-1, +1}.
int two_state_update(double field, double beta, RngStream& rng);

}  // namespace kpbit
