#include "kpbit/pbit.hpp"

#include <cmath>
#include <stdexcept>

namespace kpbit {

double activation(double phi, double beta, RngStream& rng) {
  return std::tanh(beta * phi) - rng.uniform_pm1();
}

bool retain_decision(double phi, double beta, RngStream& rng) {
  return activation(phi, beta, rng) >= 0.0;
}

double retention_probability(double phi, double beta) {
  return 0.5 * (1.0 + std::tanh(beta * phi));
}

std::size_t sample_one_hot(std::size_t m, RngStream& rng) {
  if (m == 0) throw std::invalid_argument("sample_one_hot: m must be >= 1");
  if (m == 1) return 0;
  return static_cast<std::size_t>(rng.uniform_int(m));
}

int two_state_update(double field, double beta, RngStream& rng) {
  return activation(field, beta, rng) >= 0.0 ? +1 : -1;
}

}  // namespace kpbit
