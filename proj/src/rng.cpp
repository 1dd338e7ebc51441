#include "kpbit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace kpbit {

std::uint64_t RngStream::uniform_int(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("uniform_int: empty range");
  // Rejection sampling on the largest multiple of m below 2^64.
  const std::uint64_t limit = -m % m;  // (2^64 - m) mod m == 2^64 mod m
  std::uint64_t x = engine_();
  while (x < limit) x = engine_();
  return x % m;
}

double RngStream::normal() {
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = uniform_pm1();
    v = uniform_pm1();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

}  // namespace kpbit
