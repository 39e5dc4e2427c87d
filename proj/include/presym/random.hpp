#pragma once

#include <cstdint>
#include <random>

#include "presym/expr/polynomial.hpp"

namespace presym {

/// Deterministic source of small random rationals for numeric sampling.
/// Only raw engine output is used (no std distributions), so sequences are
/// identical across standard library implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// Rational a/b with |a| <= 12 and 1 <= b <= 7.
  Rational rational() {
    Rational r(static_cast<long>(uniform(-12, 12)), static_cast<unsigned long>(uniform(1, 7)));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace presym
