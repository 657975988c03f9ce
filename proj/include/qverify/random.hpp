/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

#pragma once

#include <cstdint>
#include <random>

namespace qverify {

/// Seed of one run. Child seeds are derived with SplitMix64 so that every
/// grid point and every stage of a run draws from its own stream.
struct RunSeed {
  std::uint64_t value = 42;

  RunSeed split(std::uint64_t stream) const {
    return {mix(value ^ mix(stream + 0x9e3779b97f4a7c15ULL))};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  friend bool operator==(const RunSeed &, const RunSeed &) = default;
};

/// Thin wrapper over mt19937_64 with a platform-independent unit draw.
class Rng {
public:
  explicit Rng(RunSeed seed) : engine_(RunSeed::mix(seed.value)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

private:
  std::mt19937_64 engine_;
};

} // namespace qverify
