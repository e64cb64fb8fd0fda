#pragma once

#include "philoop/scalar.hpp"
#include "philoop/series.hpp"

#include <cstdint>
#include <random>

namespace philoop {

/// Seeded sampler used by every randomized check.
///
/// Built on the raw output of std::mt19937_64, whose sequence is fixed by the
/// standard; the distribution step is done here so reports are identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin() { return uniform(0, 1) == 1; }

    /// Nonzero rational with |numerator| <= 5 and denominator in [1, 3].
    Rational small_rational();
    /// Like small_rational but zero with probability 1/3.
    Scalar sparse_scalar();

    /// Exact Laurent polynomial with up to `max_terms` terms and exponents in [lo, hi].
    LaurentSeries laurent(int lo, int hi, int max_terms = 3);

private:
    std::mt19937_64 gen_;
};

} // namespace philoop
