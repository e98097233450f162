#pragma once

#include "padenoise/numeric.hpp"

#include <cstdint>
#include <vector>

namespace padenoise {

enum class NoiseMode { none, additive, truncation };

/// Noise specification: additive uniform[-1,1] coefficient noise of strength
/// epsilon, or significant-digit truncation, with a seeded ensemble.
struct NoiseSpec {
    NoiseMode mode = NoiseMode::none;
    Rational epsilon = 0;       // additive strength, 0 < eps < 1
    int digits = 0;             // truncation mode: D
    std::uint64_t seed = 0;
    int realizations = 1;

    static NoiseSpec additive(const Rational& eps, std::uint64_t seed, int realizations = 1);
    static NoiseSpec truncation(int D, std::uint64_t seed = 0, int realizations = 1);
    static NoiseSpec none_spec();

    /// Decimal digits the noise floor occupies (ceil(-log10 eps), or D).
    int noise_digits() const;
};

/// One drawn realization. Regenerating from (seed, index) reproduces r_values
/// exactly: draws come from a counter-based generator, so they are independent
/// of evaluation order and scheduling.
struct NoiseRealization {
    NoiseSpec spec;
    int index = 0;
    std::vector<Rational> r_values;  // dyadic rationals in [-1,1]
    std::uint64_t derived_seed = 0;
};

/// Counter-based uniform draw: value k of stream (seed, index), as a dyadic
/// rational with 64 fractional bits in [-1, 1).
Rational uniform_pm1(std::uint64_t seed, std::uint64_t index, std::uint64_t k);

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

NoiseRealization draw_realization(const NoiseSpec& spec, int index, int count);

/// Companion spec with eps' = eps * 10^-100, used as the noise-free reference.
NoiseSpec reference_spec(const NoiseSpec& spec);

}  // namespace padenoise
