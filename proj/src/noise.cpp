#include "padenoise/noise.hpp"

#include <cmath>

namespace padenoise {

NoiseSpec NoiseSpec::additive(const Rational& eps, std::uint64_t seed, int realizations) {
    if (!(eps > 0 && eps < 1)) throw Error("NoiseSpec: additive epsilon must be in (0,1)");
    NoiseSpec s;
    s.mode = NoiseMode::additive;
    s.epsilon = eps;
    s.seed = seed;
    s.realizations = realizations;
    return s;
}

NoiseSpec NoiseSpec::truncation(int D, std::uint64_t seed, int realizations) {
    if (D < 1) throw Error("NoiseSpec: truncation digits must be >= 1");
    NoiseSpec s;
    s.mode = NoiseMode::truncation;
    s.digits = D;
    s.seed = seed;
    s.realizations = realizations;
    return s;
}

NoiseSpec NoiseSpec::none_spec() { return NoiseSpec{}; }

int NoiseSpec::noise_digits() const {
    switch (mode) {
        case NoiseMode::none: return 0;
        case NoiseMode::truncation: return digits;
        case NoiseMode::additive: {
            double l = static_cast<double>(-log10(Real(epsilon, 30)));
            return static_cast<int>(std::ceil(l));
        }
    }
    return 0;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + kGolden * (index + 1));
}

Rational uniform_pm1(std::uint64_t seed, std::uint64_t index, std::uint64_t k) {
    std::uint64_t s = derive_stream_seed(seed, index);
    std::uint64_t x = mix64(s + kGolden * (k + 1));
    // (x - 2^63) / 2^63 in [-1, 1)
    Integer num = Integer(x) - (Integer(1) << 63);
    return Rational(num, Integer(1) << 63);
}

NoiseRealization draw_realization(const NoiseSpec& spec, int index, int count) {
    if (count < 1) throw Error("draw_realization: count must be >= 1");
    NoiseRealization out;
    out.spec = spec;
    out.index = index;
    out.derived_seed = derive_stream_seed(spec.seed, static_cast<std::uint64_t>(index));
    if (spec.mode == NoiseMode::additive) {
        out.r_values.reserve(count);
        for (int k = 0; k < count; ++k)
            out.r_values.push_back(uniform_pm1(spec.seed, static_cast<std::uint64_t>(index),
                                               static_cast<std::uint64_t>(k)));
    }
    return out;
}

NoiseSpec reference_spec(const NoiseSpec& spec) {
    if (spec.mode != NoiseMode::additive)
        throw Error("reference_spec: only defined for additive noise");
    NoiseSpec ref = spec;
    ref.epsilon = spec.epsilon * pow10_rational(-100);
    return ref;
}

}  // namespace padenoise
