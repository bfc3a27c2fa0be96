#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tvclass {

/// Small counter-style PRNG (splitmix64 update) with an explicit normal
/// transform. Every consumer that needs randomness owns one of these, seeded
/// through derive_stream, so draws never depend on scheduling or on how many
/// worker threads ran. Box-Muller is used instead of the standard library's
/// normal_distribution because the latter's algorithm (and therefore the
/// stream) is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0, so log() below is safe.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller; the sine mate of each pair is
    /// cached and returned by the following call).
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_unit()));
        const double a = 2.0 * std::numbers::pi * next_unit();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Seed for the index-th independent stream under a base seed: the base is
/// mixed once, offset by the index, and mixed again. Used to give every
/// record / replicate / bootstrap draw its own generator.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t index) {
    Rng a(base);
    Rng b(a.next_u64() + index);
    return b.next_u64();
}

} // namespace tvclass
