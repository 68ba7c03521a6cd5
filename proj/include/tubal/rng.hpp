#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tubal {

/// splitmix64 step; used to derive independent sub-stream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Standard-normal stream with pinned output: mt19937_64 uniforms mapped
/// through Box-Muller. The mt19937_64 sequence is fixed by the standard and
/// the transform below is explicit, so a seed reproduces the same values on
/// any conforming platform (std::normal_distribution would not).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    static constexpr double kPi = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tubal
