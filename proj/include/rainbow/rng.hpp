#pragma once

// Seeded random streams with a fixed, platform-independent output sequence.
// A stream is identified by (generator name, seed, stream index); independent
// draws (construction candidates, Monte Carlo trials) each get their own index.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

inline constexpr std::string_view kDefaultRng = "splitmix64";

/// Generator names accepted by Rng.
const std::vector<std::string>& rng_names();

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    /// Throws ParameterError for an unknown generator name.
    Rng(std::string_view name, std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();
    /// Uniform on [0, bound), bound >= 1, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

    [[nodiscard]] const std::string& name() const { return name_; }

private:
    enum class Kind { SplitMix64, Mt19937_64 };
    std::string name_;
    Kind kind_;
    std::uint64_t state_ = 0;
    std::mt19937_64 mt_;
};

}  // namespace rainbow
