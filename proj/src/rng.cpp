#include "rainbow/rng.hpp"

#include "rainbow/combinatorics.hpp"

namespace rainbow {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

const std::vector<std::string>& rng_names() {
    static const std::vector<std::string> names{"splitmix64", "mt19937_64"};
    return names;
}

Rng::Rng(std::string_view name, std::uint64_t seed, std::uint64_t stream) : name_(name) {
    if (name == "splitmix64") {
        kind_ = Kind::SplitMix64;
    } else if (name == "mt19937_64") {
        kind_ = Kind::Mt19937_64;
    } else {
        throw ParameterError("unknown generator '" + std::string(name) + "' (expected splitmix64 or mt19937_64)");
    }
    const std::uint64_t key = mix64(seed ^ mix64(stream ^ 0x9E3779B97F4A7C15ULL));
    state_ = key;
    if (kind_ == Kind::Mt19937_64) mt_.seed(key);
}

std::uint64_t Rng::next() {
    if (kind_ == Kind::Mt19937_64) return mt_();
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection of the biased low range.
    Wide m = static_cast<Wide>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<Wide>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace rainbow
