#pragma once

// Randomised block construction of covering colourings: each round draws a
// batch of uniform colourings of length N(n, k), keeps the one covering the
// most still-uncovered k-subsets, and appends it. The concatenation is
// certified with verify_cover before it is returned.

#include "rainbow/coverage.hpp"
#include "rainbow/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

enum class LogBase { E, Two, Ten };

std::string to_string(LogBase base);
/// Accepts "e", "2" or "10".
LogBase parse_log_base(std::string_view text);
double log_in_base(double x, LogBase base);
/// Smallest admissible round multiplier is strictly above 1 / log_base(2).
double alpha_threshold(LogBase base);

/// ceil(sqrt(2) * sqrt((k - 1) / k!) * n^(k / 2)), exact.
std::uint64_t block_length(int n, int k);
/// Same value from integer arithmetic only: least m with m^2 k! >= 2 (k - 1) n^k.
std::uint64_t block_length_exact(int n, int k);

/// ceil(alpha * k * log_base(n)). Rejects alpha <= alpha_threshold(base) unless
/// allow_low_alpha is set.
std::uint64_t rounds(int n, int k, double alpha, LogBase base = LogBase::E, bool allow_low_alpha = false);

/// Each position independently uniform on [1, n].
Coloring random_coloring(std::int64_t N, int n, Rng& rng);

struct ConstructParams {
    double alpha = 2.0;
    int samples_per_round = 16;
    /// Zero selects 4 * rounds(n, k, alpha).
    int max_rounds = 0;
    std::uint64_t seed = 0;
    std::string rng_name{kDefaultRng};
    LogBase log_base = LogBase::E;
    bool allow_low_alpha = false;
    int threads = 1;
};

struct RoundRecord {
    int round = 0;
    std::uint64_t family_before = 0;
    std::uint64_t family_after = 0;
    /// Fraction of the family covered by the chosen block.
    double block_coverage = 0.0;
    int samples = 0;
    /// Index of the chosen candidate within the round.
    int chosen_sample = 0;
};

struct ConstructTrace {
    int n = 0;
    int k = 0;
    ConstructParams params;
    std::uint64_t block_length = 0;
    std::uint64_t planned_rounds = 0;
    int max_rounds = 0;
    std::vector<RoundRecord> rounds;
    int rounds_used = 0;
    std::int64_t final_length = 0;
};

struct ConstructResult {
    Coloring coloring;
    ConstructTrace trace;
};

class RoundsExhausted : public std::runtime_error {
public:
    RoundsExhausted(ConstructTrace trace, std::vector<ColorSet> residual);
    [[nodiscard]] const ConstructTrace& trace() const { return trace_; }
    [[nodiscard]] const std::vector<ColorSet>& residual() const { return residual_; }

private:
    ConstructTrace trace_;
    std::vector<ColorSet> residual_;
};

/// Throws RoundsExhausted if subsets remain uncovered after max_rounds blocks.
ConstructResult construct_cover(int n, int k, const ConstructParams& params);

}  // namespace rainbow
